//! Structure Lie superalgebra, inner derivations, orbit tangent spaces,
//! regularity and the orbit metric `g_ξ`.

use serde::Serialize;

use crate::algebra::{BilinearForm, SuperAlgebra, SuperOperator};
use crate::decomposition::{frame_peirce, spectral, spectral_signature, FramePeirce, SpectralData};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{int, Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceTag {
    MJ,
    BracketSpace,
    GJ,
    Der0,
}

/// A space of homogeneous operators kept in echelon form of the flattened
/// matrices.
#[derive(Clone, Debug)]
pub struct OperatorSpace<F: Field> {
    even: usize,
    odd: usize,
    span: Subspace<F>,
    pub tag: SpaceTag,
}

impl<F: Field> OperatorSpace<F> {
    pub fn new(even: usize, odd: usize, tag: SpaceTag) -> Self {
        let n = even + odd;
        OperatorSpace { even, odd, span: Subspace::zero(n * n), tag }
    }

    pub fn from_operators(even: usize, odd: usize, ops: &[SuperOperator<F>], tag: SpaceTag) -> Result<Self> {
        let mut s = Self::new(even, odd, tag);
        for op in ops {
            s.insert(op)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, op: &SuperOperator<F>) -> Result<bool> {
        self.span.insert(&op.flatten())
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, op: &SuperOperator<F>) -> bool {
        self.span.contains(&op.flatten())
    }

    /// Echelon basis as operators. Each is homogeneous because even and odd
    /// operators have disjoint flattened supports.
    pub fn basis(&self) -> Vec<SuperOperator<F>> {
        self.span
            .basis()
            .iter()
            .map(|v| SuperOperator::unflatten(self.even, self.odd, v).expect("homogeneous echelon vector"))
            .collect()
    }

    pub fn flat_span(&self) -> &Subspace<F> {
        &self.span
    }

    pub fn intersect(&self, other: &Self, tag: SpaceTag) -> Self {
        OperatorSpace { even: self.even, odd: self.odd, span: self.span.intersect(&other.span), tag }
    }

    pub fn sum(&self, other: &Self, tag: SpaceTag) -> Self {
        OperatorSpace { even: self.even, odd: self.odd, span: self.span.sum(&other.span), tag }
    }

    /// `[basis, basis] ⊆ span`, or the first offending pair.
    pub fn bracket_closed(&self) -> std::result::Result<(), (usize, usize)> {
        let b = self.basis();
        for i in 0..b.len() {
            for j in i..b.len() {
                if !self.contains(&b[i].bracket(&b[j])) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }
}

/// `span{L_a}`.
pub fn mult_space<F: Field>(alg: &SuperAlgebra<F>) -> OperatorSpace<F> {
    let ops: Vec<_> = (0..alg.dim()).map(|i| alg.left_mult_basis(i)).collect();
    OperatorSpace::from_operators(alg.even_dim(), alg.odd_dim(), &ops, SpaceTag::MJ).expect("same dimensions")
}

/// `span{[L_a, L_b]}`.
pub fn bracket_space<F: Field>(alg: &SuperAlgebra<F>) -> OperatorSpace<F> {
    let n = alg.dim();
    let ls: Vec<_> = (0..n).map(|i| alg.left_mult_basis(i)).collect();
    let mut s = OperatorSpace::new(alg.even_dim(), alg.odd_dim(), SpaceTag::BracketSpace);
    for i in 0..n {
        for j in i..n {
            s.insert(&ls[i].bracket(&ls[j])).expect("same dimensions");
        }
    }
    s
}

/// `g(J) = span{L_a, [L_b, L_c]}`, with bracket closure asserted and, for
/// unital `J`, the splitting `m_J ∩ [m_J, m_J] = 0`.
pub fn structure_algebra<F: Field>(alg: &SuperAlgebra<F>) -> Result<OperatorSpace<F>> {
    let m = mult_space(alg);
    let b = bracket_space(alg);
    let g = m.sum(&b, SpaceTag::GJ);
    if let Err((i, j)) = g.bracket_closed() {
        return Err(Error::IdentityFailed(format!(
            "span of L_a and [L_b, L_c] is not closed under the bracket (basis elements {i}, {j})"
        )));
    }
    if alg.find_unit().is_some() && g.dim() != m.dim() + b.dim() {
        return Err(Error::Internal("m_J and [m_J, m_J] intersect for a unital algebra".into()));
    }
    Ok(g)
}

/// Derivations of `alg` of the given parity as a space of operators, by
/// solving the linear derivation conditions.
pub fn derivations<F: Field>(alg: &SuperAlgebra<F>, parity: u8) -> Result<OperatorSpace<F>> {
    let (m, odd) = (alg.even_dim(), alg.odd_dim());
    let n = alg.dim();
    // Matrix units allowed for this parity.
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| (alg.parity(r) + alg.parity(c)) % 2 == parity)
        .collect();
    let products: Vec<Vec<F>> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| alg.basis_product(i, j)).collect();
    let mut columns = Vec::with_capacity(units.len());
    for &(r, c) in &units {
        // E = unit matrix sending x_c to x_r.
        let apply = |v: &[F]| -> Vec<F> {
            let mut out = vec![F::zero(); n];
            out[r] = v[c].clone();
            out
        };
        let mut col = Vec::with_capacity(n * n * n);
        for i in 0..n {
            let ei = alg.basis_vector(i);
            let di = apply(&ei);
            for j in 0..n {
                let ej = alg.basis_vector(j);
                let dj = apply(&ej);
                let lhs = apply(&products[i * n + j]);
                let t1 = alg.mul(&di, &ej);
                let t2 = alg.mul(&ei, &dj);
                let s = if parity * alg.parity(i) == 1 { F::one().neg() } else { F::one() };
                for k in 0..n {
                    col.push(lhs[k].sub(&t1[k]).sub(&s.mul(&t2[k])));
                }
            }
        }
        columns.push(col);
    }
    let mut space = OperatorSpace::new(m, odd, SpaceTag::Der0);
    if units.is_empty() {
        return Ok(space);
    }
    let sys = Matrix::from_columns(n * n * n, &columns)?;
    for kv in sys.kernel().basis() {
        let mut mat = Matrix::zeros(n, n);
        for (coef, &(r, c)) in kv.iter().zip(&units) {
            mat.set(r, c, coef.clone());
        }
        space.insert(&SuperOperator::new(m, odd, mat, parity)?)?;
    }
    Ok(space)
}

/// Inner derivations: `[m_J, m_J]` for unital `J` (each member checked to be
/// a derivation), otherwise `g(J) ∩ Der(J)`.
pub fn inner_derivations<F: Field>(alg: &SuperAlgebra<F>) -> Result<OperatorSpace<F>> {
    if alg.find_unit().is_some() {
        let mut b = bracket_space(alg);
        b.tag = SpaceTag::Der0;
        for op in b.basis() {
            op.is_derivation_of(alg).map_err(|f| Error::IdentityFailed(f.to_string()))?;
        }
        return Ok(b);
    }
    let g = structure_algebra(alg)?;
    let der = derivations(alg, 0)?.sum(&derivations(alg, 1)?, SpaceTag::Der0);
    Ok(g.intersect(&der, SpaceTag::Der0))
}

/// Rank of `{op · point}` over a basis of the space. With `dual`, the point
/// is a dual vector and operators act by their transposes.
pub fn rank_at<F: Field>(space: &OperatorSpace<F>, point: &[F], dual: bool) -> usize {
    orbit_span(space, point, dual).dim()
}

fn orbit_span<F: Field>(space: &OperatorSpace<F>, point: &[F], dual: bool) -> Subspace<F> {
    let n = point.len();
    let images: Vec<Vec<F>> = space
        .basis()
        .iter()
        .map(|op| if dual { op.matrix().transpose().apply(point) } else { op.apply(point) })
        .collect();
    Subspace::span(n, &images).expect("same dimension")
}

#[derive(Clone, Debug)]
pub struct PredictedSpaces {
    pub m: Subspace<Rational>,
    pub der: Subspace<Rational>,
    pub g: Subspace<Rational>,
}

#[derive(Clone, Debug)]
pub struct TangentReport {
    pub point: Vec<Rational>,
    pub m_x: Subspace<Rational>,
    pub der_x: Subspace<Rational>,
    pub g_x: Subspace<Rational>,
    pub spectral: Option<SpectralData>,
    pub predicted: Option<PredictedSpaces>,
    pub regular: bool,
}

impl TangentReport {
    /// Brute-force spans equal the Peirce predictions (`None` without
    /// exact spectral data).
    pub fn agrees(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| p.m == self.m_x && p.der == self.der_x && p.g == self.g_x)
    }
}

/// Operator spaces needed for tangent computations, computed once per
/// algebra.
#[derive(Clone, Debug)]
pub struct OrbitSpaces {
    pub m: OperatorSpace<Rational>,
    pub der: OperatorSpace<Rational>,
    pub g: OperatorSpace<Rational>,
}

impl OrbitSpaces {
    pub fn new(alg: &SuperAlgebra<Rational>) -> Result<Self> {
        Ok(OrbitSpaces { m: mult_space(alg), der: inner_derivations(alg)?, g: structure_algebra(alg)? })
    }
}

/// Sum of the Peirce blocks `P_ij` (`i <= j`) selected by the coefficients.
fn blocks_where(fp: &FramePeirce<Rational>, n: usize, lambdas: &[Rational], keep: impl Fn(&Rational, &Rational) -> bool) -> Subspace<Rational> {
    let mut s = Subspace::zero(n);
    for ((i, j), b) in &fp.blocks {
        if keep(&lambdas[*i], &lambdas[*j]) {
            s = s.sum(b);
        }
    }
    s
}

/// Tangent spaces `m_J·x`, `Der_0·x`, `g(J)·x` at an even point, brute force
/// and as predicted from the spectral decomposition.
pub fn tangent_spaces(alg: &SuperAlgebra<Rational>, spaces: &OrbitSpaces, x: &[Rational]) -> Result<TangentReport> {
    if alg.basis().parity_of(x) != Some(0) {
        return Err(Error::NotHomogeneous);
    }
    let m_x = orbit_span(&spaces.m, x, false);
    let der_x = orbit_span(&spaces.der, x, false);
    let g_x = orbit_span(&spaces.g, x, false);
    if !g_x.contains_subspace(&m_x) || !g_x.contains_subspace(&der_x) {
        return Err(Error::Internal("m_J·x or Der_0·x is not inside g(J)·x".into()));
    }
    let regular = m_x.dim() == g_x.dim();
    let spec = spectral(alg, x)?;
    let predicted = match (&spec.frame, spec.exact_lambdas()) {
        (Some(frame), Some(l)) => {
            let fp = frame_peirce(alg, frame)?;
            let n = alg.dim();
            let zero = |a: &Rational| Field::is_zero(a);
            Some(PredictedSpaces {
                m: blocks_where(&fp, n, l, |a, b| !zero(&(a + b))),
                der: blocks_where(&fp, n, l, |a, b| a != b),
                g: blocks_where(&fp, n, l, |a, b| !zero(a) || !zero(b)),
            })
        }
        _ => None,
    };
    Ok(TangentReport { point: x.to_vec(), m_x, der_x, g_x, spectral: Some(spec), predicted, regular })
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub rank_m: usize,
    pub rank_g: usize,
    /// Pair of nonzero coefficients summing to zero.
    pub witness: Option<(String, String)>,
}

/// `m_J`-regularity of a dual point: the coefficient criterion
/// `λ_i + λ_j ≠ 0` for nonzero `λ_i, λ_j` of `ξ^♯`, cross-checked against
/// the ranks of the `m_J` and `g(J)` distributions at `ξ`.
pub fn is_m_regular(
    alg: &SuperAlgebra<Rational>,
    beta: &BilinearForm<Rational>,
    spaces: &OrbitSpaces,
    xi: &[Rational],
) -> Result<RegularityReport> {
    let x = beta.sharp(xi)?;
    let spec = spectral(alg, &x)?;
    let witness = match spec.exact_lambdas() {
        Some(l) => {
            let fp = match &spec.frame {
                Some(frame) => Some(frame_peirce(alg, frame)?),
                None => None,
            };
            cancelling_pair(l, fp.as_ref()).map(|(a, b)| (a.to_string(), b.to_string()))
        }
        None => {
            // Floats never decide a cancellation or a zero coefficient.
            let l = spec.approx_lambdas();
            let tol = crate::decomposition::NUMERIC_TOLERANCE;
            for i in 0..l.len() {
                if l[i].abs() < tol {
                    return Err(Error::AmbiguousSign(l[i]));
                }
                for j in i + 1..l.len() {
                    if (l[i] + l[j]).abs() < tol {
                        return Err(Error::AmbiguousSign(l[i] + l[j]));
                    }
                }
            }
            None
        }
    };
    let rank_m = rank_at(&spaces.m, xi, true);
    let rank_g = rank_at(&spaces.g, xi, true);
    let regular = witness.is_none();
    if regular != (rank_m == rank_g) {
        return Err(Error::Internal(format!(
            "regularity criterion says {regular} but ranks are {rank_m} (m_J) and {rank_g} (g(J))"
        )));
    }
    Ok(RegularityReport { regular, rank_m, rank_g, witness })
}

/// Nonzero coefficients summing to zero. Pairs whose Peirce block `P_ij`
/// vanishes (different β-orthogonal summands) impose no condition.
fn cancelling_pair(l: &[Rational], fp: Option<&FramePeirce<Rational>>) -> Option<(Rational, Rational)> {
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let linked = fp.is_none_or(|fp| fp.block(i, j).dim() > 0);
            if linked && !Field::is_zero(&l[i]) && Field::is_zero(&(&l[i] + &l[j])) {
                return Some((l[i].clone(), l[j].clone()));
            }
        }
    }
    None
}

/// Points with equal spectral signature of `ξ^♯` lie over the same orbit.
pub fn same_orbit_body(alg: &SuperAlgebra<Rational>, beta: &BilinearForm<Rational>, xi1: &[Rational], xi2: &[Rational]) -> Result<bool> {
    let s1 = spectral_signature(&spectral(alg, &beta.sharp(xi1)?)?)?;
    let s2 = spectral_signature(&spectral(alg, &beta.sharp(xi2)?)?)?;
    Ok(s1 == s2)
}

/// Peirce data at a regular dual point, reusable for many metric queries.
#[derive(Clone, Debug)]
pub struct MetricContext {
    pub xi: Vec<Rational>,
    pub lambdas: Vec<Rational>,
    pub peirce: FramePeirce<Rational>,
}

impl MetricContext {
    pub fn new(alg: &SuperAlgebra<Rational>, beta: &BilinearForm<Rational>, spaces: &OrbitSpaces, xi: &[Rational]) -> Result<Self> {
        check_positive_even_part(alg)?;
        let reg = is_m_regular(alg, beta, spaces, xi)?;
        if !reg.regular {
            let why = match &reg.witness {
                Some((a, b)) => format!("spectral coefficients {a} and {b} sum to zero"),
                None => format!("rank of m_J at ξ is {}, of g(J) is {}", reg.rank_m, reg.rank_g),
            };
            return Err(Error::Precondition(format!("ξ is not m_J-regular: {why}")));
        }
        let x = beta.sharp(xi)?;
        let spec = spectral(alg, &x)?;
        let (Some(frame), Some(l)) = (&spec.frame, spec.exact_lambdas()) else {
            return Err(Error::Unsupported("the metric needs exact spectral coefficients".into()));
        };
        let peirce = frame_peirce(alg, frame)?;
        Ok(MetricContext { xi: xi.to_vec(), lambdas: l.to_vec(), peirce })
    }

    /// `g_ξ(η, η') = Σ_{λ_i ≠ 0 or λ_j ≠ 0} 2/(λ_i + λ_j) β(η^♯_ij, η'^♯_ij)`.
    pub fn metric(&self, beta: &BilinearForm<Rational>, eta: &[Rational], etap: &[Rational]) -> Result<Rational> {
        let a = self.peirce.components(&beta.sharp(eta)?)?;
        let b = self.peirce.components(&beta.sharp(etap)?)?;
        let mut total = int(0);
        for (key, ca) in &a {
            let (li, lj) = (&self.lambdas[key.0], &self.lambdas[key.1]);
            let cb = &b[key];
            if Field::is_zero(li) && Field::is_zero(lj) {
                if ca.iter().chain(cb).any(|c| !Field::is_zero(c)) {
                    return Err(Error::Precondition("η is not tangent to the orbit at ξ".into()));
                }
                continue;
            }
            let v = beta.eval(ca, cb);
            if !Field::is_zero(&v) {
                total += int(2) / (li + lj) * v;
            }
        }
        Ok(total)
    }
}

/// The metric of the orbit through a regular `ξ`, evaluated on two tangent
/// dual vectors.
pub fn metric_at(
    alg: &SuperAlgebra<Rational>,
    beta: &BilinearForm<Rational>,
    spaces: &OrbitSpaces,
    xi: &[Rational],
    eta: &[Rational],
    etap: &[Rational],
) -> Result<Rational> {
    MetricContext::new(alg, beta, spaces, xi)?.metric(beta, eta, etap)
}

/// `β(ξ^♯, ab)`: the body of `g(X_a, X_b) = ab` at `ξ`.
pub fn metric_oracle(alg: &SuperAlgebra<Rational>, beta: &BilinearForm<Rational>, xi: &[Rational], a: &[Rational], b: &[Rational]) -> Result<Rational> {
    Ok(beta.eval(&beta.sharp(xi)?, &alg.multiply(a, b)?))
}

/// The value `(L_a ξ^♯)^♭` of the field `X_a` at `ξ`.
pub fn tangent_vector(alg: &SuperAlgebra<Rational>, beta: &BilinearForm<Rational>, xi: &[Rational], a: &[Rational]) -> Result<Vec<Rational>> {
    let x = beta.sharp(xi)?;
    Ok(beta.flat(&alg.left_mult(a)?.apply(&x)))
}

/// Gram matrix of `g_ξ` on the tangent vectors `(L_{x_i} ξ^♯)^♭` that are
/// nonzero, together with the labels of those basis elements.
pub fn tangent_gram(
    alg: &SuperAlgebra<Rational>,
    beta: &BilinearForm<Rational>,
    ctx: &MetricContext,
) -> Result<(Vec<usize>, Matrix<Rational>)> {
    let mut idx = Vec::new();
    let mut vecs = Vec::new();
    let mut span = Subspace::zero(alg.dim());
    for i in 0..alg.dim() {
        let v = tangent_vector(alg, beta, &ctx.xi, &alg.basis_vector(i))?;
        if span.insert(&v)? {
            idx.push(i);
            vecs.push(v);
        }
    }
    let k = vecs.len();
    let mut gram = Matrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            gram.set(r, c, ctx.metric(beta, &vecs[r], &vecs[c])?);
        }
    }
    Ok((idx, gram))
}

/// Positivity of the even part: the trace form `tr(L_{ab})` restricted to
/// `J0` (which is associative for Jordan algebras) is positive definite.
pub fn check_positive_even_part(alg: &SuperAlgebra<Rational>) -> Result<()> {
    let m = alg.even_dim();
    let gram = Matrix::from_fn(m, m, |i, j| {
        let p = alg.basis_product(i, j);
        let l = alg.left_mult(&p).expect("even product");
        (0..m).fold(int(0), |acc, k| acc + l.matrix().get(k, k))
    });
    let inertia = crate::linalg::symmetric_signature(&gram)?;
    if inertia.positive != m {
        return Err(Error::Precondition("the even part is not positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperBasis;
    use crate::catalog::{make_dt, make_k3, make_st_rd, parse_catalog_name};
    use crate::scalar::frac;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn dimensions() {
        let dt = make_dt(&int(2));
        assert_eq!(mult_space(&dt.algebra).dim(), 4);
        let k3 = make_k3();
        assert_eq!(mult_space(&k3.algebra).dim(), 3);
        let basis = SuperBasis::new(&["a"], &["z"]).unwrap();
        let trivial = SuperAlgebra::from_fn(basis, |_, _| v(&[0, 0])).unwrap();
        assert_eq!(mult_space(&trivial).dim(), 0);
        let g = structure_algebra(&dt.algebra).unwrap();
        let b = bracket_space(&dt.algebra);
        assert_eq!(g.dim(), 4 + b.dim());
        let st = make_st_rd(&int(2), 2).unwrap();
        assert_eq!(structure_algebra(&st.algebra).unwrap().dim(), 2 * g.dim());
    }

    #[test]
    fn dns_structure_algebra_not_closed_or_fine() {
        // Non-Jordan input may or may not close; the Jordan ones must.
        for name in ["gl+(1|1)", "josp(1|2)", "spin(1|2)", "spin(3|0)", "k3", "ujosp(2,0)"] {
            let e = parse_catalog_name(name).unwrap();
            structure_algebra(&e.algebra).unwrap();
        }
    }

    #[test]
    fn inner_derivation_examples() {
        let dt = make_dt(&int(2));
        let a = &dt.algebra;
        assert!(a.left_mult_basis(0).bracket(&a.left_mult_basis(1)).is_zero());
        let lxy = a.left_mult_basis(2).bracket(&a.left_mult_basis(3));
        assert!(!lxy.is_zero());
        lxy.is_derivation_of(a).unwrap();
        let der = inner_derivations(a).unwrap();
        assert!(der.contains(&lxy));
        // Derivation solver agrees on the unital case.
        let all = derivations(a, 0).unwrap().sum(&derivations(a, 1).unwrap(), SpaceTag::Der0);
        assert!(all.flat_span().contains_subspace(der.flat_span()));
        // Non-unital: K3.
        let k3 = make_k3();
        let d = inner_derivations(&k3.algebra).unwrap();
        for op in d.basis() {
            op.is_derivation_of(&k3.algebra).unwrap();
        }
        // Commutative associative: brackets vanish.
        let basis = SuperBasis::new(&["a", "b"], &[] as &[&str]).unwrap();
        let field2 = SuperAlgebra::from_fn(basis, |i, j| if i == j { crate::linalg::unit_vec(2, i) } else { v(&[0, 0]) }).unwrap();
        assert_eq!(bracket_space(&field2).dim(), 0);
    }

    #[test]
    fn dt_tangent_spaces() {
        let dt = make_dt(&frac(-1, 2));
        let spaces = OrbitSpaces::new(&dt.algebra).unwrap();
        let r = tangent_spaces(&dt.algebra, &spaces, &v(&[1, -1, 0, 0])).unwrap();
        assert_eq!(r.m_x.dim(), 2);
        assert_eq!(r.g_x.dim(), 4);
        assert!(!r.regular);
        assert_eq!(r.agrees(), Some(true));
        let r = tangent_spaces(&dt.algebra, &spaces, &v(&[1, 2, 0, 0])).unwrap();
        assert_eq!(r.m_x.dim(), 4);
        assert!(r.regular);
        assert_eq!(r.agrees(), Some(true));
        let r = tangent_spaces(&dt.algebra, &spaces, &v(&[1, 1, 0, 0])).unwrap();
        assert_eq!((r.m_x.dim(), r.der_x.dim()), (4, 0));
        assert_eq!(r.agrees(), Some(true));
    }

    #[test]
    fn regularity_and_orbits() {
        let dt = make_dt(&int(2));
        let beta = dt.beta.as_ref().unwrap();
        let spaces = OrbitSpaces::new(&dt.algebra).unwrap();
        let flat = |x: &[i64]| beta.flat(&v(x));
        assert!(is_m_regular(&dt.algebra, beta, &spaces, &flat(&[1, 2, 0, 0])).unwrap().regular);
        let r = is_m_regular(&dt.algebra, beta, &spaces, &flat(&[1, -1, 0, 0])).unwrap();
        assert!(!r.regular);
        assert_eq!((r.rank_m, r.rank_g), (2, 4));
        let z = is_m_regular(&dt.algebra, beta, &spaces, &v(&[0, 0, 0, 0])).unwrap();
        assert!(z.regular && z.rank_g == 0);
        assert!(same_orbit_body(&dt.algebra, beta, &flat(&[1, 3, 0, 0]), &flat(&[2, 6, 0, 0])).unwrap());
        assert!(!same_orbit_body(&dt.algebra, beta, &flat(&[1, 1, 0, 0]), &flat(&[1, -1, 0, 0])).unwrap());
        // Semicontinuity along e1 - e2 -> e1 + e2.
        for k in 0..10 {
            let s = frac(2 * k, 9) - int(1);
            let xi = beta.flat(&[int(1), s.clone(), int(0), int(0)]);
            let rank = rank_at(&spaces.m, &xi, true);
            assert!(rank >= 2);
            assert_eq!(rank == 4, s != int(-1));
        }
    }

    #[test]
    fn dt_metric_values() {
        let t = int(2);
        let dt = make_dt(&t);
        let beta = dt.beta.as_ref().unwrap();
        let spaces = OrbitSpaces::new(&dt.algebra).unwrap();
        let (l1, l2) = (int(3), int(5));
        let xi = beta.flat(&[l1.clone(), l2.clone(), int(0), int(0)]);
        let flat_of = |i: usize| beta.flat(&dt.algebra.basis_vector(i));
        let ctx = MetricContext::new(&dt.algebra, beta, &spaces, &xi).unwrap();
        assert_eq!(ctx.metric(beta, &flat_of(0), &flat_of(0)).unwrap(), int(1) / &l1);
        assert_eq!(ctx.metric(beta, &flat_of(1), &flat_of(1)).unwrap(), int(1) / (&t * &l2));
        assert_eq!(ctx.metric(beta, &flat_of(2), &flat_of(3)).unwrap(), int(4) / (&l1 + &l2));
        let (idx, gram) = tangent_gram(&dt.algebra, beta, &ctx).unwrap();
        assert_eq!(idx.len(), 4);
        assert_eq!(gram.get(0, 1), &int(0));
        assert_eq!(gram.get(2, 3), &gram.get(3, 2).clone().neg());
        // Oracle: a = b = e1 gives λ1; a = x, b = y gives λ1 + λ2.
        let e1 = dt.algebra.basis_vector(0);
        let tv = tangent_vector(&dt.algebra, beta, &xi, &e1).unwrap();
        assert_eq!(metric_oracle(&dt.algebra, beta, &xi, &e1, &e1).unwrap(), l1);
        assert_eq!(ctx.metric(beta, &tv, &tv).unwrap(), l1);
        let (x, y) = (dt.algebra.basis_vector(2), dt.algebra.basis_vector(3));
        assert_eq!(metric_oracle(&dt.algebra, beta, &xi, &x, &y).unwrap(), &l1 + &l2);
        let (tx, ty) = (tangent_vector(&dt.algebra, beta, &xi, &x).unwrap(), tangent_vector(&dt.algebra, beta, &xi, &y).unwrap());
        assert_eq!(ctx.metric(beta, &tx, &ty).unwrap(), &l1 + &l2);
        // Irregular points are refused.
        let bad = beta.flat(&v(&[1, -1, 0, 0]));
        assert!(metric_at(&dt.algebra, beta, &spaces, &bad, &flat_of(0), &flat_of(0)).is_err());
    }

    #[test]
    fn non_tangent_vectors_are_refused() {
        let dt = make_dt(&int(1));
        let beta = dt.beta.as_ref().unwrap();
        let spaces = OrbitSpaces::new(&dt.algebra).unwrap();
        // ξ^♯ = e1: λ = (1, 0); the block P22 = span{e2} is not tangent.
        let xi = beta.flat(&v(&[1, 0, 0, 0]));
        let e2 = beta.flat(&v(&[0, 1, 0, 0]));
        assert!(metric_at(&dt.algebra, beta, &spaces, &xi, &e2, &e2).is_err());
        let x = beta.flat(&v(&[0, 0, 1, 0]));
        let y = beta.flat(&v(&[0, 0, 0, 1]));
        assert_eq!(metric_at(&dt.algebra, beta, &spaces, &xi, &x, &y).unwrap(), int(4));
    }
}
