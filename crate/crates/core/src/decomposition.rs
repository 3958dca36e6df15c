//! Idempotents, Peirce decompositions, Jordan frames, spectral decomposition of
//! even elements and the splitting of a pseudo-Euclidean algebra into
//! β-irreducible ideals.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BilinearForm, SuperAlgebra, SuperOperator};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_signature, Matrix, Subspace};
use crate::poly::Poly;
use crate::scalar::{int, to_f64, Field, Rational};

/// Absolute tolerance of the floating-point spectral fallback.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct PeirceDecomposition<F: Field> {
    pub idempotent: Vec<F>,
    pub p0: SuperOperator<F>,
    pub p_half: SuperOperator<F>,
    pub p1: SuperOperator<F>,
    pub s0: Subspace<F>,
    pub s_half: Subspace<F>,
    pub s1: Subspace<F>,
}

impl<F: Field> PeirceDecomposition<F> {
    /// `(eigenvalue label, projector, image)` in the order 0, ½, 1.
    pub fn parts(&self) -> [(&'static str, &SuperOperator<F>, &Subspace<F>); 3] {
        [("0", &self.p0, &self.s0), ("1/2", &self.p_half, &self.s_half), ("1", &self.p1, &self.s1)]
    }
}

pub fn is_idempotent<F: Field>(alg: &SuperAlgebra<F>, e: &[F]) -> bool {
    alg.mul(e, e).as_slice() == e
}

/// Peirce projectors of an even idempotent, obtained by Lagrange
/// interpolation in `L_e` once `2L³ - 3L² + L = 0` has been verified.
pub fn peirce_of_idempotent<F: Field>(alg: &SuperAlgebra<F>, e: &[F]) -> Result<PeirceDecomposition<F>> {
    if alg.basis().parity_of(e) != Some(0) {
        return Err(Error::NotHomogeneous);
    }
    if !is_idempotent(alg, e) {
        return Err(Error::NotIdempotent(alg.basis().format_vector(e)));
    }
    let l = alg.left_mult(e)?;
    let l2 = l.compose(&l);
    let l3 = l2.compose(&l);
    let two = F::from_int(2);
    let three = F::from_int(3);
    let four = F::from_int(4);
    let cubic = l3.scale(&two).add(&l2.scale(&three.neg()))?.add(&l)?;
    if !cubic.is_zero() {
        return Err(Error::IdentityFailed(format!(
            "2L_e^3 - 3L_e^2 + L_e != 0 for e = {}",
            alg.basis().format_vector(e)
        )));
    }
    let (m, n) = (alg.even_dim(), alg.odd_dim());
    let id = SuperOperator::identity(m, n);
    let p0 = l2.scale(&two).add(&l.scale(&three.neg()))?.add(&id)?;
    let p_half = l.scale(&four).add(&l2.scale(&four.neg()))?;
    let p1 = l2.scale(&two).add(&l.neg_op())?;
    let full = Subspace::full(alg.dim());
    Ok(PeirceDecomposition {
        idempotent: e.to_vec(),
        s0: full.image(p0.matrix()),
        s_half: full.image(p_half.matrix()),
        s1: full.image(p1.matrix()),
        p0,
        p_half,
        p1,
    })
}

trait NegOp {
    fn neg_op(&self) -> Self;
}

impl<F: Field> NegOp for SuperOperator<F> {
    fn neg_op(&self) -> Self {
        self.scale(&F::one().neg())
    }
}

/// Name, two factors and the space their product must lie in.
type PeirceRule<'a, F> = (&'static str, &'a Subspace<F>, &'a Subspace<F>, Subspace<F>);

/// Checks the projector algebra `P² = P`, `PQ = 0`, `ΣP = I` and the
/// multiplication rules `{P0,P1} = 0`, `{P0,P½} ⊆ P½`, `{P1,P½} ⊆ P½`,
/// `{P½,P½} ⊆ P0 ⊕ P1`, `{Pλ,Pλ} ⊆ Pλ` (λ = 0, 1).
pub fn check_peirce<F: Field>(alg: &SuperAlgebra<F>, p: &PeirceDecomposition<F>) -> std::result::Result<(), String> {
    let parts = p.parts();
    let (m, n) = (alg.even_dim(), alg.odd_dim());
    let mut sum = SuperOperator::zero(m, n);
    for (i, (li, pi, _)) in parts.iter().enumerate() {
        if pi.compose(pi) != **pi {
            return Err(format!("P_{li} is not idempotent"));
        }
        for (j, (lj, pj, _)) in parts.iter().enumerate() {
            if i != j && !pi.compose(pj).is_zero() {
                return Err(format!("P_{li} P_{lj} != 0"));
            }
        }
        sum = sum.add(pi).map_err(|e| e.to_string())?;
    }
    if sum != SuperOperator::identity(m, n) {
        return Err("projectors do not sum to the identity".into());
    }
    let l = alg.left_mult(&p.idempotent).map_err(|e| e.to_string())?;
    let half = F::from_int(2).inv().expect("char 0");
    for ((label, _, s), lambda) in parts.iter().zip([F::zero(), half, F::one()]) {
        for v in s.basis() {
            if l.apply(v) != v.iter().map(|c| c.mul(&lambda)).collect::<Vec<_>>() {
                return Err(format!("L_e does not act as {label} on P_{label}"));
            }
        }
    }
    let (s0, sh, s1) = (&p.s0, &p.s_half, &p.s1);
    let zero = Subspace::zero(alg.dim());
    let rules: [PeirceRule<F>; 6] = [
        ("{P0,P0} in P0", s0, s0, s0.clone()),
        ("{P1,P1} in P1", s1, s1, s1.clone()),
        ("{P0,P1} = 0", s0, s1, zero),
        ("{P0,P1/2} in P1/2", s0, sh, sh.clone()),
        ("{P1,P1/2} in P1/2", s1, sh, sh.clone()),
        ("{P1/2,P1/2} in P0+P1", sh, sh, s0.sum(s1)),
    ];
    for (name, a, b, target) in rules {
        if !products_within(alg, a, b, &target) {
            return Err(format!("Peirce rule {name} violated"));
        }
    }
    Ok(())
}

fn products_within<F: Field>(alg: &SuperAlgebra<F>, a: &Subspace<F>, b: &Subspace<F>, target: &Subspace<F>) -> bool {
    a.basis().iter().all(|u| b.basis().iter().all(|v| target.contains(&alg.mul(u, v))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitivity {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct JordanFrame<F: Field> {
    pub idempotents: Vec<Vec<F>>,
    pub primitive: Vec<Primitivity>,
}

impl<F: Field> JordanFrame<F> {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    pub fn all_primitive(&self) -> bool {
        self.primitive.iter().all(|p| *p == Primitivity::Yes)
    }
}

/// Verifies the frame axioms: even nonzero idempotents, pairwise orthogonal
/// with commuting multiplications, summing to the unit. Primitivity is then
/// decided when `P1(e)` has even dimension at most 2 and left unknown above.
pub fn check_frame<F: Field>(alg: &SuperAlgebra<F>, idempotents: &[Vec<F>]) -> Result<JordanFrame<F>> {
    let n = alg.dim();
    let basis = alg.basis();
    let fail = |msg: String| Err(Error::InvalidFrame(msg));
    if idempotents.is_empty() {
        return fail("empty frame".into());
    }
    let mut sum = vec![F::zero(); n];
    for e in idempotents {
        if e.len() != n {
            return Err(Error::DimensionMismatch(format!("idempotent of length {} in dimension {n}", e.len())));
        }
        if basis.parity_of(e) != Some(0) {
            return fail(format!("{} is not even", basis.format_vector(e)));
        }
        if e.iter().all(Field::is_zero) {
            return fail("zero idempotent".into());
        }
        if !is_idempotent(alg, e) {
            return fail(format!("{} is not idempotent", basis.format_vector(e)));
        }
        sum = sum.iter().zip(e).map(|(a, b)| a.add(b)).collect();
    }
    let ops: Vec<SuperOperator<F>> = idempotents.iter().map(|e| alg.left_mult(e)).collect::<Result<_>>()?;
    for i in 0..idempotents.len() {
        for j in i + 1..idempotents.len() {
            let (a, b) = (&idempotents[i], &idempotents[j]);
            if alg.mul(a, b).iter().any(|c| !c.is_zero()) {
                return fail(format!("{} and {} are not orthogonal", basis.format_vector(a), basis.format_vector(b)));
            }
            if !ops[i].bracket(&ops[j]).is_zero() {
                return fail(format!(
                    "[L_{}, L_{}] != 0",
                    basis.format_vector(a),
                    basis.format_vector(b)
                ));
            }
        }
    }
    if alg.left_mult(&sum)? != SuperOperator::identity(alg.even_dim(), alg.odd_dim()) {
        return fail(format!("the idempotents sum to {}, which is not a unit", basis.format_vector(&sum)));
    }
    let primitive = idempotents.iter().map(|e| primitivity(alg, e)).collect::<Result<_>>()?;
    Ok(JordanFrame { idempotents: idempotents.to_vec(), primitive })
}

/// `e` is primitive iff `P1(e) ∩ J0 = span{e}` admits no idempotent besides
/// `0, e`. For a 2-dimensional block `span{e, f}` with `f² = αe + γf` the
/// block is `K ⊕ K` exactly when `γ² + 4α > 0`.
pub fn primitivity<F: Field>(alg: &SuperAlgebra<F>, e: &[F]) -> Result<Primitivity> {
    let p = peirce_of_idempotent(alg, e)?;
    let even = even_subspace(alg, &p.s1);
    match even.dim() {
        0 | 1 => Ok(Primitivity::Yes),
        2 => {
            let mut span = Subspace::zero(alg.dim());
            span.insert(e)?;
            let f = even
                .basis()
                .iter()
                .find(|v| !span.contains(v))
                .cloned()
                .ok_or_else(|| Error::Internal("Peirce block does not contain e".into()))?;
            let f2 = alg.mul(&f, &f);
            let fam = Matrix::from_columns(alg.dim(), &[e.to_vec(), f.clone()])?;
            let c = fam
                .solve(&f2)?
                .ok_or_else(|| Error::Internal("P1(e) is not a subalgebra".into()))?;
            let disc = c[1].mul(&c[1]).add(&F::from_int(4).mul(&c[0]));
            Ok(match disc.as_rational() {
                Some(d) if d.is_positive() => Primitivity::No,
                Some(_) => Primitivity::Yes,
                None => Primitivity::Unknown,
            })
        }
        _ => Ok(Primitivity::Unknown),
    }
}

fn even_subspace<F: Field>(alg: &SuperAlgebra<F>, s: &Subspace<F>) -> Subspace<F> {
    let vectors: Vec<Vec<F>> = s.basis().iter().map(|v| alg.basis().even_part(v)).collect();
    Subspace::span(alg.dim(), &vectors).expect("same dimension")
}

#[derive(Clone, Debug)]
pub struct FramePeirce<F: Field> {
    pub frame: JordanFrame<F>,
    /// Blocks `P_ij` for `i <= j`.
    pub blocks: BTreeMap<(usize, usize), Subspace<F>>,
}

impl<F: Field> FramePeirce<F> {
    pub fn block(&self, i: usize, j: usize) -> &Subspace<F> {
        &self.blocks[&(i.min(j), i.max(j))]
    }

    /// Component of `v` in every block (the blocks are a direct sum).
    pub fn components(&self, v: &[F]) -> Result<BTreeMap<(usize, usize), Vec<F>>> {
        let keys: Vec<(usize, usize)> = self.blocks.keys().copied().collect();
        let mut columns = Vec::new();
        let mut owner = Vec::new();
        for k in &keys {
            for b in self.blocks[k].basis() {
                columns.push(b.clone());
                owner.push(*k);
            }
        }
        let n = v.len();
        let m = Matrix::from_columns(n, &columns)?;
        let c = m.solve(v)?.ok_or_else(|| Error::Internal("Peirce blocks do not span".into()))?;
        let mut out: BTreeMap<(usize, usize), Vec<F>> = keys.iter().map(|k| (*k, vec![F::zero(); n])).collect();
        for ((coef, col), k) in c.iter().zip(&columns).zip(&owner) {
            let slot = out.get_mut(k).expect("known key");
            for (s, x) in slot.iter_mut().zip(col) {
                *s = s.add(&coef.mul(x));
            }
        }
        Ok(out)
    }
}

/// Joint Peirce blocks of a frame: `P_ii = P1(e_i)` and
/// `P_ij = P½(e_i) ∩ P½(e_j)`; completeness and all multiplication rules are
/// verified.
pub fn frame_peirce<F: Field>(alg: &SuperAlgebra<F>, frame: &JordanFrame<F>) -> Result<FramePeirce<F>> {
    let r = frame.len();
    let peirce: Vec<PeirceDecomposition<F>> =
        frame.idempotents.iter().map(|e| peirce_of_idempotent(alg, e)).collect::<Result<_>>()?;
    let mut blocks = BTreeMap::new();
    let mut total = 0;
    let mut sum = Subspace::zero(alg.dim());
    for i in 0..r {
        for j in i..r {
            let b = if i == j { peirce[i].s1.clone() } else { peirce[i].s_half.intersect(&peirce[j].s_half) };
            total += b.dim();
            sum = sum.sum(&b);
            blocks.insert((i, j), b);
        }
    }
    if total != alg.dim() || sum.dim() != alg.dim() {
        return Err(Error::InvalidFrame(format!(
            "Peirce blocks have total dimension {total} and span dimension {}, expected {}",
            sum.dim(),
            alg.dim()
        )));
    }
    let fp = FramePeirce { frame: frame.clone(), blocks };
    check_frame_rules(alg, &fp).map_err(Error::IdentityFailed)?;
    Ok(fp)
}

/// Where `{P_ij, P_kl}` must land according to the frame multiplication rules.
fn rule_target<F: Field>(fp: &FramePeirce<F>, n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> Subspace<F> {
    let zero = Subspace::zero(n);
    let diag1 = i == j;
    let diag2 = k == l;
    match (diag1, diag2) {
        (true, true) => {
            if i == k {
                fp.block(i, i).clone()
            } else {
                zero
            }
        }
        (true, false) | (false, true) => {
            let (d, (a, b)) = if diag1 { (i, (k, l)) } else { (k, (i, j)) };
            if d == a || d == b {
                fp.block(a, b).clone()
            } else {
                zero
            }
        }
        (false, false) => {
            let s1 = [i.min(j), i.max(j)];
            let s2 = [k.min(l), k.max(l)];
            if s1 == s2 {
                fp.block(s1[0], s1[0]).sum(fp.block(s1[1], s1[1]))
            } else {
                let shared: Vec<usize> = s1.iter().filter(|x| s2.contains(x)).copied().collect();
                match shared.as_slice() {
                    [c] => {
                        let a = if s1[0] == *c { s1[1] } else { s1[0] };
                        let b = if s2[0] == *c { s2[1] } else { s2[0] };
                        fp.block(a, b).clone()
                    }
                    _ => zero,
                }
            }
        }
    }
}

/// All clauses: `P_ii` subalgebras with `{P_ii,P_jj} = 0`;
/// `{P_ii,P_ij} ⊆ P_ij`, `{P_ii,P_jk} = 0`; `{P_ij,P_ij} ⊆ P_ii ⊕ P_jj`,
/// `{P_ij,P_jk} ⊆ P_ik`, `{P_ij,P_kl} = 0`.
pub fn check_frame_rules<F: Field>(alg: &SuperAlgebra<F>, fp: &FramePeirce<F>) -> std::result::Result<(), String> {
    let keys: Vec<(usize, usize)> = fp.blocks.keys().copied().collect();
    for &a in &keys {
        for &b in &keys {
            let target = rule_target(fp, alg.dim(), a, b);
            if !products_within(alg, &fp.blocks[&a], &fp.blocks[&b], &target) {
                return Err(format!("{{P_{}{}, P_{}{}}} is not where the Peirce rules put it", a.0 + 1, a.1 + 1, b.0 + 1, b.1 + 1));
            }
        }
    }
    Ok(())
}

/// `β(Pλ, Pλ') = 0` for distinct eigenvalues of one idempotent.
pub fn beta_orthogonal_idempotent<F: Field>(beta: &BilinearForm<F>, p: &PeirceDecomposition<F>) -> bool {
    let parts = p.parts();
    (0..3).all(|i| (0..3).filter(|&j| j != i).all(|j| orthogonal(beta, parts[i].2, parts[j].2)))
}

/// `β(P_ij, P_kl) = 0` unless `{i,j} = {k,l}`.
pub fn beta_orthogonality_check<F: Field>(beta: &BilinearForm<F>, fp: &FramePeirce<F>) -> bool {
    fp.blocks
        .iter()
        .all(|(a, sa)| fp.blocks.iter().filter(|(b, _)| *b != a).all(|(_, sb)| orthogonal(beta, sa, sb)))
}

fn orthogonal<F: Field>(beta: &BilinearForm<F>, a: &Subspace<F>, b: &Subspace<F>) -> bool {
    a.basis().iter().all(|u| b.basis().iter().all(|v| beta.eval(u, v).is_zero()))
}

/// Minimal polynomial of `x` relative to a unit `u` of the subalgebra it
/// lives in, as coefficients from the constant term upwards (monic).
pub fn minimal_polynomial<F: Field>(alg: &SuperAlgebra<F>, x: &[F], unit: &[F]) -> Result<Vec<F>> {
    let n = alg.dim();
    let mut powers = vec![unit.to_vec()];
    let mut span = Subspace::zero(n);
    span.insert(unit)?;
    let mut current = unit.to_vec();
    loop {
        current = if powers.len() == 1 { x.to_vec() } else { alg.mul(x, &current) };
        if span.contains(&current) {
            let m = Matrix::from_columns(n, &powers)?;
            let c = m.solve(&current)?.ok_or_else(|| Error::Internal("power lies in span but is unsolvable".into()))?;
            let mut coeffs: Vec<F> = c.iter().map(|v| v.neg()).collect();
            coeffs.push(F::one());
            return Ok(coeffs);
        }
        span.insert(&current)?;
        powers.push(current.clone());
        if powers.len() > n + 1 {
            return Err(Error::Internal("powers never became dependent".into()));
        }
    }
}

#[derive(Clone, Debug)]
pub enum Eigenvalues {
    Exact(Vec<Rational>),
    Numeric(Vec<f64>),
}

/// Coarse spectral decomposition `x = Σ λ_i e_i` with distinct `λ_i`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub element: Vec<Rational>,
    pub lambdas: Eigenvalues,
    /// Exact coarse frame; `None` on the numeric path.
    pub frame: Option<JordanFrame<Rational>>,
    /// Rank of each coarse idempotent (number of primitive idempotents in it).
    pub multiplicities: Vec<usize>,
}

impl SpectralData {
    pub fn exact_lambdas(&self) -> Option<&[Rational]> {
        match &self.lambdas {
            Eigenvalues::Exact(v) => Some(v),
            Eigenvalues::Numeric(_) => None,
        }
    }

    pub fn approx_lambdas(&self) -> Vec<f64> {
        match &self.lambdas {
            Eigenvalues::Exact(v) => v.iter().map(to_f64).collect(),
            Eigenvalues::Numeric(v) => v.clone(),
        }
    }
}

fn to_poly(coeffs: &[Rational]) -> Poly {
    coeffs.iter().enumerate().fold(Poly::zero(), |acc, (k, c)| acc.add(&Poly::var(0).pow(k as u32).scale(c)))
}

fn eval_univariate(coeffs: &[Rational], s: &Rational) -> Rational {
    coeffs.iter().rev().fold(int(0), |acc, c| acc * s + c)
}

/// All complex roots of a polynomial with floating coefficients
/// (Durand-Kerner iteration).
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..deg).map(|k| Complex64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    z
}

/// A rational with denominator at most `bound` approximating `r`, if one of
/// the continued-fraction convergents is an exact root.
fn rational_root_near(coeffs: &[Rational], r: f64, bound: i64) -> Option<Rational> {
    let mut candidates = Vec::new();
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut x = r;
    for _ in 0..40 {
        let a = x.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > bound as i128 {
            break;
        }
        candidates.push(Rational::new(h2.into(), k2.into()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    candidates.into_iter().rev().find(|c| eval_univariate(coeffs, c).is_zero())
}

/// Exact rational roots of a squarefree rational polynomial, and whether
/// they account for every root.
fn rational_roots(coeffs: &[Rational]) -> (Vec<Rational>, bool) {
    let deg = coeffs.len() - 1;
    let approx: Vec<f64> = coeffs.iter().map(to_f64).collect();
    let mut found: Vec<Rational> = Vec::new();
    for z in complex_roots(&approx) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        if let Some(q) = rational_root_near(coeffs, z.re, 1_000_000_000_000) {
            if !found.contains(&q) {
                found.push(q);
            }
        }
    }
    found.sort();
    let complete = found.len() == deg;
    (found, complete)
}

/// Lagrange idempotents `e_i = Π_{j≠i} (x - λ_j)/(λ_i - λ_j)` evaluated with
/// the Jordan powers of `x`.
fn lagrange_idempotents(alg: &SuperAlgebra<Rational>, x: &[Rational], unit: &[Rational], lambdas: &[Rational]) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let mut powers = vec![unit.to_vec(), x.to_vec()];
    while powers.len() < lambdas.len() {
        let next = alg.mul(x, powers.last().expect("nonempty"));
        powers.push(next);
    }
    lambdas
        .iter()
        .enumerate()
        .map(|(i, li)| {
            // Coefficients of the interpolation polynomial, constant term first.
            let mut poly = vec![int(1)];
            for (j, lj) in lambdas.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = li - lj;
                let mut next = vec![int(0); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c / &d;
                    next[k] -= c * lj / &d;
                }
                poly = next;
            }
            let mut e = vec![int(0); n];
            for (c, p) in poly.iter().zip(&powers) {
                for (s, v) in e.iter_mut().zip(p) {
                    *s += c * v;
                }
            }
            e
        })
        .collect()
}

/// Rank of the unital subalgebra `P1(e) ∩ J0`: the largest degree of the
/// minimal polynomial over a few pseudo-random elements.
pub fn idempotent_rank(alg: &SuperAlgebra<Rational>, e: &[Rational]) -> Result<usize> {
    let p = peirce_of_idempotent(alg, e)?;
    let even = even_subspace(alg, &p.s1);
    if even.dim() <= 1 {
        return Ok(even.dim());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = 1;
    for _ in 0..4 {
        let mut y = vec![int(0); alg.dim()];
        for b in even.basis() {
            let c = int(rng.gen_range(-50..=50));
            for (s, v) in y.iter_mut().zip(b) {
                *s += &c * v;
            }
        }
        best = best.max(minimal_polynomial(alg, &y, e)?.len() - 1);
    }
    Ok(best)
}

/// Coarse spectral decomposition of an even element of a unital algebra.
/// Rational eigenvalues give an exact frame; otherwise the eigenvalues are
/// returned as floats and only primitive coarse idempotents are accepted.
pub fn spectral(alg: &SuperAlgebra<Rational>, x: &[Rational]) -> Result<SpectralData> {
    if x.len() != alg.dim() {
        return Err(Error::DimensionMismatch(format!("point of length {} in dimension {}", x.len(), alg.dim())));
    }
    if alg.basis().parity_of(x) != Some(0) {
        return Err(Error::NotHomogeneous);
    }
    let unit = alg.find_unit().ok_or_else(|| Error::Precondition("the algebra is not unital".into()))?;
    let minpoly = minimal_polynomial(alg, x, &unit)?;
    let p = to_poly(&minpoly);
    let g = Poly::gcd(&p, &p.derivative(0));
    if !g.is_constant() {
        return Err(Error::Spectral(format!(
            "minimal polynomial {} has a repeated root; the even part is not positive",
            p.fmt_with(&|_| "s".into())
        )));
    }
    let (roots, complete) = rational_roots(&minpoly);
    if complete {
        let idempotents = lagrange_idempotents(alg, x, &unit, &roots);
        let mut recon = vec![int(0); alg.dim()];
        for (l, e) in roots.iter().zip(&idempotents) {
            for (s, v) in recon.iter_mut().zip(e) {
                *s += l * v;
            }
        }
        if recon != x {
            return Err(Error::Spectral("x differs from Σ λ_i e_i".into()));
        }
        let frame = check_frame(alg, &idempotents)?;
        let multiplicities = idempotents.iter().map(|e| idempotent_rank(alg, e)).collect::<Result<_>>()?;
        return Ok(SpectralData { element: x.to_vec(), lambdas: Eigenvalues::Exact(roots), frame: Some(frame), multiplicities });
    }
    numeric_spectral(alg, x, &unit, &minpoly)
}

fn numeric_spectral(alg: &SuperAlgebra<Rational>, x: &[Rational], unit: &[Rational], minpoly: &[Rational]) -> Result<SpectralData> {
    let approx: Vec<f64> = minpoly.iter().map(to_f64).collect();
    let mut lambdas = Vec::new();
    for z in complex_roots(&approx) {
        if z.im.abs() > NUMERIC_TOLERANCE * (1.0 + z.re.abs()) {
            return Err(Error::Spectral("non-real eigenvalue; the even part is not positive".into()));
        }
        lambdas.push(z.re);
    }
    lambdas.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    if lambdas.windows(2).any(|w| (w[1] - w[0]).abs() < NUMERIC_TOLERANCE) {
        return Err(Error::Spectral("eigenvalues are not separated at the numeric tolerance".into()));
    }
    // Float idempotents, used only to read off the dimension of P1(e_i)_0.
    let n = alg.dim();
    let fx: Vec<f64> = x.iter().map(to_f64).collect();
    let fu: Vec<f64> = unit.iter().map(to_f64).collect();
    let consts: Vec<f64> = alg.constants().iter().map(to_f64).collect();
    let fmul = |a: &[f64], b: &[f64]| {
        let mut out = vec![0.0; n];
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += a[i] * b[j] * consts[(i * n + j) * n + k];
                }
            }
        }
        out
    };
    let mut powers = vec![fu.clone(), fx.clone()];
    while powers.len() < lambdas.len() {
        let next = fmul(&fx, powers.last().expect("nonempty"));
        powers.push(next);
    }
    let mut multiplicities = Vec::new();
    for (i, li) in lambdas.iter().enumerate() {
        let mut poly = vec![1.0];
        for (j, lj) in lambdas.iter().enumerate() {
            if i != j {
                let d = li - lj;
                let mut next = vec![0.0; poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c / d;
                    next[k] -= c * lj / d;
                }
                poly = next;
            }
        }
        let mut e = vec![0.0; n];
        for (c, p) in poly.iter().zip(&powers) {
            for (s, v) in e.iter_mut().zip(p) {
                *s += c * v;
            }
        }
        // dim of the 1-eigenspace of L_e on J0.
        let m = alg.even_dim();
        let mut rows: Vec<Vec<f64>> = (0..m)
            .map(|r| (0..m).map(|c| fmul(&e, &unit_f(n, c))[r] - if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        let rank = float_rank(&mut rows, 1e-7);
        if m - rank != 1 {
            return Err(Error::Spectral(
                "irrational eigenvalue with a non-primitive coarse idempotent; multiplicity undetermined".into(),
            ));
        }
        multiplicities.push(1);
    }
    Ok(SpectralData { element: x.to_vec(), lambdas: Eigenvalues::Numeric(lambdas), frame: None, multiplicities })
}

fn unit_f(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

fn float_rank(rows: &mut [Vec<f64>], tol: f64) -> usize {
    let (nr, nc) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).max_by(|&a, &b| rows[a][c].abs().partial_cmp(&rows[b][c].abs()).expect("finite")) else {
            break;
        };
        if rows[p][c].abs() < tol {
            continue;
        }
        rows.swap(rank, p);
        for r in 0..nr {
            if r != rank {
                let f = rows[r][c] / rows[rank][c];
                for k in c..nc {
                    rows[r][k] -= f * rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralSignature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

/// Counts of positive, zero and negative eigenvalues with multiplicity.
pub fn spectral_signature(data: &SpectralData) -> Result<SpectralSignature> {
    let mut sig = SpectralSignature { positive: 0, zero: 0, negative: 0 };
    let signs: Vec<i8> = match &data.lambdas {
        Eigenvalues::Exact(v) => v.iter().map(crate::scalar::sign).collect(),
        Eigenvalues::Numeric(v) => v
            .iter()
            .map(|l| {
                if l.abs() < NUMERIC_TOLERANCE {
                    Err(Error::AmbiguousSign(*l))
                } else {
                    Ok(if *l > 0.0 { 1 } else { -1 })
                }
            })
            .collect::<Result<_>>()?,
    };
    for (s, m) in signs.iter().zip(&data.multiplicities) {
        match s {
            1 => sig.positive += m,
            0 => sig.zero += m,
            _ => sig.negative += m,
        }
    }
    Ok(sig)
}

#[derive(Clone, Debug)]
pub struct BetaSummand {
    pub ideal: Subspace<Rational>,
    /// Gram matrix of β on the echelon basis of the ideal (even vectors first).
    pub beta: BilinearForm<Rational>,
    /// Set when the multiplication algebra of the summand is all of `End`,
    /// which certifies that it is simple.
    pub certified_simple: bool,
}

impl BetaSummand {
    /// The summand as an algebra in its echelon basis, with the inclusion.
    pub fn algebra(&self, parent: &SuperAlgebra<Rational>, prefix: &str) -> Result<(SuperAlgebra<Rational>, Matrix<Rational>)> {
        parent.subalgebra(&self.ideal, prefix)
    }
}

/// Splits `(J, β)` into β-nondegenerate ideals that admit no further
/// β-nondegenerate proper ideal among the seeds tried (ideal closures of the
/// basis vectors of each piece and of idempotents of its center).
pub fn beta_irreducible_decomposition(alg: &SuperAlgebra<Rational>, beta: &BilinearForm<Rational>) -> Result<Vec<BetaSummand>> {
    let report = alg.check_form(beta);
    if !report.all() {
        return Err(Error::Precondition(format!("β is not a valid form: {:?}", report.failures)));
    }
    let mut pending = vec![Subspace::full(alg.dim())];
    let mut done = Vec::new();
    while let Some(v) = pending.pop() {
        match find_nondegenerate_ideal(alg, beta, &v)? {
            Some(i) => {
                let perp = orthogonal_complement(beta, &v, &i)?;
                pending.push(perp);
                pending.push(i);
            }
            None => done.push(v),
        }
    }
    done.sort_by_key(|s| s.pivots().first().copied().unwrap_or(usize::MAX));
    done.into_iter()
        .map(|ideal| {
            let basis = graded_basis(alg, &ideal)?;
            let gram = Matrix::from_fn(basis.len(), basis.len(), |i, j| beta.eval(&basis[i], &basis[j]));
            let certified_simple = multiplication_algebra_is_full(alg, &ideal, &basis)?;
            Ok(BetaSummand { ideal, beta: BilinearForm::new(gram)?, certified_simple })
        })
        .collect()
}

fn graded_basis(alg: &SuperAlgebra<Rational>, s: &Subspace<Rational>) -> Result<Vec<Vec<Rational>>> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for v in s.basis() {
        match alg.basis().parity_of(v) {
            Some(0) => even.push(v.clone()),
            Some(_) => odd.push(v.clone()),
            None => return Err(Error::NotHomogeneous),
        }
    }
    even.extend(odd);
    Ok(even)
}

fn is_nondegenerate_on(beta: &BilinearForm<Rational>, s: &Subspace<Rational>) -> bool {
    let b = s.basis();
    Matrix::from_fn(b.len(), b.len(), |i, j| beta.eval(&b[i], &b[j])).is_invertible()
}

fn find_nondegenerate_ideal(
    alg: &SuperAlgebra<Rational>,
    beta: &BilinearForm<Rational>,
    v: &Subspace<Rational>,
) -> Result<Option<Subspace<Rational>>> {
    let mut seeds: Vec<Vec<Rational>> = v.basis().to_vec();
    seeds.extend(central_idempotents(alg, v)?);
    let mut best: Option<Subspace<Rational>> = None;
    for s in seeds {
        let closure = alg.ideal_closure(&[s]);
        if closure.dim() == 0 || closure.dim() >= v.dim() || !is_nondegenerate_on(beta, &closure) {
            continue;
        }
        if best.as_ref().is_none_or(|b| closure.dim() < b.dim()) {
            best = Some(closure);
        }
    }
    Ok(best)
}

/// `{w ∈ V : β(w, I) = 0}`.
fn orthogonal_complement(beta: &BilinearForm<Rational>, v: &Subspace<Rational>, i: &Subspace<Rational>) -> Result<Subspace<Rational>> {
    let vb = v.basis();
    let ib = i.basis();
    let m = Matrix::from_fn(ib.len(), vb.len(), |r, c| beta.eval(&vb[c], &ib[r]));
    let ker = m.kernel();
    let n = beta.dim();
    let vectors: Vec<Vec<Rational>> = ker
        .basis()
        .iter()
        .map(|c| {
            let mut w = vec![int(0); n];
            for (coef, b) in c.iter().zip(vb) {
                for (s, x) in w.iter_mut().zip(b) {
                    *s += coef * x;
                }
            }
            w
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// Idempotents of the center of the subalgebra `V` (even elements whose
/// multiplication commutes with every `L_a`, `a ∈ V`), found by
/// decomposing a pseudo-random central element with rational spectrum.
fn central_idempotents(alg: &SuperAlgebra<Rational>, v: &Subspace<Rational>) -> Result<Vec<Vec<Rational>>> {
    let n = alg.dim();
    let basis = graded_basis(alg, v)?;
    let even: Vec<&Vec<Rational>> = basis.iter().filter(|b| alg.basis().parity_of(b) == Some(0)).collect();
    if even.len() < 2 {
        return Ok(Vec::new());
    }
    // Unknown coefficients c_k with z = Σ c_k even_k and [L_z, L_b] = 0.
    let ops: Vec<SuperOperator<Rational>> = basis.iter().map(|b| alg.left_mult(b)).collect::<Result<_>>()?;
    let even_ops: Vec<SuperOperator<Rational>> = even.iter().map(|b| alg.left_mult(b)).collect::<Result<_>>()?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for lb in &ops {
        let cols: Vec<Vec<Rational>> = even_ops.iter().map(|lz| lz.bracket(lb).matrix().entries().to_vec()).collect();
        for r in 0..n * n {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let center = Matrix::from_rows(rows)?.kernel();
    if center.dim() < 2 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut z = vec![int(0); n];
    for c in center.basis() {
        let coef = int(rng.gen_range(1..=97));
        for (k, ck) in c.iter().enumerate() {
            for (s, x) in z.iter_mut().zip(even[k]) {
                *s += &coef * ck * x;
            }
        }
    }
    // The unit of V is needed for the powers; skip non-unital pieces.
    let Some(unit) = local_unit(alg, v, &basis)? else { return Ok(Vec::new()) };
    let minpoly = minimal_polynomial(alg, &z, &unit)?;
    let (roots, complete) = rational_roots(&minpoly);
    if !complete || !Poly::gcd(&to_poly(&minpoly), &to_poly(&minpoly).derivative(0)).is_constant() {
        return Ok(Vec::new());
    }
    Ok(lagrange_idempotents(alg, &z, &unit, &roots))
}

fn local_unit(alg: &SuperAlgebra<Rational>, v: &Subspace<Rational>, basis: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    let n = alg.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for b in basis {
        // Σ c_k {u_k, b} = b
        let cols: Vec<Vec<Rational>> = basis.iter().map(|u| alg.mul(u, b)).collect();
        for r in 0..n {
            rows.push(cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
            rhs.push(b[r].clone());
        }
    }
    let m = Matrix::from_rows(rows)?;
    let _ = v;
    Ok(m.solve(&rhs)?.map(|c| {
        let mut u = vec![int(0); n];
        for (coef, b) in c.iter().zip(basis) {
            for (s, x) in u.iter_mut().zip(b) {
                *s += coef * x;
            }
        }
        u
    }))
}

/// Whether the associative algebra generated by `L_a|_V, R_a|_V` is all of
/// `End(V)`, i.e. `V` has no proper nonzero ideal.
fn multiplication_algebra_is_full(alg: &SuperAlgebra<Rational>, v: &Subspace<Rational>, basis: &[Vec<Rational>]) -> Result<bool> {
    let d = basis.len();
    let restrict = |m: &Matrix<Rational>| -> Result<Matrix<Rational>> {
        let mut cols = Vec::with_capacity(d);
        for b in basis {
            let img = m.apply(b);
            let fam = Matrix::from_columns(alg.dim(), basis)?;
            cols.push(fam.solve(&img)?.ok_or_else(|| Error::Internal("V is not an ideal".into()))?);
        }
        Matrix::from_columns(d, &cols)
    };
    let _ = v;
    let mut gens = Vec::new();
    for b in basis {
        gens.push(restrict(alg.left_mult(b)?.matrix())?);
        gens.push(restrict(&alg.right_mult_matrix(b))?);
    }
    let mut span = Subspace::zero(d * d);
    let mut elems: Vec<Matrix<Rational>> = Vec::new();
    for g in &gens {
        if span.insert(g.entries())? {
            elems.push(g.clone());
        }
    }
    let mut frontier = elems.clone();
    while !frontier.is_empty() && span.dim() < d * d {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                let p = a.mul(g);
                if span.insert(p.entries())? {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(span.dim() == d * d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub semisimple: bool,
    pub positive: bool,
    pub euclidean: Option<bool>,
    pub pseudo_euclidean: Option<bool>,
    pub unital: bool,
    pub signature: Option<(usize, usize)>,
}

/// Semisimple: τ associative and nondegenerate. Positive: τ associative with
/// positive definite even block. (Pseudo-)Euclidean refers to the given β.
pub fn classify(alg: &SuperAlgebra<Rational>, beta: Option<&BilinearForm<Rational>>) -> Result<Classification> {
    let tau = alg.canonical_form_tau();
    let tau_report = alg.check_form(&tau);
    let semisimple = tau_report.associative && tau_report.nondegenerate;
    let m = alg.even_dim();
    let tau0 = Matrix::from_fn(m, m, |i, j| tau.matrix().get(i, j).clone());
    let inertia = symmetric_signature(&tau0)?;
    let positive = tau_report.associative && inertia.positive == m;
    let unital = alg.find_unit().is_some();
    if positive && !unital {
        return Err(Error::Internal("positive algebra without a unit".into()));
    }
    let (euclidean, pseudo_euclidean, signature) = match beta {
        None => (None, None, None),
        Some(b) => match b.signature(alg) {
            Ok((r, s)) => (Some(s == 0), Some(true), Some((r, s))),
            Err(_) => (Some(false), Some(false), None),
        },
    };
    Ok(Classification { semisimple, positive, euclidean, pseudo_euclidean, unital, signature })
}

/// Signs of the coefficients of `x` in a given exact frame, used when the
/// frame is known in advance.
pub fn coefficients_in_frame(frame: &JordanFrame<Rational>, x: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let n = x.len();
    let m = Matrix::from_columns(n, &frame.idempotents)?;
    m.solve(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperBasis;
    use crate::catalog::{make_dt, make_gl_plus, make_k3, make_spin, make_st_rd, parse_catalog_name};
    use crate::scalar::frac;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn dt_peirce_of_e1() {
        let e = make_dt(&int(2));
        let p = peirce_of_idempotent(&e.algebra, &v(&[1, 0, 0, 0])).unwrap();
        assert_eq!(p.s1, Subspace::span(4, &[v(&[1, 0, 0, 0])]).unwrap());
        assert_eq!(p.s0, Subspace::span(4, &[v(&[0, 1, 0, 0])]).unwrap());
        assert_eq!(p.s_half, Subspace::span(4, &[v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap());
        check_peirce(&e.algebra, &p).unwrap();
        let unit = peirce_of_idempotent(&e.algebra, &v(&[1, 1, 0, 0])).unwrap();
        assert_eq!(unit.s1.dim(), 4);
        assert_eq!(unit.s0.dim() + unit.s_half.dim(), 0);
        assert!(matches!(peirce_of_idempotent(&e.algebra, &v(&[2, 0, 0, 0])), Err(Error::NotIdempotent(_))));
    }

    #[test]
    fn frames() {
        let dt = make_dt(&int(3));
        let f = check_frame(&dt.algebra, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        assert!(f.all_primitive());
        let one = check_frame(&dt.algebra, &[v(&[1, 1, 0, 0])]).unwrap();
        assert_eq!(one.primitive, vec![Primitivity::No]);
        assert!(check_frame(&dt.algebra, &[v(&[1, 0, 0, 0])]).is_err());
        // Spin(1|2): (1 ± e)/2 in the natural basis.
        let spin = make_spin(1, 2).unwrap();
        let f = spin.frame.clone().unwrap();
        let fr = check_frame(&spin.algebra, &f).unwrap();
        assert!(fr.all_primitive());
        let fp = frame_peirce(&spin.algebra, &fr).unwrap();
        assert!(beta_orthogonality_check(spin.beta.as_ref().unwrap(), &fp));
    }

    #[test]
    fn dt_frame_blocks() {
        let dt = make_dt(&int(2));
        let fr = check_frame(&dt.algebra, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let fp = frame_peirce(&dt.algebra, &fr).unwrap();
        assert_eq!(fp.block(0, 0).basis(), &[v(&[1, 0, 0, 0])]);
        assert_eq!(fp.block(1, 1).basis(), &[v(&[0, 1, 0, 0])]);
        assert_eq!(fp.block(0, 1).dim(), 2);
        assert!(beta_orthogonality_check(dt.beta.as_ref().unwrap(), &fp));
        let trivial = frame_peirce(&dt.algebra, &check_frame(&dt.algebra, &[v(&[1, 1, 0, 0])]).unwrap()).unwrap();
        assert_eq!(trivial.block(0, 0).dim(), 4);
        assert!(beta_orthogonal_idempotent(dt.beta.as_ref().unwrap(), &peirce_of_idempotent(&dt.algebra, &v(&[1, 0, 0, 0])).unwrap()));
    }

    #[test]
    fn gl22_frame_rules() {
        let gl = make_gl_plus(2, 2);
        let fr = check_frame(&gl.algebra, gl.frame.as_ref().unwrap()).unwrap();
        assert_eq!(fr.len(), 4);
        let fp = frame_peirce(&gl.algebra, &fr).unwrap();
        // Brute force: every product of block basis vectors has the joint
        // eigenvalues predicted by the index pattern.
        let ops: Vec<_> = fr.idempotents.iter().map(|e| gl.algebra.left_mult(e).unwrap()).collect();
        let eig = |w: &[Rational], k: usize| -> Option<Rational> {
            let img = ops[k].apply(w);
            [int(0), frac(1, 2), int(1)].into_iter().find(|l| img.iter().zip(w).all(|(a, b)| *a == l * b))
        };
        for (a, sa) in &fp.blocks {
            for (b, sb) in &fp.blocks {
                for u in sa.basis() {
                    for w in sb.basis() {
                        let p = gl.algebra.mul(u, w);
                        if p.iter().all(|c| c.is_zero()) {
                            continue;
                        }
                        let comps = fp.components(&p).unwrap();
                        for (key, c) in comps {
                            if c.iter().all(|x| x.is_zero()) {
                                continue;
                            }
                            // A nonzero component in P_kl: indices must come
                            // from the union with the shared index cancelled.
                            let idx = [a.0, a.1, b.0, b.1];
                            assert!(idx.contains(&key.0) && idx.contains(&key.1), "{a:?}{b:?} -> {key:?}");
                            for k in 0..4 {
                                assert!(eig(&c, k).is_some());
                            }
                        }
                    }
                }
            }
        }
        assert!(beta_orthogonality_check(gl.beta.as_ref().unwrap(), &fp));
    }

    #[test]
    fn spectral_examples() {
        let dt = make_dt(&int(2));
        let s = spectral(&dt.algebra, &v(&[2, 3, 0, 0])).unwrap();
        assert_eq!(s.exact_lambdas().unwrap(), &[int(2), int(3)]);
        assert_eq!(s.frame.as_ref().unwrap().idempotents, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        assert_eq!(spectral_signature(&s).unwrap(), SpectralSignature { positive: 2, zero: 0, negative: 0 });
        let s = spectral(&dt.algebra, &v(&[5, 5, 0, 0])).unwrap();
        assert_eq!(s.exact_lambdas().unwrap(), &[int(5)]);
        assert_eq!(s.multiplicities, vec![2]);
        let s = spectral(&dt.algebra, &v(&[0, 0, 0, 0])).unwrap();
        assert_eq!(spectral_signature(&s).unwrap(), SpectralSignature { positive: 0, zero: 2, negative: 0 });
        let one = spectral(&dt.algebra, &v(&[1, 1, 0, 0])).unwrap();
        assert_eq!(one.exact_lambdas().unwrap(), &[int(1)]);
        let gl = make_gl_plus(1, 1);
        let s = spectral(&gl.algebra, &v(&[1, -1, 0, 0])).unwrap();
        assert_eq!(spectral_signature(&s).unwrap(), SpectralSignature { positive: 1, zero: 0, negative: 1 });
        assert!(matches!(spectral(&dt.algebra, &v(&[0, 0, 1, 0])), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn spectral_on_spin_factor() {
        // Spin(3|0): x = 1 + v1 has eigenvalues 0 and 2 with rank-one idempotents.
        let spin = make_spin(3, 0).unwrap();
        let a = &spin.algebra;
        let one = a.find_unit().unwrap();
        let x: Vec<Rational> = one.iter().zip(spin.label_vector("x")).map(|(p, q)| p + q).collect();
        let s = spectral(a, &x).unwrap();
        assert_eq!(s.exact_lambdas().unwrap(), &[int(0), int(2)]);
        assert_eq!(s.multiplicities, vec![1, 1]);
        // Irrational spectrum: 1 + sqrt(2) v1 is not rational, but x = v1 + v2
        // has eigenvalues ±sqrt(2).
        let y: Vec<Rational> = spin.label_vector("x").iter().zip(spin.label_vector("y")).map(|(p, q)| p + q).collect();
        let s = spectral(a, &y).unwrap();
        let approx = s.approx_lambdas();
        assert!(s.frame.is_none());
        assert!((approx[0] + 2f64.sqrt()).abs() < 1e-9 && (approx[1] - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(spectral_signature(&s).unwrap(), SpectralSignature { positive: 1, zero: 0, negative: 1 });
    }

    #[test]
    fn decomposition_of_st_r2() {
        let st = make_st_rd(&int(2), 2).unwrap();
        let parts = beta_irreducible_decomposition(&st.algebra, st.beta.as_ref().unwrap()).unwrap();
        assert_eq!(parts.len(), 2);
        let dt = make_dt(&int(2));
        for p in &parts {
            assert_eq!(p.ideal.dim(), 4);
            assert!(p.certified_simple);
            let (sub, _) = p.algebra(&st.algebra, "b").unwrap();
            let iso = dt.algebra.verify_homomorphism(&Matrix::identity(4), &sub).unwrap();
            assert!(iso.isomorphism);
        }
        assert!(parts[0].ideal.intersect(&parts[1].ideal).dim() == 0);
        let single = beta_irreducible_decomposition(&dt.algebra, dt.beta.as_ref().unwrap()).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].certified_simple);
    }

    #[test]
    fn central_idempotents_split_a_product_of_fields() {
        // K ⊕ K with β = identity: basis u = e1 + e2, w = e1 - e2 hides the
        // ideals from the basis-vector seeds.
        let basis = SuperBasis::new(&["u", "w"], &[] as &[&str]).unwrap();
        let alg = SuperAlgebra::from_fn(basis, |i, j| match (i, j) {
            (0, 0) | (1, 1) => v(&[1, 0]),
            _ => v(&[0, 1]),
        })
        .unwrap();
        let beta = BilinearForm::new(Matrix::identity(2)).unwrap();
        assert!(alg.check_form(&beta).all());
        let parts = beta_irreducible_decomposition(&alg, &beta).unwrap();
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn classifications() {
        let k3 = make_k3();
        let beta = BilinearForm::new(Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => int(1),
            (1, 2) => int(2),
            (2, 1) => int(-2),
            _ => int(0),
        }))
        .unwrap();
        let c = classify(&k3.algebra, Some(&beta)).unwrap();
        assert_eq!((c.euclidean, c.positive, c.semisimple, c.unital), (Some(true), false, false, false));
        let dt = make_dt(&int(2));
        let c = classify(&dt.algebra, dt.beta.as_ref()).unwrap();
        assert_eq!((c.euclidean, c.semisimple, c.unital), (Some(true), false, true));
        let gl = parse_catalog_name("gl+(1|1)").unwrap();
        let c = classify(&gl.algebra, gl.beta.as_ref()).unwrap();
        assert_eq!((c.pseudo_euclidean, c.euclidean, c.signature), (Some(true), Some(false), Some((1, 1))));
    }

    #[test]
    fn peirce_rules_on_catalog() {
        for name in ["gl+(1|1)", "josp(1|2)", "spin(3|0)", "spin(1|2)", "dt(-1/2)", "ujosp(2,0)", "st_rd(2,2)"] {
            let e = parse_catalog_name(name).unwrap();
            let frame = e.frame.clone().unwrap();
            let fr = check_frame(&e.algebra, &frame).unwrap();
            let fp = frame_peirce(&e.algebra, &fr).unwrap();
            if let Some(b) = &e.beta {
                assert!(beta_orthogonality_check(b, &fp), "{name}");
            }
            for idem in &frame {
                let p = peirce_of_idempotent(&e.algebra, idem).unwrap();
                check_peirce(&e.algebra, &p).unwrap();
            }
        }
    }

    #[test]
    fn rational_root_recovery() {
        // (s - 1/3)(s + 7/2)
        let c = vec![frac(-7, 6), frac(19, 6), int(1)];
        let (roots, complete) = rational_roots(&c);
        assert!(complete);
        assert_eq!(roots, vec![frac(-7, 2), frac(1, 3)]);
        let (roots, complete) = rational_roots(&[int(-2), int(0), int(1)]);
        assert!(!complete && roots.is_empty());
    }
}
