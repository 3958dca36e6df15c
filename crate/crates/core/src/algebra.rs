//! Z/2-graded algebras given by structure constants, graded operators and
//! bilinear forms.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Matrix, Subspace};
use crate::scalar::{Field, Rational};

/// `(-1)^p` as a field element.
pub fn sign<F: Field>(p: u8) -> F {
    if p.is_multiple_of(2) {
        F::one()
    } else {
        F::one().neg()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperBasis {
    even: usize,
    labels: Vec<String>,
}

impl SuperBasis {
    pub fn new<S: AsRef<str>>(even_labels: &[S], odd_labels: &[S]) -> Result<Self> {
        let labels: Vec<String> =
            even_labels.iter().chain(odd_labels).map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::Parse("empty basis label".into()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::Parse(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(SuperBasis { even: even_labels.len(), labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn even_dim(&self) -> usize {
        self.even
    }

    pub fn odd_dim(&self) -> usize {
        self.labels.len() - self.even
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.even)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Parity of a vector, `None` if it has both even and odd components.
    /// The zero vector counts as even.
    pub fn parity_of<F: Field>(&self, v: &[F]) -> Option<u8> {
        let has_even = v[..self.even].iter().any(|x| !x.is_zero());
        let has_odd = v[self.even..].iter().any(|x| !x.is_zero());
        match (has_even, has_odd) {
            (true, true) => None,
            (_, true) => Some(1),
            _ => Some(0),
        }
    }

    pub fn even_part<F: Field>(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for x in &mut w[self.even..] {
            *x = F::zero();
        }
        w
    }

    pub fn odd_part<F: Field>(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for x in &mut w[..self.even] {
            *x = F::zero();
        }
        w
    }

    /// Renders `v` as `c1*label1 + c2*label2`.
    pub fn format_vector<F: Field>(&self, v: &[F]) -> String {
        format_combination(v.iter().zip(&self.labels).map(|(c, l)| (c, l.as_str())))
    }
}

/// Renders a linear combination; coefficients with internal `+`/`-` are
/// parenthesized.
pub fn format_combination<'a, F: Field + 'a>(terms: impl Iterator<Item = (&'a F, &'a str)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let mut s = c.to_string();
        let negative = s.starts_with('-') && !s[1..].contains(['+', '-']);
        if negative {
            s.remove(0);
        }
        let body = if s == "1" {
            label.to_string()
        } else if s.contains(['+', '-', ' ']) {
            format!("({s})*{label}")
        } else {
            format!("{s}*{label}")
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// A failed check together with the basis elements (or vectors) that
/// exhibit the failure.
#[derive(Clone, PartialEq, Debug)]
pub struct Failure {
    pub check: String,
    /// Symbolic names of the witness arguments, e.g. `["x", "e1", "{x,x}"]`.
    pub witness: Vec<String>,
    /// The same arguments written as coordinate expressions.
    pub coordinates: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed at ({}): {}", self.check, self.witness.join(", "), self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra<F> {
    basis: SuperBasis,
    /// Dense tensor, `constants[(i*n + j)*n + k]` is the coefficient of
    /// `x_k` in `x_i x_j`.
    constants: Vec<F>,
    /// Nonzero entries of each basis product.
    table: Vec<Vec<(usize, F)>>,
}

impl<F: Field> PartialEq for SuperAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.constants == other.constants
    }
}

impl<F: Field> SuperAlgebra<F> {
    /// Builds an algebra from the dense tensor, rejecting constants that
    /// violate the grading.
    pub fn new(basis: SuperBasis, constants: Vec<F>) -> Result<Self> {
        let n = basis.dim();
        if constants.len() != n * n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} structure constants for dimension {n}",
                constants.len()
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut entries = Vec::new();
                for k in 0..n {
                    let c = &constants[(i * n + j) * n + k];
                    if c.is_zero() {
                        continue;
                    }
                    if basis.parity(k) != (basis.parity(i) + basis.parity(j)) % 2 {
                        return Err(Error::Grading(format!(
                            "{} * {} has a component along {}",
                            basis.label(i),
                            basis.label(j),
                            basis.label(k)
                        )));
                    }
                    entries.push((k, c.clone()));
                }
                table.push(entries);
            }
        }
        Ok(SuperAlgebra { basis, constants, table })
    }

    /// Builds an algebra from the products of basis pairs.
    pub fn from_fn(basis: SuperBasis, product: impl Fn(usize, usize) -> Vec<F>) -> Result<Self> {
        let n = basis.dim();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let p = product(i, j);
                if p.len() != n {
                    return Err(Error::DimensionMismatch("product vector of the wrong length".into()));
                }
                constants.extend(p);
            }
        }
        Self::new(basis, constants)
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn even_dim(&self) -> usize {
        self.basis.even_dim()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis.odd_dim()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.basis.parity(i)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    pub fn constants(&self) -> &[F] {
        &self.constants
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = zero_vec(self.dim());
        for (k, c) in &self.table[i * self.dim() + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        unit_vec(self.dim(), i)
    }

    /// Bilinear extension of the structure constants. Panics on length
    /// mismatch; see [`SuperAlgebra::multiply`] for the checked version.
    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim();
        assert!(a.len() == n && b.len() == n, "vector length differs from algebra dimension");
        let mut out: Vec<F> = zero_vec(n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul(bj);
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &[F], b: &[F]) -> Result<Vec<F>> {
        let n = self.dim();
        if a.len() != n || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {n}",
                a.len(),
                b.len()
            )));
        }
        Ok(self.mul(a, b))
    }

    fn left_matrix(&self, a: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m: Matrix<F> = Matrix::zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.table[i * n + j] {
                    let v = m.get(*k, j).add(&ai.mul(c));
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    pub fn left_mult(&self, a: &[F]) -> Result<SuperOperator<F>> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch("element length differs from algebra dimension".into()));
        }
        let p = self.basis.parity_of(a).ok_or(Error::NotHomogeneous)?;
        Ok(SuperOperator::new_unchecked(self.even_dim(), self.odd_dim(), self.left_matrix(a), p))
    }

    pub fn left_mult_basis(&self, i: usize) -> SuperOperator<F> {
        self.left_mult(&self.basis_vector(i)).expect("basis vectors are homogeneous")
    }

    pub fn right_mult_matrix(&self, a: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m: Matrix<F> = Matrix::zeros(n, n);
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for i in 0..n {
                for (k, c) in &self.table[i * n + j] {
                    let v = m.get(*k, i).add(&aj.mul(c));
                    m.set(*k, i, v);
                }
            }
        }
        m
    }

    /// `{a,{b,c}} - {{a,b},c}`.
    pub fn associator(&self, a: &[F], b: &[F], c: &[F]) -> Vec<F> {
        sub_vec(&self.mul(a, &self.mul(b, c)), &self.mul(&self.mul(a, b), c))
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> SuperAlgebra<G> {
        SuperAlgebra::new(self.basis.clone(), self.constants.iter().map(f).collect())
            .expect("scalar maps preserve zero pattern up to grading")
    }

    pub fn to_ratfn(&self) -> SuperAlgebra<crate::ratfn::RatFn> {
        self.map_scalars(|c| c.to_ratfn())
    }

    fn name(&self, i: usize) -> String {
        self.basis.label(i).to_string()
    }

    pub fn check_commutative(&self) -> std::result::Result<(), Failure> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s: F = sign(self.parity(i) * self.parity(j));
                let ab = self.basis_product(i, j);
                let ba = scale_vec(&s, &self.basis_product(j, i));
                if ab != ba {
                    return Err(Failure {
                        check: "super-commutativity".into(),
                        witness: vec![self.name(i), self.name(j)],
                        coordinates: vec![self.name(i), self.name(j)],
                        detail: format!(
                            "ab = {} but (-1)^(|a||b|) ba = {}",
                            self.basis.format_vector(&ab),
                            self.basis.format_vector(&ba)
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The power identity `{{a,b},a^2} = {a,{b,a^2}}` for even `a`; the
    /// identity `[L_a, L_{a^2}] = 0` applied to `b`.
    pub fn power_identity_defect(&self, a: &[F], b: &[F]) -> Vec<F> {
        let a2 = self.mul(a, a);
        sub_vec(&self.mul(&self.mul(a, b), &a2), &self.mul(a, &self.mul(b, &a2)))
    }

    /// `[L_a, L_{bc}] - [L_{ab}, L_c] + (-1)^{|a||b|}[L_b, L_{ac}]` applied
    /// to `d`, for basis indices.
    pub fn jordan_defect(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<F> {
        let (pa, pb, pc) = (self.parity(a), self.parity(b), self.parity(c));
        let [va, vb, vc, vd] = [a, b, c, d].map(|i| self.basis_vector(i));
        let bc = self.basis_product(b, c);
        let ab = self.basis_product(a, b);
        let ac = self.basis_product(a, c);
        let bracket = |x: &[F], px: u8, y: &[F], py: u8| -> Vec<F> {
            let first = self.mul(x, &self.mul(y, &vd));
            let second = self.mul(y, &self.mul(x, &vd));
            sub_vec(&first, &scale_vec(&sign(px * py), &second))
        };
        let lhs = bracket(&va, pa, &bc, pb + pc);
        let r1 = bracket(&ab, pa + pb, &vc, pc);
        let r2 = bracket(&vb, pb, &ac, pa + pc);
        let mut out = sub_vec(&lhs, &r1);
        axpy(&mut out, &sign(pa * pb), &r2);
        out
    }

    /// Checks super-commutativity and the super Jordan identity on all basis
    /// elements. The power identity is tried first because its failures give
    /// the most readable witnesses.
    pub fn check_super_jordan(&self) -> std::result::Result<(), Failure> {
        self.check_commutative()?;
        let n = self.dim();
        for a in 0..self.even_dim() {
            let va = self.basis_vector(a);
            for b in 0..n {
                let defect = self.power_identity_defect(&va, &self.basis_vector(b));
                if !is_zero_vec(&defect) {
                    let sq = self.mul(&va, &va);
                    let sq_name = format!("{{{},{}}}", self.name(a), self.name(a));
                    let lhs = self.mul(&self.mul(&va, &self.basis_vector(b)), &sq);
                    let rhs = self.mul(&va, &self.mul(&self.basis_vector(b), &sq));
                    return Err(Failure {
                        check: "super Jordan identity".into(),
                        witness: vec![self.name(a), self.name(b), sq_name],
                        coordinates: vec![self.name(a), self.name(b), self.basis.format_vector(&sq)],
                        detail: format!(
                            "{{{{a,b}},c}} = {} but {{a,{{b,c}}}} = {}",
                            self.basis.format_vector(&lhs),
                            self.basis.format_vector(&rhs)
                        ),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let defect = self.jordan_defect(a, b, c, d);
                        if !is_zero_vec(&defect) {
                            return Err(Failure {
                                check: "super Jordan identity".into(),
                                witness: vec![self.name(a), self.name(b), self.name(c)],
                                coordinates: vec![self.name(a), self.name(b), self.name(c)],
                                detail: format!(
                                    "[L_a,L_bc] - [L_ab,L_c] + (-1)^(|a||b|)[L_b,L_ac] sends {} to {}",
                                    self.name(d),
                                    self.basis.format_vector(&defect)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_jordan(&self) -> bool {
        self.check_super_jordan().is_ok()
    }

    /// Checks `[[L_a,L_b],L_c] = (-1)^{|b||c|} L_{[a,c,b]}` on all basis
    /// triples.
    pub fn check_kac_formula(&self) -> std::result::Result<(), Failure> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let (pa, pb) = (self.parity(a), self.parity(b));
                let (va, vb) = (self.basis_vector(a), self.basis_vector(b));
                let lab = |v: &[F]| {
                    sub_vec(&self.mul(&va, &self.mul(&vb, v)), &scale_vec(&sign(pa * pb), &self.mul(&vb, &self.mul(&va, v))))
                };
                for c in 0..n {
                    let pc = self.parity(c);
                    let vc = self.basis_vector(c);
                    let assoc = self.associator(&va, &vc, &vb);
                    for d in 0..n {
                        let vd = self.basis_vector(d);
                        let lhs = sub_vec(
                            &lab(&self.mul(&vc, &vd)),
                            &scale_vec(&sign((pa + pb) * pc), &self.mul(&vc, &lab(&vd))),
                        );
                        let rhs = scale_vec(&sign(pb * pc), &self.mul(&assoc, &vd));
                        if lhs != rhs {
                            return Err(Failure {
                                check: "associator formula".into(),
                                witness: vec![self.name(a), self.name(b), self.name(c)],
                                coordinates: vec![self.name(a), self.name(b), self.name(c)],
                                detail: format!(
                                    "on {}: [[L_a,L_b],L_c] gives {}, the associator term gives {}",
                                    self.name(d),
                                    self.basis.format_vector(&lhs),
                                    self.basis.format_vector(&rhs)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `str(L_{x_k})` for every basis vector.
    fn basis_supertraces(&self) -> Vec<F> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut s = F::zero();
                for i in 0..n {
                    let c = self.constant(k, i, i);
                    s = if self.parity(i) == 0 { s.add(c) } else { s.sub(c) };
                }
                s
            })
            .collect()
    }

    /// The canonical form `tau(a,b) = str(L_{ab})`.
    pub fn canonical_form_tau(&self) -> BilinearForm<F> {
        let n = self.dim();
        let st = self.basis_supertraces();
        let m = Matrix::from_fn(n, n, |i, j| {
            let mut s = F::zero();
            for (k, c) in &self.table[i * n + j] {
                s = s.add(&c.mul(&st[*k]));
            }
            s
        });
        BilinearForm::new(m).expect("square by construction")
    }

    pub fn check_form(&self, form: &BilinearForm<F>) -> FormReport {
        let n = self.dim();
        let b = form.matrix();
        let mut report = FormReport::default();
        if b.rows() != n {
            report.even = false;
            report.supersymmetric = false;
            report.associative = false;
            report.nondegenerate = false;
            report.failures.push(Failure {
                check: "form dimension".into(),
                witness: vec![],
                coordinates: vec![],
                detail: format!("form of size {} on an algebra of dimension {n}", b.rows()),
            });
            return report;
        }
        report.even = true;
        report.supersymmetric = true;
        report.associative = true;
        'outer: for i in 0..n {
            for j in 0..n {
                if self.parity(i) != self.parity(j) && !b.get(i, j).is_zero() {
                    report.even = false;
                    report.failures.push(Failure {
                        check: "form evenness".into(),
                        witness: vec![self.name(i), self.name(j)],
                        coordinates: vec![self.name(i), self.name(j)],
                        detail: format!("beta = {} on elements of different parity", b.get(i, j)),
                    });
                    break 'outer;
                }
            }
        }
        'outer: for i in 0..n {
            for j in i..n {
                let s: F = sign(self.parity(i) * self.parity(j));
                if *b.get(i, j) != s.mul(b.get(j, i)) {
                    report.supersymmetric = false;
                    report.failures.push(Failure {
                        check: "form supersymmetry".into(),
                        witness: vec![self.name(i), self.name(j)],
                        coordinates: vec![self.name(i), self.name(j)],
                        detail: format!("beta(a,b) = {}, beta(b,a) = {}", b.get(i, j), b.get(j, i)),
                    });
                    break 'outer;
                }
            }
        }
        'outer: for i in 0..n {
            for j in 0..n {
                let ab = self.basis_product(i, j);
                for k in 0..n {
                    let bc = self.basis_product(j, k);
                    let lhs = form.eval(&ab, &self.basis_vector(k));
                    let rhs = form.eval(&self.basis_vector(i), &bc);
                    if lhs != rhs {
                        report.associative = false;
                        report.failures.push(Failure {
                            check: "form associativity".into(),
                            witness: vec![self.name(i), self.name(j), self.name(k)],
                            coordinates: vec![self.name(i), self.name(j), self.name(k)],
                            detail: format!("beta(ab,c) = {lhs}, beta(a,bc) = {rhs}"),
                        });
                        break 'outer;
                    }
                }
            }
        }
        report.nondegenerate = b.is_invertible();
        if !report.nondegenerate {
            let k = b.kernel();
            let v = k.basis().first().cloned().unwrap_or_default();
            let name = self.basis.format_vector(&v);
            report.failures.push(Failure {
                check: "form nondegeneracy".into(),
                witness: vec![name.clone()],
                coordinates: vec![name],
                detail: "vector in the radical".into(),
            });
        }
        report
    }

    /// Kernel of `a -> (L_a, R_a)`.
    pub fn annihilator(&self) -> Subspace<F> {
        let n = self.dim();
        // Row (j, k) of the left part: coefficient of x_k in a x_j.
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constant(i, j, k).clone()).collect::<Vec<F>>());
                rows.push((0..n).map(|i| self.constant(j, i, k).clone()).collect::<Vec<F>>());
            }
        }
        Matrix::from_rows(rows).expect("rectangular").kernel()
    }

    /// Solves `u x_i = x_i = x_i u` for all `i`.
    pub fn find_unit(&self) -> Option<Vec<F>> {
        let n = self.dim();
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for k in 0..n {
                let target = if i == k { F::one() } else { F::zero() };
                rows.push((0..n).map(|u| self.constant(u, i, k).clone()).collect::<Vec<F>>());
                rhs.push(target.clone());
                rows.push((0..n).map(|u| self.constant(i, u, k).clone()).collect::<Vec<F>>());
                rhs.push(target);
            }
        }
        if n == 0 {
            return Some(Vec::new());
        }
        Matrix::from_rows(rows).expect("rectangular").solve(&rhs).expect("consistent sizes")
    }

    /// Checks `phi(ab) = phi(a) phi(b)` on basis pairs, where column `j` of
    /// `phi` is the image of the `j`-th basis vector of `self`.
    pub fn verify_homomorphism(&self, phi: &Matrix<F>, target: &SuperAlgebra<F>) -> Result<HomomorphismReport> {
        let n = self.dim();
        if phi.cols() != n || phi.rows() != target.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, algebras have dimensions {} and {n}",
                phi.rows(),
                phi.cols(),
                target.dim()
            )));
        }
        let mut report = HomomorphismReport { even: true, homomorphism: true, isomorphism: false, failure: None };
        for j in 0..n {
            let img = phi.column(j);
            if target.basis.parity_of(&img).is_some_and(|p| p != self.parity(j)) && !is_zero_vec(&img)
                || target.basis.parity_of(&img).is_none()
            {
                report.even = false;
                report.homomorphism = false;
                report.failure = Some(Failure {
                    check: "parity preservation".into(),
                    witness: vec![self.name(j)],
                    coordinates: vec![self.name(j)],
                    detail: format!("image {} has the wrong parity", target.basis.format_vector(&img)),
                });
                return Ok(report);
            }
        }
        let images: Vec<Vec<F>> = (0..n).map(|j| phi.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = phi.apply(&self.basis_product(i, j));
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    report.homomorphism = false;
                    report.failure = Some(Failure {
                        check: "homomorphism".into(),
                        witness: vec![self.name(i), self.name(j)],
                        coordinates: vec![self.name(i), self.name(j)],
                        detail: format!(
                            "phi(ab) = {} but phi(a)phi(b) = {}",
                            target.basis.format_vector(&lhs),
                            target.basis.format_vector(&rhs)
                        ),
                    });
                    return Ok(report);
                }
            }
        }
        report.isomorphism = phi.is_invertible();
        Ok(report)
    }

    /// The subalgebra spanned by a homogeneous family of vectors. Returns the
    /// algebra in the echelon basis of the span (even vectors first) and the
    /// inclusion matrix whose columns are the new basis vectors.
    pub fn subalgebra(&self, space: &Subspace<F>, prefix: &str) -> Result<(SuperAlgebra<F>, Matrix<F>)> {
        let n = self.dim();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in space.basis() {
            match self.basis.parity_of(v) {
                Some(0) => even.push(v.clone()),
                Some(_) => odd.push(v.clone()),
                None => return Err(Error::NotHomogeneous),
            }
        }
        let vectors: Vec<Vec<F>> = even.iter().chain(&odd).cloned().collect();
        let labels = |range: std::ops::Range<usize>| -> Vec<String> {
            range.map(|i| format!("{prefix}{}", i + 1)).collect()
        };
        let basis = SuperBasis::new(&labels(0..even.len()), &labels(even.len()..vectors.len()))?;
        let inclusion = Matrix::from_columns(n, &vectors)?;
        let coords = Subspace::span(n, &vectors)?;
        let mut constants = Vec::new();
        for a in &vectors {
            for b in &vectors {
                let p = self.mul(a, b);
                let c = solve_in_family(&coords, &vectors, &p).ok_or_else(|| {
                    Error::Precondition("span is not closed under multiplication".into())
                })?;
                constants.extend(c);
            }
        }
        Ok((SuperAlgebra::new(basis, constants)?, inclusion))
    }

    /// Expresses the algebra in a new homogeneous basis given by the columns
    /// of `p` (even columns first).
    pub fn change_basis(&self, p: &Matrix<F>, labels: SuperBasis) -> Result<SuperAlgebra<F>> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n || labels.dim() != n {
            return Err(Error::DimensionMismatch("change of basis must be square".into()));
        }
        let inv = p.inverse().ok_or_else(|| Error::InvalidParameter("change of basis is singular".into()))?;
        let cols: Vec<Vec<F>> = (0..n).map(|j| p.column(j)).collect();
        for (j, c) in cols.iter().enumerate() {
            if self.basis.parity_of(c) != Some(labels.parity(j)) && !is_zero_vec(c) {
                return Err(Error::Grading(format!("new basis vector {} is not of the declared parity", labels.label(j))));
            }
        }
        SuperAlgebra::from_fn(labels, |i, j| inv.apply(&self.mul(&cols[i], &cols[j])))
    }

    /// Smallest subspace containing the seeds and stable under multiplication
    /// by the algebra.
    pub fn ideal_closure(&self, seeds: &[Vec<F>]) -> Subspace<F> {
        let n = self.dim();
        let mut space = Subspace::zero(n);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for s in seeds {
            for part in [self.basis.even_part(s), self.basis.odd_part(s)] {
                if space.insert(&part).expect("same dimension") {
                    queue.push(part);
                }
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..n {
                let e = self.basis_vector(i);
                for w in [self.mul(&e, &v), self.mul(&v, &e)] {
                    if space.insert(&w).expect("same dimension") {
                        queue.push(w);
                    }
                }
            }
        }
        space
    }

    /// Whether `x -> ax` sends the subspace into itself for all `a`.
    pub fn is_ideal(&self, space: &Subspace<F>) -> bool {
        let n = self.dim();
        space.basis().iter().all(|v| {
            (0..n).all(|i| {
                let e = self.basis_vector(i);
                space.contains(&self.mul(&e, v)) && space.contains(&self.mul(v, &e))
            })
        })
    }
}

fn solve_in_family<F: Field>(span: &Subspace<F>, family: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if !span.contains(v) {
        return None;
    }
    let m = Matrix::from_columns(v.len(), family).ok()?;
    m.solve(v).ok().flatten()
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct FormReport {
    pub even: bool,
    pub supersymmetric: bool,
    pub associative: bool,
    pub nondegenerate: bool,
    pub failures: Vec<Failure>,
}

impl FormReport {
    pub fn all(&self) -> bool {
        self.even && self.supersymmetric && self.associative && self.nondegenerate
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct HomomorphismReport {
    pub even: bool,
    pub homomorphism: bool,
    pub isomorphism: bool,
    pub failure: Option<Failure>,
}

/// A homogeneous operator on an `(m|n)`-graded space.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperOperator<F> {
    even: usize,
    odd: usize,
    matrix: Matrix<F>,
    parity: u8,
}

impl<F: Field> SuperOperator<F> {
    pub fn new(even: usize, odd: usize, matrix: Matrix<F>, parity: u8) -> Result<Self> {
        let n = even + odd;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!("operator matrix is not {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let block = u8::from(i >= even) ^ u8::from(j >= even);
                if block != parity % 2 && !matrix.get(i, j).is_zero() {
                    return Err(Error::NotHomogeneous);
                }
            }
        }
        Ok(SuperOperator { even, odd, matrix, parity: parity % 2 })
    }

    /// Determines the parity from the matrix; the zero operator is even.
    pub fn from_matrix(even: usize, odd: usize, matrix: Matrix<F>) -> Result<Self> {
        Self::new(even, odd, matrix.clone(), 0).or_else(|_| Self::new(even, odd, matrix, 1))
    }

    fn new_unchecked(even: usize, odd: usize, matrix: Matrix<F>, parity: u8) -> Self {
        debug_assert!(Self::new(even, odd, matrix.clone(), parity).is_ok());
        SuperOperator { even, odd, matrix, parity }
    }

    pub fn identity(even: usize, odd: usize) -> Self {
        SuperOperator { even, odd, matrix: Matrix::identity(even + odd), parity: 0 }
    }

    pub fn zero(even: usize, odd: usize) -> Self {
        SuperOperator { even, odd, matrix: Matrix::zeros(even + odd, even + odd), parity: 0 }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even, self.odd)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.matrix.apply(v)
    }

    pub fn compose(&self, other: &Self) -> Self {
        SuperOperator {
            even: self.even,
            odd: self.odd,
            matrix: self.matrix.mul(&other.matrix),
            parity: (self.parity + other.parity) % 2,
        }
    }

    /// Sum of operators of equal parity (a zero summand adopts the other's
    /// parity).
    pub fn add(&self, other: &Self) -> Result<Self> {
        let parity = if self.is_zero() {
            other.parity
        } else if other.is_zero() || self.parity == other.parity {
            self.parity
        } else {
            return Err(Error::NotHomogeneous);
        };
        Ok(SuperOperator { even: self.even, odd: self.odd, matrix: self.matrix.add(&other.matrix), parity })
    }

    pub fn scale(&self, c: &F) -> Self {
        SuperOperator { even: self.even, odd: self.odd, matrix: self.matrix.scale(c), parity: self.parity }
    }

    /// `[A,B] = AB - (-1)^{|A||B|} BA`.
    pub fn bracket(&self, other: &Self) -> Self {
        let ab = self.matrix.mul(&other.matrix);
        let ba = other.matrix.mul(&self.matrix);
        let s: F = sign(self.parity * other.parity);
        SuperOperator {
            even: self.even,
            odd: self.odd,
            matrix: ab.sub(&ba.scale(&s)),
            parity: (self.parity + other.parity) % 2,
        }
    }

    /// `tr(l00) - tr(l11)`.
    pub fn supertrace(&self) -> F {
        let mut s = F::zero();
        for i in 0..self.even + self.odd {
            let d = self.matrix.get(i, i);
            s = if i < self.even { s.add(d) } else { s.sub(d) };
        }
        s
    }

    /// Entries of the diagonal blocks followed by those of the off-diagonal
    /// blocks; spans of homogeneous operators then have homogeneous echelon
    /// bases.
    pub fn flatten(&self) -> Vec<F> {
        let n = self.even + self.odd;
        let mut out = Vec::with_capacity(n * n);
        for block in [0u8, 1] {
            for i in 0..n {
                for j in 0..n {
                    if u8::from(i >= self.even) ^ u8::from(j >= self.even) == block {
                        out.push(self.matrix.get(i, j).clone());
                    }
                }
            }
        }
        out
    }

    pub fn unflatten(even: usize, odd: usize, flat: &[F]) -> Result<Self> {
        let n = even + odd;
        if flat.len() != n * n {
            return Err(Error::DimensionMismatch("flattened operator of the wrong length".into()));
        }
        let mut m = Matrix::zeros(n, n);
        let mut it = flat.iter();
        for block in [0u8, 1] {
            for i in 0..n {
                for j in 0..n {
                    if u8::from(i >= even) ^ u8::from(j >= even) == block {
                        m.set(i, j, it.next().expect("length checked").clone());
                    }
                }
            }
        }
        Self::from_matrix(even, odd, m)
    }

    /// Checks `d(ab) = d(a)b + (-1)^{|d||a|} a d(b)` on basis pairs.
    pub fn is_derivation_of(&self, alg: &SuperAlgebra<F>) -> std::result::Result<(), Failure> {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (alg.basis_vector(i), alg.basis_vector(j));
                let lhs = self.apply(&alg.basis_product(i, j));
                let mut rhs = alg.mul(&self.apply(&a), &b);
                axpy(&mut rhs, &sign(self.parity * alg.parity(i)), &alg.mul(&a, &self.apply(&b)));
                if lhs != rhs {
                    return Err(Failure {
                        check: "derivation rule".into(),
                        witness: vec![alg.name(i), alg.name(j)],
                        coordinates: vec![alg.name(i), alg.name(j)],
                        detail: format!(
                            "d(ab) = {} but d(a)b + (-1)^(|d||a|) a d(b) = {}",
                            alg.basis.format_vector(&lhs),
                            alg.basis.format_vector(&rhs)
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A bilinear form by its Gram matrix `B[i][j] = beta(x_i, x_j)`.
#[derive(Clone, PartialEq, Debug)]
pub struct BilinearForm<F> {
    matrix: Matrix<F>,
}

impl<F: Field> BilinearForm<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm { matrix: Matrix::zeros(n, n) }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, a: &[F], b: &[F]) -> F {
        let mut s = F::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let g = self.matrix.get(i, j);
                if !g.is_zero() {
                    s = s.add(&ai.mul(&g.mul(bj)));
                }
            }
        }
        s
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> BilinearForm<G> {
        BilinearForm { matrix: self.matrix.map(f) }
    }

    /// Gram matrix of the form on the columns of `p`.
    pub fn pull_back(&self, p: &Matrix<F>) -> BilinearForm<F> {
        BilinearForm { matrix: p.transpose().mul(&self.matrix).mul(p) }
    }

    /// Coordinates of `beta(x, .)` in the dual basis.
    pub fn flat(&self, x: &[F]) -> Vec<F> {
        self.matrix.transpose().apply(x)
    }

    /// Inverse of [`BilinearForm::flat`].
    pub fn sharp(&self, xi: &[F]) -> Result<Vec<F>> {
        self.matrix.transpose().solve(xi)?.filter(|_| self.matrix.is_invertible()).ok_or(Error::Degenerate)
    }
}

impl BilinearForm<Rational> {
    /// Signature `(r, s)` of the even block of a valid form; also checks that
    /// the odd block is a nondegenerate antisymmetric form.
    pub fn signature(&self, alg: &SuperAlgebra<Rational>) -> Result<(usize, usize)> {
        let report = alg.check_form(self);
        if !report.nondegenerate {
            return Err(Error::Degenerate);
        }
        if !report.all() {
            let f = &report.failures[0];
            return Err(Error::Precondition(f.to_string()));
        }
        let (m, n) = (alg.even_dim(), alg.odd_dim());
        if n % 2 != 0 {
            return Err(Error::OddDimensionNotEven(n));
        }
        let even = Matrix::from_fn(m, m, |i, j| self.matrix.get(i, j).clone());
        let odd = Matrix::from_fn(n, n, |i, j| self.matrix.get(m + i, m + j).clone());
        if odd != odd.transpose().neg() || !odd.is_invertible() {
            return Err(Error::Internal("odd block is not symplectic".into()));
        }
        let inertia = crate::linalg::symmetric_signature(&even)?;
        if inertia.zero != 0 {
            return Err(Error::Degenerate);
        }
        Ok((inertia.positive, inertia.negative))
    }
}

impl<F: Field> SuperAlgebra<F> {
    /// Matrix of `L_x^*` on dual coordinates, fixed by
    /// `<L_x^* xi, y> = xi(L_x y)`.
    pub fn dual_action(&self, form: &BilinearForm<F>, x: &[F]) -> Result<SuperOperator<F>> {
        if !form.matrix().is_invertible() {
            return Err(Error::Degenerate);
        }
        let l = self.left_mult(x)?;
        Ok(SuperOperator::new_unchecked(self.even_dim(), self.odd_dim(), l.matrix().transpose(), l.parity()))
    }
}

/// Direct sum of algebras with forms. Labels are kept when they are distinct
/// and otherwise suffixed `_1`, `_2`, ... by summand.
pub fn direct_sum<F: Field>(parts: &[(&SuperAlgebra<F>, &BilinearForm<F>)]) -> Result<(SuperAlgebra<F>, BilinearForm<F>)> {
    let mut all = HashSet::new();
    let clash = parts.iter().flat_map(|(a, _)| a.basis().labels()).any(|l| !all.insert(l.clone()));
    let label = |k: usize, l: &str| if clash { format!("{l}_{}", k + 1) } else { l.to_string() };
    // Positions of each summand's basis in the sum: all even parts first.
    let total_even: usize = parts.iter().map(|(a, _)| a.even_dim()).sum();
    let mut positions = Vec::new();
    let (mut even_at, mut odd_at) = (0, total_even);
    let mut even_labels = Vec::new();
    let mut odd_labels = Vec::new();
    for (k, (a, _)) in parts.iter().enumerate() {
        let mut pos = Vec::new();
        for i in 0..a.dim() {
            if a.parity(i) == 0 {
                pos.push(even_at);
                even_at += 1;
                even_labels.push(label(k, a.basis().label(i)));
            } else {
                pos.push(odd_at);
                odd_at += 1;
                odd_labels.push(label(k, a.basis().label(i)));
            }
        }
        positions.push(pos);
    }
    let basis = SuperBasis::new(&even_labels, &odd_labels)?;
    let n = basis.dim();
    let mut constants = vec![F::zero(); n * n * n];
    let mut gram = Matrix::zeros(n, n);
    for ((a, form), pos) in parts.iter().zip(&positions) {
        if form.dim() != a.dim() {
            return Err(Error::DimensionMismatch("form size differs from its algebra".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    constants[(pos[i] * n + pos[j]) * n + pos[k]] = a.constant(i, j, k).clone();
                }
                gram.set(pos[i], pos[j], form.matrix().get(i, j).clone());
            }
        }
    }
    Ok((SuperAlgebra::new(basis, constants)?, BilinearForm::new(gram)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    /// D(t) written out by hand: e_i^2 = e_i, e_i x = x/2, e_i y = y/2,
    /// xy = e1 + t e2 = -yx.
    fn dt(t: Rational) -> SuperAlgebra<Rational> {
        let basis = SuperBasis::new(&["e1", "e2"], &["x", "y"]).unwrap();
        let h = frac(1, 2);
        SuperAlgebra::from_fn(basis, |i, j| {
            let mut v = vec![int(0); 4];
            match (i, j) {
                (0, 0) => v[0] = int(1),
                (1, 1) => v[1] = int(1),
                (0 | 1, 2) | (2, 0 | 1) => v[2] = h.clone(),
                (0 | 1, 3) | (3, 0 | 1) => v[3] = h.clone(),
                (2, 3) => {
                    v[0] = int(1);
                    v[1] = t.clone();
                }
                (3, 2) => {
                    v[0] = int(-1);
                    v[1] = -t.clone();
                }
                _ => {}
            }
            v
        })
        .unwrap()
    }

    fn dt_beta(t: &Rational) -> BilinearForm<Rational> {
        let mut m = Matrix::zeros(4, 4);
        m.set(0, 0, int(1));
        m.set(1, 1, t.recip());
        m.set(2, 3, int(2));
        m.set(3, 2, int(-2));
        BilinearForm::new(m).unwrap()
    }

    #[test]
    fn grading_violation_rejected() {
        let basis = SuperBasis::new(&["e"], &["x"]).unwrap();
        let r = SuperAlgebra::from_fn(basis, |i, j| if i == 0 && j == 0 { vec![int(0), int(1)] } else { vec![int(0), int(0)] });
        assert!(matches!(r, Err(Error::Grading(_))));
    }

    #[test]
    fn products_and_left_multiplication() {
        let a = dt(int(3));
        let xy = a.multiply(&a.basis_vector(2), &a.basis_vector(3)).unwrap();
        assert_eq!(xy, vec![int(1), int(3), int(0), int(0)]);
        assert_eq!(a.mul(&vec![int(0); 4], &a.basis_vector(1)), vec![int(0); 4]);
        let l = a.left_mult_basis(0);
        assert_eq!(l.apply(&a.basis_vector(0)), a.basis_vector(0));
        assert_eq!(l.apply(&a.basis_vector(1)), vec![int(0); 4]);
        assert_eq!(l.apply(&a.basis_vector(2)), vec![int(0), int(0), frac(1, 2), int(0)]);
        assert_eq!(l.supertrace(), int(0));
        let unit = a.find_unit().unwrap();
        assert_eq!(unit, vec![int(1), int(1), int(0), int(0)]);
        assert_eq!(a.left_mult(&unit).unwrap(), SuperOperator::identity(2, 2));
        assert!(a.left_mult(&[int(1), int(0), int(1), int(0)]).is_err());
    }

    #[test]
    fn dt_is_jordan_with_valid_form() {
        for t in [int(1), int(2), frac(-1, 2), int(-3)] {
            let a = dt(t.clone());
            assert!(a.check_super_jordan().is_ok());
            assert!(a.check_kac_formula().is_ok());
            assert!(a.canonical_form_tau().is_zero());
            let beta = dt_beta(&t);
            assert!(a.check_form(&beta).all());
            let expected = if t > int(0) { (2, 0) } else { (1, 1) };
            assert_eq!(beta.signature(&a).unwrap(), expected);
        }
    }

    #[test]
    fn tau_of_dt_is_associative_but_degenerate() {
        let a = dt(int(2));
        let r = a.check_form(&a.canonical_form_tau());
        assert!(r.associative && !r.nondegenerate);
        let zero = a.check_form(&BilinearForm::zero(4));
        assert!(!zero.nondegenerate);
    }

    #[test]
    fn flat_sharp_and_dual_action() {
        let t = int(2);
        let a = dt(t.clone());
        let beta = dt_beta(&t);
        assert_eq!(beta.flat(&a.basis_vector(1)), vec![int(0), frac(1, 2), int(0), int(0)]);
        assert_eq!(beta.flat(&a.basis_vector(2)), vec![int(0), int(0), int(0), int(2)]);
        assert_eq!(beta.flat(&a.basis_vector(3)), vec![int(0), int(0), int(-2), int(0)]);
        let v = vec![frac(1, 3), int(-2), int(5), frac(7, 2)];
        assert_eq!(beta.sharp(&beta.flat(&v)).unwrap(), v);
        let l = a.dual_action(&beta, &a.basis_vector(0)).unwrap();
        let e1b = beta.flat(&a.basis_vector(0));
        assert_eq!(l.apply(&e1b), e1b);
        assert!(BilinearForm::<Rational>::zero(4).sharp(&v).is_err());
    }

    #[test]
    fn annihilators() {
        let a = dt(int(1));
        assert_eq!(a.annihilator().dim(), 0);
        let basis = SuperBasis::new(&["a", "b"], &["z"]).unwrap();
        let trivial = SuperAlgebra::from_fn(basis, |_, _| vec![int(0); 3]).unwrap();
        assert_eq!(trivial.annihilator().dim(), 3);
        assert!(trivial.find_unit().is_none());
    }

    #[test]
    fn dt_to_d_inverse_t() {
        // e1 <-> e2, x -> t x, y -> y.
        for t in [int(2), int(-3)] {
            let a = dt(t.clone());
            let b = dt(t.recip());
            let mut phi = Matrix::zeros(4, 4);
            phi.set(1, 0, int(1));
            phi.set(0, 1, int(1));
            phi.set(2, 2, t.clone());
            phi.set(3, 3, int(1));
            let r = a.verify_homomorphism(&phi, &b).unwrap();
            assert!(r.isomorphism, "{:?}", r.failure);
        }
    }

    #[test]
    fn direct_sum_relabels() {
        let a = dt(int(2));
        let beta = dt_beta(&int(2));
        let (s, form) = direct_sum(&[(&a, &beta), (&a, &beta)]).unwrap();
        assert_eq!((s.even_dim(), s.odd_dim()), (4, 4));
        assert_eq!(s.basis().labels()[..4], ["e1_1", "e2_1", "e1_2", "e2_2"].map(String::from));
        assert!(s.check_form(&form).all());
        assert!(s.check_super_jordan().is_ok());
    }

    #[test]
    fn operator_flattening_round_trip() {
        let a = dt(int(5));
        let l = a.left_mult_basis(2);
        assert_eq!(l.parity(), 1);
        let back = SuperOperator::unflatten(2, 2, &l.flatten()).unwrap();
        assert_eq!(back, l);
        let br = a.left_mult_basis(2).bracket(&a.left_mult_basis(3));
        assert_eq!(br.parity(), 0);
        assert!(br.is_derivation_of(&a).is_ok());
    }

    #[test]
    fn format_vectors() {
        let b = SuperBasis::new(&["e1", "e2"], &["x"]).unwrap();
        assert_eq!(b.format_vector(&[int(1), frac(-1, 2), int(0)]), "e1 - 1/2*e2");
        assert_eq!(b.format_vector(&[int(0), int(0), int(-1)]), "-x");
        assert_eq!(b.format_vector(&[int(0), int(0), int(0)]), "0");
    }
}
