//! Superfunctions on the dual space `A*`: rational functions in the even
//! coordinates times Grassmann monomials in the odd ones.
//!
//! The coordinate attached to basis vector `x_i` of `A` is the polynomial
//! variable `i` when `x_i` is even and the Grassmann generator `i - m` when it
//! is odd (`m` the even dimension).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use rand::Rng;

use crate::algebra::{sign, BilinearForm, SuperAlgebra, SuperBasis, SuperOperator};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{default_var_name, Poly, VarId, PARAM_BASE};
use crate::ratfn::RatFn;
use crate::scalar::{int, Field, Rational};

/// A product `θ_{j1} ... θ_{jq}` with strictly increasing indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GrassmannMonomial(Vec<usize>);

impl GrassmannMonomial {
    pub fn one() -> Self {
        GrassmannMonomial(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        GrassmannMonomial(vec![k])
    }

    /// Sorts the indices, returning the sign of the sorting permutation, or
    /// `None` if an index repeats (the product vanishes).
    pub fn from_indices(indices: &[usize]) -> Option<(Self, i8)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // Insertion sort counting transpositions.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((GrassmannMonomial(v), sign))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    pub fn mul(&self, other: &Self) -> Option<(Self, i8)> {
        let mut inversions = 0usize;
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] < other.0[j]) {
                merged.push(self.0[i]);
                i += 1;
            } else if i < self.0.len() && self.0[i] == other.0[j] {
                return None;
            } else {
                // other[j] jumps over the remaining elements of self.
                inversions += self.0.len() - i;
                merged.push(other.0[j]);
                j += 1;
            }
        }
        Some((GrassmannMonomial(merged), if inversions.is_multiple_of(2) { 1 } else { -1 }))
    }
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct SuperFunction {
    terms: BTreeMap<GrassmannMonomial, RatFn>,
}

impl SuperFunction {
    pub fn zero() -> Self {
        SuperFunction::default()
    }

    pub fn one() -> Self {
        Self::from_ratfn(<RatFn as Field>::one())
    }

    pub fn from_ratfn(c: RatFn) -> Self {
        Self::term(GrassmannMonomial::one(), c)
    }

    pub fn constant(q: &Rational) -> Self {
        Self::from_ratfn(RatFn::constant(q.clone()))
    }

    pub fn term(m: GrassmannMonomial, c: RatFn) -> Self {
        let mut terms = BTreeMap::new();
        if !Field::is_zero(&c) {
            terms.insert(m, c);
        }
        SuperFunction { terms }
    }

    /// The even coordinate `u_i` (polynomial variable `i`).
    pub fn even_coordinate(i: usize) -> Self {
        Self::from_ratfn(RatFn::var(i as VarId))
    }

    pub fn odd_coordinate(k: usize) -> Self {
        Self::term(GrassmannMonomial::generator(k), <RatFn as Field>::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrassmannMonomial, &RatFn)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &GrassmannMonomial) -> RatFn {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity of a homogeneous superfunction; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(GrassmannMonomial::parity);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    fn insert_add(&mut self, m: GrassmannMonomial, c: RatFn) {
        if Field::is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = Field::add(existing, &c);
                if Field::is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SuperFunction { terms: self.terms.iter().map(|(m, c)| (m.clone(), Field::neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        if Field::is_zero(c) {
            return Self::zero();
        }
        SuperFunction { terms: self.terms.iter().map(|(m, d)| (m.clone(), Field::mul(c, d))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, s)) = m1.mul(m2) {
                    let c = Field::mul(c1, c2);
                    out.insert_add(m, if s < 0 { Field::neg(&c) } else { c });
                }
            }
        }
        out
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> RatFn {
        self.coefficient(&GrassmannMonomial::one())
    }

    pub fn partial_even(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), c.derivative(v));
        }
        out
    }

    /// Left derivative: anticommute `θ_k` to the front, then strip it.
    pub fn partial_odd(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.0.iter().position(|&j| j == k) {
                let mut rest = m.0.clone();
                rest.remove(pos);
                let c = if pos % 2 == 1 { Field::neg(c) } else { c.clone() };
                out.insert_add(GrassmannMonomial(rest), c);
            }
        }
        out
    }

    pub fn max_odd_degree(&self) -> usize {
        self.terms.keys().map(GrassmannMonomial::degree).max().unwrap_or(0)
    }

    /// Renders with the basis labels as coordinate names.
    pub fn format_with(&self, basis: &SuperBasis) -> String {
        let m = basis.even_dim();
        let even = |v: VarId| {
            if (v as usize) < m && v < PARAM_BASE {
                basis.label(v as usize).to_string()
            } else {
                default_var_name(v)
            }
        };
        let odd = |k: usize| basis.label(m + k).to_string();
        self.render(&even, &odd)
    }

    fn render(&self, even: &dyn Fn(VarId) -> String, odd: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (mon, c) in &self.terms {
            let coef = c.fmt_with(even);
            let gens: Vec<String> = mon.0.iter().map(|&k| odd(k)).collect();
            let term = if gens.is_empty() {
                coef
            } else if coef == "1" {
                gens.join("*")
            } else if coef == "-1" {
                format!("-{}", gens.join("*"))
            } else {
                format!("({coef})*{}", gens.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    pub fn to_json(&self, basis: &SuperBasis) -> Value {
        let m = basis.even_dim();
        let even = |v: VarId| {
            if (v as usize) < m && v < PARAM_BASE {
                basis.label(v as usize).to_string()
            } else {
                default_var_name(v)
            }
        };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(mon, c)| {
                json!({
                    "monomial": mon.0.iter().map(|&k| basis.label(m + k).to_string()).collect::<Vec<_>>(),
                    "coefficient": c.fmt_with(&even),
                })
            })
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_name, &|k| format!("θ{}", k + 1)))
    }
}

/// A vector field `Σ_i c_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperVectorField {
    pub components: Vec<SuperFunction>,
}

impl SuperVectorField {
    pub fn zero(n: usize) -> Self {
        SuperVectorField { components: vec![SuperFunction::zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SuperFunction::is_zero)
    }

    pub fn format_with(&self, basis: &SuperBasis) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({}) d/d{}", c.format_with(basis), basis.label(i)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// How `g` is extended from the fields `X_{x_i}` to superfunction
/// combinations of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Extension {
    /// `g(hX, kY) = hk g(X, Y)` with no sign: the literal bilinear extension.
    #[default]
    Plain,
    /// `g(X, hY) = (-1)^{|h||X|} h g(X, Y)`: the Koszul-signed extension.
    Graded,
}

/// Superfunction calculus attached to an algebra `A`.
pub struct DualCalculus<'a, F: Field> {
    alg: &'a SuperAlgebra<F>,
    /// `embed(x_i x_j)` for all basis pairs.
    products: Vec<SuperFunction>,
}

impl<'a, F: Field> DualCalculus<'a, F> {
    pub fn new(alg: &'a SuperAlgebra<F>) -> Self {
        let n = alg.dim();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(embed(alg, &alg.basis_product(i, j)));
            }
        }
        DualCalculus { alg, products }
    }

    pub fn algebra(&self) -> &SuperAlgebra<F> {
        self.alg
    }

    pub fn coordinate(&self, i: usize) -> SuperFunction {
        coordinate(self.alg, i)
    }

    pub fn embed(&self, a: &[F]) -> SuperFunction {
        embed(self.alg, a)
    }

    pub fn embedded_product(&self, i: usize, j: usize) -> &SuperFunction {
        &self.products[i * self.alg.dim() + j]
    }

    pub fn partial(&self, f: &SuperFunction, i: usize) -> SuperFunction {
        let m = self.alg.even_dim();
        if i < m {
            f.partial_even(i as VarId)
        } else {
            f.partial_odd(i - m)
        }
    }

    /// `{f,g} = Σ (-1)^{|x_j|(|f|+|x_i|)} embed(x_i x_j) ∂_i f ∂_j g`.
    pub fn bracket(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        let pf = f.parity().ok_or(Error::NotHomogeneous)?;
        g.parity().ok_or(Error::NotHomogeneous)?;
        let n = self.alg.dim();
        let df: Vec<SuperFunction> = (0..n).map(|i| self.partial(f, i)).collect();
        let dg: Vec<SuperFunction> = (0..n).map(|j| self.partial(g, j)).collect();
        let mut out = SuperFunction::zero();
        for i in 0..n {
            if df[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let p = self.embedded_product(i, j);
                if dg[j].is_zero() || p.is_zero() {
                    continue;
                }
                let t = p.mul(&df[i]).mul(&dg[j]);
                let s = self.alg.parity(j) * ((pf + self.alg.parity(i)) % 2);
                out = if s == 1 { out.sub(&t) } else { out.add(&t) };
            }
        }
        Ok(out)
    }

    /// `X_{x_i} = Σ_j embed(x_i x_j) ∂_j`.
    pub fn coordinate_field(&self, i: usize) -> SuperVectorField {
        let n = self.alg.dim();
        SuperVectorField { components: (0..n).map(|j| self.embedded_product(i, j).clone()).collect() }
    }

    /// `X_f = Σ_i (-1)^{|x_i|(|f|+|x_i|)} (∂_i f) X_{x_i}`.
    pub fn field_of(&self, f: &SuperFunction) -> Result<SuperVectorField> {
        let pf = f.parity().ok_or(Error::NotHomogeneous)?;
        let n = self.alg.dim();
        let mut field = SuperVectorField::zero(n);
        for i in 0..n {
            let d = self.partial(f, i);
            if d.is_zero() {
                continue;
            }
            let pi = self.alg.parity(i);
            let d = if pi * ((pf + pi) % 2) == 1 { d.neg() } else { d };
            for j in 0..n {
                let p = self.embedded_product(i, j);
                if !p.is_zero() {
                    field.components[j] = field.components[j].add(&d.mul(p));
                }
            }
        }
        Ok(field)
    }

    /// `X(g) = Σ_i c_i ∂_i g`.
    pub fn apply_field(&self, field: &SuperVectorField, g: &SuperFunction) -> SuperFunction {
        let mut out = SuperFunction::zero();
        for (i, c) in field.components.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&self.partial(g, i)));
            }
        }
        out
    }

    /// Field induced on `A*` by an operator: `Σ_j embed(op x_j) ∂_j`.
    pub fn induced_action_field(&self, op: &SuperOperator<F>) -> SuperVectorField {
        let n = self.alg.dim();
        SuperVectorField {
            components: (0..n).map(|j| self.embed(&op.apply(&self.alg.basis_vector(j)))).collect(),
        }
    }

    /// Whether `f -> X_f` kills only constants, i.e. `Ann(A) = 0`.
    pub fn kernel_is_constants(&self) -> bool {
        self.alg.annihilator().dim() == 0
    }

    /// The canonical pairing `g(X_f, X_g) = {f,g}`. When the annihilator is
    /// nonzero, `X_f` does not determine `f` up to constants, so only linear
    /// functions (embedded elements) are accepted.
    pub fn pairing(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction> {
        if !self.kernel_is_constants() && !(self.is_linear(f) && self.is_linear(g)) {
            return Err(Error::Unsupported(
                "pairing of non-linear functions on an algebra with nonzero annihilator".into(),
            ));
        }
        self.bracket(f, g)
    }

    fn is_linear(&self, f: &SuperFunction) -> bool {
        let m = self.alg.even_dim();
        f.terms().all(|(mon, c)| match mon.degree() {
            0 => {
                c.is_polynomial()
                    && c.numer().terms().all(|(mono, _)| {
                        mono.total_degree() == 1 && mono.pairs().iter().all(|&(v, _)| (v as usize) < m)
                    })
                    && c.denom().is_one()
            }
            1 => c.as_constant().is_some(),
            _ => false,
        })
    }

    /// `g(∂/∂x_j, ∂/∂x_k)` obtained by writing the coordinate fields in terms
    /// of the `X_{x_i}` and extending `g(X_{x_i}, X_{x_l}) = embed(x_i x_l)`
    /// over coefficients with the given convention. The body of
    /// `M[i][l] = embed(x_i x_l)` is inverted over rational functions; its
    /// entries may only have denominators built from `localized_at`.
    pub fn coordinate_metric(
        &self,
        j: usize,
        k: usize,
        localized_at: &[Poly],
        convention: Extension,
    ) -> Result<SuperFunction> {
        let c = self.coordinate_frame(localized_at)?;
        let n = self.alg.dim();
        let mut out = SuperFunction::zero();
        for i in 0..n {
            if c[j][i].is_zero() {
                continue;
            }
            for l in 0..n {
                let ckl = &c[k][l];
                let p = self.embedded_product(i, l);
                if ckl.is_zero() || p.is_zero() {
                    continue;
                }
                let pc = ckl.parity().ok_or(Error::NotHomogeneous)?;
                let t = c[j][i].mul(ckl).mul(p);
                let flip = convention == Extension::Graded && pc * self.alg.parity(i) == 1;
                out = if flip { out.sub(&t) } else { out.add(&t) };
            }
        }
        Ok(out)
    }

    /// The matrix `C = M^{-1}` with `∂_j = Σ_i C[j][i] X_{x_i}`.
    pub fn coordinate_frame(&self, localized_at: &[Poly]) -> Result<Vec<Vec<SuperFunction>>> {
        let n = self.alg.dim();
        let m_full: Vec<Vec<SuperFunction>> =
            (0..n).map(|i| (0..n).map(|l| self.embedded_product(i, l).clone()).collect()).collect();
        let body = Matrix::from_fn(n, n, |i, l| m_full[i][l].body());
        let body_inv = body
            .inverse()
            .ok_or_else(|| Error::Precondition("the body of the coordinate matrix is singular".into()))?;
        for x in body_inv.entries() {
            if !x.denominator_in(localized_at) {
                return Err(Error::NotLocalized(format!("denominator {} is not localized", x.denom())));
            }
        }
        let lift = |m: &Matrix<RatFn>| -> Vec<Vec<SuperFunction>> {
            (0..n).map(|i| (0..n).map(|l| SuperFunction::from_ratfn(m.get(i, l).clone())).collect()).collect()
        };
        let m0_inv = lift(&body_inv);
        let nil: Vec<Vec<SuperFunction>> = (0..n)
            .map(|i| (0..n).map(|l| m_full[i][l].sub(&SuperFunction::from_ratfn(m_full[i][l].body()))).collect())
            .collect();
        // -M0^{-1} N is nilpotent: every entry has odd degree >= 1.
        let step: Vec<Vec<SuperFunction>> =
            mat_mul(&m0_inv, &nil).into_iter().map(|r| r.into_iter().map(|f| f.neg()).collect()).collect();
        let mut power = identity(n);
        let mut series = identity(n);
        for _ in 0..=self.alg.odd_dim() {
            power = mat_mul(&power, &step);
            if power.iter().flatten().all(SuperFunction::is_zero) {
                break;
            }
            series = mat_add(&series, &power);
        }
        Ok(mat_mul(&series, &m0_inv))
    }

    /// The matrix `M[i][l] = embed(x_i x_l)`.
    pub fn coordinate_matrix(&self) -> Vec<Vec<SuperFunction>> {
        let n = self.alg.dim();
        (0..n).map(|i| (0..n).map(|l| self.embedded_product(i, l).clone()).collect()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<SuperFunction>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { SuperFunction::one() } else { SuperFunction::zero() }).collect()).collect()
}

fn mat_add(a: &[Vec<SuperFunction>], b: &[Vec<SuperFunction>]) -> Vec<Vec<SuperFunction>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect()).collect()
}

/// Product of matrices with superfunction entries (entries multiply in order).
pub fn mat_mul(a: &[Vec<SuperFunction>], b: &[Vec<SuperFunction>]) -> Vec<Vec<SuperFunction>> {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![SuperFunction::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&aik.mul(&b[k][j]));
                }
            }
        }
    }
    out
}

/// The coordinate function of basis vector `i`.
pub fn coordinate<F: Field>(alg: &SuperAlgebra<F>, i: usize) -> SuperFunction {
    let m = alg.even_dim();
    if i < m {
        SuperFunction::even_coordinate(i)
    } else {
        SuperFunction::odd_coordinate(i - m)
    }
}

/// The linear function `Σ a_i x_i`.
pub fn embed<F: Field>(alg: &SuperAlgebra<F>, a: &[F]) -> SuperFunction {
    let mut out = SuperFunction::zero();
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&coordinate(alg, i).scale(&c.to_ratfn()));
        }
    }
    out
}

/// Drops Grassmann terms and evaluates the body at the even point
/// `u_i = point[i]`, with `params` assigning any symbolic parameters.
pub fn evaluate_body(f: &SuperFunction, point: &[Rational], params: &BTreeMap<VarId, Rational>) -> Result<Rational> {
    let mut values = params.clone();
    for (i, v) in point.iter().enumerate() {
        values.insert(i as VarId, v.clone());
    }
    let body = f.body();
    let d = body
        .denom()
        .eval(&values)
        .ok_or_else(|| Error::Precondition("unassigned variable in the denominator".into()))?;
    if Field::is_zero(&d) {
        return Err(Error::Pole);
    }
    body.eval(&values).ok_or_else(|| Error::Precondition("unassigned variable".into()))
}

/// Convenience: `X_a` for an element `a` equals the field of `embed(a)`,
/// and at a point `ξ` its value is `(L_a ξ^♯)^♭`.
pub fn tangent_of_element<F: Field>(
    alg: &SuperAlgebra<F>,
    beta: &BilinearForm<F>,
    a: &[F],
    xi: &[F],
) -> Result<Vec<F>> {
    let sharp = beta.sharp(xi)?;
    Ok(beta.flat(&alg.left_mult(a)?.apply(&sharp)))
}

/// Helper for tests and callers: `(-1)^p` as a superfunction coefficient.
pub fn sign_fn(p: u8) -> RatFn {
    sign::<RatFn>(p)
}

/// A homogeneous polynomial superfunction with small integer coefficients.
pub fn random_superfunction<R: Rng>(rng: &mut R, even: usize, odd: usize, parity: u8) -> SuperFunction {
    let mut f = SuperFunction::zero();
    if parity == 1 && odd == 0 {
        return f;
    }
    for _ in 0..3 {
        let mut c = Poly::constant(int(rng.gen_range(-3..=3)));
        for v in 0..even {
            if rng.gen_bool(0.5) {
                c = c.mul(&Poly::var(v as VarId).pow(rng.gen_range(1..=2)));
            }
        }
        let gens: Vec<usize> = (0..odd).filter(|_| rng.gen_bool(0.5)).collect();
        let gens = if gens.len() % 2 == parity as usize {
            gens
        } else if let Some(k) = (0..odd).find(|k| !gens.contains(k)) {
            let mut g = gens.clone();
            g.push(k);
            g
        } else {
            gens[1..].to_vec()
        };
        let Some((m, s)) = GrassmannMonomial::from_indices(&gens) else { continue };
        if m.parity() != parity {
            continue;
        }
        let c = RatFn::from_poly(if s < 0 { c.neg() } else { c });
        f = f.add(&SuperFunction::term(m, c));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperBasis;
    use crate::catalog::{dt_algebra, make_dt_symbolic, make_k3, parse_catalog_name};
    use crate::poly::param;
    use crate::scalar::frac;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rf(q: Rational) -> RatFn {
        RatFn::constant(q)
    }

    fn u(i: usize) -> SuperFunction {
        SuperFunction::even_coordinate(i)
    }

    fn th(k: usize) -> SuperFunction {
        SuperFunction::odd_coordinate(k)
    }

    #[test]
    fn odd_derivatives() {
        let f = th(0).mul(&th(1));
        assert_eq!(f.partial_odd(0), th(1));
        assert_eq!(f.partial_odd(1), th(0).neg());
        let g = u(0).mul(&u(0)).mul(&th(0));
        assert_eq!(g.partial_even(0), u(0).scale(&rf(int(2))).mul(&th(0)));
        // Second odd derivatives anticommute and square to zero.
        let h = th(0).mul(&th(1)).mul(&th(2)).add(&th(1).mul(&u(1)));
        assert!(h.partial_odd(1).partial_odd(1).is_zero());
        assert_eq!(h.partial_odd(0).partial_odd(2), h.partial_odd(2).partial_odd(0).neg());
    }

    #[test]
    fn grassmann_sign() {
        let a = th(1).mul(&th(0));
        assert_eq!(a, th(0).mul(&th(1)).neg());
        assert!(th(0).mul(&th(0)).is_zero());
    }

    #[test]
    fn embedding_is_a_monomorphism_on_dt() {
        let a = dt_algebra(&int(3));
        let calc = DualCalculus::new(&a);
        assert_eq!(calc.embed(&a.basis_vector(0)), u(0));
        let xy = vec![int(0), int(0), int(1), int(1)];
        assert_eq!(calc.embed(&xy), th(0).add(&th(1)));
        for i in 0..4 {
            for j in 0..4 {
                let b = calc.bracket(&calc.coordinate(i), &calc.coordinate(j)).unwrap();
                assert_eq!(b, calc.embed(&a.basis_product(i, j)));
            }
        }
    }

    #[test]
    fn symbolic_dt_fields() {
        let (a, _) = make_dt_symbolic();
        let calc = DualCalculus::new(&a);
        let t = RatFn::var(param(0));
        let c = u(0).add(&u(1).scale(&t));
        assert_eq!(calc.bracket(&th(0), &th(1)).unwrap(), c);
        let half = rf(frac(1, 2));
        // X_{e1} = e1 d/de1 + (x d/dx + y d/dy)/2
        let xe1 = calc.field_of(&u(0)).unwrap();
        assert_eq!(xe1.components, vec![u(0), SuperFunction::zero(), th(0).scale(&half), th(1).scale(&half)]);
        // X_x = (x/2)(d/de1 + d/de2) + (e1 + t e2) d/dy
        let xx = calc.field_of(&th(0)).unwrap();
        assert_eq!(xx.components, vec![th(0).scale(&half), th(0).scale(&half), SuperFunction::zero(), c.clone()]);
        // X_y = (y/2)(d/de1 + d/de2) - (e1 + t e2) d/dx
        let xy = calc.field_of(&th(1)).unwrap();
        assert_eq!(xy.components, vec![th(1).scale(&half), th(1).scale(&half), c.neg(), SuperFunction::zero()]);
        assert!(calc.field_of(&SuperFunction::constant(&int(5))).unwrap().is_zero());
        assert_eq!(calc.pairing(&u(0), &u(0)).unwrap(), u(0));
        assert_eq!(calc.pairing(&th(0), &th(1)).unwrap(), c);
    }

    #[test]
    fn induced_fields_match_fields_of_elements() {
        let a = dt_algebra(&int(2));
        let calc = DualCalculus::new(&a);
        for i in 0..4 {
            let l = a.left_mult_basis(i);
            assert_eq!(calc.induced_action_field(&l), calc.field_of(&calc.coordinate(i)).unwrap());
        }
        let id = SuperOperator::identity(2, 2);
        let euler = calc.induced_action_field(&id);
        assert_eq!(euler.components, (0..4).map(|i| calc.coordinate(i)).collect::<Vec<_>>());
        let br = a.left_mult_basis(2).bracket(&a.left_mult_basis(3));
        let f = calc.induced_action_field(&br);
        for j in 0..4 {
            assert_eq!(f.components[j], calc.embed(&br.apply(&a.basis_vector(j))));
        }
    }

    #[test]
    fn kernel_is_constants_cases() {
        let k3 = make_k3();
        assert!(DualCalculus::new(&k3.algebra).kernel_is_constants());
        let dt = dt_algebra(&int(1));
        assert!(DualCalculus::new(&dt).kernel_is_constants());
        let basis = SuperBasis::new(&["a"], &["z"]).unwrap();
        let trivial = SuperAlgebra::from_fn(basis, |_, _| vec![int(0); 2]).unwrap();
        let calc = DualCalculus::new(&trivial);
        assert!(!calc.kernel_is_constants());
        assert!(calc.pairing(&u(0).mul(&u(0)), &u(0)).is_err());
        assert!(calc.pairing(&u(0), &th(0)).unwrap().is_zero());
    }

    /// Oracle: for even `e_j`, `g(∂_j, X_l) = δ_jl` forces `g(∂_j, ∂_k) =
    /// (M^{-1})[k][j]`; the second-order expansion
    /// `M0^{-1} - M0^{-1} N M0^{-1} + M0^{-1} N M0^{-1} N M0^{-1}` done by hand
    /// gives `1/e_i - xy/(2 e_i^2 c)` and `-xy/(2 e1 e2 c)`, `c = e1 + t e2`.
    #[test]
    fn dt_coordinate_metric() {
        let (a, _) = make_dt_symbolic();
        let calc = DualCalculus::new(&a);
        let (e1, e2) = (Poly::var(0), Poly::var(1));
        let c = e1.add(&e2.mul(&Poly::var(param(0))));
        let loc = [e1.clone(), e2.clone(), c.clone()];
        let xy = th(0).mul(&th(1));
        let frame = calc.coordinate_frame(&loc).unwrap();
        for (i, ei) in [(0usize, &e1), (1usize, &e2)] {
            let inv_e = SuperFunction::from_ratfn(RatFn::new(Poly::one(), ei.clone()));
            let odd = xy.scale(&RatFn::new(Poly::one(), ei.mul(ei).mul(&c).scale(&int(2))));
            assert_eq!(calc.coordinate_metric(i, i, &loc, Extension::Plain).unwrap(), inv_e.add(&odd));
            // The signed extension reduces to the frame entry C[i][i].
            let graded = calc.coordinate_metric(i, i, &loc, Extension::Graded).unwrap();
            assert_eq!(graded, inv_e.sub(&odd));
            assert_eq!(graded, frame[i][i]);
        }
        let odd12 = xy.scale(&RatFn::new(Poly::one(), e1.mul(&e2).mul(&c).scale(&int(2))));
        assert_eq!(calc.coordinate_metric(0, 1, &loc, Extension::Plain).unwrap(), odd12);
        let graded = calc.coordinate_metric(0, 1, &loc, Extension::Graded).unwrap();
        assert_eq!(graded, odd12.neg());
        assert_eq!(graded, frame[1][0]);
        // ∂x ≈ -X_y/c and ∂y ≈ X_x/c at body level, so g(∂x, ∂y) = 1/c.
        for conv in [Extension::Plain, Extension::Graded] {
            assert_eq!(calc.coordinate_metric(2, 3, &loc, conv).unwrap().body(), RatFn::new(Poly::one(), c.clone()));
        }
        // Without localizing at e1 + t e2 the inversion is refused.
        assert!(matches!(calc.coordinate_metric(0, 0, &[e1, e2], Extension::Plain), Err(Error::NotLocalized(_))));
    }

    #[test]
    fn neumann_inverse_is_two_sided() {
        let (a, _) = make_dt_symbolic();
        let calc = DualCalculus::new(&a);
        let loc = [Poly::var(0), Poly::var(1), Poly::var(0).add(&Poly::var(1).mul(&Poly::var(param(0))))];
        let inv = calc.coordinate_frame(&loc).unwrap();
        let m = calc.coordinate_matrix();
        assert_eq!(mat_mul(&inv, &m), identity(4));
        assert_eq!(mat_mul(&m, &inv), identity(4));
    }

    #[test]
    fn body_evaluation() {
        let f = u(0).add(&th(0).mul(&th(1)));
        assert_eq!(evaluate_body(&f, &[int(7), int(2)], &BTreeMap::new()).unwrap(), int(7));
        let g = SuperFunction::from_ratfn(RatFn::new(Poly::one(), Poly::var(1)));
        assert_eq!(evaluate_body(&g, &[int(1), int(0)], &BTreeMap::new()), Err(Error::Pole));
    }

    #[test]
    fn display() {
        let a = dt_algebra(&int(2));
        let f = u(0).add(&th(0).mul(&th(1)).scale(&rf(frac(1, 2))));
        assert_eq!(f.format_with(a.basis()), "e1 + (1/2)*x*y");
        assert_eq!(f.to_string(), "u1 + (1/2)*θ1*θ2");
    }

    /// Random homogeneous superfunction with polynomial coefficients.
    fn algebras() -> Vec<SuperAlgebra<Rational>> {
        ["dt(2)", "gl+(1|1)", "k3", "spin(1|2)", "josp(1|2)"]
            .iter()
            .map(|n| parse_catalog_name(n).unwrap().algebra)
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bracket_properties(seed in any::<u64>(), which in 0usize..5, pf in 0u8..2, pg in 0u8..2, ph in 0u8..2) {
            let alg = &algebras()[which];
            let calc = DualCalculus::new(alg);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (m, n) = (alg.even_dim(), alg.odd_dim());
            let f = random_superfunction(&mut rng, m, n, pf);
            let g = random_superfunction(&mut rng, m, n, pg);
            let h = random_superfunction(&mut rng, m, n, ph);
            let pf = f.parity().unwrap();
            let pg = g.parity().unwrap();
            // Super-commutativity.
            let fg = calc.bracket(&f, &g).unwrap();
            let gf = calc.bracket(&g, &f).unwrap();
            let expected = if pf * pg == 1 { fg.neg() } else { fg.clone() };
            prop_assert_eq!(&gf, &expected);
            // Super-Leibniz.
            let lhs = calc.bracket(&f, &g.mul(&h)).unwrap();
            let second = g.mul(&calc.bracket(&f, &h).unwrap());
            let rhs = fg.mul(&h).add(&if pf * pg == 1 { second.neg() } else { second });
            prop_assert_eq!(lhs, rhs);
            // Fields reproduce the bracket.
            let xf = calc.field_of(&f).unwrap();
            prop_assert_eq!(calc.apply_field(&xf, &g), fg);
        }
    }

    #[test]
    fn bracket_not_supercommutative_for_noncommutative_algebra() {
        // a b = a, b a = 0.
        let basis = SuperBasis::new(&["a", "b"], &[] as &[&str]).unwrap();
        let alg = SuperAlgebra::from_fn(basis, |i, j| if (i, j) == (0, 1) { vec![int(1), int(0)] } else { vec![int(0), int(0)] }).unwrap();
        assert!(alg.check_commutative().is_err());
        let calc = DualCalculus::new(&alg);
        let (a, b) = (u(0), u(1));
        assert_ne!(calc.bracket(&a, &b).unwrap(), calc.bracket(&b, &a).unwrap());
    }
}
