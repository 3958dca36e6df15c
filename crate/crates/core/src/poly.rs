//! Sparse multivariate polynomials over ℚ.
//!
//! Variables are plain integer ids. Ids below [`PARAM_BASE`] are reserved for
//! the even coordinates of a dual space (`u_0, u_1, …`); ids from
//! `PARAM_BASE` upward name free parameters such as the `t` of the `D(t)`
//! family.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{format_rational, Rational};

pub type VarId = u32;

/// First variable id used for symbolic parameters.
pub const PARAM_BASE: VarId = 1 << 20;

/// Variable id of the `k`-th symbolic parameter.
pub fn param(k: u32) -> VarId {
    PARAM_BASE + k
}

/// Power product `Π v^e`, stored sparsely and sorted by variable id.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }
}

/// Lexicographic order with smaller variable ids more significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Leading term in lex order. Panics on zero.
    pub fn leading(&self) -> (&Monomial, &Rational) {
        self.terms.iter().next_back().expect("leading term of zero polynomial")
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let d = m.degree_in(v);
            if d == 0 {
                continue;
            }
            let pairs = m
                .0
                .iter()
                .map(|&(w, e)| if w == v { (w, e - 1) } else { (w, e) })
                .collect();
            out.add_term(Monomial::from_pairs(pairs), c * Rational::from_integer(d.into()));
        }
        out
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: VarId) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.degree_in(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: VarId, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::from_pairs(vec![(v, k as u32)]);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&vk), a.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d` if `d` divides `self` in ℚ[vars].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading();
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so that the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading().1.clone();
        self.scale(&lc.recip())
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let v = *a.vars().union(&b.vars()).next().expect("non-constant has a variable");
        let (ca, pa) = a.content_and_primitive(v);
        let (cb, pb) = b.content_and_primitive(v);
        let content = Poly::gcd(&ca, &cb);
        let prim = primitive_prs(pa, pb, v);
        content.mul(&prim).monic()
    }

    /// Splits `p = content · primitive` with respect to `v`, where the content
    /// is the (monic) gcd of the coefficients in `v`.
    fn content_and_primitive(&self, v: VarId) -> (Poly, Poly) {
        let coeffs = self.coeffs_in(v);
        let mut content = Poly::zero();
        for c in &coeffs {
            content = Poly::gcd(&content, c);
            if content.is_constant() && !content.is_zero() {
                break;
            }
        }
        let prim = self.div_exact(&content).expect("content divides polynomial");
        (content, prim)
    }

    /// Evaluates with every variable assigned. Missing variables are an error.
    pub fn eval(&self, values: &BTreeMap<VarId, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = values.get(&v)?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitutes the assigned variables, leaving the others symbolic.
    pub fn substitute(&self, values: &BTreeMap<VarId, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match values.get(&v) {
                    Some(x) => coeff *= num_traits::pow(x.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff);
        }
        out
    }

    /// Renders with the given variable namer, highest terms first.
    pub fn fmt_with(&self, name: &dyn Fn(VarId) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m
                .0
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), mono));
            }
        }
        out
    }
}

/// Default variable names: `u1, u2, …` for coordinates, `t, s, …` for parameters.
pub fn default_var_name(v: VarId) -> String {
    if v >= PARAM_BASE {
        const NAMES: [&str; 4] = ["t", "s", "r", "q"];
        let k = (v - PARAM_BASE) as usize;
        NAMES.get(k).map_or_else(|| format!("p{k}"), |s| s.to_string())
    } else {
        format!("u{}", v + 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_name))
    }
}

/// Sparse pseudo-remainder of `f` by `g` in the variable `v`.
fn pseudo_rem(f: &Poly, g: &Poly, v: VarId) -> Poly {
    let dg = g.degree_in(v);
    let lc_g = g.coeffs_in(v).pop().expect("nonzero");
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = r.coeffs_in(v).pop().expect("nonzero");
        let shift = Poly::term(Monomial::from_pairs(vec![(v, dr - dg)]), Rational::one());
        r = r.mul(&lc_g).sub(&lc_r.mul(&shift).mul(g));
    }
    r
}

/// Gcd of two polynomials that are primitive with respect to `v`.
fn primitive_prs(a: Poly, b: Poly, v: VarId) -> Poly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if g.degree_in(v) == 0 {
            // g is primitive and free of v, hence a unit.
            return Poly::one();
        }
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let (_, pr) = r.content_and_primitive(v);
        f = g;
        g = pr;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn u(i: u32) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn lex_order_prefers_low_variables() {
        assert!(Monomial::var(0) > Monomial::from_pairs(vec![(1, 5)]));
        assert!(Monomial::from_pairs(vec![(0, 2)]) > Monomial::from_pairs(vec![(0, 1), (1, 3)]));
        assert!(Monomial::one() < Monomial::var(7));
    }

    #[test]
    fn exact_division() {
        let a = u(0).add(&u(1));
        let b = u(0).sub(&u(1).scale(&int(2)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&u(0)).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let t = Poly::var(param(0));
        let c = u(0).add(&t.mul(&u(1)));
        let a = c.mul(&u(0)).mul(&u(0));
        let b = c.mul(&u(1)).scale(&frac(3, 2));
        assert_eq!(Poly::gcd(&a, &b), c.monic());
        assert_eq!(Poly::gcd(&u(0), &u(1)), Poly::one());
        assert_eq!(Poly::gcd(&u(0).pow(3), &u(0).pow(2).scale(&int(5))), u(0).pow(2));
    }

    #[test]
    fn derivative_and_eval() {
        let p = u(0).pow(2).mul(&u(1)).add(&Poly::constant(int(3)));
        assert_eq!(p.derivative(0), u(0).mul(&u(1)).scale(&int(2)));
        let vals = BTreeMap::from([(0, int(2)), (1, frac(1, 2))]);
        assert_eq!(p.eval(&vals).unwrap(), int(5));
    }

    #[test]
    fn display() {
        let p = u(0).sub(&u(1).scale(&frac(1, 2))).add(&Poly::var(param(0)));
        assert_eq!(p.to_string(), "u1 - 1/2*u2 + t");
    }
}
