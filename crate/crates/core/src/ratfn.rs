//! Rational functions `p/q` over ℚ in lowest terms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{default_var_name, Poly, VarId};
use crate::scalar::{self, Rational};

/// A reduced fraction of polynomials. The denominator is monic in lex order,
/// so structural equality coincides with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        RatFn::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    pub fn derivative(&self, v: VarId) -> RatFn {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RatFn::new(dn, self.den.clone());
        }
        RatFn::new(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    /// Evaluates at a full assignment; `None` if a variable is missing or the
    /// denominator vanishes.
    pub fn eval(&self, values: &BTreeMap<VarId, Rational>) -> Option<Rational> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(values)? / d)
    }

    pub fn substitute(&self, values: &BTreeMap<VarId, Rational>) -> Option<RatFn> {
        let d = self.den.substitute(values);
        if d.is_zero() {
            return None;
        }
        Some(RatFn::new(self.num.substitute(values), d))
    }

    /// Checks that the denominator is a constant times a product of powers of
    /// the given polynomials.
    pub fn denominator_in(&self, allowed: &[Poly]) -> bool {
        let mut rest = self.den.clone();
        for f in allowed {
            if f.is_constant() {
                continue;
            }
            while let Some(q) = rest.div_exact(f) {
                rest = q;
                if rest.is_constant() {
                    break;
                }
            }
        }
        rest.is_constant()
    }

    pub fn fmt_with(&self, name: &dyn Fn(VarId) -> String) -> String {
        let n = self.num.fmt_with(name);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String, p: &Poly| if p.num_terms() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(self.den.fmt_with(name), &self.den))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_name))
    }
}

impl scalar::Field for RatFn {
    fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFn::new(self.num.add(&other.num), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        scalar::Field::add(self, &scalar::Field::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return scalar::Field::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFn::from_poly(self.num.mul(&other.num));
        }
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        RatFn::constant(q.clone())
    }
    fn to_ratfn(&self) -> RatFn {
        self.clone()
    }
}

impl Default for RatFn {
    fn default() -> Self {
        <RatFn as scalar::Field>::zero()
    }
}
