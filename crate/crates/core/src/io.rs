//! Algebra-spec files and coordinate expressions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{BilinearForm, SuperAlgebra, SuperBasis};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, int, parse_rational, Field, Rational};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub even_labels: Vec<String>,
    #[serde(default)]
    pub odd_labels: Vec<String>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Forms::is_empty")]
    pub forms: Forms,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Forms {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<FormEntry>>,
}

impl Forms {
    fn is_empty(&self) -> bool {
        self.beta.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub a: String,
    pub b: String,
    pub value: String,
}

fn index(basis: &SuperBasis, label: &str) -> Result<usize> {
    basis.index_of(label).ok_or_else(|| Error::Parse(format!("unknown basis label `{label}`")))
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Products are taken literally: unlisted pairs multiply to zero.
    pub fn build(&self) -> Result<(SuperAlgebra<Rational>, Option<BilinearForm<Rational>>)> {
        let basis = SuperBasis::new(&self.even_labels, &self.odd_labels)?;
        let n = basis.dim();
        let mut constants = vec![int(0); n * n * n];
        let mut seen = vec![false; n * n];
        for p in &self.products {
            let (i, j) = (index(&basis, &p.left)?, index(&basis, &p.right)?);
            if std::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::Parse(format!("product {} * {} listed twice", p.left, p.right)));
            }
            for (label, value) in &p.result {
                constants[(i * n + j) * n + index(&basis, label)?] = parse_rational(value)?;
            }
        }
        let algebra = SuperAlgebra::new(basis, constants)?;
        let beta = match &self.forms.beta {
            None => None,
            Some(entries) => {
                let mut gram = Matrix::zeros(n, n);
                let mut seen = vec![false; n * n];
                for e in entries {
                    let (a, b) = (index(algebra.basis(), &e.a)?, index(algebra.basis(), &e.b)?);
                    if std::mem::replace(&mut seen[a * n + b], true) {
                        return Err(Error::Parse(format!("beta({}, {}) listed twice", e.a, e.b)));
                    }
                    gram.set(a, b, parse_rational(&e.value)?);
                }
                Some(BilinearForm::new(gram)?)
            }
        };
        Ok((algebra, beta))
    }

    /// The spec of an existing algebra; nonzero entries only.
    pub fn from_algebra(alg: &SuperAlgebra<Rational>, beta: Option<&BilinearForm<Rational>>) -> Self {
        let basis = alg.basis();
        let (even_labels, odd_labels) = basis.labels().split_at(basis.even_dim());
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let result: BTreeMap<String, String> = alg
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !Field::is_zero(*c))
                    .map(|(k, c)| (basis.label(k).to_string(), format_rational(c)))
                    .collect();
                if !result.is_empty() {
                    products.push(ProductEntry { left: basis.label(i).into(), right: basis.label(j).into(), result });
                }
            }
        }
        let beta = beta.map(|form| {
            let mut entries = Vec::new();
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    let v = form.matrix().get(a, b);
                    if !Field::is_zero(v) {
                        entries.push(FormEntry { a: basis.label(a).into(), b: basis.label(b).into(), value: format_rational(v) });
                    }
                }
            }
            entries
        });
        AlgebraSpec { even_labels: even_labels.to_vec(), odd_labels: odd_labels.to_vec(), products, forms: Forms { beta } }
    }
}

/// Loads an algebra-spec file into a catalog-style entry named after `name`.
pub fn load_algebra(name: &str, text: &str) -> Result<CatalogEntry> {
    let (algebra, beta) = AlgebraSpec::from_json(text)?.build()?;
    let jordan = algebra.is_jordan();
    Ok(CatalogEntry {
        name: name.into(),
        parameters: vec![],
        algebra,
        beta,
        frame: None,
        jordan,
        notes: "loaded from an algebra-spec file".into(),
        model: None,
    })
}

/// How a single term of a coordinate expression refers to the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// `c*label`: a vector of the algebra.
    Primal,
    /// `c*labelb` or `c*label♭`: the image of a vector under `beta`.
    Flat,
    /// `c*label*`: a dual basis covector.
    Dual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: Rational,
    pub index: usize,
    pub kind: TermKind,
}

fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        let c = if c == '\u{2212}' { '-' } else { c };
        let after_operator = matches!(cur.chars().last(), None | Some('*' | '/' | '('));
        if (c == '+' || c == '-') && !after_operator {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    out.push(cur);
    out
}

fn parse_coefficient(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
    match s {
        "" | "+" => Some(int(1)),
        "-" => Some(int(-1)),
        _ => parse_rational(s).ok(),
    }
}

/// `label`, `c*label` or `clabel`, preferring exact label matches and then
/// the longest label.
fn resolve(basis: &SuperBasis, body: &str) -> Option<(Rational, usize)> {
    let (sign, rest) = match body.strip_prefix('-') {
        Some(r) => (int(-1), r),
        None => (int(1), body.strip_prefix('+').unwrap_or(body)),
    };
    if let Some(i) = basis.index_of(rest) {
        return Some((sign, i));
    }
    if let Some((c, label)) = rest.rsplit_once('*') {
        let i = basis.index_of(label)?;
        return Some((sign * parse_coefficient(c)?, i));
    }
    let mut labels: Vec<(usize, &String)> = basis.labels().iter().enumerate().collect();
    labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));
    labels.into_iter().find_map(|(i, l)| {
        let c = rest.strip_suffix(l.as_str())?;
        Some((sign.clone() * parse_coefficient(c)?, i))
    })
}

fn parse_term(basis: &SuperBasis, raw: &str) -> Result<Term> {
    let bad = || Error::Parse(format!("cannot read term `{raw}`; expected c*label, c*labelb or c*label*"));
    let mut candidates = Vec::new();
    if let Some(body) = raw.strip_suffix('*') {
        candidates.push((body, TermKind::Dual));
    }
    candidates.push((raw, TermKind::Primal));
    if let Some(body) = raw.strip_suffix('\u{266d}').or_else(|| raw.strip_suffix('b')) {
        candidates.push((body, TermKind::Flat));
    }
    candidates
        .into_iter()
        .find_map(|(body, kind)| resolve(basis, body).map(|(coefficient, index)| Term { coefficient, index, kind }))
        .ok_or_else(bad)
}

/// Parses a sum such as `2e1 + 3e2`, `e1 - 1/2*e2`, `xb` or `1/2*y*`.
pub fn parse_terms(basis: &SuperBasis, s: &str) -> Result<Vec<Term>> {
    let pieces = split_terms(s);
    if pieces.iter().all(String::is_empty) {
        return Err(Error::Parse("empty coordinate expression".into()));
    }
    pieces.iter().map(|p| if p.is_empty() { Err(Error::Parse(format!("dangling sign in `{s}`"))) } else { parse_term(basis, p) }).collect()
}

/// A vector of the algebra; flat and dual terms are rejected.
pub fn parse_vector(basis: &SuperBasis, s: &str) -> Result<Vec<Rational>> {
    let mut v = vec![int(0); basis.dim()];
    for t in parse_terms(basis, s)? {
        if t.kind != TermKind::Primal {
            return Err(Error::Parse(format!("`{s}` must be a vector, not a covector")));
        }
        v[t.index] = v[t.index].add(&t.coefficient);
    }
    Ok(v)
}

/// A covector in dual-basis coordinates. Plain and flat terms are both
/// read through `beta`, so `3e1 + 5e2` is the flat of that vector; mixing
/// them with dual-basis terms is rejected as ambiguous.
pub fn parse_covector(basis: &SuperBasis, beta: &BilinearForm<Rational>, s: &str) -> Result<Vec<Rational>> {
    let terms = parse_terms(basis, s)?;
    let dual = terms.iter().filter(|t| t.kind == TermKind::Dual).count();
    if dual != 0 && dual != terms.len() {
        return Err(Error::Parse(format!("`{s}` mixes dual-basis terms with vector terms")));
    }
    let mut v = vec![int(0); basis.dim()];
    for t in &terms {
        v[t.index] = v[t.index].add(&t.coefficient);
    }
    Ok(if dual == 0 { beta.flat(&v) } else { v })
}
