//! The identity suite run by `verify`: every algebraic identity the library
//! relies on, checked exactly, with a replayable witness on failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Failure, SuperAlgebra};
use crate::catalog::CatalogEntry;
use crate::decomposition::{check_frame, check_frame_rules, check_peirce, frame_peirce, peirce_of_idempotent};
use crate::scalar::Rational;
use crate::superfn::{random_superfunction, DualCalculus};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Basis labels or coordinate expressions reproducing the failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, witness: None, detail: None }
    }

    pub fn fail(name: &str, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, witness: Some(witness), detail: Some(detail.into()) }
    }

    fn from_failure(name: &str, r: std::result::Result<(), Failure>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(f) => Check::fail(name, f.witness, f.detail),
        }
    }

    fn from_message(name: &str, witness: Vec<String>, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(msg) => Check::fail(name, witness, msg),
        }
    }
}

fn supertrace_of_brackets(alg: &SuperAlgebra<Rational>) -> Check {
    const NAME: &str = "supertrace of brackets vanishes";
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let st = alg.left_mult_basis(i).bracket(&alg.left_mult_basis(j)).supertrace();
            if st != Rational::from_integer(0.into()) {
                let w = vec![format!("L_{}", alg.basis().label(i)), format!("L_{}", alg.basis().label(j))];
                return Check::fail(NAME, w, format!("str = {st}"));
            }
        }
    }
    Check::pass(NAME)
}

fn form_checks(entry: &CatalogEntry, out: &mut Vec<Check>) {
    let tau = entry.algebra.canonical_form_tau();
    let report = entry.algebra.check_form(&tau);
    let assoc = report.failures.iter().find(|f| f.check.contains("associat"));
    out.push(match (report.associative, assoc) {
        (true, _) => Check::pass("tau associativity"),
        (false, Some(f)) => Check::fail("tau associativity", f.witness.clone(), f.detail.clone()),
        (false, None) => Check::fail("tau associativity", vec![], "tau(ab,c) != tau(a,bc)"),
    });
    let Some(beta) = &entry.beta else { return };
    let report = entry.algebra.check_form(beta);
    for (name, ok, key) in [
        ("beta even", report.even, "even"),
        ("beta supersymmetric", report.supersymmetric, "symmetr"),
        ("beta associative", report.associative, "associat"),
        ("beta nondegenerate", report.nondegenerate, "degenera"),
    ] {
        if ok {
            out.push(Check::pass(name));
        } else {
            let f = report.failures.iter().find(|f| f.check.contains(key));
            out.push(Check::fail(name, f.map(|f| f.witness.clone()).unwrap_or_default(), f.map_or(String::new(), |f| f.detail.clone())));
        }
    }
}

fn peirce_checks(entry: &CatalogEntry, out: &mut Vec<Check>) {
    let alg = &entry.algebra;
    let Some(frame) = &entry.frame else { return };
    let basis = alg.basis();
    for e in frame {
        let name = "Peirce projectors and rules";
        let w = vec![basis.format_vector(e)];
        out.push(match peirce_of_idempotent(alg, e) {
            Ok(p) => Check::from_message(name, w, check_peirce(alg, &p)),
            Err(err) => Check::fail(name, w, err.to_string()),
        });
    }
    let name = "frame Peirce rules";
    let w: Vec<String> = frame.iter().map(|e| basis.format_vector(e)).collect();
    out.push(match check_frame(alg, frame).and_then(|f| frame_peirce(alg, &f)) {
        Ok(fp) => Check::from_message(name, w, check_frame_rules(alg, &fp)),
        Err(err) => Check::fail(name, w, err.to_string()),
    });
}

/// Super-commutativity and super-Leibniz of the bracket on `samples` seeded
/// triples of homogeneous polynomial superfunctions.
fn bracket_checks(alg: &SuperAlgebra<Rational>, seed: u64, samples: usize, out: &mut Vec<Check>) {
    let calc = DualCalculus::new(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n) = (alg.even_dim(), alg.odd_dim());
    let mut comm = Check::pass("dual bracket super-commutativity");
    let mut leibniz = Check::pass("dual bracket super-Leibniz");
    let fmt = |f: &crate::superfn::SuperFunction| f.format_with(alg.basis());
    for _ in 0..samples {
        let (pf, pg, ph) = (rng.gen_range(0..2), rng.gen_range(0..2), rng.gen_range(0..2));
        let f = random_superfunction(&mut rng, m, n, pf);
        let g = random_superfunction(&mut rng, m, n, pg);
        let h = random_superfunction(&mut rng, m, n, ph);
        let (Some(pf), Some(pg)) = (f.parity(), g.parity()) else { continue };
        let (Ok(fg), Ok(gf)) = (calc.bracket(&f, &g), calc.bracket(&g, &f)) else { continue };
        let expected = if pf * pg == 1 { fg.neg() } else { fg.clone() };
        if comm.passed && gf != expected {
            comm = Check::fail(&comm.name, vec![fmt(&f), fmt(&g)], "{g,f} != (-1)^{|f||g|}{f,g}");
        }
        let (Ok(lhs), Ok(fh)) = (calc.bracket(&f, &g.mul(&h)), calc.bracket(&f, &h)) else { continue };
        let second = g.mul(&fh);
        let rhs = fg.mul(&h).add(&if pf * pg == 1 { second.neg() } else { second });
        if leibniz.passed && lhs != rhs {
            leibniz = Check::fail(&leibniz.name, vec![fmt(&f), fmt(&g), fmt(&h)], "{f,gh} != {f,g}h + (-1)^{|f||g|} g{f,h}");
        }
    }
    out.push(comm);
    out.push(leibniz);
}

/// All identity checks on one algebra. Bracket checks use `samples` random
/// triples drawn from `seed`.
pub fn identity_suite(entry: &CatalogEntry, seed: u64, samples: usize) -> Vec<Check> {
    let alg = &entry.algebra;
    let mut out = vec![
        Check::from_failure("super-commutativity", alg.check_commutative()),
        Check::from_failure("super Jordan identity", alg.check_super_jordan()),
        Check::from_failure("Kac associator formula", alg.check_kac_formula()),
        supertrace_of_brackets(alg),
    ];
    form_checks(entry, &mut out);
    peirce_checks(entry, &mut out);
    bracket_checks(alg, seed, samples, &mut out);
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
