//! Explicit isomorphisms between catalog algebras.

use crate::algebra::HomomorphismReport;
use crate::catalog::{make_dt, make_gl_plus, make_josp, make_spin, make_ujosp, CMat, CatalogEntry};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{frac, int, Field, Rational};

#[derive(Clone, Debug)]
pub struct KnownIsomorphism {
    pub name: String,
    pub source: CatalogEntry,
    pub target: CatalogEntry,
    /// Column `j` is the image of source basis vector `j`.
    pub map: Matrix<Rational>,
}

impl KnownIsomorphism {
    pub fn verify(&self) -> Result<HomomorphismReport> {
        self.source.algebra.verify_homomorphism(&self.map, &self.target.algebra)
    }
}

/// `D(t) -> D(1/t)`: `e1 <-> e2`, `x -> x`, `y -> t y`.
pub fn dt_inverse_map(t: &Rational) -> Result<Matrix<Rational>> {
    if Field::is_zero(t) {
        return Err(Error::InvalidParameter("D(t) -> D(1/t) needs t != 0".into()));
    }
    let mut phi = Matrix::zeros(4, 4);
    phi.set(1, 0, int(1));
    phi.set(0, 1, int(1));
    phi.set(2, 2, int(1));
    phi.set(3, 3, t.clone());
    Ok(phi)
}

/// `Spin(3|0) -> UJosp(2,0)` through Pauli matrices: `e1, e2` go to the
/// diagonal units, `x -> sigma_x`, `y -> sigma_y`.
pub fn spin30_to_ujosp20(source: &CatalogEntry, target: &CatalogEntry) -> Result<Matrix<Rational>> {
    let model = target.model.as_ref().ok_or_else(|| Error::Internal("UJosp has a matrix model".into()))?;
    let sigma_x = CMat::unit(2, 0, 1).add(&CMat::unit(2, 1, 0));
    let sigma_y = CMat::imaginary_unit(2, 1, 0).add(&CMat::imaginary_unit(2, 0, 1).scale(&int(-1)));
    let images = [CMat::unit(2, 0, 0), CMat::unit(2, 1, 1), sigma_x, sigma_y];
    let mut cols = vec![Vec::new(); source.algebra.dim()];
    for (label, mat) in ["e1", "e2", "x", "y"].iter().zip(images) {
        let j = source
            .algebra
            .basis()
            .index_of(label)
            .ok_or_else(|| Error::Internal(format!("Spin(3|0) has no label `{label}`")))?;
        cols[j] = model.coordinates(&mat).ok_or_else(|| Error::Internal("Pauli matrix outside UJosp(2,0)".into()))?;
    }
    Matrix::from_columns(target.algebra.dim(), &cols)
}

/// The isomorphisms between catalog algebras that the test suite replays.
pub fn known_isomorphisms() -> Result<Vec<KnownIsomorphism>> {
    let same = |name: &str, source: CatalogEntry, target: CatalogEntry| KnownIsomorphism {
        name: name.into(),
        map: Matrix::identity(source.algebra.dim()),
        source,
        target,
    };
    let mut out = vec![
        same("D(-1) = gl+(1|1)", make_dt(&int(-1)), make_gl_plus(1, 1)),
        same("D(-1/2) = Josp(1|2)", make_dt(&frac(-1, 2)), make_josp(1, 1)),
        same("D(1) = Spin(1|2)", make_dt(&int(1)), make_spin(1, 2)?),
    ];
    for t in [int(2), int(-3)] {
        out.push(KnownIsomorphism {
            name: format!("D({t}) = D({})", t.recip()),
            map: dt_inverse_map(&t)?,
            source: make_dt(&t),
            target: make_dt(&t.recip()),
        });
    }
    let spin = make_spin(3, 0)?;
    let ujosp = make_ujosp(2, 0);
    out.push(KnownIsomorphism { name: "Spin(3|0) = UJosp(2,0)".into(), map: spin30_to_ujosp20(&spin, &ujosp)?, source: spin, target: ujosp });
    Ok(out)
}
