//! Builtin algebra families with their invariant forms.

use crate::algebra::{direct_sum, BilinearForm, SuperAlgebra, SuperBasis};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, Matrix};
use crate::poly::param;
use crate::ratfn::RatFn;
use crate::scalar::{frac, int, parse_rational, Field, Rational};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub algebra: SuperAlgebra<Rational>,
    pub beta: Option<BilinearForm<Rational>>,
    /// A Jordan frame in algebra coordinates, when the family has a standard one.
    pub frame: Option<Vec<Vec<Rational>>>,
    /// Whether the algebra is expected to satisfy the super Jordan identity.
    pub jordan: bool,
    pub notes: String,
    /// Matrix realization for the matrix families.
    pub model: Option<MatrixModel>,
}

impl CatalogEntry {
    pub fn label_vector(&self, label: &str) -> Vec<Rational> {
        let i = self.algebra.basis().index_of(label).unwrap_or_else(|| panic!("no basis label `{label}`"));
        unit_vec(self.algebra.dim(), i)
    }
}

/// A matrix over Q or Q(i), stored as real and imaginary parts.
#[derive(Clone, PartialEq, Debug)]
pub struct CMat {
    pub re: Matrix<Rational>,
    pub im: Matrix<Rational>,
}

impl CMat {
    pub fn real(re: Matrix<Rational>) -> Self {
        let n = re.rows();
        CMat { re, im: Matrix::zeros(n, n) }
    }

    pub fn zeros(n: usize) -> Self {
        CMat::real(Matrix::zeros(n, n))
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, int(1));
        CMat::real(m)
    }

    pub fn imaginary_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, int(1));
        CMat { re: Matrix::zeros(n, n), im: m }
    }

    pub fn size(&self) -> usize {
        self.re.rows()
    }

    pub fn add(&self, o: &Self) -> Self {
        CMat { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CMat { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CMat {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn conj(&self) -> Self {
        CMat { re: self.re.clone(), im: self.im.neg() }
    }

    fn flatten(&self, complex: bool) -> Vec<Rational> {
        let mut v = self.re.entries().to_vec();
        if complex {
            v.extend_from_slice(self.im.entries());
        }
        v
    }

    /// Real part of the supertrace for `even` leading rows.
    fn supertrace(&self, even: usize) -> Rational {
        let mut s = int(0);
        for i in 0..self.size() {
            if i < even {
                s += self.re.get(i, i);
            } else {
                s -= self.re.get(i, i);
            }
        }
        s
    }
}

/// A realization of an algebra inside `gl(m|k)` over Q or Q(i).
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub even_rows: usize,
    pub odd_rows: usize,
    pub complex: bool,
    /// Matrix of each basis vector of the algebra.
    pub elements: Vec<CMat>,
}

impl MatrixModel {
    fn size(&self) -> usize {
        self.even_rows + self.odd_rows
    }

    /// Algebra coordinates of a matrix, if it lies in the span of the model.
    pub fn coordinates(&self, m: &CMat) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.elements.iter().map(|e| e.flatten(self.complex)).collect();
        let target = m.flatten(self.complex);
        let span = Matrix::from_columns(target.len(), &cols).ok()?;
        span.solve(&target).ok().flatten()
    }

    fn parity_of_entry(&self, i: usize, j: usize) -> u8 {
        u8::from(i >= self.even_rows) ^ u8::from(j >= self.even_rows)
    }

    fn parity(&self, m: &CMat) -> Option<u8> {
        let mut found = None;
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if !Field::is_zero(m.re.get(i, j)) || !Field::is_zero(m.im.get(i, j)) {
                    let p = self.parity_of_entry(i, j);
                    if found.is_some_and(|q| q != p) {
                        return None;
                    }
                    found = Some(p);
                }
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Builds the special Jordan superalgebra `{a,b} = (ab + (-1)^{|a||b|} ba)/2`
    /// on the span of the elements, with `beta(a,b) = Re str(ab)`.
    fn jordan_algebra(&self, basis: SuperBasis) -> Result<(SuperAlgebra<Rational>, BilinearForm<Rational>)> {
        let parities: Vec<u8> = self
            .elements
            .iter()
            .map(|e| self.parity(e).ok_or(Error::NotHomogeneous))
            .collect::<Result<_>>()?;
        for (i, p) in parities.iter().enumerate() {
            if *p != basis.parity(i) {
                return Err(Error::Grading(format!("matrix for {} has the wrong parity", basis.label(i))));
            }
        }
        let half = frac(1, 2);
        let n = self.elements.len();
        let mut products = Vec::with_capacity(n * n);
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                let s = if parities[i] * parities[j] == 1 { int(-1) } else { int(1) };
                let p = a.mul(b).add(&b.mul(a).scale(&s)).scale(&half);
                let c = self
                    .coordinates(&p)
                    .ok_or_else(|| Error::Internal("matrix span is not closed under the Jordan product".into()))?;
                products.push(c);
            }
        }
        let alg = SuperAlgebra::from_fn(basis, |i, j| products[i * n + j].clone())?;
        let gram = Matrix::from_fn(n, n, |i, j| self.elements[i].mul(&self.elements[j]).supertrace(self.even_rows));
        Ok((alg, BilinearForm::new(gram)?))
    }
}

/// The superinvolution `A -> D S(A) D^{-1}` on `gl(m|2n)`, where `S` is the
/// (conjugate) supertranspose `[[a,b],[c,d]] -> [[a^t,-c^t],[b^t,d^t]]` and
/// `D = diag(I_m, U)`, `U = [[0,-I_n],[I_n,0]]`.
pub fn orthosymplectic_involution(m: usize, n: usize, a: &CMat) -> CMat {
    let size = m + 2 * n;
    let mut st = CMat::zeros(size);
    let c = a.conj();
    for i in 0..size {
        for j in 0..size {
            // Entry (i,j) of the input lands at (j,i); the odd-even block
            // picks up a sign.
            let s = if i >= m && j < m { int(-1) } else { int(1) };
            st.re.set(j, i, &s * c.re.get(i, j));
            st.im.set(j, i, &s * c.im.get(i, j));
        }
    }
    let mut d = Matrix::identity(size);
    let mut d_inv = Matrix::identity(size);
    for k in 0..n {
        let (p, q) = (m + k, m + n + k);
        for mat in [&mut d, &mut d_inv] {
            mat.set(p, p, int(0));
            mat.set(q, q, int(0));
        }
        d.set(p, q, int(-1));
        d.set(q, p, int(1));
        d_inv.set(p, q, int(1));
        d_inv.set(q, p, int(-1));
    }
    CMat::real(d).mul(&st).mul(&CMat::real(d_inv))
}

/// Fixed points of the involution, as a homogeneous basis (even first).
fn fixed_points(m: usize, n: usize, complex: bool) -> (Vec<CMat>, usize) {
    let size = m + 2 * n;
    let mut units = Vec::new();
    for i in 0..size {
        for j in 0..size {
            units.push(CMat::unit(size, i, j));
        }
    }
    if complex {
        for i in 0..size {
            for j in 0..size {
                units.push(CMat::imaginary_unit(size, i, j));
            }
        }
    }
    let dim = units.len();
    let cols: Vec<Vec<Rational>> = units
        .iter()
        .map(|u| {
            let image = orthosymplectic_involution(m, n, u);
            let diff = image.add(&u.scale(&int(-1)));
            diff.flatten(complex)
        })
        .collect();
    let kernel = Matrix::from_columns(dim, &cols).expect("square").kernel();
    let to_mat = |v: &Vec<Rational>| {
        let mut out = CMat::zeros(size);
        for (k, c) in v.iter().enumerate() {
            if !Field::is_zero(c) {
                out = out.add(&units[k].scale(c));
            }
        }
        out
    };
    let model = MatrixModel { even_rows: m, odd_rows: 2 * n, complex, elements: vec![] };
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for v in kernel.basis() {
        let mat = to_mat(v);
        match model.parity(&mat) {
            Some(0) => even.push(mat),
            Some(_) => odd.push(mat),
            None => unreachable!("the involution preserves parity"),
        }
    }
    let n_even = even.len();
    even.extend(odd);
    (even, n_even)
}

fn frame_from_model(model: &MatrixModel, mats: &[CMat]) -> Option<Vec<Vec<Rational>>> {
    mats.iter().map(|m| model.coordinates(m)).collect()
}

/// `gl(m|n)^(+)` on matrix units; odd units are implicitly scaled by
/// `sqrt 2`, which keeps all structure constants rational.
pub fn make_gl_plus(m: usize, n: usize) -> CatalogEntry {
    let size = m + n;
    let odd_block = |i: usize, j: usize| (i >= m) != (j >= m);
    let mut even_idx = Vec::new();
    let mut odd_idx = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if odd_block(i, j) {
                odd_idx.push((i, j));
            } else {
                even_idx.push((i, j));
            }
        }
    }
    let sep = if size > 9 { "_" } else { "" };
    let name = |&(i, j): &(usize, usize)| format!("E{}{sep}{}", i + 1, j + 1);
    let (even_labels, odd_labels): (Vec<String>, Vec<String>) = if (m, n) == (1, 1) {
        (vec!["e1".into(), "e2".into()], vec!["x".into(), "y".into()])
    } else {
        (even_idx.iter().map(name).collect(), odd_idx.iter().map(name).collect())
    };
    let units: Vec<(usize, usize)> = even_idx.iter().chain(&odd_idx).copied().collect();
    let basis = SuperBasis::new(&even_labels, &odd_labels).expect("distinct labels");
    let dim = units.len();
    let index_of = |ij: (usize, usize)| units.iter().position(|&u| u == ij).expect("matrix unit");
    let par = |k: usize| u8::from(odd_block(units[k].0, units[k].1));
    // With a = s_a E_ij (s = sqrt 2 on odd units), a b = (s_a s_b / s_c) c.
    let scale = |pa: u8, pb: u8| if pa == 1 && pb == 1 { int(2) } else { int(1) };
    let half = frac(1, 2);
    let algebra = SuperAlgebra::from_fn(basis, |a, b| {
        let (i, j) = units[a];
        let (k, l) = units[b];
        let mut v = vec![int(0); dim];
        let s = scale(par(a), par(b));
        if j == k {
            v[index_of((i, l))] += &s * &half;
        }
        if l == i {
            let sign = if par(a) * par(b) == 1 { int(-1) } else { int(1) };
            v[index_of((k, j))] += &s * &half * sign;
        }
        v
    })
    .expect("graded by construction");
    let gram = Matrix::from_fn(dim, dim, |a, b| {
        let (i, j) = units[a];
        let (k, l) = units[b];
        if j == k && l == i {
            let s = scale(par(a), par(b));
            if i < m {
                s
            } else {
                -s
            }
        } else {
            int(0)
        }
    });
    let frame = (0..size).map(|i| unit_vec(dim, index_of((i, i)))).collect();
    CatalogEntry {
        name: format!("gl+({m}|{n})"),
        parameters: vec![("m".into(), m.to_string()), ("n".into(), n.to_string())],
        algebra,
        beta: Some(BilinearForm::new(gram).expect("square")),
        frame: Some(frame),
        jordan: true,
        notes: "symmetrized matrix product on gl(m|n); odd matrix units scaled by sqrt 2; beta(a,b) = str(ab)".into(),
        model: None,
    }
}

/// Josp(m|2n): fixed points of the orthosymplectic superinvolution.
pub fn make_josp(m: usize, n: usize) -> CatalogEntry {
    let size = m + 2 * n;
    let (elements, n_even, even_labels, odd_labels) = if (m, n) == (1, 1) {
        let e = |entries: &[(usize, usize, i64)]| {
            let mut mat = Matrix::zeros(3, 3);
            for &(i, j, v) in entries {
                mat.set(i, j, int(v));
            }
            CMat::real(mat)
        };
        let elements = vec![
            e(&[(0, 0, 1)]),
            e(&[(1, 1, 1), (2, 2, 1)]),
            e(&[(0, 1, 1), (2, 0, 1)]),
            e(&[(0, 2, -1), (1, 0, 1)]),
        ];
        (elements, 2, vec!["e1".to_string(), "e2".into()], vec!["x".to_string(), "y".into()])
    } else {
        let (elements, n_even) = fixed_points(m, n, false);
        let ev = (1..=n_even).map(|i| format!("h{i}")).collect();
        let od = (1..=elements.len() - n_even).map(|i| format!("o{i}")).collect();
        (elements, n_even, ev, od)
    };
    debug_assert_eq!(even_labels.len(), n_even);
    let model = MatrixModel { even_rows: m, odd_rows: 2 * n, complex: false, elements };
    let basis = SuperBasis::new(&even_labels, &odd_labels).expect("distinct labels");
    let (algebra, beta) = model.jordan_algebra(basis).expect("Josp is a Jordan superalgebra");
    let frame_mats = orthosymplectic_frame(m, n, size);
    CatalogEntry {
        name: format!("josp({m}|{})", 2 * n),
        parameters: vec![("m".into(), m.to_string()), ("n".into(), n.to_string())],
        algebra,
        beta: Some(beta),
        frame: frame_from_model(&model, &frame_mats),
        jordan: true,
        notes: "symmetric elements of gl(m|2n) under the orthosymplectic superinvolution; beta(a,b) = str(ab)".into(),
        model: Some(model),
    }
}

fn orthosymplectic_frame(m: usize, n: usize, size: usize) -> Vec<CMat> {
    let mut out: Vec<CMat> = (0..m).map(|i| CMat::unit(size, i, i)).collect();
    for k in 0..n {
        out.push(CMat::unit(size, m + k, m + k).add(&CMat::unit(size, m + n + k, m + n + k)));
    }
    out
}

/// UJosp(m,2n): the conjugate-transpose variant of Josp, realified.
pub fn make_ujosp(m: usize, n: usize) -> CatalogEntry {
    let size = m + 2 * n;
    let (elements, n_even) = fixed_points(m, n, true);
    let even_labels: Vec<String> = (1..=n_even).map(|i| format!("h{i}")).collect();
    let odd_labels: Vec<String> = (1..=elements.len() - n_even).map(|i| format!("o{i}")).collect();
    let model = MatrixModel { even_rows: m, odd_rows: 2 * n, complex: true, elements };
    let basis = SuperBasis::new(&even_labels, &odd_labels).expect("distinct labels");
    let (algebra, beta) = model.jordan_algebra(basis).expect("UJosp is a Jordan superalgebra");
    let frame_mats = orthosymplectic_frame(m, n, size);
    CatalogEntry {
        name: format!("ujosp({m},{})", 2 * n),
        parameters: vec![("m".into(), m.to_string()), ("n".into(), n.to_string())],
        algebra,
        beta: Some(beta),
        frame: frame_from_model(&model, &frame_mats),
        jordan: true,
        notes: "complex orthosymplectic fixed points under the conjugate transpose, as a real algebra; beta(a,b) = Re str(ab)".into(),
        model: Some(model),
    }
}

/// Spin(p|q) on `K 1 + V` in the natural basis `1, v1..vp | w1..wq` with the
/// given Gram matrix of `<.,.>` on `V` (even, supersymmetric, nondegenerate).
pub fn make_spin_with_form(p: usize, q: usize, form: &Matrix<Rational>) -> Result<CatalogEntry> {
    let dv = p + q;
    if form.rows() != dv || form.cols() != dv {
        return Err(Error::DimensionMismatch(format!("form on V must be {dv}x{dv}")));
    }
    for i in 0..dv {
        for j in 0..dv {
            let (pi, pj) = (u8::from(i >= p), u8::from(j >= p));
            if pi != pj && !Field::is_zero(form.get(i, j)) {
                return Err(Error::InvalidParameter("form on V is not even".into()));
            }
            let s = if pi * pj == 1 { int(-1) } else { int(1) };
            if *form.get(i, j) != s * form.get(j, i) {
                return Err(Error::InvalidParameter("form on V is not supersymmetric".into()));
            }
        }
    }
    if !form.is_invertible() {
        return Err(Error::InvalidParameter("form on V is degenerate".into()));
    }
    let even_labels: Vec<String> = std::iter::once("1".to_string()).chain((1..=p).map(|i| format!("v{i}"))).collect();
    let odd_labels: Vec<String> = (1..=q).map(|i| format!("w{i}")).collect();
    let basis = SuperBasis::new(&even_labels, &odd_labels)?;
    let n = dv + 1;
    // Index 0 is the unit, index 1 + k is the k-th vector of V.
    let algebra = SuperAlgebra::from_fn(basis, |i, j| {
        let mut v = vec![int(0); n];
        match (i, j) {
            (0, _) => v[j] = int(1),
            (_, 0) => v[i] = int(1),
            _ => v[0] = form.get(i - 1, j - 1).clone(),
        }
        v
    })?;
    let gram = Matrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => int(2),
        (0, _) | (_, 0) => int(0),
        _ => int(2) * form.get(i - 1, j - 1),
    });
    Ok(CatalogEntry {
        name: format!("spin({p}|{q})"),
        parameters: vec![("p".into(), p.to_string()), ("q".into(), q.to_string())],
        algebra,
        beta: Some(BilinearForm::new(gram)?),
        frame: Some(vec![unit_vec(n, 0)]),
        jordan: true,
        notes: "K1 + V with {a1+u, b1+v} = (ab + <u,v>)1 + av + bu; beta = 2(ab + <u,v>)".into(),
        model: None,
    })
}

/// Spin(p|q) with the orthonormal form on `V_0` and the standard symplectic
/// form on `V_1`. For `p >= 1` the basis is `e1 = (1+v1)/2, e2 = (1-v1)/2,
/// v2, ..` so that `{e1, e2}` is a Jordan frame.
pub fn make_spin(p: usize, q: usize) -> Result<CatalogEntry> {
    if !q.is_multiple_of(2) {
        return Err(Error::OddDimensionNotEven(q));
    }
    let dv = p + q;
    let mut form = Matrix::zeros(dv, dv);
    for i in 0..p {
        form.set(i, i, int(1));
    }
    for k in 0..q / 2 {
        let (a, b) = (p + 2 * k, p + 2 * k + 1);
        form.set(a, b, int(1));
        form.set(b, a, int(-1));
    }
    let natural = make_spin_with_form(p, q, &form)?;
    let n = dv + 1;
    let even_names: Vec<String> = if p == 0 {
        vec!["e".into()]
    } else if p == 3 && q == 0 {
        vec!["e1".into(), "e2".into(), "x".into(), "y".into()]
    } else {
        ["e1".to_string(), "e2".to_string()].into_iter().chain((2..=p).map(|i| format!("v{i}"))).collect()
    };
    let odd_names: Vec<String> = if q == 2 { vec!["x".into(), "y".into()] } else { (1..=q).map(|i| format!("w{i}")).collect() };
    let labels = SuperBasis::new(&even_names, &odd_names)?;
    let mut change = Matrix::identity(n);
    if p >= 1 {
        let h = frac(1, 2);
        change.set(0, 0, h.clone());
        change.set(1, 0, h.clone());
        change.set(0, 1, h.clone());
        change.set(1, 1, -h);
    }
    let algebra = natural.algebra.change_basis(&change, labels)?;
    let beta = natural.beta.as_ref().expect("spin has a form").pull_back(&change);
    let frame = if p >= 1 { vec![unit_vec(n, 0), unit_vec(n, 1)] } else { vec![unit_vec(n, 0)] };
    Ok(CatalogEntry {
        algebra,
        beta: Some(beta),
        frame: Some(frame),
        notes: format!("{}; frame e1 = (1+v1)/2, e2 = (1-v1)/2", natural.notes),
        ..natural
    })
}

/// D(t) over any field: `e_i^2 = e_i`, `e1 e2 = 0`, `e_i x = x/2`,
/// `e_i y = y/2`, `xy = e1 + t e2 = -yx`.
pub fn dt_algebra<F: Field>(t: &F) -> SuperAlgebra<F> {
    let basis = SuperBasis::new(&["e1", "e2"], &["x", "y"]).expect("distinct labels");
    let half = F::from_rational(&frac(1, 2));
    SuperAlgebra::from_fn(basis, |i, j| {
        let mut v = vec![F::zero(); 4];
        match (i, j) {
            (0, 0) => v[0] = F::one(),
            (1, 1) => v[1] = F::one(),
            (0 | 1, 2) | (2, 0 | 1) => v[2] = half.clone(),
            (0 | 1, 3) | (3, 0 | 1) => v[3] = half.clone(),
            (2, 3) => {
                v[0] = F::one();
                v[1] = t.clone();
            }
            (3, 2) => {
                v[0] = F::one().neg();
                v[1] = t.neg();
            }
            _ => {}
        }
        v
    })
    .expect("graded by construction")
}

/// `beta(e1,e1) = 1, beta(e2,e2) = 1/t, beta(x,y) = 2`.
pub fn dt_form<F: Field>(t: &F) -> Result<BilinearForm<F>> {
    let inv = t.inv().ok_or_else(|| Error::InvalidParameter("the D(t) form needs t != 0".into()))?;
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, F::one());
    m.set(1, 1, inv);
    m.set(2, 3, F::from_int(2));
    m.set(3, 2, F::from_int(-2));
    BilinearForm::new(m)
}

pub fn make_dt(t: &Rational) -> CatalogEntry {
    CatalogEntry {
        name: format!("dt({t})"),
        parameters: vec![("t".into(), t.to_string())],
        algebra: dt_algebra(t),
        beta: dt_form(t).ok(),
        frame: Some(vec![unit_vec(4, 0), unit_vec(4, 1)]),
        jordan: true,
        notes: "D(t): xy = e1 + t e2; beta(e1,e1) = 1, beta(e2,e2) = 1/t, beta(x,y) = 2 (t != 0)".into(),
        model: None,
    }
}

/// D(t) with `t` a symbolic parameter.
pub fn make_dt_symbolic() -> (SuperAlgebra<RatFn>, BilinearForm<RatFn>) {
    let t = RatFn::var(param(0));
    (dt_algebra(&t), dt_form(&t).expect("t is a nonzero rational function"))
}

/// The Kaplansky superalgebra: `e^2 = e`, `ex = x/2`, `ey = y/2`, `xy = e`.
pub fn make_k3() -> CatalogEntry {
    let basis = SuperBasis::new(&["e"], &["x", "y"]).expect("distinct labels");
    let algebra = SuperAlgebra::from_fn(basis, |i, j| {
        let mut v = vec![int(0); 3];
        match (i, j) {
            (0, 0) => v[0] = int(1),
            (0, 1) | (1, 0) => v[1] = frac(1, 2),
            (0, 2) | (2, 0) => v[2] = frac(1, 2),
            (1, 2) => v[0] = int(1),
            (2, 1) => v[0] = int(-1),
            _ => {}
        }
        v
    })
    .expect("graded by construction");
    let mut gram = Matrix::zeros(3, 3);
    gram.set(0, 0, int(1));
    gram.set(1, 2, int(2));
    gram.set(2, 1, int(-2));
    CatalogEntry {
        name: "k3".into(),
        parameters: vec![],
        algebra,
        beta: Some(BilinearForm::new(gram).expect("square")),
        frame: None,
        jordan: true,
        notes: "Kaplansky superalgebra; beta(e,e) = 1, beta(x,y) = 2".into(),
        model: None,
    }
}

/// The purely even deformation with `x^2 = y^2 = e1 + t e2`, `xy = 0`; a
/// Jordan algebra only for `t = 1`.
pub fn make_dns(t: &Rational) -> CatalogEntry {
    let basis = SuperBasis::new(&["e1", "e2", "x", "y"], &[] as &[&str]).expect("distinct labels");
    let algebra = SuperAlgebra::from_fn(basis, |i, j| {
        let mut v = vec![int(0); 4];
        match (i, j) {
            (0, 0) => v[0] = int(1),
            (1, 1) => v[1] = int(1),
            (0 | 1, 2) | (2, 0 | 1) => v[2] = frac(1, 2),
            (0 | 1, 3) | (3, 0 | 1) => v[3] = frac(1, 2),
            (2, 2) | (3, 3) => {
                v[0] = int(1);
                v[1] = t.clone();
            }
            _ => {}
        }
        v
    })
    .expect("purely even");
    CatalogEntry {
        name: format!("dns({t})"),
        parameters: vec![("t".into(), t.to_string())],
        algebra,
        beta: None,
        frame: Some(vec![unit_vec(4, 0), unit_vec(4, 1)]),
        jordan: *t == int(1),
        notes: "purely even table x^2 = y^2 = e1 + t e2, xy = 0; Jordan only for t = 1".into(),
        model: None,
    }
}

/// Direct sum of `d` copies of D(t); labels carry the summand index.
pub fn make_st_rd(t: &Rational, d: usize) -> Result<CatalogEntry> {
    if d == 0 {
        return Err(Error::InvalidParameter("st_rd needs d >= 1".into()));
    }
    let alg = dt_algebra(t);
    let form = dt_form(t)?;
    let parts: Vec<_> = (0..d).map(|_| (&alg, &form)).collect();
    let (algebra, beta) = if d == 1 { (alg.clone(), form.clone()) } else { direct_sum(&parts)? };
    let frame = (0..2 * d).map(|i| unit_vec(4 * d, i)).collect();
    Ok(CatalogEntry {
        name: format!("st_rd({t},{d})"),
        parameters: vec![("t".into(), t.to_string()), ("d".into(), d.to_string())],
        algebra,
        beta: Some(beta),
        frame: Some(frame),
        jordan: true,
        notes: "direct sum of d copies of D(t) with the block form".into(),
        model: None,
    })
}

/// Names accepted by [`parse_catalog_name`].
pub const CATALOG_GRAMMAR: &[&str] =
    &["gl+(m|n)", "josp(m|2n)", "ujosp(m,2n)", "spin(p|q)", "dt(t)", "k3", "dns(t)", "st_rd(t,d)"];

fn split_args<'a>(name: &'a str, prefix: &str, sep: char) -> Option<Vec<&'a str>> {
    let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(sep).map(str::trim).collect())
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("expected a nonnegative integer, got `{s}`")))
}

fn even_half(s: &str) -> Result<usize> {
    let k = parse_count(s)?;
    if k % 2 != 0 {
        return Err(Error::OddDimensionNotEven(k));
    }
    Ok(k / 2)
}

/// Parses a catalog name such as `dt(-1/2)`, `gl+(1|1)` or `st_rd(2,3)`.
pub fn parse_catalog_name(name: &str) -> Result<CatalogEntry> {
    let name: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = name.to_lowercase();
    let bad = || Error::Parse(format!("unknown algebra `{name}`; expected one of {}", CATALOG_GRAMMAR.join(", ")));
    if lower == "k3" {
        return Ok(make_k3());
    }
    let two = |v: Vec<&str>| if v.len() == 2 { Ok((v[0].to_string(), v[1].to_string())) } else { Err(bad()) };
    if let Some(args) = split_args(&lower, "gl+", '|') {
        let (m, n) = two(args)?;
        return Ok(make_gl_plus(parse_count(&m)?, parse_count(&n)?));
    }
    if let Some(args) = split_args(&lower, "ujosp", ',') {
        let (m, n) = two(args)?;
        return Ok(make_ujosp(parse_count(&m)?, even_half(&n)?));
    }
    if let Some(args) = split_args(&lower, "josp", '|') {
        let (m, n) = two(args)?;
        return Ok(make_josp(parse_count(&m)?, even_half(&n)?));
    }
    if let Some(args) = split_args(&lower, "spin", '|') {
        let (p, q) = two(args)?;
        return make_spin(parse_count(&p)?, parse_count(&q)?);
    }
    if let Some(args) = split_args(&lower, "st_rd", ',') {
        let (t, d) = two(args)?;
        return make_st_rd(&parse_rational(&t)?, parse_count(&d)?);
    }
    if let Some(args) = split_args(&lower, "dns", ',') {
        if args.len() != 1 {
            return Err(bad());
        }
        return Ok(make_dns(&parse_rational(args[0])?));
    }
    if let Some(args) = split_args(&lower, "dt", ',') {
        if args.len() != 1 {
            return Err(bad());
        }
        return Ok(make_dt(&parse_rational(args[0])?));
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(entry: &CatalogEntry, terms: &[(&str, Rational)]) -> Vec<Rational> {
        let mut v = vec![int(0); entry.algebra.dim()];
        for (l, c) in terms {
            v[entry.algebra.basis().index_of(l).unwrap()] += c;
        }
        v
    }

    fn product(entry: &CatalogEntry, a: &str, b: &str) -> Vec<Rational> {
        entry.algebra.mul(&entry.label_vector(a), &entry.label_vector(b))
    }

    #[test]
    fn gl_plus_11_table() {
        let g = make_gl_plus(1, 1);
        assert_eq!(product(&g, "x", "y"), vec_of(&g, &[("e1", int(1)), ("e2", int(-1))]));
        assert_eq!(product(&g, "e1", "x"), vec_of(&g, &[("x", frac(1, 2))]));
        let beta = g.beta.as_ref().unwrap();
        assert_eq!(beta.eval(&g.label_vector("x"), &g.label_vector("y")), int(2));
        assert_eq!(beta.eval(&g.label_vector("e2"), &g.label_vector("e2")), int(-1));
        assert_eq!(beta.signature(&g.algebra).unwrap(), (1, 1));
    }

    #[test]
    fn gl_plus_even_case_is_symmetrized_matrix_product() {
        let g = make_gl_plus(2, 0);
        // {E12, E21} = (E11 + E22)/2
        let p = product(&g, "E12", "E21");
        assert_eq!(p, vec_of(&g, &[("E11", frac(1, 2)), ("E22", frac(1, 2))]));
        assert!(g.algebra.check_super_jordan().is_ok());
    }

    #[test]
    fn josp_12_table_and_involution() {
        let j = make_josp(1, 1);
        assert_eq!((j.algebra.even_dim(), j.algebra.odd_dim()), (2, 2));
        assert_eq!(product(&j, "x", "y"), vec_of(&j, &[("e1", int(1)), ("e2", frac(-1, 2))]));
        let beta = j.beta.as_ref().unwrap();
        assert_eq!(beta.eval(&j.label_vector("e2"), &j.label_vector("e2")), int(-2));
        assert!(j.algebra.check_form(beta).all());
        // The explicit basis is fixed by the involution.
        let model = j.model.as_ref().unwrap();
        for e in &model.elements {
            assert_eq!(&orthosymplectic_involution(1, 1, e), e);
        }
        // The generic fixed-point computation agrees on dimensions.
        assert_eq!(fixed_points(1, 1, false).0.len(), 4);
    }

    #[test]
    fn involution_reverses_products_with_sign() {
        let (m, n) = (1, 1);
        let size = m + 2 * n;
        let parity = |i: usize, j: usize| u8::from(i >= m) ^ u8::from(j >= m);
        for (i, j) in [(0, 1), (1, 2), (2, 0), (1, 1)] {
            for (k, l) in [(1, 0), (0, 2), (2, 2), (1, 2)] {
                let a = CMat::unit(size, i, j);
                let b = CMat::unit(size, k, l);
                let lhs = orthosymplectic_involution(m, n, &a.mul(&b));
                let s = if parity(i, j) * parity(k, l) == 1 { int(-1) } else { int(1) };
                let rhs = orthosymplectic_involution(m, n, &b).mul(&orthosymplectic_involution(m, n, &a)).scale(&s);
                assert_eq!(lhs, rhs);
                assert_eq!(orthosymplectic_involution(m, n, &orthosymplectic_involution(m, n, &a)), a);
            }
        }
    }

    #[test]
    fn ujosp_dimensions() {
        let u1 = make_ujosp(1, 0);
        assert_eq!(u1.algebra.dim(), 1);
        assert!(u1.algebra.find_unit().is_some());
        let u2 = make_ujosp(2, 0);
        assert_eq!(u2.algebra.dim(), 4);
        assert!(u2.algebra.check_super_jordan().is_ok());
        let u12 = make_ujosp(1, 1);
        assert!(u12.algebra.check_super_jordan().is_ok());
        assert!(u12.algebra.check_form(u12.beta.as_ref().unwrap()).all());
    }

    #[test]
    fn spin_tables() {
        let s = make_spin(1, 2).unwrap();
        assert_eq!(product(&s, "x", "y"), vec_of(&s, &[("e1", int(1)), ("e2", int(1))]));
        let beta = s.beta.as_ref().unwrap();
        assert_eq!(beta.eval(&s.label_vector("e1"), &s.label_vector("e1")), int(1));
        assert_eq!(beta.eval(&s.label_vector("x"), &s.label_vector("y")), int(2));
        assert_eq!(beta.signature(&s.algebra).unwrap(), (2, 0));
        let s3 = make_spin(3, 0).unwrap();
        assert_eq!(product(&s3, "x", "x"), vec_of(&s3, &[("e1", int(1)), ("e2", int(1))]));
        assert_eq!(product(&s3, "x", "y"), vec![int(0); 4]);
        assert!(make_spin(1, 1).is_err());
    }

    #[test]
    fn spin_beta_associativity_formula() {
        // Expanding beta = 2(ab + <u,v>) gives
        // beta({a1+u, b1+v}, c1+w) = 2(abc + a<v,w> + b<u,w> + c<u,v>) = beta(a1+u, {b1+v, c1+w}).
        let mut form = Matrix::identity(2);
        form.set(1, 1, int(3));
        let s = make_spin_with_form(2, 0, &form).unwrap();
        let beta = s.beta.as_ref().unwrap();
        let el = |a: i64, u: [i64; 2]| vec![int(a), int(u[0]), int(u[1])];
        let ip = |u: [i64; 2], v: [i64; 2]| u[0] * v[0] + 3 * u[1] * v[1];
        let (a, u, b, v, c, w) = (2, [1, -1], -1, [0, 2], 3, [1, 1]);
        let lhs = beta.eval(&s.algebra.mul(&el(a, u), &el(b, v)), &el(c, w));
        let rhs = beta.eval(&el(a, u), &s.algebra.mul(&el(b, v), &el(c, w)));
        let expected = int(2 * (a * b * c + a * ip(v, w) + b * ip(u, w) + c * ip(u, v)));
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn k3_and_dns() {
        let k = make_k3();
        assert_eq!(product(&k, "x", "y"), vec_of(&k, &[("e", int(1))]));
        assert!(k.algebra.canonical_form_tau().is_zero());
        assert_eq!(k.beta.as_ref().unwrap().signature(&k.algebra).unwrap(), (1, 0));
        assert!(make_dns(&int(1)).algebra.check_super_jordan().is_ok());
        let f = make_dns(&int(2)).algebra.check_super_jordan().unwrap_err();
        assert_eq!(f.witness, vec!["x", "e1", "{x,x}"]);
        assert_eq!(f.coordinates[2], "e1 + 2*e2");
    }

    #[test]
    fn names_parse() {
        assert_eq!(parse_catalog_name("dt(-1/2)").unwrap().name, "dt(-1/2)");
        assert_eq!(parse_catalog_name("gl+(1|1)").unwrap().algebra.dim(), 4);
        assert_eq!(parse_catalog_name("josp(1|2)").unwrap().algebra.dim(), 4);
        assert_eq!(parse_catalog_name("ujosp(2,0)").unwrap().algebra.dim(), 4);
        assert_eq!(parse_catalog_name("spin(3|0)").unwrap().algebra.dim(), 4);
        assert_eq!(parse_catalog_name("st_rd(2,3)").unwrap().algebra.dim(), 12);
        assert_eq!(parse_catalog_name("K3").unwrap().algebra.dim(), 3);
        assert!(parse_catalog_name("josp(1|3)").is_err());
        assert!(parse_catalog_name("nope").is_err());
        assert!(parse_catalog_name("dt(0.5)").is_err());
    }

    #[test]
    fn symbolic_dt_is_jordan_with_valid_form() {
        let (a, beta) = make_dt_symbolic();
        assert!(a.check_super_jordan().is_ok());
        assert!(a.check_form(&beta).all());
    }
}
