//! Exact dense linear algebra over any [`Field`].
//!
//! Matrices are row-major; a matrix acting on coordinate vectors sends the
//! basis vector `j` to column `j`. Subspaces are stored by their reduced row
//! echelon basis (leftmost nonzero pivot), so two subspaces are equal exactly
//! when their stored bases are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

pub fn zero_vec<F: Field>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = zero_vec(n);
    v[i] = F::one();
    v
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vec<F: Field>(c: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| c.mul(x)).collect()
}

/// `a += c * b`, skipping zero entries of `b`.
pub fn axpy<F: Field>(a: &mut [F], c: &F, b: &[F]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.add(&c.mul(y));
        }
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut s = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s.add(&x.mul(y));
        }
    }
    s
}

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<F>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch("column length differs from ambient dimension".into()));
        }
        Ok(Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let start = i * other.cols;
                axpy(&mut out.data[start..start + other.cols], a, other.row(k));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn trace(&self) -> F {
        let mut s = F::zero();
        for i in 0..self.rows.min(self.cols) {
            s = s.add(self.get(i, i));
        }
        s
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.resize(self.rows, zero_vec(self.cols));
        (Matrix::from_rows_unchecked(rows, self.rows, self.cols), pivots)
    }

    fn from_rows_unchecked(rows: Vec<Vec<F>>, r: usize, c: usize) -> Self {
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_in_place(&mut rows, self.cols).len()
    }

    pub fn kernel(&self) -> Subspace<F> {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = unit_vec(self.cols, f);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = rows[r][f].neg();
            }
            basis.push(v);
        }
        Subspace::span(self.cols, &basis).expect("kernel vectors have matching length")
    }

    /// One solution of `M v = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vec::<F>(n, i));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = rows.into_iter().take(n).flat_map(|r| r.into_iter().skip(n)).collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row-reduces `rows` in place to reduced echelon form, drops zero rows and
/// returns the pivot columns.
fn rref_in_place<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].neg();
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A linear subspace of `F^n`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[F]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].inv().expect("nonzero");
        if !inv.is_one() {
            w = scale_vec(&inv, &w);
        }
        for row in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].neg();
                axpy(row, &factor, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        Ok(true)
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = w[p].neg();
                axpy(&mut w, &factor, row);
            }
        }
        w
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v).expect("same ambient dimension");
        }
        s
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "intersection of subspaces in different spaces");
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        // Solve sum a_i u_i = sum b_j w_j.
        let mut cols: Vec<Vec<F>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| scale_vec(&F::one().neg(), w)));
        let m = Matrix::from_columns(self.ambient, &cols).expect("consistent dimensions");
        let k = m.kernel();
        let mut out = Self::zero(self.ambient);
        for coeffs in k.basis() {
            let mut v = zero_vec(self.ambient);
            for (c, u) in coeffs.iter().zip(&self.basis) {
                axpy(&mut v, c, u);
            }
            out.insert(&v).expect("same ambient dimension");
        }
        out
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let mut out = Self::zero(m.rows());
        for v in &self.basis {
            out.insert(&m.apply(v)).expect("matrix rows match");
        }
        out
    }
}

/// Canonical echelon basis of the span of `vectors` in `F^ambient`.
pub fn rank_and_basis<F: Field>(ambient: usize, vectors: &[Vec<F>]) -> Result<Subspace<F>> {
    Subspace::span(ambient, vectors)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sylvester inertia of a symmetric rational matrix by congruence
/// diagonalization.
pub fn symmetric_signature(s: &Matrix<Rational>) -> Result<Inertia> {
    if !s.is_square() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    for i in 0..n {
        for j in 0..i {
            if s.get(i, j) != s.get(j, i) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut a = s.to_rows();
    let mut inertia = Inertia { positive: 0, negative: 0, zero: 0 };
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            {
                // Replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij.
                add_sym(&mut a, i, j);
                swap_sym(&mut a, k, i);
            } else {
                inertia.zero += n - k;
                break;
            }
        }
        let p = a[k][k].clone();
        match crate::scalar::sign(&p) {
            1 => inertia.positive += 1,
            _ => inertia.negative += 1,
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
            for j in k..n {
                a[j][i] = a[i][j].clone();
            }
        }
        k += 1;
    }
    Ok(inertia)
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Congruence by the elementary move `e_i -> e_i + e_j`.
fn add_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn span_ranks() {
        let v = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]];
        assert_eq!(rank_and_basis(2, &v).unwrap().dim(), 2);
        assert_eq!(rank_and_basis::<Rational>(3, &[]).unwrap().dim(), 0);
        assert!(rank_and_basis(3, &v).is_err());
    }

    #[test]
    fn solve_and_inconsistent() {
        let id = Matrix::<Rational>::identity(3);
        let v = vec![int(1), frac(2, 3), int(-4)];
        assert_eq!(id.solve(&v).unwrap(), Some(v.clone()));
        let m = q(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[int(1), int(2)]).unwrap(), None);
        assert!(m.solve(&[int(1)]).is_err());
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::<Rational>::zeros(3, 3).kernel().dim(), 3);
        assert_eq!(Matrix::<Rational>::identity(3).kernel().dim(), 0);
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(is_zero_vec(&m.apply(v)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1], &[5, 3]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::span(3, &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]).unwrap();
        let b = Subspace::span(3, &[vec![int(0), int(1), int(1)], vec![int(1), int(1), int(0)]]).unwrap();
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[int(1), int(1), int(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
        // Same span given by different generators gives the same canonical basis.
        let a2 = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(2), int(-1), int(0)]]).unwrap();
        assert_eq!(a, a2);
        assert_eq!(a.coordinates(&[int(3), int(-2), int(0)]), Some(vec![int(3), int(-2)]));
    }

    #[test]
    fn signatures() {
        let s = |m: Matrix<Rational>| {
            let i = symmetric_signature(&m).unwrap();
            (i.positive, i.negative, i.zero)
        };
        assert_eq!(s(q(&[&[1, 0], &[0, -1]])), (1, 1, 0));
        assert_eq!(s(q(&[&[0, 0], &[0, 0]])), (0, 0, 2));
        assert_eq!(s(q(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(s(q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])), (1, 1, 1));
        assert!(symmetric_signature(&q(&[&[0, 1], &[0, 0]])).is_err());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
        prop::collection::vec((-3i64..=3, 1i64..=3), rows * cols)
            .prop_map(move |v| Matrix::new(rows, cols, v.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        }

        #[test]
        fn solve_substitutes(m in small_matrix(3, 4), x in prop::collection::vec(-5i64..5, 4)) {
            let x: Vec<Rational> = x.into_iter().map(int).collect();
            let b = m.apply(&x);
            let sol = m.solve(&b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.apply(&sol), b);
        }

        #[test]
        fn signature_congruence_invariant(s in small_matrix(4, 4), p in small_matrix(4, 4)) {
            let sym = s.add(&s.transpose());
            prop_assume!(p.is_invertible());
            let conj = p.transpose().mul(&sym).mul(&p);
            prop_assert_eq!(symmetric_signature(&sym).unwrap(), symmetric_signature(&conj).unwrap());
        }
    }
}
