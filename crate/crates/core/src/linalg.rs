//! Dense matrices and subspaces over a [`Field`].
//!
//! Gaussian elimination is generic; over GF(2) it is routed through
//! [`BitMatrix`] so that the 256-dimensional Clifford checks stay cheap.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitmat::BitMatrix;
use crate::fields::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(g(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Matrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// The matrix whose columns are `cols`, each of length `rows`.
    pub fn from_cols(field: F, rows: usize, cols: &[Vector<F>]) -> Self {
        Self::from_fn(field, rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn field(&self) -> F {
        self.field
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        let idx = r * out.cols + c;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `M v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| dot(f, self.row(r), v))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let f = self.field;
        Self::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            f.mul(
                self.get(r / other.rows, c / other.cols),
                other.get(r % other.rows, c % other.cols),
            )
        })
    }

    /// Columns `cols` of `self` restricted to rows `rows`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    fn is_gf2(&self) -> bool {
        self.field.gf2_bit(&self.field.one()).is_some()
    }

    fn to_bits(&self) -> BitMatrix {
        let f = self.field;
        BitMatrix::from_fn(self.rows, self.cols, |r, c| f.gf2_bit(self.get(r, c)) == Some(true))
    }

    fn from_bits(field: F, b: &BitMatrix) -> Self {
        Self::from_fn(field, b.rows(), b.cols(), |r, c| field.from_u64(b.get(r, c) as u64))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        if self.is_gf2() {
            let mut b = self.to_bits();
            let piv = b.rref();
            *self = Self::from_bits(self.field, &b);
            return piv;
        }
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..cols {
                    self.data.swap(p * cols + c, row * cols + c);
                }
            }
            let inv = f.inv(self.get(row, col)).unwrap();
            for c in col..cols {
                let v = f.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let v = self.get(row, c);
                    if !f.is_zero(v) {
                        let nv = f.add(self.get(r, c), &f.mul(&factor, v));
                        self.set(r, c, nv);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        if self.is_gf2() {
            return self.to_bits().rank();
        }
        self.rref().1.len()
    }

    /// A basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vector<F>> {
        let f = self.field;
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vector<F>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let bcol = Matrix::from_fn(f, self.rows, 1, |r, _| b[r].clone());
        let (m, pivots) = self.hstack(&bcol).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (m, pivots) = self.hstack(&Self::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(m.submatrix(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return f.zero();
            };
            if p != col {
                // Row swaps do not change the sign in characteristic 2.
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
            }
            let piv = m.get(col, col).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let nv = f.add(m.get(r, c), &f.mul(&factor, m.get(col, c)));
                    m.set(r, c, nv);
                }
            }
        }
        det
    }
}

pub fn zero_vec<F: Field>(f: F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit_vec<F: Field>(f: F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn dot<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn vadd<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vscale<F: Field>(f: F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// `a + c b`.
pub fn axpy<F: Field>(f: F, a: &[F::Elem], c: &F::Elem, b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, &f.mul(c, y))).collect()
}

pub fn is_zero_vec<F: Field>(f: F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

/// A basis (in reduced echelon form) of the span of `vecs`, all of length `n`.
pub fn span_basis<F: Field>(f: F, n: usize, vecs: &[Vector<F>]) -> Vec<Vector<F>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(f, vecs.to_vec());
    let (r, piv) = m.rref();
    debug_assert_eq!(r.cols(), n);
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` lies in its span.
pub fn coords_in<F: Field>(f: F, n: usize, basis: &[Vector<F>], v: &[F::Elem]) -> Option<Vector<F>> {
    if basis.is_empty() {
        return is_zero_vec(f, v).then(Vec::new);
    }
    Matrix::from_cols(f, n, basis).solve(v)
}

pub fn in_span<F: Field>(f: F, n: usize, basis: &[Vector<F>], v: &[F::Elem]) -> bool {
    coords_in(f, n, basis, v).is_some()
}

pub fn rank_of<F: Field>(f: F, vecs: &[Vector<F>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(f, vecs.to_vec()).rank()
}

/// A basis of `span(a) ∩ span(b)`.
pub fn intersect<F: Field>(f: F, n: usize, a: &[Vector<F>], b: &[Vector<F>]) -> Vec<Vector<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i = sum y_j b_j.
    let mut cols = a.to_vec();
    cols.extend(b.iter().cloned());
    let ker = Matrix::from_cols(f, n, &cols).kernel();
    let vecs: Vec<Vector<F>> = ker
        .iter()
        .map(|k| {
            let mut v = zero_vec(f, n);
            for (x, ai) in k.iter().zip(a) {
                v = axpy(f, &v, x, ai);
            }
            v
        })
        .collect();
    span_basis(f, n, &vecs)
}

/// Extends an independent family to a basis of `F^n` by standard vectors.
pub fn extend_to_basis<F: Field>(f: F, n: usize, vecs: &[Vector<F>]) -> Vec<Vector<F>> {
    let mut out = vecs.to_vec();
    for i in 0..n {
        if out.len() == n {
            break;
        }
        let e = unit_vec(f, n, i);
        let mut trial = out.clone();
        trial.push(e);
        if rank_of(f, &trial) == trial.len() {
            out = trial;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Gf2k, RatFunc};

    #[test]
    fn inverse_and_det_over_gf4() {
        let f = Gf2k::gf4();
        let m = Matrix::from_rows(f, vec![vec![1, 2, 0], vec![3, 1, 1], vec![0, 2, 3]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let d = m.det();
        assert_ne!(d, 0);
        assert_eq!(f.mul(&d, &inv.det()), 1);
    }

    #[test]
    fn gf2_fast_path_matches_generic() {
        let f = Gf2k::gf2();
        let m = Matrix::from_rows(f, vec![vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 0]]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel() {
            assert!(is_zero_vec(f, &m.apply(&v)));
        }
        let x = m.solve(&[1, 0, 1]).unwrap();
        assert_eq!(m.apply(&x), vec![1, 0, 1]);
        assert!(m.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn rational_solve() {
        let f = RatFunc::f2t();
        let t = f.t();
        let m = Matrix::from_rows(f, vec![vec![f.one(), t.clone()], vec![t.clone(), f.one()]]);
        let inv = m.inverse().unwrap();
        assert!(inv.mul(&m).is_identity());
        // det = 1 + t^2
        assert_eq!(m.det(), f.add(&f.one(), &f.mul(&t, &t)));
    }

    #[test]
    fn subspace_ops() {
        let f = Gf2k::gf2();
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = intersect(f, 3, &a, &b);
        assert_eq!(i, vec![vec![0, 1, 0]]);
        assert!(in_span(f, 3, &a, &[1, 1, 0]));
        assert!(!in_span(f, 3, &a, &[0, 0, 1]));
        assert_eq!(extend_to_basis(f, 3, &a).len(), 3);
        assert_eq!(span_basis(f, 3, &[vec![1, 1, 0], vec![1, 1, 0]]).len(), 1);
    }
}
