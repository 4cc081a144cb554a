//! Bit-packed matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words, so row operations are word-wide
//! XORs. This backs the GF(2) fast paths of [`crate::linalg`] and the
//! exhaustive enumerations in the oracle.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.stride, dst * self.stride);
        for i in 0..self.stride {
            let w = self.data[s + i];
            self.data[d + i] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.stride {
            self.data.swap(a * self.stride + i, b * self.stride + i);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(p, row);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                if m.get(i, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if the system is consistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (o, s) = (r * out.stride, k * other.stride);
                    for i in 0..other.stride {
                        out.data[o + i] ^= other.data[s + i];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }
}

/// A square matrix over GF(2) of size at most 8, packed row-major into a `u64`.
///
/// Used for exhaustive enumeration of small matrices, where allocation per
/// candidate would dominate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallBitMatrix {
    n: u8,
    bits: u64,
}

impl SmallBitMatrix {
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= 8);
        SmallBitMatrix { n: n as u8, bits }
    }

    pub fn identity(n: usize) -> Self {
        let mut bits = 0;
        for i in 0..n {
            bits |= 1 << (i * n + i);
        }
        Self::from_bits(n, bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let n = self.n as usize;
        (self.bits >> (r * n + c)) & 1 == 1
    }

    #[inline]
    pub fn row(&self, r: usize) -> u64 {
        let n = self.n as usize;
        (self.bits >> (r * n)) & ((1 << n) - 1)
    }

    /// Column `c` as a bit mask over rows.
    pub fn col(&self, c: usize) -> u64 {
        let n = self.n as usize;
        (0..n).fold(0, |acc, r| acc | ((self.get(r, c) as u64) << r))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n as usize;
        let mut bits = 0u64;
        for r in 0..n {
            let mut acc = 0u64;
            let row = self.row(r);
            for k in 0..n {
                if (row >> k) & 1 == 1 {
                    acc ^= other.row(k);
                }
            }
            bits |= acc << (r * n);
        }
        SmallBitMatrix { n: self.n, bits }
    }

    /// Matrix times column vector (vector given as a bit mask).
    pub fn apply(&self, v: u64) -> u64 {
        let n = self.n as usize;
        (0..n).fold(0, |acc, r| {
            acc | ((((self.row(r) & v).count_ones() & 1) as u64) << r)
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n as usize;
        let mut bits = 0u64;
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    bits |= 1 << (c * n + r);
                }
            }
        }
        SmallBitMatrix { n: self.n, bits }
    }

    pub fn rank(&self) -> usize {
        let n = self.n as usize;
        let mut rows: Vec<u64> = (0..n).map(|r| self.row(r)).collect();
        let mut rank = 0;
        for col in 0..n {
            if let Some(p) = (rank..n).find(|&r| (rows[r] >> col) & 1 == 1) {
                rows.swap(p, rank);
                for r in 0..n {
                    if r != rank && (rows[r] >> col) & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n as usize
    }
}
