//! Structure-constant algebras, involutions of the first kind, quaternion
//! algebras, matrix involutions, splitting and isomorphism certificates.

mod involution;
mod iso;
mod matrix;
mod quaternion;
mod split;

pub use involution::{AlgebraWithInvolution, InvolutionType};
pub use iso::{
    explicit_split_qop, invariant_form, iso_with_involution_check, iso_with_involution_check_on, kron_representation,
    sandwich_representation, Representation,
};
pub use matrix::{adjoint_involution, matrix_algebra, matrix_involution, MatrixInvolutionKind};
pub use quaternion::{canonical_involution_of, quaternion_from_plane, PlaneQuaternion, Quaternion};
pub use split::{idempotent_from_rank_one, is_rank_one_idempotent, is_split, left_ideal_basis, rank_one_element, Splitting};

use alloc::format;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix, Vector};

/// Exhaustive associativity checks up to this dimension, sampled above.
const EXHAUSTIVE_CHECK_DIM: usize = 16;
const SAMPLED_TRIPLES: usize = 256;

/// A finite-dimensional associative unital algebra given by structure
/// constants: `e_i e_j = sum_k table[i d + j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAlgebra<F: Field> {
    field: F,
    dim: usize,
    table: Vec<Vector<F>>,
    unit: Vector<F>,
}

impl<F: Field> ScAlgebra<F> {
    pub fn new(field: F, dim: usize, table: Vec<Vector<F>>, unit: Vector<F>) -> Result<Self> {
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        let a = ScAlgebra { field, dim, table, unit };
        a.check_laws()?;
        Ok(a)
    }

    pub fn from_fn(field: F, dim: usize, unit: Vector<F>, mut prod: impl FnMut(usize, usize) -> Vector<F>) -> Result<Self> {
        let table = (0..dim * dim).map(|ij| prod(ij / dim, ij % dim)).collect();
        Self::new(field, dim, table, unit)
    }

    /// For tables that are correct by construction.
    pub(crate) fn from_parts(field: F, dim: usize, table: Vec<Vector<F>>, unit: Vector<F>) -> Self {
        debug_assert_eq!(table.len(), dim * dim);
        ScAlgebra { field, dim, table, unit }
    }

    fn check_laws(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails on basis element {i}")));
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let l = self.mul(&self.table[i * d + j], &self.basis(k));
            let r = self.mul(&self.basis(i), &self.table[j * d + k]);
            if l != r {
                return Err(Error::InvalidAlgebra(format!("associativity fails on ({i}, {j}, {k})")));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_CHECK_DIM {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let mut pick = || (rng.next_u32() as usize) % d;
                let (i, j, k) = (pick(), pick(), pick());
                check(i, j, k)?;
            }
        }
        Ok(())
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `sqrt(dim)` when the dimension is a perfect square.
    pub fn degree(&self) -> Option<usize> {
        let n = (0..=self.dim).find(|n| n * n >= self.dim)?;
        (n * n == self.dim).then_some(n)
    }

    pub fn one(&self) -> Vector<F> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vector<F> {
        linalg::zero_vec(self.field, self.dim)
    }

    pub fn basis(&self, i: usize) -> Vector<F> {
        linalg::unit_vec(self.field, self.dim, i)
    }

    pub fn scalar(&self, c: &F::Elem) -> Vector<F> {
        linalg::vscale(self.field, c, &self.unit)
    }

    /// `c` when `x = c 1`.
    pub fn as_scalar(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = self.field;
        let i = self.unit.iter().position(|c| !f.is_zero(c))?;
        let c = f.div(&x[i], &self.unit[i])?;
        (self.scalar(&c) == x).then_some(c)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = self.field;
        let d = self.dim;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, t) in out.iter_mut().zip(&self.table[i * d + j]) {
                    if !f.is_zero(t) {
                        *o = f.add(o, &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        linalg::vadd(self.field, x, y)
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    pub fn is_unit(&self, x: &[F::Elem]) -> bool {
        self.left_matrix(x).is_invertible()
    }

    pub fn inverse(&self, x: &[F::Elem]) -> Option<Vector<F>> {
        self.left_matrix(x).solve(&self.unit)
    }

    /// `{x : x s = s x for all s}`.
    pub fn centralizer(&self, elems: &[Vector<F>]) -> Vec<Vector<F>> {
        let f = self.field;
        let d = self.dim;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for s in elems {
            let m = self.right_matrix(s).add(&self.left_matrix(s));
            for r in 0..d {
                rows.push(m.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return (0..d).map(|i| self.basis(i)).collect();
        }
        Matrix::from_rows(f, rows).kernel()
    }

    pub fn center(&self) -> Vec<Vector<F>> {
        let gens: Vec<Vector<F>> = (0..self.dim).map(|i| self.basis(i)).collect();
        self.centralizer(&gens)
    }

    pub fn is_central(&self) -> bool {
        self.center().len() == 1
    }

    /// Structure constants of the subalgebra spanned by `basis`, which must
    /// contain the unit and be closed under multiplication.
    pub fn subalgebra(&self, basis: &[Vector<F>]) -> Result<ScAlgebra<F>> {
        let f = self.field;
        let d = self.dim;
        let k = basis.len();
        let coords = |v: &[F::Elem]| {
            linalg::coords_in(f, d, basis, v).ok_or_else(|| Error::InvalidAlgebra("subspace is not a subalgebra".into()))
        };
        let unit = coords(&self.unit)?;
        let mut table = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                table.push(coords(&self.mul(x, y))?);
            }
        }
        Ok(ScAlgebra::from_parts(f, k, table, unit))
    }

    /// The span of all products of elements of `gens`, with the unit.
    pub fn generated_subalgebra(&self, gens: &[Vector<F>]) -> Vec<Vector<F>> {
        let f = self.field;
        let d = self.dim;
        let mut span = linalg::span_basis(f, d, core::slice::from_ref(&self.unit));
        loop {
            let mut next = span.clone();
            for x in &span {
                for g in gens {
                    next.push(self.mul(x, g));
                }
            }
            let next = linalg::span_basis(f, d, &next);
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    /// Basis index `i * other.dim + j` stands for `e_i (x) e_j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let f = self.field;
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let x = &self.table[(i / db) * da + j / db];
                let y = &other.table[(i % db) * db + j % db];
                table.push(tensor_vec(f, x, y));
            }
        }
        Ok(ScAlgebra::from_parts(f, d, table, tensor_vec(f, &self.unit, &other.unit)))
    }

    /// The reduced norm, from `det(L_x) = Nrd(x)^deg` with `deg` a power of two.
    pub fn reduced_norm(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = self.field;
        let deg = self.degree()?;
        if !deg.is_power_of_two() {
            return None;
        }
        let mut v = self.left_matrix(x).det();
        let mut k = deg;
        while k > 1 {
            v = f.sqrt(&v)?;
            k /= 2;
        }
        Some(v)
    }

    /// `dim A x A`; a nonzero `x` with a proper two-sided ideal shows `A` is not simple.
    pub fn two_sided_ideal_dim(&self, x: &[F::Elem]) -> usize {
        let d = self.dim;
        let left: Vec<Vector<F>> = (0..d).map(|i| self.mul(&self.basis(i), x)).collect();
        let left = linalg::span_basis(self.field, d, &left);
        let mut all = Vec::new();
        for l in &left {
            for j in 0..d {
                all.push(self.mul(l, &self.basis(j)));
            }
        }
        linalg::rank_of(self.field, &all)
    }

    /// Rejects the algebra on a computed nontrivial center or a proper
    /// two-sided ideal generated by a basis element.
    pub fn probe_simple(&self) -> Result<()> {
        if !self.is_central() {
            return Err(Error::NotSimple("center is larger than the base field".into()));
        }
        for i in 0..self.dim {
            let k = self.two_sided_ideal_dim(&self.basis(i));
            if k < self.dim {
                return Err(Error::NotSimple(format!("basis element {i} generates an ideal of dimension {k}")));
            }
        }
        Ok(())
    }
}

/// Coordinates of `x (x) y` in the tensor basis.
pub fn tensor_vec<F: Field>(f: F, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(f.mul(a, b));
        }
    }
    out
}
