use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::ScAlgebra;
use crate::error::{Error, Result};
use crate::fields::{Field, SquareClass};
use crate::linalg::{self, Matrix, Vector};
use crate::search::{search_vectors, Budget};

const EXHAUSTIVE_CHECK_DIM: usize = 16;
const SAMPLED_PAIRS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
}

/// `(A, sigma)` with `sigma` a linear anti-automorphism of order two that
/// fixes the center pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWithInvolution<F: Field> {
    algebra: ScAlgebra<F>,
    inv: Matrix<F>,
}

impl<F: Field> AlgebraWithInvolution<F> {
    pub fn new(algebra: ScAlgebra<F>, inv: Matrix<F>) -> Result<Self> {
        let d = algebra.dim();
        if inv.rows() != d || inv.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: inv.rows() });
        }
        let aw = AlgebraWithInvolution { algebra, inv };
        aw.check()?;
        Ok(aw)
    }

    pub(crate) fn from_parts(algebra: ScAlgebra<F>, inv: Matrix<F>) -> Self {
        AlgebraWithInvolution { algebra, inv }
    }

    fn check(&self) -> Result<()> {
        let a = &self.algebra;
        let d = a.dim();
        if !self.inv.mul(&self.inv).is_identity() {
            return Err(Error::NotInvolution);
        }
        if self.apply(&a.one()) != a.one() {
            return Err(Error::InvalidAlgebra("involution does not fix the unit".into()));
        }
        let anti = |i: usize, j: usize| {
            let lhs = self.apply(a.basis_product(i, j));
            let rhs = a.mul(&self.inv.col(j), &self.inv.col(i));
            lhs == rhs
        };
        let ok = if d <= EXHAUSTIVE_CHECK_DIM {
            (0..d).all(|i| (0..d).all(|j| anti(i, j)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            (0..SAMPLED_PAIRS).all(|_| anti(rng.next_u32() as usize % d, rng.next_u32() as usize % d))
        };
        if !ok {
            return Err(Error::InvalidAlgebra("map is not an anti-automorphism".into()));
        }
        if a.center().iter().any(|z| self.apply(z) != *z) {
            return Err(Error::InvalidAlgebra("involution is not of the first kind".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &ScAlgebra<F> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.inv
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn apply(&self, x: &[F::Elem]) -> Vector<F> {
        self.inv.apply(x)
    }

    fn plus_id(&self) -> Matrix<F> {
        self.inv.add(&Matrix::identity(self.field(), self.dim()))
    }

    /// `alt(A, sigma) = {a + sigma(a)}`.
    pub fn alt_basis(&self) -> Vec<Vector<F>> {
        linalg::span_basis(self.field(), self.dim(), &self.plus_id().columns())
    }

    /// `Sym(A, sigma) = {a : sigma(a) = a}`.
    pub fn sym_basis(&self) -> Vec<Vector<F>> {
        self.plus_id().kernel()
    }

    pub fn is_alternating(&self, x: &[F::Elem]) -> bool {
        self.plus_id().solve(x).is_some()
    }

    /// Symplectic iff `1` is alternating.
    pub fn involution_type(&self) -> InvolutionType {
        if self.is_alternating(&self.algebra.one()) {
            InvolutionType::Symplectic
        } else {
            InvolutionType::Orthogonal
        }
    }

    /// An invertible alternating element, searched over combinations of an
    /// `alt` basis.
    pub fn invertible_alternating(&self, budget: Budget) -> Option<Vector<F>> {
        let f = self.field();
        let alt = self.alt_basis();
        let n = self.dim();
        search_vectors(f, alt.len(), budget, |c| {
            let x = c
                .iter()
                .zip(&alt)
                .fold(linalg::zero_vec(f, n), |acc, (ci, v)| linalg::axpy(f, &acc, ci, v));
            let nrd = self.algebra.reduced_norm(&x)?;
            (!f.is_zero(&nrd)).then_some(x)
        })
    }

    /// `Nrd(a) F^x2` for an invertible alternating `a`; the sign is 1 in
    /// characteristic 2.
    pub fn discriminant(&self, budget: Budget) -> Result<SquareClass> {
        if self.involution_type() == InvolutionType::Symplectic {
            return Err(Error::SymplecticInvolution);
        }
        let a = self.invertible_alternating(budget).ok_or(Error::NoInvertibleAlternating)?;
        self.discriminant_of(&a)
    }

    /// The discriminant read off a given invertible alternating element.
    pub fn discriminant_of(&self, a: &[F::Elem]) -> Result<SquareClass> {
        if !self.is_alternating(a) {
            return Err(Error::InvariantViolation("element is not alternating".into()));
        }
        let nrd = self.algebra.reduced_norm(a).ok_or(Error::NoInvertibleAlternating)?;
        self.field().square_class(&nrd).map_err(|_| Error::NoInvertibleAlternating)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(AlgebraWithInvolution {
            algebra: self.algebra.tensor(&other.algebra)?,
            inv: self.inv.kron(&other.inv),
        })
    }

    /// `sigma` restricted to a `sigma`-stable subalgebra.
    pub fn restrict(&self, basis: &[Vector<F>]) -> Result<Self> {
        let f = self.field();
        let d = self.dim();
        let sub = self.algebra.subalgebra(basis)?;
        let cols: Option<Vec<Vector<F>>> = basis.iter().map(|b| linalg::coords_in(f, d, basis, &self.apply(b))).collect();
        let cols = cols.ok_or_else(|| Error::InvalidAlgebra("subalgebra is not stable under the involution".into()))?;
        Ok(AlgebraWithInvolution {
            algebra: sub,
            inv: Matrix::from_cols(f, basis.len(), &cols),
        })
    }

    /// `a != 0` with `sigma(a) a = 0`, searched within `budget`.
    pub fn isotropy_witness(&self, budget: Budget) -> Option<Vector<F>> {
        let f = self.field();
        let a = &self.algebra;
        search_vectors(f, self.dim(), budget, |x| {
            if linalg::is_zero_vec(f, x) {
                return None;
            }
            linalg::is_zero_vec(f, &a.mul(&self.apply(x), x)).then(|| x.to_vec())
        })
    }

    /// `e^2 = e`, `sigma(e) e = 0` and `dim e A = dim A / 2`.
    pub fn metabolic_check(&self, e: &[F::Elem]) -> bool {
        let f = self.field();
        let a = &self.algebra;
        let d = self.dim();
        if a.mul(e, e) != e || !linalg::is_zero_vec(f, &a.mul(&self.apply(e), e)) {
            return false;
        }
        let right: Vec<Vector<F>> = (0..d).map(|i| a.mul(e, &a.basis(i))).collect();
        2 * linalg::rank_of(f, &right) == d
    }

    /// A metabolic idempotent, searched within `budget`.
    pub fn metabolic_idempotent(&self, budget: Budget) -> Option<Vector<F>> {
        let a = &self.algebra;
        search_vectors(self.field(), self.dim(), budget, |x| {
            (a.mul(x, x) == x && self.metabolic_check(x)).then(|| x.to_vec())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::{matrix_involution, MatrixInvolutionKind};
    use crate::fields::{Gf2k, RatFunc};
    use alloc::vec;

    #[test]
    fn matrix_examples() {
        let f = Gf2k::gf2();
        let t = matrix_involution(f, &MatrixInvolutionKind::Transpose).unwrap();
        assert_eq!(t.alt_basis(), vec![vec![0, 1, 1, 0]]);
        assert_eq!(t.involution_type(), InvolutionType::Orthogonal);
        let g = matrix_involution(f, &MatrixInvolutionKind::Gamma).unwrap();
        assert_eq!(g.alt_basis(), vec![vec![1, 0, 0, 1]]);
        assert_eq!(g.involution_type(), InvolutionType::Symplectic);
        assert_eq!(g.discriminant(Budget::default()), Err(Error::SymplecticInvolution));
        let f4 = Gf2k::gf4();
        assert_eq!(matrix_involution(f4, &MatrixInvolutionKind::Transpose).unwrap().involution_type(), InvolutionType::Orthogonal);
    }

    #[test]
    fn isotropy_and_metabolic() {
        let f = Gf2k::gf2();
        let t = matrix_involution(f, &MatrixInvolutionKind::Transpose).unwrap();
        let a = vec![1, 1, 1, 1];
        assert!(linalg::is_zero_vec(f, &t.algebra().mul(&t.apply(&a), &a)));
        assert!(t.isotropy_witness(Budget::default()).is_some());
        assert!(t.isotropy_witness(Budget::zero()).is_none());
        assert!(t.metabolic_check(&[1, 0, 1, 0]));
        assert!(!t.metabolic_check(&[0, 0, 0, 0]));
        assert!(!t.metabolic_check(&[1, 0, 0, 1]));
    }

    #[test]
    fn t_alpha_over_f2t() {
        let f = RatFunc::f2t();
        let tt = f.t();
        let m = matrix_involution(f, &MatrixInvolutionKind::TAlpha(f.to_value(&tt))).unwrap();
        assert_eq!(m.involution_type(), InvolutionType::Orthogonal);
        assert_eq!(m.discriminant(Budget::default()).unwrap().rep, f.to_value(&tt));
        // <1, t> is anisotropic, so no witness exists at any degree.
        assert!(m.isotropy_witness(Budget::with_degree(2)).is_none());
    }
}
