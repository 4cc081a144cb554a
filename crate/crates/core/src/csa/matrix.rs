use alloc::vec::Vec;

use super::{AlgebraWithInvolution, ScAlgebra};
use crate::error::{Error, Result};
use crate::fields::{Field, FieldValue};
use crate::forms::SymBilForm;
use crate::linalg::{self, Matrix};

/// The involutions `t`, `T_alpha` and `gamma` on `M_2(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MatrixInvolutionKind {
    Transpose,
    TAlpha(FieldValue),
    Gamma,
}

impl MatrixInvolutionKind {
    /// `T_1` is written as `Transpose`; `alpha` is reduced to its square class.
    pub fn normalized(&self) -> Result<Self> {
        match self {
            MatrixInvolutionKind::TAlpha(a) => {
                let class = crate::fields::square_class(a)?;
                if class.is_trivial() {
                    Ok(MatrixInvolutionKind::Transpose)
                } else {
                    Ok(MatrixInvolutionKind::TAlpha(class.rep))
                }
            }
            k => Ok(k.clone()),
        }
    }
}

/// `M_n(F)` with basis `E_rc` at index `r n + c`.
pub fn matrix_algebra<F: Field>(f: F, n: usize) -> ScAlgebra<F> {
    let d = n * n;
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let (r, c) = (i / n, i % n);
            let (r2, c2) = (j / n, j % n);
            table.push(if c == r2 {
                linalg::unit_vec(f, d, r * n + c2)
            } else {
                linalg::zero_vec(f, d)
            });
        }
    }
    let unit = (0..d).map(|i| if i / n == i % n { f.one() } else { f.zero() }).collect();
    ScAlgebra::from_parts(f, d, table, unit)
}

/// The linear map `X -> B^-1 X^T B` on `M_n(F)` in the `E_rc` basis.
pub(crate) fn adjoint_map<F: Field>(b: &Matrix<F>) -> Result<Matrix<F>> {
    let f = b.field();
    let n = b.rows();
    let binv = b.inverse().ok_or(Error::DegenerateForm)?;
    let cols: Vec<_> = (0..n * n)
        .map(|i| {
            let e = Matrix::from_fn(f, n, n, |r, c| if r * n + c == i { f.one() } else { f.zero() });
            let img = binv.mul(&e.transpose()).mul(b);
            (0..n * n).map(|k| img.get(k / n, k % n).clone()).collect()
        })
        .collect();
    Ok(Matrix::from_cols(f, n * n, &cols))
}

/// `ad_b(f) = B^-1 f^T B`, the adjoint of `b(x, f(y)) = b(ad_b(f)(x), y)`.
pub fn adjoint_involution<F: Field>(b: &SymBilForm<F>) -> Result<AlgebraWithInvolution<F>> {
    let g = b.gram();
    let map = adjoint_map(g)?;
    Ok(AlgebraWithInvolution::from_parts(matrix_algebra(g.field(), g.rows()), map))
}

/// The Gram matrix `B` with `sigma = ad_B` on `M_2(F)`.
pub(crate) fn kind_gram<F: Field>(f: F, kind: &MatrixInvolutionKind) -> Result<Matrix<F>> {
    let (o, z) = (f.one(), f.zero());
    Ok(match kind {
        MatrixInvolutionKind::Transpose => Matrix::identity(f, 2),
        MatrixInvolutionKind::Gamma => Matrix::from_rows(f, alloc::vec![alloc::vec![z.clone(), o.clone()], alloc::vec![o, z]]),
        MatrixInvolutionKind::TAlpha(a) => {
            let a = f.from_value(a)?;
            let ainv = f.inv(&a).ok_or(Error::ZeroAlpha)?;
            Matrix::from_rows(f, alloc::vec![alloc::vec![o, z.clone()], alloc::vec![z, ainv]])
        }
    })
}

/// `t`, `T_alpha(a b; c d) = (a, c/alpha; b alpha, d)` or `gamma(a b; c d) = (d b; c a)`.
pub fn matrix_involution<F: Field>(f: F, kind: &MatrixInvolutionKind) -> Result<AlgebraWithInvolution<F>> {
    let map = adjoint_map(&kind_gram(f, kind)?)?;
    Ok(AlgebraWithInvolution::from_parts(matrix_algebra(f, 2), map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::InvolutionType;
    use crate::fields::{Gf2k, RatFunc};
    use crate::search::Budget;
    use alloc::vec;

    #[test]
    fn displayed_formulas() {
        let f = RatFunc::f2t();
        let t = f.t();
        let ta = matrix_involution(f, &MatrixInvolutionKind::TAlpha(f.to_value(&t))).unwrap();
        let (a, b, c, d) = (f.from_u64(1), f.from_u64(2), f.from_u64(3), f.from_u64(5));
        let x = vec![a.clone(), b.clone(), c.clone(), d.clone()];
        let tinv = f.inv(&t).unwrap();
        assert_eq!(ta.apply(&x), vec![a.clone(), f.mul(&c, &tinv), f.mul(&b, &t), d.clone()]);
        let g = matrix_involution(f, &MatrixInvolutionKind::Gamma).unwrap();
        assert_eq!(g.apply(&x), vec![d.clone(), b.clone(), c.clone(), a.clone()]);
        let tr = matrix_involution(f, &MatrixInvolutionKind::Transpose).unwrap();
        let t1 = matrix_involution(f, &MatrixInvolutionKind::TAlpha(f.to_value(&f.one()))).unwrap();
        assert_eq!(tr, t1);
        assert_eq!(tr.apply(&x), vec![a, c, b, d]);
        assert_eq!(
            matrix_involution(f, &MatrixInvolutionKind::TAlpha(f.to_value(&f.zero()))),
            Err(Error::ZeroAlpha)
        );
    }

    #[test]
    fn adjoint_of_diagonal_forms() {
        let f = RatFunc::f2t();
        let t = f.t();
        let alphas = [f.one(), t.clone(), f.add(&t, &f.one()), f.mul(&t, &f.add(&t, &f.one()))];
        for a in alphas {
            let ad = adjoint_involution(&SymBilForm::diagonal(f, &[f.one(), a.clone()])).unwrap();
            assert_eq!(ad.involution_type(), InvolutionType::Orthogonal);
            assert_eq!(ad.discriminant(Budget::default()).unwrap(), f.square_class(&a).unwrap());
        }
        let id = adjoint_involution(&SymBilForm::diagonal(Gf2k::gf2(), &[1, 1])).unwrap();
        assert_eq!(id, matrix_involution(Gf2k::gf2(), &MatrixInvolutionKind::Transpose).unwrap());
    }
}
