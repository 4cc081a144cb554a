use alloc::vec::Vec;

use super::split::left_ideal_basis;
use super::quaternion::canonical_involution_of;
use super::{AlgebraWithInvolution, Quaternion, ScAlgebra};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix, Vector};

/// An algebra map `rho: A -> M_n(F)`, stored as the matrix sending the
/// coordinates of `a` to the entries of `rho(a)` at index `r n + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F: Field> {
    n: usize,
    map: Matrix<F>,
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vector<F> {
    (0..m.rows() * m.cols()).map(|k| m.get(k / m.cols(), k % m.cols()).clone()).collect()
}

fn unflatten<F: Field>(f: F, n: usize, v: &[F::Elem]) -> Matrix<F> {
    Matrix::from_fn(f, n, n, |r, c| v[r * n + c].clone())
}

impl<F: Field> Representation<F> {
    /// From the images of the basis elements.
    pub fn from_images(f: F, n: usize, images: &[Matrix<F>]) -> Self {
        let cols: Vec<Vector<F>> = images.iter().map(flatten).collect();
        Representation {
            n,
            map: Matrix::from_cols(f, n * n, &cols),
        }
    }

    /// Left multiplication on the minimal left ideal `A e`.
    pub fn from_idempotent(a: &ScAlgebra<F>, e: &[F::Elem]) -> Result<Self> {
        let f = a.field();
        let basis = left_ideal_basis(a, e);
        let n = basis.len();
        if Some(n) != a.degree() {
            return Err(Error::InvariantViolation("idempotent does not have rank one".into()));
        }
        let images: Result<Vec<Matrix<F>>> = (0..a.dim())
            .map(|i| {
                let cols: Option<Vec<Vector<F>>> = basis
                    .iter()
                    .map(|l| linalg::coords_in(f, a.dim(), &basis, &a.mul(&a.basis(i), l)))
                    .collect();
                let cols = cols.ok_or_else(|| Error::InvariantViolation("A e is not a left ideal".into()))?;
                Ok(Matrix::from_cols(f, n, &cols))
            })
            .collect();
        let rep = Self::from_images(f, n, &images?);
        rep.check(a)?;
        Ok(rep)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: &[F::Elem]) -> Matrix<F> {
        unflatten(self.map.field(), self.n, &self.map.apply(x))
    }

    pub fn preimage(&self, m: &Matrix<F>) -> Option<Vector<F>> {
        self.map.solve(&flatten(m))
    }

    /// Unital, multiplicative on all basis pairs, and bijective.
    pub fn check(&self, a: &ScAlgebra<F>) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolation(m.into()));
        if self.n * self.n != a.dim() || !self.map.is_invertible() {
            return fail("representation is not bijective");
        }
        if !self.apply(&a.one()).is_identity() {
            return fail("representation is not unital");
        }
        let imgs: Vec<Matrix<F>> = (0..a.dim()).map(|i| self.apply(&a.basis(i))).collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.apply(a.basis_product(i, j)) != imgs[i].mul(&imgs[j]) {
                    return fail("representation is not multiplicative");
                }
            }
        }
        Ok(())
    }
}

/// The sandwich map `Q (x) Q -> End_F(Q)`, `x (x) y -> (z -> x z gamma(y))`,
/// together with the tensor square it is defined on.
pub fn explicit_split_qop<F: Field>(q: &Quaternion<F>) -> Result<(ScAlgebra<F>, Representation<F>)> {
    sandwich_representation(q.algebra())
}

/// The sandwich map for a quaternion algebra given by structure constants.
pub fn sandwich_representation<F: Field>(alg: &ScAlgebra<F>) -> Result<(ScAlgebra<F>, Representation<F>)> {
    let f = alg.field();
    let gamma = canonical_involution_of(alg)?;
    let qq = alg.tensor(alg)?;
    let images: Vec<Matrix<F>> = (0..16)
        .map(|idx| {
            let (x, y) = (alg.basis(idx / 4), gamma.apply(&alg.basis(idx % 4)));
            let cols: Vec<Vector<F>> = (0..4).map(|z| alg.mul(&alg.mul(&x, &alg.basis(z)), &y)).collect();
            Matrix::from_cols(f, 4, &cols)
        })
        .collect();
    let rep = Representation::from_images(f, 4, &images);
    rep.check(&qq)?;
    Ok((qq, rep))
}

/// `rho_1 (x) ... (x) rho_k` on `A_1 (x) ... (x) A_k`.
pub fn kron_representation<F: Field>(f: F, parts: &[(usize, Representation<F>)]) -> Representation<F> {
    let mut images: Vec<Matrix<F>> = alloc::vec![Matrix::identity(f, 1)];
    let mut n = 1;
    for (dim, rep) in parts {
        let next: Vec<Matrix<F>> = images
            .iter()
            .flat_map(|m| (0..*dim).map(move |i| (m, i)))
            .map(|(m, i)| m.kron(&rep.apply(&linalg::unit_vec(f, *dim, i))))
            .collect();
        images = next;
        n *= rep.size();
    }
    Representation::from_images(f, n, &images)
}

/// `H` with `rho(a)^T H = H rho(sigma(a))` for all `a`, so that `sigma`
/// corresponds to `X -> H^-1 X^T H`. Unique up to a scalar.
pub fn invariant_form<F: Field>(aw: &AlgebraWithInvolution<F>, rep: &Representation<F>) -> Result<Matrix<F>> {
    let f = aw.field();
    let n = rep.size();
    let a = aw.algebra();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..a.dim() {
        let x = a.basis(i);
        let p = rep.apply(&x).transpose();
        let s = rep.apply(&aw.apply(&x));
        // (P H - H S)[r][c] = sum_k P[r][k] H[k][c] - H[r][k] S[k][c]
        for r in 0..n {
            for c in 0..n {
                let mut row = alloc::vec![f.zero(); n * n];
                for k in 0..n {
                    row[k * n + c] = f.add(&row[k * n + c], p.get(r, k));
                    row[r * n + k] = f.add(&row[r * n + k], s.get(k, c));
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(f, rows).kernel();
    if ker.len() != 1 {
        return Err(Error::InvariantViolation("invariant form is not unique up to scalars".into()));
    }
    let h = unflatten(f, n, &ker[0]);
    if !h.is_invertible() || !h.is_symmetric() {
        return Err(Error::InvariantViolation("invariant form is degenerate or not symmetric".into()));
    }
    Ok(h)
}

/// `f: A -> B` is bijective, unital, multiplicative on products of basis
/// elements with `gens`, and intertwines the involutions. When `gens`
/// generate `A` this certifies an isomorphism of algebras with involution.
pub fn iso_with_involution_check_on<F: Field>(
    src: &AlgebraWithInvolution<F>,
    dst: &AlgebraWithInvolution<F>,
    map: &Matrix<F>,
    gens: &[Vector<F>],
) -> bool {
    let (a, b) = (src.algebra(), dst.algebra());
    if a.dim() != b.dim() || map.rows() != b.dim() || map.cols() != a.dim() || !map.is_invertible() {
        return false;
    }
    if map.apply(&a.one()) != b.one() {
        return false;
    }
    let imgs: Vec<Vector<F>> = (0..a.dim()).map(|i| map.col(i)).collect();
    for g in gens {
        let fg = map.apply(g);
        for (i, fi) in imgs.iter().enumerate() {
            if map.apply(&a.mul(g, &a.basis(i))) != b.mul(&fg, fi) {
                return false;
            }
        }
    }
    map.mul(src.matrix()) == dst.matrix().mul(map)
}

/// The check on all basis elements as generators.
pub fn iso_with_involution_check<F: Field>(src: &AlgebraWithInvolution<F>, dst: &AlgebraWithInvolution<F>, map: &Matrix<F>) -> bool {
    let gens: Vec<Vector<F>> = (0..src.dim()).map(|i| src.algebra().basis(i)).collect();
    iso_with_involution_check_on(src, dst, map, &gens)
}
