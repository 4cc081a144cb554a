use alloc::vec::Vec;

use super::ScAlgebra;
use crate::error::Result;
use crate::fields::Field;
use crate::linalg::{self, Vector};
use crate::search::{search_vectors, Budget};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting<F: Field> {
    /// A rank-one idempotent: `A e` is a minimal left ideal of dimension `deg A`.
    Split(Vector<F>),
    Unknown,
}

/// `dim A x`.
pub fn left_ideal_dim<F: Field>(a: &ScAlgebra<F>, x: &[F::Elem]) -> usize {
    a.right_matrix(x).rank()
}

/// A nonzero element with `dim A x = deg A`, searched within `budget`.
pub fn rank_one_element<F: Field>(a: &ScAlgebra<F>, budget: Budget) -> Option<Vector<F>> {
    let f = a.field();
    let deg = a.degree()?;
    search_vectors(f, a.dim(), budget, |x| {
        if linalg::is_zero_vec(f, x) {
            return None;
        }
        (left_ideal_dim(a, x) == deg).then(|| x.to_vec())
    })
}

/// An idempotent `e` with `A e = A w` from a rank-one `w`: `w A w = F w`, so
/// either `w^2 = c w` or `w x w = c w` for some basis element `x`.
pub fn idempotent_from_rank_one<F: Field>(a: &ScAlgebra<F>, w: &[F::Elem]) -> Option<Vector<F>> {
    let f = a.field();
    let ratio = |p: &[F::Elem]| -> Option<F::Elem> {
        let i = w.iter().position(|c| !f.is_zero(c))?;
        let c = f.div(&p[i], &w[i])?;
        (!f.is_zero(&c) && linalg::vscale(f, &c, w) == p).then_some(c)
    };
    if let Some(c) = ratio(&a.mul(w, w)) {
        return Some(linalg::vscale(f, &f.inv(&c).unwrap(), w));
    }
    for i in 0..a.dim() {
        let wx = a.mul(w, &a.basis(i));
        if let Some(c) = ratio(&a.mul(&wx, w)) {
            let e = linalg::vscale(f, &f.inv(&c).unwrap(), &wx);
            debug_assert_eq!(a.mul(&e, &e), e);
            return Some(e);
        }
    }
    None
}

/// Semi-decision for splitting. The algebra is first probed for a larger
/// center or a proper two-sided ideal.
pub fn is_split<F: Field>(a: &ScAlgebra<F>, budget: Budget) -> Result<Splitting<F>> {
    a.probe_simple()?;
    if a.dim() == 1 {
        return Ok(Splitting::Split(a.one()));
    }
    Ok(match rank_one_element(a, budget).and_then(|w| idempotent_from_rank_one(a, &w)) {
        Some(e) => Splitting::Split(e),
        None => Splitting::Unknown,
    })
}

/// `e^2 = e` and `dim A e = deg A`.
pub fn is_rank_one_idempotent<F: Field>(a: &ScAlgebra<F>, e: &[F::Elem]) -> bool {
    let f = a.field();
    !linalg::is_zero_vec(f, e) && a.mul(e, e) == e && Some(left_ideal_dim(a, e)) == a.degree()
}

/// A basis of the left ideal `A e`.
pub fn left_ideal_basis<F: Field>(a: &ScAlgebra<F>, e: &[F::Elem]) -> Vec<Vector<F>> {
    let gens: Vec<Vector<F>> = (0..a.dim()).map(|i| a.mul(&a.basis(i), e)).collect();
    linalg::span_basis(a.field(), a.dim(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::{matrix_algebra, Quaternion};
    use crate::error::Error;
    use crate::fields::{Gf2k, RatFunc};

    #[test]
    fn matrix_algebra_splits() {
        let f = Gf2k::gf2();
        let m = matrix_algebra(f, 2);
        match is_split(&m, Budget::default()).unwrap() {
            Splitting::Split(e) => assert!(is_rank_one_idempotent(&m, &e)),
            Splitting::Unknown => panic!("M_2 must split"),
        }
    }

    #[test]
    fn split_quaternion_over_f2t() {
        let f = RatFunc::f2t();
        let q = Quaternion::new(f, f.t(), f.one()).unwrap();
        match is_split(q.algebra(), Budget::with_degree(1)).unwrap() {
            Splitting::Split(e) => assert!(is_rank_one_idempotent(q.algebra(), &e)),
            Splitting::Unknown => panic!("[t, 1) splits"),
        }
        // [1, t) ramifies at t = 0, so it is a division algebra.
        let d = Quaternion::new(f, f.one(), f.t()).unwrap();
        assert_eq!(is_split(d.algebra(), Budget::with_degree(1)).unwrap(), Splitting::Unknown);
    }

    #[test]
    fn rejects_non_simple() {
        let f = Gf2k::gf2();
        let m = matrix_algebra(f, 2);
        let sum = ScAlgebra::from_fn(f, 2, alloc::vec![1, 1], |i, j| if i == j { linalg::unit_vec(f, 2, i) } else { alloc::vec![0, 0] }).unwrap();
        assert!(matches!(is_split(&sum, Budget::default()), Err(Error::NotSimple(_))));
        assert!(is_split(&m, Budget::default()).is_ok());
    }
}
