//! Symmetric bilinear forms and quadratic spaces in characteristic 2.
//!
//! A quadratic space is stored as its polar Gram matrix (symmetric, zero
//! diagonal) together with the values of `q` on the basis. The polar form
//! alone does not determine `q` in characteristic 2, so every basis change
//! transports the q-values explicitly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, axpy, dot, Matrix, Vector};
use crate::search::{search_vectors, Budget};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBilForm<F: Field> {
    gram: Matrix<F>,
}

impl<F: Field> SymBilForm<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::InvariantViolation("Gram matrix is not symmetric".into()));
        }
        Ok(SymBilForm { gram })
    }

    /// The diagonal form `<c_1, ..., c_n>`.
    pub fn diagonal(f: F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        SymBilForm {
            gram: Matrix::from_fn(f, n, n, |r, c| if r == c { entries[r].clone() } else { f.zero() }),
        }
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> F {
        self.gram.field()
    }

    pub fn eval(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        dot(self.field(), x, &self.gram.apply(y))
    }

    /// In characteristic 2, `b(v,v) = sum v_i^2 b(e_i,e_i)`, so the diagonal decides.
    pub fn is_alternating(&self) -> bool {
        let f = self.field();
        (0..self.dim()).all(|i| f.is_zero(self.gram.get(i, i)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    /// A basis change `P` (columns are the new basis) with `P^T G P` diagonal.
    pub fn diagonalize(&self) -> Result<(Matrix<F>, Vector<F>)> {
        if self.is_alternating() {
            return Err(Error::AlternatingForm);
        }
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        let f = self.field();
        let n = self.dim();
        let mut diag: Vec<Vector<F>> = Vec::new();
        let mut rest: Vec<Vector<F>> = (0..n).map(|i| linalg::unit_vec(f, n, i)).collect();
        while !rest.is_empty() {
            if let Some(pos) = rest.iter().position(|v| !f.is_zero(&self.eval(v, v))) {
                let v = rest[pos].clone();
                rest = self.complement_within(&rest, core::slice::from_ref(&v));
                diag.push(v);
                continue;
            }
            // The remainder is alternating: trade a symplectic pair (x, y) and
            // the last diagonal vector v for three anisotropic orthogonal ones.
            let v = diag.pop().expect("nonalternating form has a diagonal vector");
            let a = self.eval(&v, &v);
            let x = rest[0].clone();
            let y = rest
                .iter()
                .find(|y| !f.is_zero(&self.eval(&x, y)))
                .cloned()
                .ok_or(Error::DegenerateForm)?;
            let s = f.inv(&self.eval(&x, &y)).unwrap();
            let y = linalg::vscale(f, &s, &y);
            let vx = linalg::vadd(f, &v, &x);
            let vay = axpy(f, &v, &a, &y);
            let vxay = axpy(f, &vx, &a, &y);
            rest = self.complement_within(&rest, &[x, y]);
            diag.push(vx);
            diag.push(vay);
            diag.push(vxay);
        }
        let p = Matrix::from_cols(f, n, &diag);
        let values = diag.iter().map(|v| self.eval(v, v)).collect();
        Ok((p, values))
    }

    /// Vectors of `span(within)` orthogonal to all of `against`.
    fn complement_within(&self, within: &[Vector<F>], against: &[Vector<F>]) -> Vec<Vector<F>> {
        let f = self.field();
        let n = self.dim();
        if within.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_fn(f, against.len(), within.len(), |r, c| self.eval(&against[r], &within[c]));
        m.kernel()
            .iter()
            .map(|k| {
                k.iter()
                    .zip(within)
                    .fold(linalg::zero_vec(f, n), |acc, (c, w)| axpy(f, &acc, c, w))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    pub basis: Vec<Vector<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(f: F, n: usize, vecs: &[Vector<F>]) -> Self {
        Subspace {
            basis: linalg::span_basis(f, n, vecs),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A finite-dimensional quadratic space with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace<F: Field> {
    polar: Matrix<F>,
    qvals: Vector<F>,
}

impl<F: Field> QuadSpace<F> {
    pub fn new(polar: Matrix<F>, qvals: Vector<F>) -> Result<Self> {
        let n = polar.rows();
        if polar.cols() != n || qvals.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: qvals.len(),
            });
        }
        let b = SymBilForm::new(polar)?;
        if !b.is_alternating() {
            return Err(Error::InvariantViolation("polar form must have zero diagonal".into()));
        }
        Ok(QuadSpace { polar: b.gram, qvals })
    }

    /// `P(c, d)`: a symplectic pair with `q(u) = c`, `q(v) = d`.
    pub fn plane(f: F, c: F::Elem, d: F::Elem) -> Self {
        let polar = Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        QuadSpace {
            polar,
            qvals: vec![c, d],
        }
    }

    /// The hyperbolic plane `H = P(0, 0)`.
    pub fn hyperbolic(f: F) -> Self {
        Self::plane(f, f.zero(), f.zero())
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let f = self.field();
        let (n, m) = (self.dim(), other.dim());
        let polar = Matrix::from_fn(f, n + m, n + m, |r, c| match (r < n, c < n) {
            (true, true) => self.polar.get(r, c).clone(),
            (false, false) => other.polar.get(r - n, c - n).clone(),
            _ => f.zero(),
        });
        let mut qvals = self.qvals.clone();
        qvals.extend(other.qvals.iter().cloned());
        QuadSpace { polar, qvals }
    }

    pub fn field(&self) -> F {
        self.polar.field()
    }

    pub fn dim(&self) -> usize {
        self.qvals.len()
    }

    pub fn polar(&self) -> &Matrix<F> {
        &self.polar
    }

    pub fn polar_form(&self) -> SymBilForm<F> {
        SymBilForm {
            gram: self.polar.clone(),
        }
    }

    pub fn qvals(&self) -> &[F::Elem] {
        &self.qvals
    }

    pub fn is_regular(&self) -> bool {
        self.polar.is_invertible()
    }

    pub fn b(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        dot(self.field(), x, &self.polar.apply(y))
    }

    /// `q(x) = sum x_i^2 q_i + sum_{i<j} x_i x_j b_ij`.
    pub fn q(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let n = self.dim();
        let mut acc = f.zero();
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            acc = f.add(&acc, &f.mul(&f.square(&x[i]), &self.qvals[i]));
            for j in i + 1..n {
                let bij = self.polar.get(i, j);
                if !f.is_zero(bij) && !f.is_zero(&x[j]) {
                    acc = f.add(&acc, &f.mul(&f.mul(&x[i], &x[j]), bij));
                }
            }
        }
        acc
    }

    pub fn evaluate(&self, x: &[F::Elem]) -> Result<F::Elem> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(self.q(x))
    }

    /// The same space in the basis given by the columns of `p`.
    pub fn transport(&self, p: &Matrix<F>) -> Self {
        let cols = p.columns();
        self.restrict(&cols)
    }

    /// The induced quadratic form on `span(basis)`, in that basis.
    pub fn restrict(&self, basis: &[Vector<F>]) -> Self {
        let f = self.field();
        let k = basis.len();
        let polar = Matrix::from_fn(f, k, k, |r, c| {
            if r == c {
                f.zero()
            } else {
                self.b(&basis[r], &basis[c])
            }
        });
        let qvals = basis.iter().map(|v| self.q(v)).collect();
        QuadSpace { polar, qvals }
    }

    /// A basis change to pairs `(u_1, v_1, ..., u_m, v_m)` with `b(u_i, v_i) = 1`
    /// and all other pairings zero.
    pub fn symplectic_basis(&self) -> Result<Matrix<F>> {
        let pairs = self.symplectic_pairs(&self.all_basis())?;
        let f = self.field();
        let cols: Vec<Vector<F>> = pairs.into_iter().flat_map(|(u, v)| [u, v]).collect();
        Ok(Matrix::from_cols(f, self.dim(), &cols))
    }

    fn all_basis(&self) -> Vec<Vector<F>> {
        let f = self.field();
        (0..self.dim()).map(|i| linalg::unit_vec(f, self.dim(), i)).collect()
    }

    /// Symplectic pairs spanning `span(within)`, which must be b-regular.
    pub fn symplectic_pairs(&self, within: &[Vector<F>]) -> Result<Vec<(Vector<F>, Vector<F>)>> {
        let f = self.field();
        let form = self.polar_form();
        let mut rest = within.to_vec();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let u = rest[0].clone();
            let v = rest
                .iter()
                .find(|w| !f.is_zero(&self.b(&u, w)))
                .cloned()
                .ok_or(Error::DegenerateForm)?;
            let s = f.inv(&self.b(&u, &v)).unwrap();
            let v = linalg::vscale(f, &s, &v);
            rest = form.complement_within(&rest, &[u.clone(), v.clone()]);
            out.push((u, v));
        }
        Ok(out)
    }

    /// Some `x` with `q(x) = c`, found by bounded search.
    pub fn represents(&self, c: &F::Elem, budget: Budget) -> Option<Vector<F>> {
        let f = self.field();
        if f.is_zero(c) {
            return Some(linalg::zero_vec(f, self.dim()));
        }
        search_vectors(f, self.dim(), budget, |x| (self.q(x) == *c).then(|| x.to_vec()))
    }

    /// `{x : b(x, s) = 0 for all s in S}`.
    pub fn orthogonal_complement(&self, s: &Subspace<F>) -> Subspace<F> {
        let f = self.field();
        let n = self.dim();
        if s.basis.is_empty() {
            return Subspace {
                basis: self.all_basis(),
            };
        }
        let rows: Vec<Vector<F>> = s.basis.iter().map(|v| self.polar.apply(v)).collect();
        let ker = Matrix::from_rows(f, rows).kernel();
        Subspace::new(f, n, &ker)
    }

    /// Vectors of `span(within)` orthogonal to all of `against`.
    pub fn complement_within(&self, within: &[Vector<F>], against: &[Vector<F>]) -> Vec<Vector<F>> {
        self.polar_form().complement_within(within, against)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Gf2k, RatFunc};

    fn gf2m(rows: &[&[u8]]) -> Matrix<Gf2k> {
        Matrix::from_rows(Gf2k::gf2(), rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn alternating_examples() {
        assert!(SymBilForm::new(gf2m(&[&[0, 1], &[1, 0]])).unwrap().is_alternating());
        assert!(!SymBilForm::new(gf2m(&[&[1, 1], &[1, 0]])).unwrap().is_alternating());
        assert!(SymBilForm::new(gf2m(&[&[0]])).unwrap().is_alternating());
    }

    #[test]
    fn diagonalize_examples() {
        let b = SymBilForm::new(gf2m(&[&[1, 1], &[1, 0]])).unwrap();
        let (p, d) = b.diagonalize().unwrap();
        assert_eq!(p, gf2m(&[&[1, 1], &[0, 1]]));
        assert_eq!(d, vec![1, 1]);
        let alt = SymBilForm::new(gf2m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(alt.diagonalize(), Err(Error::AlternatingForm));
        let f = RatFunc::f2t();
        let one_t = SymBilForm::diagonal(f, &[f.one(), f.t()]);
        let (p, d) = one_t.diagonalize().unwrap();
        assert!(p.is_identity());
        assert_eq!(d, vec![f.one(), f.t()]);
    }

    #[test]
    fn diagonalize_needs_fixup() {
        // <1> plus a hyperbolic plane: the complement of e_1 is alternating.
        let b = SymBilForm::new(gf2m(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        let (p, d) = b.diagonalize().unwrap();
        let g = p.transpose().mul(b.gram()).mul(&p);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(*g.get(r, c), if r == c { d[r] } else { 0 });
            }
        }
        assert!(d.iter().all(|&x| x != 0));
    }

    #[test]
    fn symplectic_basis_examples() {
        let f = Gf2k::gf2();
        let h = QuadSpace::hyperbolic(f);
        assert!(h.symplectic_basis().unwrap().is_identity());
        let polar = gf2m(&[&[0, 1, 1, 0], &[1, 0, 0, 0], &[1, 0, 0, 1], &[0, 0, 1, 0]]);
        let v = QuadSpace::new(polar.clone(), vec![0, 0, 0, 0]).unwrap();
        let p = v.symplectic_basis().unwrap();
        let std = gf2m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(p.transpose().mul(&polar).mul(&p), std);
        let sing = QuadSpace::new(gf2m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]), vec![0, 0, 0]).unwrap();
        assert_eq!(sing.symplectic_basis(), Err(Error::DegenerateForm));
    }

    #[test]
    fn evaluate_examples() {
        let f = RatFunc::f2t();
        let h = QuadSpace::hyperbolic(f);
        assert_eq!(h.evaluate(&[f.one(), f.one()]).unwrap(), f.one());
        let p1t = QuadSpace::plane(f, f.one(), f.t());
        assert_eq!(p1t.evaluate(&[f.one(), f.one()]).unwrap(), f.t());
        assert_eq!(p1t.evaluate(&[f.zero(), f.zero()]).unwrap(), f.zero());
        assert!(p1t.evaluate(&[f.one()]).is_err());
    }

    #[test]
    fn represents_examples() {
        let f = RatFunc::f2t();
        let t = f.t();
        let ptt = QuadSpace::plane(f, t.clone(), t.clone());
        assert_eq!(ptt.represents(&f.one(), Budget::default()), Some(vec![f.one(), f.one()]));
        let p1t = QuadSpace::plane(f, f.one(), t.clone());
        assert_eq!(p1t.represents(&f.one(), Budget::default()), Some(vec![f.one(), f.zero()]));
        let g = Gf2k::gf4();
        let h = QuadSpace::hyperbolic(g);
        for c in 1..4u8 {
            let x = h.represents(&c, Budget::default()).unwrap();
            assert_eq!(h.q(&x), c);
        }
    }

    #[test]
    fn complement_examples() {
        let f = Gf2k::gf2();
        let h = QuadSpace::hyperbolic(f);
        let full = Subspace::new(f, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(h.orthogonal_complement(&full).dim(), 0);
        let line = Subspace::new(f, 2, &[vec![1, 0]]);
        assert_eq!(h.orthogonal_complement(&line), line);
        assert_eq!(h.orthogonal_complement(&Subspace { basis: vec![] }).dim(), 2);
    }
}
