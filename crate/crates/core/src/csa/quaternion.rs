use alloc::vec;
use alloc::vec::Vec;

use super::{AlgebraWithInvolution, ScAlgebra};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::forms::QuadSpace;
use crate::linalg::{self, Matrix, Vector};
use crate::search::{search_vectors, Budget};

/// The algebra `[a, b)` with basis `1, i, j, k = ij`: `i^2 + i = a`,
/// `j^2 = b`, `ji = ij + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion<F: Field> {
    a: F::Elem,
    b: F::Elem,
    algebra: ScAlgebra<F>,
}

impl<F: Field> Quaternion<F> {
    pub fn new(f: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        if f.is_zero(&b) {
            return Err(Error::ZeroParameter);
        }
        let (o, z) = (f.one(), f.zero());
        let ab = f.mul(&a, &b);
        let v = |c: [&F::Elem; 4]| -> Vector<F> { c.iter().map(|x| (*x).clone()).collect() };
        // Rows are the left factor, columns the right factor.
        let prods: [[Vector<F>; 3]; 3] = [
            [v([&a, &o, &z, &z]), v([&z, &z, &z, &o]), v([&z, &z, &a, &o])],
            [v([&z, &z, &o, &o]), v([&b, &z, &z, &z]), v([&b, &b, &z, &z])],
            [v([&z, &z, &a, &z]), v([&z, &b, &z, &z]), v([&ab, &z, &z, &z])],
        ];
        let algebra = ScAlgebra::from_fn(f, 4, linalg::unit_vec(f, 4, 0), |p, q| match (p, q) {
            (0, q) => linalg::unit_vec(f, 4, q),
            (p, 0) => linalg::unit_vec(f, 4, p),
            (p, q) => prods[p - 1][q - 1].clone(),
        })?;
        Ok(Quaternion { a, b, algebra })
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn b(&self) -> &F::Elem {
        &self.b
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &ScAlgebra<F> {
        &self.algebra
    }

    /// `Trd(x0 + x1 i + x2 j + x3 k) = x1`.
    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        x[1].clone()
    }

    /// `Nrd(x) = x0^2 + x0 x1 + a x1^2 + b (x2^2 + x2 x3 + a x3^2)`.
    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let binary = |p: &F::Elem, q: &F::Elem| {
            f.add(&f.add(&f.square(p), &f.mul(p, q)), &f.mul(&self.a, &f.square(q)))
        };
        f.add(&binary(&x[0], &x[1]), &f.mul(&self.b, &binary(&x[2], &x[3])))
    }

    /// `gamma(x) = Trd(x) + x`.
    pub fn canonical_involution(&self) -> AlgebraWithInvolution<F> {
        let f = self.field();
        let mut m = Matrix::identity(f, 4);
        m.set(0, 1, f.one());
        AlgebraWithInvolution::from_parts(self.algebra.clone(), m)
    }

    /// `x -> u gamma(x) u^-1` for a pure quaternion `u = x + y j + z k`
    /// outside `F`; orthogonal with `alt = F u` and discriminant `u^2 F^x2`.
    pub fn orthogonal_involution(&self, u: &[F::Elem]) -> Result<AlgebraWithInvolution<F>> {
        let f = self.field();
        let q = &self.algebra;
        if !f.is_zero(&u[1]) || (f.is_zero(&u[2]) && f.is_zero(&u[3])) {
            return Err(Error::InvalidAlgebra("u must be a pure quaternion outside F".into()));
        }
        let uinv = q.inverse(u).ok_or(Error::InvalidAlgebra("u is not invertible".into()))?;
        let gamma = self.canonical_involution();
        let cols: Vec<Vector<F>> = (0..4)
            .map(|i| q.mul(&q.mul(u, &gamma.apply(&q.basis(i))), &uinv))
            .collect();
        AlgebraWithInvolution::new(q.clone(), Matrix::from_cols(f, 4, &cols))
    }

    /// A pure `u` with `u^2 in delta F^x2`, searched over `(y, z)` with `x`
    /// solved exactly: over a field with square-root basis `1, beta_1, ...`
    /// the coordinates of `(x^2 + c) delta` off `1` are affine in `x`.
    pub fn pure_element_with_square_class(&self, delta: &F::Elem, budget: Budget) -> Option<Vector<F>> {
        let f = self.field();
        if f.is_zero(delta) {
            return None;
        }
        let dc = f.sqrt_coords(delta);
        search_vectors(f, 2, budget, |yz| {
            if f.is_zero(&yz[0]) && f.is_zero(&yz[1]) {
                return None;
            }
            let c = self.norm(&[f.zero(), f.zero(), yz[0].clone(), yz[1].clone()]);
            let cd = f.sqrt_coords(&f.mul(&c, delta));
            // Need x dc[m] + cd[m] = 0 for m >= 1.
            let mut x: Option<F::Elem> = None;
            for m in 1..dc.len() {
                if !f.is_zero(&dc[m]) {
                    let cand = f.div(&cd[m], &dc[m]).unwrap();
                    match &x {
                        Some(prev) if *prev != cand => return None,
                        _ => x = Some(cand),
                    }
                }
            }
            let x = match x {
                Some(x) => x,
                None if cd[1..].iter().all(|e| f.is_zero(e)) => {
                    if f.is_zero(&c) { f.one() } else { f.zero() }
                }
                None => return None,
            };
            if (1..dc.len()).any(|m| !f.is_zero(&f.add(&f.mul(&x, &dc[m]), &cd[m]))) {
                return None;
            }
            let u2 = f.add(&f.square(&x), &c);
            if f.is_zero(&u2) {
                return None;
            }
            Some(vec![x, f.zero(), yz[0].clone(), yz[1].clone()])
        })
    }

    /// An orthogonal involution of discriminant `delta F^x2`, when one is found.
    pub fn orthogonal_with_disc(&self, delta: &F::Elem, budget: Budget) -> Result<AlgebraWithInvolution<F>> {
        let u = self
            .pure_element_with_square_class(delta, budget)
            .ok_or(Error::InvalidAlgebra("no orthogonal involution with this discriminant found".into()))?;
        self.orthogonal_involution(&u)
    }
}

/// `gamma(x) = Trd(x) + x` on any quaternion algebra given by structure
/// constants, with `Trd` read off `x^2 = Trd(x) x + Nrd(x)`.
pub fn canonical_involution_of<F: Field>(alg: &ScAlgebra<F>) -> Result<AlgebraWithInvolution<F>> {
    let f = alg.field();
    if alg.dim() != 4 {
        return Err(Error::WrongDimension);
    }
    let cols: Result<Vec<Vector<F>>> = (0..4)
        .map(|k| {
            let x = alg.basis(k);
            if alg.as_scalar(&x).is_some() {
                return Ok(x);
            }
            let m = Matrix::from_cols(f, 4, &[x.clone(), alg.one()]);
            let tn = m
                .solve(&alg.mul(&x, &x))
                .ok_or_else(|| Error::InvalidAlgebra("element of degree above 2".into()))?;
            Ok(alg.add(&alg.scalar(&tn[0]), &x))
        })
        .collect();
    AlgebraWithInvolution::new(alg.clone(), Matrix::from_cols(f, 4, &cols?))
}

/// `C(E)` for a plane presented as `[cd, c)` with `i = uv`, `j = u`, where
/// `(u, v)` is a symplectic basis of `E` with `q(u) = c != 0`, `q(v) = d`.
#[derive(Clone, Debug)]
pub struct PlaneQuaternion<F: Field> {
    pub quaternion: Quaternion<F>,
    /// The symplectic basis `(u, v)` in coordinates of `E`.
    pub u: Vector<F>,
    pub v: Vector<F>,
    /// Images of `1, i, j, k` in the monomial basis `1, e_1, e_2, e_1 e_2` of `C(E)`.
    pub iso: Matrix<F>,
}

pub fn quaternion_from_plane<F: Field>(plane: &QuadSpace<F>) -> Result<PlaneQuaternion<F>> {
    let f = plane.field();
    if plane.dim() != 2 || !plane.is_regular() {
        return Err(Error::DegenerateForm);
    }
    let e1 = linalg::unit_vec(f, 2, 0);
    let e2 = linalg::unit_vec(f, 2, 1);
    // Prefer an anisotropic first vector: e_1, e_2 or e_1 + e_2.
    let cands = [e1.clone(), e2.clone(), linalg::vadd(f, &e1, &e2)];
    let u = cands
        .iter()
        .find(|x| !f.is_zero(&plane.q(x)))
        .cloned()
        .ok_or(Error::DegenerateForm)?;
    let w = if u == e1 { e2 } else { e1 };
    let v = linalg::vscale(f, &f.inv(&plane.b(&u, &w)).unwrap(), &w);
    let c = plane.q(&u);
    let d = plane.q(&v);
    let quaternion = Quaternion::new(f, f.mul(&c, &d), c.clone())?;
    // u = u0 e1 + u1 e2, v likewise; uv = u0 v1 e1e2 + u1 v0 e2e1 + u0 v0 q1 + u1 v1 q2
    // with e2 e1 = e1 e2 + b12.
    let (q1, q2) = (plane.qvals()[0].clone(), plane.qvals()[1].clone());
    let b12 = plane.polar().get(0, 1).clone();
    let prod = |x: &[F::Elem], y: &[F::Elem]| -> Vector<F> {
        let s = f.add(&f.mul(&f.mul(&x[0], &y[0]), &q1), &f.mul(&f.mul(&x[1], &y[1]), &q2));
        let s = f.add(&s, &f.mul(&f.mul(&x[1], &y[0]), &b12));
        let top = f.add(&f.mul(&x[0], &y[1]), &f.mul(&x[1], &y[0]));
        vec![s, f.zero(), f.zero(), top]
    };
    let one = vec![f.one(), f.zero(), f.zero(), f.zero()];
    let uv = prod(&u, &v);
    let j = vec![f.zero(), u[0].clone(), u[1].clone(), f.zero()];
    // k = i j = (uv) u = u (vu) = u (uv + 1) = c v + u.
    let k = vec![f.zero(), f.add(&f.mul(&c, &v[0]), &u[0]), f.add(&f.mul(&c, &v[1]), &u[1]), f.zero()];
    let iso = Matrix::from_cols(f, 4, &[one, uv, j, k]);
    Ok(PlaneQuaternion { quaternion, u, v, iso })
}
