//! Isometries of quadratic spaces, reflections and Wiitala decompositions.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{Field, SquareClass};
use crate::forms::{QuadSpace, Subspace};
use crate::linalg::{self, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Identity,
    Reflectional,
    Interchanging,
}

/// An element of `O(V, q)`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry<F: Field> {
    space: QuadSpace<F>,
    matrix: Matrix<F>,
}

impl<F: Field> Isometry<F> {
    pub fn new(space: QuadSpace<F>, matrix: Matrix<F>) -> Result<Self> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.rows(),
            });
        }
        let iso = Isometry { space, matrix };
        if !iso.preserves_form() || !iso.matrix.is_invertible() {
            return Err(Error::NotIsometry);
        }
        Ok(iso)
    }


    pub fn identity(space: QuadSpace<F>) -> Self {
        let m = Matrix::identity(space.field(), space.dim());
        Isometry { space, matrix: m }
    }

    /// `tau_u(v) = v + b(v, u) / q(u) * u`.
    pub fn reflection(space: &QuadSpace<F>, u: &[F::Elem]) -> Result<Self> {
        let f = space.field();
        let n = space.dim();
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.len(),
            });
        }
        let qu_inv = f.inv(&space.q(u)).ok_or(Error::IsotropicVector)?;
        let cols: Vec<Vector<F>> = (0..n)
            .map(|i| {
                let e = linalg::unit_vec(f, n, i);
                let c = f.mul(&space.b(&e, u), &qu_inv);
                linalg::axpy(f, &e, &c, u)
            })
            .collect();
        Ok(Isometry {
            space: space.clone(),
            matrix: Matrix::from_cols(f, n, &cols),
        })
    }

    fn preserves_form(&self) -> bool {
        let n = self.space.dim();
        let cols = self.matrix.columns();
        (0..n).all(|i| {
            self.space.q(&cols[i]) == self.space.qvals()[i]
                && (i + 1..n).all(|j| self.space.b(&cols[i], &cols[j]) == *self.space.polar().get(i, j))
        })
    }

    pub fn space(&self) -> &QuadSpace<F> {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn field(&self) -> F {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vector<F> {
        self.matrix.apply(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).is_identity()
    }

    fn require_involution(&self) -> Result<()> {
        if self.is_involution() {
            Ok(())
        } else {
            Err(Error::NotInvolution)
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Isometry {
            space: self.space.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let f = self.field();
        let (n, m) = (self.dim(), other.dim());
        let matrix = Matrix::from_fn(f, n + m, n + m, |r, c| match (r < n, c < n) {
            (true, true) => self.matrix.get(r, c).clone(),
            (false, false) => other.matrix.get(r - n, c - n).clone(),
            _ => f.zero(),
        });
        Isometry {
            space: self.space.orthogonal_sum(&other.space),
            matrix,
        }
    }

    /// The same map written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let pinv = p.inverse().ok_or(Error::DegenerateForm)?;
        Ok(Isometry {
            space: self.space.transport(p),
            matrix: pinv.mul(&self.matrix).mul(p),
        })
    }

    /// `g tau g^-1` for another isometry `g` of the same space.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        let ginv = g.matrix.inverse().expect("isometries are invertible");
        Isometry {
            space: self.space.clone(),
            matrix: g.matrix.mul(&self.matrix).mul(&ginv),
        }
    }

    fn plus_id(&self) -> Matrix<F> {
        self.matrix.add(&Matrix::identity(self.field(), self.dim()))
    }

    /// `fix(V, tau) = ker(tau + id)`.
    pub fn fix_subspace(&self) -> Subspace<F> {
        Subspace {
            basis: self.plus_id().kernel(),
        }
    }

    /// `(tau + id)(V)`; for an involution it lies in the fixed space and is
    /// the radical of `b` restricted to it.
    pub fn image_plus_id(&self) -> Subspace<F> {
        let m = self.plus_id();
        Subspace::new(self.field(), self.dim(), &m.columns())
    }

    pub fn is_interchange(&self) -> Result<bool> {
        if self.dim() != 4 {
            return Err(Error::WrongDimension);
        }
        self.require_involution()?;
        let fix = self.fix_subspace();
        Ok(fix.dim() == 2 && is_totally_singular(&self.space, &fix.basis))
    }

    /// The kind, read off the radical `R` of `b` on the fixed space.
    pub fn kind_of(&self) -> Result<Kind> {
        self.require_involution()?;
        if self.is_identity() {
            return Ok(Kind::Identity);
        }
        let f = self.field();
        let fix = self.fix_subspace().basis;
        let against: Vec<Vector<F>> = fix.clone();
        let radical = self.space.complement_within(&fix, &against);
        if radical.iter().any(|r| !f.is_zero(&self.space.q(r))) {
            Ok(Kind::Reflectional)
        } else {
            Ok(Kind::Interchanging)
        }
    }

    pub fn wiitala_decompose(&self) -> Result<WiitalaDecomposition<F>> {
        self.require_involution()?;
        wiitala(self)
    }

    /// The product of `q(u_i) F^x2` over the reflection planes of a
    /// decomposition; identity and interchange parts contribute 1.
    pub fn spinor_norm(&self) -> Result<SquareClass> {
        let d = self.wiitala_decompose()?;
        Ok(d.spinor_norm(&self.space))
    }
}

/// `q` vanishes on `span(basis)`; this forces `b` to vanish there too.
pub fn is_totally_singular<F: Field>(space: &QuadSpace<F>, basis: &[Vector<F>]) -> bool {
    let f = space.field();
    basis.iter().enumerate().all(|(i, x)| {
        f.is_zero(&space.q(x)) && basis[i + 1..].iter().all(|y| f.is_zero(&space.b(x, y)))
    })
}

/// A regular plane `span{u, w}` on which the involution is the reflection along `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionPlane<F: Field> {
    pub u: Vector<F>,
    pub w: Vector<F>,
}

impl<F: Field> ReflectionPlane<F> {
    pub fn basis(&self) -> Vec<Vector<F>> {
        alloc::vec![self.u.clone(), self.w.clone()]
    }
}

/// A 4-dimensional block with basis `(x1, y1, x2, y2)`: `b(x_i, y_i) = 1`,
/// all other pairings zero, `q(x_i) = 0`, and the involution fixes `x_i`,
/// sends `y1 -> y1 + x2` and `y2 -> y2 + x1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterchangeBlock<F: Field> {
    pub x1: Vector<F>,
    pub y1: Vector<F>,
    pub x2: Vector<F>,
    pub y2: Vector<F>,
}

impl<F: Field> InterchangeBlock<F> {
    pub fn basis(&self) -> Vec<Vector<F>> {
        alloc::vec![self.x1.clone(), self.y1.clone(), self.x2.clone(), self.y2.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiitalaDecomposition<F: Field> {
    pub w: Subspace<F>,
    pub planes: Vec<ReflectionPlane<F>>,
    pub blocks: Vec<InterchangeBlock<F>>,
    pub kind: Kind,
}

impl<F: Field> WiitalaDecomposition<F> {
    pub fn spinor_norm(&self, space: &QuadSpace<F>) -> SquareClass {
        let f = space.field();
        let prod = self
            .planes
            .iter()
            .fold(f.one(), |acc, p| f.mul(&acc, &space.q(&p.u)));
        f.square_class(&prod).expect("reflection vectors are anisotropic")
    }

    /// The involution rebuilt from the components alone: identity on `W`,
    /// the reflection formula on each plane, the normal form on each block.
    pub fn reassemble(&self, space: &QuadSpace<F>) -> Result<Matrix<F>> {
        let f = space.field();
        let n = space.dim();
        let mut basis: Vec<Vector<F>> = Vec::new();
        let mut images: Vec<Vector<F>> = Vec::new();
        for v in &self.w.basis {
            basis.push(v.clone());
            images.push(v.clone());
        }
        for p in &self.planes {
            let r = Isometry::reflection(&space.restrict(&p.basis()), &[f.one(), f.zero()])?;
            for v in p.basis() {
                basis.push(v);
            }
            // Images of u and w, mapped back from plane coordinates.
            for c in r.matrix().columns() {
                images.push(linalg::axpy(f, &linalg::vscale(f, &c[0], &p.u), &c[1], &p.w));
            }
        }
        for b in &self.blocks {
            basis.extend(b.basis());
            images.push(b.x1.clone());
            images.push(linalg::vadd(f, &b.y1, &b.x2));
            images.push(b.x2.clone());
            images.push(linalg::vadd(f, &b.y2, &b.x1));
        }
        if basis.len() != n {
            return Err(Error::InvariantViolation("components do not span V".into()));
        }
        let bm = Matrix::from_cols(f, n, &basis);
        let im = Matrix::from_cols(f, n, &images);
        let binv = bm
            .inverse()
            .ok_or_else(|| Error::InvariantViolation("components are not independent".into()))?;
        Ok(im.mul(&binv))
    }

    /// Checks every post-condition of the decomposition against `tau`.
    pub fn verify(&self, tau: &Isometry<F>) -> Result<()> {
        let space = tau.space();
        let f = space.field();
        let fail = |m: &str| Err(Error::InvariantViolation(m.into()));
        let mut parts: Vec<Vec<Vector<F>>> = Vec::new();
        parts.push(self.w.basis.clone());
        for v in &self.w.basis {
            if tau.apply(v) != *v {
                return fail("tau is not the identity on W");
            }
        }
        for p in &self.planes {
            let u_img = tau.apply(&p.u);
            let w_img = tau.apply(&p.w);
            let qu = space.q(&p.u);
            if f.is_zero(&qu) || u_img != p.u || w_img != linalg::vadd(f, &p.w, &p.u) || space.b(&p.u, &p.w) != qu {
                return fail("plane is not a reflection plane");
            }
            if !space.restrict(&p.basis()).is_regular() {
                return fail("plane is not regular");
            }
            parts.push(p.basis());
        }
        for b in &self.blocks {
            let sub = space.restrict(&b.basis());
            let std = Matrix::from_fn(f, 4, 4, |r, c| {
                if r / 2 == c / 2 && r != c {
                    f.one()
                } else {
                    f.zero()
                }
            });
            if *sub.polar() != std || !f.is_zero(&space.q(&b.x1)) || !f.is_zero(&space.q(&b.x2)) {
                return fail("block is not in normal form");
            }
            let images = [
                (&b.x1, b.x1.clone()),
                (&b.y1, linalg::vadd(f, &b.y1, &b.x2)),
                (&b.x2, b.x2.clone()),
                (&b.y2, linalg::vadd(f, &b.y2, &b.x1)),
            ];
            if images.iter().any(|(v, img)| tau.apply(v) != *img) {
                return fail("block action differs from tau");
            }
            let local = Isometry::new(sub, restricted_matrix(tau, &b.basis())?)?;
            if !local.is_interchange()? {
                return fail("block restriction is not an interchange");
            }
            parts.push(b.basis());
        }
        for (i, a) in parts.iter().enumerate() {
            for bpart in &parts[i + 1..] {
                if a.iter().any(|x| bpart.iter().any(|y| !f.is_zero(&space.b(x, y)))) {
                    return fail("components are not orthogonal");
                }
            }
        }
        match self.kind {
            Kind::Identity if !(self.planes.is_empty() && self.blocks.is_empty()) => return fail("identity kind with components"),
            Kind::Reflectional if !self.blocks.is_empty() || self.planes.is_empty() => return fail("impure reflectional decomposition"),
            Kind::Interchanging if !self.planes.is_empty() || self.blocks.is_empty() => return fail("impure interchanging decomposition"),
            _ => {}
        }
        if self.reassemble(space)? != *tau.matrix() {
            return fail("reassembled map differs from tau");
        }
        Ok(())
    }
}

/// The matrix of `tau` restricted to the invariant subspace `span(basis)`.
pub fn restricted_matrix<F: Field>(tau: &Isometry<F>, basis: &[Vector<F>]) -> Result<Matrix<F>> {
    let f = tau.field();
    let n = tau.dim();
    let cols: Option<Vec<Vector<F>>> = basis
        .iter()
        .map(|v| linalg::coords_in(f, n, basis, &tau.apply(v)))
        .collect();
    let cols = cols.ok_or_else(|| Error::InvariantViolation("subspace is not invariant".into()))?;
    Ok(Matrix::from_cols(f, basis.len(), &cols))
}

fn combine<F: Field>(f: F, n: usize, coeffs: &[F::Elem], vecs: &[Vector<F>]) -> Vector<F> {
    coeffs
        .iter()
        .zip(vecs)
        .fold(linalg::zero_vec(f, n), |acc, (c, v)| linalg::axpy(f, &acc, c, v))
}

fn wiitala<F: Field>(tau: &Isometry<F>) -> Result<WiitalaDecomposition<F>> {
    let space = tau.space();
    let f = space.field();
    let n = space.dim();
    let plus = tau.plus_id();
    let mut current: Vec<Vector<F>> = (0..n).map(|i| linalg::unit_vec(f, n, i)).collect();
    let mut planes = Vec::new();
    let mut blocks = Vec::new();

    // Preimage of s under tau + id, inside span(current).
    let preimage = |current: &[Vector<F>], s: &[F::Elem]| -> Result<Vector<F>> {
        let images: Vec<Vector<F>> = current.iter().map(|v| plus.apply(v)).collect();
        let c = Matrix::from_cols(f, n, &images)
            .solve(s)
            .ok_or_else(|| Error::InvariantViolation("no preimage under tau + id".into()))?;
        Ok(combine(f, n, &c, current))
    };

    loop {
        let s_basis = linalg::span_basis(f, n, &current.iter().map(|v| plus.apply(v)).collect::<Vec<_>>());
        if s_basis.is_empty() {
            break;
        }
        let qs: Vec<F::Elem> = s_basis.iter().map(|s| space.q(s)).collect();
        if qs.iter().any(|q| !f.is_zero(q)) {
            let u = choose_reflection_vector(space, &s_basis, &qs, |s| preimage(&current, s))?;
            let w = preimage(&current, &u)?;
            current = space.complement_within(&current, &[u.clone(), w.clone()]);
            planes.push(ReflectionPlane { u, w });
        } else {
            if !planes.is_empty() {
                return Err(Error::InvariantViolation("mixed Wiitala decomposition".into()));
            }
            let x1 = s_basis[0].clone();
            let w = preimage(&current, &x1)?;
            let y1 = current
                .iter()
                .find(|v| !f.is_zero(&space.b(&x1, v)))
                .cloned()
                .ok_or(Error::DegenerateForm)?;
            let y1 = linalg::vscale(f, &f.inv(&space.b(&x1, &y1)).unwrap(), &y1);
            let x2 = plus.apply(&y1);
            let y2 = w;
            let d = space.b(&y1, &y2);
            let y1 = linalg::axpy(f, &y1, &d, &x2);
            let block = InterchangeBlock { x1, y1, x2, y2 };
            current = space.complement_within(&current, &block.basis());
            blocks.push(block);
        }
    }
    let kind = match (planes.is_empty(), blocks.is_empty()) {
        (true, true) => Kind::Identity,
        (false, true) => Kind::Reflectional,
        (true, false) => Kind::Interchanging,
        (false, false) => return Err(Error::InvariantViolation("mixed Wiitala decomposition".into())),
    };
    Ok(WiitalaDecomposition {
        w: Subspace { basis: current },
        planes,
        blocks,
        kind,
    })
}

/// Picks `u` in `S = (tau + id)V` with `q(u) != 0` such that `q` stays
/// nonzero on what remains of `S` after splitting off the plane through `u`.
///
/// On `S` the pairing `beta(s, s') = b(w_s, s')`, with `(tau + id) w_s = s`,
/// is symmetric and nondegenerate with `beta(s, s) = q(s)`, and the remaining
/// part of `S` is the `beta`-orthogonal of `u`. It can only become totally
/// singular when `N = {s : q(s) = 0}` is a hyperplane of `S` that is
/// `beta`-orthogonal to `u`; any nonzero `n` in `N` moves `u` off that line.
fn choose_reflection_vector<F: Field>(
    space: &QuadSpace<F>,
    s_basis: &[Vector<F>],
    qs: &[F::Elem],
    preimage: impl Fn(&[F::Elem]) -> Result<Vector<F>>,
) -> Result<Vector<F>> {
    let f = space.field();
    let n = space.dim();
    let k = s_basis.len();
    // q(sum c_i s_i) = sum_j beta_j (sum_i c_i g_ij)^2 with g_ij the square-root
    // coordinates of q(s_i), so N is the kernel of the matrix (g_ij)^T.
    let coords: Vec<Vector<F>> = qs.iter().map(|q| f.sqrt_coords(q)).collect();
    let m = coords[0].len();
    let g = Matrix::from_fn(f, m, k, |j, i| coords[i][j].clone());
    let null = g.kernel();
    let i0 = qs.iter().position(|q| !f.is_zero(q)).unwrap();
    let u0 = s_basis[i0].clone();
    if null.is_empty() || null.len() + 1 != k {
        return Ok(u0);
    }
    let null_vecs: Vec<Vector<F>> = null.iter().map(|c| combine(f, n, c, s_basis)).collect();
    let w0 = preimage(&u0)?;
    if null_vecs.iter().any(|v| !f.is_zero(&space.b(&w0, v))) {
        return Ok(u0);
    }
    Ok(linalg::vadd(f, &u0, &null_vecs[0]))
}
