//! Clifford algebras of quadratic spaces and the involutions `J_tau`
//! induced by involutory isometries.

use alloc::vec;
use alloc::vec::Vec;

use crate::csa::{iso_with_involution_check, AlgebraWithInvolution, InvolutionType, MatrixInvolutionKind, ScAlgebra};
use crate::error::{Error, Result};
use crate::fields::{Field, SquareClass};
use crate::forms::QuadSpace;
use crate::isometry::Isometry;
use crate::linalg::{self, Matrix, Vector};
use crate::search::{search_vectors, Budget};

const MAX_DIM_FINITE: usize = 8;
const MAX_DIM_FUNCTION: usize = 4;
/// Largest algebra for which a full structure-constant table is built.
const MAX_TABLE_DIM: usize = 64;

type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// `C(V)` on the monomials `e_S = e_{s_1} ... e_{s_k}`, `s_1 < ... < s_k`,
/// ordered by `(|S|, S lexicographically)`. Index 0 is the unit and index
/// `1 + i` the generator `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordAlgebra<F: Field> {
    space: QuadSpace<F>,
    masks: Vec<u32>,
    index: Vec<usize>,
    /// `right[k * n + i] = e_{S_k} e_i`.
    right: Vec<Sparse<F>>,
}

fn top_bit(m: usize) -> usize {
    usize::BITS as usize - 1 - m.leading_zeros() as usize
}

fn subset(m: u32) -> Vec<u32> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

impl<F: Field> CliffordAlgebra<F> {
    pub fn new(space: QuadSpace<F>) -> Result<Self> {
        let f = space.field();
        let n = space.dim();
        let cap = if f.order().is_some() { MAX_DIM_FINITE } else { MAX_DIM_FUNCTION };
        if n > cap {
            return Err(Error::DimensionBudgetExceeded);
        }
        let d = 1usize << n;
        let mut masks: Vec<u32> = (0..d as u32).collect();
        masks.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then_with(|| subset(*a).cmp(&subset(*b))));
        let mut index = vec![0; d];
        for (k, &m) in masks.iter().enumerate() {
            index[m as usize] = k;
        }
        // e_S e_i with s = max S, S = S' + {s}:
        //   s < i: e_{S + i};  s = i: q_i e_{S'};  s > i: (e_{S'} e_i) e_s + b(s, i) e_{S'}.
        let mut by_mask: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); d * n];
        for m in 0..d {
            for i in 0..n {
                let terms = if m == 0 {
                    vec![(1 << i, f.one())]
                } else {
                    let s = top_bit(m);
                    let rest = m & !(1 << s);
                    if s < i {
                        vec![(m | 1 << i, f.one())]
                    } else if s == i {
                        let qi = space.qvals()[i].clone();
                        if f.is_zero(&qi) {
                            Vec::new()
                        } else {
                            vec![(rest, qi)]
                        }
                    } else {
                        let mut t: Vec<(usize, F::Elem)> =
                            by_mask[rest * n + i].iter().map(|(tm, c)| (tm | 1 << s, c.clone())).collect();
                        let b = space.polar().get(s, i);
                        if !f.is_zero(b) {
                            t.push((rest, b.clone()));
                        }
                        t
                    }
                };
                by_mask[m * n + i] = terms;
            }
        }
        let mut right = vec![Vec::new(); d * n];
        for m in 0..d {
            for i in 0..n {
                right[index[m] * n + i] = by_mask[m * n + i].iter().map(|(tm, c)| (index[*tm], c.clone())).collect();
            }
        }
        Ok(CliffordAlgebra { space, masks, index, right })
    }

    pub fn space(&self) -> &QuadSpace<F> {
        &self.space
    }

    pub fn field(&self) -> F {
        self.space.field()
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    pub fn dim(&self) -> usize {
        self.masks.len()
    }

    /// The subset of generators of a basis index, as a bit mask.
    pub fn mask(&self, k: usize) -> u32 {
        self.masks[k]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.index[mask as usize]
    }

    pub fn one(&self) -> Vector<F> {
        linalg::unit_vec(self.field(), self.dim(), 0)
    }

    pub fn zero(&self) -> Vector<F> {
        linalg::zero_vec(self.field(), self.dim())
    }

    pub fn basis(&self, k: usize) -> Vector<F> {
        linalg::unit_vec(self.field(), self.dim(), k)
    }

    pub fn scalar(&self, c: &F::Elem) -> Vector<F> {
        linalg::vscale(self.field(), c, &self.one())
    }

    pub fn add_vec(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        linalg::vadd(self.field(), x, y)
    }

    /// `c` when `x = c 1`.
    pub fn as_scalar(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = self.field();
        x[1..].iter().all(|c| f.is_zero(c)).then(|| x[0].clone())
    }

    /// The vector `v` of `V` as an element of `C(V)`.
    pub fn embed(&self, v: &[F::Elem]) -> Vector<F> {
        let mut out = self.zero();
        for (i, c) in v.iter().enumerate() {
            out[1 + i] = c.clone();
        }
        out
    }

    /// `x e_i`.
    pub fn mul_gen(&self, x: &[F::Elem], i: usize) -> Vector<F> {
        let f = self.field();
        let n = self.rank();
        let mut out = self.zero();
        for (k, xk) in x.iter().enumerate() {
            if f.is_zero(xk) {
                continue;
            }
            for (t, c) in &self.right[k * n + i] {
                out[*t] = f.add(&out[*t], &f.mul(xk, c));
            }
        }
        out
    }

    /// `x v` for `v` in `V`.
    pub fn mul_vector(&self, x: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let mut out = self.zero();
        for (i, c) in v.iter().enumerate() {
            if !f.is_zero(c) {
                out = linalg::axpy(f, &out, c, &self.mul_gen(x, i));
            }
        }
        out
    }

    /// `x e_S` for the masks flagged in `need`, which must be closed under
    /// dropping the top bit. Entries are indexed by mask.
    fn right_monomials(&self, x: &[F::Elem], need: &[bool]) -> Vec<Option<Vector<F>>> {
        let d = self.dim();
        let mut prods: Vec<Option<Vector<F>>> = vec![None; d];
        prods[0] = Some(x.to_vec());
        for m in 1..d {
            if need[m] {
                let s = top_bit(m);
                let prev = prods[m & !(1 << s)].as_ref().expect("prefix computed first");
                prods[m] = Some(self.mul_gen(prev, s));
            }
        }
        prods
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = self.field();
        let d = self.dim();
        let mut need = vec![false; d];
        for (k, yk) in y.iter().enumerate() {
            if !f.is_zero(yk) {
                need[self.masks[k] as usize] = true;
            }
        }
        for m in (1..d).rev() {
            if need[m] {
                need[m & !(1 << top_bit(m))] = true;
            }
        }
        let prods = self.right_monomials(x, &need);
        let mut out = self.zero();
        for (k, yk) in y.iter().enumerate() {
            if !f.is_zero(yk) {
                out = linalg::axpy(f, &out, yk, prods[self.masks[k] as usize].as_ref().unwrap());
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let prods = self.right_monomials(x, &vec![true; self.dim()]);
        let cols: Vec<Vector<F>> = self.masks.iter().map(|&m| prods[m as usize].clone().unwrap()).collect();
        Matrix::from_cols(self.field(), self.dim(), &cols)
    }

    /// `deg C(V) = 2^(n/2)`.
    pub fn degree(&self) -> usize {
        1 << (self.rank() / 2)
    }

    /// The reduced norm from `det(L_x) = Nrd(x)^deg`.
    pub fn reduced_norm(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = self.field();
        if self.rank() % 2 != 0 {
            return None;
        }
        let mut v = self.left_matrix(x).det();
        let mut k = self.degree();
        while k > 1 {
            v = f.sqrt(&v)?;
            k /= 2;
        }
        Some(v)
    }

    /// The structure constants as an [`ScAlgebra`], for `dim C(V) <= 64`.
    pub fn to_algebra(&self) -> Result<ScAlgebra<F>> {
        let d = self.dim();
        if d > MAX_TABLE_DIM {
            return Err(Error::DimensionBudgetExceeded);
        }
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            let row = self.left_matrix(&self.basis(i));
            for j in 0..d {
                table.push(row.col(j));
            }
        }
        Ok(ScAlgebra::from_parts(self.field(), d, table, self.one()))
    }
}

pub fn clifford<F: Field>(space: &QuadSpace<F>) -> Result<CliffordAlgebra<F>> {
    CliffordAlgebra::new(space.clone())
}

/// `J_tau` on `C(V)`, the anti-automorphism extending `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedInvolution<F: Field> {
    algebra: CliffordAlgebra<F>,
    map: Matrix<F>,
}

/// `J_tau(e_S) = tau(e_{s_k}) ... tau(e_{s_1})`, built as
/// `J(e_S) = J(e_{S - s_1}) tau(e_{s_1})`.
pub fn induced_involution<F: Field>(c: &CliffordAlgebra<F>, tau: &Isometry<F>) -> Result<InducedInvolution<F>> {
    if tau.space() != c.space() {
        return Err(Error::DimensionMismatch {
            expected: c.rank(),
            found: tau.dim(),
        });
    }
    if !tau.is_involution() {
        return Err(Error::NotInvolution);
    }
    let d = c.dim();
    let images: Vec<Vector<F>> = (0..c.rank()).map(|i| tau.matrix().col(i)).collect();
    let mut by_mask: Vec<Vector<F>> = Vec::with_capacity(d);
    by_mask.push(c.one());
    for m in 1..d {
        let low = m.trailing_zeros() as usize;
        let img = c.mul_vector(&by_mask[m & (m - 1)], &images[low]);
        by_mask.push(img);
    }
    let cols: Vec<Vector<F>> = c.masks.iter().map(|&m| by_mask[m as usize].clone()).collect();
    Ok(InducedInvolution {
        algebra: c.clone(),
        map: Matrix::from_cols(c.field(), d, &cols),
    })
}

impl<F: Field> InducedInvolution<F> {
    pub fn algebra(&self) -> &CliffordAlgebra<F> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.map
    }

    pub fn apply(&self, x: &[F::Elem]) -> Vector<F> {
        self.map.apply(x)
    }

    fn plus_id(&self) -> Matrix<F> {
        self.map.add(&Matrix::identity(self.algebra.field(), self.algebra.dim()))
    }

    pub fn alt_basis(&self) -> Vec<Vector<F>> {
        linalg::span_basis(self.algebra.field(), self.algebra.dim(), &self.plus_id().columns())
    }

    pub fn sym_basis(&self) -> Vec<Vector<F>> {
        self.plus_id().kernel()
    }

    /// Symplectic iff `1` is alternating. `J` preserves the parity of
    /// monomials, so only the even part has to be searched.
    pub fn involution_type(&self) -> InvolutionType {
        let c = &self.algebra;
        let even: Vec<usize> = (0..c.dim()).filter(|&k| c.mask(k).count_ones() % 2 == 0).collect();
        let sub = self.plus_id().submatrix(&even, &even);
        let one = linalg::unit_vec(c.field(), even.len(), 0);
        if sub.solve(&one).is_some() {
            InvolutionType::Symplectic
        } else {
            InvolutionType::Orthogonal
        }
    }

    /// `Nrd(a) F^x2` for an invertible alternating `a`, searched within `budget`.
    pub fn discriminant(&self, budget: Budget) -> Result<SquareClass> {
        if self.involution_type() == InvolutionType::Symplectic {
            return Err(Error::SymplecticInvolution);
        }
        let c = &self.algebra;
        let f = c.field();
        let alt = self.alt_basis();
        let nrd = search_vectors(f, alt.len(), budget, |coeffs| {
            let x = coeffs
                .iter()
                .zip(&alt)
                .fold(c.zero(), |acc, (ci, v)| linalg::axpy(f, &acc, ci, v));
            c.reduced_norm(&x).filter(|n| !f.is_zero(n))
        })
        .ok_or(Error::NoInvertibleAlternating)?;
        f.square_class(&nrd)
    }

    /// `(C(V), J_tau)` with full structure constants, for `dim C(V) <= 64`.
    pub fn to_algebra_with_involution(&self) -> Result<AlgebraWithInvolution<F>> {
        AlgebraWithInvolution::new(self.algebra.to_algebra()?, self.map.clone())
    }
}

/// Bases of `alt(A, sigma)` and `Sym(A, sigma)`.
pub fn alt_and_sym<F: Field>(aw: &AlgebraWithInvolution<F>) -> (Vec<Vector<F>>, Vec<Vector<F>>) {
    (aw.alt_basis(), aw.sym_basis())
}

/// Orthogonal iff `dim fix(V, tau) = dim V / 2`.
pub fn type_via_fix<F: Field>(tau: &Isometry<F>) -> Result<InvolutionType> {
    if !tau.is_involution() {
        return Err(Error::NotInvolution);
    }
    Ok(if 2 * tau.fix_subspace().dim() == tau.dim() {
        InvolutionType::Orthogonal
    } else {
        InvolutionType::Symplectic
    })
}

/// The type of `J_tau`, computed in `C(V)` after moving to a symplectic
/// basis of `V`, where every `e_S e_i` has at most two terms.
pub fn induced_type<F: Field>(tau: &Isometry<F>) -> Result<InvolutionType> {
    let p = tau.space().symplectic_basis()?;
    let t = tau.change_basis(&p)?;
    let c = CliffordAlgebra::new(t.space().clone())?;
    Ok(induced_involution(&c, &t)?.involution_type())
}

/// `(C(V), J_tau) = (M_{2^n}(F), t)` iff `dim fix = dim V / 2` and `q` takes
/// square values on the fixed space. In that case the fixed space is its own
/// orthogonal, so `q` is additive there and a basis suffices.
pub fn is_transpose_isomorphic<F: Field>(tau: &Isometry<F>) -> Result<bool> {
    if type_via_fix(tau)? != InvolutionType::Orthogonal {
        return Ok(false);
    }
    let f = tau.field();
    Ok(tau.fix_subspace().basis.iter().all(|x| f.is_square(&tau.space().q(x))))
}

/// The matrix involution `(C(E), J_tau)` is isomorphic to, for a plane `E`
/// whose Clifford algebra is certified split by a vector with `q = 1`.
pub fn classify_rank2<F: Field>(tau: &Isometry<F>, budget: Budget) -> Result<MatrixInvolutionKind> {
    if tau.dim() != 2 {
        return Err(Error::WrongDimension);
    }
    if !tau.is_involution() {
        return Err(Error::NotInvolution);
    }
    let f = tau.field();
    if tau.space().represents(&f.one(), budget).is_none() {
        return Err(Error::NotSplit);
    }
    if tau.is_identity() {
        return Ok(MatrixInvolutionKind::Gamma);
    }
    MatrixInvolutionKind::TAlpha(tau.spinor_norm()?.rep).normalized()
}

/// `(C(A), J_tau) = (C(E_1), J_1) (x) (C(E_2), J_2)` for an interchange `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterchangeSplit<F: Field> {
    /// `P(1, a_i)` with the reflection along the first basis vector.
    pub factors: [Isometry<F>; 2],
    /// The images in `C(A)` of the two basis vectors of each plane.
    pub generators: [[Vector<F>; 2]; 2],
    /// `C(E_1) (x) C(E_2) -> C(A)` on the monomial bases.
    pub iso: Matrix<F>,
}

/// With the normal form `(x1, y1, x2, y2)` of the block, the elements
///
/// ```text
/// e1 = 1 + x1 + x1 x2        f1 = y1 + y1 x2 + x1 y1 x2 + x2 y2 + x1 x2 y2
/// e2 = 1 + x2 + x1 x2        f2 = x1 y1 + x1 y1 x2 + y2 + x1 y2 + x1 x2 y2
/// ```
///
/// satisfy `e_i^2 = 1`, `e_i f_i + f_i e_i = 1`, `J(e_i) = e_i`,
/// `J(f_i) = f_i + e_i`, and the two pairs commute. Every claim is checked,
/// and so is the resulting isomorphism.
pub fn split_interchange_block<F: Field>(tau: &Isometry<F>) -> Result<InterchangeSplit<F>> {
    if !tau.is_interchange()? {
        return Err(Error::NotInterchange);
    }
    let fail = |m: &str| Error::InvariantViolation(m.into());
    let wd = tau.wiitala_decompose()?;
    let block = match (wd.planes.len(), wd.blocks.as_slice()) {
        (0, [b]) => b.clone(),
        _ => return Err(fail("interchange does not decompose into one block")),
    };
    let f = tau.field();
    let c = CliffordAlgebra::new(tau.space().clone())?;
    let j = induced_involution(&c, tau)?;
    let m = |xs: &[&Vector<F>]| xs.iter().fold(c.one(), |acc, x| c.mul(&acc, x));
    let (x1, y1, x2, y2) = (c.embed(&block.x1), c.embed(&block.y1), c.embed(&block.x2), c.embed(&block.y2));
    let one = c.one();
    let sum = |xs: &[Vector<F>]| xs.iter().fold(c.zero(), |acc, x| c.add_vec(&acc, x));
    let e1 = sum(&[one.clone(), x1.clone(), m(&[&x1, &x2])]);
    let f1 = sum(&[y1.clone(), m(&[&y1, &x2]), m(&[&x1, &y1, &x2]), m(&[&x2, &y2]), m(&[&x1, &x2, &y2])]);
    let e2 = sum(&[one.clone(), x2.clone(), m(&[&x1, &x2])]);
    let f2 = sum(&[m(&[&x1, &y1]), m(&[&x1, &y1, &x2]), y2.clone(), m(&[&x1, &y2]), m(&[&x1, &x2, &y2])]);
    let gens = [[e1, f1], [e2, f2]];
    let mut factors = Vec::with_capacity(2);
    for [e, g] in &gens {
        if c.mul(e, e) != one || c.add_vec(&c.mul(e, g), &c.mul(g, e)) != one {
            return Err(fail("plane generators violate the Clifford relations"));
        }
        let a = c.as_scalar(&c.mul(g, g)).ok_or_else(|| fail("f^2 is not a scalar"))?;
        if j.apply(e) != *e || j.apply(g) != c.add_vec(g, e) {
            return Err(fail("J_tau does not act as the reflection along e"));
        }
        let plane = QuadSpace::plane(f, f.one(), a);
        factors.push(Isometry::reflection(&plane, &[f.one(), f.zero()])?);
    }
    for x in &gens[0] {
        for y in &gens[1] {
            if c.mul(x, y) != c.mul(y, x) {
                return Err(fail("plane algebras do not commute"));
            }
        }
    }
    let monomials = |[e, g]: &[Vector<F>; 2]| [c.one(), e.clone(), g.clone(), c.mul(e, g)];
    let (m1, m2) = (monomials(&gens[0]), monomials(&gens[1]));
    let cols: Vec<Vector<F>> = m1.iter().flat_map(|a| m2.iter().map(|b| c.mul(a, b))).collect();
    let iso = Matrix::from_cols(f, 16, &cols);
    let factors: [Isometry<F>; 2] = [factors[0].clone(), factors[1].clone()];
    let mut src: Option<AlgebraWithInvolution<F>> = None;
    for t in &factors {
        let ci = CliffordAlgebra::new(t.space().clone())?;
        let aw = induced_involution(&ci, t)?.to_algebra_with_involution()?;
        src = Some(match src {
            None => aw,
            Some(s) => s.tensor(&aw)?,
        });
    }
    let dst = j.to_algebra_with_involution()?;
    if !iso_with_involution_check(&src.unwrap(), &dst, &iso) {
        return Err(fail("tensor product of the planes is not isomorphic to C(A)"));
    }
    Ok(InterchangeSplit {
        factors,
        generators: gens,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::quaternion_from_plane;
    use crate::fields::{Gf2k, RatFunc};

    fn gens<F: Field>(c: &CliffordAlgebra<F>) -> Vec<Vector<F>> {
        (0..c.rank()).map(|i| c.basis(1 + i)).collect()
    }

    #[test]
    fn defining_relations() {
        let f = Gf2k::gf2();
        let c = clifford(&QuadSpace::hyperbolic(f)).unwrap();
        let g = gens(&c);
        assert_eq!(c.mul(&g[0], &g[0]), c.zero());
        assert_eq!(c.mul(&g[1], &g[1]), c.zero());
        assert_eq!(c.add_vec(&c.mul(&g[0], &g[1]), &c.mul(&g[1], &g[0])), c.one());

        let r = RatFunc::f2t();
        let t = r.t();
        let c = clifford(&QuadSpace::plane(r, r.one(), t.clone())).unwrap();
        let g = gens(&c);
        let uv = c.mul(&g[0], &g[1]);
        assert_eq!(uv, c.basis(3));
        assert_eq!(c.mul(&uv, &uv), c.add_vec(&uv, &c.scalar(&t)));
        assert!(c.to_algebra().unwrap().is_central());
    }

    #[test]
    fn relations_in_a_skewed_basis() {
        let f = Gf2k::gf4();
        let polar = Matrix::from_rows(
            f,
            vec![vec![0, 1, 2, 3], vec![1, 0, 1, 1], vec![2, 1, 0, 2], vec![3, 1, 2, 0]],
        );
        let space = QuadSpace::new(polar, vec![1, 2, 0, 3]).unwrap();
        let c = clifford(&space).unwrap();
        let g = gens(&c);
        for i in 0..4 {
            assert_eq!(c.mul(&g[i], &g[i]), c.scalar(&space.qvals()[i]));
            for j in 0..4 {
                if i != j {
                    let s = c.add_vec(&c.mul(&g[i], &g[j]), &c.mul(&g[j], &g[i]));
                    assert_eq!(s, c.scalar(space.polar().get(i, j)));
                }
            }
        }
        assert!(ScAlgebra::from_fn(f, 16, c.one(), |i, j| c.mul(&c.basis(i), &c.basis(j))).is_ok());
    }

    #[test]
    fn induced_involutions_on_a_plane() {
        let r = RatFunc::f2t();
        let t = r.t();
        let plane = QuadSpace::plane(r, r.one(), t.clone());
        let c = clifford(&plane).unwrap();
        let g = gens(&c);
        let tu = Isometry::reflection(&plane, &[r.one(), r.zero()]).unwrap();
        let j = induced_involution(&c, &tu).unwrap();
        assert_eq!(j.apply(&g[1]), c.add_vec(&g[1], &g[0]));
        assert_eq!(j.apply(&c.one()), c.one());
        assert_eq!(j.alt_basis().len(), 1);
        assert!(linalg::in_span(r, 4, &j.alt_basis(), &g[0]));
        assert_eq!(j.involution_type(), InvolutionType::Orthogonal);
        assert!(j.discriminant(Budget::default()).unwrap().is_trivial());

        let id = induced_involution(&c, &Isometry::identity(plane.clone())).unwrap();
        let uv = c.basis(3);
        assert_eq!(id.apply(&uv), c.add_vec(&uv, &c.one()));
        assert_eq!(id.involution_type(), InvolutionType::Symplectic);
        assert_eq!(id.discriminant(Budget::default()), Err(Error::SymplecticInvolution));

        let tv = Isometry::reflection(&plane, &[r.zero(), r.one()]).unwrap();
        let jv = induced_involution(&c, &tv).unwrap();
        assert_eq!(jv.discriminant(Budget::default()).unwrap(), r.square_class(&t).unwrap());
        assert_eq!(jv.involution_type(), jv.to_algebra_with_involution().unwrap().involution_type());
    }

    #[test]
    fn plane_quaternion_matches_clifford() {
        let r = RatFunc::f2t();
        let t = r.t();
        for (c0, d0) in [(r.one(), t.clone()), (t.clone(), t.clone()), (r.zero(), t.clone())] {
            let plane = QuadSpace::plane(r, c0, d0);
            let pq = quaternion_from_plane(&plane).unwrap();
            let c = clifford(&plane).unwrap();
            let j = induced_involution(&c, &Isometry::identity(plane.clone())).unwrap();
            let dst = j.to_algebra_with_involution().unwrap();
            assert!(iso_with_involution_check(&pq.quaternion.canonical_involution(), &dst, &pq.iso));
        }
        let pq = quaternion_from_plane(&QuadSpace::plane(r, r.one(), t.clone())).unwrap();
        assert_eq!((pq.quaternion.a(), pq.quaternion.b()), (&t, &r.one()));
        let pq = quaternion_from_plane(&QuadSpace::plane(r, t.clone(), t.clone())).unwrap();
        assert_eq!((pq.quaternion.a(), pq.quaternion.b()), (&r.mul(&t, &t), &t));
    }

    #[test]
    fn fix_type_examples() {
        let r = RatFunc::f2t();
        let plane = QuadSpace::plane(r, r.one(), r.t());
        let tu = Isometry::reflection(&plane, &[r.one(), r.zero()]).unwrap();
        assert_eq!(type_via_fix(&tu).unwrap(), InvolutionType::Orthogonal);
        assert_eq!(type_via_fix(&Isometry::identity(plane)).unwrap(), InvolutionType::Symplectic);
        let f = Gf2k::gf2();
        let hh = hh_interchange(f);
        assert_eq!(type_via_fix(&hh).unwrap(), InvolutionType::Orthogonal);
        assert_eq!(induced_type(&hh).unwrap(), InvolutionType::Orthogonal);
    }

    fn hh_interchange<F: Field>(f: F) -> Isometry<F> {
        let space = QuadSpace::hyperbolic(f).orthogonal_sum(&QuadSpace::hyperbolic(f));
        // Basis (x1, y1, x2, y2): y1 -> y1 + x2, y2 -> y2 + x1.
        let (o, z) = (f.one(), f.zero());
        let m = Matrix::from_rows(
            f,
            vec![
                vec![o.clone(), z.clone(), z.clone(), o.clone()],
                vec![z.clone(), o.clone(), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), o.clone()],
            ],
        );
        Isometry::new(space, m).unwrap()
    }

    #[test]
    fn transpose_criterion() {
        let f = Gf2k::gf2();
        assert!(is_transpose_isomorphic(&hh_interchange(f)).unwrap());
        let p = QuadSpace::plane(f, 1, 1);
        let tu = Isometry::reflection(&p, &[1, 0]).unwrap();
        assert!(is_transpose_isomorphic(&tu.orthogonal_sum(&tu)).unwrap());
        let r = RatFunc::f2t();
        let p = QuadSpace::plane(r, r.one(), r.t());
        let tu = Isometry::reflection(&p, &[r.one(), r.zero()]).unwrap();
        let tv = Isometry::reflection(&p, &[r.zero(), r.one()]).unwrap();
        assert!(!is_transpose_isomorphic(&tv.orthogonal_sum(&tu)).unwrap());
        assert!(is_transpose_isomorphic(&tu.orthogonal_sum(&tu)).unwrap());
    }

    #[test]
    fn rank2_classification() {
        let r = RatFunc::f2t();
        let t = r.t();
        let p = QuadSpace::plane(r, r.one(), t.clone());
        let b = Budget::default();
        assert_eq!(classify_rank2(&Isometry::identity(p.clone()), b).unwrap(), MatrixInvolutionKind::Gamma);
        let tu = Isometry::reflection(&p, &[r.one(), r.zero()]).unwrap();
        assert_eq!(classify_rank2(&tu, b).unwrap(), MatrixInvolutionKind::Transpose);
        let tuv = Isometry::reflection(&p, &[r.one(), r.one()]).unwrap();
        assert_eq!(classify_rank2(&tuv, b).unwrap(), MatrixInvolutionKind::TAlpha(r.to_value(&t)));
        // C(P(t, 1/t)) = [1, t) is a division algebra.
        let pt = QuadSpace::plane(r, t.clone(), r.inv(&t).unwrap());
        assert_eq!(classify_rank2(&Isometry::identity(pt), Budget::with_degree(2)), Err(Error::NotSplit));
    }

    #[test]
    fn interchange_split() {
        let f = Gf2k::gf2();
        let s = split_interchange_block(&hh_interchange(f)).unwrap();
        for t in &s.factors {
            assert!(t.spinor_norm().unwrap().is_trivial());
            assert!(t.space().represents(&1, Budget::default()).is_some());
        }
        let p = QuadSpace::plane(f, 1, 1);
        let tu = Isometry::reflection(&p, &[1, 0]).unwrap();
        assert_eq!(split_interchange_block(&tu.orthogonal_sum(&tu)), Err(Error::NotInterchange));
        assert_eq!(split_interchange_block(&tu), Err(Error::WrongDimension));
    }

    #[test]
    fn interchange_split_in_a_skewed_basis() {
        let r = RatFunc::f2t();
        let t = r.t();
        let hh = hh_interchange(r);
        // Put q(y1) = t, q(y2) = t + 1 and move to another basis.
        let space = QuadSpace::new(hh.space().polar().clone(), vec![r.zero(), t.clone(), r.zero(), r.add(&t, &r.one())]).unwrap();
        let tau = Isometry::new(space, hh.matrix().clone()).unwrap();
        let (o, z) = (r.one(), r.zero());
        let p = Matrix::from_rows(
            r,
            vec![
                vec![o.clone(), t.clone(), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone(), t.clone()],
                vec![o.clone(), z.clone(), z.clone(), o.clone()],
            ],
        );
        let moved = tau.change_basis(&p).unwrap();
        let s = split_interchange_block(&moved).unwrap();
        assert!(s.factors.iter().all(|x| x.spinor_norm().unwrap().is_trivial()));
    }
}
