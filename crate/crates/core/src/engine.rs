//! Decomposition of split tensor products of quaternion algebras with
//! involution, and its Clifford-algebra form.
//!
//! The reported factors are read off the classification invariants: the
//! type of the product and the discriminant of every input. Where the
//! product is small enough, an explicit isomorphism onto the tensor product
//! of the reported matrix involutions is built from a representation
//! `rho: A -> M_N(F)` and the `sigma`-invariant form `H` on `F^N`, and
//! checked.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{classify_rank2, induced_involution, induced_type, split_interchange_block, CliffordAlgebra};
use crate::csa::{
    invariant_form, is_rank_one_idempotent, is_split, iso_with_involution_check_on, kron_representation,
    matrix_involution, sandwich_representation, tensor_vec, AlgebraWithInvolution, InvolutionType,
    MatrixInvolutionKind, Representation, Splitting,
};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::forms::QuadSpace;
use crate::isometry::{restricted_matrix, Isometry, Kind};
use crate::linalg::{self, Matrix, Vector};
use crate::search::Budget;

/// Largest product assembled with full structure constants.
pub const MAX_ASSEMBLED_DIM: usize = 64;
/// Largest product given an explicit isomorphism over a function field.
pub const MAX_EXPLICIT_DIM_FUNCTION: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport<F: Field> {
    pub overall_type: InvolutionType,
    pub factors: Vec<MatrixInvolutionKind>,
    /// `psi: (M_2, s_1) (x) ... (x) (M_2, s_n) -> (A, sigma)` on the tensor
    /// bases, when one was built and certified.
    pub explicit_iso: Option<Matrix<F>>,
    pub notes: Vec<String>,
}

/// `(A_1, s_1) (x) ... (x) (A_n, s_n)`, index `i_1 d^(n-1) + ... + i_n`.
pub fn tensor_all<F: Field>(inputs: &[AlgebraWithInvolution<F>]) -> Result<AlgebraWithInvolution<F>> {
    let (first, rest) = inputs.split_first().ok_or(Error::InvalidAlgebra("empty tensor product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.tensor(x))
}

/// `(M_2, s_1) (x) ... (x) (M_2, s_n)`.
pub fn target_algebra<F: Field>(f: F, factors: &[MatrixInvolutionKind]) -> Result<AlgebraWithInvolution<F>> {
    let parts: Result<Vec<_>> = factors.iter().map(|k| matrix_involution(f, k)).collect();
    tensor_all(&parts?)
}

/// `1 (x) ... (x) E_12 (x) ... (x) 1` and the same with `E_21`, which
/// generate `M_2 (x) ... (x) M_2`.
fn factor_generators<F: Field>(f: F, n: usize) -> Vec<Vector<F>> {
    let one2 = vec![f.one(), f.zero(), f.zero(), f.one()];
    let mut gens = Vec::new();
    for i in 0..n {
        for e in [1, 2] {
            let g = (0..n).fold(vec![f.one()], |acc, k| {
                let part = if k == i { linalg::unit_vec(f, 4, e) } else { one2.clone() };
                tensor_vec(f, &acc, &part)
            });
            gens.push(g);
        }
    }
    gens
}

fn check_inputs<F: Field>(inputs: &[AlgebraWithInvolution<F>]) -> Result<F> {
    let first = inputs.first().ok_or(Error::InvalidAlgebra("empty tensor product".into()))?;
    let f = first.field();
    if inputs.iter().any(|x| x.field() != f) {
        return Err(Error::MixedFields);
    }
    if inputs.iter().any(|x| x.dim() != 4) {
        return Err(Error::InvalidAlgebra("inputs must be quaternion algebras".into()));
    }
    Ok(f)
}

fn kind_alpha<F: Field>(f: F, kind: &MatrixInvolutionKind) -> Result<F::Elem> {
    match kind {
        MatrixInvolutionKind::Transpose => Ok(f.one()),
        MatrixInvolutionKind::TAlpha(a) => f.from_value(a),
        MatrixInvolutionKind::Gamma => Err(Error::SymplecticInvolution),
    }
}

/// Per-input factors from the type of the product.
fn factors_for<F: Field>(inputs: &[AlgebraWithInvolution<F>], ty: InvolutionType, budget: Budget) -> Result<Vec<MatrixInvolutionKind>> {
    inputs
        .iter()
        .map(|x| match ty {
            InvolutionType::Symplectic => Ok(MatrixInvolutionKind::Gamma),
            InvolutionType::Orthogonal => {
                if x.involution_type() != InvolutionType::Orthogonal {
                    return Err(Error::InvariantViolation("orthogonal product with a symplectic factor".into()));
                }
                MatrixInvolutionKind::TAlpha(x.discriminant(budget)?.rep).normalized()
            }
        })
        .collect()
}

/// Symplectic iff some factor is: in characteristic 2, `1 (x) y` is
/// alternating as soon as `1` is, and a product of orthogonal involutions
/// is orthogonal.
fn type_by_factors<F: Field>(inputs: &[AlgebraWithInvolution<F>]) -> InvolutionType {
    if inputs.iter().any(|x| x.involution_type() == InvolutionType::Symplectic) {
        InvolutionType::Symplectic
    } else {
        InvolutionType::Orthogonal
    }
}

enum Certificate<F: Field> {
    /// A representation of the whole product.
    Rep(Representation<F>),
    /// Every factor group split; representations are assembled on demand.
    Groups(Vec<(usize, Representation<F>)>),
    /// Finite base field: every central simple algebra is split.
    Wedderburn,
}

/// Splits consecutive factors one at a time, or two at a time when two
/// neighbours carry the same algebra, where `Q (x) Q = End(Q)` by the
/// sandwich map.
fn group_certificate<F: Field>(
    inputs: &[AlgebraWithInvolution<F>],
    budget: Budget,
    notes: &mut Vec<String>,
) -> Result<Option<Vec<(usize, Representation<F>)>>> {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < inputs.len() {
        let alg = inputs[i].algebra();
        if i + 1 < inputs.len() && inputs[i + 1].algebra() == alg {
            let (qq, rep) = sandwich_representation(alg)?;
            notes.push(format!("factors {} and {}: split by the sandwich map on Q (x) Q", i + 1, i + 2));
            parts.push((qq.dim(), rep));
            i += 2;
            continue;
        }
        match is_split(alg, budget)? {
            Splitting::Split(e) => {
                notes.push(format!("factor {}: split by a rank-one idempotent", i + 1));
                parts.push((4, Representation::from_idempotent(alg, &e)?));
                i += 1;
            }
            Splitting::Unknown => return Ok(None),
        }
    }
    Ok(Some(parts))
}

fn certify<F: Field>(
    inputs: &[AlgebraWithInvolution<F>],
    product: Option<&AlgebraWithInvolution<F>>,
    supplied: Option<&[F::Elem]>,
    budget: Budget,
    notes: &mut Vec<String>,
) -> Result<Certificate<F>> {
    let f = inputs[0].field();
    if let Some(e) = supplied {
        let a = product.ok_or(Error::DimensionBudgetExceeded)?.algebra();
        if e.len() != a.dim() || !is_rank_one_idempotent(a, e) {
            return Err(Error::InvariantViolation("split certificate is not a rank-one idempotent".into()));
        }
        notes.push("split: supplied rank-one idempotent".into());
        return Ok(Certificate::Rep(Representation::from_idempotent(a, e)?));
    }
    let mut group_notes = Vec::new();
    if let Some(parts) = group_certificate(inputs, budget, &mut group_notes)? {
        notes.extend(group_notes);
        return Ok(Certificate::Groups(parts));
    }
    if f.order().is_some() {
        notes.push("split: every central simple algebra over a finite field is split".into());
        return Ok(Certificate::Wedderburn);
    }
    if let Some(p) = product.filter(|p| p.dim() <= 16) {
        let small = Budget {
            max_candidates: budget.max_candidates.min(1 << 12),
            ..budget
        };
        if let Splitting::Split(e) = is_split(p.algebra(), small)? {
            notes.push("split: rank-one idempotent found in the product".into());
            return Ok(Certificate::Rep(Representation::from_idempotent(p.algebra(), &e)?));
        }
    }
    Err(Error::NotSplitCertified)
}

/// The decomposition of a split product of quaternion algebras with
/// involution into `(M_2(F), s_i)` with `s_i = gamma` in the symplectic case
/// and `s_i = T_{alpha_i}`, `alpha_i` the discriminant of the `i`-th input,
/// in the orthogonal case.
pub fn shapiro_decompose<F: Field>(
    inputs: &[AlgebraWithInvolution<F>],
    split_certificate: Option<&[F::Elem]>,
    budget: Budget,
) -> Result<DecompositionReport<F>> {
    let f = check_inputs(inputs)?;
    let n = inputs.len();
    let mut notes = Vec::new();
    let product = if n <= 3 { Some(tensor_all(inputs)?) } else { None };
    let overall_type = match &product {
        Some(p) => p.involution_type(),
        None => {
            notes.push("type: read off the factors".into());
            type_by_factors(inputs)
        }
    };
    if overall_type != type_by_factors(inputs) {
        return Err(Error::InvariantViolation("type of the product disagrees with the factors".into()));
    }
    let factors = factors_for(inputs, overall_type, budget)?;
    let cert = certify(inputs, product.as_ref(), split_certificate, budget, &mut notes)?;
    let limit = if f.order().is_some() { MAX_ASSEMBLED_DIM } else { MAX_EXPLICIT_DIM_FUNCTION };
    let explicit_iso = match (&product, cert) {
        (Some(p), Certificate::Rep(rep)) if p.dim() <= limit => Some(explicit_iso(inputs, p, &rep, &factors)?),
        (Some(p), Certificate::Groups(parts)) if p.dim() <= limit => {
            let rep = kron_representation(f, &parts);
            rep.check(p.algebra())?;
            Some(explicit_iso(inputs, p, &rep, &factors)?)
        }
        _ => None,
    };
    notes.push(match explicit_iso {
        Some(_) => "explicit isomorphism certified on generators".into(),
        None => "invariant-certified: no explicit isomorphism built".into(),
    });
    Ok(DecompositionReport {
        overall_type,
        factors,
        explicit_iso,
        notes,
    })
}

/// `psi(X) = rho^-1(P X P^-1)` with `P^T H P = c G`, where `G` is the Gram
/// matrix of the target involution on `F^N`.
///
/// Orthogonal case: with `u_i` alternating in the `i`-th factor and
/// `u_i^2 = alpha_i`, the vectors `p_S = rho(u_S) p_0` are pairwise
/// `H`-orthogonal since `u_S u_T` is alternating for `S != T`, and
/// `H(p_S, p_S) = prod_{i in S} alpha_i H(p_0, p_0)`.
/// Symplectic case: a symplectic basis of `H` placed on the antidiagonal.
fn explicit_iso<F: Field>(
    inputs: &[AlgebraWithInvolution<F>],
    product: &AlgebraWithInvolution<F>,
    rep: &Representation<F>,
    factors: &[MatrixInvolutionKind],
) -> Result<Matrix<F>> {
    let f = product.field();
    let n = inputs.len();
    let size = rep.size();
    let bad = |m: &str| Error::InvariantViolation(m.into());
    let h = invariant_form(product, rep)?;
    let mut cols: Vec<Option<Vector<F>>> = vec![None; size];
    if factors.iter().all(|k| *k == MatrixInvolutionKind::Gamma) {
        let space = QuadSpace::new(h.clone(), linalg::zero_vec(f, size))?;
        let all: Vec<Vector<F>> = (0..size).map(|i| linalg::unit_vec(f, size, i)).collect();
        let pairs = space.symplectic_pairs(&all)?;
        let tops = (0..size).filter(|a| a & (size >> 1) == 0);
        for (a, (x, y)) in tops.zip(pairs) {
            cols[a] = Some(x);
            cols[a ^ (size - 1)] = Some(y);
        }
    } else {
        let mut us = Vec::with_capacity(n);
        for (x, kind) in inputs.iter().zip(factors) {
            let alpha = kind_alpha(f, kind)?;
            let alt = x.alt_basis();
            let r = alt.first().ok_or(bad("no alternating element"))?;
            let r2 = x.algebra().as_scalar(&x.algebra().mul(r, r)).ok_or(bad("alternating square is not scalar"))?;
            let s = f.div(&alpha, &r2).and_then(|q| f.sqrt(&q)).ok_or(bad("discriminant mismatch"))?;
            us.push((linalg::vscale(f, &s, r), f.inv(&alpha).ok_or(Error::ZeroAlpha)?));
        }
        let k = (0..size).find(|&k| !f.is_zero(h.get(k, k))).ok_or(bad("invariant form is alternating"))?;
        let p0 = linalg::unit_vec(f, size, k);
        for (s, col) in cols.iter_mut().enumerate() {
            let mut u = vec![f.one()];
            let mut c = f.one();
            for (i, (ui, ainv)) in us.iter().enumerate() {
                if s >> (n - 1 - i) & 1 == 1 {
                    u = tensor_vec(f, &u, ui);
                    c = f.mul(&c, ainv);
                } else {
                    u = tensor_vec(f, &u, &inputs[i].algebra().one());
                }
            }
            *col = Some(linalg::vscale(f, &c, &rep.apply(&u).apply(&p0)));
        }
    }
    let cols: Option<Vec<Vector<F>>> = cols.into_iter().collect();
    let p = Matrix::from_cols(f, size, &cols.ok_or(bad("incomplete symplectic basis"))?);
    let pinv = p.inverse().ok_or(bad("change of basis is singular"))?;
    let target = target_algebra(f, factors)?;
    let images: Option<Vec<Vector<F>>> = (0..target.dim())
        .map(|idx| {
            let (mut r, mut c) = (0, 0);
            for i in 0..n {
                let e = (idx >> (2 * (n - 1 - i))) & 3;
                r = 2 * r + e / 2;
                c = 2 * c + e % 2;
            }
            let mut m = Matrix::zeros(f, size, size);
            m.set(r, c, f.one());
            rep.preimage(&p.mul(&m).mul(&pinv))
        })
        .collect();
    let psi = Matrix::from_cols(f, product.dim(), &images.ok_or(bad("representation is not onto"))?);
    if !iso_with_involution_check_on(&target, product, &psi, &factor_generators(f, n)) {
        return Err(bad("explicit isomorphism failed its check"));
    }
    Ok(psi)
}

/// Recomputes the type and the per-factor discriminants and replays the
/// explicit isomorphism when present.
pub fn verify_report<F: Field>(inputs: &[AlgebraWithInvolution<F>], report: &DecompositionReport<F>, budget: Budget) -> bool {
    let Ok(f) = check_inputs(inputs) else {
        return false;
    };
    if report.factors.len() != inputs.len() {
        return false;
    }
    let product = (inputs.len() <= 3).then(|| tensor_all(inputs)).transpose();
    let Ok(product) = product else {
        return false;
    };
    let ty = product.as_ref().map_or_else(|| type_by_factors(inputs), |p| p.involution_type());
    if ty != report.overall_type {
        return false;
    }
    match ty {
        InvolutionType::Symplectic => {
            if report.factors.iter().any(|k| *k != MatrixInvolutionKind::Gamma) {
                return false;
            }
        }
        InvolutionType::Orthogonal => {
            let Ok(expected) = factors_for(inputs, ty, budget) else {
                return false;
            };
            let normalized: Result<Vec<_>> = report.factors.iter().map(|k| k.normalized()).collect();
            if normalized.as_ref() != Ok(&expected) {
                return false;
            }
        }
    }
    match (&report.explicit_iso, &product) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(psi), Some(p)) => match target_algebra(f, &report.factors) {
            Ok(target) => iso_with_involution_check_on(&target, p, psi, &factor_generators(f, inputs.len())),
            Err(_) => false,
        },
    }
}

/// A vector of `span(basis)` with `q = 1`, searched in the reduced echelon
/// basis of the span and then in the given basis.
fn unit_vector<F: Field>(space: &QuadSpace<F>, basis: &[Vector<F>], budget: Budget) -> Option<Vector<F>> {
    let f = space.field();
    let echelon = linalg::span_basis(f, space.dim(), basis);
    [echelon, basis.to_vec()].into_iter().find_map(|b| {
        let x = space.restrict(&b).represents(&f.one(), budget)?;
        Some(x.iter().zip(&b).fold(linalg::zero_vec(f, space.dim()), |acc, (c, v)| linalg::axpy(f, &acc, c, v)))
    })
}

/// `(C(V), J_tau)` as a tensor product of quaternion algebras with involution:
/// one plane per symplectic pair of the fixed summand (with `J_id`), one per
/// reflection plane, and two per interchange block. Planes are rebased on a
/// vector with `q = 1` when one is found, so that `1 + e_1` is a zero divisor.
pub fn quaternion_factorization<F: Field>(tau: &Isometry<F>, budget: Budget) -> Result<Vec<AlgebraWithInvolution<F>>> {
    let f = tau.field();
    let d = tau.wiitala_decompose()?;
    let space = tau.space();
    let plane = |basis: &[Vector<F>]| -> Result<AlgebraWithInvolution<F>> {
        let mut basis = basis.to_vec();
        if let Some(x) = unit_vector(space, &basis, budget) {
            let y = if f.is_zero(&space.b(&x, &basis[0])) { basis[1].clone() } else { basis[0].clone() };
            basis = vec![x, y];
        }
        let sub = space.restrict(&basis);
        let t = Isometry::new(sub.clone(), restricted_matrix(tau, &basis)?)?;
        induced_involution(&CliffordAlgebra::new(sub)?, &t)?.to_algebra_with_involution()
    };
    let mut out = Vec::new();
    for (x, y) in space.symplectic_pairs(&d.w.basis)? {
        out.push(plane(&[x, y])?);
    }
    for p in &d.planes {
        out.push(plane(&p.basis())?);
    }
    for b in &d.blocks {
        let basis = b.basis();
        let sub = space.restrict(&basis);
        let t = Isometry::new(sub, restricted_matrix(tau, &basis)?)?;
        for e in split_interchange_block(&t)?.factors {
            out.push(induced_involution(&CliffordAlgebra::new(e.space().clone())?, &e)?.to_algebra_with_involution()?);
        }
    }
    Ok(out)
}

/// The Clifford form of the decomposition, with `m = dim fix - dim V / 2`:
/// reflections give `T_{q(u_i)}` when `m = 0`, interchanges give `t`, and
/// `m != 0` gives `gamma` throughout.
pub fn clifford_decompose<F: Field>(tau: &Isometry<F>, budget: Budget) -> Result<DecompositionReport<F>> {
    if !tau.is_involution() {
        return Err(Error::NotInvolution);
    }
    let f = tau.field();
    let space = tau.space();
    let n = tau.dim();
    let d = tau.wiitala_decompose()?;
    let m = tau.fix_subspace().dim() as isize - (n / 2) as isize;
    let mut notes = Vec::new();

    let mut planes: Vec<Vec<Vector<F>>> = space.symplectic_pairs(&d.w.basis)?.into_iter().map(|(x, y)| vec![x, y]).collect();
    planes.extend(d.planes.iter().map(|p| p.basis()));
    let unsplit = planes
        .iter()
        .position(|p| unit_vector(space, p, budget).is_none());
    match unsplit {
        None => notes.push("split: every plane represents 1; interchange blocks are split".into()),
        Some(_) if f.order().is_some() => notes.push("split: every central simple algebra over a finite field is split".into()),
        Some(_) => return Err(Error::NotSplitCertified),
    }

    let (branch_type, factors) = if m != 0 {
        notes.push(format!("branch (c): m = {m}"));
        (InvolutionType::Symplectic, vec![MatrixInvolutionKind::Gamma; n / 2])
    } else if d.kind == Kind::Interchanging {
        notes.push("branch (b): interchanging".into());
        (InvolutionType::Orthogonal, vec![MatrixInvolutionKind::Transpose; n / 2])
    } else {
        notes.push("branch (a): reflectional".into());
        let ks: Result<Vec<_>> = d
            .planes
            .iter()
            .map(|p| MatrixInvolutionKind::TAlpha(f.to_value(&space.q(&p.u))).normalized())
            .collect();
        (InvolutionType::Orthogonal, ks?)
    };
    if factors.len() != n / 2 {
        return Err(Error::InvariantViolation("factor count differs from dim V / 2".into()));
    }
    match induced_type(tau) {
        Ok(ty) if ty != branch_type => return Err(Error::InvariantViolation("induced type disagrees with the branch".into())),
        Ok(_) => notes.push("type: checked in C(V)".into()),
        Err(Error::DimensionBudgetExceeded) => notes.push("type: C(V) too large, read off dim fix".into()),
        Err(e) => return Err(e),
    }
    // Each reflection plane on its own must agree with its factor.
    for p in &d.planes {
        let basis = linalg::span_basis(f, n, &p.basis());
        let t = Isometry::new(space.restrict(&basis), restricted_matrix(tau, &basis)?)?;
        if m == 0 {
            match classify_rank2(&t, budget) {
                Ok(k) if !factors.contains(&k) => {
                    return Err(Error::InvariantViolation("plane classification disagrees".into()));
                }
                Ok(_) | Err(Error::NotSplit) => {}
                Err(e) => return Err(e),
            }
        }
    }
    notes.push("invariant-certified: no explicit isomorphism built".into());
    Ok(DecompositionReport {
        overall_type: branch_type,
        factors,
        explicit_iso: None,
        notes,
    })
}

/// Multisets of factors agree.
pub fn same_factors(a: &[MatrixInvolutionKind], b: &[MatrixInvolutionKind]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let key = |k: &MatrixInvolutionKind| match k {
        MatrixInvolutionKind::Transpose => (0, None),
        MatrixInvolutionKind::TAlpha(v) => (1, Some(v.clone())),
        MatrixInvolutionKind::Gamma => (2, None),
    };
    a.sort_by_key(key);
    b.sort_by_key(key);
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::Quaternion;
    use crate::fields::{Gf2k, RatFunc};

    fn plane_involution<F: Field>(f: F, c: F::Elem, d: F::Elem, along: Option<[u64; 2]>) -> Isometry<F> {
        let e = QuadSpace::plane(f, c, d);
        match along {
            None => Isometry::identity(e),
            Some(u) => Isometry::reflection(&e, &[f.from_u64(u[0]), f.from_u64(u[1])]).unwrap(),
        }
    }

    fn hh_interchange<F: Field>(f: F) -> Isometry<F> {
        let h = QuadSpace::hyperbolic(f);
        let space = h.orthogonal_sum(&h);
        let mut m = Matrix::identity(f, 4);
        m.set(2, 1, f.one());
        m.set(0, 3, f.one());
        Isometry::new(space, m).unwrap()
    }

    fn clifford_factor<F: Field>(tau: &Isometry<F>) -> AlgebraWithInvolution<F> {
        let c = CliffordAlgebra::new(tau.space().clone()).unwrap();
        induced_involution(&c, tau).unwrap().to_algebra_with_involution().unwrap()
    }

    fn talpha<F: Field>(f: F, a: &F::Elem) -> MatrixInvolutionKind {
        MatrixInvolutionKind::TAlpha(f.to_value(a)).normalized().unwrap()
    }

    #[test]
    fn single_reflection_plane() {
        let f = RatFunc::f2t();
        let tau = plane_involution(f, f.one(), f.t(), Some([0, 1]));
        let input = [clifford_factor(&tau)];
        let r = shapiro_decompose(&input, None, Budget::default()).unwrap();
        assert_eq!(r.overall_type, InvolutionType::Orthogonal);
        assert_eq!(r.factors, vec![talpha(f, &f.t())]);
        assert!(r.explicit_iso.is_some());
        assert!(verify_report(&input, &r, Budget::default()));
    }

    #[test]
    fn canonical_involutions_give_gamma() {
        let f = RatFunc::f2t();
        let q = Quaternion::new(f, f.t(), f.one()).unwrap();
        let g = q.canonical_involution();
        let input = [g.clone(), g];
        let r = shapiro_decompose(&input, None, Budget::default()).unwrap();
        assert_eq!(r.overall_type, InvolutionType::Symplectic);
        assert_eq!(r.factors, vec![MatrixInvolutionKind::Gamma; 2]);
        assert!(r.explicit_iso.is_some());
        assert!(verify_report(&input, &r, Budget::default()));
        let mut bad = r.clone();
        bad.factors[1] = MatrixInvolutionKind::Transpose;
        assert!(!verify_report(&input, &bad, Budget::default()));
    }

    #[test]
    fn twin_with_distinct_discriminants() {
        let f = RatFunc::f2t();
        let t = f.t();
        let t1 = f.add(&t, &f.one());
        let q = Quaternion::new(f, t.clone(), f.mul(&t, &t1)).unwrap();
        let s1 = q.orthogonal_with_disc(&t, Budget::default()).unwrap();
        let s2 = q.orthogonal_with_disc(&t1, Budget::default()).unwrap();
        let input = [s1, s2];
        let r = shapiro_decompose(&input, None, Budget::default()).unwrap();
        assert_eq!(r.overall_type, InvolutionType::Orthogonal);
        assert_eq!(r.factors, vec![talpha(f, &t), talpha(f, &t1)]);
        assert!(r.notes.iter().any(|n| n.contains("sandwich")));
        assert!(r.explicit_iso.is_some());
        assert!(verify_report(&input, &r, Budget::default()));
        // t (t + 1) is not a square, so this changes the class of the first factor.
        let mut bad = r.clone();
        bad.factors[0] = talpha(f, &f.mul(&t, &f.mul(&t, &t1)));
        assert!(!verify_report(&input, &bad, Budget::default()));
        bad.explicit_iso = None;
        assert!(!verify_report(&input, &bad, Budget::default()));
    }

    #[test]
    fn three_factors_over_gf4() {
        let f = Gf2k::gf4();
        let q = Quaternion::new(f, 2, 3).unwrap();
        let o = q.orthogonal_with_disc(&1, Budget::default()).unwrap();
        let input = [o.clone(), o.clone(), o];
        let r = shapiro_decompose(&input, None, Budget::default()).unwrap();
        assert_eq!(r.factors, vec![MatrixInvolutionKind::Transpose; 3]);
        assert!(r.explicit_iso.is_some());
        assert!(verify_report(&input, &r, Budget::default()));
    }

    #[test]
    fn rejects_mixed_and_uncertified() {
        let f = RatFunc::f2t();
        let g2 = Gf2k::gf2();
        let a = Quaternion::new(g2, 1, 1).unwrap().canonical_involution();
        let b = Quaternion::new(Gf2k::gf4(), 1, 1).unwrap().canonical_involution();
        assert_eq!(shapiro_decompose(&[a, b], None, Budget::default()).unwrap_err(), Error::MixedFields);
        let d = Quaternion::new(f, f.one(), f.t()).unwrap().canonical_involution();
        let e = Quaternion::new(f, f.t(), f.one()).unwrap().canonical_involution();
        let small = Budget { degree_bound: 1, max_candidates: 1 << 10 };
        assert_eq!(shapiro_decompose(&[d, e], None, small).unwrap_err(), Error::NotSplitCertified);
    }

    #[test]
    fn supplied_certificate() {
        let f = Gf2k::gf2();
        let t = matrix_involution(f, &MatrixInvolutionKind::Transpose).unwrap();
        let mut e = vec![0u8; 16];
        e[0] = 1;
        let r = shapiro_decompose(&[t.clone(), t.clone()], Some(&e), Budget::default()).unwrap();
        assert_eq!(r.factors, vec![MatrixInvolutionKind::Transpose; 2]);
        assert!(r.explicit_iso.is_some());
        e[1] = 1;
        e[0] = 0;
        assert!(shapiro_decompose(&[t.clone(), t], Some(&e), Budget::default()).is_err());
    }

    #[test]
    fn clifford_branches() {
        let f = Gf2k::gf2();
        let r = plane_involution(f, 1, 1, Some([1, 0]));
        let tau = r.orthogonal_sum(&r);
        let rep = clifford_decompose(&tau, Budget::default()).unwrap();
        assert_eq!(rep.factors, vec![MatrixInvolutionKind::Transpose; 2]);
        assert!(rep.notes.iter().any(|n| n.contains("(a)")));

        let rep = clifford_decompose(&hh_interchange(f), Budget::default()).unwrap();
        assert_eq!(rep.factors, vec![MatrixInvolutionKind::Transpose; 2]);
        assert!(rep.notes.iter().any(|n| n.contains("(b)")));

        let id = Isometry::identity(tau.space().clone());
        let rep = clifford_decompose(&id, Budget::default()).unwrap();
        assert_eq!(rep.overall_type, InvolutionType::Symplectic);
        assert_eq!(rep.factors, vec![MatrixInvolutionKind::Gamma; 2]);
    }

    #[test]
    fn clifford_reflections_over_f2t() {
        let f = RatFunc::f2t();
        let t = f.t();
        let a = plane_involution(f, f.one(), t.clone(), Some([0, 1]));
        let b = plane_involution(f, f.one(), f.add(&t, &f.one()), Some([0, 1]));
        let tau = a.orthogonal_sum(&b);
        let rep = clifford_decompose(&tau, Budget::default()).unwrap();
        let expected = vec![talpha(f, &t), talpha(f, &f.add(&t, &f.one()))];
        assert!(same_factors(&rep.factors, &expected));
        let parts = quaternion_factorization(&tau, Budget::default()).unwrap();
        let other = shapiro_decompose(&parts, None, Budget::default()).unwrap();
        assert!(same_factors(&rep.factors, &other.factors));
    }

    #[test]
    fn engines_agree_on_interchange_and_identity() {
        let f = Gf2k::gf2();
        for tau in [hh_interchange(f), Isometry::identity(hh_interchange(f).space().clone())] {
            let rep = clifford_decompose(&tau, Budget::default()).unwrap();
            let parts = quaternion_factorization(&tau, Budget::default()).unwrap();
            assert_eq!(parts.len(), 2);
            let other = shapiro_decompose(&parts, None, Budget::default()).unwrap();
            assert_eq!(rep.overall_type, other.overall_type);
            assert!(same_factors(&rep.factors, &other.factors));
            assert!(other.explicit_iso.is_some());
        }
    }
}
