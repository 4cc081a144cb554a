//! Checks of the lemmas on symmetric matrices, alternating elements,
//! adjoint involutions, fixed spaces and metabolic involutions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{all_vectors, random_unit, OracleReport};
use crate::bitmat::SmallBitMatrix;
use crate::csa::{adjoint_involution, AlgebraWithInvolution};
use crate::error::{Error, Result};
use crate::fields::{Field, Gf2k};
use crate::forms::{QuadSpace, SymBilForm};
use crate::isometry::Isometry;
use crate::linalg::{self, Matrix, Vector};
use crate::search::Budget;

/// Symmetric `n x n` matrices with `A^2 = c` have `c` a square, witnessed
/// by `c = (a_11 + ... + a_1n)^2`.
pub fn check_totimes<F: Field>(f: F, n: usize, budget: Budget) -> Result<OracleReport> {
    let mut report = OracleReport::new(
        "totimes: A^T = A and A^2 in F imply A^2 in F^2",
        format!("all symmetric {n}x{n} matrices over {}", f.desc()),
    );
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut scalar_squares = 0u64;
    for entries in all_vectors(f, pairs.len(), budget)? {
        let mut a = Matrix::zeros(f, n, n);
        for ((i, j), x) in pairs.iter().zip(&entries) {
            a.set(*i, *j, x.clone());
            a.set(*j, *i, x.clone());
        }
        let sq = a.mul(&a);
        let c = sq.get(0, 0).clone();
        let bad = if sq == Matrix::identity(f, n).scale(&c) {
            scalar_squares += 1;
            let w = f.sum(a.row(0).iter());
            (f.square(&w) != c || !f.is_square(&c)).then(|| format!("{a:?}: A^2 = {c:?}"))
        } else {
            None
        };
        report.record(bad);
    }
    report.notes.push(format!("{scalar_squares} of them have a scalar square"));
    Ok(report)
}

/// The involutions `ad_G` on `M_2(GF(2))` by their Gram matrices, bit
/// `2 r + c` for entry `(r, c)`.
const M2_FORMS: [(&str, u64); 4] = [("t", 0b1001), ("gamma", 0b0110), ("ad[1 1; 1 0]", 0b0111), ("ad[0 1; 1 1]", 0b1110)];

fn is_alternating_gram(g: u64) -> bool {
    g & 0b1001 == 0
}

fn bit_inverse(m: SmallBitMatrix) -> SmallBitMatrix {
    let n = m.size();
    let id = SmallBitMatrix::identity(n);
    (0..1u64 << (n * n))
        .map(|b| SmallBitMatrix::from_bits(n, b))
        .find(|x| m.mul(x) == id)
        .expect("Gram matrices are invertible")
}

fn bit_kron(a: SmallBitMatrix, b: SmallBitMatrix) -> SmallBitMatrix {
    let mut bits = 0u64;
    for r in 0..4 {
        for c in 0..4 {
            if a.get(r / 2, c / 2) && b.get(r % 2, c % 2) {
                bits |= 1 << (4 * r + c);
            }
        }
    }
    SmallBitMatrix::from_bits(4, bits)
}

/// `X -> G^-1 X^T G`.
#[derive(Clone, Copy)]
struct BitAdjoint {
    g: SmallBitMatrix,
    ginv: SmallBitMatrix,
}

impl BitAdjoint {
    fn new(g: SmallBitMatrix) -> Self {
        BitAdjoint { g, ginv: bit_inverse(g) }
    }

    fn kron(&self, other: &Self) -> Self {
        BitAdjoint {
            g: bit_kron(self.g, other.g),
            ginv: bit_kron(self.ginv, other.ginv),
        }
    }

    fn apply(&self, x: SmallBitMatrix) -> SmallBitMatrix {
        self.ginv.mul(&x.transpose()).mul(&self.g)
    }

    fn alt(&self, x: SmallBitMatrix) -> u64 {
        x.bits() ^ self.apply(x).bits()
    }
}

/// `alt(B (x) C) cap (B (x) 1) = alt(B) (x) 1` exactly when the involution on
/// `C` is orthogonal, over `GF(2)` with `B`, `C` from the four involutions of
/// `M_2(GF(2))`.
pub fn check_discq() -> OracleReport {
    let mut report = OracleReport::new(
        "discq: alt(A) cap B = alt(B) iff the involution on C is orthogonal",
        "B, C in {t, gamma, ad[1 1; 1 0], ad[0 1; 1 1]} over GF(2)".into(),
    );
    let one2 = SmallBitMatrix::identity(2);
    for (bname, bg) in M2_FORMS {
        for (cname, cg) in M2_FORMS {
            let sb = BitAdjoint::new(SmallBitMatrix::from_bits(2, bg));
            let sc = BitAdjoint::new(SmallBitMatrix::from_bits(2, cg));
            let sa = sb.kron(&sc);
            let alt_a: BTreeSet<u64> = (0..1u64 << 16).map(|x| sa.alt(SmallBitMatrix::from_bits(4, x))).collect();
            let alt_b: BTreeSet<u64> = (0..16).map(|x| sb.alt(SmallBitMatrix::from_bits(2, x))).collect();
            let meet: BTreeSet<u64> = (0..16u64)
                .filter(|&b| alt_a.contains(&bit_kron(SmallBitMatrix::from_bits(2, b), one2).bits()))
                .collect();
            let c_orthogonal = !is_alternating_gram(cg);
            let mut bad: Vec<String> = Vec::new();
            if !alt_b.is_subset(&meet) {
                bad.push("alt(B) (x) 1 is not in alt(A)".into());
            }
            if (meet == alt_b) != c_orthogonal {
                bad.push(format!("equality is {} but C is {}", meet == alt_b, if c_orthogonal { "orthogonal" } else { "symplectic" }));
            }
            if !c_orthogonal && !is_alternating_gram(bg) {
                let witness = alt_a.contains(&SmallBitMatrix::identity(4).bits()) && !alt_b.contains(&one2.bits());
                if !witness {
                    bad.push("1 (x) 1 does not exhibit the failure".into());
                }
            }
            if !c_orthogonal && is_alternating_gram(bg) {
                let extra: Vec<u64> = meet.difference(&alt_b).copied().collect();
                report.notes.push(format!("B = {bname}, C = {cname}: 1 is in alt(B); {} elements of alt(A) cap B lie outside alt(B)", extra.len()));
            }
            let bad = (!bad.is_empty()).then(|| format!("B = {bname}, C = {cname}: {}", bad.join("; ")));
            report.record(bad);
        }
    }
    report
}

fn pow(f: Gf2k, x: u8, e: usize) -> u8 {
    (0..e).fold(1, |acc, _| f.mul_u8(acc, x))
}

/// With `B` diagonal over the subfield `F` of `K`, `ad_B` maps every
/// elementary matrix of `M_n(F)` back into `M_n(F)`.
pub fn check_ad(small: Gf2k, big: Gf2k, n: usize) -> Result<OracleReport> {
    let q = small.size();
    let sub: Vec<u8> = (0..big.size() as u16).map(|x| x as u8).filter(|&x| pow(big, x, q) == x).collect();
    if sub.len() != q {
        return Err(Error::UnsupportedField(format!("{} is not a subfield of {}", small.desc(), big.desc())));
    }
    let mut report = OracleReport::new(
        "ad: ad_b(End_F(V)) = End_F(V) for b defined over F",
        format!("diagonal {n}x{n} forms over {} inside {}", small.desc(), big.desc()),
    );
    let leaves = |entries: &[u8]| -> Result<Vec<usize>> {
        let aw = adjoint_involution(&SymBilForm::diagonal(big, entries))?;
        Ok((0..n * n)
            .filter(|&i| aw.apply(&linalg::unit_vec(big, n * n, i)).iter().any(|x| !sub.contains(x)))
            .collect())
    };
    let units: Vec<u8> = sub.iter().copied().filter(|&x| x != 0).collect();
    let total = units.len().pow(n as u32);
    for code in 0..total {
        let entries: Vec<u8> = (0..n).map(|i| units[code / units.len().pow(i as u32) % units.len()]).collect();
        let out = leaves(&entries)?;
        report.record((!out.is_empty()).then(|| format!("B = diag{entries:?} sends E_{out:?} outside M_{n}(F)")));
    }
    if let Some(&g) = (1..big.size() as u16).map(|x| x as u8).find(|x| !sub.contains(x)).as_ref() {
        let mut entries = vec![1u8; n];
        entries[n - 1] = g;
        if leaves(&entries)?.is_empty() {
            report.record(Some(format!("control B = diag{entries:?} keeps M_{n}(F)")));
        } else {
            report.notes.push(format!("control: B = diag{entries:?} with an entry outside F leaves M_{n}(F)"));
        }
    }
    Ok(report)
}

/// A reflection of `P(c, d)` along `e_1`.
fn reflection_plane<F: Field>(f: F, rng: &mut ChaCha8Rng, degree_bound: u32) -> (Isometry<F>, F::Elem) {
    let mut c = random_unit(f, rng, degree_bound);
    if rng.next_u32() % 2 == 0 {
        c = f.square(&c);
    }
    let plane = QuadSpace::plane(f, c.clone(), f.random(rng, degree_bound));
    let r = Isometry::reflection(&plane, &[f.one(), f.zero()]).expect("q(e_1) != 0");
    (r, c)
}

/// For `tau = tau_1 + ... + tau_n` a sum of plane reflections, every
/// `theta(tau_i)` is trivial iff `q(x)` is a square on `fix(V, tau)`.
/// The fixed space is taken in a random basis, and `q` is evaluated on
/// every vector with coefficients in `{0, 1, t}` over the kernel basis.
pub fn check_theta<F: Field>(f: F, count: usize, seed: u64, degree_bound: u32) -> Result<OracleReport> {
    let mut report = OracleReport::new(
        "theta: all theta(tau_i) trivial iff q(fix(V, tau)) lies in F^2",
        format!("{count} random sums of 1 to 3 reflection planes over {}", f.desc()),
    );
    report.seed = Some(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<F::Elem> = f.elements(1).into_iter().take(3).collect();
    let (mut trivial, mut nontrivial) = (0u64, 0u64);
    for k in 0..count {
        let planes = 1 + (rng.next_u32() % 3) as usize;
        let parts: Vec<(Isometry<F>, F::Elem)> = (0..planes).map(|_| reflection_plane(f, &mut rng, degree_bound)).collect();
        let lhs = parts.iter().all(|(_, c)| f.is_square(c));
        let tau = parts[1..].iter().fold(parts[0].0.clone(), |acc, (p, _)| acc.orthogonal_sum(p));
        let dim = tau.dim();
        let p = loop {
            let p = Matrix::from_fn(f, dim, dim, |_, _| f.random(&mut rng, 1));
            if p.is_invertible() {
                break p;
            }
        };
        let tau = tau.change_basis(&p)?;
        let fix = tau.matrix().add(&Matrix::identity(f, dim)).kernel();
        let mut rhs = true;
        let total = (coeffs.len() as u64).pow(fix.len() as u32);
        for code in 0..total {
            let mut x = linalg::zero_vec(f, dim);
            let mut c = code;
            for v in &fix {
                x = linalg::axpy(f, &x, &coeffs[(c % coeffs.len() as u64) as usize], v);
                c /= coeffs.len() as u64;
            }
            rhs &= f.is_square(&tau.space().q(&x));
        }
        let d = tau.wiitala_decompose()?;
        let library = d.planes.iter().all(|pl| f.is_square(&tau.space().q(&pl.u)));
        if lhs {
            trivial += 1;
        } else {
            nontrivial += 1;
        }
        let bad = if lhs != rhs {
            Some(format!("instance {k}: theta trivial = {lhs}, q(fix) in F^2 = {rhs}"))
        } else if library != lhs {
            Some(format!("instance {k}: Wiitala planes give theta trivial = {library}"))
        } else {
            None
        };
        report.record(bad);
    }
    report.notes.push(format!("{trivial} instances with every theta trivial, {nontrivial} without"));
    Ok(report)
}

fn span_vectors<F: Field>(f: F, basis: &[Vector<F>], n: usize, elems: &[F::Elem]) -> Vec<Vector<F>> {
    let q = elems.len() as u64;
    (0..q.pow(basis.len() as u32))
        .map(|mut code| {
            basis.iter().fold(linalg::zero_vec(f, n), |acc, v| {
                let c = &elems[(code % q) as usize];
                code /= q;
                linalg::axpy(f, &acc, c, v)
            })
        })
        .collect()
}

/// `tau` restricted to `span(basis)` is a reflection `tau_u`.
fn is_reflection_on<F: Field>(space: &QuadSpace<F>, tau: &Isometry<F>, vecs: &[Vector<F>]) -> bool {
    let f = space.field();
    vecs.iter().any(|u| {
        let Some(qinv) = f.inv(&space.q(u)) else { return false };
        vecs.iter().all(|v| {
            let c = f.mul(&space.b(v, u), &qinv);
            tau.apply(v) == linalg::axpy(f, v, &c, u)
        })
    })
}

/// `tau` is `tau_1 + tau_2` for reflections of a regular `tau`-stable plane
/// `E` and of `E^perp`.
fn sum_of_two_reflections<F: Field>(tau: &Isometry<F>, vecs: &[Vector<F>], elems: &[F::Elem]) -> bool {
    let space = tau.space();
    let f = space.field();
    let n = space.dim();
    let mut seen: BTreeSet<Vec<Vector<F>>> = BTreeSet::new();
    for x in vecs {
        for y in vecs {
            let e = linalg::span_basis(f, n, &[x.clone(), y.clone()]);
            if e.len() != 2 || f.is_zero(&space.b(&e[0], &e[1])) || !seen.insert(e.clone()) {
                continue;
            }
            if !e.iter().all(|v| linalg::in_span(f, n, &e, &tau.apply(v))) {
                continue;
            }
            let perp: Vec<Vector<F>> = vecs.iter().filter(|v| e.iter().all(|w| f.is_zero(&space.b(v, w)))).cloned().collect();
            let perp_basis = linalg::span_basis(f, n, &perp);
            if perp_basis.len() != 2 || f.is_zero(&space.b(&perp_basis[0], &perp_basis[1])) {
                continue;
            }
            if is_reflection_on(space, tau, &span_vectors(f, &e, n, elems)) && is_reflection_on(space, tau, &perp) {
                return true;
            }
        }
    }
    false
}

/// On every 4-dimensional regular space over a finite field, an involution
/// has a 2-dimensional fixed space iff it is an interchange (fixed space
/// totally singular) or a sum of two plane reflections, both found by
/// exhaustive search.
pub fn check_int4<F: Field>(f: F, budget: Budget) -> Result<OracleReport> {
    let mut report = OracleReport::new(
        "int4: dim fix = 2 iff tau is an interchange or a sum of two reflections",
        format!("every involution of every regular 4-dimensional space over {}", f.desc()),
    );
    let elems = f.elements(0);
    let vecs = all_vectors(f, 4, budget)?;
    let (mut interchanges, mut sums) = (0u64, 0u64);
    for space in super::regular_spaces(f, 4, budget)? {
        for tau in super::enumerate_involutions(&space, budget)? {
            let fix: Vec<Vector<F>> = vecs.iter().filter(|v| tau.apply(v) == **v).cloned().collect();
            let lhs = fix.len() == elems.len().pow(2);
            let interchange = lhs && fix.iter().all(|v| f.is_zero(&space.q(v)));
            let reflections = !interchange && sum_of_two_reflections(&tau, &vecs, &elems);
            interchanges += interchange as u64;
            sums += reflections as u64;
            let bad = if lhs != (interchange || reflections) {
                Some(format!("{:?} with q = {:?}: dim fix = 2 is {lhs}", tau.matrix(), space.qvals()))
            } else if tau.is_interchange()? != interchange {
                Some(format!("{:?}: the library disagrees on interchange", tau.matrix()))
            } else {
                None
            };
            report.record(bad);
        }
    }
    report.notes.push(format!("{interchanges} interchanges, {sums} sums of two reflections"));
    Ok(report)
}

/// `M_4(GF(2))` entry `(2 r1 + r2, 2 c1 + c2)` is the coordinate of
/// `E_{r1 c1} (x) E_{r2 c2}` at index `(2 r1 + c1) 4 + 2 r2 + c2`.
fn tensor_coords(x: SmallBitMatrix) -> Vector<Gf2k> {
    let mut v = vec![0u8; 16];
    for r in 0..4 {
        for c in 0..4 {
            let (r1, r2, c1, c2) = (r / 2, r % 2, c / 2, c % 2);
            v[(2 * r1 + c1) * 4 + 2 * r2 + c2] = x.get(r, c) as u8;
        }
    }
    v
}

fn metabolic_bits(s: &BitAdjoint, e: SmallBitMatrix) -> bool {
    e.mul(&e) == e && s.apply(e).mul(&e).bits() == 0 && e.rank() == 2
}

/// Over `GF(2)`, every isotropic `(M_2, s_1) (x) (M_2, s_2)` is metabolic:
/// the library witness and idempotent are checked against a search over
/// all of `M_4(GF(2))`.
pub fn check_metabolic(budget: Budget) -> Result<OracleReport> {
    let f = Gf2k::gf2();
    let mut report = OracleReport::new(
        "metabolic: an isotropic involution is metabolic",
        "(M_2, s_1) (x) (M_2, s_2) over GF(2), s_i in {t, gamma, ad[1 1; 1 0], ad[0 1; 1 1]}".into(),
    );
    let aw = |g: u64| -> Result<AlgebraWithInvolution<Gf2k>> {
        let gram = Matrix::from_fn(f, 2, 2, |r, c| ((g >> (2 * r + c)) & 1) as u8);
        adjoint_involution(&SymBilForm::new(gram)?)
    };
    let mut isotropic = 0u64;
    for (n1, g1) in M2_FORMS {
        for (n2, g2) in M2_FORMS {
            let a = aw(g1)?.tensor(&aw(g2)?)?;
            let s = BitAdjoint::new(SmallBitMatrix::from_bits(2, g1)).kron(&BitAdjoint::new(SmallBitMatrix::from_bits(2, g2)));
            let mut bad: Vec<String> = Vec::new();
            let agrees = (0..16).all(|i| {
                let x = SmallBitMatrix::from_bits(4, 1 << i);
                a.apply(&tensor_coords(x)) == tensor_coords(s.apply(x))
            });
            if !agrees {
                bad.push("tensor involution differs from ad of the Kronecker form".into());
            }
            let all = || (1..1u64 << 16).map(|x| SmallBitMatrix::from_bits(4, x));
            let iso_bits = all().any(|x| s.apply(x).mul(&x).bits() == 0);
            let met_bits = all().find(|&e| metabolic_bits(&s, e));
            let witness = a.isotropy_witness(budget);
            if witness.is_some() != iso_bits {
                bad.push(format!("library isotropic = {}, search isotropic = {iso_bits}", witness.is_some()));
            }
            if iso_bits {
                isotropic += 1;
                match met_bits {
                    None => bad.push("isotropic but no metabolic idempotent exists".into()),
                    Some(e) if !a.metabolic_check(&tensor_coords(e)) => bad.push("metabolic_check rejects a metabolic idempotent".into()),
                    Some(_) => {}
                }
            }
            if witness.is_some() {
                match a.metabolic_idempotent(budget) {
                    Some(e) if a.metabolic_check(&e) => {}
                    Some(_) => bad.push("library idempotent fails metabolic_check".into()),
                    None => bad.push("no metabolic idempotent found within budget".into()),
                }
            }
            report.record((!bad.is_empty()).then(|| format!("{n1} (x) {n2}: {}", bad.join("; "))));
        }
    }
    report.notes.push(format!("{isotropic} of 16 products are isotropic"));
    Ok(report)
}
