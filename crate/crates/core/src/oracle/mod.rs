//! Brute-force checks of the statements the library relies on.
//!
//! Each check enumerates a finite universe, or a seeded random sample of a
//! larger one, and compares what the library computes against a direct
//! search that does not go through the code under test.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::forms::QuadSpace;
use crate::isometry::Isometry;
use crate::linalg::{Matrix, Vector};
use crate::search::Budget;

mod lemmas;
mod proofpath;
mod suite;
mod trans;

pub use lemmas::{check_ad, check_discq, check_int4, check_metabolic, check_theta, check_totimes};
pub use proofpath::check_proof_path;
pub use suite::{run_check, CHECK_NAMES, THETA_COUNT};
pub use trans::{check_trans_equivalence, check_trans_on};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub statement: String,
    pub universe: String,
    pub checked: u64,
    pub counterexamples: Vec<String>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    pub applicable: bool,
}

impl OracleReport {
    pub fn new(statement: &str, universe: String) -> Self {
        OracleReport {
            statement: statement.into(),
            universe,
            checked: 0,
            counterexamples: Vec::new(),
            seed: None,
            notes: Vec::new(),
            applicable: true,
        }
    }

    pub fn not_applicable(statement: &str, universe: String, why: &str) -> Self {
        let mut r = Self::new(statement, universe);
        r.applicable = false;
        r.notes.push(why.into());
        r
    }

    pub fn status(&self) -> Status {
        match (self.applicable, self.counterexamples.is_empty()) {
            (false, _) => Status::NotApplicable,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        }
    }

    /// Records one instance; `bad` is the description of a counterexample.
    pub fn record(&mut self, bad: Option<String>) {
        self.checked += 1;
        if let Some(b) = bad {
            self.counterexamples.push(b);
        }
    }

    /// Combines the reports of two disjoint shards of the same check.
    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
        self.notes.extend(other.notes);
        self.applicable &= other.applicable;
    }
}

fn digits<F: Field>(elems: &[F::Elem], mut code: u64, len: usize) -> Vector<F> {
    let q = elems.len() as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(elems[(code % q) as usize].clone());
        code /= q;
    }
    out
}

/// All vectors of `F^n` for a finite field, refused when there are more
/// than `budget.max_candidates` of them.
pub(crate) fn all_vectors<F: Field>(f: F, n: usize, budget: Budget) -> Result<Vec<Vector<F>>> {
    let q = f.order().ok_or(Error::BudgetExceeded)?;
    let total = q.checked_pow(n as u32).filter(|&t| t <= budget.max_candidates).ok_or(Error::BudgetExceeded)?;
    let elems = f.elements(0);
    Ok((0..total).map(|c| digits::<F>(&elems, c, n)).collect())
}

/// All regular quadratic spaces on `F^n` over a finite field: every
/// nondegenerate alternating polar form with every choice of `q(e_i)`.
pub fn regular_spaces<F: Field>(f: F, n: usize, budget: Budget) -> Result<Vec<QuadSpace<F>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for upper in all_vectors(f, pairs.len(), budget)? {
        let mut polar = Matrix::zeros(f, n, n);
        for ((i, j), c) in pairs.iter().zip(&upper) {
            polar.set(*i, *j, c.clone());
            polar.set(*j, *i, c.clone());
        }
        if !polar.is_invertible() {
            continue;
        }
        for qvals in all_vectors(f, n, budget)? {
            out.push(QuadSpace::new(polar.clone(), qvals)?);
        }
    }
    Ok(out)
}

/// Every involution in `O(V, q)` over a finite field, by choosing the images
/// of the basis vectors one at a time subject to `q(g e_i) = q(e_i)` and
/// `b(g e_i, g e_j) = b(e_i, e_j)`.
pub fn enumerate_involutions<F: Field>(space: &QuadSpace<F>, budget: Budget) -> Result<Vec<Isometry<F>>> {
    let f = space.field();
    let n = space.dim();
    let vecs = all_vectors(f, n, budget)?;
    let cands: Vec<Vec<&Vector<F>>> = (0..n)
        .map(|i| vecs.iter().filter(|v| space.q(v) == space.qvals()[i]).collect())
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vector<F>> = Vec::with_capacity(n);
    fn go<F: Field>(
        space: &QuadSpace<F>,
        cands: &[Vec<&Vector<F>>],
        cols: &mut Vec<Vector<F>>,
        out: &mut Vec<Isometry<F>>,
    ) {
        let f = space.field();
        let n = space.dim();
        let i = cols.len();
        if i == n {
            let m = Matrix::from_cols(f, n, cols);
            if m.mul(&m).is_identity() {
                out.push(Isometry::new(space.clone(), m).expect("constraints make an isometry"));
            }
            return;
        }
        for v in &cands[i] {
            if (0..i).all(|j| space.b(&cols[j], v) == *space.polar().get(j, i)) {
                cols.push((*v).clone());
                go(space, cands, cols, out);
                cols.pop();
            }
        }
    }
    go(space, &cands, &mut cols, &mut out);
    Ok(out)
}

fn random_unit<F: Field>(f: F, rng: &mut ChaCha8Rng, degree_bound: u32) -> F::Elem {
    loop {
        let x = f.random(rng, degree_bound);
        if !f.is_zero(&x) {
            return x;
        }
    }
}

/// An anisotropic vector of a regular plane: `e_1`, `e_2` or `e_1 + e_2`
/// with a random nonzero multiple of the other basis vector mixed in when
/// that keeps it anisotropic.
fn plane_reflection<F: Field>(f: F, plane: &QuadSpace<F>, rng: &mut ChaCha8Rng, degree_bound: u32) -> Isometry<F> {
    let x = f.random(rng, degree_bound);
    let tries = [vec![f.one(), x.clone()], vec![x, f.one()], vec![f.one(), f.zero()], vec![f.zero(), f.one()], vec![f.one(), f.one()]];
    let u = tries.into_iter().find(|u| !f.is_zero(&plane.q(u))).expect("a regular plane has an anisotropic basis vector");
    Isometry::reflection(plane, &u).expect("u is anisotropic")
}

/// A seeded random involution on a `dim`-dimensional regular space: an
/// orthogonal sum of reflection planes, fixed planes and interchange blocks,
/// conjugated by random reflections and written in a random basis.
pub fn random_involution<F: Field>(f: F, dim: usize, rng: &mut ChaCha8Rng, degree_bound: u32) -> Result<Isometry<F>> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::WrongDimension);
    }
    let mut parts: Vec<Isometry<F>> = Vec::new();
    let mut left = dim;
    while left > 0 {
        let pick = rng.next_u32() % if left >= 4 { 3 } else { 2 };
        if pick == 2 {
            let h = QuadSpace::plane(f, f.zero(), f.random(rng, degree_bound));
            let k = QuadSpace::plane(f, f.zero(), f.random(rng, degree_bound));
            let space = h.orthogonal_sum(&k);
            let mut m = Matrix::identity(f, 4);
            m.set(2, 1, f.one());
            m.set(0, 3, f.one());
            parts.push(Isometry::new(space, m)?);
            left -= 4;
        } else {
            let plane = QuadSpace::plane(f, f.random(rng, degree_bound), f.random(rng, degree_bound));
            parts.push(if pick == 0 {
                plane_reflection(f, &plane, rng, degree_bound)
            } else {
                Isometry::identity(plane)
            });
            left -= 2;
        }
    }
    let mut tau = parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.orthogonal_sum(p));
    let space = tau.space().clone();
    for _ in 0..2 {
        let v: Vector<F> = (0..dim).map(|_| f.random(rng, degree_bound)).collect();
        if let Ok(g) = Isometry::reflection(&space, &v) {
            tau = tau.conjugate_by(&g);
        }
    }
    let p = loop {
        let mut p = Matrix::identity(f, dim);
        for r in 0..dim {
            for c in 0..dim {
                if r != c && rng.next_u32() % 3 == 0 {
                    p.set(r, c, f.random(rng, degree_bound));
                }
            }
            p.set(r, r, random_unit(f, rng, degree_bound));
        }
        if p.is_invertible() {
            break p;
        }
    };
    tau.change_basis(&p)
}

/// `count` involutions from the stream seeded by `seed`.
pub fn random_involutions<F: Field>(f: F, dim: usize, count: usize, seed: u64, degree_bound: u32) -> Result<Vec<Isometry<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_involution(f, dim, &mut rng, degree_bound)).collect()
}
