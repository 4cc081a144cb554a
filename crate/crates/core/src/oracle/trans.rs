//! `(C(V), J_tau) = (M_N(F), t)` decided by search.
//!
//! For a space `V` a representation `C(V) -> M_N(F)` is found by
//! backtracking over generator images `X_i` with `X_i^2 = q(e_i)` and
//! `X_i X_j + X_j X_i = b(e_i, e_j)`. Every involution of `M_N(F)` is
//! `X -> S^-1 X^T S` for a form `S` fixed up to a scalar, and the one
//! transported from `J_tau` is the solution of `S Y_i = X_i^T S` with
//! `Y_i` the image of `tau(e_i)`. It is isomorphic to `t` iff `S` is a
//! scalar multiple of some `g^T g`, which is tested against the full set of
//! such products.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{enumerate_involutions, regular_spaces, OracleReport};
use crate::clifford::is_transpose_isomorphic;
use crate::error::{Error, Result};
use crate::fields::{Field, Gf2k};
use crate::forms::QuadSpace;
use crate::linalg::Matrix;
use crate::search::Budget;

/// An `n x n` matrix, `n <= 4`, with entries at `4 r + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Sm {
    n: usize,
    e: [u8; 16],
}

impl Sm {
    fn zero(n: usize) -> Self {
        Sm { n, e: [0; 16] }
    }

    fn scalar(n: usize, c: u8) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[5 * i] = c;
        }
        m
    }

    fn from_code(n: usize, q: u64, mut code: u64) -> Self {
        let mut m = Self::zero(n);
        for r in 0..n {
            for c in 0..n {
                m.e[4 * r + c] = (code % q) as u8;
                code /= q;
            }
        }
        m
    }

    fn get(&self, r: usize, c: usize) -> u8 {
        self.e[4 * r + c]
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(&o.e) {
            *a ^= b;
        }
        m
    }

    fn scale(&self, f: &Gf2k, c: u8) -> Self {
        let mut m = *self;
        for a in m.e.iter_mut() {
            *a = f.mul_u8(*a, c);
        }
        m
    }

    fn mul(&self, o: &Self, f: &Gf2k) -> Self {
        let mut m = Self::zero(self.n);
        for r in 0..self.n {
            for k in 0..self.n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..self.n {
                    m.e[4 * r + c] ^= f.mul_u8(a, o.get(k, c));
                }
            }
        }
        m
    }

    fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                m.e[4 * c + r] = self.get(r, c);
            }
        }
        m
    }

    fn is_invertible(&self, f: &Gf2k) -> bool {
        let n = self.n;
        let mut a = *self;
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| a.get(r, col) != 0) else {
                return false;
            };
            for c in 0..n {
                a.e.swap(4 * row + c, 4 * p + c);
            }
            let inv = f.inv_u8(a.get(row, col)).unwrap();
            for r in 0..n {
                let x = a.get(r, col);
                if r != row && x != 0 {
                    let s = f.mul_u8(x, inv);
                    for c in 0..n {
                        a.e[4 * r + c] ^= f.mul_u8(s, a.get(row, c));
                    }
                }
            }
            row += 1;
        }
        true
    }
}

/// Everything that depends only on `(F, N)`.
struct Context {
    f: Gf2k,
    n: usize,
    /// Matrices with `X^2 = c`, indexed by `c`.
    roots: Vec<Vec<Sm>>,
    /// `{g^T g : g invertible}`.
    congruent_to_identity: BTreeSet<Sm>,
}

impl Context {
    fn new(f: Gf2k, n: usize, budget: Budget) -> Result<Self> {
        let q = f.size() as u64;
        let total = q.checked_pow((n * n) as u32).filter(|&t| t <= budget.max_candidates).ok_or(Error::BudgetExceeded)?;
        let mut roots = alloc::vec![Vec::new(); f.size()];
        let mut congruent_to_identity = BTreeSet::new();
        for code in 0..total {
            let x = Sm::from_code(n, q, code);
            let sq = x.mul(&x, &f);
            if let Some(c) = (0..f.size()).find(|&c| sq == Sm::scalar(n, c as u8)) {
                roots[c].push(x);
            }
            if x.is_invertible(&f) {
                congruent_to_identity.insert(x.transpose().mul(&x, &f));
            }
        }
        Ok(Context {
            f,
            n,
            roots,
            congruent_to_identity,
        })
    }

    fn generator_images(&self, space: &QuadSpace<Gf2k>) -> Option<Vec<Sm>> {
        let dim = space.dim();
        let mut xs: Vec<Sm> = Vec::with_capacity(dim);
        self.extend(space, &mut xs).then_some(xs)
    }

    fn extend(&self, space: &QuadSpace<Gf2k>, xs: &mut Vec<Sm>) -> bool {
        let i = xs.len();
        if i == space.dim() {
            return self.spans(xs);
        }
        let f = self.f;
        for x in &self.roots[space.qvals()[i] as usize] {
            let ok = (0..i).all(|j| {
                let ac = x.mul(&xs[j], &f).add(&xs[j].mul(x, &f));
                ac == Sm::scalar(self.n, *space.polar().get(i, j))
            });
            if ok {
                xs.push(*x);
                if self.extend(space, xs) {
                    return true;
                }
                xs.pop();
            }
        }
        false
    }

    /// The products `X_S` over all subsets span `M_N(F)`.
    fn spans(&self, xs: &[Sm]) -> bool {
        let f = self.f;
        let mut prods: Vec<Sm> = Vec::with_capacity(1 << xs.len());
        for mask in 0..1usize << xs.len() {
            let p = (0..xs.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(Sm::scalar(self.n, 1), |acc, i| acc.mul(&xs[i], &f));
            prods.push(p);
        }
        let rows: Vec<Vec<u8>> = prods.iter().map(flat).collect();
        Matrix::from_rows(f, rows).rank() == self.n * self.n
    }

    /// The form `S`, up to a scalar, of the involution with `X_i -> Y_i`.
    fn transported_form(&self, xs: &[Sm], ys: &[Sm]) -> Option<Sm> {
        let (f, n) = (self.f, self.n);
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (x, y) in xs.iter().zip(ys) {
            // (S Y + X^T S)[r][c] = sum_k S[r][k] Y[k][c] + X[k][r] S[k][c].
            for r in 0..n {
                for c in 0..n {
                    let mut row = alloc::vec![0u8; n * n];
                    for k in 0..n {
                        row[r * n + k] ^= y.get(k, c);
                        row[k * n + c] ^= x.get(k, r);
                    }
                    rows.push(row);
                }
            }
        }
        let ker = Matrix::from_rows(f, rows).kernel();
        if ker.len() != 1 {
            return None;
        }
        let mut s = Sm::zero(n);
        for r in 0..n {
            for c in 0..n {
                s.e[4 * r + c] = ker[0][r * n + c];
            }
        }
        Some(s)
    }

    fn congruent_to_scalar_identity(&self, s: &Sm) -> bool {
        (1..self.f.size() as u8).any(|l| self.congruent_to_identity.contains(&s.scale(&self.f, l)))
    }
}

fn flat(m: &Sm) -> Vec<u8> {
    (0..m.n).flat_map(|r| (0..m.n).map(move |c| m.get(r, c))).collect()
}

fn check_space(ctx: &Context, space: &QuadSpace<Gf2k>, budget: Budget, report: &mut OracleReport) -> Result<(u64, u64)> {
    let f = ctx.f;
    let xs = ctx
        .generator_images(space)
        .ok_or_else(|| Error::InvariantViolation(format!("no representation of C(V) for {space:?}")))?;
    let mut transpose = 0;
    let mut interchanges = 0;
    for tau in enumerate_involutions(space, budget)? {
        let ys: Vec<Sm> = (0..space.dim())
            .map(|i| {
                (0..space.dim()).fold(Sm::zero(ctx.n), |acc, j| acc.add(&xs[j].scale(&f, *tau.matrix().get(j, i))))
            })
            .collect();
        let found = match ctx.transported_form(&xs, &ys) {
            Some(s) => ctx.congruent_to_scalar_identity(&s),
            None => {
                report.record(Some(format!("involution form not unique for {:?}", tau.matrix())));
                continue;
            }
        };
        let claimed = is_transpose_isomorphic(&tau)?;
        transpose += u64::from(found);
        if space.dim() == 4 && tau.is_interchange()? {
            interchanges += 1;
            if !found {
                report.notes.push(format!("interchange not of transpose type: {:?}", tau.matrix()));
            }
        }
        report.record((found != claimed).then(|| format!("search {found}, criterion {claimed}: {:?} on {:?}", tau.matrix(), space)));
    }
    Ok((transpose, interchanges))
}

/// The criterion against the search on one space.
pub fn check_trans_on(space: &QuadSpace<Gf2k>, budget: Budget) -> Result<OracleReport> {
    let f = space.field();
    let dim = space.dim();
    if dim != 2 && dim != 4 {
        return Err(Error::WrongDimension);
    }
    let ctx = Context::new(f, 1 << (dim / 2), budget)?;
    let mut report = OracleReport::new("trans", format!("involutions of one space of dimension {dim} over {}", f.desc()));
    check_space(&ctx, space, budget, &mut report)?;
    Ok(report)
}

/// The criterion against the search on every involution of every regular
/// space of dimension `dim` over `f`.
pub fn check_trans_equivalence(f: Gf2k, dim: usize, budget: Budget) -> Result<OracleReport> {
    if dim != 2 && dim != 4 {
        return Err(Error::WrongDimension);
    }
    let ctx = Context::new(f, 1 << (dim / 2), budget)?;
    let spaces = regular_spaces(f, dim, budget)?;
    let mut report = OracleReport::new(
        "trans",
        format!("all involutions of the {} regular spaces of dimension {dim} over {}", spaces.len(), f.desc()),
    );
    let (mut transpose, mut interchanges) = (0, 0);
    for space in &spaces {
        let (t, i) = check_space(&ctx, space, budget, &mut report)?;
        transpose += t;
        interchanges += i;
    }
    report.notes.push(format!("{} involutions, {transpose} of transpose type", report.checked));
    if dim == 4 {
        report.notes.push(format!("{interchanges} interchanges"));
    }
    report.notes.push("q(fix) in F^2 is automatic: the field is perfect".into());
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planes_over_gf2() {
        let r = check_trans_equivalence(Gf2k::gf2(), 2, Budget::default()).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert!(r.checked > 0);
    }

    #[test]
    fn planes_over_gf4() {
        let r = check_trans_equivalence(Gf2k::gf4(), 2, Budget::default()).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
    }

    #[test]
    fn hh_over_gf2() {
        let f = Gf2k::gf2();
        let h = QuadSpace::hyperbolic(f);
        let r = check_trans_on(&h.orthogonal_sum(&h), Budget::default()).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert!(r.notes.is_empty(), "{:?}", r.notes);
    }

    #[test]
    fn gf4_dimension_four_is_out_of_budget() {
        let f = Gf2k::gf4();
        let h = QuadSpace::hyperbolic(f);
        assert_eq!(check_trans_on(&h.orthogonal_sum(&h), Budget::default()).unwrap_err(), Error::BudgetExceeded);
    }
}
