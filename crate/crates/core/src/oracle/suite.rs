//! The named checks with their standard configurations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::csa::Quaternion;
use crate::fields::{Gf2k, RatFunc};

pub const CHECK_NAMES: [&str; 8] = ["totimes", "trans", "discq", "ad", "theta", "int4", "proofpath", "metabolic"];

/// Instances drawn by `theta` from the seed.
pub const THETA_COUNT: usize = 100;

fn twin<F: Field>(f: F, a: F::Elem, b: F::Elem, d1: F::Elem, d2: F::Elem, budget: Budget) -> Result<Vec<crate::csa::AlgebraWithInvolution<F>>> {
    let q = Quaternion::new(f, a, b)?;
    Ok(vec![q.orthogonal_with_disc(&d1, budget)?, q.orthogonal_with_disc(&d2, budget)?])
}

/// Runs the check called `name`. `seed` drives the randomized checks.
pub fn run_check(name: &str, seed: u64, budget: Budget) -> Result<Vec<OracleReport>> {
    let (gf2, gf4) = (Gf2k::gf2(), Gf2k::gf4());
    Ok(match name {
        "totimes" => vec![check_totimes(gf2, 2, budget)?, check_totimes(gf4, 2, budget)?, check_totimes(gf2, 3, budget)?],
        "trans" => vec![
            check_trans_equivalence(gf2, 2, budget)?,
            check_trans_equivalence(gf2, 4, budget)?,
            check_trans_equivalence(gf4, 2, budget)?,
        ],
        "discq" => vec![check_discq()],
        "ad" => vec![check_ad(gf2, gf4, 2)?, check_ad(gf2, gf4, 3)?, check_ad(gf4, Gf2k::new(4)?, 2)?],
        "theta" => vec![check_theta(RatFunc::f2t(), THETA_COUNT, seed, budget.degree_bound.min(3))?],
        "int4" => vec![check_int4(gf2, budget)?],
        "proofpath" => {
            let f = RatFunc::f2t();
            let t = f.t();
            let t1 = f.add(&t, &f.one());
            let mut reports = vec![check_proof_path(&twin(f, t.clone(), f.mul(&t, &t1), t, t1, budget)?, budget)?];
            reports.push(check_proof_path(&twin(gf4, 1, 1, 2, 1, budget)?, budget)?);
            let q = Quaternion::new(gf2, 1, 1)?;
            reports.push(check_proof_path(&[q.canonical_involution(), q.orthogonal_with_disc(&1, budget)?], budget)?);
            reports
        }
        "metabolic" => vec![check_metabolic(budget)?],
        _ => return Err(Error::Parse(format!("unknown check {name}"))),
    })
}
