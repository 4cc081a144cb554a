//! The intermediate objects of the orthogonal decomposition of two factors,
//! rebuilt on a concrete instance.
//!
//! `u = u_1 (x) 1` with `u_1` alternating in the first factor, `C` its
//! centralizer, `B` the image of `1 (x) M_2(F)` under the certified
//! isomorphism, and `Q = C_A(B)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::OracleReport;
use crate::csa::{tensor_vec, AlgebraWithInvolution, InvolutionType, MatrixInvolutionKind};
use crate::engine::{shapiro_decompose, tensor_all};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Vector};
use crate::search::Budget;

const STATEMENT: &str = "proofpath: u = u_1 (x) 1, C = C_A(u), B, Q = C_A(B) behave as in the orthogonal decomposition";

pub fn check_proof_path<F: Field>(inputs: &[AlgebraWithInvolution<F>], budget: Budget) -> Result<OracleReport> {
    let f = inputs.first().ok_or(Error::InvalidAlgebra("no factors".into()))?.field();
    let universe = format!("{} quaternion factors over {}", inputs.len(), f.desc());
    if inputs.len() != 2 {
        return Ok(OracleReport::not_applicable(STATEMENT, universe, "the proof path is checked for two factors"));
    }
    if inputs.iter().any(|q| q.involution_type() == InvolutionType::Symplectic) {
        return Ok(OracleReport::not_applicable(STATEMENT, universe, "symplectic input: the proof path is for the orthogonal case"));
    }
    let decomposition = shapiro_decompose(inputs, None, budget)?;
    let Some(psi) = decomposition.explicit_iso else {
        return Ok(OracleReport::not_applicable(STATEMENT, universe, "no explicit isomorphism at this size"));
    };
    let alpha1 = match &decomposition.factors[0] {
        MatrixInvolutionKind::Transpose => f.one(),
        MatrixInvolutionKind::TAlpha(a) => f.from_value(a)?,
        MatrixInvolutionKind::Gamma => return Err(Error::InvariantViolation("orthogonal input gave a Gamma factor".into())),
    };
    let mut report = OracleReport::new(STATEMENT, universe);
    let mut claim = |ok: bool, what: &str| report.record((!ok).then(|| String::from(what)));

    let q1 = inputs[0].algebra();
    let alt1 = inputs[0].alt_basis();
    claim(alt1.len() == 1, "alt(Q_1) is one-dimensional");
    let r = &alt1[0];
    let r2 = q1.as_scalar(&q1.mul(r, r)).filter(|x| !f.is_zero(x));
    claim(r2.is_some(), "the generator of alt(Q_1) squares to a nonzero scalar");
    let Some(r2) = r2 else { return Ok(report) };
    let s = f.div(&alpha1, &r2).and_then(|x| f.sqrt(&x));
    claim(s.is_some(), "alpha_1 / r^2 is a square");
    let Some(s) = s else { return Ok(report) };
    let u1 = linalg::vscale(f, &s, r);
    claim(q1.mul(&u1, &u1) == q1.scalar(&alpha1), "u_1^2 = alpha_1");

    let a = tensor_all(inputs)?;
    let alg = a.algebra();
    let u = tensor_vec(f, &u1, &inputs[1].algebra().one());
    claim(a.apply(&u) == u, "sigma(u) = u");
    claim(a.is_alternating(&u), "u is in alt(A)");
    claim(alg.mul(&u, &u) == alg.scalar(&alpha1), "u^2 = alpha_1");

    let c = alg.centralizer(core::slice::from_ref(&u));
    claim(2 * c.len() == alg.dim(), "dim C_A(u) = dim A / 2");
    let center = linalg::intersect(f, alg.dim(), &c, &alg.centralizer(&c));
    claim(center.len() == 2, "Z(C) has dimension 2");
    claim(
        linalg::in_span(f, alg.dim(), &center, &alg.one()) && linalg::in_span(f, alg.dim(), &center, &u),
        "Z(C) = F(u)",
    );

    // 1 (x) E_e sits at tensor indices e and 12 + e.
    let b: Vec<Vector<F>> = (0..4)
        .map(|e| {
            let mut x = linalg::zero_vec(f, 16);
            x[e] = f.one();
            x[12 + e] = f.one();
            psi.apply(&x)
        })
        .collect();
    claim(b.iter().all(|x| linalg::in_span(f, alg.dim(), &c, x)), "B lies in C, so u commutes with B");
    claim(b.iter().all(|x| linalg::in_span(f, alg.dim(), &b, &a.apply(x))), "sigma(B) = B");

    let q = alg.centralizer(&b);
    claim(q.len() == 4, "Q = C_A(B) has dimension 4");
    claim(linalg::in_span(f, alg.dim(), &q, &u), "u is in Q");
    let restricted = a.restrict(&q)?;
    let uq = linalg::coords_in(f, alg.dim(), &q, &u);
    let disc = uq.as_ref().filter(|x| restricted.is_alternating(x)).map(|x| restricted.discriminant_of(x));
    claim(disc.is_some(), "u is in alt(Q)");
    if let Some(d) = disc {
        claim(d? == f.square_class(&alpha1)?, "disc of sigma on Q is alpha_1");
    }
    report.notes.push(format!("alpha_1 = {}", f.to_value(&alpha1)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::Quaternion;
    use crate::fields::{Gf2k, RatFunc};
    use crate::oracle::Status;

    #[test]
    fn twin_over_f2t() {
        let f = RatFunc::f2t();
        let t = f.t();
        let q = Quaternion::new(f, t.clone(), f.add(&f.square(&t), &t)).unwrap();
        let b = Budget::default();
        let inputs = [q.orthogonal_with_disc(&t, b).unwrap(), q.orthogonal_with_disc(&f.add(&t, &f.one()), b).unwrap()];
        let r = check_proof_path(&inputs, b).unwrap();
        assert_eq!(r.status(), Status::Pass, "{:?}", r.counterexamples);
        assert!(r.checked >= 15);
    }

    #[test]
    fn split_over_gf4() {
        let f = Gf2k::gf4();
        let q = Quaternion::new(f, 1, 1).unwrap();
        let b = Budget::default();
        let inputs = [q.orthogonal_with_disc(&2, b).unwrap(), q.orthogonal_with_disc(&1, b).unwrap()];
        let r = check_proof_path(&inputs, b).unwrap();
        assert_eq!(r.status(), Status::Pass, "{:?}", r.counterexamples);
    }

    #[test]
    fn symplectic_is_not_applicable() {
        let f = Gf2k::gf2();
        let q = Quaternion::new(f, 1, 1).unwrap();
        let inputs = [q.canonical_involution(), q.canonical_involution()];
        let r = check_proof_path(&inputs, Budget::default()).unwrap();
        assert_eq!(r.status(), Status::NotApplicable);
    }
}
