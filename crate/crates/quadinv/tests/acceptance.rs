//! Acceptance criteria. Each criterion prints one line:
//!
//! ```text
//! criterion  N [PASS|FAIL] <name>: <detail> (<elapsed>, bound <bound>)
//! ```
//!
//! A criterion fails when its check fails or when it overruns its bound.
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use quadinv_core::clifford::{induced_involution, induced_type, type_via_fix, CliffordAlgebra};
use quadinv_core::csa::{matrix_involution, AlgebraWithInvolution, InvolutionType, MatrixInvolutionKind, Quaternion};
use quadinv_core::engine::{clifford_decompose, quaternion_factorization, same_factors, shapiro_decompose, verify_report};
use quadinv_core::fields::{format_value, Field, Gf2k, RatFunc};
use quadinv_core::forms::QuadSpace;
use quadinv_core::isometry::Isometry;
use quadinv_core::linalg::Matrix;
use quadinv_core::oracle::{
    check_discq, check_metabolic, check_proof_path, check_totimes, check_trans_equivalence, enumerate_involutions, random_involutions,
    regular_spaces, OracleReport, Status,
};
use quadinv_core::Budget;

type Check = Result<String, String>;
type Criterion = (usize, &'static str, Duration, fn() -> Check);

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

/// Seed of the Wiitala suite; dimension `d` uses `WIITALA_SEED + d`.
const WIITALA_SEED: u64 = 0x5eed;
const WIITALA_COUNT: usize = 1000;
const WIITALA_DIMS: [usize; 4] = [2, 4, 6, 8];
/// Coefficient degree of sampled involutions; matches `quadinv wiitala --sample`.
const SAMPLE_DEGREE: u32 = 2;
const TWIN_COUNT: usize = 20;

fn budget() -> Budget {
    Budget::default()
}

fn run(n: usize, name: &str, bound: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= bound => (true, d),
        Ok(d) => (false, format!("{d}; over the time bound")),
        Err(d) => (false, d),
    };
    println!(
        "criterion {n:2} [{}] {name}: {detail} ({:.2} s, bound {} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        bound.as_secs()
    );
    ok
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(reports: &[OracleReport]) -> Result<u64, String> {
    for r in reports {
        ensure(r.status() == Status::Pass && r.counterexamples.is_empty(), || {
            format!("{} over {}: {:?}", r.statement, r.universe, r.counterexamples)
        })?;
    }
    Ok(reports.iter().map(|r| r.checked).sum())
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1_totimes() -> Check {
    let (gf2, gf4) = (Gf2k::gf2(), Gf2k::gf4());
    let reports = [e(check_totimes(gf2, 2, budget()))?, e(check_totimes(gf4, 2, budget()))?, e(check_totimes(gf2, 3, budget()))?];
    let checked = passed(&reports)?;
    Ok(format!("{checked} symmetric matrices over (n=2, GF(2)), (n=2, GF(4)), (n=3, GF(2)), 0 counterexamples"))
}

fn c2_trans() -> Check {
    let gf2 = Gf2k::gf2();
    let reports = [e(check_trans_equivalence(gf2, 2, budget()))?, e(check_trans_equivalence(gf2, 4, budget()))?];
    let checked = passed(&reports)?;
    Ok(format!("{checked} involutions of regular spaces of dims 2 and 4 over GF(2), criterion = isomorphism search in all"))
}

fn wiitala_instances<F: Field>(f: F, dim: usize) -> Result<Vec<Isometry<F>>, String> {
    e(random_involutions(f, dim, WIITALA_COUNT, WIITALA_SEED + dim as u64, SAMPLE_DEGREE))
}

fn wiitala_suite<F: Field>(f: F) -> Result<BTreeMap<&'static str, usize>, String> {
    let mut kinds = BTreeMap::new();
    for dim in WIITALA_DIMS {
        for (i, tau) in wiitala_instances(f, dim)?.iter().enumerate() {
            let fail = |m: String| format!("{} dim {dim} sample {i}: {m}", f.desc());
            let d = tau.wiitala_decompose().map_err(|x| fail(x.to_string()))?;
            d.verify(tau).map_err(|x| fail(x.to_string()))?;
            ensure(d.reassemble(tau.space()).map_err(|x| fail(x.to_string()))? == *tau.matrix(), || fail("reconstruction differs".into()))?;
            ensure(d.w.dim() + 2 * d.planes.len() + 4 * d.blocks.len() == dim, || fail("components do not fill V".into()))?;
            let kind = match d.kind {
                quadinv_core::isometry::Kind::Identity => "identity",
                quadinv_core::isometry::Kind::Reflectional => "reflectional",
                quadinv_core::isometry::Kind::Interchanging => "interchanging",
            };
            *kinds.entry(kind).or_insert(0) += 1;
        }
    }
    Ok(kinds)
}

fn c3_wiitala() -> Check {
    let mut summary = Vec::new();
    for f in [Gf2k::gf2(), Gf2k::gf4()] {
        let kinds = wiitala_suite(f)?;
        let parts: Vec<String> = kinds.iter().map(|(k, n)| format!("{n} {k}")).collect();
        summary.push(format!("{}: {}", f.desc(), parts.join(", ")));
    }
    Ok(format!("{WIITALA_COUNT} per dim in {WIITALA_DIMS:?}, 0 failures; {}", summary.join("; ")))
}

/// Type of `J_tau` in `C(V)` against `dim fix`, and on planes the type and
/// discriminant against `tau = id` and the spinor norm.
fn cross_check<F: Field>(tau: &Isometry<F>) -> Result<bool, String> {
    let by_fix = e(type_via_fix(tau))?;
    ensure(e(induced_type(tau))? == by_fix, || format!("type of J_tau differs from dim fix for {:?}", tau.matrix()))?;
    if tau.dim() != 2 {
        return Ok(false);
    }
    let c = e(CliffordAlgebra::new(tau.space().clone()))?;
    let j = e(induced_involution(&c, tau))?;
    let symplectic = j.involution_type() == InvolutionType::Symplectic;
    ensure(symplectic == tau.is_identity(), || format!("plane: symplectic = {symplectic} but tau = id is {}", tau.is_identity()))?;
    if !symplectic {
        let disc = e(j.discriminant(budget()))?;
        let theta = e(tau.spinor_norm())?;
        ensure(disc == theta, || format!("plane: disc J_tau = {disc}, theta = {theta}"))?;
    }
    Ok(true)
}

fn c4_cross_checks() -> Check {
    let (gf2, gf4) = (Gf2k::gf2(), Gf2k::gf4());
    let (mut total, mut planes) = (0usize, 0usize);
    let mut tally = |r: bool| {
        total += 1;
        planes += r as usize;
    };
    for dim in [2, 4] {
        for space in e(regular_spaces(gf2, dim, budget()))? {
            for tau in e(enumerate_involutions(&space, budget()))? {
                tally(cross_check(&tau)?);
            }
        }
    }
    for f in [gf2, gf4] {
        for dim in WIITALA_DIMS {
            for tau in wiitala_instances(f, dim)? {
                tally(cross_check(&tau)?);
            }
        }
    }
    // Every discriminant over a finite field is trivial; planes over F_2(t)
    // exercise nontrivial spinor norms.
    for space in e(regular_spaces(gf4, 2, budget()))? {
        for tau in e(enumerate_involutions(&space, budget()))? {
            tally(cross_check(&tau)?);
        }
    }
    let f2t = RatFunc::f2t();
    for tau in e(random_involutions(f2t, 2, 200, WIITALA_SEED, SAMPLE_DEGREE))? {
        tally(cross_check(&tau)?);
    }
    Ok(format!("{total} involutions, of which {planes} planes; types and plane discriminants agree"))
}

fn c5_discq() -> Check {
    let r = check_discq();
    let checked = passed(std::slice::from_ref(&r))?;
    let witness = r.notes.iter().find(|n| n.starts_with("B = gamma, C = gamma") && n.contains("1 is in alt(B)"));
    let witness = witness.ok_or_else(|| format!("no 1 (x) 1 witness for sigma|C = gamma in {:?}", r.notes))?;
    Ok(format!("{checked} pairs (B, C) over GF(2), equality iff sigma|C orthogonal; {witness}"))
}

struct Twin {
    b: usize,
    d1: usize,
    d2: usize,
}

/// `1, t, t + 1, t^2 + t`.
fn twin_values(f: RatFunc) -> [<RatFunc as Field>::Elem; 4] {
    let t = f.t();
    let t1 = f.add(&t, &f.one());
    [f.one(), t.clone(), t1.clone(), f.mul(&t, &t1)]
}

/// All `(b, d1, d2)` for which `Q = [t, b)` carries orthogonal involutions of
/// both discriminants, thinned evenly to `TWIN_COUNT`.
fn twin_instances() -> Result<Vec<Twin>, String> {
    let f = RatFunc::f2t();
    let vals = twin_values(f);
    let mut achievable = [[false; 4]; 4];
    for (b, bv) in vals.iter().enumerate() {
        let q = e(Quaternion::new(f, f.t(), bv.clone()))?;
        for (d, dv) in vals.iter().enumerate() {
            achievable[b][d] = q.orthogonal_with_disc(dv, budget()).is_ok();
        }
    }
    let all: Vec<Twin> = (0..4)
        .flat_map(|b| (0..4).flat_map(move |d1| (0..4).map(move |d2| Twin { b, d1, d2 })))
        .filter(|w| achievable[w.b][w.d1] && achievable[w.b][w.d2])
        .collect();
    ensure(all.len() >= TWIN_COUNT, || format!("only {} achievable twins", all.len()))?;
    let n = all.len();
    let picks: Vec<usize> = (0..TWIN_COUNT).map(|i| i * n / TWIN_COUNT).collect();
    Ok(all.into_iter().enumerate().filter(|(i, _)| picks.contains(i)).map(|(_, w)| w).collect())
}

fn twin_inputs(f: RatFunc, w: &Twin) -> Result<Vec<AlgebraWithInvolution<RatFunc>>, String> {
    let vals = twin_values(f);
    let q = e(Quaternion::new(f, f.t(), vals[w.b].clone()))?;
    Ok(vec![e(q.orthogonal_with_disc(&vals[w.d1], budget()))?, e(q.orthogonal_with_disc(&vals[w.d2], budget()))?])
}

fn c6_twins() -> Check {
    let f = RatFunc::f2t();
    let vals = twin_values(f);
    let twins = twin_instances()?;
    let mut claims = 0;
    for w in &twins {
        let label = format!("Q = [t, {}), discs {}, {}", f.to_value(&vals[w.b]), f.to_value(&vals[w.d1]), f.to_value(&vals[w.d2]));
        let inputs = twin_inputs(f, w)?;
        let r = shapiro_decompose(&inputs, None, budget()).map_err(|x| format!("{label}: {x}"))?;
        ensure(r.overall_type == InvolutionType::Orthogonal, || format!("{label}: symplectic report"))?;
        for (k, d) in r.factors.iter().zip([w.d1, w.d2]) {
            // The transpose is T_1.
            let a = match k {
                MatrixInvolutionKind::TAlpha(a) => e(f.from_value(a))?,
                MatrixInvolutionKind::Transpose => f.one(),
                MatrixInvolutionKind::Gamma => return Err(format!("{label}: a Gamma factor")),
            };
            ensure(e(f.square_class(&a))? == e(f.square_class(&vals[d]))?, || format!("{label}: factor {k:?}"))?;
        }
        ensure(r.explicit_iso.is_some(), || format!("{label}: no explicit isomorphism"))?;
        ensure(verify_report(&inputs, &r, budget()), || format!("{label}: isomorphism check failed on replay"))?;
        let p = check_proof_path(&inputs, budget()).map_err(|x| format!("{label}: {x}"))?;
        claims += passed(std::slice::from_ref(&p)).map_err(|x| format!("{label}: {x}"))?;
    }
    Ok(format!("{} twins over F_2(t): factors match discs, isomorphisms certified, {claims} proof-path claims hold", twins.len()))
}

fn symplectic_case<F: Field>(label: &str, inputs: &[AlgebraWithInvolution<F>]) -> Result<(), String> {
    let r = shapiro_decompose(inputs, None, budget()).map_err(|x| format!("{label}: {x}"))?;
    ensure(r.overall_type == InvolutionType::Symplectic, || format!("{label}: orthogonal report"))?;
    ensure(r.factors.len() == inputs.len() && r.factors.iter().all(|k| *k == MatrixInvolutionKind::Gamma), || {
        format!("{label}: factors {:?}", r.factors)
    })?;
    ensure(verify_report(inputs, &r, budget()), || format!("{label}: verify_report rejected"))
}

fn mat<F: Field>(f: F, k: MatrixInvolutionKind) -> Result<AlgebraWithInvolution<F>, String> {
    e(matrix_involution(f, &k))
}

fn talpha<F: Field>(f: F, a: &F::Elem) -> MatrixInvolutionKind {
    MatrixInvolutionKind::TAlpha(f.to_value(a))
}

fn symplectic_family<F: Field>(f: F, a: F::Elem, b: F::Elem, alphas: [F::Elem; 2], disc: F::Elem, cases: &mut usize) -> Result<(), String> {
    let g = || mat(f, MatrixInvolutionKind::Gamma);
    let t1 = || mat(f, talpha(f, &alphas[0]));
    let t2 = || mat(f, talpha(f, &alphas[1]));
    let q = e(Quaternion::new(f, a, b))?;
    let qg = q.canonical_involution();
    let qo = e(q.orthogonal_with_disc(&disc, budget()))?;
    let families: Vec<(&str, Vec<AlgebraWithInvolution<F>>)> = vec![
        ("gamma (x) gamma", vec![g()?, g()?]),
        ("gamma (x) T_a", vec![g()?, t1()?]),
        ("T_b (x) gamma", vec![t2()?, g()?]),
        ("gamma (x) T_a (x) T_b", vec![g()?, t1()?, t2()?]),
        ("(Q, gamma) (x) (Q, sigma)", vec![qg.clone(), qo.clone()]),
        ("(Q, sigma) (x) (Q, gamma)", vec![qo, qg.clone()]),
        ("(Q, gamma) (x) (Q, gamma)", vec![qg.clone(), qg]),
    ];
    for (name, inputs) in families {
        if *cases == 20 {
            break;
        }
        symplectic_case(&format!("{} {name}", f.desc()), &inputs)?;
        *cases += 1;
    }
    Ok(())
}

fn c7_symplectic() -> Check {
    let (gf2, gf4, f2t) = (Gf2k::gf2(), Gf2k::gf4(), RatFunc::f2t());
    let mut cases = 0;
    symplectic_family(gf2, 1, 1, [1, 1], 1, &mut cases)?;
    symplectic_family(gf4, 2, 3, [2, 3], 1, &mut cases)?;
    let t = f2t.t();
    let t1 = f2t.add(&t, &f2t.one());
    symplectic_family(f2t, t.clone(), f2t.mul(&t, &t1), [t.clone(), t1], t, &mut cases)?;
    ensure(cases == 20, || format!("{cases} instances"))?;
    Ok(format!("{cases} instances with a gamma factor over GF(2), GF(4), F_2(t): all Gamma, verify_report accepts"))
}

fn c8_metabolic() -> Check {
    let r = e(check_metabolic(budget()))?;
    let checked = passed(std::slice::from_ref(&r))?;
    Ok(format!("{checked} products over GF(2), every isotropic one metabolic; {}", r.notes.join("; ")))
}

fn branch_case<F: Field>(label: &str, tau: &Isometry<F>, expect: &[MatrixInvolutionKind]) -> Result<(), String> {
    let r = clifford_decompose(tau, budget()).map_err(|x| format!("{label}: {x}"))?;
    let normalized: Result<Vec<_>, String> = expect.iter().map(|k| e(k.clone().normalized())).collect();
    ensure(same_factors(&r.factors, &normalized?), || format!("{label}: factors {:?}, expected {expect:?}", r.factors))?;
    let parts = quaternion_factorization(tau, budget()).map_err(|x| format!("{label}: {x}"))?;
    let other = shapiro_decompose(&parts, None, budget()).map_err(|x| format!("{label}: {x}"))?;
    ensure(other.overall_type == r.overall_type && same_factors(&r.factors, &other.factors), || {
        format!("{label}: engines disagree, {:?} vs {:?}", r.factors, other.factors)
    })
}

fn reflection<F: Field>(f: F, c: F::Elem, d: F::Elem, u: [u64; 2]) -> Result<Isometry<F>, String> {
    e(Isometry::reflection(&QuadSpace::plane(f, c, d), &[f.from_u64(u[0]), f.from_u64(u[1])]))
}

fn interchange<F: Field>(f: F) -> Result<Isometry<F>, String> {
    let h = QuadSpace::hyperbolic(f);
    let mut m = Matrix::identity(f, 4);
    m.set(2, 1, f.one());
    m.set(0, 3, f.one());
    e(Isometry::new(h.orthogonal_sum(&h), m))
}

fn c9_branches() -> Check {
    use MatrixInvolutionKind::{Gamma, Transpose};
    let (gf2, gf4, f2t) = (Gf2k::gf2(), Gf2k::gf4(), RatFunc::f2t());
    let r = reflection(gf2, 1, 1, [1, 0])?;
    branch_case("(a) GF(2) tau_u + tau_u", &r.orthogonal_sum(&r), &[talpha(gf2, &1), talpha(gf2, &1)])?;
    let t = f2t.t();
    let t1 = f2t.add(&t, &f2t.one());
    let (a, b) = (reflection(f2t, f2t.one(), t.clone(), [0, 1])?, reflection(f2t, f2t.one(), t1.clone(), [0, 1])?);
    branch_case("(a) F_2(t) P(1, t) + P(1, t+1)", &a.orthogonal_sum(&b), &[talpha(f2t, &t), talpha(f2t, &t1)])?;
    branch_case("(b) GF(2) H + H", &interchange(gf2)?, &[Transpose, Transpose])?;
    branch_case("(b) GF(4) H + H", &interchange(gf4)?, &[Transpose, Transpose])?;
    let id = Isometry::identity(r.orthogonal_sum(&r).space().clone());
    branch_case("(c) GF(2) id on dim 4", &id, &[Gamma, Gamma])?;
    let half = r.orthogonal_sum(&Isometry::identity(r.space().clone()));
    branch_case("(c) GF(2) tau_u + id", &half, &[Gamma, Gamma])?;
    let id_t = Isometry::identity(a.orthogonal_sum(&b).space().clone());
    branch_case("(c) F_2(t) id on dim 4", &id_t, &[Gamma, Gamma])?;
    Ok("7 instances over branches (a), (b), (c); clifford_decompose = shapiro_decompose on the factorization".into())
}

fn cli(args: &[String]) -> Result<Vec<u8>, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("quadinv".to_string()).chain(args.iter().cloned());
    match quadinv::run(argv, &mut out, &mut err) {
        0 => Ok(out),
        code => Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err))),
    }
}

fn twin_json(f: RatFunc, w: &Twin) -> String {
    let vals = twin_values(f);
    let v = |i: usize| format_value(&f.to_value(&vals[i]));
    let alg = |d: usize| serde_json::json!({"quaternion": {"a": "t", "b": v(w.b)}, "involution": {"kind": "orthogonal", "disc": v(d)}});
    serde_json::json!({"field": "GF(2)(t)", "algebras": [alg(w.d1), alg(w.d2)]}).to_string()
}

fn c10_determinism() -> Check {
    let mut runs = 0;
    for field in ["GF(2)", "GF(4)"] {
        for dim in WIITALA_DIMS {
            let args: Vec<String> = ["--json", "--seed", &(WIITALA_SEED + dim as u64).to_string(), "wiitala", "--sample", &dim.to_string()]
                .into_iter()
                .chain(["--count", &WIITALA_COUNT.to_string(), "--field", field])
                .map(String::from)
                .collect();
            let first = cli(&args)?;
            ensure(cli(&args)? == first, || format!("wiitala {field} dim {dim}: outputs differ"))?;
            runs += 1;
        }
    }
    let dir = std::env::temp_dir().join(format!("quadinv-acceptance-{}", std::process::id()));
    e(std::fs::create_dir_all(&dir))?;
    let f = RatFunc::f2t();
    for (i, w) in twin_instances()?.iter().enumerate() {
        let path: PathBuf = dir.join(format!("twin{i:02}.json"));
        e(std::fs::write(&path, twin_json(f, w)))?;
        let args = vec!["--json".to_string(), "decompose".into(), path.display().to_string()];
        let first = cli(&args)?;
        ensure(cli(&args)? == first, || format!("decompose {}: outputs differ", path.display()))?;
        runs += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{runs} commands (criteria 3 and 6) run twice, --json output byte-identical"))
}

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [Criterion; 10] = [
        (1, "totimes exhaustive", 10 * SECOND, c1_totimes),
        (2, "trans equivalence", 5 * MINUTE, c2_trans),
        (3, "wiitala suite", 2 * MINUTE, c3_wiitala),
        (4, "clifford cross-checks", 2 * MINUTE, c4_cross_checks),
        (5, "discq with exceptional case", 30 * SECOND, c5_discq),
        (6, "twins over F_2(t)", 2 * MINUTE, c6_twins),
        (7, "symplectic products", 2 * MINUTE, c7_symplectic),
        (8, "isotropic implies metabolic", 5 * MINUTE, c8_metabolic),
        (9, "clifford branches", MINUTE, c9_branches),
        (10, "determinism", 5 * MINUTE, c10_determinism),
    ];
    let mut failed = 0;
    for (n, name, bound, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || *f == n.to_string()) {
            continue;
        }
        if !run(n, name, bound, check) {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
