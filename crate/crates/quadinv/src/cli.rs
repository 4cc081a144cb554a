//! `quadinv <command>`: argument parsing, dispatch and exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use quadinv_core::clifford::{induced_involution, induced_type, is_transpose_isomorphic, type_via_fix, CliffordAlgebra};
use quadinv_core::csa::InvolutionType;
use quadinv_core::engine::{clifford_decompose, shapiro_decompose, verify_report};
use quadinv_core::fields::{AnyField, Field};
use quadinv_core::isometry::Isometry;
use quadinv_core::oracle::{random_involutions, run_check, Status, CHECK_NAMES};
use quadinv_core::{Budget, Error, Result};
use serde::Serialize;

use crate::instance::{parse_field, InstanceFile, Task};
use crate::report::{ClassifyDoc, OracleDoc, ReportDoc, WiitalaDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_SPLIT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Largest space for which `classify` also reports `disc J_tau`.
const MAX_DISC_DIM: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "quadinv", version, about = "Quadratic forms, Clifford algebras and involutions in characteristic 2")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Degree bound for searches over function fields.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Maximum number of candidates a search may try.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type and discriminant of one algebra with involution, or of (C(V), J_tau).
    Classify { instance: PathBuf },
    /// Wiitala decomposition of an involution, from a file or sampled.
    Wiitala {
        #[arg(required_unless_present = "sample")]
        instance: Option<PathBuf>,
        /// Sample random involutions of this dimension instead of reading a file.
        #[arg(long, conflicts_with = "instance", requires = "field")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Field to sample over, e.g. GF(4).
        #[arg(long)]
        field: Option<String>,
    },
    /// Decompose a split tensor product of quaternion algebras with involution.
    Decompose {
        instance: PathBuf,
        /// Re-verify a JSON report against the instance instead.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Decompose (C(V), J_tau) for a quadratic space with an involution.
    Clifford { instance: PathBuf },
    /// Run oracle checks by name.
    Verify {
        names: Vec<String>,
        #[arg(long, conflicts_with = "names")]
        all: bool,
    },
}

struct Settings {
    json: bool,
    seed: Option<u64>,
    degree_bound: Option<u32>,
    max_candidates: Option<u64>,
}

impl Settings {
    fn budget(&self, base: Budget) -> Budget {
        Budget {
            degree_bound: self.degree_bound.unwrap_or(base.degree_bound),
            max_candidates: self.max_candidates.unwrap_or(base.max_candidates),
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSplitCertified => EXIT_NOT_SPLIT,
        Error::InvariantViolation(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {
        match AnyField::new($desc)? {
            AnyField::Galois($f) => $body,
            AnyField::Rational($f) => $body,
        }
    };
}

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let settings = Settings {
        json: cli.json,
        seed: cli.seed,
        degree_bound: cli.degree_bound,
        max_candidates: cli.budget,
    };
    match dispatch(&cli.command, &settings) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: &Command, s: &Settings) -> Result<Output> {
    match command {
        Command::Classify { instance } => with_instance(instance, s, |inst, json, budget| {
            with_field!(inst.desc()?, |f| classify(f, inst, json, budget))
        }),
        Command::Wiitala { instance: Some(path), .. } => with_instance(path, s, |inst, json, _| {
            with_field!(inst.desc()?, |f| wiitala_file(f, inst, json))
        }),
        Command::Wiitala { sample: Some(dim), count, field, .. } => {
            let desc = parse_field(field.as_deref().unwrap_or_default())?;
            let budget = s.budget(Budget::default());
            with_field!(desc, |f| wiitala_sample(f, *dim, *count, s.seed.unwrap_or(0), budget, s.json))
        }
        Command::Wiitala { .. } => Err(Error::Parse("wiitala needs an instance or --sample".into())),
        Command::Decompose { instance, replay } => with_instance(instance, s, |inst, json, budget| {
            with_field!(inst.desc()?, |f| decompose(f, inst, replay.as_deref(), json, budget))
        }),
        Command::Clifford { instance } => with_instance(instance, s, |inst, json, budget| {
            with_field!(inst.desc()?, |f| clifford(f, inst, json, budget))
        }),
        Command::Verify { names, all } => {
            let names: Vec<String> = if *all || names.is_empty() { CHECK_NAMES.iter().map(|n| n.to_string()).collect() } else { names.clone() };
            verify(&names, s.seed.unwrap_or(0), s.budget(Budget::default()), s.json)
        }
    }
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    InstanceFile::from_json(&text)
}

fn with_instance(path: &Path, s: &Settings, body: impl FnOnce(&InstanceFile, bool, Budget) -> Result<Output>) -> Result<Output> {
    let inst = read_instance(path)?;
    let json = s.json || inst.wants_json()?;
    let budget = s.budget(inst.budget(Budget::default()));
    body(&inst, json, budget)
}

fn render<T: Serialize>(doc: &T, json: bool, text: impl FnOnce(&T) -> String) -> Result<String> {
    if json {
        let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(text(doc))
    }
}

fn space_task<F: Field>(f: F, inst: &InstanceFile, budget: Budget) -> Result<Isometry<F>> {
    match inst.task(f, budget)? {
        Task::Space { space, tau } => Ok(tau.unwrap_or_else(|| Isometry::identity(space))),
        Task::Algebras { .. } => Err(Error::Parse("this command takes a quadratic space".into())),
    }
}

fn classify<F: Field>(f: F, inst: &InstanceFile, json: bool, budget: Budget) -> Result<Output> {
    let doc = match inst.task(f, budget)? {
        Task::Algebras { inputs, .. } => {
            let [a] = inputs.as_slice() else {
                return Err(Error::Parse("classify takes exactly one algebra".into()));
            };
            let t = a.involution_type();
            let disc = match t {
                InvolutionType::Orthogonal => Some(f.from_value(&a.discriminant(budget)?.rep)?),
                InvolutionType::Symplectic => None,
            };
            ClassifyDoc::new(f, t, disc.as_ref())
        }
        Task::Space { space, tau } => {
            let tau = tau.unwrap_or_else(|| Isometry::identity(space));
            let t = type_via_fix(&tau)?;
            match induced_type(&tau) {
                Ok(u) if u != t => return Err(Error::InvariantViolation("J_tau type disagrees with dim fix".into())),
                Ok(_) | Err(Error::DimensionBudgetExceeded) => {}
                Err(e) => return Err(e),
            }
            let disc = if t == InvolutionType::Orthogonal && tau.dim() <= MAX_DISC_DIM {
                let c = CliffordAlgebra::new(tau.space().clone())?;
                Some(f.from_value(&induced_involution(&c, &tau)?.discriminant(budget)?.rep)?)
            } else {
                None
            };
            ClassifyDoc::new(f, t, disc.as_ref()).with_isometry(is_transpose_isomorphic(&tau)?, tau.kind_of()?)
        }
    };
    render(&doc, json, ClassifyDoc::text).map(Output::ok)
}

fn wiitala_doc<F: Field>(tau: &Isometry<F>) -> Result<WiitalaDoc> {
    let d = tau.wiitala_decompose()?;
    d.verify(tau)?;
    Ok(WiitalaDoc::new(tau, &d))
}

fn wiitala_file<F: Field>(f: F, inst: &InstanceFile, json: bool) -> Result<Output> {
    let tau = space_task(f, inst, Budget::default())?;
    render(&wiitala_doc(&tau)?, json, WiitalaDoc::text).map(Output::ok)
}

/// Coefficients of sampled function-field involutions have degree at most this.
const SAMPLE_DEGREE: u32 = 2;

fn wiitala_sample<F: Field>(f: F, dim: usize, count: usize, seed: u64, budget: Budget, json: bool) -> Result<Output> {
    let taus = random_involutions(f, dim, count, seed, budget.degree_bound.min(SAMPLE_DEGREE))?;
    let docs: Result<Vec<WiitalaDoc>> = taus.iter().map(wiitala_doc).collect();
    render(&docs?, json, |docs| {
        docs.iter()
            .enumerate()
            .map(|(i, d)| format!("# sample {i}\n{}", d.text()))
            .collect::<Vec<_>>()
            .join("\n")
    })
    .map(Output::ok)
}

fn decompose<F: Field>(f: F, inst: &InstanceFile, replay: Option<&Path>, json: bool, budget: Budget) -> Result<Output> {
    let Task::Algebras { inputs, split } = inst.task(f, budget)? else {
        return Err(Error::Parse("decompose takes an algebra list".into()));
    };
    if let Some(path) = replay {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let doc: ReportDoc = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        let report = doc.to_report(f)?;
        return Ok(if verify_report(&inputs, &report, budget) {
            Output::ok("report verified\n".into())
        } else {
            Output { text: "report rejected\n".into(), code: EXIT_INVARIANT }
        });
    }
    let report = shapiro_decompose(&inputs, split.as_deref(), budget)?;
    render(&ReportDoc::new(f, &report), json, ReportDoc::text).map(Output::ok)
}

fn clifford<F: Field>(f: F, inst: &InstanceFile, json: bool, budget: Budget) -> Result<Output> {
    let tau = space_task(f, inst, budget)?;
    let report = clifford_decompose(&tau, budget)?;
    render(&ReportDoc::new(f, &report), json, ReportDoc::text).map(Output::ok)
}

fn verify(names: &[String], seed: u64, budget: Budget, json: bool) -> Result<Output> {
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
        return Err(Error::Parse(format!("unknown check {bad:?}; known: {}", CHECK_NAMES.join(", "))));
    }
    let results: Vec<Result<Vec<_>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|n| scope.spawn(move || run_check(n, seed, budget))).collect();
        handles.into_iter().map(|h| h.join().expect("oracle thread panicked")).collect()
    });
    let mut docs = Vec::new();
    for (name, r) in names.iter().zip(results) {
        docs.extend(r?.iter().map(|r| OracleDoc::new(name, r)));
    }
    let failed = docs.iter().any(|d| d.status == Status::Fail.to_string());
    let text = render(&docs, json, |docs| docs.iter().map(OracleDoc::text).collect())?;
    Ok(Output { text, code: if failed { EXIT_INVARIANT } else { EXIT_OK } })
}

