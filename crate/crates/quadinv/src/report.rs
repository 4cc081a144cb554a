//! Machine-readable mirrors of the library's results, and their text form.

use std::fmt::Write as _;

use quadinv_core::csa::InvolutionType;
use quadinv_core::engine::DecompositionReport;
use quadinv_core::fields::{format_value, Field, FieldDesc};
use quadinv_core::isometry::{Isometry, Kind, WiitalaDecomposition};
use quadinv_core::linalg::Matrix;
use quadinv_core::oracle::OracleReport;
use quadinv_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::instance::{format_field, matrix, parse_field, KindDoc};

pub fn fmt_elem<F: Field>(f: F, x: &F::Elem) -> String {
    format_value(&f.to_value(x))
}

fn fmt_vec<F: Field>(f: F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| fmt_elem(f, x)).collect()
}

fn fmt_matrix<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| fmt_vec(m.field(), m.row(r))).collect()
}

fn type_name(t: InvolutionType) -> &'static str {
    match t {
        InvolutionType::Orthogonal => "orthogonal",
        InvolutionType::Symplectic => "symplectic",
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Identity => "identity",
        Kind::Reflectional => "reflectional",
        Kind::Interchanging => "interchanging",
    }
}

fn kind_text(k: &KindDoc) -> String {
    match k {
        KindDoc::Named(n) => n.clone(),
        KindDoc::TAlpha { t_alpha } => format!("T_{{{t_alpha}}}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub field: String,
    pub overall_type: String,
    pub factors: Vec<KindDoc>,
    pub explicit_iso: Option<Vec<Vec<String>>>,
    pub notes: Vec<String>,
}

impl ReportDoc {
    pub fn new<F: Field>(f: F, r: &DecompositionReport<F>) -> Self {
        ReportDoc {
            field: format_field(f.desc()),
            overall_type: type_name(r.overall_type).into(),
            factors: r.factors.iter().map(KindDoc::from_kind).collect(),
            explicit_iso: r.explicit_iso.as_ref().map(fmt_matrix),
            notes: r.notes.clone(),
        }
    }

    pub fn desc(&self) -> Result<FieldDesc> {
        parse_field(&self.field)
    }

    pub fn to_report<F: Field>(&self, f: F) -> Result<DecompositionReport<F>> {
        if self.desc()? != f.desc() {
            return Err(Error::MixedFields);
        }
        let overall_type = match self.overall_type.as_str() {
            "orthogonal" => InvolutionType::Orthogonal,
            "symplectic" => InvolutionType::Symplectic,
            t => return Err(Error::Parse(format!("unknown type {t:?}"))),
        };
        let factors: Result<Vec<_>> = self.factors.iter().map(|k| k.to_kind(f.desc())).collect();
        let explicit_iso = match &self.explicit_iso {
            Some(m) => Some(matrix(f, m, m.len())?),
            None => None,
        };
        Ok(DecompositionReport {
            overall_type,
            factors: factors?,
            explicit_iso,
            notes: self.notes.clone(),
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let factors: Vec<String> = self.factors.iter().map(kind_text).collect();
        let _ = writeln!(s, "field: {}", self.field);
        let _ = writeln!(s, "type: {}", self.overall_type);
        let _ = writeln!(s, "factors: {}", factors.join(" (x) "));
        let iso = match &self.explicit_iso {
            Some(m) => format!("{}x{} matrix, certified", m.len(), m.len()),
            None => "none".into(),
        };
        let _ = writeln!(s, "explicit isomorphism: {iso}");
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub field: String,
    #[serde(rename = "type")]
    pub involution_type: String,
    pub disc: Option<String>,
    /// For `(C(V), J_tau)`: isomorphic to `(M_N(F), t)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transpose: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

impl ClassifyDoc {
    pub fn new<F: Field>(f: F, t: InvolutionType, disc: Option<&F::Elem>) -> Self {
        ClassifyDoc {
            field: format_field(f.desc()),
            involution_type: type_name(t).into(),
            disc: disc.map(|d| fmt_elem(f, d)),
            transpose: None,
            kind: None,
        }
    }

    pub fn with_isometry(mut self, transpose: bool, kind: Kind) -> Self {
        self.transpose = Some(transpose);
        self.kind = Some(kind_name(kind).into());
        self
    }

    pub fn text(&self) -> String {
        let mut s = format!("field: {}\ntype: {}\n", self.field, self.involution_type);
        if let Some(d) = &self.disc {
            let _ = writeln!(s, "disc: {d}");
        }
        if let Some(k) = &self.kind {
            let _ = writeln!(s, "kind of tau: {k}");
        }
        if let Some(t) = self.transpose {
            let _ = writeln!(s, "isomorphic to (M_N(F), t): {}", if t { "yes" } else { "no" });
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDoc {
    pub u: Vec<String>,
    pub w: Vec<String>,
    pub q_u: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub x1: Vec<String>,
    pub y1: Vec<String>,
    pub x2: Vec<String>,
    pub y2: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiitalaDoc {
    pub field: String,
    pub tau: Vec<Vec<String>>,
    pub kind: String,
    pub spinor_norm: String,
    pub fixed: Vec<Vec<String>>,
    pub planes: Vec<PlaneDoc>,
    pub blocks: Vec<BlockDoc>,
}

impl WiitalaDoc {
    pub fn new<F: Field>(tau: &Isometry<F>, d: &WiitalaDecomposition<F>) -> Self {
        let f = tau.field();
        let space = tau.space();
        WiitalaDoc {
            field: format_field(f.desc()),
            tau: fmt_matrix(tau.matrix()),
            kind: kind_name(d.kind).into(),
            spinor_norm: d.spinor_norm(space).to_string(),
            fixed: d.w.basis.iter().map(|v| fmt_vec(f, v)).collect(),
            planes: d
                .planes
                .iter()
                .map(|p| PlaneDoc {
                    u: fmt_vec(f, &p.u),
                    w: fmt_vec(f, &p.w),
                    q_u: fmt_elem(f, &space.q(&p.u)),
                })
                .collect(),
            blocks: d
                .blocks
                .iter()
                .map(|b| BlockDoc {
                    x1: fmt_vec(f, &b.x1),
                    y1: fmt_vec(f, &b.y1),
                    x2: fmt_vec(f, &b.x2),
                    y2: fmt_vec(f, &b.y2),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let v = |x: &[String]| format!("({})", x.join(", "));
        let mut s = format!("field: {}\nkind: {}\nspinor norm: {}\n", self.field, self.kind, self.spinor_norm);
        let _ = writeln!(s, "fixed part W: {} vectors", self.fixed.len());
        for x in &self.fixed {
            let _ = writeln!(s, "  {}", v(x));
        }
        for p in &self.planes {
            let _ = writeln!(s, "reflection plane: u = {}, w = {}, q(u) = {}", v(&p.u), v(&p.w), p.q_u);
        }
        for b in &self.blocks {
            let _ = writeln!(s, "interchange block: x1 = {}, y1 = {}, x2 = {}, y2 = {}", v(&b.x1), v(&b.y1), v(&b.x2), v(&b.y2));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub check: String,
    pub statement: String,
    pub universe: String,
    pub status: String,
    pub checked: u64,
    pub counterexamples: Vec<String>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl OracleDoc {
    pub fn new(check: &str, r: &OracleReport) -> Self {
        OracleDoc {
            check: check.into(),
            statement: r.statement.clone(),
            universe: r.universe.clone(),
            status: r.status().to_string(),
            checked: r.checked,
            counterexamples: r.counterexamples.clone(),
            seed: r.seed,
            notes: r.notes.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("[{}] {}: {}\n  over {}\n  {} checked, {} counterexamples\n", self.status, self.check, self.statement, self.universe, self.checked, self.counterexamples.len());
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "  seed {seed}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        for c in &self.counterexamples {
            let _ = writeln!(s, "  counterexample: {c}");
        }
        s
    }
}
