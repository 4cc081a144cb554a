//! Instance files.
//!
//! ```json
//! {
//!   "field": "GF(2)(t)",
//!   "algebras": [
//!     {"quaternion": {"a": "t", "b": "t^2+t"}, "involution": {"kind": "orthogonal", "disc": "t"}},
//!     {"matrix2": {"kind": {"t_alpha": "t+1"}}}
//!   ]
//! }
//! ```
//!
//! or a quadratic space with an optional involution:
//!
//! ```json
//! {
//!   "field": "GF(2)",
//!   "space": {"dim": 2, "polar": [["0", "1"], ["1", "0"]], "qvals": ["1", "1"]},
//!   "tau": [["1", "0"], ["1", "1"]]
//! }
//! ```
//!
//! Elements use the text syntax of `quadinv_core::fields`.

use quadinv_core::csa::{matrix_involution, AlgebraWithInvolution, MatrixInvolutionKind, Quaternion};
use quadinv_core::fields::{parse_value, Family, Field, FieldDesc};
use quadinv_core::forms::QuadSpace;
use quadinv_core::isometry::Isometry;
use quadinv_core::linalg::{Matrix, Vector};
use quadinv_core::{Budget, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebras: Option<Vec<AlgebraBlock>>,
    /// Coordinates of a rank-one idempotent of the tensor product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceBlock {
    pub dim: usize,
    pub polar: Vec<Vec<String>>,
    pub qvals: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quaternion: Option<QuaternionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix2: Option<Matrix2Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuaternionBlock {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionBlock {
    /// `gamma` or `orthogonal`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Matrix2Block {
    pub kind: KindDoc,
}

/// `"t"`, `"gamma"` or `{"t_alpha": element}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KindDoc {
    Named(String),
    TAlpha { t_alpha: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_candidates: Option<u64>,
    /// `text` or `json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

/// `GF(2)`, `GF(4)`, `GF(2^k)`, optionally followed by `(t)`.
pub fn parse_field(s: &str) -> Result<FieldDesc> {
    let bad = || Error::Parse(format!("unknown field {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (base, rational) = match compact.strip_suffix("(t)") {
        Some(b) => (b, true),
        None => (compact.as_str(), false),
    };
    let inner = base.strip_prefix("GF(").and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
    let k: u8 = match inner.strip_prefix("2^") {
        Some(e) => e.parse().map_err(|_| bad())?,
        None => {
            let q: u32 = inner.parse().map_err(|_| bad())?;
            if !q.is_power_of_two() || q < 2 {
                return Err(bad());
            }
            q.trailing_zeros() as u8
        }
    };
    Ok(if rational { FieldDesc::rational(k) } else { FieldDesc::galois(k) })
}

pub fn format_field(d: FieldDesc) -> String {
    let base = format!("GF({})", 1u32 << d.k);
    match d.family {
        Family::Galois => base,
        Family::RationalFunction => format!("{base}(t)"),
    }
}

pub fn elem<F: Field>(f: F, s: &str) -> Result<F::Elem> {
    f.from_value(&parse_value(f.desc(), s)?)
}

fn elems<F: Field>(f: F, v: &[String]) -> Result<Vector<F>> {
    v.iter().map(|s| elem(f, s)).collect()
}

pub fn matrix<F: Field>(f: F, rows: &[Vec<String>], n: usize) -> Result<Matrix<F>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("expected a {n}x{n} matrix")));
    }
    let rows: Result<Vec<Vector<F>>> = rows.iter().map(|r| elems(f, r)).collect();
    Ok(Matrix::from_rows(f, rows?))
}

/// What an instance file asks about.
pub enum Task<F: Field> {
    Space { space: QuadSpace<F>, tau: Option<Isometry<F>> },
    Algebras { inputs: Vec<AlgebraWithInvolution<F>>, split: Option<Vector<F>> },
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn desc(&self) -> Result<FieldDesc> {
        parse_field(&self.field)
    }

    /// `base` with the file's search options applied.
    pub fn budget(&self, base: Budget) -> Budget {
        let o = self.options.clone().unwrap_or_default();
        Budget {
            degree_bound: o.degree_bound.unwrap_or(base.degree_bound),
            max_candidates: o.max_candidates.unwrap_or(base.max_candidates),
        }
    }

    pub fn wants_json(&self) -> Result<bool> {
        match self.options.as_ref().and_then(|o| o.format.as_deref()) {
            None | Some("text") => Ok(false),
            Some("json") => Ok(true),
            Some(other) => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }

    pub fn task<F: Field>(&self, f: F, budget: Budget) -> Result<Task<F>> {
        match (&self.space, &self.algebras) {
            (Some(s), None) => {
                if self.split.is_some() {
                    return Err(Error::Parse("\"split\" applies to algebra lists".into()));
                }
                if s.qvals.len() != s.dim {
                    return Err(Error::Parse(format!("expected {} qvals", s.dim)));
                }
                let space = QuadSpace::new(matrix(f, &s.polar, s.dim)?, elems(f, &s.qvals)?)?;
                let tau = match &self.tau {
                    Some(m) => Some(Isometry::new(space.clone(), matrix(f, m, s.dim)?)?),
                    None => None,
                };
                Ok(Task::Space { space, tau })
            }
            (None, Some(list)) => {
                if self.tau.is_some() {
                    return Err(Error::Parse("\"tau\" applies to quadratic spaces".into()));
                }
                let inputs: Result<Vec<_>> = list.iter().map(|a| a.build(f, budget)).collect();
                let split = self.split.as_ref().map(|v| elems(f, v)).transpose()?;
                Ok(Task::Algebras { inputs: inputs?, split })
            }
            _ => Err(Error::Parse("an instance has exactly one of \"space\" and \"algebras\"".into())),
        }
    }
}

impl KindDoc {
    pub fn from_kind(k: &MatrixInvolutionKind) -> Self {
        match k {
            MatrixInvolutionKind::Transpose => KindDoc::Named("t".into()),
            MatrixInvolutionKind::Gamma => KindDoc::Named("gamma".into()),
            MatrixInvolutionKind::TAlpha(a) => KindDoc::TAlpha {
                t_alpha: quadinv_core::fields::format_value(a),
            },
        }
    }

    pub fn to_kind(&self, desc: FieldDesc) -> Result<MatrixInvolutionKind> {
        match self {
            KindDoc::Named(n) if n == "t" => Ok(MatrixInvolutionKind::Transpose),
            KindDoc::Named(n) if n == "gamma" => Ok(MatrixInvolutionKind::Gamma),
            KindDoc::Named(n) => Err(Error::Parse(format!("unknown involution kind {n:?}"))),
            KindDoc::TAlpha { t_alpha } => Ok(MatrixInvolutionKind::TAlpha(parse_value(desc, t_alpha)?)),
        }
    }
}

impl AlgebraBlock {
    fn build<F: Field>(&self, f: F, budget: Budget) -> Result<AlgebraWithInvolution<F>> {
        match (&self.quaternion, &self.involution, &self.matrix2) {
            (Some(q), Some(inv), None) => {
                let q = Quaternion::new(f, elem(f, &q.a)?, elem(f, &q.b)?)?;
                match (inv.kind.as_str(), &inv.disc) {
                    ("gamma", None) => Ok(q.canonical_involution()),
                    ("orthogonal", Some(d)) => q.orthogonal_with_disc(&elem(f, d)?, budget),
                    ("orthogonal", None) => Err(Error::Parse("an orthogonal involution needs \"disc\"".into())),
                    ("gamma", Some(_)) => Err(Error::Parse("gamma takes no \"disc\"".into())),
                    (k, _) => Err(Error::Parse(format!("unknown involution kind {k:?}"))),
                }
            }
            (None, None, Some(m)) => matrix_involution(f, &m.kind.to_kind(f.desc())?),
            _ => Err(Error::Parse("an algebra is a \"quaternion\" with an \"involution\", or a \"matrix2\"".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadinv_core::fields::RatFunc;

    #[test]
    fn field_names() {
        assert_eq!(parse_field("GF(2)").unwrap(), FieldDesc::galois(1));
        assert_eq!(parse_field("GF(4)").unwrap(), FieldDesc::galois(2));
        assert_eq!(parse_field("GF(2^3)(t)").unwrap(), FieldDesc::rational(3));
        assert_eq!(parse_field(" GF(2) (t) ").unwrap(), FieldDesc::rational(1));
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("Q").is_err());
        for d in [FieldDesc::galois(1), FieldDesc::galois(5), FieldDesc::rational(2)] {
            assert_eq!(parse_field(&format_field(d)).unwrap(), d);
        }
    }

    #[test]
    fn one_task_per_file() {
        let both = r#"{"field": "GF(2)", "space": {"dim": 2, "polar": [["0","1"],["1","0"]], "qvals": ["0","0"]},
                       "algebras": []}"#;
        let f = quadinv_core::fields::Gf2k::gf2();
        assert!(InstanceFile::from_json(both).unwrap().task(f, Budget::default()).is_err());
        assert!(InstanceFile::from_json(r#"{"field": "GF(2)", "extra": 1}"#).is_err());
    }

    #[test]
    fn algebra_list() {
        let text = r#"{"field": "GF(2)(t)", "algebras": [
            {"quaternion": {"a": "t", "b": "t^2+t"}, "involution": {"kind": "orthogonal", "disc": "t"}},
            {"matrix2": {"kind": {"t_alpha": "t+1"}}},
            {"matrix2": {"kind": "gamma"}}]}"#;
        let inst = InstanceFile::from_json(text).unwrap();
        let Task::Algebras { inputs, split } = inst.task(RatFunc::f2t(), Budget::default()).unwrap() else {
            panic!("expected algebras")
        };
        assert_eq!(inputs.len(), 3);
        assert!(split.is_none());
        let bad = r#"{"field": "GF(2)", "algebras": [{"matrix2": {"kind": "s"}}]}"#;
        assert!(InstanceFile::from_json(bad).unwrap().task(quadinv_core::fields::Gf2k::gf2(), Budget::default()).is_err());
    }
}
