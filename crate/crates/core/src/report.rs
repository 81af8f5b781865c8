//! Deterministic JSON reports.
//!
//! Objects are `serde_json` maps, which keep keys sorted, and every field
//! element is written as a string (`"p/q"` over the rationals, the residue
//! over `F_p`), so identical computations serialize to identical bytes.
//!
//! Report layout (schema version 1):
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "command": "...",
//!   "field": "rational" | "fp:<p>",
//!   "seed": <u64>,
//!   "inputs": { name: { "source": ..., "value": ..., "sha256": <of the raw text> } },
//!   "parameters": { ... },
//!   "results": { ... },
//!   "certificates": { ... },
//!   "wall_time_ms": <u64>            only with --timing
//! }
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::field::{Field, FieldConfig};
use crate::jacobian::{MilnorProfile, SmoothnessCertificate};
use crate::lefschetz::LefschetzProfile;
use crate::linalg::{GradedSubspace, Matrix};
use crate::poly::{PolyRing, Polynomial};
use crate::singular::{DefectReport, LemmaCheck};

pub const SCHEMA_VERSION: u64 = 1;

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A named input: where it came from, its text as given (hashed) and its
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputRecord {
    pub source: String,
    pub raw: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub field: FieldConfig,
    pub seed: u64,
    pub inputs: BTreeMap<String, InputRecord>,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub certificates: Map<String, Value>,
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, field: FieldConfig, seed: u64) -> Self {
        Report {
            command: command.into(),
            field,
            seed,
            inputs: BTreeMap::new(),
            parameters: Map::new(),
            results: Map::new(),
            certificates: Map::new(),
            wall_time_ms: None,
        }
    }

    pub fn input(&mut self, name: &str, record: InputRecord) {
        self.inputs.insert(name.into(), record);
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.parameters.insert(key.into(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }

    pub fn certificate(&mut self, key: &str, v: impl Into<Value>) {
        self.certificates.insert(key.into(), v.into());
    }

    pub fn to_json(&self) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(k, r)| {
                (
                    k.clone(),
                    json!({
                        "source": r.source,
                        "value": r.value,
                        "sha256": sha256_hex(&r.raw),
                    }),
                )
            })
            .collect();
        let mut out = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "field": self.field.to_string(),
            "seed": self.seed,
            "inputs": inputs,
            "parameters": self.parameters,
            "results": self.results,
            "certificates": self.certificates,
        });
        if let Some(ms) = self.wall_time_ms {
            out["wall_time_ms"] = ms.into();
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    /// Indented `key: value` rendering of inputs, parameters, results and
    /// certificates.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}] seed {}\n", self.command, self.field, self.seed);
        for (k, r) in &self.inputs {
            out.push_str(&format!("input {k} = {}\n", r.value));
        }
        for (title, section) in [
            ("parameters", &self.parameters),
            ("results", &self.results),
            ("certificates", &self.certificates),
        ] {
            if section.is_empty() {
                continue;
            }
            out.push_str(title);
            out.push_str(":\n");
            for (k, v) in section {
                render_text(&mut out, k, v, 1);
            }
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall time: {ms} ms\n"));
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter()
                .map(|x| scalar_text(x).expect("scalar"))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render_text(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render_text(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

pub fn poly<K: Field>(ring: &PolyRing<K>, p: &Polynomial<K::Elem>) -> Value {
    Value::String(ring.format(p))
}

pub fn polys<K: Field>(ring: &PolyRing<K>, ps: &[Polynomial<K::Elem>]) -> Value {
    Value::Array(ps.iter().map(|p| poly(ring, p)).collect())
}

pub fn scalar<K: Field>(field: &K, x: &K::Elem) -> Value {
    Value::String(field.format_fixed(x))
}

pub fn vector<K: Field>(field: &K, v: &[K::Elem]) -> Value {
    Value::Array(v.iter().map(|x| scalar(field, x)).collect())
}

pub fn matrix<K: Field>(field: &K, m: &Matrix<K::Elem>) -> Value {
    Value::Array(m.row_iter().map(|r| vector(field, r)).collect())
}

pub fn subspace<K: Field>(ring: &PolyRing<K>, s: &GradedSubspace<K>) -> Value {
    json!({
        "degree": s.degree(),
        "dim": s.dim(),
        "ambient_dim": s.ambient_dim(),
        "family": s.family().letter().to_string(),
        "basis": polys(ring, &s.basis_polys(ring)),
    })
}

pub fn smoothness(c: &SmoothnessCertificate) -> Value {
    json!({
        "verdict": c.verdict.as_str(),
        "field": c.field.to_string(),
        "degree": c.degree,
        "rank": c.rank,
        "ambient_dim": c.ambient,
        "certified_by": c.certified_by,
        "point": c.point,
        "point_field": c.point_field,
        "note": c.note,
    })
}

pub fn profile(p: &MilnorProfile) -> Value {
    let dims: Map<String, Value> = p
        .dims
        .iter()
        .map(|(k, d)| (format!("{k:02}"), Value::from(*d)))
        .collect();
    json!({
        "nvars": p.nvars,
        "degree": p.degree,
        "socle_degree": p.socle_degree,
        "dims": dims,
    })
}

pub fn lefschetz<K: Field>(ring: &PolyRing<K>, p: &LefschetzProfile<K::Elem>) -> Value {
    let steps: Vec<Value> = p
        .steps
        .iter()
        .map(|s| {
            json!({
                "k": s.k,
                "exponent": s.exponent,
                "source_dim": s.source_dim,
                "target_dim": s.target_dim,
                "rank": s.rank,
                "isomorphism": s.is_iso(),
            })
        })
        .collect();
    json!({
        "ell": poly(ring, &p.ell),
        "steps": steps,
        "ranks": p.ranks(),
        "verdict": p.verdict,
    })
}

pub fn defect(d: &DefectReport) -> Value {
    json!({
        "k": d.k,
        "points": d.points,
        "rank_theta": d.rank,
        "defect": d.defect,
    })
}

pub fn lemma(c: &LemmaCheck) -> Value {
    json!({
        "k": c.k,
        "holds": c.holds,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "reference": c.reference,
        "defect": c.defect,
    })
}

pub fn points<K: Field>(field: &K, pts: &[Vec<K::Elem>]) -> Value {
    Value::Array(pts.iter().map(|p| vector(field, p)).collect())
}
