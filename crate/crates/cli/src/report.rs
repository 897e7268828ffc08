use std::collections::BTreeMap;
use std::path::Path;

use isoparam_core::elimination::EliminationTrace;
use isoparam_core::geometry::GeometryReport;
use serde_json::{json, Value};

use crate::config::{ConfigError, RunConfig};

/// `epsilon -> "stage/object" -> canonical text`.
pub type Golden = BTreeMap<String, BTreeMap<String, String>>;

pub struct SymbolicOutcome {
    pub trace: EliminationTrace,
    /// Golden entries that are missing or differ.
    pub golden_mismatches: Vec<String>,
}

impl SymbolicOutcome {
    pub fn passed(&self) -> bool {
        self.trace.certified && self.golden_mismatches.is_empty()
    }

    fn to_json(&self) -> Value {
        let mut v = self.trace.to_json();
        v["golden_mismatches"] = json!(self.golden_mismatches);
        v["passed"] = json!(self.passed());
        v
    }
}

pub fn golden_entries(trace: &EliminationTrace) -> BTreeMap<String, String> {
    trace
        .stages
        .iter()
        .flat_map(|s| s.objects.iter().map(move |(k, v)| (format!("{}/{k}", s.name), v.clone())))
        .collect()
}

pub fn read_golden(path: &Path) -> Result<Golden, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("malformed golden file {}: {e}", path.display())))
}

pub fn compare_golden(trace: &EliminationTrace, golden: &Golden) -> Vec<String> {
    let Some(expected) = golden.get(&trace.epsilon.value().to_string()) else {
        return Vec::new();
    };
    let actual = golden_entries(trace);
    expected
        .iter()
        .filter(|(k, v)| actual.get(*k) != Some(v))
        .map(|(k, _)| k.clone())
        .collect()
}

pub struct TopReport<'a> {
    pub config: &'a RunConfig,
    pub symbolic: Vec<SymbolicOutcome>,
    pub geometry: Vec<GeometryReport>,
}

impl TopReport<'_> {
    pub fn certified(&self) -> bool {
        self.symbolic.iter().all(SymbolicOutcome::passed) && self.geometry.iter().all(|g| g.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "symbolic": self.symbolic.iter().map(SymbolicOutcome::to_json).collect::<Vec<_>>(),
            "geometry": self.geometry.iter().map(GeometryReport::to_json).collect::<Vec<_>>(),
            "certified": self.certified(),
        })
    }

    /// Sorted keys, two-space indent, trailing newline.
    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.symbolic {
            let eps = s.trace.epsilon;
            out += &format!("symbolic eps={eps}: {}\n", verdict(s.passed()));
            if let Some(f) = &s.trace.first_failure {
                out += &format!("  first failing check: {f}\n");
            }
            for m in &s.golden_mismatches {
                out += &format!("  golden mismatch: {m}\n");
            }
        }
        for g in &self.geometry {
            out += &format!("{} eps={:+}: {}\n", g.family, g.epsilon, verdict(g.passed));
            if let Some(c) = &g.curvatures {
                out += &format!("  principal curvatures {:?}\n", c.observed_mean);
            }
            for row in &g.parallel {
                match &row.failure {
                    Some(f) => out += &format!("  offset {}: {f}\n", row.offset),
                    None => out += &format!("  offset {}: H = {:.12} (std {:.1e})\n", row.offset, row.mean, row.std),
                }
            }
            for c in g.criteria.iter().filter(|c| !c.pass) {
                out += &format!("  FAIL {}: observed {}\n", c.name, c.observed);
            }
        }
        out += &format!("certified: {}\n", self.certified());
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}
