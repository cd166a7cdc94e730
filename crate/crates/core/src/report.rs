//! Report types shared by the library pipelines and the command line.

use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeDim {
    pub k: usize,
    pub dim: usize,
    /// False when the degree is affected by the truncation and must not be
    /// read.
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Per-degree dimensions with provenance; the JSON shape of every cohomology
/// command.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyReport {
    pub method: String,
    pub base: String,
    pub degrees: Vec<DegreeDim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representatives: Vec<DegreeReps>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckLine>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub tool_version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeReps {
    pub k: usize,
    /// Representative cocycles as sparse `coeff * basis-index` strings in the
    /// stacked coordinates of the degree.
    pub cocycles: Vec<Vec<String>>,
}

impl CohomologyReport {
    pub fn dims_in_window(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| d.valid).map(|d| d.dim).collect()
    }

    /// Human-readable table, one line per degree.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method: {}  base: {}\n", self.method, self.base));
        for d in &self.degrees {
            out.push_str(&format!(
                "  H^{} = {}{}\n",
                d.k,
                d.dim,
                if d.valid { "" } else { "   (outside validity window)" }
            ));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "  check {}: {}{}\n",
                c.name,
                if c.ok { "pass" } else { "FAIL" },
                c.detail.as_deref().map(|d| format!(" ({})", d)).unwrap_or_default()
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {}\n", n));
        }
        out
    }
}

/// Render a vector over a field as a sparse combination string.
pub fn render_sparse<F: crate::field::Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| format!("{}*e{}", f.render(x), i))
        .collect()
}
