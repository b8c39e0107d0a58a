//! Verification reports.
//!
//! A [`VerifyReport`] is a deterministic *body* (artifact version,
//! config echo, per-tuple records in a fixed order, summary counts)
//! plus timing. [`VerifyReport::body_json`] serializes the body alone;
//! two sweeps with the same configuration produce byte-identical body
//! JSON regardless of worker count, which is asserted by tests.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;

/// One computed value together with the formula path that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathValue {
    pub path: String,
    pub value: String,
}

/// The verification record of one (partition tuple, framing) pair.
///
/// Both sides are stored as exact serialized values, so a mismatch
/// record carries everything needed to audit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    /// The partitions, one parts list per leg.
    pub partitions: Vec<Vec<u32>>,
    /// The framing entries, one per leg.
    pub framing: Vec<i64>,
    /// The bosonic (symmetric-function) side.
    pub bosonic: PathValue,
    /// The fermionic side(s): determinant formula, and the direct
    /// expansion when the cutoff covers the range.
    pub fermionic: Vec<PathValue>,
    /// Whether every computed path agreed exactly.
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Aggregate counts of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
}

/// A full verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub artifact_version: String,
    /// Config echo (`None` for the self-check, which has no sweep
    /// configuration).
    pub config: Option<SweepConfig>,
    pub records: Vec<TupleRecord>,
    pub summary: Summary,
    /// Wall-clock seconds; excluded from the deterministic body.
    pub elapsed_seconds: f64,
}

/// The deterministic portion of a report.
#[derive(Serialize)]
struct BodyView<'a> {
    artifact_version: &'a str,
    config: &'a Option<SweepConfig>,
    records: &'a [TupleRecord],
    summary: &'a Summary,
}

impl VerifyReport {
    /// Assembles a report from finished records.
    pub fn assemble(
        config: Option<SweepConfig>,
        records: Vec<TupleRecord>,
        elapsed_seconds: f64,
    ) -> Self {
        let matches = records.iter().filter(|r| r.matched).count();
        let summary = Summary {
            total: records.len(),
            matches,
            mismatches: records.len() - matches,
        };
        VerifyReport {
            artifact_version: crate::config::ARTIFACT_VERSION.to_string(),
            config,
            records,
            summary,
            elapsed_seconds,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.summary.mismatches == 0
    }

    /// The deterministic report body as pretty JSON (no timing fields).
    pub fn body_json(&self) -> String {
        let view = BodyView {
            artifact_version: &self.artifact_version,
            config: &self.config,
            records: &self.records,
            summary: &self.summary,
        };
        serde_json::to_string_pretty(&view).expect("report serialization cannot fail")
    }

    /// The complete report (body plus timing) as pretty JSON.
    pub fn full_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Writes the complete report to a file.
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.full_json().as_bytes())?;
        file.write_all(b"\n")
    }

    /// A one-line human summary.
    pub fn summary_line(&self) -> String {
        format!(
            "{} records, {} matches, {} mismatches ({:.2}s)",
            self.summary.total, self.summary.matches, self.summary.mismatches, self.elapsed_seconds
        )
    }
}
