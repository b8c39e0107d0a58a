//! Sweep and table configuration.
//!
//! * [`SweepConfig`] — everything a verification sweep depends on. The
//!   fields that influence verdicts or record content are serialized
//!   into the report body (the config echo); execution details (`jobs`,
//!   `output_path`) are deliberately excluded so reports stay
//!   byte-identical across worker counts.
//! * [`TableConfig`] — range and format for value-table emission.
//! * [`parse_framings`] — the `"a1[,a2[,a3]];..."` CLI/file syntax.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use framed_vertex::fermion::SignVariant;
use framed_vertex::vertex::Framing;

/// Version stamp written into every report.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Comparison mode of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Compare exact values directly.
    Exact,
    /// Pre-filter by evaluating both sides at random rational points;
    /// every verdict is still confirmed exactly.
    Sampled,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!(
                "unknown mode '{other}' (expected exact or sampled)"
            )),
        }
    }
}

/// Configuration of one verification sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Number of vertex legs: 1, 2, or 3.
    pub legs: u8,
    /// Partition tuples with total size up to this bound are verified.
    pub max_total_size: u64,
    /// Framing vectors to sweep (entries beyond `legs` must be zero).
    pub framings: Vec<Framing>,
    /// Exact comparison or sampled pre-filtering.
    pub mode: Mode,
    /// Random evaluation points per record in sampled mode.
    pub sample_points: u32,
    /// Mode cutoff for the direct Bogoliubov expansion; the expansion
    /// comparison runs iff `expansion_cutoff ≥ max_total_size − 1` (the
    /// largest Frobenius coordinate in range).
    pub expansion_cutoff: u32,
    /// Which three-leg determinant sign variant to verify (legs = 3).
    pub sign_variant: SignVariant,
    /// Base seed for the sampled-mode evaluation points.
    pub seed: u64,
    /// Worker threads (0 = automatic). Not part of the report body.
    #[serde(skip)]
    pub jobs: usize,
    /// Where to write the report, if anywhere. Not part of the body.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    /// A canonical small default: callers override what they need.
    pub fn new(legs: u8, max_total_size: u64) -> Self {
        SweepConfig {
            legs,
            max_total_size,
            framings: vec![Framing::zero()],
            mode: Mode::Exact,
            sample_points: 16,
            expansion_cutoff: max_total_size.saturating_sub(1) as u32,
            sign_variant: SignVariant::SpanForm,
            seed: 0,
            jobs: 0,
            output_path: None,
        }
    }

    /// Validates the invariants; the error text is user-facing.
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=3).contains(&self.legs) {
            return Err(format!("legs must be 1, 2, or 3 (got {})", self.legs));
        }
        if self.framings.is_empty() {
            return Err("at least one framing is required".into());
        }
        for f in &self.framings {
            let extra = match self.legs {
                1 => f.a2 != 0 || f.a3 != 0,
                2 => f.a3 != 0,
                _ => false,
            };
            if extra {
                return Err(format!(
                    "framing {f} has nonzero entries beyond {} leg(s)",
                    self.legs
                ));
            }
        }
        if self.mode == Mode::Sampled && self.sample_points == 0 {
            return Err("sampled mode needs sample_points >= 1".into());
        }
        Ok(())
    }

    /// Whether the sweep compares against the direct expansion: the
    /// cutoff must cover the largest Frobenius coordinate in range.
    pub fn expansion_enabled(&self) -> bool {
        self.max_total_size == 0 || self.expansion_cutoff as u64 >= self.max_total_size - 1
    }
}

/// Parses `"a1[,a2[,a3]];..."` into framings for the given leg count;
/// entries beyond `legs` are zero.
pub fn parse_framings(s: &str, legs: u8) -> Result<Vec<Framing>, String> {
    let mut out = Vec::new();
    for group in s.split(';') {
        let group = group.trim();
        if group.is_empty() {
            return Err(format!("empty framing group in '{s}'"));
        }
        let entries: Result<Vec<i64>, _> = group.split(',').map(|x| x.trim().parse()).collect();
        let entries = entries.map_err(|e| format!("bad framing '{group}': {e}"))?;
        if entries.len() != legs as usize {
            return Err(format!(
                "framing '{group}' has {} entries, expected {legs}",
                entries.len()
            ));
        }
        let get = |i: usize| entries.get(i).copied().unwrap_or(0);
        out.push(Framing::new(get(0), get(1), get(2)));
    }
    Ok(out)
}

/// Output format of a value table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::fmt::Display for TableFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        })
    }
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Configuration of one table emission.
#[derive(Clone, Debug)]
pub struct TableConfig {
    pub legs: u8,
    pub max_total_size: u64,
    pub framing: Framing,
    pub format: TableFormat,
    pub output_path: PathBuf,
}

impl TableConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=3).contains(&self.legs) {
            return Err(format!("legs must be 1, 2, or 3 (got {})", self.legs));
        }
        let f = &self.framing;
        let extra = match self.legs {
            1 => f.a2 != 0 || f.a3 != 0,
            2 => f.a3 != 0,
            _ => false,
        };
        if extra {
            return Err(format!(
                "framing {f} has nonzero entries beyond {} leg(s)",
                self.legs
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn framings_parse_and_reject() {
        assert_eq!(parse_framings("0", 1).unwrap(), vec![Framing::zero()]);
        assert_eq!(
            parse_framings("1,-1; 0,2", 2).unwrap(),
            vec![Framing::new(1, -1, 0), Framing::new(0, 2, 0)]
        );
        assert_eq!(
            parse_framings("-1,0,1", 3).unwrap(),
            vec![Framing::new(-1, 0, 1)]
        );
        assert!(parse_framings("1,2", 3).is_err());
        assert!(parse_framings("", 1).is_err());
        assert!(parse_framings("x", 1).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = SweepConfig::new(2, 4);
        assert!(cfg.validate().is_ok());
        cfg.framings = vec![Framing::new(0, 0, 5)];
        assert!(cfg.validate().is_err());
        cfg.framings = vec![Framing::zero()];
        cfg.mode = Mode::Sampled;
        cfg.sample_points = 0;
        assert!(cfg.validate().is_err());
        cfg.legs = 4;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn expansion_gate_tracks_cutoff() {
        let mut cfg = SweepConfig::new(3, 6);
        assert_eq!(cfg.expansion_cutoff, 5);
        assert!(cfg.expansion_enabled());
        cfg.expansion_cutoff = 4;
        assert!(!cfg.expansion_enabled());
        cfg.max_total_size = 0;
        assert!(cfg.expansion_enabled());
    }

    #[test]
    fn config_echo_excludes_execution_details() {
        let mut cfg = SweepConfig::new(1, 2);
        cfg.jobs = 8;
        cfg.output_path = Some(PathBuf::from("/tmp/report.json"));
        let json = serde_json::to_string(&cfg).unwrap();
        assert!(!json.contains("jobs"));
        assert!(!json.contains("output_path"));
        let back: SweepConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back.jobs, 0);
        assert_eq!(back.output_path, None);
        assert_eq!(back.legs, cfg.legs);
    }
}
