//! Verification harness for the framed-vertex engine.
//!
//! * [`config`] — sweep/table configuration and the framing syntax.
//! * [`sweep`] — parallel dual-path verification over partition tuples.
//! * [`selfcheck`] — bundled property suites.
//! * [`table`] — deterministic value-table emission.
//! * [`report`] — the deterministic report structure.
//!
//! The binary exposes these as the `verify`, `selfcheck`, and `table`
//! subcommands with exit codes 0 (all match), 1 (mismatch found), and
//! 2 (configuration or runtime error).

pub mod config;
pub mod report;
pub mod selfcheck;
pub mod sweep;
pub mod table;

use thiserror::Error;

/// Errors surfaced by the harness (all map to exit code 2).
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("worker failure: {0}")]
    Worker(String),
}
