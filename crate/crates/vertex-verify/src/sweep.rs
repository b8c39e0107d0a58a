//! The verification sweep: dual-path evaluation over partition tuples.
//!
//! For every tuple of partitions with total size within the budget and
//! every configured framing, the bosonic value (Schur-function side) and
//! the fermionic value(s) (determinant formula, plus the direct
//! Bogoliubov expansion whenever the mode cutoff covers the range) are
//! computed exactly and compared.
//!
//! Parallelism is over (tuple, framing) work items; records are written
//! into their pre-assigned slots, so the report order is the
//! deterministic enumeration order (partitions in size-then-reverse-lex
//! order, leftmost leg most significant, framings in configuration
//! order) regardless of worker count. A worker panic aborts the sweep
//! but flushes the records finished so far to the output path.
//!
//! Sampled mode draws per-record rational points from a counter-seeded
//! ChaCha stream (independent of worker scheduling) and compares the
//! evaluated sides first; any difference at a valid point is already an
//! exact refutation, and agreement falls through to the exact
//! comparison, so verdicts never depend on the mode.

use std::collections::HashMap;
use std::panic::AssertUnwindSafe;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use framed_vertex::fermion::{
    bogoliubov, det_leg1, det_leg2, det_leg3_variant, fock_expand, FockBasisState, FockState,
};
use framed_vertex::partitions::{enumerate_up_to, Partition};
use framed_vertex::qseries::QRat;
use framed_vertex::specialize::schur_at_rho;
use framed_vertex::vertex::{two_leg_coefficient, w_framed, Framing};

use crate::config::{Mode, SweepConfig};
use crate::report::{PathValue, TupleRecord, VerifyReport};
use crate::HarnessError;

/// Environment variable naming a directory where expensive expansion
/// states are cached between runs.
pub const CACHE_DIR_ENV: &str = "VERTEX_VERIFY_CACHE_DIR";

/// Runs a verification sweep. Configuration errors are reported before
/// any work; a worker panic aborts the sweep after flushing the partial
/// report to the configured output path.
pub fn run_sweep(cfg: &SweepConfig) -> Result<VerifyReport, HarnessError> {
    cfg.validate().map_err(HarnessError::Config)?;
    let start = Instant::now();

    let tuples = enumerate_tuples(cfg.legs, cfg.max_total_size);
    let items: Vec<(&Vec<Partition>, Framing)> = tuples
        .iter()
        .flat_map(|t| cfg.framings.iter().map(move |f| (t, *f)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::Config(format!("cannot build worker pool: {e}")))?;

    // The expansion states are shared across tuples; build them up front
    // (in parallel over framings) so workers only read.
    let expansions: Option<HashMap<Framing, FockState>> = if cfg.expansion_enabled() {
        let states: Vec<(Framing, FockState)> = pool.install(|| {
            cfg.framings
                .par_iter()
                .map(|f| (*f, expansion_state(*f, cfg)))
                .collect()
        });
        Some(states.into_iter().collect())
    } else {
        None
    };

    let slots: Mutex<Vec<Option<TupleRecord>>> = Mutex::new(vec![None; items.len()]);
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(|| {
        pool.install(|| {
            items
                .par_iter()
                .enumerate()
                .for_each(|(index, (tuple, framing))| {
                    let record = evaluate(cfg, tuple, *framing, expansions.as_ref(), index);
                    slots.lock().unwrap()[index] = Some(record);
                });
        });
    }));

    let finished: Vec<TupleRecord> = slots
        .into_inner()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
        .into_iter()
        .flatten()
        .collect();
    let report = VerifyReport::assemble(Some(cfg.clone()), finished, start.elapsed().as_secs_f64());

    if let Some(path) = &cfg.output_path {
        report.write(path)?;
    }
    match outcome {
        Ok(()) => Ok(report),
        Err(_) => Err(HarnessError::Worker(
            "a sweep worker panicked; partial report flushed".into(),
        )),
    }
}

/// All partition tuples with the given leg count and total size bound,
/// in the deterministic report order.
pub fn enumerate_tuples(legs: u8, max_total_size: u64) -> Vec<Vec<Partition>> {
    let mut parts = enumerate_up_to(max_total_size);
    parts.sort();
    let mut out = Vec::new();
    match legs {
        1 => {
            for p in &parts {
                out.push(vec![p.clone()]);
            }
        }
        2 => {
            for p1 in &parts {
                for p2 in &parts {
                    if p1.size() + p2.size() <= max_total_size {
                        out.push(vec![p1.clone(), p2.clone()]);
                    }
                }
            }
        }
        _ => {
            for p1 in &parts {
                for p2 in &parts {
                    if p1.size() + p2.size() > max_total_size {
                        continue;
                    }
                    for p3 in &parts {
                        if p1.size() + p2.size() + p3.size() <= max_total_size {
                            out.push(vec![p1.clone(), p2.clone(), p3.clone()]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The direct-expansion state for one framing, read through the cache
/// directory when `VERTEX_VERIFY_CACHE_DIR` is set.
fn expansion_state(f: Framing, cfg: &SweepConfig) -> FockState {
    let compute = || {
        fock_expand(
            &bogoliubov(f, cfg.legs),
            cfg.expansion_cutoff,
            cfg.max_total_size,
        )
    };
    let Ok(dir) = std::env::var(CACHE_DIR_ENV) else {
        return compute();
    };
    let dir = PathBuf::from(dir);
    let file = dir.join(format!(
        "fock-l{}-f{}_{}_{}-c{}-b{}.json",
        cfg.legs, f.a1, f.a2, f.a3, cfg.expansion_cutoff, cfg.max_total_size
    ));
    if let Ok(text) = std::fs::read_to_string(&file) {
        if let Ok(state) = serde_json::from_str::<FockState>(&text) {
            return state;
        }
    }
    let state = compute();
    // Best-effort write-behind: a failed or raced write only costs a
    // recomputation next time.
    if std::fs::create_dir_all(&dir).is_ok() {
        if let Ok(json) = serde_json::to_string(&state) {
            let tmp = dir.join(format!(
                "{}.tmp{}",
                file.file_name().unwrap().to_string_lossy(),
                std::process::id()
            ));
            if std::fs::write(&tmp, json).is_ok() {
                let _ = std::fs::rename(&tmp, &file);
            }
        }
    }
    state
}

/// Evaluates one (tuple, framing) record.
fn evaluate(
    cfg: &SweepConfig,
    tuple: &[Partition],
    f: Framing,
    expansions: Option<&HashMap<Framing, FockState>>,
    index: usize,
) -> TupleRecord {
    let (bosonic_value, bosonic_path) = bosonic_side(cfg.legs, tuple, f);
    let (det_value, det_path) = fermionic_det(cfg, tuple, f);

    let mut fermionic = vec![PathValue {
        path: det_path,
        value: det_value.to_string(),
    }];
    let mut values = vec![bosonic_value.clone(), det_value];
    if let Some(states) = expansions {
        let key: Vec<FockBasisState> = tuple.iter().map(FockBasisState::from_partition).collect();
        let value = states[&f].coefficient(&key);
        fermionic.push(PathValue {
            path: "fermion-expansion".into(),
            value: value.to_string(),
        });
        values.push(value);
    }

    let matched = match cfg.mode {
        Mode::Exact => all_equal(&values),
        Mode::Sampled => {
            if sampled_refutes(cfg, index, &values) {
                false
            } else {
                all_equal(&values)
            }
        }
    };

    TupleRecord {
        partitions: tuple.iter().map(|p| p.parts().to_vec()).collect(),
        framing: framing_entries(cfg.legs, f),
        bosonic: PathValue {
            path: bosonic_path,
            value: bosonic_value.to_string(),
        },
        fermionic,
        matched,
    }
}

/// The bosonic (symmetric-function) side for the given leg count.
fn bosonic_side(legs: u8, tuple: &[Partition], f: Framing) -> (QRat, String) {
    match legs {
        1 => (
            QRat::q_half_pow(f.a1 * tuple[0].kappa()) * schur_at_rho(&tuple[0]),
            "framed-schur-specialization".into(),
        ),
        2 => (
            two_leg_coefficient(&tuple[0], &tuple[1], f.a1, f.a2),
            "framed-two-leg-skew-sum".into(),
        ),
        _ => {
            let v = w_framed(&tuple[0], &tuple[1], &tuple[2], &f);
            (v.value, "framed-skew-schur-formula".into())
        }
    }
}

/// The determinantal fermionic side for the given leg count.
fn fermionic_det(cfg: &SweepConfig, tuple: &[Partition], f: Framing) -> (QRat, String) {
    match cfg.legs {
        1 => (det_leg1(&tuple[0], f.a1), "fermion-det".into()),
        2 => (
            det_leg2(&tuple[0], &tuple[1], f.a1, f.a2),
            "fermion-det".into(),
        ),
        _ => (
            det_leg3_variant(&tuple[0], &tuple[1], &tuple[2], &f, cfg.sign_variant),
            format!("fermion-det:{}", cfg.sign_variant),
        ),
    }
}

fn framing_entries(legs: u8, f: Framing) -> Vec<i64> {
    [f.a1, f.a2, f.a3][..legs as usize].to_vec()
}

fn all_equal(values: &[QRat]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Sampled pre-filter: evaluates every side at per-record random
/// rational points. Returns true only on a proven difference (a valid
/// point where evaluations differ), which is an exact refutation.
fn sampled_refutes(cfg: &SweepConfig, index: usize, values: &[QRat]) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    let mut informative = 0u32;
    let mut draws = 0u32;
    // Denominators can vanish at unlucky points; allow extra draws.
    while informative < cfg.sample_points && draws < 4 * cfg.sample_points {
        draws += 1;
        let num = rng.gen_range(2i64..=97);
        let den = rng.gen_range(2i64..=97);
        if num == den {
            continue;
        }
        let t0 = BigRational::new(BigInt::from(num), BigInt::from(den));
        let evals: Option<Vec<BigRational>> = values.iter().map(|v| v.eval_at(&t0).ok()).collect();
        let Some(evals) = evals else { continue };
        informative += 1;
        if evals.windows(2).any(|w| w[0] != w[1]) {
            return true;
        }
    }
    false
}
