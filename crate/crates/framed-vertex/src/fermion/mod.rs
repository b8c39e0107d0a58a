//! The fermionic side of the vertex: charged free-fermion Fock states,
//! creation/annihilation operators with exact signs, Bogoliubov
//! coefficients, determinantal coefficient formulas for one to three
//! legs, direct truncated expansion of the exponential operator, and the
//! truncated KP bilinear residual.
//!
//! * [`FockBasisState`], [`FockState`] — basis states of one leg and
//!   finite linear combinations over one to three legs.
//! * [`apply_psi`], [`apply_psi_star`] — mode operators with exact
//!   wedge-insertion and cross-leg Koszul signs.
//! * [`state_from_partition`] — the charge-0 basis state of a partition.
//! * [`bogoliubov`], [`BogoliubovCoeffs`] — the coefficient table
//!   `A^{ij}_{mn}(q; a)` for one, two, or three legs.
//! * [`epsilon_sign`] — the subset-shuffle permutation sign.
//! * [`det_leg1`], [`det_leg2`], [`det_leg3`], [`det_leg3_variant`] —
//!   determinantal closed forms for the vertex coefficients.
//! * [`SignVariant`] — the toggles for the ambiguous three-leg signs.
//! * [`fock_expand`] — direct expansion of
//!   `Π (1 + A^{ij}_{mn} ψ^{ij}_{mn})` applied to the vacuum.
//! * [`kp_bilinear_residual`], [`truncated_one_leg_state`] — the KP
//!   bilinear residual of a truncated charge-0 state.
//!
//! Half-integer modes `r` are stored as the integer code `r − 1/2`
//! throughout (so `1/2 ↦ 0` and `−1/2 ↦ −1`).

mod coeffs;
mod dets;
mod expand;
mod kp;
mod state;

pub use coeffs::{bogoliubov, BogoliubovCoeffs};
pub use dets::{det_leg1, det_leg2, det_leg3, det_leg3_variant, epsilon_sign, SignVariant};
pub use expand::fock_expand;
pub use kp::{kp_bilinear_residual, truncated_one_leg_state};
pub use state::{apply_psi, apply_psi_star, state_from_partition, FockBasisState, FockState};

use thiserror::Error;

/// Errors from the fermionic routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FermionError {
    /// `epsilon_sign` was called with a list that is not a subset.
    #[error("{subset:?} is not a subset of {set:?}")]
    NotASubset { set: Vec<i64>, subset: Vec<i64> },
    /// A residual was requested beyond the exact range of the input state.
    #[error("state exact only to size {available}, residual needs size {required}")]
    InsufficientTruncation { required: u64, available: u64 },
}
