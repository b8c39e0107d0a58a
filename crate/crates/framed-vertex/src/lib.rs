//! Exact arithmetic engine for the framed topological vertex.
//!
//! The crate computes the vertex two independent ways so that a harness can
//! compare them coefficient by coefficient:
//!
//! * a combinatorial route through specialized (skew) Schur functions
//!   ([`specialize`], [`vertex`]), and
//! * a fermionic route through canonical anticommutation relations,
//!   Bogoliubov coefficients and their determinantal expansions
//!   ([`fermion`]).
//!
//! Shared substrate: exact q-series arithmetic in the fraction field
//! `Q(q^{1/24})` ([`qseries`]) and integer partition combinatorics
//! ([`partitions`]).
//!
//! All values are exact; nothing in this crate does floating point.

pub mod fermion;
pub mod partitions;
pub mod qseries;
pub mod specialize;
pub mod vertex;
