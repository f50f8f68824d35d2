//! Exact symbolic calculator for strongly positive representation data of
//! metaplectic groups and odd general spin groups.
//!
//! Data is described by classification tuples `(a_1, ..., a_k)` per cuspidal
//! line (see [`types`]). The crate validates and enumerates such data
//! ([`classify`]), expands Jacquet modules ([`jacquet`]), and computes Aubert
//! duals by a closed form and by an independent iterative algorithm
//! ([`dual`]). [`verify`] cross-checks everything over exhaustive
//! enumerations. All arithmetic is exact.

// Error variants carry exact offending values; they are cold-path only.
#![allow(clippy::result_large_err)]

pub mod classify;
pub mod cli;
pub mod dual;
pub mod jacquet;
pub mod rational;
pub mod types;
pub mod verify;

pub use classify::{
    cuspidal_support, enumerate_sp, inducing_segments, k_prime, validate_sp, validate_tuple,
    ValidationReport, Violation, ViolationCode,
};
pub use dual::{check_trace, dual, dual_closed_line, dual_iterative_line, DualTrace, TraceStep};
pub use jacquet::{mu_star, mu_star_line, term_for_b, MuStarTerm};
pub use rational::Rational;
pub use types::{
    CuspidalLine, Error, ExponentMultiset, GroupFamily, LanglandsData, SPRep, SPTuple, Segment,
};
