//! Certification engine for (semi)stability of normal bundles of general
//! Brill-Noether curves in projective space.
//!
//! A Brill-Noether triple `(d, g, r)` describes a general nondegenerate
//! curve of degree `d` and genus `g` in P^r; it exists exactly when the
//! Brill-Noether number `rho(d,g,r) = g - (r+1)(g-d+r)` is nonnegative.
//! This crate decides, by a monotone fixed-point closure over a small set
//! of proven inductive rules (interpolation, genus-1 and genus-2 base
//! cases, elliptic-curve configurations, line attachments, and
//! rational-normal-curve attachments), whether the normal bundle of the
//! general such curve is certified semistable or stable, and emits a
//! machine-checkable derivation certificate for every certified triple.
//!
//! The crate also reproduces the published numerical artifacts for r = 4:
//! the per-genus degeneration thresholds, the 48 semistability-unknown
//! pairs, the 63 stability-unknown pairs, and the b2 split thresholds
//! with their bounds.

// Comparisons are written as `x >= r + 1` etc. to mirror the bounds as
// the theory states them.
#![allow(clippy::int_plus_one)]

pub mod bn;
pub mod closure;
pub mod number_theory;
pub mod rational;
pub mod render;
pub mod rules;
pub mod tables;

pub use bn::{
    adjusted_slope, farey_consecutive, genus_block_index, u_secancy, NodalSubbundleDatum, Status,
    Triple,
};
pub use closure::{
    compute_closure, crosscheck_closed_forms, thresholds_per_genus, unknown_pairs, Characteristic,
    Grid, Level, RuleSet, Schedule, StatusMap,
};
pub use rational::Rational;
pub use rules::{CertificateNode, RuleId};

/// Errors raised by domain constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("invalid triple (d={d}, g={g}, r={r}): requires d >= 0, g >= 0, r >= 3")]
    InvalidTriple { d: i64, g: i64, r: i64 },
    #[error("denominator {denom} exceeds Farey order {order}")]
    DenominatorExceedsOrder { denom: String, order: i64 },
    #[error("fractions not strictly ordered (lo must be < hi)")]
    NotOrdered,
    #[error("node codimension {value} outside [0, {rank}]")]
    CodimOutOfRange { value: i64, rank: i64 },
    #[error("b2 scan exhausted: no threshold found at or below {scan_limit}")]
    ScanExhausted { scan_limit: i64 },
    #[error("line budget (a={a}, b={b}, c={c}) invalid for r={r}: {reason}")]
    InvalidBudget {
        a: i64,
        b: i64,
        c: i64,
        r: i64,
        reason: String,
    },
}
