//! Exact truncation combinatorics for GL(n) in the Weyl model: a point H of
//! a_0 = Q^n stands for g, and H_P(δg) for the a_P-projection of wH with w
//! a minimal representative of W_P\W.
//!
//! A pair (P, w) is the same thing as an ordered set partition of the
//! coordinates, so every indicator reduces to sign tests on block sums of
//! an integer rescaling of H.

mod model;
mod parabolic;
mod point;

use thiserror::Error;

pub use model::{
    arthur_partition_check, arthur_sums, canonical_pair, cone_members, cone_membership,
    degree_instability, degree_instability_with, extremal_max_pair, indicator_chi, indicator_e,
    indicator_e_report, indicator_f, indicator_sigma, indicator_tau, indicator_tau_hat,
    is_canonical_by_conditions, langlands_sum, levi_sum_tau_hat, pairs_meeting_conditions,
    semistability_conditions, ArthurSums, CanonicalPair, DegreeRange, EReport, ExtremalPair,
    WeylModel, MAX_RANK,
};
pub use parabolic::{
    ordered_partitions_with_sizes, pi_weights, SemiStandardParabolic, StandardParabolic,
};
pub use point::{grid_points, sample_points, ConePoint, Lattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruncationError {
    #[error("expected a point of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{p} is not contained in {q}")]
    NotRefinement { p: String, q: String },
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error("tie between maximal candidates {candidates:?}")]
    WallTie { candidates: Vec<String> },
    #[error("{0} lies on a wall")]
    OnWall(String),
    #[error("point too large for exact integer evaluation")]
    Overflow,
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("rank {n} is outside the supported range 1..={max}")]
    UnsupportedRank { n: usize, max: usize },
    #[error("cannot parse point {0:?}; expected rationals such as \"1,-1/2,3\"")]
    Parse(String),
}
