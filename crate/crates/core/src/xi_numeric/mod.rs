//! Numerics of the completed zeta function ξ(s) = π^{-s/2} Γ(s/2) ζ(s):
//! Taylor data at integer points by contour integration, Laurent expansion
//! of xi-expressions at s = 0, pole orders and residues, and a formal
//! cancellation check on the principal parts.

mod formal;
mod kernel;
mod laurent;
pub mod mp;
pub mod special;

use thiserror::Error;

pub use formal::{
    formal_cancellation_check, FormalCoefficient, FormalReport, PoleComparison, Poly, Symbol,
};
pub use kernel::{
    polar_constant_limit, with_special, xi_derivative_fd, xi_direct, xi_expansion_at,
    xi_expansion_at_one, xi_value, Approx, PointKind, PrecisionConfig, XiPointExpansion, XiTable,
    DIGITS_ENV, GUARD_DIGITS,
};
pub use laurent::{
    factor_series, laurent_expand, laurent_expand_with, residue_at_zero, residue_at_zero_with,
    LaurentSeries, Leading, PoleOrder, PrincipalTerm, ResidueReport, Significance, NOISE_FACTOR,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("invalid precision configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "xi has no expansion point at {0} here; points must be integers >= 1 (>= 2 for xi_value)"
    )]
    InvalidPoint(u32),
    #[error("precision unachievable for {what}: error estimate {estimate:e} exceeds requested {requested:e}")]
    PrecisionUnachievable {
        what: String,
        estimate: f64,
        requested: f64,
    },
    #[error("expansion order {order} is too small for {polar} polar factors; need at least {}", polar + 2)]
    InsufficientOrder { order: usize, polar: usize },
}
