//! The free commutative Q-algebra on the symbols xi(a + b s): the orbit
//! zetas Z_o and Z^M, the alternating sums H_o, and the orbit-indexed
//! generating series whose logarithm produces the H_o.

mod expr;
mod orbit_zeta;
mod series;

use thiserror::Error;

pub use expr::{xi_expr_equal, XiExpression, XiFactor, XiMonomial};
pub use orbit_zeta::{h_orbit, z_levi, z_monomial, z_orbit};
pub use series::{orbit_series_log, OrbitSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("xi({a}+{b}s) needs a >= 1 and b >= 1")]
    InvalidFactor { a: u32, b: u32 },
    #[error("cannot parse xi-expression {0:?}")]
    Parse(String),
}
