//! Nilpotent contributions to the trace formula for GL(n) over Q.
//!
//! - [`orbits`]: partitions, Young diagrams, induction and Levi-orbit classes.
//! - [`xi_symbolic`]: exact algebra of products of ξ(a + bs), Z_o, H_o and the
//!   orbit generating series.
//! - [`xi_numeric`]: multiprecision ξ, Laurent expansion at s = 0, pole orders
//!   and residues.
//! - [`truncation`]: exact truncation combinatorics in the Weyl model.
//! - [`report`]: report builders used by the `nilzeta` binary.

pub mod orbits;
pub mod rational;
pub mod report;
pub mod truncation;
pub mod xi_numeric;
pub mod xi_symbolic;

pub use orbits::{LeviOrbitClass, LeviType, Partition, YoungDiagram};
pub use truncation::{CanonicalPair, ConePoint, SemiStandardParabolic, StandardParabolic};
pub use xi_numeric::{LaurentSeries, PoleOrder, PrecisionConfig, XiPointExpansion};
pub use xi_symbolic::{OrbitSeries, XiExpression, XiFactor, XiMonomial};
