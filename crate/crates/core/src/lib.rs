//! Symbolic-numeric engine for the q-deformed conformable fractional calculus
//! and the q,alpha-Natural transform.
//!
//! Functions are truncated series in `t^alpha` ([`AlphaSeries`]) or linear
//! combinations of deformed special functions ([`TimeExpr`]). Their
//! transforms live in the variable `w = s^alpha / u^alpha`
//! ([`TransformExpr`]). The [`oracle`] module evaluates the defining
//! Jackson sums numerically and is independent of the symbolic layer.

pub mod alphaseries;
pub mod error;
pub mod inverse;
pub mod json;
pub mod odesolver;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod qcalculus;
pub mod qcore;
pub mod rational;
pub mod scalar;
pub mod transform;

pub use alphaseries::{AlphaSeries, TimeAtom, TimeExpr};
pub use error::{QError, Result};
pub use params::QParams;
pub use poly::Poly;
pub use rational::RationalFn;
pub use scalar::{Mode, Scalar};
pub use transform::TransformExpr;
