//! Exact arithmetic kernel.

pub mod analytic;
mod monomial;
mod scalar;
pub mod special;
mod trunc;

pub use analytic::{div, exp, inv, log, pow, pow_scalar, sqrt};
pub use monomial::{Monomial, Var, MAX_MODE, MAX_XJ, NV};
pub use scalar::Scalar;
pub use special::{bernoulli, f3_series, zeta_negative};
pub use trunc::{TruncSeries, Window, NEG_INF, POS_INF};

/// The grading `deg u = deg t = −deg z = 1`.
pub const GRADING_UTZ: [(Var, i32); 3] = [(Var::U, 1), (Var::T, 1), (Var::Z, -1)];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("argument has a nonzero constant term {0}")]
    ConstantTerm(String),
    #[error("series did not terminate inside its window")]
    NoConvergence,
    #[error("coefficient of {var}^{needed} requested but the window stops at {available}")]
    Insufficient { var: String, needed: i32, available: i32 },
    #[error("operation needs a series exact in {var}")]
    NotExact { var: String },
    #[error("odd powers of theta survive: {0:?}")]
    OddTheta(Vec<String>),
    #[error("parse error near {0:?}")]
    Parse(String),
}
