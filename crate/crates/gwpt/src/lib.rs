//! Exact computations for the GW/PT descendent correspondence on the cap.
//!
//! Modules build on each other in order: truncated multivariate series,
//! partitions and characters, the bosonic Fock space, Heisenberg words,
//! the GW and PT vertex operators, the dressing operator, and the bracket
//! engine comparing the two sides.

// containers report emptiness through `is_zero`
#![allow(clippy::len_without_is_empty)]
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::suspicious_arithmetic_impl)]

pub mod dressing;
pub mod engine;
pub mod fock;
pub mod heis;
pub mod partitions;
pub mod series;
pub mod vertex_ops;
