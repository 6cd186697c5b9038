//! Precision plumbing: arbitrary-precision scalars, root bracketing, log-gamma.

mod complex;
mod gamma;
mod precision;
mod real;
mod root;

pub use complex::Complex;
pub use gamma::{gamma_ratio, log_gamma};
pub use precision::{digits_to_bits, PrecisionCtx, DEFAULT_ORACLE_DIGITS, DEFAULT_WORKING_DIGITS};
pub use real::Real;
pub use root::{solve_root, Bracket, MAX_ITERATIONS};
