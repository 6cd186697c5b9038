//! Associated Legendre and Ferrers functions of large degree, evaluated by
//! Bessel-type expansions that are uniform in the order, together with an
//! independent high-precision reference implementation.

// tolerance tests are written !(x <= tol) so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod error;
pub mod laurent;
pub mod legendre;
pub mod lgcoeff;
pub mod mapping;
pub mod numerics;
pub mod oracle;

pub use error::{Error, Result};
pub use numerics::{PrecisionCtx, Real};
