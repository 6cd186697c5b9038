use crate::error::{Error, Result};

use super::Real;

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: &Real) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::DomainError(format!(
            "log_gamma requires x > 0, got {}",
            x.to_f64()
        )));
    }
    Ok(x.ln_gamma_raw())
}

/// Γ(a)/Γ(b) through log space. Both arguments must be positive.
pub fn gamma_ratio(a: &Real, b: &Real) -> Result<Real> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}
