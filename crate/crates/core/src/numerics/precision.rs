use crate::error::{Error, Result};

/// Decimal precisions for the working computation and the reference oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionCtx {
    pub working_digits: u32,
    pub oracle_digits: u32,
}

pub const DEFAULT_WORKING_DIGITS: u32 = 34;
pub const DEFAULT_ORACLE_DIGITS: u32 = 50;

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx {
            working_digits: DEFAULT_WORKING_DIGITS,
            oracle_digits: DEFAULT_ORACLE_DIGITS,
        }
    }
}

impl PrecisionCtx {
    pub fn new(working_digits: u32, oracle_digits: u32) -> Result<PrecisionCtx> {
        if working_digits < 15 {
            return Err(Error::InvalidPrecision(format!(
                "working_digits = {working_digits} < 15"
            )));
        }
        if oracle_digits < working_digits + 10 {
            return Err(Error::InvalidPrecision(format!(
                "oracle_digits = {oracle_digits} < working_digits + 10 = {}",
                working_digits + 10
            )));
        }
        Ok(PrecisionCtx {
            working_digits,
            oracle_digits,
        })
    }

    /// Working precision `digits`, oracle 16 digits above.
    pub fn with_working(digits: u32) -> Result<PrecisionCtx> {
        PrecisionCtx::new(digits, digits + 16)
    }

    /// Skips validation. Used to demonstrate failure modes at deliberately
    /// insufficient precision.
    pub fn unchecked(working_digits: u32, oracle_digits: u32) -> PrecisionCtx {
        PrecisionCtx {
            working_digits,
            oracle_digits,
        }
    }

    pub fn working_bits(&self) -> u32 {
        digits_to_bits(self.working_digits)
    }

    pub fn oracle_bits(&self) -> u32 {
        digits_to_bits(self.oracle_digits)
    }

    /// Context whose working precision is this context's oracle precision.
    pub fn promoted(&self) -> PrecisionCtx {
        PrecisionCtx::unchecked(self.oracle_digits, self.oracle_digits + 16)
    }
}

/// Bits needed for `digits` decimal digits plus a few guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let d = PrecisionCtx::default();
        assert_eq!(PrecisionCtx::new(d.working_digits, d.oracle_digits).unwrap(), d);
        assert!(d.oracle_bits() > d.working_bits());
    }

    #[test]
    fn rejects_low_working_precision() {
        assert!(matches!(PrecisionCtx::new(14, 40), Err(Error::InvalidPrecision(_))));
    }

    #[test]
    fn rejects_insufficient_oracle_gap() {
        assert!(PrecisionCtx::new(30, 39).is_err());
        assert!(PrecisionCtx::new(30, 40).is_ok());
    }

    #[test]
    fn bits_cover_digits() {
        assert!(digits_to_bits(34) >= 113);
        assert_eq!(digits_to_bits(15), 58);
    }
}
