use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Arbitrary-precision real scalar. Binary operations take the larger of the
/// two operand precisions.
#[derive(Clone, Debug)]
pub struct Real(Float);

impl Real {
    pub fn with_prec(prec: u32, x: f64) -> Real {
        Real(Float::with_val(prec, x))
    }

    pub fn zero(prec: u32) -> Real {
        Real(Float::new(prec))
    }

    pub fn one(prec: u32) -> Real {
        Real::with_prec(prec, 1.0)
    }

    pub fn from_int(prec: u32, n: i64) -> Real {
        Real(Float::with_val(prec, n))
    }

    pub fn ratio(prec: u32, num: i64, den: i64) -> Real {
        Real::from_int(prec, num) / Real::from_int(prec, den)
    }

    pub fn pi(prec: u32) -> Real {
        Real(Float::with_val(prec, Constant::Pi))
    }

    pub fn euler_gamma(prec: u32) -> Real {
        Real(Float::with_val(prec, Constant::Euler))
    }

    pub fn parse(prec: u32, s: &str) -> Option<Real> {
        Float::parse(s).ok().map(|p| Real(Float::with_val(prec, p)))
    }

    /// 2^-prec: unit roundoff scale at this precision.
    pub fn epsilon(prec: u32) -> Real {
        Real(Float::with_val(prec, Float::i_exp(1, 1 - prec as i32)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Same value rounded to `prec` bits.
    pub fn to_prec(&self, prec: u32) -> Real {
        Real(Float::with_val(prec, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn from_float(f: Float) -> Real {
        Real(f)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum_i(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    /// Binary exponent e with |x| in [2^(e-1), 2^e); None for zero.
    pub fn exponent(&self) -> Option<i32> {
        self.0.get_exp()
    }

    /// log10 |x| as f64 without overflow; -inf for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        Float::with_val(64, self.0.abs_ref()).log10().to_f64()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn cbrt(&self) -> Real {
        Real(self.0.clone().cbrt())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn log10(&self) -> Real {
        Real(self.0.clone().log10())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn tan(&self) -> Real {
        Real(self.0.clone().tan())
    }

    pub fn acos(&self) -> Real {
        Real(self.0.clone().acos())
    }

    pub fn asin(&self) -> Real {
        Real(self.0.clone().asin())
    }

    pub fn atan(&self) -> Real {
        Real(self.0.clone().atan())
    }

    /// atan2(self, x), self playing the role of y.
    pub fn atan2(&self, x: &Real) -> Real {
        let p = self.prec().max(x.prec());
        Real(Float::with_val(p, self.0.atan2_ref(&x.0)))
    }

    pub fn sinh(&self) -> Real {
        Real(self.0.clone().sinh())
    }

    pub fn cosh(&self) -> Real {
        Real(self.0.clone().cosh())
    }

    pub fn tanh(&self) -> Real {
        Real(self.0.clone().tanh())
    }

    pub fn coth(&self) -> Real {
        Real(self.0.clone().coth())
    }

    pub fn acosh(&self) -> Real {
        Real(self.0.clone().acosh())
    }

    pub fn asinh(&self) -> Real {
        Real(self.0.clone().asinh())
    }

    pub fn atanh(&self) -> Real {
        Real(self.0.clone().atanh())
    }

    pub fn gamma(&self) -> Real {
        Real(self.0.clone().gamma())
    }

    /// ln Γ(x) for x > 0.
    pub fn ln_gamma_raw(&self) -> Real {
        Real(self.0.clone().ln_gamma())
    }

    pub fn digamma(&self) -> Real {
        Real(self.0.clone().digamma())
    }

    pub fn powi(&self, n: i32) -> Real {
        Real(self.0.clone().pow(n))
    }

    pub fn powr(&self, e: &Real) -> Real {
        let p = self.prec().max(e.prec());
        Real(Float::with_val(p, (&self.0).pow(&e.0)))
    }

    pub fn floor(&self) -> Real {
        Real(self.0.clone().floor())
    }

    pub fn round(&self) -> Real {
        Real(self.0.clone().round())
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let s = format!("{:.*e}", digits.max(1), self.0);
        normalize_sci(&s, digits)
    }
}

// rug counts significant digits in the precision field; normalize to the
// `{:e}` shape of f64.
fn normalize_sci(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let m = mant.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match m.find('.') {
        Some(i) => (&m[..i], &m[i + 1..]),
        None => (m, ""),
    };
    let all: String = format!("{int_part}{frac_part}");
    let lead = all.find(|c: char| c != '0').unwrap_or(0);
    let sig: String = all[lead..].chars().chain(std::iter::repeat('0')).take(digits).collect();
    let e = exp + int_part.len() as i64 - 1 - lead as i64;
    let sign = if neg { "-" } else { "" };
    if digits <= 1 {
        format!("{sign}{sig}e{e}")
    } else {
        format!("{sign}{}.{}e{e}", &sig[..1], &sig[1..])
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(17);
        f.write_str(&self.to_sci(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(Float::with_val(p, (&self.0).$m(&rhs.0)))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for &Real {
            type Output = Real;
            fn $m(self, rhs: f64) -> Real {
                Real(Float::with_val(self.prec(), (&self.0).$m(rhs)))
            }
        }
        impl $tr<f64> for Real {
            type Output = Real;
            fn $m(self, rhs: f64) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<&Real> for f64 {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.prec(), self.$m(&rhs.0)))
            }
        }
        impl $tr<Real> for f64 {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $atr<&Real> for Real {
            fn $am(&mut self, rhs: &Real) {
                if rhs.prec() > self.prec() {
                    self.0.set_prec(rhs.prec());
                }
                self.0.$am(&rhs.0);
            }
        }
        impl $atr<Real> for Real {
            fn $am(&mut self, rhs: Real) {
                self.$am(&rhs);
            }
        }
        impl $atr<f64> for Real {
            fn $am(&mut self, rhs: f64) {
                self.0.$am(rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(Float::with_val(self.prec(), -&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_promotes_to_max() {
        let a = Real::with_prec(64, 1.0);
        let b = Real::with_prec(200, 3.0);
        assert_eq!((&a / &b).prec(), 200);
        let mut c = a.clone();
        c += &b;
        assert_eq!(c.prec(), 200);
    }

    #[test]
    fn third_is_accurate_at_high_precision() {
        let p = 300;
        let third = Real::ratio(p, 1, 3);
        let back = &third * 3.0 - 1.0;
        assert!(back.abs() < Real::epsilon(p) * 4.0);
    }

    #[test]
    fn mixed_f64_ops() {
        let x = Real::with_prec(128, 2.5);
        assert_eq!((1.0 - &x).to_f64(), -1.5);
        assert_eq!((&x * 2.0).to_f64(), 5.0);
        assert_eq!((10.0 / &x).to_f64(), 4.0);
        assert!(x > 2.0 && x < 3.0);
    }

    #[test]
    fn sci_formatting() {
        let x = Real::with_prec(128, -0.000123456789);
        assert_eq!(x.to_sci(5), "-1.2346e-4");
        assert_eq!(Real::with_prec(128, 1.0).to_sci(3), "1.00e0");
        assert_eq!(Real::with_prec(128, 250.0).to_sci(2), "2.5e2");
        assert_eq!(Real::zero(64).to_sci(3), "0.00e0");
    }

    #[test]
    fn sci_round_trips_through_f64() {
        for v in [1.0 / 3.0, -2.718281828459045e-200, 6.02214076e23, 0.1] {
            let s = Real::with_prec(113, v).to_sci(17);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn atan2_quadrants() {
        let p = 100;
        let one = Real::one(p);
        let m = -&one;
        let q = Real::pi(p) * 0.75;
        assert!((m.atan2(&m) + &q).abs() < 1e-28);
    }

    #[test]
    fn log10_abs_handles_huge_exponents() {
        let x = Real::with_prec(64, 10.0).powi(5000);
        assert!((x.log10_abs() - 5000.0).abs() < 1e-9);
        assert_eq!(Real::zero(64).log10_abs(), f64::NEG_INFINITY);
    }
}
