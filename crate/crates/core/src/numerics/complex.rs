use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Real;

/// Complex number over [`Real`]. Only the arithmetic the coefficient
/// evaluation and the oracle's linear solve need.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Complex {
        let im = Real::zero(re.prec());
        Complex { re, im }
    }

    /// Purely imaginary number i·im.
    pub fn from_imag(im: Real) -> Complex {
        let re = Real::zero(im.prec());
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Complex {
        Complex::from_real(Real::zero(prec))
    }

    pub fn one(prec: u32) -> Complex {
        Complex::from_real(Real::one(prec))
    }

    /// e^{iθ}.
    pub fn cis(theta: &Real) -> Complex {
        Complex::new(theta.cos(), theta.sin())
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        // hypot without overflow concerns: MPFR exponent range is huge
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Complex {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, n: i32) -> Complex {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Complex::one(self.prec());
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, r: &Complex) -> Complex {
        Complex::new(&self.re + &r.re, &self.im + &r.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, r: &Complex) -> Complex {
        Complex::new(&self.re - &r.re, &self.im - &r.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, r: &Complex) -> Complex {
        Complex::new(
            &self.re * &r.re - &self.im * &r.im,
            &self.re * &r.im + &self.im * &r.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, r: &Complex) -> Complex {
        let d = r.norm_sqr();
        Complex::new(
            (&self.re * &r.re + &self.im * &r.im) / &d,
            (&self.im * &r.re - &self.re * &r.im) / &d,
        )
    }
}

macro_rules! complex_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, r: Complex) -> Complex {
                (&self).$m(&r)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, r: &Complex) -> Complex {
                (&self).$m(r)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, r: Complex) -> Complex {
                self.$m(&r)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}
