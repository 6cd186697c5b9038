use crate::error::{Error, Result};

use super::Real;

pub const MAX_ITERATIONS: usize = 200;

/// A sign-changing interval for a scalar function.
#[derive(Clone, Debug)]
pub struct Bracket {
    pub lo: Real,
    pub hi: Real,
    pub f_lo_sign: i32,
    pub f_hi_sign: i32,
}

impl Bracket {
    /// Evaluates `f` at both ends. Fails with `NoSignChange` unless the signs
    /// differ or one end is an exact root.
    pub fn new<F: Fn(&Real) -> Real>(f: F, lo: Real, hi: Real) -> Result<Bracket> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let f_lo_sign = f(&lo).signum_i();
        let f_hi_sign = f(&hi).signum_i();
        if f_lo_sign * f_hi_sign > 0 {
            return Err(Error::NoSignChange {
                lo: lo.to_f64(),
                hi: hi.to_f64(),
            });
        }
        Ok(Bracket {
            lo,
            hi,
            f_lo_sign,
            f_hi_sign,
        })
    }

    pub fn width(&self) -> Real {
        &self.hi - &self.lo
    }
}

/// Brent's method: inverse quadratic / secant steps safeguarded by
/// bisection. Returns a point whose enclosing bracket is at most `tol` wide
/// (plus a few ulps).
pub fn solve_root<F: Fn(&Real) -> Real>(f: F, bracket: &Bracket, tol: &Real) -> Result<Real> {
    let prec = bracket.lo.prec().max(bracket.hi.prec()).max(tol.prec());
    let eps = Real::epsilon(prec);
    let mut a = bracket.lo.to_prec(prec);
    let mut b = bracket.hi.to_prec(prec);
    let mut fa = f(&a);
    let mut fb = f(&b);
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if fa.signum_i() == fb.signum_i() {
        return Err(Error::NoSignChange {
            lo: a.to_f64(),
            hi: b.to_f64(),
        });
    }
    let mut c = a.clone();
    let mut fc = fa.clone();
    let mut d = &b - &a;
    let mut e = d.clone();
    // Force a bisection when two steps have not halved the bracket.
    let mut width_mark = d.abs();
    let mut since_mark = 0;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum_i() == fc.signum_i() {
            c = a.clone();
            fc = fa.clone();
            d = &b - &a;
            e = d.clone();
        }
        if fc.abs() < fb.abs() {
            a = b.clone();
            b = c.clone();
            c = a.clone();
            fa = fb.clone();
            fb = fc.clone();
            fc = fa.clone();
        }
        let tol1 = &eps * 2.0 * b.abs() + tol * 0.5;
        let xm = (&c - &b) * 0.5;
        if xm.abs() <= tol1 || fb.is_zero() {
            return Ok(b);
        }
        since_mark += 1;
        let stalled = since_mark >= 2 && xm.abs() * 2.0 > &width_mark * 0.5;
        if since_mark >= 2 {
            width_mark = xm.abs() * 2.0;
            since_mark = 0;
        }
        if !stalled && e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = &fb / &fa;
            let (mut p, mut q);
            if a == c {
                p = &xm * 2.0 * &s;
                q = 1.0 - &s;
            } else {
                let qq = &fa / &fc;
                let r = &fb / &fc;
                p = &s * (&xm * 2.0 * &qq * (&qq - &r) - (&b - &a) * (&r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (&s - 1.0);
            }
            if p.is_positive() {
                q = -q;
            }
            p = p.abs();
            let min1 = &xm * 3.0 * &q - (&tol1 * &q).abs();
            let min2 = (&e * &q).abs();
            if &p * 2.0 < min1.min(min2) {
                e = d;
                d = &p / &q;
            } else {
                d = xm.clone();
                e = d.clone();
            }
        } else {
            d = xm.clone();
            e = d.clone();
        }
        a = b.clone();
        fa = fb.clone();
        if d.abs() > tol1 {
            b += &d;
        } else if xm.is_negative() {
            b -= &tol1;
        } else {
            b += &tol1;
        }
        fb = f(&b);
    }
    let (lo, hi) = if b < c { (b, c) } else { (c, b) };
    Err(Error::NoConvergence {
        lo: lo.to_f64(),
        hi: hi.to_f64(),
    })
}
