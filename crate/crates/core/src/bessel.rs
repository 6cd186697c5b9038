//! Cylinder functions J, Y, I, K of real order μ ≥ 0 and argument x > 0,
//! with derivatives, in arbitrary precision.
//!
//! The order is split as μ = m + n with |m| ≤ ½. The ratio f'/f at order μ
//! comes from a continued fraction, is carried down to order m by
//! recurrence, and the pair at order m is normalised by Temme's series
//! (x < 2) or a second continued fraction (x ≥ 2) through the Wronskian.
//! The second solution is then recurred upwards.

use crate::error::{Error, Result};
use crate::numerics::Real;

/// Extra bits carried internally.
const GUARD_BITS: u32 = 32;
const MAX_CF_ITERATIONS: usize = 200_000;
const MAX_SERIES_TERMS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

/// A function value and its derivative with respect to x.
#[derive(Clone, Debug)]
pub struct BesselPair {
    pub value: Real,
    pub deriv: Real,
}

/// (J, J', Y, Y').
#[derive(Clone, Debug)]
pub struct JyPair {
    pub j: BesselPair,
    pub y: BesselPair,
}

/// (I, I', K, K').
#[derive(Clone, Debug)]
pub struct IkPair {
    pub i: BesselPair,
    pub k: BesselPair,
}

pub fn cyl(kind: BesselKind, mu: &Real, x: &Real) -> Result<BesselPair> {
    match kind {
        BesselKind::J => Ok(bessel_jy(mu, x)?.j),
        BesselKind::Y => Ok(bessel_jy(mu, x)?.y),
        BesselKind::I => Ok(bessel_ik(mu, x)?.i),
        BesselKind::K => Ok(bessel_ik(mu, x)?.k),
    }
}

fn check(mu: &Real, x: &Real) -> Result<()> {
    if !mu.is_finite() || mu.is_negative() {
        return Err(Error::DomainError(format!("Bessel order {} must be >= 0", mu.to_f64())));
    }
    if !x.is_finite() || !x.is_positive() {
        return Err(Error::DomainError(format!("Bessel argument {} must be > 0", x.to_f64())));
    }
    Ok(())
}

struct Split {
    nl: u64,
    xmu: Real,
}

fn split_order(mu: &Real, shift: Option<&Real>) -> Split {
    // x < 2 or I/K: nearest integer; J/Y with x ≥ 2: keep xmu + nl ≥ x - ½
    let nl = match shift {
        None => (mu + 0.5).floor().to_f64(),
        Some(x) => (mu - x + 1.5).floor().to_f64().max(0.0),
    } as u64;
    let xmu = mu - nl as f64;
    Split { nl, xmu }
}

struct TemmeGammas {
    gam1: Real,
    gam2: Real,
    gampl: Real,
    gammi: Real,
}

// gam1 = (1/Γ(1−m) − 1/Γ(1+m))/(2m), gam2 = (1/Γ(1−m) + 1/Γ(1+m))/2.
fn temme_gammas(xmu: &Real, prec: u32) -> TemmeGammas {
    if xmu.is_zero() {
        return TemmeGammas {
            gam1: -Real::euler_gamma(prec),
            gam2: Real::one(prec),
            gampl: Real::one(prec),
            gammi: Real::one(prec),
        };
    }
    let lost = (-xmu.exponent().unwrap_or(0)).max(0) as u32;
    let hp = prec + lost + 16;
    let m = xmu.to_prec(hp);
    let gampl = (&m + 1.0).gamma().recip();
    let gammi = (1.0 - &m).gamma().recip();
    let gam1 = (&gammi - &gampl) / (&m * 2.0);
    let gam2 = (&gammi + &gampl) * 0.5;
    TemmeGammas {
        gam1: gam1.to_prec(prec),
        gam2: gam2.to_prec(prec),
        gampl: gampl.to_prec(prec),
        gammi: gammi.to_prec(prec),
    }
}

fn ratio_or_one(num: &Real, den: &Real) -> Real {
    if den.is_zero() {
        Real::one(num.prec())
    } else {
        num / den
    }
}

/// J_μ, Y_μ and derivatives.
pub fn bessel_jy(mu: &Real, x: &Real) -> Result<JyPair> {
    check(mu, x)?;
    let out = mu.prec().max(x.prec());
    let prec = out + GUARD_BITS;
    let xnu = mu.to_prec(prec);
    let x = x.to_prec(prec);
    let eps = Real::epsilon(prec);
    let pi = Real::pi(prec);
    let small = x < 2.0;
    let Split { nl, xmu } = if small {
        split_order(&xnu, None)
    } else {
        split_order(&xnu, Some(&x))
    };
    let xi = x.recip();
    let xi2 = &xi * 2.0;
    let w = &xi2 / &pi;

    // CF1: J'_ν/J_ν
    let tiny = Real::with_prec(prec, 1.0) * Real::epsilon(prec).square();
    let mut isign = 1i32;
    let mut h = &xnu * &xi;
    if h.abs() < tiny {
        h = tiny.clone();
    }
    let mut b = &xi2 * &xnu;
    let mut d = Real::zero(prec);
    let mut c = h.clone();
    let mut converged = false;
    for _ in 0..MAX_CF_ITERATIONS {
        b += &xi2;
        d = &b - &d;
        if d.abs() < tiny {
            d = tiny.clone();
        }
        c = &b - c.recip();
        if c.abs() < tiny {
            c = tiny.clone();
        }
        d = d.recip();
        let del = &c * &d;
        h = &h * &del;
        if d.is_negative() {
            isign = -isign;
        }
        if (del - 1.0).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::BesselNoConvergence("J/Y ratio continued fraction"));
    }

    let mut rjl = Real::with_prec(prec, isign as f64);
    let mut rjpl = &h * &rjl;
    let rjl1 = rjl.clone();
    let rjp1 = rjpl.clone();
    let mut fact = &xnu * &xi;
    for _ in 0..nl {
        let rjtemp = &fact * &rjl + &rjpl;
        fact -= &xi;
        rjpl = &fact * &rjtemp - &rjl;
        rjl = rjtemp;
    }
    if rjl.is_zero() {
        rjl = eps.clone();
    }
    let f = &rjpl / &rjl;

    let (rjmu, rymu, mut ry1);
    if small {
        let x2 = &x * 0.5;
        let pimu = &pi * &xmu;
        let fact = ratio_or_one(&pimu, &pimu.sin());
        let d = -x2.ln();
        let e = &xmu * &d;
        let fact2 = ratio_or_one(&e.sinh(), &e);
        let TemmeGammas { gam1, gam2, gampl, gammi } = temme_gammas(&xmu, prec);
        let mut ff = (&fact * 2.0 / &pi) * (&gam1 * e.cosh() + &gam2 * &fact2 * &d);
        let e = e.exp();
        let mut p = &e / (&gampl * &pi);
        let mut q = (&e * &pi * &gammi).recip();
        let pimu2 = &pimu * 0.5;
        let fact3 = ratio_or_one(&pimu2.sin(), &pimu2);
        let r = &pi * &pimu2 * fact3.square();
        let mut c = Real::one(prec);
        let dd = -x2.square();
        let mut sum = &ff + &r * &q;
        let mut sum1 = p.clone();
        let mu2 = xmu.square();
        let mut done = false;
        for i in 1..=MAX_SERIES_TERMS {
            let fi = i as f64;
            ff = (&ff * fi + &p + &q) / (fi * fi - &mu2);
            c = &c * &dd / fi;
            p = &p / (fi - &xmu);
            q = &q / (fi + &xmu);
            let del = &c * (&ff + &r * &q);
            sum += &del;
            let del1 = &c * &p - &del * fi;
            sum1 += &del1;
            if del.abs() < (sum.abs() + 1.0) * &eps {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::BesselNoConvergence("Y series"));
        }
        rymu = -sum;
        ry1 = -sum1 * &xi2;
        let rymup = &xmu * &xi * &rymu - &ry1;
        rjmu = &w / (&rymup - &f * &rymu);
    } else {
        let mut a = 0.25 - xmu.square();
        let mut p = &xi * -0.5;
        let mut q = Real::one(prec);
        let br = &x * 2.0;
        let mut bi = Real::with_prec(prec, 2.0);
        let mut fact = &a * &xi / (p.square() + q.square());
        let mut cr = &br + &q * &fact;
        let mut ci = &bi + &p * &fact;
        let mut den = br.square() + bi.square();
        let mut dr = &br / &den;
        let mut di = -(&bi / &den);
        let mut dlr = &cr * &dr - &ci * &di;
        let mut dli = &cr * &di + &ci * &dr;
        let mut temp = &p * &dlr - &q * &dli;
        q = &p * &dli + &q * &dlr;
        p = temp;
        let mut done = false;
        for i in 2..MAX_CF_ITERATIONS {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = &a * &dr + &br;
            di = &a * &di + &bi;
            if dr.abs() + di.abs() < tiny {
                dr = tiny.clone();
            }
            fact = &a / (cr.square() + ci.square());
            cr = &br + &cr * &fact;
            ci = &bi - &ci * &fact;
            if cr.abs() + ci.abs() < tiny {
                cr = tiny.clone();
            }
            den = dr.square() + di.square();
            dr = &dr / &den;
            di = -(&di / &den);
            dlr = &cr * &dr - &ci * &di;
            dli = &cr * &di + &ci * &dr;
            temp = &p * &dlr - &q * &dli;
            q = &p * &dli + &q * &dlr;
            p = temp;
            if (&dlr - 1.0).abs() + dli.abs() < eps {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::BesselNoConvergence("J/Y second continued fraction"));
        }
        let gam = (&p - &f) / &q;
        let mut rj = (&w / ((&p - &f) * &gam + &q)).sqrt();
        if rjl.is_negative() {
            rj = -rj;
        }
        rymu = &rj * &gam;
        let rymup = &rymu * (&p + &q / &gam);
        ry1 = &xmu * &xi * &rymu - &rymup;
        rjmu = rj;
    }
    let fact = &rjmu / &rjl;
    let rj = &rjl1 * &fact;
    let rjp = &rjp1 * &fact;
    let mut rymu = rymu;
    for i in 1..=nl {
        let rytemp = (&xmu + i as f64) * &xi2 * &ry1 - &rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let ryp = &xnu * &xi * &rymu - &ry1;
    Ok(JyPair {
        j: BesselPair {
            value: rj.to_prec(out),
            deriv: rjp.to_prec(out),
        },
        y: BesselPair {
            value: rymu.to_prec(out),
            deriv: ryp.to_prec(out),
        },
    })
}

/// I_μ, K_μ and derivatives.
pub fn bessel_ik(mu: &Real, x: &Real) -> Result<IkPair> {
    check(mu, x)?;
    let out = mu.prec().max(x.prec());
    let prec = out + GUARD_BITS;
    let xnu = mu.to_prec(prec);
    let x = x.to_prec(prec);
    let eps = Real::epsilon(prec);
    let pi = Real::pi(prec);
    let Split { nl, xmu } = split_order(&xnu, None);
    let xi = x.recip();
    let xi2 = &xi * 2.0;
    let tiny = Real::epsilon(prec).square();

    // CF1: I'_ν/I_ν
    let mut h = &xnu * &xi;
    if h.abs() < tiny {
        h = tiny.clone();
    }
    let mut b = &xi2 * &xnu;
    let mut d = Real::zero(prec);
    let mut c = h.clone();
    let mut converged = false;
    for _ in 0..MAX_CF_ITERATIONS {
        b += &xi2;
        d = (&b + &d).recip();
        c = &b + c.recip();
        let del = &c * &d;
        h = &h * &del;
        if (del - 1.0).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::BesselNoConvergence("I/K ratio continued fraction"));
    }
    let mut ril = Real::one(prec);
    let mut ripl = &h * &ril;
    let ril1 = ril.clone();
    let rip1 = ripl.clone();
    let mut fact = &xnu * &xi;
    for _ in 0..nl {
        let ritemp = &fact * &ril + &ripl;
        fact -= &xi;
        ripl = &fact * &ritemp + &ril;
        ril = ritemp;
    }
    let f = &ripl / &ril;

    let (rkmu, mut rk1);
    if x < 2.0 {
        let x2 = &x * 0.5;
        let pimu = &pi * &xmu;
        let fact = ratio_or_one(&pimu, &pimu.sin());
        let d = -x2.ln();
        let e = &xmu * &d;
        let fact2 = ratio_or_one(&e.sinh(), &e);
        let TemmeGammas { gam1, gam2, gampl, gammi } = temme_gammas(&xmu, prec);
        let mut ff = &fact * (&gam1 * e.cosh() + &gam2 * &fact2 * &d);
        let mut sum = ff.clone();
        let e = e.exp();
        let mut p = &e * 0.5 / &gampl;
        let mut q = (&e * &gammi).recip() * 0.5;
        let mut c = Real::one(prec);
        let dd = x2.square();
        let mut sum1 = p.clone();
        let mu2 = xmu.square();
        let mut done = false;
        for i in 1..=MAX_SERIES_TERMS {
            let fi = i as f64;
            ff = (&ff * fi + &p + &q) / (fi * fi - &mu2);
            c = &c * &dd / fi;
            p = &p / (fi - &xmu);
            q = &q / (fi + &xmu);
            let del = &c * &ff;
            sum += &del;
            let del1 = &c * (&p - &ff * fi);
            sum1 += &del1;
            if del.abs() < sum.abs() * &eps {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::BesselNoConvergence("K series"));
        }
        rkmu = sum;
        rk1 = sum1 * &xi2;
    } else {
        let mut b = (&x + 1.0) * 2.0;
        let mut d = b.recip();
        let mut h = d.clone();
        let mut delh = d.clone();
        let mut q1 = Real::zero(prec);
        let mut q2 = Real::one(prec);
        let a1 = 0.25 - xmu.square();
        let mut q = a1.clone();
        let mut c = a1.clone();
        let mut a = -&a1;
        let mut s = &q * &delh + 1.0;
        let mut done = false;
        for i in 2..MAX_CF_ITERATIONS {
            a -= 2.0 * (i - 1) as f64;
            c = -(&a * &c) / i as f64;
            let qnew = (&q1 - &b * &q2) / &a;
            q1 = q2;
            q2 = qnew;
            q += &c * &q2;
            b += 2.0;
            d = (&b + &a * &d).recip();
            delh = (&b * &d - 1.0) * &delh;
            h += &delh;
            let dels = &q * &delh;
            s += &dels;
            if (dels / &s).abs() < eps {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::BesselNoConvergence("K second continued fraction"));
        }
        let h = &a1 * &h;
        rkmu = (&pi / (&x * 2.0)).sqrt() * (-&x).exp() / &s;
        rk1 = &rkmu * (&xmu + &x + 0.5 - h) * &xi;
    }
    let rkmup = &xmu * &xi * &rkmu - &rk1;
    let rimu = &xi / (&f * &rkmu - &rkmup);
    let ri = &rimu * &ril1 / &ril;
    let rip = &rimu * &rip1 / &ril;
    let mut rkmu = rkmu;
    for i in 1..=nl {
        let rktemp = (&xmu + i as f64) * &xi2 * &rk1 + &rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    let rkp = &xnu * &xi * &rkmu - &rk1;
    Ok(IkPair {
        i: BesselPair {
            value: ri.to_prec(out),
            deriv: rip.to_prec(out),
        },
        k: BesselPair {
            value: rkmu.to_prec(out),
            deriv: rkp.to_prec(out),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 121;

    fn r(x: f64) -> Real {
        Real::with_prec(P, x)
    }

    fn rel(a: &Real, b: &Real) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn integer_order_reference_values() {
        let jy = bessel_jy(&r(0.0), &r(1.0)).unwrap();
        assert!(rel(&jy.j.value, &r(0.765_197_686_557_966_6)) < 1e-15);
        assert!(rel(&jy.y.value, &r(0.088_256_964_215_676_96)) < 1e-15);
        let ik = bessel_ik(&r(0.0), &r(1.0)).unwrap();
        assert!(rel(&ik.i.value, &r(1.266_065_877_752_008_4)) < 1e-15);
        assert!(rel(&ik.k.value, &r(0.421_024_438_240_708_34)) < 1e-15);
    }

    #[test]
    fn half_order_closed_forms() {
        let pi = Real::pi(P);
        for &xv in &[0.3, 1.7, 2.0, 9.5, 60.0] {
            let x = r(xv);
            let amp = (r(2.0) / (&pi * &x)).sqrt();
            let jy = bessel_jy(&r(0.5), &x).unwrap();
            assert!(rel(&jy.j.value, &(&amp * x.sin())) < 1e-32, "J x={xv}");
            assert!(rel(&jy.y.value, &-(&amp * x.cos())) < 1e-32, "Y x={xv}");
            let ik = bessel_ik(&r(0.5), &x).unwrap();
            assert!(rel(&ik.i.value, &(&amp * x.sinh())) < 1e-32, "I x={xv}");
            let k = (&pi / (&x * 2.0)).sqrt() * (-&x).exp();
            assert!(rel(&ik.k.value, &k) < 1e-32, "K x={xv}");
        }
    }

    #[test]
    fn wronskians() {
        let pi = Real::pi(P);
        for &m in &[0.0, 0.25, 1.0, 3.7, 12.5, 40.0] {
            for &xv in &[0.05, 1.0, 1.99, 2.01, 7.0, 35.0, 120.0] {
                let (mu, x) = (r(m), r(xv));
                let jy = bessel_jy(&mu, &x).unwrap();
                let wr = &jy.j.value * &jy.y.deriv - &jy.j.deriv * &jy.y.value;
                let want = r(2.0) / (&pi * &x);
                assert!(rel(&wr, &want) < 1e-30, "JY mu={m} x={xv}");
                let ik = bessel_ik(&mu, &x).unwrap();
                let wr = &ik.i.value * &ik.k.deriv - &ik.i.deriv * &ik.k.value;
                assert!(rel(&wr, &-x.recip()) < 1e-30, "IK mu={m} x={xv}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_jy(&r(-1.0), &r(1.0)).is_err());
        assert!(bessel_ik(&r(1.0), &r(0.0)).is_err());
        assert!(cyl(BesselKind::K, &r(0.0), &r(-2.0)).is_err());
    }
}
