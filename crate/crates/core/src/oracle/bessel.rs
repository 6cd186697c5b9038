//! Power-series reference values for J, Y, I, K, used to cross-check the
//! production Bessel routines. Precision is raised until the cancellation
//! between series terms is absorbed.

use crate::bessel::BesselKind;
use crate::error::{Error, Result};
use crate::numerics::{digits_to_bits, Real};

const INITIAL_GUARD_BITS: u32 = 64;
const MAX_TERMS: usize = 1_000_000;
const MAX_GUARD_BITS: u32 = 1 << 16;

struct Sum {
    value: Real,
    max_term: Real,
}

// Σ_{k≥0} s^k (x/2)^{2k+ν} / (k! Γ(k+ν+1)) with s = −1 (J) or +1 (I).
fn power_series(nu: &Real, x: &Real, alternating: bool, prec: u32) -> Result<Sum> {
    let nu = nu.to_prec(prec);
    let x = x.to_prec(prec);
    let half = &x * 0.5;
    let q = if alternating { -half.square() } else { half.square() };
    let lead = &nu + 1.0;
    // leading term (x/2)^ν / Γ(ν+1), zero when ν+1 is a pole
    let mut k0 = 0usize;
    if lead.round() == lead && !lead.is_positive() {
        k0 = (-&lead).to_f64() as usize + 1;
    }
    let mut term = half.powr(&(&nu + 2.0 * k0 as f64)) / (&nu + (k0 + 1) as f64).gamma();
    for j in 1..=k0 {
        term /= j as f64;
        if alternating {
            term = -term;
        }
    }
    let eps = Real::epsilon(prec);
    let mut value = term.clone();
    let mut max_term = term.abs();
    let mut k = k0;
    for _ in 0..MAX_TERMS {
        k += 1;
        term = &term * &q / ((k as f64) * (&nu + k as f64));
        value += &term;
        let at = term.abs();
        if at > max_term {
            max_term = at.clone();
        }
        if (k as f64) > half.to_f64() && at <= value.abs() * &eps {
            return Ok(Sum { value, max_term });
        }
    }
    Err(Error::BesselNoConvergence("oracle power series"))
}

// None when the sum cancelled to exactly zero, which says nothing about
// how many bits were lost.
fn lost_bits(s: &Sum) -> Option<u32> {
    if s.value.is_zero() {
        return s.max_term.is_zero().then_some(0);
    }
    Some(((&s.max_term / s.value.abs()).log10_abs() * std::f64::consts::LOG2_10).max(0.0) as u32)
}

fn adaptive<F: Fn(u32) -> Result<Sum>>(target: u32, f: F) -> Result<Real> {
    let mut guard = INITIAL_GUARD_BITS;
    while guard <= MAX_GUARD_BITS {
        let s = f(target + guard)?;
        match lost_bits(&s) {
            Some(lost) if lost + 16 <= guard => return Ok(s.value.to_prec(target)),
            Some(lost) => guard = guard.max(lost + INITIAL_GUARD_BITS),
            None => guard *= 2,
        }
    }
    Err(Error::BesselNoConvergence("oracle precision escalation"))
}

fn is_integer(mu: &Real) -> bool {
    mu.round() == *mu
}

// Y_n by its logarithmic series.
fn y_integer(n: u64, x: &Real, prec: u32) -> Result<Sum> {
    let x = x.to_prec(prec);
    let pi = Real::pi(prec);
    let half = &x * 0.5;
    let q = half.square();
    let mut max_term = Real::zero(prec);
    // −(x/2)^{−n}/π Σ_{k<n} (n−k−1)!/k! (x²/4)^k
    let mut finite = Real::zero(prec);
    if n > 0 {
        let mut term = Real::from_int(prec, 1) * factorial(n - 1, prec);
        for k in 0..n {
            if k > 0 {
                term = &term * &q / ((k * (n - k)) as f64);
            }
            finite += &term;
            max_term = max_term.max(term.abs());
        }
        finite = -(finite * half.powi(-(n as i32)) / &pi);
        max_term = &max_term * half.powi(-(n as i32)) / &pi;
    }
    let j = power_series(&Real::from_int(prec, n as i64), &x, true, prec)?;
    let log_part = half.ln() * 2.0 / &pi * &j.value;
    max_term = max_term.max((half.ln() * 2.0 / &pi * &j.max_term).abs());
    // −(x/2)^n/π Σ (ψ(k+1)+ψ(n+k+1)) (−x²/4)^k / (k!(n+k)!)
    let mut psi_a = -Real::euler_gamma(prec);
    let mut psi_b = psi_a.clone();
    for m in 1..=n {
        psi_b += Real::with_prec(prec, 1.0) / m as f64;
    }
    let mut coef = factorial(n, prec).recip();
    let mut tail = Real::zero(prec);
    let eps = Real::epsilon(prec);
    let mut k = 0u64;
    loop {
        let term = (&psi_a + &psi_b) * &coef;
        tail += &term;
        max_term = max_term.max(term.abs() * half.powi(n as i32) / &pi);
        k += 1;
        if k as f64 > half.to_f64() && term.abs() <= tail.abs() * &eps {
            break;
        }
        if k as usize > MAX_TERMS {
            return Err(Error::BesselNoConvergence("oracle Y series"));
        }
        psi_a += Real::with_prec(prec, 1.0) / k as f64;
        psi_b += Real::with_prec(prec, 1.0) / (n + k) as f64;
        coef = -(&coef * &q) / ((k * (n + k)) as f64);
    }
    let tail = -(tail * half.powi(n as i32) / &pi);
    Ok(Sum {
        value: finite + log_part + tail,
        max_term,
    })
}

// K_n by its logarithmic series.
fn k_integer(n: u64, x: &Real, prec: u32) -> Result<Sum> {
    let x = x.to_prec(prec);
    let half = &x * 0.5;
    let q = half.square();
    let mut max_term = Real::zero(prec);
    // ½(x/2)^{−n} Σ_{k<n} (n−k−1)!/k! (−x²/4)^k
    let mut finite = Real::zero(prec);
    if n > 0 {
        let mut term = factorial(n - 1, prec);
        for k in 0..n {
            if k > 0 {
                term = -(&term * &q) / ((k * (n - k)) as f64);
            }
            finite += &term;
            max_term = max_term.max(term.abs());
        }
        finite = finite * half.powi(-(n as i32)) * 0.5;
        max_term = &max_term * half.powi(-(n as i32)) * 0.5;
    }
    let i = power_series(&Real::from_int(prec, n as i64), &x, false, prec)?;
    let sgn = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let log_part = half.ln() * &i.value * sgn;
    max_term = max_term.max((half.ln() * &i.max_term).abs());
    // (−1)^n ½ (x/2)^n Σ (ψ(k+1)+ψ(n+k+1)) (x²/4)^k / (k!(n+k)!)
    let mut psi_a = -Real::euler_gamma(prec);
    let mut psi_b = psi_a.clone();
    for m in 1..=n {
        psi_b += Real::with_prec(prec, 1.0) / m as f64;
    }
    let mut coef = factorial(n, prec).recip();
    let mut tail = Real::zero(prec);
    let eps = Real::epsilon(prec);
    let mut k = 0u64;
    loop {
        let term = (&psi_a + &psi_b) * &coef;
        tail += &term;
        k += 1;
        if k as f64 > half.to_f64() && term.abs() <= tail.abs() * &eps {
            break;
        }
        if k as usize > MAX_TERMS {
            return Err(Error::BesselNoConvergence("oracle K series"));
        }
        psi_a += Real::with_prec(prec, 1.0) / k as f64;
        psi_b += Real::with_prec(prec, 1.0) / (n + k) as f64;
        coef = &coef * &q / ((k * (n + k)) as f64);
    }
    let tail = tail * half.powi(n as i32) * 0.5 * -sgn;
    max_term = max_term.max(tail.abs());
    Ok(Sum {
        value: finite + log_part + tail,
        max_term,
    })
}

fn factorial(n: u64, prec: u32) -> Real {
    let mut f = Real::one(prec);
    for k in 2..=n {
        f *= k as f64;
    }
    f
}

// Y_ν = (J_ν cos νπ − J_{−ν})/sin νπ, K_ν = π(I_{−ν} − I_ν)/(2 sin νπ).
fn second_kind_noninteger(mu: &Real, x: &Real, modified: bool, prec: u32) -> Result<Sum> {
    let mu = mu.to_prec(prec);
    let pi = Real::pi(prec);
    let pos = power_series(&mu, x, !modified, prec)?;
    let neg = power_series(&-&mu, x, !modified, prec)?;
    let s = (&mu * &pi).sin();
    let max_term = pos.max_term.max(neg.max_term) / s.abs();
    let value = if modified {
        &pi * (neg.value - pos.value) / (s * 2.0)
    } else {
        (pos.value * (&mu * &pi).cos() - neg.value) / s
    };
    Ok(Sum { value, max_term })
}

/// Reference value of 𝒞_μ(x) to `digits` significant digits.
pub fn oracle_bessel(kind: BesselKind, mu: &Real, x: &Real, digits: u32) -> Result<Real> {
    if !x.is_positive() || mu.is_negative() {
        return Err(Error::DomainError("oracle Bessel needs mu >= 0, x > 0".into()));
    }
    let target = digits_to_bits(digits);
    match kind {
        BesselKind::J => adaptive(target, |p| power_series(mu, x, true, p)),
        BesselKind::I => adaptive(target, |p| power_series(mu, x, false, p)),
        BesselKind::Y if is_integer(mu) => adaptive(target, |p| y_integer(mu.to_f64() as u64, x, p)),
        BesselKind::K if is_integer(mu) => adaptive(target, |p| k_integer(mu.to_f64() as u64, x, p)),
        BesselKind::Y => adaptive(target, |p| second_kind_noninteger(mu, x, false, p)),
        BesselKind::K => adaptive(target, |p| second_kind_noninteger(mu, x, true, p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Real {
        Real::with_prec(200, x)
    }

    #[test]
    fn known_values() {
        let cases = [
            (BesselKind::J, 0.0, 1.0, 0.765_197_686_557_966_6),
            (BesselKind::Y, 0.0, 1.0, 0.088_256_964_215_676_96),
            (BesselKind::I, 0.0, 1.0, 1.266_065_877_752_008_4),
            (BesselKind::K, 0.0, 1.0, 0.421_024_438_240_708_34),
            (BesselKind::K, 2.0, 3.0, 0.061_510_458_471_742_05),
        ];
        for (k, m, x, want) in cases {
            let v = oracle_bessel(k, &r(m), &r(x), 40).unwrap().to_f64();
            assert!((v - want).abs() < 1e-15 * want.abs(), "{k:?} {m} {x}: {v}");
        }
    }

    #[test]
    fn half_order_second_kind() {
        let x = r(7.3);
        let y = oracle_bessel(BesselKind::Y, &r(0.5), &x, 40).unwrap();
        let want = -(r(2.0) / (Real::pi(200) * &x)).sqrt() * x.cos();
        assert!(((y - &want) / want).abs() < 1e-38);
    }
}
