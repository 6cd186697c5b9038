//! Parameters and point resolution: region, β, ζ and β̂ for real t ≥ 0.
//!
//! ζ is found from the implicit matching equations in a square-root type
//! variable so that the solve stays well conditioned at the turning point:
//!
//! * oscillatory, 0 ≤ t < σ: w = √(ζ−α²),
//!   w − α·atan2(w, α) = arccos(t/σ) − α·arccos(αt / (σ√(1−t²)))
//! * monotone, σ ≤ t < 1: √(α²−ζ) = α·tanh v,
//!   α(v − tanh v) = α·artanh(√(t²−σ²)/(αt)) − arccosh(t/σ)
//! * cut, t > 1: |ζ| = α²/sinh²v,
//!   α(v − coth v) = (α/2)·ln((W+1)/(W−1)) − arccosh(t/σ), W = √(t²−σ²)/(αt)
//!
//! For α = 0 the oscillatory and cut branches reduce to ζ = arccos²t and
//! |ζ| = arccosh²t.

use crate::error::{Error, Result};
use crate::numerics::{digits_to_bits, solve_root, Bracket, Complex, PrecisionCtx, Real};

/// Largest admissible α is 1 − DELTA.
pub const DELTA: f64 = 0.05;
/// Points closer than this to σ are treated as the turning point itself.
pub const TURNING_POINT_SNAP: f64 = 1e-14;
/// Points closer than this to t = 1 are rejected.
pub const SINGULAR_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
enum OrderSpec {
    Alpha(f64),
    Mu(f64),
}

/// Degree ν and order μ = uα with u = ν + 1/2. Derived quantities are
/// produced at whatever precision the caller asks for, from the exact f64
/// inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegendreParams {
    nu: f64,
    order: OrderSpec,
}

impl LegendreParams {
    pub fn from_alpha(nu: f64, alpha: f64) -> Result<LegendreParams> {
        LegendreParams::validate(nu, OrderSpec::Alpha(alpha))
    }

    pub fn from_mu(nu: f64, mu: f64) -> Result<LegendreParams> {
        LegendreParams::validate(nu, OrderSpec::Mu(mu))
    }

    fn validate(nu: f64, order: OrderSpec) -> Result<LegendreParams> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::InvalidParams(format!("nu = {nu} must be finite and >= 0")));
        }
        let p = LegendreParams { nu, order };
        let (mu, alpha) = (p.mu_f64(), p.alpha_f64());
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(Error::InvalidParams(format!("mu = {mu} must be finite and >= 0")));
        }
        if alpha > 1.0 - DELTA + 1e-15 {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(p)
    }

    pub fn nu_f64(&self) -> f64 {
        self.nu
    }

    pub fn u_f64(&self) -> f64 {
        self.nu + 0.5
    }

    pub fn mu_f64(&self) -> f64 {
        match self.order {
            OrderSpec::Alpha(a) => a * self.u_f64(),
            OrderSpec::Mu(m) => m,
        }
    }

    pub fn alpha_f64(&self) -> f64 {
        match self.order {
            OrderSpec::Alpha(a) => a,
            OrderSpec::Mu(m) => m / self.u_f64(),
        }
    }

    pub fn sigma_f64(&self) -> f64 {
        let a = self.alpha_f64();
        (1.0 - a * a).sqrt()
    }

    pub fn nu(&self, prec: u32) -> Real {
        Real::with_prec(prec, self.nu)
    }

    pub fn u(&self, prec: u32) -> Real {
        Real::with_prec(prec, self.nu) + 0.5
    }

    pub fn mu(&self, prec: u32) -> Real {
        match self.order {
            OrderSpec::Alpha(a) => self.u(prec) * a,
            OrderSpec::Mu(m) => Real::with_prec(prec, m),
        }
    }

    pub fn alpha(&self, prec: u32) -> Real {
        match self.order {
            OrderSpec::Alpha(a) => Real::with_prec(prec, a),
            OrderSpec::Mu(m) => Real::with_prec(prec, m) / self.u(prec),
        }
    }

    pub fn sigma(&self, prec: u32) -> Real {
        (1.0 - self.alpha(prec).square()).sqrt()
    }

    /// Turning point in the z = 1 − t variable.
    pub fn z_t(&self, prec: u32) -> Real {
        1.0 - self.sigma(prec)
    }

    /// Parameters with the same ν and α but a different degree.
    pub fn with_nu(&self, nu: f64) -> Result<LegendreParams> {
        LegendreParams::from_alpha(nu, self.alpha_f64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// 0 ≤ t < σ, ζ ≥ α²
    Oscillatory,
    /// σ ≤ t < 1, 0 < ζ ≤ α²
    Monotone,
    /// t > 1, ζ < 0
    Cut,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Oscillatory => "oscillatory",
            Region::Monotone => "monotone",
            Region::Cut => "cut",
        }
    }
}

/// A resolved evaluation point.
#[derive(Clone, Debug)]
pub struct MapPoint {
    pub t: Real,
    pub region: Region,
    pub beta: Complex,
    pub zeta: Real,
    pub beta_hat: Complex,
    /// |residual| of the matching equation at the solution.
    pub residual: f64,
}

impl MapPoint {
    pub fn is_turning_point(&self) -> bool {
        self.beta.is_zero()
    }

    /// |β|: the modulus of the Laurent variable.
    pub fn beta_abs(&self) -> Real {
        self.beta.abs()
    }
}

/// Resolves `t` at the context's working precision.
pub fn resolve(params: &LegendreParams, t: f64, ctx: &PrecisionCtx) -> Result<MapPoint> {
    let prec = ctx.working_bits();
    resolve_at(params, &Real::with_prec(prec, t), ctx.working_digits)
}

fn tolerance(prec_digits: u32, prec: u32) -> Real {
    Real::with_prec(prec, 10f64.powi(-(prec_digits as i32 - 2)))
}

/// Resolves `t` at the precision of `t` itself. `digits` is the matching
/// decimal precision, used for the solver tolerance.
pub fn resolve_at(params: &LegendreParams, t: &Real, digits: u32) -> Result<MapPoint> {
    let prec = t.prec().max(digits_to_bits(digits));
    let t = t.to_prec(prec);
    if t.is_negative() {
        return Err(Error::DomainError(format!("t = {} < 0", t.to_f64())));
    }
    if (&t - 1.0).abs() <= SINGULAR_GUARD {
        return Err(Error::SingularPoint(t.to_f64()));
    }
    let alpha = params.alpha(prec);
    let sigma = params.sigma(prec);
    let zero = Real::zero(prec);

    if (&t - &sigma).abs() < TURNING_POINT_SNAP {
        return Ok(MapPoint {
            t,
            region: Region::Monotone,
            beta: Complex::zero(prec),
            zeta: alpha.square(),
            beta_hat: Complex::zero(prec),
            residual: 0.0,
        });
    }

    let tol = tolerance(digits, prec);
    if t > 1.0 {
        let beta = ((&t - &sigma) / (&t + &sigma)).sqrt();
        let (abs_zeta, residual) = solve_cut(&alpha, &sigma, &t, &tol)?;
        let beta_hat = (alpha.square() + &abs_zeta).sqrt();
        return Ok(MapPoint {
            t,
            region: Region::Cut,
            beta: Complex::from_real(beta),
            zeta: -abs_zeta,
            beta_hat: Complex::from_real(beta_hat),
            residual,
        });
    }
    if t < sigma {
        let beta = ((&sigma - &t) / (&t + &sigma)).sqrt();
        let (w, residual) = solve_oscillatory(&alpha, &sigma, &t, &tol)?;
        let zeta = alpha.square() + w.square();
        return Ok(MapPoint {
            t,
            region: Region::Oscillatory,
            beta: Complex::new(zero.clone(), -beta),
            zeta,
            beta_hat: Complex::new(zero, -w),
            residual,
        });
    }
    let beta = ((&t - &sigma) / (&t + &sigma)).sqrt();
    let (v, residual) = solve_monotone(&alpha, &sigma, &t, &tol)?;
    let beta_hat = &alpha * v.tanh();
    let zeta = (&alpha / v.cosh()).square();
    Ok(MapPoint {
        t,
        region: Region::Monotone,
        beta: Complex::from_real(beta),
        zeta,
        beta_hat: Complex::from_real(beta_hat),
        residual,
    })
}

/// Right-hand side of the oscillatory matching equation.
pub fn oscillatory_rhs(alpha: &Real, sigma: &Real, t: &Real) -> Real {
    let first = (t / sigma).acos();
    if alpha.is_zero() {
        return first;
    }
    let arg = alpha * t / (sigma * (1.0 - t.square()).sqrt());
    // arg ≤ 1 on [0, σ]; clamp rounding overshoot
    let arg = if arg > 1.0 { Real::one(t.prec()) } else { arg };
    first - alpha * arg.acos()
}

/// Left-hand side of the oscillatory matching equation in w = √(ζ−α²).
pub fn oscillatory_lhs(alpha: &Real, w: &Real) -> Real {
    if alpha.is_zero() {
        return w.clone();
    }
    w - alpha * w.atan2(alpha)
}

fn solve_oscillatory(alpha: &Real, sigma: &Real, t: &Real, tol: &Real) -> Result<(Real, f64)> {
    let prec = t.prec();
    let rhs = oscillatory_rhs(alpha, sigma, t);
    if alpha.is_zero() {
        return Ok((rhs, 0.0));
    }
    let f = |w: &Real| oscillatory_lhs(alpha, w) - &rhs;
    let a = alpha.to_f64();
    let mut hi = Real::with_prec(prec, std::f64::consts::FRAC_PI_2 * (1.0 - a) + 1.0);
    let mut tries = 0;
    let bracket = loop {
        match Bracket::new(f, Real::zero(prec), hi.clone()) {
            Ok(b) => break b,
            Err(_) if tries < 20 => {
                hi *= 2.0;
                tries += 1;
            }
            Err(e) => return Err(Error::SolveFailure(format!("oscillatory bracket: {e}"))),
        }
    };
    let w = solve_root(f, &bracket, tol).map_err(|e| Error::SolveFailure(format!("oscillatory: {e}")))?;
    let residual = f(&w).abs().to_f64();
    Ok((w, residual))
}

/// Right-hand side of the monotone matching equation.
pub fn monotone_rhs(alpha: &Real, sigma: &Real, t: &Real) -> Real {
    let s = (t.square() - sigma.square()).sqrt();
    let w = s / (alpha * t);
    alpha * w.atanh() - (t / sigma).acosh()
}

fn solve_monotone(alpha: &Real, sigma: &Real, t: &Real, tol: &Real) -> Result<(Real, f64)> {
    let prec = t.prec();
    let rhs = monotone_rhs(alpha, sigma, t);
    if !rhs.is_finite() || rhs.is_negative() {
        return Err(Error::SolveFailure(format!(
            "monotone right-hand side {} at t = {}",
            rhs.to_f64(),
            t.to_f64()
        )));
    }
    let f = |v: &Real| alpha * (v - v.tanh()) - &rhs;
    let hi = &rhs / alpha + 1.0;
    let bracket = Bracket::new(f, Real::zero(prec), hi)
        .map_err(|e| Error::SolveFailure(format!("monotone bracket: {e}")))?;
    let v = solve_root(f, &bracket, tol).map_err(|e| Error::SolveFailure(format!("monotone: {e}")))?;
    let residual = f(&v).abs().to_f64();
    Ok((v, residual))
}

/// Right-hand side of the cut matching equation.
pub fn cut_rhs(alpha: &Real, sigma: &Real, t: &Real) -> Real {
    let s = (t.square() - sigma.square()).sqrt();
    let w = s / (alpha * t);
    alpha * 0.5 * ((&w + 1.0) / (&w - 1.0)).ln() - (t / sigma).acosh()
}

fn solve_cut(alpha: &Real, sigma: &Real, t: &Real, tol: &Real) -> Result<(Real, f64)> {
    let prec = t.prec();
    if alpha.is_zero() {
        return Ok((t.acosh().square(), 0.0));
    }
    let rhs = cut_rhs(alpha, sigma, t);
    if !rhs.is_finite() {
        return Err(Error::SolveFailure(format!("cut right-hand side at t = {}", t.to_f64())));
    }
    let r = (&rhs / alpha).to_f64();
    let f = |v: &Real| alpha * (v - v.coth()) - &rhs;
    let lo = Real::with_prec(prec, 1.0 / (r.abs() + 1.0));
    let hi = Real::with_prec(prec, (r + 2.0).max(1.0));
    let bracket = Bracket::new(f, lo, hi).map_err(|e| Error::SolveFailure(format!("cut bracket: {e}")))?;
    let v = solve_root(f, &bracket, tol).map_err(|e| Error::SolveFailure(format!("cut: {e}")))?;
    let residual = f(&v).abs().to_f64();
    Ok(((alpha / v.sinh()).square(), residual))
}

/// Residual of the matching equation for a resolved point, recomputed at
/// `prec` bits from (t, ζ) in the original ζ form of each equation.
pub fn resubstitution_residual(params: &LegendreParams, p: &MapPoint, prec: u32) -> Real {
    let t = p.t.to_prec(prec);
    let zeta = p.zeta.to_prec(prec);
    let alpha = params.alpha(prec);
    let sigma = params.sigma(prec);
    match p.region {
        _ if p.is_turning_point() => (zeta - alpha.square()).abs(),
        Region::Oscillatory => {
            let w = (&zeta - alpha.square()).sqrt();
            let lhs = if alpha.is_zero() {
                w
            } else {
                &w - &alpha * (&alpha / zeta.sqrt()).acos()
            };
            (lhs - oscillatory_rhs(&alpha, &sigma, &t)).abs()
        }
        Region::Monotone => {
            let b = (alpha.square() - &zeta).sqrt();
            let lhs = &alpha * (&b + &alpha).ln() - &b - &alpha * zeta.ln() * 0.5;
            (lhs - monotone_rhs(&alpha, &sigma, &t)).abs()
        }
        Region::Cut => {
            let az = zeta.abs();
            if alpha.is_zero() {
                return (az.sqrt() - t.acosh()).abs();
            }
            let b = (alpha.square() + &az).sqrt();
            let lhs = -&b + &alpha * az.ln() * 0.5 - &alpha * (&b - &alpha).ln();
            (lhs - cut_rhs(&alpha, &sigma, &t)).abs()
        }
    }
}

/// ρ with ζ = −α²ρ at the points where the boundary of the expansion
/// domain meets the negative ζ axis: the root in [0.1, 1] of
/// 2√(ρ+1) + ln ρ − ln(ρ + 2√(ρ+1) + 2).
pub fn boundary_rho(digits: u32) -> Result<Real> {
    let prec = digits_to_bits(digits);
    let f = |r: &Real| {
        let s = (r + 1.0).sqrt() * 2.0;
        &s + r.ln() - (r + &s + 2.0).ln()
    };
    let bracket = Bracket::new(f, Real::with_prec(prec, 0.1), Real::one(prec))?;
    solve_root(f, &bracket, &tolerance(digits, prec))
}

/// κ = 2σ^{2/3}: the limit of β̂/β at the turning point.
pub fn kappa(sigma: &Real) -> Real {
    sigma.square().cbrt() * 2.0
}

/// Fitted and expected leading coefficients of β̂ = c1 β + c3 β³ + c5 β⁵ + …
#[derive(Clone, Debug)]
pub struct BetaHatSeriesReport {
    pub alpha: f64,
    pub fitted: [f64; 3],
    pub expected: [f64; 3],
    pub rel_err: [f64; 3],
    /// The exact α = 0 coefficients (2, 2/3, 2/5) of β̂ = 2·artanh β.
    pub alpha_zero_exact: Option<[f64; 3]>,
}

impl BetaHatSeriesReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.rel_err.iter().all(|e| *e <= tol)
    }
}

/// Closed-form leading coefficients of β̂(β) near the turning point.
pub fn beta_hat_series_expected(alpha: f64) -> [f64; 3] {
    if alpha == 0.0 {
        return [2.0, 2.0 / 3.0, 2.0 / 3.0];
    }
    let prec = 128;
    let a = Real::with_prec(prec, alpha);
    let s2 = 1.0 - a.square();
    let k = kappa(&s2.sqrt());
    let a2 = a.square();
    let c3 = ((&s2 + 3.0) * &k - &s2 * 8.0) / (&a2 * 5.0);
    let c5 = (k.powi(5) * 3.0 + (&s2 + 3.0) * ((&s2 * 43.0 + 29.0) * &k - &s2 * 168.0)) / (a2.square() * 175.0);
    [k.to_f64(), c3.to_f64(), c5.to_f64()]
}

/// Fits β̂/β as a polynomial in β² from points resolved just past the
/// turning point and compares the leading three odd coefficients with the
/// closed forms.
pub fn beta_hat_series_check(params: &LegendreParams, ctx: &PrecisionCtx) -> Result<BetaHatSeriesReport> {
    let prec = ctx.oracle_bits();
    let digits = ctx.oracle_digits;
    let sigma = params.sigma(prec);
    let alpha = params.alpha_f64();
    let fit = |n: usize| -> Result<Vec<Real>> {
        // x = β² on (0, x_max]; t = σ(1+x)/(1−x) puts the point on the
        // real-β side of the turning point
        let x_max = 4e-3;
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for k in 0..n {
            let x = Real::with_prec(prec, x_max * (k as f64 + 1.0) / n as f64);
            let t = &sigma * (1.0 + &x) / (1.0 - &x);
            let p = resolve_at(params, &t, digits)?;
            let beta = p.beta.re.clone();
            ys.push(&p.beta_hat.re / &beta);
            xs.push(beta.square());
        }
        solve_vandermonde(&xs, &ys)
    };
    let a = fit(12)?;
    let b = fit(14)?;
    let mut fitted = [0.0; 3];
    for i in 0..3 {
        let agree = ((&a[i] - &b[i]) / &b[i]).abs().to_f64();
        if !(agree < 1e-9) {
            return Err(Error::FitFailure(format!(
                "coefficient {} unstable between fits (relative change {agree:e})",
                2 * i + 1
            )));
        }
        fitted[i] = b[i].to_f64();
    }
    let expected = beta_hat_series_expected(alpha);
    let mut rel_err = [0.0; 3];
    for i in 0..3 {
        rel_err[i] = ((fitted[i] - expected[i]) / expected[i]).abs();
    }
    Ok(BetaHatSeriesReport {
        alpha,
        fitted,
        expected,
        rel_err,
        alpha_zero_exact: (alpha == 0.0).then_some([2.0, 2.0 / 3.0, 2.0 / 5.0]),
    })
}

// Polynomial coefficients through (x_i, y_i) by Newton divided differences.
fn solve_vandermonde(xs: &[Real], ys: &[Real]) -> Result<Vec<Real>> {
    let n = xs.len();
    let mut dd: Vec<Real> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = &xs[i] - &xs[i - j];
            if den.is_zero() {
                return Err(Error::FitFailure("repeated abscissa".into()));
            }
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // expand Newton form into monomial coefficients
    let prec = xs[0].prec();
    let mut coef = vec![Real::zero(prec); n];
    for k in (0..n).rev() {
        // coef <- coef * (x - x_k) + dd[k]
        let mut next = vec![Real::zero(prec); n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] += &coef[i];
            }
            next[i] -= &coef[i] * &xs[k];
        }
        next[0] += &dd[k];
        coef = next;
    }
    Ok(coef)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    #[test]
    fn params_relations() {
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        assert_eq!(p.u_f64(), 50.5);
        assert_eq!(p.mu_f64(), 25.25);
        let q = LegendreParams::from_mu(50.0, 25.25).unwrap();
        assert_eq!(q.alpha_f64(), 0.5);
        let prec = 200;
        let rel = ((p.u(prec) * p.alpha(prec) - p.mu(prec)) / p.mu(prec)).abs();
        assert!(rel < 1e-50);
        assert!((p.sigma(prec).square() - 0.75).abs() < 1e-55);
        assert!((p.z_t(prec) + p.sigma(prec) - 1.0).abs() < 1e-55);
    }

    #[test]
    fn params_validation() {
        assert!(matches!(
            LegendreParams::from_alpha(50.0, 0.97),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(LegendreParams::from_alpha(-1.0, 0.5).is_err());
        assert!(LegendreParams::from_mu(10.0, -0.5).is_err());
        assert!(LegendreParams::from_alpha(f64::NAN, 0.5).is_err());
        assert!(LegendreParams::from_alpha(0.0, 0.0).is_ok());
    }

    #[test]
    fn turning_point_shortcut() {
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        let m = resolve(&p, p.sigma_f64(), &ctx()).unwrap();
        assert!(m.is_turning_point());
        assert!(m.beta_hat.is_zero());
        assert_eq!(m.zeta.to_f64(), 0.25);
        assert_eq!(m.region, Region::Monotone);
    }

    #[test]
    fn singular_point_rejected() {
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        assert_eq!(resolve(&p, 1.0, &ctx()).unwrap_err(), Error::SingularPoint(1.0));
        assert!(resolve(&p, -0.1, &ctx()).is_err());
    }

    #[test]
    fn alpha_zero_closed_forms() {
        let p = LegendreParams::from_alpha(50.0, 0.0).unwrap();
        let m = resolve(&p, 0.0, &ctx()).unwrap();
        let quarter_pi_sq = std::f64::consts::PI.powi(2) / 4.0;
        assert!((m.zeta.to_f64() - quarter_pi_sq).abs() < 1e-15);
        for &t in &[0.1, 0.5, 0.9] {
            let m = resolve(&p, t, &ctx()).unwrap();
            assert!((m.zeta.to_f64() - f64::acos(t).powi(2)).abs() < 1e-14);
        }
        let m = resolve(&p, 1.7, &ctx()).unwrap();
        assert_eq!(m.region, Region::Cut);
        assert!((m.zeta.to_f64() + f64::acosh(1.7).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn branches_and_regions() {
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        let m = resolve(&p, 0.3, &ctx()).unwrap();
        assert_eq!(m.region, Region::Oscillatory);
        assert!(m.beta.re.is_zero() && m.beta.im.is_negative());
        assert!(m.beta_hat.re.is_zero() && m.beta_hat.im.is_negative());
        assert!(m.zeta > 0.25);
        let m = resolve(&p, 0.95, &ctx()).unwrap();
        assert_eq!(m.region, Region::Monotone);
        assert!(m.beta.re.is_positive() && m.beta.re < 1.0);
        assert!(m.beta_hat.re.is_positive());
        assert!(m.zeta > 0.0 && m.zeta < 0.25);
        let m = resolve(&p, 1.5, &ctx()).unwrap();
        assert_eq!(m.region, Region::Cut);
        assert!(m.zeta.is_negative());
        assert!(m.beta.re.is_positive() && m.beta_hat.re.is_positive());
    }

    #[test]
    fn residuals_small_and_resubstitute() {
        let c = ctx();
        for &alpha in &[0.0, 0.3, 0.5, 0.9] {
            let p = LegendreParams::from_alpha(50.0, alpha).unwrap();
            for &t in &[0.0, 0.2, 0.43, 0.7, 0.86, 0.95, 0.999, 1.001, 1.5, 2.5, 10.0] {
                let m = resolve(&p, t, &c).unwrap();
                assert!(m.residual <= 1e-13, "alpha {alpha} t {t} residual {}", m.residual);
                let r = resubstitution_residual(&p, &m, c.oracle_bits());
                assert!(r < 1e-13, "alpha {alpha} t {t} resubstitution {}", r.to_f64());
            }
        }
    }

    #[test]
    fn residual_near_turning_point() {
        let c = ctx();
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        let s = p.sigma_f64();
        for &h in &[1e-8, -1e-8, 1e-5, -1e-5] {
            let m = resolve(&p, s + h, &c).unwrap();
            assert!(m.residual <= 1e-13);
            let r = resubstitution_residual(&p, &m, c.oracle_bits());
            assert!(r < 1e-13);
            // β̂/β → κ
            let ratio = (m.beta_hat.abs() / m.beta.abs()).to_f64();
            let k = kappa(&Real::with_prec(128, s)).to_f64();
            assert!((ratio - k).abs() < 1e-3, "h {h}: {ratio} vs {k}");
        }
    }

    #[test]
    fn oscillatory_equation_example() {
        let c = ctx();
        let p = LegendreParams::from_alpha(50.0, 0.5).unwrap();
        let m = resolve(&p, 0.3, &c).unwrap();
        let prec = c.oracle_bits();
        assert!(resubstitution_residual(&p, &m, prec) < 1e-13);
    }

    #[test]
    fn zeta_is_decreasing() {
        let c = ctx();
        for &alpha in &[0.0, 0.5, 0.9] {
            let p = LegendreParams::from_alpha(20.0, alpha).unwrap();
            let mut prev = f64::INFINITY;
            let mut t = 0.0;
            while t < 3.0 {
                if (t - 1.0f64).abs() > 1e-9 {
                    let z = resolve(&p, t, &c).unwrap().zeta.to_f64();
                    assert!(z < prev, "alpha {alpha} t {t}");
                    prev = z;
                }
                t += 0.01;
            }
        }
    }

    #[test]
    fn series_expected_at_half() {
        let e = beta_hat_series_expected(0.5);
        let k = 2.0 * 0.75f64.powf(1.0 / 3.0);
        assert!((e[0] - k).abs() < 1e-15);
        assert!((e[1] / e[0] - ((3.75) * k - 6.0) / (1.25 * k)).abs() < 1e-14);
    }

    #[test]
    fn vandermonde_recovers_polynomial() {
        let prec = 200;
        let xs: Vec<Real> = (1..=4).map(|k| Real::with_prec(prec, k as f64 * 0.1)).collect();
        let ys: Vec<Real> = xs.iter().map(|x| 2.0 - x * 3.0 + x.powi(3) * 0.5).collect();
        let c = solve_vandermonde(&xs, &ys).unwrap();
        let want = [2.0, -3.0, 0.0, 0.5];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-50);
        }
    }
}
