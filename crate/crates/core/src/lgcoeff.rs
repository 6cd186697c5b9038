//! Liouville–Green coefficients on both sides of the matching and their
//! combination into the A_s, B_s series coefficients.
//!
//! Legendre side, in β = √((t−σ)/(t+σ)):
//!   G(β) = (β²−1)(α²(β²+1)² − 4β²) / (8σ²β²)
//!   ψ(β) = −N1·N2·(1−β²)² / (256σ⁶β⁶),
//!     N1 = 4β² − α²(1+β²)², N2 = σ²(4β² − α²(5β⁴+6β²+5))
//! Bessel side, in β̂ = √(α²−ζ):
//!   Ĝ = (β̂²−α²)/β̂²,  ψ̂ = −(α²−β̂²)(5α²−β̂²)/(4β̂⁶),  ψ̃ = (α²−β̂²)(7α²−3β̂²)/(4β̂⁶)
//!
//! Both families obey c_1 = ∫ψ/(2G), c_2 = −ψ/4 and
//!   c_{s+1} = −½ G ∂c_s − ½ ∫ G Σ_{j=1}^{s−1} ∂c_j ∂c_{s−j}.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};
use crate::mapping::{resolve_at, LegendreParams, MapPoint, Region, DELTA, SINGULAR_GUARD};
use crate::numerics::{Complex, PrecisionCtx, Real};

pub const DEFAULT_S_MAX: usize = 8;
pub const MAX_S_MAX: usize = 12;
/// Half-width in t of the neighbourhood of σ handled by the patch.
pub const FALLBACK_RADIUS: f64 = 0.08;
/// Chebyshev nodes per patch.
pub const PATCH_NODES: usize = 24;
/// Relative imaginary part tolerated in coefficients that must be real.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;
/// Below this α the closed-form turning-point limits are not checked.
pub const CROSS_CHECK_MIN_ALPHA: f64 = 1e-3;

/// E_s with λ_{2s+1}, and e_s, ẽ_s, for one α.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub alpha: Real,
    pub s_max: usize,
    /// E_1..E_{s_max} (index 0 holds E_1).
    pub big_e: Vec<LaurentPoly>,
    /// λ_1, λ_3, … for every odd index ≤ s_max.
    pub lambda_odd: Vec<Real>,
    pub e: Vec<LaurentPoly>,
    pub e_tilde: Vec<LaurentPoly>,
}

/// Legendre-side part of a table.
#[derive(Clone, Debug)]
pub struct LegendreCoeffs {
    pub big_e: Vec<LaurentPoly>,
    pub lambda_odd: Vec<Real>,
}

/// Bessel-side part of a table.
#[derive(Clone, Debug)]
pub struct BesselCoeffs {
    pub e: Vec<LaurentPoly>,
    pub e_tilde: Vec<LaurentPoly>,
}

fn check_args(alpha: &Real, s_max: usize) -> Result<()> {
    if alpha.is_negative() || *alpha > 1.0 - DELTA + 1e-15 {
        return Err(Error::AlphaOutOfRange(alpha.to_f64()));
    }
    if !(1..=MAX_S_MAX).contains(&s_max) {
        return Err(Error::InvalidParams(format!("s_max = {s_max} not in [1, {MAX_S_MAX}]")));
    }
    Ok(())
}

fn poly(var: Var, prec: u32, terms: &[(i32, Real)]) -> LaurentPoly {
    LaurentPoly::from_terms(var, prec, terms.iter().cloned())
}

/// G(β) = dβ/dξ.
pub fn legendre_g(alpha: &Real, prec: u32) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    let s2 = 1.0 - &a2;
    let r = |x: f64| Real::with_prec(prec, x);
    // (β²−1)(α²β⁴ + (2α²−4)β² + α²) / (8σ²β²)
    let d = poly(Var::Beta, prec, &[(2, r(1.0)), (0, r(-1.0))]);
    let n = poly(Var::Beta, prec, &[(4, a2.clone()), (2, &a2 * 2.0 - 4.0), (0, a2.clone())]);
    d.multiply(&n).unwrap().shift(-2).scale(&(s2 * 8.0).recip())
}

/// ψ(β) for the Legendre equation.
pub fn legendre_psi(alpha: &Real, prec: u32) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    let s2 = 1.0 - &a2;
    let r = |x: f64| Real::with_prec(prec, x);
    let n1 = poly(Var::Beta, prec, &[(4, -&a2), (2, 4.0 - &a2 * 2.0), (0, -&a2)]);
    let n2 = poly(Var::Beta, prec, &[(4, &a2 * -5.0), (2, 4.0 - &a2 * 6.0), (0, &a2 * -5.0)]).scale(&s2);
    let d = poly(Var::Beta, prec, &[(2, r(-1.0)), (0, r(1.0))]);
    let num = n1.multiply(&n2).unwrap().multiply(&d.multiply(&d).unwrap()).unwrap();
    num.shift(-6).scale(&(s2.powi(3) * -256.0).recip())
}

/// ψ/(2G) = −N2·(1−β²)/(64σ⁴β⁴).
pub fn legendre_seed(alpha: &Real, prec: u32) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    let s2 = 1.0 - &a2;
    let r = |x: f64| Real::with_prec(prec, x);
    let n2 = poly(Var::Beta, prec, &[(4, &a2 * -5.0), (2, 4.0 - &a2 * 6.0), (0, &a2 * -5.0)]).scale(&s2);
    let d = poly(Var::Beta, prec, &[(2, r(-1.0)), (0, r(1.0))]);
    n2.multiply(&d).unwrap().shift(-4).scale(&(s2.square() * -64.0).recip())
}

/// Ĝ(β̂) = dβ̂/dξ on the Bessel side.
pub fn bessel_g(alpha: &Real, prec: u32) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    poly(Var::BetaHat, prec, &[(0, Real::one(prec)), (-2, -a2)])
}

/// ψ̂ (for e_s) or ψ̃ (for ẽ_s).
pub fn bessel_psi(alpha: &Real, prec: u32, tilde: bool) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    let r = |x: f64| Real::with_prec(prec, x);
    let f1 = poly(Var::BetaHat, prec, &[(0, a2.clone()), (2, r(-1.0))]);
    if tilde {
        let f2 = poly(Var::BetaHat, prec, &[(0, &a2 * 7.0), (2, r(-3.0))]);
        f1.multiply(&f2).unwrap().shift(-6).scale(&r(0.25))
    } else {
        let f2 = poly(Var::BetaHat, prec, &[(0, &a2 * 5.0), (2, r(-1.0))]);
        f1.multiply(&f2).unwrap().shift(-6).scale(&r(-0.25))
    }
}

/// ψ̂/(2Ĝ) = (5α²−β̂²)/(8β̂⁴), or ψ̃/(2Ĝ) = (3β̂²−7α²)/(8β̂⁴).
pub fn bessel_seed(alpha: &Real, prec: u32, tilde: bool) -> LaurentPoly {
    let a2 = alpha.square().to_prec(prec);
    let r = |x: f64| Real::with_prec(prec, x);
    let terms = if tilde {
        [(-2, r(3.0 / 8.0)), (-4, &a2 * (-7.0 / 8.0))]
    } else {
        [(-2, r(-1.0 / 8.0)), (-4, &a2 * (5.0 / 8.0))]
    };
    poly(Var::BetaHat, prec, &terms)
}

#[derive(Clone, Copy)]
enum Constants {
    /// odd index: no constant term; even index: vanish at ±1
    Legendre,
    /// vanish at infinity
    Bessel,
}

// The shared recursion. Returns c_1..c_{s_max}.
// `seed` is ψ/(2G), supplied in factored form: dividing by G numerically
// loses accuracy for small α, where its leading coefficient is O(α²).
fn lg_sequence(
    g: &LaurentPoly,
    psi: &LaurentPoly,
    seed: &LaurentPoly,
    s_max: usize,
    rule: Constants,
) -> Result<Vec<LaurentPoly>> {
    let prec = g.prec();
    let half = Real::with_prec(prec, 0.5);
    let c1 = seed.antiderivative()?;
    let c2 = psi.scale(&Real::with_prec(prec, -0.25));
    let mut c = vec![c1, c2];
    let mut dc: Vec<LaurentPoly> = c.iter().map(|p| p.differentiate()).collect();
    for s in 2..s_max {
        let first = g.multiply(&dc[s - 1])?.scale(&-&half);
        let mut sum = LaurentPoly::zero(g.var(), prec);
        for j in 1..s {
            sum = sum.add(&dc[j - 1].multiply(&dc[s - j - 1])?)?;
        }
        let integral = g.multiply(&sum)?.antiderivative()?;
        let mut next = first.sub(&integral.scale(&half))?;
        let index = s + 1;
        next = match rule {
            Constants::Legendre if index % 2 == 1 => {
                let c0 = next.coeff(0);
                next.sub(&LaurentPoly::constant(g.var(), c0))?
            }
            Constants::Legendre => {
                let at_one = next.evaluate_real(&Real::one(prec))?;
                let fixed = next.sub(&LaurentPoly::constant(g.var(), at_one))?;
                let at_minus = fixed.evaluate_real(&Real::with_prec(prec, -1.0))?;
                let scale = fixed.max_abs();
                if at_minus.abs() > &scale * 1e-18 {
                    return Err(Error::StructureViolation(format!(
                        "E_{index}(-1) = {:e} does not vanish",
                        at_minus.to_f64()
                    )));
                }
                fixed
            }
            Constants::Bessel => {
                if next.max_exp().is_some_and(|k| k >= 0) {
                    return Err(Error::StructureViolation(format!(
                        "Bessel-side coefficient {index} has nonnegative powers"
                    )));
                }
                next
            }
        };
        dc.push(next.differentiate());
        c.push(next);
    }
    c.truncate(s_max);
    Ok(c)
}

/// E_1..E_{s_max} and λ_1, λ_3, … at `prec` bits.
pub fn gen_legendre_coeffs_prec(alpha: &Real, s_max: usize, prec: u32) -> Result<LegendreCoeffs> {
    check_args(alpha, s_max)?;
    let alpha = alpha.to_prec(prec);
    let g = legendre_g(&alpha, prec);
    let psi = legendre_psi(&alpha, prec);
    let seed = legendre_seed(&alpha, prec);
    let big_e = lg_sequence(&g, &psi, &seed, s_max, Constants::Legendre)?;
    let one = Real::one(prec);
    let lambda_odd = big_e
        .iter()
        .step_by(2)
        .map(|p| p.evaluate_real(&one))
        .collect::<Result<Vec<_>>>()?;
    Ok(LegendreCoeffs { big_e, lambda_odd })
}

/// e_1..e_{s_max} and ẽ_1..ẽ_{s_max} at `prec` bits.
pub fn gen_bessel_coeffs_prec(alpha: &Real, s_max: usize, prec: u32) -> Result<BesselCoeffs> {
    check_args(alpha, s_max)?;
    let alpha = alpha.to_prec(prec);
    let g = bessel_g(&alpha, prec);
    let e = lg_sequence(
        &g,
        &bessel_psi(&alpha, prec, false),
        &bessel_seed(&alpha, prec, false),
        s_max,
        Constants::Bessel,
    )?;
    let e_tilde = lg_sequence(
        &g,
        &bessel_psi(&alpha, prec, true),
        &bessel_seed(&alpha, prec, true),
        s_max,
        Constants::Bessel,
    )?;
    Ok(BesselCoeffs { e, e_tilde })
}

pub fn gen_legendre_coeffs(alpha: f64, s_max: usize, ctx: &PrecisionCtx) -> Result<LegendreCoeffs> {
    let prec = ctx.working_bits();
    gen_legendre_coeffs_prec(&Real::with_prec(prec, alpha), s_max, prec)
}

pub fn gen_bessel_coeffs(alpha: f64, s_max: usize, ctx: &PrecisionCtx) -> Result<BesselCoeffs> {
    let prec = ctx.working_bits();
    gen_bessel_coeffs_prec(&Real::with_prec(prec, alpha), s_max, prec)
}

impl CoeffTable {
    pub fn generate(alpha: &Real, s_max: usize, prec: u32) -> Result<CoeffTable> {
        let l = gen_legendre_coeffs_prec(alpha, s_max, prec)?;
        let b = gen_bessel_coeffs_prec(alpha, s_max, prec)?;
        Ok(CoeffTable {
            alpha: alpha.to_prec(prec),
            s_max,
            big_e: l.big_e,
            lambda_odd: l.lambda_odd,
            e: b.e,
            e_tilde: b.e_tilde,
        })
    }

    pub fn for_params(params: &LegendreParams, s_max: usize, ctx: &PrecisionCtx) -> Result<CoeffTable> {
        let prec = ctx.working_bits();
        CoeffTable::generate(&params.alpha(prec), s_max, prec)
    }

    pub fn prec(&self) -> u32 {
        self.big_e[0].prec()
    }

    pub fn max_terms(&self) -> usize {
        self.s_max / 2
    }

    /// λ_{2k+1}.
    pub fn lambda(&self, k: usize) -> &Real {
        &self.lambda_odd[k]
    }

    /// Σ_{s=0}^{n−1} λ_{2s+1}/u^{2s+1}.
    pub fn lambda_sum(&self, u: &Real, n_terms: usize) -> Real {
        let prec = self.prec().max(u.prec());
        let mut s = Real::zero(prec);
        for k in 0..n_terms {
            s += &self.lambda_odd[k] / u.powi(2 * k as i32 + 1);
        }
        s
    }

    fn check_terms(&self, n_terms: usize) -> Result<()> {
        if n_terms == 0 || n_terms > self.max_terms() {
            return Err(Error::TermsOutOfRange {
                n: n_terms,
                max: self.max_terms(),
            });
        }
        Ok(())
    }
}

/// A_1..A_{n−1}, B_0..B_{n−1} and the λ exponent at one point.
#[derive(Clone, Debug)]
pub struct CoeffEval {
    pub a: Vec<Real>,
    pub b: Vec<Real>,
    pub lambda_sum: Real,
    pub fallback_used: bool,
    /// Magnitude of the largest individual contribution to each entry of
    /// `a` and `b`; the ratio to the entry measures cancellation.
    pub a_scale: Vec<Real>,
    pub b_scale: Vec<Real>,
}

impl CoeffEval {
    /// Σ_{s≥1} A_s/u^{2s} and Σ_{s≥0} B_s/u^{2s}.
    pub fn series(&self, u: &Real) -> (Real, Real) {
        let prec = u.prec().max(self.lambda_sum.prec());
        let u2 = u.square();
        let mut sa = Real::zero(prec);
        let mut pw = Real::one(prec);
        for a in &self.a {
            pw = &pw / &u2;
            sa += a * &pw;
        }
        let mut sb = Real::zero(prec);
        let mut pw = Real::one(prec);
        for b in &self.b {
            sb += b * &pw;
            pw = &pw / &u2;
        }
        (sa, sb)
    }

    /// Size of the last included term of either series relative to the
    /// leading term (1 for the A series, B_0 for the B series).
    pub fn last_term_ratio(&self, u: &Real) -> f64 {
        let n = self.b.len() as i32;
        let u2n = u.square().powi(n - 1);
        let ra = match self.a.last() {
            Some(a) => (a.abs() / &u2n).to_f64(),
            None => 0.0,
        };
        let rb = if self.b.len() > 1 && !self.b[0].is_zero() {
            (self.b.last().unwrap().abs() / (self.b[0].abs() * &u2n)).to_f64()
        } else {
            0.0
        };
        ra.max(rb)
    }
}

fn q_recursion(cal: &[Complex]) -> Vec<Complex> {
    let prec = cal[0].prec();
    let mut q: Vec<Complex> = Vec::with_capacity(cal.len());
    for s in 1..=cal.len() {
        let mut acc = Complex::zero(prec);
        for j in 1..s {
            let term = &cal[j - 1] * &q[s - j - 1];
            acc = &acc + &term.scale(&Real::with_prec(prec, j as f64));
        }
        let v = &cal[s - 1] + &acc.scale(&(Real::one(prec) / s as f64));
        q.push(v);
    }
    q
}

fn q_recursion_abs(cal: &[Real]) -> Vec<Real> {
    let prec = cal[0].prec();
    let mut q: Vec<Real> = Vec::with_capacity(cal.len());
    for s in 1..=cal.len() {
        let mut acc = Real::zero(prec);
        for j in 1..s {
            acc += &cal[j - 1] * &q[s - j - 1] * j as f64;
        }
        q.push(&cal[s - 1] + acc / s as f64);
    }
    q
}

fn real_part_checked(z: &Complex) -> Result<Real> {
    let m = z.abs();
    if !m.is_zero() {
        let ratio = (z.im.abs() / &m).to_f64();
        if ratio > IMAGINARY_TOLERANCE {
            return Err(Error::ImaginaryResidue { ratio });
        }
    }
    Ok(z.re.clone())
}

/// Direct evaluation from the Laurent polynomials. Requires β ≠ 0.
pub fn eval_ab_direct(table: &CoeffTable, point: &MapPoint, u: &Real, n_terms: usize) -> Result<CoeffEval> {
    table.check_terms(n_terms)?;
    if point.is_turning_point() || point.beta_hat.is_zero() {
        return Err(Error::NearTurningPoint { t: point.t.to_f64() });
    }
    let prec = table.prec();
    let beta = Complex::new(point.beta.re.to_prec(prec), point.beta.im.to_prec(prec));
    let bhat = Complex::new(point.beta_hat.re.to_prec(prec), point.beta_hat.im.to_prec(prec));
    let rb = beta.abs();
    let rbh = bhat.abs();
    let top = 2 * n_terms - 1;
    let mut cal = Vec::with_capacity(top);
    let mut cal_t = Vec::with_capacity(top);
    let mut cal_abs = Vec::with_capacity(top);
    let mut cal_t_abs = Vec::with_capacity(top);
    for s in 1..=top {
        let big = table.big_e[s - 1].evaluate(&beta)?;
        let small = table.e[s - 1].evaluate(&bhat)?;
        let small_t = table.e_tilde[s - 1].evaluate(&bhat)?;
        let big_abs = table.big_e[s - 1].abs_sum(&rb);
        if s % 2 == 0 {
            cal.push(&big + &small);
            cal_t.push(&big + &small_t);
        } else {
            cal.push(&big - &small);
            cal_t.push(&big - &small_t);
        }
        cal_abs.push(&big_abs + table.e[s - 1].abs_sum(&rbh));
        cal_t_abs.push(&big_abs + table.e_tilde[s - 1].abs_sum(&rbh));
    }
    let q = q_recursion(&cal);
    let qt = q_recursion(&cal_t);
    let q_abs = q_recursion_abs(&cal_abs);
    let qt_abs = q_recursion_abs(&cal_t_abs);
    let mut a = Vec::with_capacity(n_terms - 1);
    let mut a_scale = Vec::with_capacity(n_terms - 1);
    for s in 1..n_terms {
        a.push(real_part_checked(&qt[2 * s - 1])?);
        a_scale.push(qt_abs[2 * s - 1].clone());
    }
    let mut b = Vec::with_capacity(n_terms);
    let mut b_scale = Vec::with_capacity(n_terms);
    for s in 0..n_terms {
        b.push(real_part_checked(&(&q[2 * s] / &bhat))?);
        b_scale.push(&q_abs[2 * s] / &rbh);
    }
    Ok(CoeffEval {
        a,
        b,
        lambda_sum: table.lambda_sum(u, n_terms),
        fallback_used: false,
        a_scale,
        b_scale,
    })
}

/// True when t lies inside the neighbourhood handled by the patch.
pub fn near_turning(params: &LegendreParams, t: &Real) -> bool {
    let sigma = params.sigma(t.prec());
    (t - sigma).abs() < FALLBACK_RADIUS
}

/// Direct evaluation away from the turning point. Points inside the
/// fallback radius are refused with `NearTurningPoint`.
pub fn eval_ab(
    table: &CoeffTable,
    params: &LegendreParams,
    point: &MapPoint,
    u: &Real,
    n_terms: usize,
) -> Result<CoeffEval> {
    if near_turning(params, &point.t) {
        return Err(Error::NearTurningPoint { t: point.t.to_f64() });
    }
    eval_ab_direct(table, point, u, n_terms)
}

/// Closed-form turning-point limit of B_0 (α > 0).
pub fn b0_turning_limit(alpha: &Real) -> Real {
    let a2 = alpha.square();
    let s2 = 1.0 - &a2;
    let k = s2.sqrt().square().cbrt() * 2.0;
    (&s2 * 2.0 * &k + (&s2 + 3.0) * (3.0 - &s2 * 4.0)) / (a2 * 140.0 * &s2 * &k)
}

/// Closed-form turning-point limit of A_1 (α > 0).
pub fn a1_turning_limit(alpha: &Real) -> Real {
    let a2 = alpha.square();
    let s2 = 1.0 - &a2;
    let k = s2.sqrt().square().cbrt() * 2.0;
    let num = (&s2 + 3.0) * (3.0 - &s2 * 4.0) * k.square() * 9.0 + s2.powi(3) * 224.0 - s2.square() * 276.0
        + &s2 * 588.0
        - 392.0;
    num / (a2 * 50400.0 * s2.square())
}

/// Chebyshev interpolants of A_s(t) and B_s(t) on [σ − r, σ + r], sampled
/// by direct evaluation at oracle precision.
#[derive(Clone, Debug)]
pub struct TurningPatch {
    pub alpha: f64,
    center: Real,
    radius: Real,
    n_max: usize,
    a_cheb: Vec<Vec<Real>>,
    b_cheb: Vec<Vec<Real>>,
    lambda_odd: Vec<Real>,
    /// Worst estimated loss of decimal digits over the nodes.
    pub max_cancellation: f64,
    /// Value at t = σ of B_0 and A_1 (if n_max ≥ 2) from the interpolant.
    pub b0_at_turning: Real,
    pub a1_at_turning: Option<Real>,
}

#[cfg(test)]
fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64).cos())
        .collect()
}

impl TurningPatch {
    pub fn build(params: &LegendreParams, s_max: usize, ctx: &PrecisionCtx) -> Result<TurningPatch> {
        let hi = ctx.oracle_bits();
        let lo = ctx.working_bits();
        let alpha_hi = params.alpha(hi);
        let table = CoeffTable::generate(&alpha_hi, s_max, hi)?;
        let n_max = table.max_terms();
        let sigma = params.sigma(hi);
        let radius = Real::with_prec(hi, FALLBACK_RADIUS);
        let u = params.u(hi);
        let n = PATCH_NODES;

        let mut a_vals: Vec<Vec<Real>> = vec![Vec::with_capacity(n); n_max.saturating_sub(1)];
        let mut b_vals: Vec<Vec<Real>> = vec![Vec::with_capacity(n); n_max];
        let mut a_scl: Vec<Vec<Real>> = vec![Vec::with_capacity(n); n_max.saturating_sub(1)];
        let mut b_scl: Vec<Vec<Real>> = vec![Vec::with_capacity(n); n_max];
        let pi = Real::pi(hi);
        for k in 0..n {
            let theta = &pi * (2 * k + 1) as f64 / (2 * n) as f64;
            let t = &sigma + &radius * theta.cos();
            let point = node_point(params, &t, ctx.oracle_digits, hi)?;
            let ev = eval_ab_direct(&table, &point, &u, n_max)?;
            for s in 0..n_max.saturating_sub(1) {
                a_vals[s].push(ev.a[s].clone());
                a_scl[s].push(ev.a_scale[s].clone());
            }
            for s in 0..n_max {
                b_vals[s].push(ev.b[s].clone());
                b_scl[s].push(ev.b_scale[s].clone());
            }
        }
        let mut worst = 0.0f64;
        for (vals, scl) in a_vals.iter().zip(&a_scl).chain(b_vals.iter().zip(&b_scl)) {
            let peak = vals.iter().map(|v| v.abs()).fold(Real::zero(hi), Real::max);
            let floor = &peak * 1e-3;
            for (v, s) in vals.iter().zip(scl) {
                let den = v.abs().max(floor.clone());
                if den.is_zero() {
                    continue;
                }
                worst = worst.max((s / den).log10_abs());
            }
        }
        let available = ctx.oracle_digits as f64 - 15.0;
        if worst > available {
            return Err(Error::PrecisionExhausted {
                needed: worst,
                available: ctx.oracle_digits.saturating_sub(15),
            });
        }
        let to_cheb = |vals: &Vec<Real>| -> Vec<Real> {
            chebyshev_coeffs(vals, hi).into_iter().map(|c| c.to_prec(lo)).collect()
        };
        let a_cheb: Vec<Vec<Real>> = a_vals.iter().map(to_cheb).collect();
        let b_cheb: Vec<Vec<Real>> = b_vals.iter().map(to_cheb).collect();
        let b0_at_turning = clenshaw(&b_cheb[0], &Real::zero(lo));
        let a1_at_turning = a_cheb.first().map(|c| clenshaw(c, &Real::zero(lo)));
        let patch = TurningPatch {
            alpha: params.alpha_f64(),
            center: sigma.to_prec(lo),
            radius: radius.to_prec(lo),
            n_max,
            a_cheb,
            b_cheb,
            lambda_odd: table.lambda_odd.iter().map(|l| l.to_prec(lo)).collect(),
            max_cancellation: worst,
            b0_at_turning,
            a1_at_turning,
        };
        patch.cross_check(params)?;
        Ok(patch)
    }

    fn cross_check(&self, params: &LegendreParams) -> Result<()> {
        if params.alpha_f64() < CROSS_CHECK_MIN_ALPHA {
            return Ok(());
        }
        let prec = self.center.prec();
        let alpha = params.alpha(prec);
        let want = b0_turning_limit(&alpha);
        let rel = ((&self.b0_at_turning - &want) / &want).abs().to_f64();
        if !(rel <= 1e-8) {
            return Err(Error::CrossCheckFailed(format!(
                "B_0(sigma) = {} vs closed form {} (relative {rel:e})",
                self.b0_at_turning.to_sci(17),
                want.to_sci(17)
            )));
        }
        if let Some(a1) = &self.a1_at_turning {
            let want = a1_turning_limit(&alpha);
            let rel = ((a1 - &want) / &want).abs().to_f64();
            if !(rel <= 1e-8) {
                return Err(Error::CrossCheckFailed(format!(
                    "A_1(sigma) = {} vs closed form {} (relative {rel:e})",
                    a1.to_sci(17),
                    want.to_sci(17)
                )));
            }
        }
        Ok(())
    }

    pub fn max_terms(&self) -> usize {
        self.n_max
    }

    pub fn contains(&self, t: &Real) -> bool {
        (t - &self.center).abs() <= self.radius
    }

    /// A_s, B_s interpolated at t.
    pub fn eval(&self, t: &Real, u: &Real, n_terms: usize) -> Result<CoeffEval> {
        if n_terms == 0 || n_terms > self.n_max {
            return Err(Error::TermsOutOfRange {
                n: n_terms,
                max: self.n_max,
            });
        }
        let prec = self.center.prec();
        let x = (t.to_prec(prec) - &self.center) / &self.radius;
        if x.abs() > 1.0 + 1e-12 {
            return Err(Error::DomainError(format!(
                "t = {} outside the turning-point patch",
                t.to_f64()
            )));
        }
        let a: Vec<Real> = self.a_cheb[..n_terms - 1].iter().map(|c| clenshaw(c, &x)).collect();
        let b: Vec<Real> = self.b_cheb[..n_terms].iter().map(|c| clenshaw(c, &x)).collect();
        let u = u.to_prec(prec);
        let mut lambda_sum = Real::zero(prec);
        for k in 0..n_terms {
            lambda_sum += &self.lambda_odd[k] / u.powi(2 * k as i32 + 1);
        }
        Ok(CoeffEval {
            a_scale: a.iter().map(|v| v.abs()).collect(),
            b_scale: b.iter().map(|v| v.abs()).collect(),
            a,
            b,
            lambda_sum,
            fallback_used: true,
        })
    }
}

// Resolves a patch node; within the singular guard of t = 1 the limiting
// values ζ = 0, β̂ = α are used (the coefficients are regular there).
fn node_point(params: &LegendreParams, t: &Real, digits: u32, prec: u32) -> Result<MapPoint> {
    if (t - 1.0).abs() <= SINGULAR_GUARD {
        let sigma = params.sigma(prec);
        let beta = ((t - &sigma) / (t + &sigma)).sqrt();
        return Ok(MapPoint {
            t: t.clone(),
            region: Region::Monotone,
            beta: Complex::from_real(beta),
            zeta: Real::zero(prec),
            beta_hat: Complex::from_real(params.alpha(prec)),
            residual: 0.0,
        });
    }
    resolve_at(params, t, digits)
}

fn chebyshev_coeffs(vals: &[Real], prec: u32) -> Vec<Real> {
    let n = vals.len();
    let pi = Real::pi(prec);
    (0..n)
        .map(|j| {
            let mut s = Real::zero(prec);
            for (k, v) in vals.iter().enumerate() {
                let ang = &pi * (j * (2 * k + 1)) as f64 / (2 * n) as f64;
                s += v * ang.cos();
            }
            s * 2.0 / n as f64
        })
        .collect()
}

// Σ' c_j T_j(x) with the first coefficient halved.
fn clenshaw(c: &[Real], x: &Real) -> Real {
    let prec = x.prec();
    let mut b1 = Real::zero(prec);
    let mut b2 = Real::zero(prec);
    for cj in c.iter().skip(1).rev() {
        let b0 = x * 2.0 * &b1 - &b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    x * &b1 - &b2 + &c[0] * 0.5
}

/// Evaluation through the patch; the point must lie within its interval.
pub fn eval_ab_near_turning(patch: &TurningPatch, point: &MapPoint, u: &Real, n_terms: usize) -> Result<CoeffEval> {
    patch.eval(&point.t, u, n_terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 121;

    fn r(x: f64) -> Real {
        Real::with_prec(P, x)
    }

    fn e1_closed(alpha: f64) -> LaurentPoly {
        // (β²+1)(2(α²+6)β² − 5α²(β⁴+1)) / (192σ²β³)
        let a2 = r(alpha).square();
        let s2 = 1.0 - &a2;
        let f1 = LaurentPoly::from_f64(Var::Beta, P, &[(2, 1.0), (0, 1.0)]);
        let f2 = poly(Var::Beta, P, &[(4, &a2 * -5.0), (2, (&a2 + 6.0) * 2.0), (0, &a2 * -5.0)]);
        f1.multiply(&f2).unwrap().shift(-3).scale(&(s2 * 192.0).recip())
    }

    #[test]
    fn first_coefficient_alpha_zero() {
        let l = gen_legendre_coeffs(0.0, 4, &PrecisionCtx::default()).unwrap();
        let want = LaurentPoly::from_f64(Var::Beta, P, &[(1, 1.0 / 16.0), (-1, 1.0 / 16.0)]);
        assert!(l.big_e[0].rel_distance(&want) < 1e-32);
        assert!((l.lambda_odd[0].clone() - 0.125).abs() < 1e-32);
    }

    #[test]
    fn lambda_one_alpha_half() {
        let l = gen_legendre_coeffs(0.5, 4, &PrecisionCtx::default()).unwrap();
        assert!((l.lambda_odd[0].clone() - r(25.0) / r(180.0)).abs() < 1e-32);
    }

    #[test]
    fn first_coefficient_matches_closed_form() {
        for &a in &[0.1, 0.5, 0.9] {
            let l = gen_legendre_coeffs(a, 4, &PrecisionCtx::default()).unwrap();
            assert!(l.big_e[0].rel_distance(&e1_closed(a)) < 1e-30);
        }
    }

    #[test]
    fn second_coefficient_is_first_derivative_image() {
        let l = gen_legendre_coeffs(0.3, 4, &PrecisionCtx::default()).unwrap();
        let g = legendre_g(&r(0.3), P);
        let alt = g.multiply(&l.big_e[0].differentiate()).unwrap().scale(&r(-0.5));
        assert!(alt.rel_distance(&l.big_e[1]) < 1e-30);
        assert!(l.big_e[1].evaluate_real(&r(1.0)).unwrap().abs() < 1e-30);
    }

    #[test]
    fn seeds_are_quotients() {
        for &a in &[0.2, 0.6, 0.9] {
            let x = r(a);
            let q = legendre_psi(&x, P).divide_exact(&legendre_g(&x, P).scale(&r(2.0))).unwrap();
            assert!(q.rel_distance(&legendre_seed(&x, P)) < 1e-28);
            for tilde in [false, true] {
                let q = bessel_psi(&x, P, tilde).divide_exact(&bessel_g(&x, P).scale(&r(2.0))).unwrap();
                assert!(q.rel_distance(&bessel_seed(&x, P, tilde)) < 1e-28);
            }
        }
    }

    #[test]
    fn small_alpha_generates() {
        let c = PrecisionCtx::default();
        assert!(gen_legendre_coeffs(1e-3, 12, &c).is_ok());
        assert!(gen_bessel_coeffs(1e-3, 12, &c).is_ok());
    }

    #[test]
    fn bessel_alpha_zero() {
        let b = gen_bessel_coeffs(0.0, 4, &PrecisionCtx::default()).unwrap();
        let want = LaurentPoly::from_f64(Var::BetaHat, P, &[(-1, 0.125)]);
        assert!(b.e[0].rel_distance(&want) < 1e-32);
        let want = LaurentPoly::from_f64(Var::BetaHat, P, &[(-1, -0.375)]);
        assert!(b.e_tilde[0].rel_distance(&want) < 1e-32);
    }

    #[test]
    fn bessel_coefficients_vanish_at_infinity() {
        let b = gen_bessel_coeffs(0.7, 10, &PrecisionCtx::default()).unwrap();
        for p in b.e.iter().chain(&b.e_tilde) {
            assert!(p.max_exp().unwrap() <= -1);
        }
    }

    #[test]
    fn argument_validation() {
        let c = PrecisionCtx::default();
        assert!(matches!(gen_legendre_coeffs(0.99, 4, &c), Err(Error::AlphaOutOfRange(_))));
        assert!(gen_bessel_coeffs(-0.1, 4, &c).is_err());
        assert!(gen_legendre_coeffs(0.5, 13, &c).is_err());
    }

    #[test]
    fn turning_limits_at_half() {
        let b0 = b0_turning_limit(&r(0.5));
        assert!((b0 - r(2.0) / r(35.0)).abs() < 1e-32);
    }

    #[test]
    fn chebyshev_reproduces_polynomial() {
        let prec = 200;
        let nodes = chebyshev_nodes(8);
        let vals: Vec<Real> = nodes.iter().map(|&x| Real::with_prec(prec, 1.0 + x - 2.0 * x * x * x)).collect();
        let c = chebyshev_coeffs(&vals, prec);
        let x = Real::with_prec(prec, 0.37);
        let want = 1.0 + 0.37 - 2.0 * 0.37f64.powi(3);
        assert!((clenshaw(&c, &x) - want).abs() < 1e-15);
    }

    #[test]
    fn q_recursion_first_entries() {
        let c: Vec<Complex> = [0.5, -0.25, 0.125]
            .iter()
            .map(|&x| Complex::from_real(r(x)))
            .collect();
        let q = q_recursion(&c);
        assert_eq!(q[0].re.to_f64(), 0.5);
        // q2 = E2 + E1 q1 / 2
        assert_eq!(q[1].re.to_f64(), -0.25 + 0.5 * 0.5 / 2.0);
    }
}
