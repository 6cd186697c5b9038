//! Ferrers functions on [0,1) and Legendre functions on (1,∞) from the
//! Bessel-type uniform expansions.
//!
//! Each function is prefactor · ((ζ−α²)/(σ²−t²))^{1/4} · exp(Σλ_{2s+1}/u^{2s+1})
//! · [𝒞(x)(1 + ΣA_s/u^{2s}) + (√|ζ|/u)·𝒞'(x)·ΣB_s/u^{2s}] with x = u√|ζ| and
//! 𝒞 ∈ {J, Y, I, K}.

use std::sync::OnceLock;

use crate::bessel::{cyl, BesselKind};
use crate::error::{Error, Result};
use crate::lgcoeff::{eval_ab_direct, near_turning, CoeffEval, CoeffTable, TurningPatch, DEFAULT_S_MAX};
use crate::mapping::{resolve_at, LegendreParams, MapPoint, Region, SINGULAR_GUARD};
use crate::numerics::{log_gamma, PrecisionCtx, Real};

pub const DEFAULT_TERMS: usize = 4;
/// A last retained term larger than this (relative to the leading term)
/// sets `truncation_warning`.
pub const TRUNCATION_WARNING_RATIO: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    /// 𝖯^{−μ}_ν(t), 0 ≤ t < 1
    FerrersP,
    /// 𝖰^{−μ}_ν(t), 0 ≤ t < 1
    FerrersQ,
    /// P^{−μ}_ν(x), x > 1
    PCut,
    /// 𝐐^{μ}_ν(x), x > 1
    QBold,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 4] = [
        FunctionKind::FerrersP,
        FunctionKind::FerrersQ,
        FunctionKind::PCut,
        FunctionKind::QBold,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FunctionKind::FerrersP => "ferrersP",
            FunctionKind::FerrersQ => "ferrersQ",
            FunctionKind::PCut => "Pcut",
            FunctionKind::QBold => "Qbold",
        }
    }

    pub fn parse(s: &str) -> Option<FunctionKind> {
        FunctionKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn on_cut(&self) -> bool {
        matches!(self, FunctionKind::PCut | FunctionKind::QBold)
    }

    fn bessel(&self) -> BesselKind {
        match self {
            FunctionKind::FerrersP => BesselKind::J,
            FunctionKind::FerrersQ => BesselKind::Y,
            FunctionKind::PCut => BesselKind::I,
            FunctionKind::QBold => BesselKind::K,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    /// mantissa · exp(log_scale)
    pub value: Real,
    pub mantissa: Real,
    /// Natural log of the Γ and power prefactors.
    pub log_scale: Real,
    pub n_terms: usize,
    pub region: Region,
    pub fallback_used: bool,
    pub last_term_ratio: f64,
    pub truncation_warning: bool,
}

/// Holds the coefficient table for one (ν, α) and, once needed, the
/// turning-point patch. Shareable across threads.
pub struct Evaluator {
    params: LegendreParams,
    ctx: PrecisionCtx,
    s_max: usize,
    table: CoeffTable,
    patch: OnceLock<Result<TurningPatch>>,
}

impl Evaluator {
    pub fn new(params: LegendreParams, ctx: PrecisionCtx) -> Result<Evaluator> {
        Evaluator::with_s_max(params, ctx, DEFAULT_S_MAX)
    }

    pub fn with_s_max(params: LegendreParams, ctx: PrecisionCtx, s_max: usize) -> Result<Evaluator> {
        if s_max < 2 {
            return Err(Error::InvalidParams(format!("s_max = {s_max} leaves no terms")));
        }
        let table = CoeffTable::for_params(&params, s_max, &ctx)?;
        Ok(Evaluator {
            params,
            ctx,
            s_max,
            table,
            patch: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &LegendreParams {
        &self.params
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    pub fn table(&self) -> &CoeffTable {
        &self.table
    }

    pub fn max_terms(&self) -> usize {
        self.table.max_terms()
    }

    pub fn prec(&self) -> u32 {
        self.ctx.working_bits()
    }

    /// The turning-point patch, built on first use.
    pub fn patch(&self) -> Result<&TurningPatch> {
        self.patch
            .get_or_init(|| TurningPatch::build(&self.params, self.s_max, &self.ctx))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn resolve(&self, t: &Real) -> Result<MapPoint> {
        resolve_at(&self.params, &t.to_prec(self.prec()), self.ctx.working_digits)
    }

    /// A_s, B_s and the λ sum at a resolved point, through the patch when
    /// the point is within its radius of the turning point.
    pub fn coefficients(&self, point: &MapPoint, n_terms: usize) -> Result<CoeffEval> {
        let u = self.params.u(self.prec());
        if near_turning(&self.params, &point.t) {
            self.patch()?.eval(&point.t, &u, n_terms)
        } else {
            eval_ab_direct(&self.table, point, &u, n_terms)
        }
    }

    pub fn eval(&self, kind: FunctionKind, t: f64, n_terms: usize) -> Result<EvalResult> {
        self.eval_at(kind, &Real::with_prec(self.prec(), t), n_terms)
    }

    pub fn eval_at(&self, kind: FunctionKind, t: &Real, n_terms: usize) -> Result<EvalResult> {
        let prec = self.prec();
        if n_terms == 0 || n_terms > self.max_terms() {
            return Err(Error::TermsOutOfRange {
                n: n_terms,
                max: self.max_terms(),
            });
        }
        if !t.is_finite() {
            return Err(Error::DomainError("argument is not finite".into()));
        }
        if (t - 1.0).abs() <= SINGULAR_GUARD {
            return Err(Error::SingularPoint(t.to_f64()));
        }
        if kind.on_cut() {
            if *t <= 1.0 {
                return Err(Error::DomainError(format!("{} needs x > 1, got {}", kind.name(), t.to_f64())));
            }
        } else if t.is_negative() || *t >= 1.0 {
            return Err(Error::DomainError(format!(
                "{} needs 0 <= t < 1, got {}",
                kind.name(),
                t.to_f64()
            )));
        }
        let point = self.resolve(t)?;
        let coeffs = self.coefficients(&point, n_terms)?;
        let u = self.params.u(prec);
        let mu = self.params.mu(prec);
        let sigma = self.params.sigma(prec);
        let alpha = self.params.alpha(prec);

        let root_zeta = point.zeta.abs().sqrt();
        let x = &u * &root_zeta;
        let c = cyl(kind.bessel(), &mu, &x)?;

        // ((ζ−α²)/(σ²−t²))^{1/4} = (|β̂/β| / (t+σ))^{1/2}
        let ratio = if point.is_turning_point() {
            crate::mapping::kappa(&sigma)
        } else {
            point.beta_hat.abs() / point.beta_abs()
        };
        let quarter = (ratio / (&point.t + &sigma)).sqrt();

        let (sa, sb) = coeffs.series(&u);
        let bracket = &c.value * (sa + 1.0) + &root_zeta * &c.deriv * sb / &u;
        let mut mantissa = quarter * coeffs.lambda_sum.exp() * bracket;

        let mut log_scale = &mu * (&sigma / (&alpha + 1.0)).ln() + u.ln() * 0.5 - &u * sigma.ln() - log_gamma(&(&u + 1.0))?;
        if kind != FunctionKind::QBold {
            log_scale += log_gamma(&(&u - &mu + 0.5))?;
        }
        if kind == FunctionKind::FerrersQ {
            mantissa = -mantissa * Real::pi(prec) * 0.5;
        }
        let value = &mantissa * log_scale.exp();
        if !value.is_finite() {
            return Err(Error::Overflow);
        }
        let last_term_ratio = coeffs.last_term_ratio(&u);
        Ok(EvalResult {
            value,
            mantissa,
            log_scale,
            n_terms,
            region: point.region,
            fallback_used: coeffs.fallback_used,
            last_term_ratio,
            truncation_warning: last_term_ratio > TRUNCATION_WARNING_RATIO,
        })
    }

    pub fn ferrers_p(&self, t: f64, n_terms: usize) -> Result<EvalResult> {
        self.eval(FunctionKind::FerrersP, t, n_terms)
    }

    pub fn ferrers_q(&self, t: f64, n_terms: usize) -> Result<EvalResult> {
        self.eval(FunctionKind::FerrersQ, t, n_terms)
    }

    pub fn p_cut(&self, x: f64, n_terms: usize) -> Result<EvalResult> {
        self.eval(FunctionKind::PCut, x, n_terms)
    }

    pub fn q_bold(&self, x: f64, n_terms: usize) -> Result<EvalResult> {
        self.eval(FunctionKind::QBold, x, n_terms)
    }
}

pub fn ferrers_p(params: &LegendreParams, t: f64, n_terms: usize) -> Result<EvalResult> {
    Evaluator::new(*params, PrecisionCtx::default())?.ferrers_p(t, n_terms)
}

pub fn ferrers_q(params: &LegendreParams, t: f64, n_terms: usize) -> Result<EvalResult> {
    Evaluator::new(*params, PrecisionCtx::default())?.ferrers_q(t, n_terms)
}

pub fn legendre_p_cut(params: &LegendreParams, x: f64, n_terms: usize) -> Result<EvalResult> {
    Evaluator::new(*params, PrecisionCtx::default())?.p_cut(x, n_terms)
}

pub fn legendre_q_bold(params: &LegendreParams, x: f64, n_terms: usize) -> Result<EvalResult> {
    Evaluator::new(*params, PrecisionCtx::default())?.q_bold(x, n_terms)
}

/// (t²−1)·[f·g' − g·f'] with derivatives by central differences of step h.
pub fn modified_wronskian(
    ev: &Evaluator,
    first: FunctionKind,
    second: FunctionKind,
    t: f64,
    h: f64,
    n_terms: usize,
) -> Result<Real> {
    let prec = ev.prec();
    let t = Real::with_prec(prec, t);
    let h = Real::with_prec(prec, h);
    let value = |k: FunctionKind, x: &Real| ev.eval_at(k, x, n_terms).map(|r| r.value);
    let deriv = |k: FunctionKind| -> Result<Real> {
        let hi = value(k, &(&t + &h))?;
        let lo = value(k, &(&t - &h))?;
        Ok((hi - lo) / (&h * 2.0))
    };
    let f = value(first, &t)?;
    let g = value(second, &t)?;
    let w = &f * deriv(second)? - &g * deriv(first)?;
    Ok((t.square() - 1.0) * w)
}
