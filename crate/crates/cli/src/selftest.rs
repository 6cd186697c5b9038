//! Built-in consistency checks. Each check reports pass/fail with a short
//! measurement; numeric errors inside a check count as failures.

use std::time::Instant;

use legendre_uniform::bessel::{bessel_ik, bessel_jy};
use legendre_uniform::legendre::{modified_wronskian, Evaluator, FunctionKind};
use legendre_uniform::lgcoeff::{gen_legendre_coeffs, DEFAULT_S_MAX};
use legendre_uniform::mapping::{boundary_rho, resolve, resubstitution_residual, LegendreParams};
use legendre_uniform::oracle::{ode_residual, oracle_ferrers_p_at, ErrorCurve};
use legendre_uniform::{Error, PrecisionCtx, Real};

use crate::Failure;

type Check = fn(&PrecisionCtx) -> Result<(bool, String), Error>;

fn rel(a: &Real, b: &Real) -> f64 {
    ((a - b) / b).abs().to_f64()
}

fn turning_point(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let ev = Evaluator::new(LegendreParams::from_alpha(50.0, 0.5)?, *ctx)?;
    let patch = ev.patch()?;
    let want = Real::ratio(patch.b0_at_turning.prec(), 2, 35);
    let err = rel(&patch.b0_at_turning, &want);
    Ok((
        err <= 1e-8,
        format!("B0(sigma) = 2/35 to {err:.1e}, cancellation {:.1} digits", patch.max_cancellation),
    ))
}

fn coefficient_identities(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let prec = ctx.working_bits();
    let one = Real::one(prec);
    let minus_one = -Real::one(prec);
    let mut worst = 0.0f64;
    let mut parity = true;
    for alpha in [0.0, 0.3, 0.5, 0.9] {
        let lg = gen_legendre_coeffs(alpha, DEFAULT_S_MAX, ctx)?;
        for (i, e) in lg.big_e.iter().enumerate() {
            let s = i + 1;
            worst = worst.max(e.substitute_reciprocal().rel_distance(e).to_f64());
            parity &= e.parity() == Some((s % 2) as i32);
            let scale = e.abs_sum(&one);
            let (p, m) = (e.evaluate_real(&one)?, e.evaluate_real(&minus_one)?);
            let (p, m) = if s % 2 == 0 {
                (p, m)
            } else {
                let l = &lg.lambda_odd[i / 2];
                (p - l, m + l)
            };
            worst = worst.max((p.abs() / &scale).to_f64()).max((m.abs() / &scale).to_f64());
        }
    }
    Ok((worst <= 1e-18 && parity, format!("worst {worst:.1e}, parity {parity}")))
}

fn boundary_root(_: &PrecisionCtx) -> Result<(bool, String), Error> {
    let rho = boundary_rho(40)?.to_f64();
    Ok(((rho - 0.4392288399).abs() <= 1e-9, format!("rho = {rho:.12}")))
}

fn mapping_residuals(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let mut worst = 0.0f64;
    for alpha in [0.0, 0.25, 0.5, 0.9] {
        let params = LegendreParams::from_alpha(50.0, alpha)?;
        for i in 0..60 {
            let t = 0.025 + 0.05 * i as f64;
            if (t - 1.0).abs() < 1e-6 {
                continue;
            }
            let p = resolve(&params, t, ctx)?;
            worst = worst.max(p.residual).max(resubstitution_residual(&params, &p, ctx.working_bits()).to_f64());
        }
    }
    Ok((worst <= 1e-13, format!("worst residual {worst:.1e}")))
}

fn bessel_wronskians(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let prec = ctx.working_bits();
    let mut worst = 0.0f64;
    for mu in [0.0, 0.5, 10.1, 25.25, 100.3] {
        for x in [0.1, 1.0, 10.0, 100.0] {
            let (m, x) = (Real::with_prec(prec, mu), Real::with_prec(prec, x));
            let jy = bessel_jy(&m, &x)?;
            let ik = bessel_ik(&m, &x)?;
            let w1 = &jy.j.value * &jy.y.deriv - &jy.y.value * &jy.j.deriv;
            let w2 = &ik.i.value * &ik.k.deriv - &ik.k.value * &ik.i.deriv;
            worst = worst
                .max(rel(&w1, &(Real::with_prec(prec, 2.0) / (Real::pi(prec) * &x))))
                .max(rel(&w2, &-x.recip()));
        }
    }
    Ok((worst <= 1e-12, format!("worst {worst:.1e}")))
}

fn assembled_wronskian(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let ev = Evaluator::new(LegendreParams::from_alpha(50.0, 0.5)?, *ctx)?;
    let ws = (0..12)
        .map(|i| {
            let t = 0.04 + 0.08 * i as f64;
            modified_wronskian(&ev, FunctionKind::FerrersP, FunctionKind::FerrersQ, t, 1e-9, 4).map(|w| w.to_f64())
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    let lo = ws.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ws.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo) / ws[0].abs();
    Ok((spread <= 1e-7, format!("relative spread {spread:.1e}")))
}

fn error_curve(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let curve = ErrorCurve::new(LegendreParams::from_alpha(50.0, 0.5)?, *ctx)?;
    let mut worst = f64::NEG_INFINITY;
    for i in 1..20 {
        worst = worst.max(curve.row(i as f64 / 20.0, 4)?.omega);
    }
    Ok((worst <= -11.0, format!("nu=50 alpha=0.5: max omega_4 {worst:.2}")))
}

fn oracle_ode(ctx: &PrecisionCtx) -> Result<(bool, String), Error> {
    let params = LegendreParams::from_alpha(50.0, 0.5)?;
    let prec = ctx.oracle_bits();
    let h = Real::with_prec(prec, 1e-12);
    let mut worst = 0.0f64;
    for t in [0.1, 0.5, 0.9] {
        let r = ode_residual(
            &params,
            |x| oracle_ferrers_p_at(&params, -1, x, ctx.oracle_digits),
            &Real::with_prec(prec, t),
            &h,
        )?;
        worst = worst.max(r);
    }
    Ok((worst <= 1e-12, format!("worst residual {worst:.1e}")))
}

const QUICK: &[(&str, Check)] = &[("coefficient identities", coefficient_identities)];

const FULL: &[(&str, Check)] = &[
    ("turning-point fallback", turning_point),
    ("coefficient identities", coefficient_identities),
    ("boundary root", boundary_root),
    ("mapping residuals", mapping_residuals),
    ("bessel wronskians", bessel_wronskians),
    ("assembled wronskian", assembled_wronskian),
    ("error curve", error_curve),
    ("oracle ode residual", oracle_ode),
];

pub fn run(ctx: PrecisionCtx, quick: bool) -> Result<(), Failure> {
    let checks = if quick { QUICK } else { FULL };
    let mut first_failure: Option<(&str, Option<Error>)> = None;
    println!("{:<24} {:<6} detail", "check", "status");
    for (name, check) in checks {
        let start = Instant::now();
        let (ok, detail, err) = match check(&ctx) {
            Ok((ok, d)) => (ok, d, None),
            Err(e) => (false, format!("error [{}]: {e}", e.stage()), Some(e)),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{name:<24} {status:<6} {detail} ({:.2}s)", start.elapsed().as_secs_f64());
        if !ok && first_failure.is_none() {
            first_failure = Some((name, err));
        }
    }
    match first_failure {
        None => Ok(()),
        Some((name, Some(e))) => {
            eprintln!("selftest: first failing check: {name}");
            Err(Failure::Numeric(e))
        }
        Some((name, None)) => {
            eprintln!("selftest: first failing check: {name}");
            Err(Failure::Numeric(Error::StructureViolation(format!("selftest check '{name}' failed"))))
        }
    }
}
