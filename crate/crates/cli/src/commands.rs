use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;

use legendre_uniform::legendre::{Evaluator, FunctionKind};
use legendre_uniform::lgcoeff::{CoeffTable, MAX_S_MAX};
use legendre_uniform::mapping::{LegendreParams, DELTA};
use legendre_uniform::oracle::ErrorCurve;
use legendre_uniform::{PrecisionCtx, Real};

use crate::Failure;

/// Significant digits of every printed number.
const DIGITS: usize = 17;

pub const CURVE_HEADER: &str = "t,reference,approx,envelope,omega";
pub const TABLE_HEADER: &str = "t,value,log_scale,region,fallback";

fn fmt(x: &Real) -> String {
    x.to_sci(DIGITS)
}

fn fmt_f64(x: f64) -> String {
    format!("{:.*e}", DIGITS - 1, x)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn eval(kind: FunctionKind, params: &LegendreParams, t: f64, terms: usize, ctx: PrecisionCtx) -> Result<(), Failure> {
    let ev = Evaluator::new(*params, ctx)?;
    let r = ev.eval(kind, t, terms)?;
    println!(
        "function={} nu={} mu={} alpha={} t={} value={} log_scale={} n_terms={} region={} fallback={}",
        kind.name(),
        params.nu_f64(),
        params.mu_f64(),
        params.alpha_f64(),
        t,
        fmt(&r.value),
        fmt(&r.log_scale),
        r.n_terms,
        r.region.name(),
        r.fallback_used
    );
    if r.truncation_warning {
        eprintln!(
            "warning: last retained term is {:.1e} of the leading term; the expansion may be truncated too early",
            r.last_term_ratio
        );
    }
    Ok(())
}

// Rows are computed in parallel and joined in grid order; the first failing
// row in grid order is reported.
fn rows<F>(points: &[f64], f: F) -> Result<String, Failure>
where
    F: Fn(f64) -> legendre_uniform::Result<String> + Sync,
{
    let lines: Vec<legendre_uniform::Result<String>> = points.par_iter().map(|&t| f(t)).collect();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line?);
        out.push('\n');
    }
    Ok(out)
}

pub fn table(
    kind: FunctionKind,
    params: &LegendreParams,
    points: &[f64],
    terms: usize,
    ctx: PrecisionCtx,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let ev = Evaluator::new(*params, ctx)?;
    let body = rows(points, |t| {
        let r = ev.eval(kind, t, terms)?;
        Ok(format!(
            "{},{},{},{},{}",
            fmt_f64(t),
            fmt(&r.value),
            fmt(&r.log_scale),
            r.region.name(),
            r.fallback_used
        ))
    })?;
    emit(&format!("{TABLE_HEADER}\n{body}"), output)
}

pub fn error_curve(
    params: &LegendreParams,
    points: &[f64],
    terms: usize,
    ctx: PrecisionCtx,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let curve = ErrorCurve::new(*params, ctx)?;
    let body = rows(points, |t| {
        let r = curve.row(t, terms)?;
        Ok(format!(
            "{},{},{},{},{}",
            fmt_f64(r.t),
            fmt(&r.reference),
            fmt(&r.approx),
            fmt(&r.envelope),
            fmt_f64(r.omega)
        ))
    })?;
    emit(&format!("{CURVE_HEADER}\n{body}"), output)
}

pub fn coeffs(alpha: f64, s_max: usize, ctx: PrecisionCtx) -> Result<(), Failure> {
    if s_max == 0 || s_max > MAX_S_MAX {
        return Err(Failure::Usage(format!("--smax {s_max} not in [1, {MAX_S_MAX}]")));
    }
    if !(0.0..=1.0 - DELTA).contains(&alpha) {
        return Err(Failure::Usage(format!("alpha = {alpha} outside [0, {}]", 1.0 - DELTA)));
    }
    let prec = ctx.working_bits();
    let table = CoeffTable::generate(&Real::with_prec(prec, alpha), s_max, prec)?;
    let one = Real::one(prec);
    let mut out = String::new();
    let _ = writeln!(out, "# alpha = {alpha}, s_max = {s_max}, {} digits", ctx.working_digits);
    for (i, e) in table.big_e.iter().enumerate() {
        let s = i + 1;
        let _ = writeln!(out, "E_{s}");
        out.push_str(&e.dump(DIGITS));
        if s % 2 == 1 {
            let _ = writeln!(out, "lambda_{s}\t{}", fmt(table.lambda(s / 2)));
        } else {
            let _ = writeln!(out, "E_{s}(1)\t{}", fmt(&e.evaluate_real(&one)?));
        }
    }
    for (name, list) in [("e", &table.e), ("e~", &table.e_tilde)] {
        for (i, e) in list.iter().enumerate() {
            let _ = writeln!(out, "{name}_{}", i + 1);
            out.push_str(&e.dump(DIGITS));
        }
    }
    emit(&out, None)
}
