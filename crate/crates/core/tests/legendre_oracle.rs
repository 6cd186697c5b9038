use legendre_uniform::legendre::{Evaluator, FunctionKind};
use legendre_uniform::lgcoeff::{eval_ab_direct, FALLBACK_RADIUS};
use legendre_uniform::mapping::{resolve_at, LegendreParams};
use legendre_uniform::oracle::{ErrorCurve, Oracle};
use legendre_uniform::{Error, PrecisionCtx, Real};

fn evaluator(nu: f64, alpha: f64) -> Evaluator {
    Evaluator::new(LegendreParams::from_alpha(nu, alpha).unwrap(), PrecisionCtx::default()).unwrap()
}

fn rel(a: &Real, b: &Real) -> f64 {
    ((a - b) / b).abs().to_f64()
}

#[test]
fn ferrers_p_at_documented_point() {
    let curve = ErrorCurve::new(LegendreParams::from_alpha(50.0, 0.5).unwrap(), PrecisionCtx::default()).unwrap();
    let row = curve.row(0.3, 4).unwrap();
    assert!(row.omega <= -11.0, "omega {}", row.omega);
}

#[test]
fn ferrers_pair_and_cut_against_oracle() {
    for (nu, alpha) in [(40.0, 0.3), (60.0, 0.7)] {
        let params = LegendreParams::from_alpha(nu, alpha).unwrap();
        let ev = evaluator(nu, alpha);
        let oracle = Oracle::new(params, PrecisionCtx::default());
        for t in [0.05, 0.35, 0.65, 0.9, 0.97] {
            let env = oracle.envelope(t).unwrap();
            for kind in [FunctionKind::FerrersP, FunctionKind::FerrersQ] {
                let got = ev.eval(kind, t, 4).unwrap().value;
                let want = oracle.value(kind, t).unwrap();
                // beyond the turning point Q is dominant and P-based M(t) is too small
                let scale = env.clone().max(want.abs());
                let err = ((&got - &want) / scale).abs().to_f64();
                assert!(err <= 1e-8, "{} nu = {nu} alpha = {alpha} t = {t}: {err:e}", kind.name());
            }
        }
        for x in [1.05, 1.5, 2.5] {
            let got = ev.p_cut(x, 4).unwrap().value;
            let want = oracle.p_cut(x).unwrap();
            assert!(rel(&got, &want) <= 1e-8, "Pcut nu = {nu} x = {x}");
        }
    }
}

#[test]
fn more_terms_reduce_the_error() {
    let curve = ErrorCurve::new(LegendreParams::from_alpha(30.0, 0.5).unwrap(), PrecisionCtx::default()).unwrap();
    let max_omega = |n: usize| {
        (1..20)
            .map(|i| curve.row(i as f64 / 20.0, n).unwrap().omega)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let (o1, o2, o4) = (max_omega(1), max_omega(2), max_omega(4));
    assert!(o2 < o1 - 1.0 && o4 < o2 - 1.0, "{o1} {o2} {o4}");
}

#[test]
fn patch_matches_direct_evaluation_inside_radius() {
    for alpha in [0.05, 0.5, 0.9] {
        let params = LegendreParams::from_alpha(50.0, alpha).unwrap();
        let ctx = PrecisionCtx::default();
        let ev = evaluator(50.0, alpha);
        let patch = ev.patch().unwrap();
        // direct evaluation at oracle precision absorbs the cancellation
        let hi = ctx.oracle_bits();
        let table = legendre_uniform::lgcoeff::CoeffTable::generate(&params.alpha(hi), 8, hi).unwrap();
        let u = params.u(hi);
        let sigma = params.sigma(hi);
        for frac in [-0.9, -0.5, -0.2, 0.2, 0.5, 0.9] {
            let t = &sigma + FALLBACK_RADIUS * frac;
            let point = resolve_at(&params, &t, ctx.oracle_digits).unwrap();
            let direct = eval_ab_direct(&table, &point, &u, 4).unwrap();
            let patched = patch.eval(&t, &u, 4).unwrap();
            for (p, d) in patched.a.iter().chain(&patched.b).zip(direct.a.iter().chain(&direct.b)) {
                assert!(rel(p, d) <= 1e-20, "alpha = {alpha} frac = {frac}: {:e}", rel(p, d));
            }
        }
    }
}

#[test]
fn values_are_continuous_across_the_patch_edge() {
    let ev = evaluator(50.0, 0.5);
    let sigma = ev.params().sigma_f64();
    for edge in [sigma - FALLBACK_RADIUS, sigma + FALLBACK_RADIUS] {
        let inside = ev.ferrers_p(edge - 1e-9 * (edge - sigma).signum(), 4).unwrap();
        let outside = ev.ferrers_p(edge + 1e-9 * (edge - sigma).signum(), 4).unwrap();
        assert_ne!(inside.fallback_used, outside.fallback_used);
        assert!(rel(&inside.value, &outside.value) <= 1e-6);
    }
}

#[test]
fn low_oracle_precision_exhausts_the_patch() {
    let params = LegendreParams::from_alpha(50.0, 0.5).unwrap();
    let ev = Evaluator::new(params, PrecisionCtx::unchecked(8, 18)).unwrap();
    let err = ev.ferrers_p(params.sigma_f64(), 4).unwrap_err();
    assert!(matches!(err, Error::PrecisionExhausted { .. }), "{err}");
    assert_eq!(err.stage(), "turning-point fallback");
}

#[test]
fn invalid_inputs_are_reported() {
    let ev = evaluator(50.0, 0.5);
    assert!(matches!(ev.ferrers_p(1.2, 4), Err(Error::DomainError(_))));
    assert!(matches!(ev.p_cut(0.5, 4), Err(Error::DomainError(_))));
    assert!(matches!(ev.ferrers_p(0.5, 0), Err(Error::TermsOutOfRange { .. })));
    assert!(matches!(ev.ferrers_p(0.5, 5), Err(Error::TermsOutOfRange { .. })));
    assert!(LegendreParams::from_alpha(50.0, 0.99).is_err());
}
