use legendre_uniform::mapping::{resolve, resubstitution_residual, LegendreParams, Region};
use legendre_uniform::numerics::{solve_root, Bracket};
use legendre_uniform::{PrecisionCtx, Real};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resolved_points_satisfy_their_equation(alpha in 0.0f64..0.95, t in 0.0f64..3.0) {
        prop_assume!((t - 1.0).abs() > 1e-6);
        let ctx = PrecisionCtx::default();
        let params = LegendreParams::from_alpha(40.0, alpha).unwrap();
        let p = resolve(&params, t, &ctx).unwrap();
        prop_assert!(p.residual <= 1e-13);
        prop_assert!(resubstitution_residual(&params, &p, ctx.working_bits()).to_f64() <= 1e-13);
        let sigma = params.sigma_f64();
        let expected = if t > 1.0 {
            Region::Cut
        } else if t < sigma {
            Region::Oscillatory
        } else {
            Region::Monotone
        };
        prop_assert_eq!(p.region, expected);
    }

    #[test]
    fn zeta_decreases_with_t(alpha in 0.0f64..0.95, t in 0.0f64..2.9, dt in 1e-3f64..0.1) {
        let t2 = t + dt;
        prop_assume!((t - 1.0).abs() > 1e-6 && (t2 - 1.0).abs() > 1e-6);
        let ctx = PrecisionCtx::default();
        let params = LegendreParams::from_alpha(40.0, alpha).unwrap();
        let z1 = resolve(&params, t, &ctx).unwrap().zeta;
        let z2 = resolve(&params, t2, &ctx).unwrap().zeta;
        prop_assert!(z2 < z1);
    }

    #[test]
    fn root_solver_finds_cube_roots(c in 0.01f64..1000.0) {
        let prec = 200;
        let cr = Real::with_prec(prec, c);
        let f = |x: &Real| x.powi(3) - &cr;
        let bracket = Bracket::new(f, Real::zero(prec), Real::with_prec(prec, 11.0)).unwrap();
        let root = solve_root(f, &bracket, &Real::with_prec(prec, 1e-50)).unwrap();
        prop_assert!(((root - cr.cbrt()).abs()).to_f64() <= 1e-48);
    }
}
