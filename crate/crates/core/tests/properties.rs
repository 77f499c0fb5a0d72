use proptest::prelude::*;

use lichnerowicz::asymptotic::{critical_curve, rho_of_t, t_of_rho, KappaPotential};
use lichnerowicz::bounds::{constant_solution_root, lemmunu_bound};
use lichnerowicz::nonlinearity::{constant_barriers, quotient_monotone_check};
use lichnerowicz::solver::{solve_dirichlet, DirichletProblem, SolveOptions};
use lichnerowicz::spectral::lambda1_ball;
use lichnerowicz::{CoefficientSet, ModelManifold, RadialField, RadialGrid};

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn elementary_inequality(alpha in 0.0..10.0f64, beta in 0.01..10.0f64, mu in 0.05..5.0f64, nu in 0.0..5.0f64, x in 0.0..1.0f64) {
        // the largest admissible t solves t^μ = α + βt^{−ν}; bisect in log t
        let f = |t: f64| t.powf(mu) - alpha - beta * t.powf(-nu);
        let (mut lo, mut hi) = (1e-12f64, 1e12f64);
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if f(mid) > 0.0 { hi = mid } else { lo = mid }
        }
        let t = lo * x;
        prop_assert!(t <= lemmunu_bound(alpha, beta, mu, nu) * (1.0 + 1e-12));
        prop_assert!(lo <= lemmunu_bound(alpha, beta, mu, nu) * (1.0 + 1e-9));
    }

    #[test]
    fn constant_root_decreases_in_alpha(a1 in -3.0..3.0f64, da in 0.0..3.0f64, beta in 0.1..5.0f64, gamma in 0.1..5.0f64,
                                        sigma in 1.1..4.0f64, tau in -2.0..0.9f64) {
        let r1 = constant_solution_root(a1, beta, gamma, sigma, tau).unwrap();
        let r2 = constant_solution_root(a1 + da, beta, gamma, sigma, tau).unwrap();
        prop_assert!(r2 <= r1 * (1.0 + 1e-12));
        let p = a1 + beta * r1.powf(sigma - 1.0) - gamma * r1.powf(tau - 1.0);
        prop_assert!(p.abs() < 1e-8 * (1.0 + a1.abs() + beta * r1.powf(sigma - 1.0)));
    }

    #[test]
    fn quotient_is_nonincreasing(a in -5.0..5.0f64, b in 0.0..5.0f64, c in 0.0..5.0f64, sigma in 1.01..5.0f64, tau in -3.0..0.99f64) {
        let coeffs = CoefficientSet::constant(a, b, c, sigma, tau).unwrap();
        let s: Vec<f64> = (0..60).map(|k| 1e-3 * 1.2f64.powi(k)).collect();
        prop_assert!(quotient_monotone_check(&coeffs, 1.0, &s).unwrap());
    }

    #[test]
    fn rho_substitution_inverts(n in 3usize..8, t in 3.0..200.0f64) {
        let back = t_of_rho(n, rho_of_t(n, t));
        prop_assert!((back - t).abs() < 1e-12 * t);
    }

    #[test]
    fn critical_curve_splits_excess(t in 3.0..1e12f64) {
        let (hi, lo) = KappaPotential::excess_split(t);
        let exc = (hi - KappaPotential::euler_part(t)) + lo;
        prop_assert!(((exc - critical_curve(t)) / critical_curve(t)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eigenvalue_decreases_with_radius(a in -3.0..3.0f64, r in 0.5..3.0f64, k in 0.0..2.0f64) {
        let model = ModelManifold::hyperbolic(3, k.max(1e-3), 6.0).unwrap();
        let f = RadialField::constant(a);
        let l1 = lambda1_ball(&model, &f, r, 400).unwrap().lambda1;
        let l2 = lambda1_ball(&model, &f, 2.0 * r, 800).unwrap().lambda1;
        prop_assert!(l2 < l1);
    }

    #[test]
    fn dirichlet_solution_between_constant_barriers(a in -2.0..2.0f64, b in 0.5..3.0f64, c in 0.5..3.0f64,
                                                     sigma in 1.2..4.0f64, tau in -2.0..0.8f64, x in 0.0..1.0f64) {
        let model = ModelManifold::euclidean(3, 2.0).unwrap();
        let coeffs = CoefficientSet::constant(a, b, c, sigma, tau).unwrap();
        let grid = RadialGrid::ball(2.0, 200).unwrap();
        let bp = constant_barriers(&model, &coeffs, &grid).unwrap();
        prop_assert!(bp.certified);
        let (lo, hi) = (bp.sub.value(0), bp.sup.value(0));
        let p = DirichletProblem { model: &model, coeffs: &coeffs, boundary: lo + x * (hi - lo), sub: bp.sub.clone(), sup: bp.sup.clone() };
        let rep = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
        prop_assert!(rep.monotone && rep.sandwiched);
        prop_assert!(rep.solution.values().iter().all(|&u| u >= lo * (1.0 - 1e-10) && u <= hi * (1.0 + 1e-10)));
    }

    #[test]
    fn green_kernel_is_decreasing(k in 0.1..3.0f64, m in 3usize..6) {
        let gk = ModelManifold::hyperbolic(m, k, 5.0).unwrap().green_kernel(400).unwrap();
        prop_assert!(gk.nonparabolic);
        prop_assert!(gk.values.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));
    }
}
