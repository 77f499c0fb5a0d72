//! Values checked against closed forms or independent quadratures, then frozen.

use std::f64::consts::PI;

use lichnerowicz::asymptotic::{hille_nehari_value, integrate_beta, BetaKind, DEFAULT_T};
use lichnerowicz::bounds::{constant_solution_root, interior_sup_bound};
use lichnerowicz::demos;
use lichnerowicz::spectral::lambda1_ball;
use lichnerowicz::{ModelManifold, RadialField};

#[test]
fn hyperbolic_ball_eigenvalue() {
    // λ₁(B_R) = 1 + π²/R² in hyperbolic 3-space
    let model = ModelManifold::hyperbolic(3, 1.0, 4.0).unwrap();
    for r in [1.0, 2.0, 4.0] {
        let l = lambda1_ball(&model, &RadialField::constant(0.0), r, 2000).unwrap().lambda1;
        let exact = 1.0 + PI * PI / (r * r);
        assert!((l / exact - 1.0).abs() < 1e-5, "R = {r}: {l} vs {exact}");
    }
}

#[test]
fn planar_disk_eigenvalue() {
    // first zero of J₀ squared
    let model = ModelManifold::euclidean(2, 1.0).unwrap();
    let l = lambda1_ball(&model, &RadialField::constant(0.0), 1.0, 2000).unwrap().lambda1;
    assert!((l / 5.783_185_962_946_784 - 1.0).abs() < 1e-5, "{l}");
}

#[test]
fn green_kernel_four_dimensions() {
    let gk = ModelManifold::euclidean(4, 5.0).unwrap().green_kernel(2000).unwrap();
    let grid = gk.grid.clone().unwrap();
    for (i, v) in gk.values.iter().enumerate() {
        let r = grid.r(i);
        assert!((v * 2.0 * r * r - 1.0).abs() < 1e-6, "r = {r}");
    }
}

#[test]
fn constant_roots_closed_form() {
    // t − 2/t = 0
    assert!((constant_solution_root(0.0, 1.0, 2.0, 2.0, 0.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    // x = t² solves x² − x − 1 = 0
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((constant_solution_root(-1.0, 1.0, 1.0, 3.0, -1.0).unwrap() - golden.sqrt()).abs() < 1e-12);
}

/// e^x E₁(x) by the continued fraction 1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + …))))).
fn scaled_e1(x: f64) -> f64 {
    let mut tail = 0.0;
    for k in (1..400).rev() {
        let k = k as f64;
        tail = k / (1.0 + k / (x + tail));
    }
    1.0 / (x + tail)
}

#[test]
fn hille_nehari_against_exponential_integral() {
    // t∫_t^∞ (1 + 1/log²s)/(4s²) ds = 1/4 + (1/log t − t E₁(log t))/4
    for t in [10.0f64, 1e3, 1e6, 1e12] {
        let l = t.ln();
        let oracle = 0.25 + 0.25 * (1.0 / l - scaled_e1(l));
        assert!((hille_nehari_value(t) - oracle).abs() < 1e-12, "t = {t}");
    }
    assert!((hille_nehari_value(100.0) - 0.258_543_222_747_268_6).abs() < 1e-14);
}

#[test]
fn kappa_solution_closed_form() {
    // β = √(t log t)(A log log t + B)
    let t0 = DEFAULT_T;
    let (l0, ll0) = (t0.ln(), t0.ln().ln());
    let s0 = (t0 * l0).sqrt();
    let ds0 = (l0 + 1.0) / (2.0 * s0);
    // β(t0) = 1, β'(t0) = 1
    let a = (1.0 - ds0 / s0) / (s0 / (t0 * l0));
    let b = (1.0 - a * ll0 * s0) / s0;
    let rep = integrate_beta(BetaKind::KappaThreshold, t0, 1e6, 1.0, 1.0).unwrap();
    for &(t, beta, _) in &rep.trace {
        let exact = (t * t.ln()).sqrt() * (a * t.ln().ln() + b);
        assert!((beta / exact - 1.0).abs() < 1e-7, "t = {t}");
    }
}

#[test]
fn pinched_interior_bound() {
    // sup over ρ < 8 of (64 − ρ²)·(X + 1)^{1/2}, X = 24ρ²/(64 − ρ²)² + 6/(64 − ρ²), golden-section maximized
    let (model, c) = demos::pinched(8.0).unwrap();
    let ib = interior_sup_bound(&model, &c, 8.0, 4.0, 2.0).unwrap();
    let w = |rho: f64| {
        let d = 64.0 - rho * rho;
        d * (24.0 * rho * rho / (d * d) + 6.0 / d + 1.0).sqrt()
    };
    let (mut lo, mut hi) = (0.0, 8.0);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if w(x1) < w(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    let oracle = w(lo).max(w(0.0)) / 60.0;
    assert!((ib.c_omega / oracle - 1.0).abs() < 1e-6, "{} vs {oracle}", ib.c_omega);
    assert!((ib.c_omega - 1.115_546_702_045_434).abs() < 1e-9);
}
