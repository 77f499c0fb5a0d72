//! Browser bindings. Every export returns a JSON string; failures come back as `{"error": ...}`.

use lichnerowicz::asymptotic::{integrate_beta, BetaKind};
use lichnerowicz::nonlinearity::constant_barriers;
use lichnerowicz::solver::{solve_dirichlet, DirichletProblem, SolveOptions};
use lichnerowicz::spectral::dirichlet_eigen;
use lichnerowicz::{CoefficientSet, ModelManifold, RadialField, RadialGrid};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Points sent to the page per curve.
const MAX_POINTS: usize = 400;

fn model(kind: &str, m: usize, r_max: f64) -> lichnerowicz::Result<ModelManifold> {
    match kind {
        "hyperbolic" => ModelManifold::hyperbolic(m, 1.0, r_max),
        _ => ModelManifold::euclidean(m, r_max),
    }
}

fn thin<T: Copy>(v: &[T]) -> Vec<T> {
    let step = v.len().div_ceil(MAX_POINTS).max(1);
    let mut out: Vec<T> = v.iter().copied().step_by(step).collect();
    if !(v.len() - 1).is_multiple_of(step) {
        out.push(v[v.len() - 1]);
    }
    out
}

fn finish(r: lichnerowicz::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Lowest Dirichlet eigenpair of Δ + a on B_R.
#[wasm_bindgen]
pub fn eigenfunction(kind: &str, m: usize, r_max: f64, a: &str, n: usize) -> String {
    finish((|| {
        let model = model(kind, m, r_max)?;
        let grid = RadialGrid::ball(r_max, n)?;
        let e = dirichlet_eigen(&model, &RadialField::parse(a)?.sample(&grid), &grid)?;
        let pts: Vec<(f64, f64)> = e.eigenfunction.pairs().collect();
        let pts = thin(&pts);
        Ok(json!({
            "lambda1": e.lambda1,
            "rayleigh": e.rayleigh,
            "r": pts.iter().map(|p| p.0).collect::<Vec<_>>(),
            "v": pts.iter().map(|p| p.1).collect::<Vec<_>>(),
        }))
    })())
}

/// Dirichlet solution on B_R between the constant barriers, with boundary value `boundary`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn solve_profile(kind: &str, m: usize, r_max: f64, a: &str, b: &str, c: &str, sigma: f64, tau: f64, boundary: f64, n: usize) -> String {
    finish((|| {
        let model = model(kind, m, r_max)?;
        let coeffs = CoefficientSet::new(RadialField::parse(a)?, RadialField::parse(b)?, RadialField::parse(c)?, sigma, tau)?;
        let grid = RadialGrid::ball(r_max, n)?;
        let bp = constant_barriers(&model, &coeffs, &grid)?;
        let k = bp.sub.value(grid.n());
        let h = bp.sup.value(grid.n());
        let boundary = if boundary.is_finite() { boundary } else { k };
        let p = DirichletProblem { model: &model, coeffs: &coeffs, boundary, sub: bp.sub, sup: bp.sup };
        let rep = solve_dirichlet(&p, &SolveOptions::default())?;
        let pts: Vec<(f64, f64)> = rep.solution.pairs().collect();
        let pts = thin(&pts);
        Ok(json!({
            "sub": k,
            "sup": h,
            "boundary": boundary,
            "iterations": rep.iterations,
            "residual": rep.residual_max,
            "r": pts.iter().map(|p| p.0).collect::<Vec<_>>(),
            "u": pts.iter().map(|p| p.1).collect::<Vec<_>>(),
        }))
    })())
}

/// β'' + (1/(4t²) + h)β = 0 for `kind` in kappa, euler, super_euler (ε = `param`) or constant (λ = `param`).
#[wasm_bindgen]
pub fn beta_trace(kind: &str, param: f64, t_end: f64) -> String {
    finish((|| {
        let kind = match kind {
            "euler" => BetaKind::EulerReference,
            "super_euler" => BetaKind::SuperEuler { epsilon: param },
            "constant" => BetaKind::ConstantLambda { lambda: param },
            _ => BetaKind::KappaThreshold,
        };
        let rep = integrate_beta(kind, std::f64::consts::E.powi(2), t_end, 1.0, 1.0)?;
        let pts = thin(&rep.trace);
        Ok(json!({
            "zero_count": rep.zero_count,
            "zeros": rep.zeros,
            "ratio_drift": rep.ratio_drift,
            "t": pts.iter().map(|p| p.0).collect::<Vec<_>>(),
            "beta": pts.iter().map(|p| p.1).collect::<Vec<_>>(),
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn unit_ball_eigenvalue() {
        let v = parse(eigenfunction("euclidean", 3, 1.0, "0", 800));
        assert!((v["lambda1"].as_f64().unwrap() - std::f64::consts::PI.powi(2)).abs() < 1e-3);
        assert!(v["r"].as_array().unwrap().len() <= MAX_POINTS + 1);
    }

    #[test]
    fn pinched_profile_is_one() {
        let v = parse(solve_profile("euclidean", 3, 4.0, "0", "1", "1", 3.0, -1.0, f64::NAN, 400));
        assert!(v["u"].as_array().unwrap().iter().all(|u| (u.as_f64().unwrap() - 1.0).abs() < 1e-10));
    }

    #[test]
    fn errors_are_reported_as_json() {
        let v = parse(solve_profile("euclidean", 3, 4.0, "0", "0", "1", 3.0, -1.0, 1.0, 400));
        assert!(v["error"].as_str().unwrap().contains("no constant barriers"));
        assert!(parse(eigenfunction("euclidean", 3, 1.0, "r +", 100))["error"].is_string());
    }

    #[test]
    fn super_euler_oscillates() {
        let v = parse(beta_trace("super_euler", 0.5, 1e6));
        assert!(v["zero_count"].as_u64().unwrap() >= 1);
        assert_eq!(parse(beta_trace("euler", 0.0, 1e6))["zero_count"], 0);
    }
}
