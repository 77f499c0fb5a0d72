//! A priori estimates as checkers: the elementary inequality t^μ ≤ α + β t^{−ν}, the
//! interior sup bound on balls, the superlevel-set bound on u*, the bilateral bound
//! 𝒦 ≤ u ≤ ℋ and the constant solution of the constant-coefficient problem.

use serde::Serialize;

use crate::error::{hypothesis, invalid, Result};
use crate::grid::{RadialFunction, RadialGrid};
use crate::model::ModelManifold;
use crate::nonlinearity::{ratio_bounds, CoefficientSet};
use crate::roots::increasing_root;
use crate::solver::Check;

/// Relative slack for bound checks on solver outputs.
pub const BOUND_TOL: f64 = 1e-6;

/// If t^μ ≤ α + β t^{−ν} then t ≤ (α + β^{μ/(μ+ν)})^{1/μ}.
pub fn lemmunu_bound(alpha: f64, beta: f64, mu: f64, nu: f64) -> f64 {
    (alpha + beta.powf(mu / (mu + nu))).powf(1.0 / mu)
}

#[derive(Debug, Clone, Serialize)]
pub struct InteriorBound {
    pub t: f64,
    pub t_tilde: f64,
    /// Ω = B_ω.
    pub omega: f64,
    /// Laplacian comparison constant on B_T.
    pub a_const: f64,
    /// sup over ρ < T of (T² − ρ²)^{2/(σ−1)} times the pointwise bound.
    pub weighted_sup: f64,
    pub rho_at_sup: f64,
    /// Bound on sup_Ω u.
    pub c_omega: f64,
    /// Bound on sup over B_T̃ (the cruder constant).
    pub c_t_tilde: f64,
    pub yamabe: bool,
}

impl InteriorBound {
    pub fn check(&self, u: &RadialFunction) -> Check {
        let k = u.grid().floor_index(self.omega);
        let sup = u.values()[..=k].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let holds = sup <= self.c_omega * (1.0 + BOUND_TOL);
        Check::new("interior_sup", holds, sup - self.c_omega, format!("sup over B_{} = {sup}, C = {}", self.omega, self.c_omega))
    }
}

/// Evaluates the interior bound for solutions of Δu + au − bu^σ + cu^τ ≥ 0 on B_T(o).
pub fn interior_sup_bound(
    model: &ModelManifold,
    coeffs: &CoefficientSet,
    t: f64,
    t_tilde: f64,
    omega: f64,
) -> Result<InteriorBound> {
    if !(0.0 < omega && omega < t_tilde && t_tilde < t) {
        return Err(invalid(format!("need 0 < ω < T̃ < T, got ω = {omega}, T̃ = {t_tilde}, T = {t}")));
    }
    if t > model.r_max() * (1.0 + 1e-12) {
        return Err(invalid(format!("T = {t} exceeds R_max = {}", model.r_max())));
    }
    let (sigma, tau) = (coeffs.sigma, coeffs.tau);
    let m = model.dim() as f64;
    let a_const = model.comparison_constant(t);
    let p = 2.0 / (sigma - 1.0);
    let yamabe = coeffs.c.as_constant() == Some(0.0);
    let n = 4000;
    let mut weighted_sup: f64 = 0.0;
    let mut rho_at_sup = 0.0;
    for j in 0..=n {
        // nodes cluster toward ρ = T
        let rho = t * (std::f64::consts::FRAC_PI_2 * j as f64 / n as f64).sin();
        let b = coeffs.b.eval(rho);
        if !(b > 0.0) {
            return Err(hypothesis(format!("b = {b} is not positive at r = {rho} inside B_T")));
        }
        if j == n {
            break;
        }
        let d = t * t - rho * rho;
        let x = 8.0 * (sigma + 1.0) / (sigma - 1.0).powi(2) * rho * rho / (d * d)
            + 4.0 / (sigma - 1.0) * (m + (m - 1.0) * a_const * rho) / d
            + coeffs.a.eval(rho).max(0.0);
        let beta = if yamabe { 0.0 } else { coeffs.c.eval(rho).max(0.0) / b };
        let v = d.powf(p) * lemmunu_bound(x / b, beta, sigma - 1.0, 1.0 - tau);
        if v > weighted_sup {
            weighted_sup = v;
            rho_at_sup = rho;
        }
    }
    Ok(InteriorBound {
        t,
        t_tilde,
        omega,
        a_const,
        weighted_sup,
        rho_at_sup,
        c_omega: weighted_sup / (t * t - omega * omega).powf(p),
        c_t_tilde: weighted_sup / (t * t - t_tilde * t_tilde).powf(p),
        yamabe,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaSets {
    pub gamma: f64,
    pub gamma_star: f64,
    /// Ω_γ* = {u > γ*} as closed r-intervals of grid nodes.
    pub superlevel: Vec<(f64, f64)>,
    pub node_count: usize,
    /// sup over Ω_γ* of (a₊ + c₊)/b; zero when Ω_γ* is empty.
    pub h_gamma_star: f64,
}

/// Nodes where `u > level`, grouped into runs.
fn superlevel_runs(u: &RadialFunction, level: f64) -> (Vec<usize>, Vec<(f64, f64)>) {
    let g = u.grid();
    let nodes: Vec<usize> = (0..u.values().len()).filter(|&i| u.value(i) > level).collect();
    let mut runs: Vec<(f64, f64)> = Vec::new();
    let mut prev: Option<usize> = None;
    for &i in &nodes {
        match (prev, runs.last_mut()) {
            (Some(p), Some(last)) if p + 1 == i => last.1 = g.r(i),
            _ => runs.push((g.r(i), g.r(i))),
        }
        prev = Some(i);
    }
    (nodes, runs)
}

/// (brmu) on the window [R/4, R]: fitted decay exponent μ̂ of b and inf b r^μ̂.
pub fn brmu_check(name: &str, values: &[f64], grid: &RadialGrid) -> Check {
    let r_fit = grid.r_max() / 4.0;
    let pts: Vec<(f64, f64)> = (0..values.len())
        .filter(|&i| grid.r(i) >= r_fit && grid.r(i) > 0.0)
        .map(|i| (grid.r(i), values[i]))
        .collect();
    if pts.iter().any(|p| !(p.1 > 0.0)) {
        return Check::new(format!("brmu[{name}]"), false, f64::NAN, format!("{name} vanishes on [R/4, R]"));
    }
    let n = pts.len() as f64;
    let lx: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let mu = (-slope).max(0.0);
    let inf = pts.iter().map(|p| p.1 * p.0.powf(mu)).fold(f64::INFINITY, f64::min);
    Check::new(
        format!("brmu[{name}]"),
        mu < 2.0 && inf > 0.0,
        mu,
        format!("fitted μ = {mu:.4} on [{r_fit}, {}], inf {name}·r^μ = {inf:.4e}", grid.r_max()),
    )
}

fn bvol_check(model: &ModelManifold, mu: f64) -> Result<Check> {
    let mu = if mu.is_finite() { mu.clamp(0.0, 1.999) } else { 0.0 };
    let v = model.volume_growth_check(mu)?;
    Ok(Check::new(
        "Bvol",
        v.finite,
        v.liminf_estimate,
        format!("liminf log vol(B_r)/r^(2-μ) with μ = {mu:.4}, {:?}", v.growth_class),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct UstarReport {
    pub bound: f64,
    pub gamma_sets: GammaSets,
    pub hypotheses: Vec<Check>,
    pub u_max: f64,
    /// Largest value on the Dirichlet nodes of the grid. A maximum there is not an
    /// interior maximum, so the estimate on a truncated domain is max(bound, boundary_max).
    pub boundary_max: f64,
    pub margin: f64,
    pub holds: bool,
    /// All coefficients are constants, so grid sups are sups over M.
    pub tail_exact: bool,
}

fn require(checks: &[Check]) -> Result<()> {
    let failed: Vec<String> = checks.iter().filter(|c| !c.holds).map(|c| format!("{} ({})", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(hypothesis(format!("failed predicates: {}", failed.join("; "))))
    }
}

impl UstarReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    pub fn require_hypotheses(&self) -> Result<()> {
        require(&self.hypotheses)
    }
}

/// u* ≤ max{γ*, H_γ*^{1/(σ−1)}} with γ* = max{1, γ}, checked against `u`.
pub fn upper_bound_ustar(model: &ModelManifold, coeffs: &CoefficientSet, u: &RadialFunction, gamma: f64) -> Result<UstarReport> {
    let grid = u.grid();
    let s = coeffs.sample(grid)?;
    let mut hypotheses = Vec::new();
    let bmin = s.b.iter().cloned().fold(f64::INFINITY, f64::min);
    hypotheses.push(Check::new("b>0", bmin > 0.0, bmin, "min b on the grid"));
    let brmu = brmu_check("b", &s.b, grid);
    let mu = brmu.value;
    hypotheses.push(brmu);
    hypotheses.push(bvol_check(model, mu)?);
    let ratio = |i: usize| (s.a[i].max(0.0) + s.c[i].max(0.0)) / s.b[i];
    let acb = (0..s.b.len()).map(ratio).fold(0.0, f64::max);
    hypotheses.push(Check::new("acbapr", acb.is_finite(), acb, "sup (a₊ + c₊)/b"));

    let gamma_star = gamma.max(1.0);
    let (nodes, superlevel) = superlevel_runs(u, gamma_star);
    let h = nodes.iter().map(|&i| ratio(i)).fold(0.0, f64::max);
    let bound = gamma_star.max(h.powf(1.0 / (coeffs.sigma - 1.0)));
    let u_max = u.max();
    let v = u.values();
    let boundary_max = if grid.r_min() > 0.0 { v[0].max(v[v.len() - 1]) } else { v[v.len() - 1] };
    let margin = u_max - bound.max(boundary_max);
    let tail_exact = [&coeffs.a, &coeffs.b, &coeffs.c].iter().all(|f| f.as_constant().is_some());
    Ok(UstarReport {
        bound,
        gamma_sets: GammaSets { gamma, gamma_star, node_count: nodes.len(), superlevel, h_gamma_star: h },
        hypotheses,
        u_max,
        boundary_max,
        margin,
        holds: margin <= BOUND_TOL * bound.max(boundary_max).max(1.0),
        tail_exact,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BilateralReport {
    pub h: f64,
    pub k: f64,
    pub h_script: f64,
    pub k_script: f64,
    /// The superlevel bound at level 1 for u.
    pub upper: UstarReport,
    /// The same bound for v = 1/u under the inverted coefficients.
    pub inverted: UstarReport,
    /// 1 / inverted.bound.
    pub lower_bound: f64,
    /// max_i (u_i − ℋ)
    pub upper_margin: f64,
    /// max_i (𝒦 − u_i)
    pub lower_margin: f64,
    pub worst_node_upper: usize,
    pub worst_node_lower: usize,
    pub hypotheses: Vec<Check>,
    pub holds: bool,
    pub tail_exact: bool,
}

impl BilateralReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    pub fn require_hypotheses(&self) -> Result<()> {
        require(&self.hypotheses)
    }
}

fn argmax(v: impl Iterator<Item = f64>) -> (usize, f64) {
    v.enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, x)| if x > acc.1 { (i, x) } else { acc })
}

/// 𝒦 ≤ u ≤ ℋ with per-node margins.
pub fn bilateral_bound_check(model: &ModelManifold, coeffs: &CoefficientSet, u: &RadialFunction) -> Result<BilateralReport> {
    let grid = u.grid();
    if u.values().iter().any(|&x| !(x > 0.0)) {
        return Err(invalid("bilateral bound needs a positive function"));
    }
    let s = coeffs.sample(grid)?;
    let rb = ratio_bounds(coeffs, grid)?;
    let mut hypotheses = Vec::new();
    let bmin = s.b.iter().cloned().fold(f64::INFINITY, f64::min);
    let cmin = s.c.iter().cloned().fold(f64::INFINITY, f64::min);
    hypotheses.push(Check::new("b>0", bmin > 0.0, bmin, "min b on the grid"));
    hypotheses.push(Check::new("c>0", cmin > 0.0, cmin, "min c on the grid"));
    let brmu_b = brmu_check("b", &s.b, grid);
    let brmu_c = brmu_check("c", &s.c, grid);
    let mu = brmu_b.value.max(brmu_c.value);
    hypotheses.push(brmu_b);
    hypotheses.push(brmu_c);
    hypotheses.push(bvol_check(model, mu)?);
    hypotheses.push(Check::new("acb", rb.h.is_finite(), rb.h, "H = sup (a₊ + c)/b"));
    hypotheses.push(Check::new("abc", rb.k.is_finite(), rb.k, "K = sup (a₋ + b)/c"));
    let sup_ac = (0..s.a.len()).map(|i| (s.a[i].max(0.0) + s.c[i]).abs()).fold(0.0, f64::max);
    let sup_ab = (0..s.a.len()).map(|i| ((-s.a[i]).max(0.0) + s.b[i]).abs()).fold(0.0, f64::max);
    hypotheses.push(Check::new("a₊+c bounded", sup_ac.is_finite(), sup_ac, "‖a₊ + c‖ on the grid"));
    hypotheses.push(Check::new("a₋+b bounded", sup_ab.is_finite(), sup_ab, "‖a₋ + b‖ on the grid"));

    let upper = upper_bound_ustar(model, coeffs, u, 1.0)?;
    let v = u.map(|x| 1.0 / x);
    let inverted = upper_bound_ustar(model, &coeffs.inverted(), &v, 1.0)?;
    let lower_bound = 1.0 / inverted.bound;
    let (worst_node_upper, upper_margin) = argmax(u.values().iter().map(|&x| x - rb.h_script));
    let (worst_node_lower, lower_margin) = argmax(u.values().iter().map(|&x| rb.k_script - x));
    let tol = BOUND_TOL * rb.h_script.max(1.0);
    let holds = upper_margin <= tol && lower_margin <= tol && upper.holds && inverted.holds;
    Ok(BilateralReport {
        h: rb.h,
        k: rb.k,
        h_script: rb.h_script,
        k_script: rb.k_script,
        upper,
        inverted,
        lower_bound,
        upper_margin,
        lower_margin,
        worst_node_upper,
        worst_node_lower,
        hypotheses,
        holds,
        tail_exact: rb.tail_exact,
    })
}

/// The unique positive root of p(t) = α + βt^{σ−1} − γ t^{τ−1}.
pub fn constant_solution_root(alpha: f64, beta: f64, gamma_c: f64, sigma: f64, tau: f64) -> Result<f64> {
    if !(beta > 0.0 && gamma_c > 0.0 && sigma > 1.0 && tau < 1.0 && alpha.is_finite()) {
        return Err(invalid(format!(
            "need β, γ > 0, σ > 1, τ < 1; got β = {beta}, γ = {gamma_c}, σ = {sigma}, τ = {tau}"
        )));
    }
    let p = |t: f64| alpha + beta * t.powf(sigma - 1.0) - gamma_c * t.powf(tau - 1.0);
    let dp = |t: f64| (sigma - 1.0) * beta * t.powf(sigma - 2.0) + (1.0 - tau) * gamma_c * t.powf(tau - 2.0);
    increasing_root(p, dp, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RadialField;
    use crate::solver::{solve_dirichlet, DirichletProblem, SolveOptions};

    #[test]
    fn lemmunu_cases() {
        assert!((lemmunu_bound(0.0, 8.0, 1.0, 1.0) - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(lemmunu_bound(5.0, 0.0, 2.0, 3.0), 5f64.sqrt());
        // t = √8 attains t = 8/t
        let t = 8f64.sqrt();
        assert!((t - 8.0 / t).abs() < 1e-14);
    }

    #[test]
    fn constant_roots() {
        assert!((constant_solution_root(0.0, 1.0, 1.0, 3.0, -1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((constant_solution_root(1.0, 1.0, 2.0, 2.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let l = constant_solution_root(-3.0, 0.5, 0.1, 2.5, -0.5).unwrap();
        let p = -3.0 + 0.5 * l.powf(1.5) - 0.1 * l.powf(-1.5);
        assert!(p.abs() < 1e-10);
        assert!(constant_solution_root(0.0, 0.0, 1.0, 3.0, -1.0).is_err());
    }

    #[test]
    fn ustar_arithmetic() {
        let model = ModelManifold::euclidean(3, 4.0).unwrap();
        let grid = RadialGrid::ball(4.0, 200).unwrap();
        let pinched = CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap();
        let one = RadialFunction::constant(&grid, 1.0);
        let rep = upper_bound_ustar(&model, &pinched, &one, 0.5).unwrap();
        assert_eq!(rep.gamma_sets.gamma_star, 1.0);
        assert_eq!(rep.bound, 1.0);
        assert!(rep.holds && rep.hypotheses_hold());

        let c = CoefficientSet::constant(3.0, 1.0, 0.0, 3.0, 0.0).unwrap();
        let u = RadialFunction::from_fn(&grid, |r| 2.5 - 0.1 * r);
        let rep = upper_bound_ustar(&model, &c, &u, 2.0).unwrap();
        assert_eq!(rep.bound, 2.0);
        assert!(!rep.holds);
    }

    #[test]
    fn bilateral_examples() {
        let model = ModelManifold::euclidean(3, 4.0).unwrap();
        let grid = RadialGrid::ball(4.0, 200).unwrap();
        let pinched = CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap();
        let rep = bilateral_bound_check(&model, &pinched, &RadialFunction::constant(&grid, 1.0)).unwrap();
        assert_eq!((rep.h_script, rep.k_script), (1.0, 1.0));
        assert_eq!((rep.upper_margin, rep.lower_margin), (0.0, 0.0));
        assert!(rep.holds && rep.hypotheses_hold());

        let c = CoefficientSet::constant(0.0, 1.0, 4.0, 3.0, -1.0).unwrap();
        let inv = c.inverted();
        assert_eq!((inv.sigma, inv.tau), (3.0, -1.0));
        let sub = RadialFunction::constant(&grid, 1.0);
        let sup = RadialFunction::constant(&grid, 2.0);
        let p = DirichletProblem { model: &model, coeffs: &c, boundary: 1.0, sub: sub.clone(), sup };
        let sol = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
        let rep = bilateral_bound_check(&model, &c, &sol.solution).unwrap();
        assert_eq!(rep.h_script, 2.0);
        assert_eq!(rep.k_script, 1.0);
        assert!(rep.holds);
        assert!((sol.solution.value(0) - 2f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn brmu_fit() {
        let grid = RadialGrid::ball(8.0, 400).unwrap();
        let slow: Vec<f64> = grid.nodes().iter().map(|r| 1.0 / (1.0 + r)).collect();
        let fast: Vec<f64> = grid.nodes().iter().map(|r| (1.0 + r).powi(-3)).collect();
        assert!(brmu_check("b", &slow, &grid).holds);
        assert!(!brmu_check("b", &fast, &grid).holds);
    }

    #[test]
    fn interior_bound_yamabe() {
        let model = ModelManifold::euclidean(3, 2.0).unwrap();
        let c = CoefficientSet::constant(0.0, 1.0, 0.0, 3.0, 0.0).unwrap();
        let ib = interior_sup_bound(&model, &c, 2.0, 1.0, 0.9).unwrap();
        assert!(ib.yamabe && ib.c_omega.is_finite() && ib.c_omega > 0.0);
        assert!(ib.c_omega <= ib.c_t_tilde);
        // c ≡ 0 path: at ρ = 0 the weight is T^{2p}·(2m/(T²(σ−1)))^{1/(σ−1)}
        let at0 = 4.0 * (4.0 * 3.0 / 2.0 / 4.0f64).sqrt();
        assert!(ib.weighted_sup >= at0 - 1e-12);
        let grid = RadialGrid::ball(2.0, 400).unwrap();
        let sub = RadialFunction::constant(&grid, 0.0);
        for boundary in [1.0, 10.0, 1e3] {
            let sup = RadialFunction::constant(&grid, boundary);
            let p = DirichletProblem { model: &model, coeffs: &c, boundary, sub: sub.clone(), sup };
            let sol = solve_dirichlet(&p, &SolveOptions::default()).unwrap();
            assert!(ib.check(&sol.solution).holds, "boundary {boundary}");
        }
        let bad = CoefficientSet::new(RadialField::constant(0.0), RadialField::parse("max(r - 0.5, 0)").unwrap(), RadialField::constant(0.0), 3.0, 0.0).unwrap();
        assert!(interior_sup_bound(&model, &bad, 2.0, 1.0, 0.5).unwrap_err().is_hypothesis());
    }
}
