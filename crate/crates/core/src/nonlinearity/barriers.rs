//! Non-constant barriers: the cut-off supersolution on a ball containing B₀, witnesses
//! of property (Σ), and the global subsolutions behind Theorems A and B.

use serde::Serialize;

use super::{nan_max, nan_min, relative_residual, CoefficientSet, Sampled, BARRIER_TOL};
use crate::error::{domain, hypothesis, numerical, Result};
use crate::field::RadialField;
use crate::grid::{RadialFunction, RadialGrid};
use crate::model::ModelManifold;
use crate::operator::RadialOperator;
use crate::roots::smallest_satisfying;
use crate::solver::{solve_sampled, SolveOptions};
use crate::spectral::{eigen_with_operator, lambda1_bounded_set, zero_set, RadialSet};

const INFLATE: f64 = 1.05;
const BISECTIONS: usize = 60;

/// Quintic step: 1 on (−∞, 0], 0 on [1, ∞), C² in between.
pub fn quintic_cutoff(x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x >= 1.0 {
        0.0
    } else {
        1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    pub v: RadialFunction,
    /// Radii of D′ ⊂ D (snapped to nodes); `None` when B₀ is empty.
    pub nested: Option<(f64, f64)>,
    pub lambda_d: Option<f64>,
    /// Smallest U with α − βU^{σ−1} + δU^{τ−1} ≤ 0, before inflation.
    pub lambda0_root: f64,
    pub lambda0: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    pub gamma: f64,
    pub residual_max: f64,
}

fn smallest_admissible(alpha: f64, beta: f64, delta: f64, sigma: f64, tau: f64) -> Result<f64> {
    if delta == 0.0 && alpha <= 0.0 {
        return Ok(1.0);
    }
    smallest_satisfying(|u| alpha - beta * u.powf(sigma - 1.0) + delta * u.powf(tau - 1.0) <= 0.0, 1.0, BISECTIONS)
}

fn with_abar(s: &Sampled, abar: Vec<f64>) -> Sampled {
    Sampled { a: abar, ..s.clone() }
}

/// Supersolution v₊ of Δv + āv − bv^σ + cv^τ ≤ 0 on the ball `grid`, built as
/// γ(ψu₁ + (1 − ψ)Λ₀) with u₁ the first eigenfunction of Δ + ā on D and ψ a quintic
/// cut-off from D′ to D. `nested = None` is the B₀ = ∅ case (v₊ ≡ Λ₀).
pub fn lemma1_supersolution(
    model: &ModelManifold,
    coeffs: &CoefficientSet,
    a_bar: &RadialField,
    grid: &RadialGrid,
    nested: Option<(f64, f64)>,
) -> Result<Lemma1Report> {
    if grid.r_min() != 0.0 {
        return Err(domain("the supersolution is built on a ball"));
    }
    let n = grid.n();
    let s = with_abar(&coeffs.sample(grid)?, a_bar.sample_finite(grid, "ā")?);
    let op = RadialOperator::new(model, grid);
    let (sigma, tau) = (coeffs.sigma, coeffs.tau);
    let k_outer = match nested {
        None => 0,
        Some((rp, rd)) => {
            let (kp, kd) = (grid.nearest_index(rp), grid.nearest_index(rd));
            if kp < 1 || kd < kp + 4 || kd >= n {
                return Err(domain(format!("need 0 < r′ < r_D < R with room on the grid, got ({rp}, {rd})")));
            }
            kp
        }
    };
    let outer = k_outer..=n;
    let beta = outer.clone().map(|i| s.b[i]).fold(f64::INFINITY, f64::min);
    if !(beta > 0.0) {
        return Err(hypothesis("b vanishes outside D′ (β = 0)"));
    }
    let alpha = outer.clone().map(|i| s.a[i]).fold(f64::NEG_INFINITY, f64::max);
    let delta = outer.map(|i| s.c[i]).fold(0.0, f64::max);
    let lambda0_root = smallest_admissible(alpha, beta, delta, sigma, tau)?;
    let lambda0 = INFLATE * lambda0_root;

    let Some((rp, rd)) = nested else {
        let v = RadialFunction::constant(grid, lambda0);
        let residual_max = nan_max(&relative_residual(&op, &s, v.values()));
        return finish(Lemma1Report {
            v,
            nested: None,
            lambda_d: None,
            lambda0_root,
            lambda0,
            gamma0: 0.0,
            gamma1: 0.0,
            gamma: 1.0,
            residual_max,
        });
    };
    let (kp, kd) = (grid.nearest_index(rp), grid.nearest_index(rd));
    let (rp, rd) = (grid.r(kp), grid.r(kd));
    let d_grid = grid.prefix(kd)?;
    let eig = eigen_with_operator(&RadialOperator::new(model, &d_grid), &s.a[..=kd])?;
    let lambda_d = eig.lambda1;
    if !(lambda_d > 0.0) {
        return Err(hypothesis(format!("λ₁(D) = {lambda_d:.6e} ≤ 0 for D = B_{rd}")));
    }
    let u1 = eig.eigenfunction.values();
    let ramp_end = rp + 0.75 * (rd - rp);
    let psi: Vec<f64> = (0..=n).map(|i| quintic_cutoff((grid.r(i) - rp) / (ramp_end - rp))).collect();
    let w: Vec<f64> = (0..=n)
        .map(|i| if i <= kd { psi[i] * u1[i] + (1.0 - psi[i]) * lambda0 } else { lambda0 })
        .collect();

    let mut gamma0: f64 = 0.0;
    let mut c0: f64 = 0.0;
    let mut eps = f64::INFINITY;
    let mut big_e: f64 = 0.0;
    for i in op.interior() {
        let lo = i.saturating_sub(1);
        let st = &psi[lo..=i + 1];
        if st.iter().all(|&p| p == 1.0) {
            if s.c[i] > 0.0 {
                gamma0 = gamma0.max((s.c[i] / lambda_d).powf(1.0 / (1.0 - tau)) / u1[i]);
            }
        } else if st.iter().any(|&p| p > 0.0) {
            c0 = c0.max(op.laplacian_at(&w, i) + s.a[i] * w[i]);
            eps = eps.min(s.b[i] * w[i].powf(sigma));
            big_e = big_e.max(s.c[i] * w[i].powf(tau));
        }
    }
    if !(eps > 0.0) {
        return Err(hypothesis("b vanishes on the cut-off region"));
    }
    let gamma1 = if c0 == 0.0 && big_e == 0.0 {
        0.0
    } else {
        INFLATE
            * smallest_satisfying(
                |g| c0 - eps * g.powf(sigma - 1.0) + big_e * g.powf(tau - 1.0) <= 0.0,
                1.0,
                BISECTIONS,
            )?
    };
    let gamma0 = INFLATE * gamma0;
    let gamma = 1f64.max(gamma0).max(gamma1);
    let v = RadialFunction::new(grid.clone(), w.iter().map(|x| gamma * x).collect())?;
    let residual_max = nan_max(&relative_residual(&op, &s, v.values()));
    finish(Lemma1Report {
        v,
        nested: Some((rp, rd)),
        lambda_d: Some(lambda_d),
        lambda0_root,
        lambda0,
        gamma0,
        gamma1,
        gamma,
        residual_max,
    })
}

fn finish(rep: Lemma1Report) -> Result<Lemma1Report> {
    if rep.residual_max > BARRIER_TOL {
        return Err(numerical(format!(
            "supersolution certificate failed: max relative residual {:.3e}",
            rep.residual_max
        )));
    }
    Ok(rep)
}

/// Same construction with D′ = B_{ρ₀+δ}, D = B_{ρ₀+2δ} around B₀ ⊂ B_{ρ₀}, halving δ from
/// (R − ρ₀)/4 until λ₁^{Δ+ā}(D) > 0.
pub fn lemma1_auto(model: &ModelManifold, coeffs: &CoefficientSet, a_bar: &RadialField, grid: &RadialGrid) -> Result<Lemma1Report> {
    let b = coeffs.b.sample_finite(grid, "b")?;
    let set = zero_set(&b, grid);
    if set.is_empty() {
        return lemma1_supersolution(model, coeffs, a_bar, grid, None);
    }
    let rho0 = set.outer_radius();
    let r = grid.r_max();
    let h = grid.h();
    if rho0 > r - 10.0 * h {
        return Err(hypothesis(format!("b is not positive outside a compact subset of B_{r} (B₀ reaches r = {rho0})")));
    }
    let abar = a_bar.sample_finite(grid, "ā")?;
    let mut delta = (r - rho0) / 4.0;
    while delta >= 2.0 * h {
        let kd = grid.nearest_index(rho0 + 2.0 * delta);
        let d_grid = grid.prefix(kd)?;
        let lam = eigen_with_operator(&RadialOperator::new(model, &d_grid), &abar[..=kd])?.lambda1;
        if lam > 0.0 {
            return lemma1_supersolution(model, coeffs, a_bar, grid, Some((rho0 + delta, rho0 + 2.0 * delta)));
        }
        delta /= 2.0;
    }
    Err(hypothesis(format!("λ₁(D) ≤ 0 for every resolved ball D ⊃ B₀ = B_{rho0}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaRoute {
    Eigenfunction,
    Inversion,
    UserSupplied,
}

#[derive(Debug, Clone, Serialize)]
pub struct RouteDiagnostic {
    pub route: SigmaRoute,
    pub success: bool,
    pub residual_min: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaReport {
    pub holds: bool,
    pub route: Option<SigmaRoute>,
    pub witness: Option<RadialFunction>,
    pub diagnostics: Vec<RouteDiagnostic>,
}

/// Nonnegative φ with Δφ + aφ − bφ^σ + cφ^τ ≥ −tol on the ball `grid`, checked with
/// supp c ⊆ supp φ when τ < 0.
fn sigma_certificate(op: &RadialOperator, s: &Sampled, phi: &[f64]) -> std::result::Result<f64, String> {
    if phi.iter().any(|&x| !(x >= 0.0)) {
        return Err("witness is not nonnegative".into());
    }
    if s.tau < 0.0 && op.interior().any(|i| s.c[i] > 0.0 && phi[i] == 0.0) {
        return Err("supp c is not contained in supp φ".into());
    }
    let res = nan_min(&relative_residual(op, s, phi));
    if res >= -BARRIER_TOL {
        Ok(res)
    } else {
        Err(format!("residual {res:.3e} below −{BARRIER_TOL:e}"))
    }
}

/// Λ values probed by the eigenfunction route.
pub fn sigma_lambda_grid() -> Vec<f64> {
    (0..=24).map(|k| 10f64.powf(-3.0 + 0.25 * k as f64)).collect()
}

fn route_eigenfunction(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid, s: &Sampled, op: &RadialOperator) -> (Option<RadialFunction>, RouteDiagnostic) {
    let n = grid.n();
    let r = grid.r_max();
    let ext = (1.05 * r).min(model.r_max());
    let k_ext = (((ext / grid.h()) + 1e-9).floor() as usize).max(n);
    let diag = |ok: bool, res: f64, d: String| RouteDiagnostic { route: SigmaRoute::Eigenfunction, success: ok, residual_min: res, detail: d };
    let Ok(big) = RadialGrid::new(0.0, k_ext as f64 * grid.h(), k_ext) else {
        return (None, diag(false, f64::NAN, "could not extend the grid".into()));
    };
    let (Ok(a), Ok(b), Ok(c)) = (coeffs.a.sample_finite(&big, "a"), coeffs.b.sample_finite(&big, "b"), coeffs.c.sample_finite(&big, "c")) else {
        return (None, diag(false, f64::NAN, "coefficients not finite on the extended ball".into()));
    };
    let big_op = RadialOperator::new(model, &big);
    let mut best = f64::INFINITY;
    for lam_c in sigma_lambda_grid() {
        let pot: Vec<f64> = (0..=k_ext).map(|i| a[i] - b[i] + lam_c * c[i]).collect();
        let Ok(eig) = eigen_with_operator(&big_op, &pot) else { continue };
        best = best.min(eig.lambda1);
        if eig.lambda1 >= 0.0 {
            continue;
        }
        let psi = &eig.eigenfunction.values()[..=n];
        let sup = psi.iter().cloned().fold(0.0, f64::max);
        let mu = lam_c.powf(1.0 / (s.tau - 1.0)).min(1.0) / sup;
        let phi: Vec<f64> = psi.iter().map(|x| mu * x).collect();
        if let Ok(res) = sigma_certificate(op, s, &phi) {
            let w = RadialFunction::new(grid.clone(), phi).ok();
            return (w, diag(true, res, format!("Λ = {lam_c:.4e}, λ₁ = {:.6e}, μ = {mu:.4e}", eig.lambda1)));
        }
    }
    (None, diag(false, f64::NAN, format!("λ₁^{{Δ+a−b+Λc}} ≥ 0 on the Λ grid (smallest {best:.6e})")))
}

/// φ = 1/ψ with ψ the supersolution of the inverted equation (−a, c, b, 2−τ, 2−σ).
pub fn inversion_subsolution(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid) -> Result<RadialFunction> {
    let inv = coeffs.inverted();
    let rep = lemma1_auto(model, &inv, &inv.a, grid)?;
    Ok(rep.v.map(|x| 1.0 / x))
}

fn route_inversion(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid, s: &Sampled, op: &RadialOperator) -> (Option<RadialFunction>, RouteDiagnostic) {
    let diag = |ok: bool, res: f64, d: String| RouteDiagnostic { route: SigmaRoute::Inversion, success: ok, residual_min: res, detail: d };
    let set = zero_set(&s.c, grid);
    let detail = match set {
        RadialSet::Empty => "C₀ = ∅".to_string(),
        other => format!("C₀ ⊂ B_{}", other.outer_radius()),
    };
    match inversion_subsolution(model, coeffs, grid) {
        Err(e) => (None, diag(false, f64::NAN, format!("{detail}: {e}"))),
        Ok(phi) => match sigma_certificate(op, s, phi.values()) {
            Ok(res) => (Some(phi), diag(true, res, detail)),
            Err(e) => (None, diag(false, f64::NAN, format!("{detail}: {e}"))),
        },
    }
}

/// Property (Σ) on the ball `grid`: eigenfunction route, inversion route, then the
/// user-supplied witness; every route is evaluated and reported.
pub fn sigma_property(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid, user: Option<&RadialFunction>) -> Result<SigmaReport> {
    if grid.r_min() != 0.0 || grid.r_max() > model.r_max() * (1.0 + 1e-12) {
        return Err(domain("property (Σ) is checked on a ball inside the model"));
    }
    let s = coeffs.sample(grid)?;
    let op = RadialOperator::new(model, grid);
    let mut candidates = vec![route_eigenfunction(model, coeffs, grid, &s, &op), route_inversion(model, coeffs, grid, &s, &op)];
    match user {
        Some(f) if f.grid() == grid => {
            let d = match sigma_certificate(&op, &s, f.values()) {
                Ok(res) => RouteDiagnostic { route: SigmaRoute::UserSupplied, success: true, residual_min: res, detail: "user witness".into() },
                Err(e) => RouteDiagnostic { route: SigmaRoute::UserSupplied, success: false, residual_min: f64::NAN, detail: e },
            };
            candidates.push((d.success.then(|| f.clone()), d));
        }
        Some(_) => candidates.push((
            None,
            RouteDiagnostic { route: SigmaRoute::UserSupplied, success: false, residual_min: f64::NAN, detail: "witness lives on another grid".into() },
        )),
        None => candidates.push((
            None,
            RouteDiagnostic { route: SigmaRoute::UserSupplied, success: false, residual_min: f64::NAN, detail: "no witness supplied".into() },
        )),
    }
    let mut witness = None;
    let mut route = None;
    let mut diagnostics = Vec::new();
    for (w, d) in candidates {
        if witness.is_none() && d.success {
            witness = w;
            route = Some(d.route);
        }
        diagnostics.push(d);
    }
    Ok(SigmaReport { holds: witness.is_some(), route, witness, diagnostics })
}

#[derive(Debug, Clone, Serialize)]
pub struct PastedSubsolution {
    pub u_minus: RadialFunction,
    /// Interior subsolution on Ω₂ = B_{r₂}.
    pub u1: RadialFunction,
    pub r1: f64,
    pub r2: f64,
    pub mu: f64,
    pub nu: f64,
    pub mu_star: f64,
    /// Dirichlet value of u₁ on ∂Ω₂.
    pub boundary_value: f64,
    pub lambda_b0: f64,
    pub lambda_omega2: f64,
    /// Minimum relative residual away from the pasting interface.
    pub residual_min: f64,
    /// Minimum relative residual at all interior nodes, interface included.
    pub residual_min_all: f64,
    pub interface_nodes: Vec<f64>,
    /// Right slope ≥ left slope at every interface node.
    pub kink_ok: bool,
    pub certified: bool,
}

/// Theorem B's global subsolution on the ball `grid`: u₁ on Ω₁ = B_{r₁}, max{u₁, μ*} on
/// Ω₂ ∖ Ω₁, μ* outside Ω₂ = B_{r₂}.
pub fn theorem_b_subsolution(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid, r1: f64, r2: f64) -> Result<PastedSubsolution> {
    let (k1, k2) = (grid.nearest_index(r1), grid.nearest_index(r2));
    if !(r1 > 0.0 && r2 > r1) || k1 < 1 || k2 < k1 + 2 || k2 + 2 > grid.n() {
        return Err(domain(format!("need Ω₁ ⊂⊂ Ω₂ ⊂⊂ B_R, got r₁ = {r1}, r₂ = {r2}")));
    }
    let r1 = grid.r(k1);
    let s = coeffs.sample(grid)?;
    let c0 = zero_set(&s.c, grid);
    if !c0.is_empty() && c0.outer_radius() >= r1 {
        return Err(hypothesis(format!("C₀ ⊂ B_{} is not inside Ω₁ = B_{r1}", c0.outer_radius())));
    }
    let mut mu: f64 = 0.0;
    for i in k1 + 1..=grid.n() {
        if !(s.c[i] > 0.0) {
            return Err(hypothesis(format!("c vanishes at r = {} outside Ω₁", grid.r(i))));
        }
        mu = mu.max(((-s.a[i]).max(0.0) + s.b[i]) / s.c[i]);
    }
    let b0 = zero_set(&s.b, grid);
    let n_eig = 400;
    let lambda_b0 = lambda1_bounded_set(model, &coeffs.a, b0, n_eig)?;
    if !(lambda_b0 > 0.0) {
        return Err(hypothesis(format!("λ₁^{{Δ+a}}(B₀) = {lambda_b0:.6e} ≤ 0")));
    }
    let g2 = grid.prefix(k2)?;
    let op2 = RadialOperator::new(model, &g2);
    let neg_a: Vec<f64> = s.a[..=k2].iter().map(|x| -x).collect();
    let lambda_omega2 = eigen_with_operator(&op2, &neg_a)?.lambda1;
    if !(lambda_omega2 > 0.0) {
        return Err(hypothesis(format!("λ₁^{{Δ−a}}(Ω₂) = {lambda_omega2:.6e} ≤ 0")));
    }

    let phi = inversion_subsolution(model, coeffs, &g2)?;
    let sup = lemma1_auto(model, coeffs, &coeffs.a, &g2)?.v;
    let s2 = s.prefix(k2);
    let mu_term = if mu > 0.0 { mu.powf(1.0 / (coeffs.tau - 1.0)) } else { f64::INFINITY };
    let cap = 1f64.min(mu_term);
    let mut boundary = 0.5 * cap;
    for _ in 0..40 {
        let kappa = (boundary / phi.value(k2)).min(1.0);
        let sub: Vec<f64> = phi.values().iter().map(|x| kappa * x).collect();
        let mut zeta = (boundary / sup.value(k2)).max(1.0);
        for (a, b) in sub.iter().zip(sup.values()) {
            zeta = zeta.max(a / b);
        }
        let sup_z: Vec<f64> = sup.values().iter().map(|x| zeta * x).collect();
        let rep = solve_sampled(&op2, &s2, boundary, &sub, &sup_z, &SolveOptions::default())?;
        let u1 = rep.solution;
        let nu = u1.value(k1);
        let mu_star = cap.min(0.5 * nu);
        if boundary < mu_star {
            return paste(model, grid, &s, u1, k1, k2, mu, nu, mu_star, boundary, lambda_b0, lambda_omega2);
        }
        boundary = 0.5 * mu_star;
    }
    Err(numerical("could not push the boundary value of u₁ below μ*"))
}

#[allow(clippy::too_many_arguments)]
fn paste(
    model: &ModelManifold,
    grid: &RadialGrid,
    s: &Sampled,
    u1: RadialFunction,
    k1: usize,
    k2: usize,
    mu: f64,
    nu: f64,
    mu_star: f64,
    boundary_value: f64,
    lambda_b0: f64,
    lambda_omega2: f64,
) -> Result<PastedSubsolution> {
    let n = grid.n();
    let vals: Vec<f64> = (0..=n)
        .map(|i| {
            if i <= k1 {
                u1.value(i)
            } else if i < k2 {
                u1.value(i).max(mu_star)
            } else {
                mu_star
            }
        })
        .collect();
    // branch: true where u₁ is the active piece
    let branch: Vec<bool> = (0..=n).map(|i| i <= k2 && u1.value(i.min(k2)) >= mu_star).collect();
    let op = RadialOperator::new(model, grid);
    let res = relative_residual(&op, s, &vals);
    let mut interface = Vec::new();
    let mut away = Vec::new();
    let mut kink_ok = true;
    let h = grid.h();
    for i in op.interior() {
        let lo = i.saturating_sub(1);
        if branch[lo..=i + 1].iter().all(|&b| b == branch[i]) {
            away.push(res[i]);
        } else {
            interface.push(grid.r(i));
            let left = if i == 0 { 0.0 } else { (vals[i] - vals[i - 1]) / h };
            let right = (vals[i + 1] - vals[i]) / h;
            if right < left - BARRIER_TOL * (1.0 + left.abs()) {
                kink_ok = false;
            }
        }
    }
    let residual_min = nan_min(&away);
    let residual_min_all = nan_min(&res);
    let certified = residual_min >= -BARRIER_TOL && kink_ok && vals.iter().all(|&v| v > 0.0);
    Ok(PastedSubsolution {
        u_minus: RadialFunction::new(grid.clone(), vals)?,
        r1: grid.r(k1),
        r2: grid.r(k2),
        u1,
        mu,
        nu,
        mu_star,
        boundary_value,
        lambda_b0,
        lambda_omega2,
        residual_min,
        residual_min_all,
        interface_nodes: interface,
        kink_ok,
        certified,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct YamabeSubsolution {
    pub u_minus: RadialFunction,
    /// Radius of the ball whose eigenvalue certifies λ₁^L < 0.
    pub eigen_radius: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub boundary_value: f64,
    pub residual_min: f64,
    pub certified: bool,
}

/// Theorem A's global subsolution on the ball `grid`: the positive solution of the
/// Yamabe-type equation Δv + av − bv^σ = 0 between ε·(eigenfunction of Δ + a on the
/// smallest dyadic sub-ball with λ₁ < 0) and the cut-off supersolution.
pub fn theorem_a_subsolution(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid) -> Result<YamabeSubsolution> {
    let n = grid.n();
    let yam = coeffs.without_c();
    let s = coeffs.sample(grid)?;
    let mut found = None;
    for j in (0..=4).rev() {
        let k = n >> j;
        if k < 8 {
            continue;
        }
        let sub_grid = grid.prefix(k)?;
        let eig = eigen_with_operator(&RadialOperator::new(model, &sub_grid), &s.a[..=k])?;
        if eig.lambda1 < 0.0 {
            found = Some((k, eig));
            break;
        }
    }
    let Some((k, eig)) = found else {
        return Err(hypothesis("λ₁^{Δ+a}(B_R) ≥ 0 on every probed ball"));
    };
    let lambda = eig.lambda1;
    let phi = eig.eigenfunction.values();
    let bmax = s.b[..=k].iter().cloned().fold(0.0, f64::max);
    let pmax = phi.iter().cloned().fold(0.0, f64::max);
    let epsilon = if bmax > 0.0 { 0.5 * (-lambda / bmax).powf(1.0 / (coeffs.sigma - 1.0)) / pmax } else { 1.0 / pmax };
    let sub: Vec<f64> = (0..=n).map(|i| if i <= k { epsilon * phi[i] } else { 0.0 }).collect();
    let sup = lemma1_auto(model, &yam, &yam.a, grid)?.v;
    let boundary = 0.5 * sub.iter().cloned().fold(0.0, f64::max);
    let mut zeta = (boundary / sup.value(n)).max(1.0);
    for (a, b) in sub.iter().zip(sup.values()) {
        zeta = zeta.max(a / b);
    }
    let sup_z: Vec<f64> = sup.values().iter().map(|x| zeta * x).collect();
    let op = RadialOperator::new(model, grid);
    let sy = yam.sample(grid)?;
    let rep = solve_sampled(&op, &sy, boundary, &sub, &sup_z, &SolveOptions::default())?;
    let residual_min = nan_min(&relative_residual(&op, &s, rep.solution.values()));
    let certified = residual_min >= -BARRIER_TOL && rep.solution.values().iter().all(|&v| v > 0.0);
    Ok(YamabeSubsolution {
        u_minus: rep.solution,
        eigen_radius: grid.r(k),
        lambda,
        epsilon,
        boundary_value: boundary,
        residual_min,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_shape() {
        assert_eq!(quintic_cutoff(-1.0), 1.0);
        assert_eq!(quintic_cutoff(0.0), 1.0);
        assert_eq!(quintic_cutoff(1.0), 0.0);
        assert!((quintic_cutoff(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambda0_plastic_root() {
        // 1 − U² + 1/U ≤ 0 ⇔ U³ − U − 1 ≥ 0
        let model = ModelManifold::euclidean(3, 2.0).unwrap();
        let grid = RadialGrid::ball(2.0, 200).unwrap();
        let c = CoefficientSet::constant(1.0, 1.0, 1.0, 3.0, 0.0).unwrap();
        let rep = lemma1_supersolution(&model, &c, &c.a, &grid, None).unwrap();
        assert!((rep.lambda0_root - 1.324_717_957_244_746).abs() < 1e-12);
        assert!(rep.residual_max <= 0.0);
    }

    #[test]
    fn cutoff_supersolution_with_b0() {
        let model = ModelManifold::euclidean(3, 2.0).unwrap();
        let grid = RadialGrid::ball(2.0, 800).unwrap();
        let b = RadialField::custom("b", |r| (r - 0.25).max(0.0));
        let c = CoefficientSet::new(RadialField::constant(0.0), b, RadialField::constant(1.0), 3.0, -1.0).unwrap();
        let rep = lemma1_auto(&model, &c, &c.a, &grid).unwrap();
        assert!(rep.nested.is_some());
        assert!(rep.residual_max <= BARRIER_TOL);
        assert!(rep.v.min() > 0.0);
        let bad = CoefficientSet::new(RadialField::constant(0.0), RadialField::custom("b", |r| (1.9 - r).max(0.0)), RadialField::constant(1.0), 3.0, -1.0).unwrap();
        assert!(lemma1_auto(&model, &bad, &bad.a, &grid).unwrap_err().is_hypothesis());
    }

    #[test]
    fn sigma_routes() {
        let model = ModelManifold::euclidean(3, 4.0).unwrap();
        let grid = RadialGrid::ball(3.0, 300).unwrap();
        let c = CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap();
        let rep = sigma_property(&model, &c, &grid, None).unwrap();
        assert!(rep.holds);
        assert!(rep.diagnostics[1].success);
        let grow = CoefficientSet::constant(2.0, 0.01, 0.0, 3.0, 0.5).unwrap();
        let rep = sigma_property(&model, &grow, &grid, None).unwrap();
        assert_eq!(rep.route, Some(SigmaRoute::Eigenfunction));
        let zero = CoefficientSet::constant(0.0, 0.0, 0.0, 3.0, 0.5).unwrap();
        let one = RadialFunction::constant(&grid, 1.0);
        let rep = sigma_property(&model, &zero, &grid, Some(&one)).unwrap();
        assert_eq!(rep.route, Some(SigmaRoute::UserSupplied));
    }
}
