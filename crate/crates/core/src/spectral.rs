//! First Dirichlet eigenvalue of L = Δ + a on balls and annuli of a model.

use serde::Serialize;

use crate::error::{domain, numerical, Result};
use crate::field::RadialField;
use crate::grid::{RadialFunction, RadialGrid};
use crate::model::ModelManifold;
use crate::operator::RadialOperator;
use crate::tridiag;

#[derive(Debug, Clone, Serialize)]
pub struct EigenResult {
    /// λ₁ with Lv + λ₁v = 0, v = 0 on the outer (and inner) boundary.
    pub lambda1: f64,
    pub eigenfunction: RadialFunction,
    pub radius: f64,
    /// Discrete Rayleigh quotient of the returned eigenfunction.
    pub rayleigh: f64,
}

/// Lowest Dirichlet eigenpair of Δ + a on `grid` (Neumann at the pole if the grid has one).
/// The eigenfunction is normalized in L²(g^{m−1}dr) and positive.
pub fn dirichlet_eigen(model: &ModelManifold, a: &[f64], grid: &RadialGrid) -> Result<EigenResult> {
    let op = RadialOperator::new(model, grid);
    eigen_with_operator(&op, a)
}

pub(crate) fn eigen_with_operator(op: &RadialOperator, a: &[f64]) -> Result<EigenResult> {
    let grid = op.grid().clone();
    let idx: Vec<usize> = op.interior().collect();
    if idx.len() < 2 {
        return Err(domain("eigenvalue grid has fewer than two unknowns"));
    }
    let (d, e) = op.symmetric_form(a);
    let lambda = tridiag::lowest_eigenvalue(&d, &e);
    // inverse iteration on the shifted, positive definite matrix
    let shift = lambda - 1e-9 * lambda.abs().max(1.0);
    let dd: Vec<f64> = d.iter().map(|x| x - shift).collect();
    let mut lower = vec![0.0; e.len() + 1];
    let mut upper = vec![0.0; e.len() + 1];
    lower[1..].copy_from_slice(&e);
    upper[..e.len()].copy_from_slice(&e);
    let mut y = vec![1.0; d.len()];
    for _ in 0..4 {
        y = tridiag::solve(&lower, &dd, &upper, &y)?;
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(numerical("inverse iteration broke down"));
        }
        y.iter_mut().for_each(|v| *v /= norm);
    }
    let sign = if y.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let mut v = vec![0.0; grid.len()];
    for (k, &i) in idx.iter().enumerate() {
        v[i] = sign * y[k] / op.mass(i).sqrt();
    }
    if idx.iter().any(|&i| !(v[i] > 0.0)) {
        return Err(numerical("eigenfunction changes sign in the interior"));
    }
    let mut num = 0.0;
    for i in 0..grid.n() {
        num += op.cond(i) * (v[i + 1] - v[i]).powi(2);
    }
    let mut den = 0.0;
    for &i in &idx {
        num -= a[i] * op.mass(i) * v[i] * v[i];
        den += op.mass(i) * v[i] * v[i];
    }
    let scale = den.sqrt();
    v.iter_mut().for_each(|x| *x /= scale);
    let rayleigh = num / den;
    let radius = grid.r_max();
    Ok(EigenResult { lambda1: lambda, eigenfunction: RadialFunction::new(grid, v)?, radius, rayleigh })
}

/// λ₁^L(B_R) on a ball with `n` intervals; retries once at 2n if the eigenfunction is not
/// positive.
pub fn lambda1_ball(model: &ModelManifold, a: &RadialField, radius: f64, n: usize) -> Result<EigenResult> {
    if !(radius > 0.0) || radius > model.r_max() * (1.0 + 1e-12) {
        return Err(domain(format!("radius {radius} outside (0, {}]", model.r_max())));
    }
    let attempt = |n: usize| -> Result<EigenResult> {
        let grid = RadialGrid::ball(radius, n)?;
        let av = a.sample_finite(&grid, "a")?;
        dirichlet_eigen(model, &av, &grid)
    };
    match attempt(n) {
        Err(crate::Error::Numerical(_)) => attempt(2 * n),
        other => other,
    }
}

/// λ₁^L of the annulus {r_in < r < r_out}, Dirichlet on both spheres.
pub fn lambda1_annulus(model: &ModelManifold, a: &RadialField, r_in: f64, r_out: f64, n: usize) -> Result<EigenResult> {
    if !(r_in > 0.0 && r_out > r_in) {
        return Err(domain(format!("annulus ({r_in}, {r_out}) is empty or touches the pole")));
    }
    let grid = RadialGrid::new(r_in, r_out, n)?;
    let av = a.sample_finite(&grid, "a")?;
    dirichlet_eigen(model, &av, &grid)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralProfile {
    pub radii: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub limit_estimate: f64,
    /// |λ(h) − λ(2h)|/3 at the largest radius.
    pub discretization_error: f64,
    /// λ₁^L(M) < 0 is reported only below −10 × the discretization error.
    pub negative_evidence: bool,
}

/// λ₁^L(B_R) for increasing radii on nested grids of common spacing radii[0]/n, so that
/// domain monotonicity holds exactly (interlacing of nested Dirichlet matrices).
pub fn spectral_profile(model: &ModelManifold, a: &RadialField, radii: &[f64], n: usize) -> Result<SpectralProfile> {
    if radii.is_empty() || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("radii must be a nonempty increasing list"));
    }
    let r_last = *radii.last().unwrap();
    if r_last > model.r_max() * (1.0 + 1e-12) {
        return Err(domain(format!("radius {r_last} exceeds R_max = {}", model.r_max())));
    }
    let h = radii[0] / n as f64;
    let n_last = (r_last / h).round() as usize;
    let full = RadialGrid::ball(n_last as f64 * h, n_last)?;
    let av = a.sample_finite(&full, "a")?;
    let mut eigenvalues = Vec::with_capacity(radii.len());
    for &r in radii {
        let k = (r / h).round() as usize;
        let grid = full.prefix(k)?;
        let res = dirichlet_eigen(model, &av[..=k], &grid)?;
        eigenvalues.push(res.lambda1);
    }
    let last = *eigenvalues.last().unwrap();
    let coarse_grid = RadialGrid::ball(full.r_max(), n_last / 2)?;
    let coarse_a = a.sample_finite(&coarse_grid, "a")?;
    let coarse = dirichlet_eigen(model, &coarse_a, &coarse_grid)?.lambda1;
    let discretization_error = (last - coarse).abs() / 3.0;
    Ok(SpectralProfile {
        radii: radii.to_vec(),
        eigenvalues,
        limit_estimate: last,
        discretization_error,
        negative_evidence: last < -10.0 * discretization_error,
    })
}

/// A radially symmetric bounded set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialSet {
    Empty,
    Point,
    Ball { radius: f64 },
    Annulus { inner: f64, outer: f64 },
}

impl RadialSet {
    /// Radius of the smallest centred ball containing the set.
    pub fn outer_radius(&self) -> f64 {
        match *self {
            RadialSet::Empty | RadialSet::Point => 0.0,
            RadialSet::Ball { radius } => radius,
            RadialSet::Annulus { outer, .. } => outer,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, RadialSet::Empty)
    }
}

/// {b < 1e−12·max b} on the grid, reported through its bounding ball or annulus.
pub fn zero_set(values: &[f64], grid: &RadialGrid) -> RadialSet {
    let top = values.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-12 * top;
    let zeros: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= tol).collect();
    match (zeros.first(), zeros.last()) {
        (None, _) | (_, None) => RadialSet::Empty,
        (Some(&lo), Some(&hi)) => {
            if lo == 0 && grid.r_min() == 0.0 {
                if hi == 0 {
                    RadialSet::Point
                } else {
                    RadialSet::Ball { radius: grid.r(hi) }
                }
            } else {
                RadialSet::Annulus { inner: grid.r(lo), outer: grid.r(hi) }
            }
        }
    }
}

/// Eigenvalues above this are reported as +∞ for sets that shrink to a point.
pub const EIGEN_CAP: f64 = 1e10;

/// λ₁^L(B) = sup over enclosing domains, approximated by enclosing balls/annuli whose
/// margin δ_k = δ₀2^{−k} shrinks, then extrapolated linearly in δ.
pub fn lambda1_bounded_set(model: &ModelManifold, a: &RadialField, set: RadialSet, n: usize) -> Result<f64> {
    match set {
        RadialSet::Empty => Ok(f64::INFINITY),
        RadialSet::Point => {
            let r = 1e-6_f64.min(model.r_max());
            let lam = lambda1_ball(model, a, r, 200)?.lambda1;
            Ok(if lam > EIGEN_CAP { f64::INFINITY } else { lam })
        }
        RadialSet::Ball { radius } => {
            let room = model.r_max() - radius;
            if !(room > 0.0) {
                return Err(domain("enclosing balls leave the model's truncation radius"));
            }
            let d0 = (0.1 * radius).min(0.5 * room);
            let l1 = lambda1_ball(model, a, radius + d0 / 8.0, n)?.lambda1;
            let l2 = lambda1_ball(model, a, radius + d0 / 16.0, n)?.lambda1;
            Ok(2.0 * l2 - l1)
        }
        RadialSet::Annulus { inner, outer } => {
            let room = (model.r_max() - outer).min(inner);
            if !(room > 0.0) {
                return Err(domain("enclosing annuli leave the model's truncation radius"));
            }
            let d0 = (0.1 * (outer - inner)).min(0.5 * room);
            let l1 = lambda1_annulus(model, a, inner - d0 / 8.0, outer + d0 / 8.0, n)?.lambda1;
            let l2 = lambda1_annulus(model, a, inner - d0 / 16.0, outer + d0 / 16.0, n)?.lambda1;
            Ok(2.0 * l2 - l1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ball_in_r3() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        let res = lambda1_ball(&e3, &RadialField::constant(0.0), 1.0, 2000).unwrap();
        assert!((res.lambda1 / (PI * PI) - 1.0).abs() < 1e-5);
        assert!((res.rayleigh / res.lambda1 - 1.0).abs() < 1e-9);
        let v = &res.eigenfunction;
        let r = 0.5;
        let ratio = v.eval(r) / v.eval(0.0);
        assert!((ratio - (PI * r).sin() / (PI * r)).abs() < 1e-4);
        let shifted = lambda1_ball(&e3, &RadialField::constant(5.0), 1.0, 2000).unwrap();
        assert!((shifted.lambda1 - (res.lambda1 - 5.0)).abs() < 1e-8);
    }

    #[test]
    fn profile_scaling() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        let p = spectral_profile(&e3, &RadialField::constant(0.0), &[1.0, 2.0, 4.0], 500).unwrap();
        for (lam, r) in p.eigenvalues.iter().zip([1.0, 2.0, 4.0]) {
            assert!((lam * r * r / (PI * PI) - 1.0).abs() < 1e-4);
        }
        assert!(!p.negative_evidence);
    }

    #[test]
    fn bounded_sets() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        let zero = RadialField::constant(0.0);
        assert_eq!(lambda1_bounded_set(&e3, &zero, RadialSet::Empty, 100).unwrap(), f64::INFINITY);
        assert_eq!(lambda1_bounded_set(&e3, &zero, RadialSet::Point, 100).unwrap(), f64::INFINITY);
        let ball = lambda1_bounded_set(&e3, &zero, RadialSet::Ball { radius: 1.0 }, 2000).unwrap();
        assert!((ball / (PI * PI) - 1.0).abs() < 1e-3);
        // annulus (1,2) in R³: λ = (π/(r₂−r₁))²
        let ann = lambda1_annulus(&e3, &zero, 1.0, 2.0, 2000).unwrap();
        assert!((ann.lambda1 / (PI * PI) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn zero_sets() {
        let grid = RadialGrid::ball(1.0, 10).unwrap();
        let b: Vec<f64> = grid.nodes().iter().map(|&r| (r - 0.25).max(0.0)).collect();
        assert_eq!(zero_set(&b, &grid), RadialSet::Ball { radius: 0.2 });
        assert_eq!(zero_set(&[1.0; 11], &grid), RadialSet::Empty);
        let ann: Vec<f64> = grid.nodes().iter().map(|&r| if (0.3..0.6).contains(&r) { 0.0 } else { 1.0 }).collect();
        assert!(matches!(zero_set(&ann, &grid), RadialSet::Annulus { .. }));
    }
}
