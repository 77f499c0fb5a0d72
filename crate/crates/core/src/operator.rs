//! Finite-volume discretization of the radial Laplacian (g^{m−1}u′)′/g^{m−1}.
//!
//! Node i owns the cell [r_i − h/2, r_i + h/2] ∩ [r_min, r_max] with volume
//! M_i = ∫ g^{m−1}; the flux through face (i, i+1) is κ_i(u_{i+1} − u_i).
//!
//! On grids containing the pole the conductance is the midpoint value
//! κ_i = g(r_{i+1/2})^{m−1}/h, which makes Δ_h r² = 2m exact on flat space and gives
//! Δu(0) = m·u″(0) at the pole. On punctured grids it is the harmonic value
//! κ_i = 1/∫_{r_i}^{r_{i+1}} g^{1−m}, exact for radial harmonic functions such as G.

use crate::grid::{RadialFunction, RadialGrid};
use crate::model::ModelManifold;
use crate::quadrature::panel;

#[derive(Debug, Clone)]
pub struct RadialOperator {
    grid: RadialGrid,
    cond: Vec<f64>,
    mass: Vec<f64>,
}

impl RadialOperator {
    pub fn new(model: &ModelManifold, grid: &RadialGrid) -> Self {
        let m = model.dim() as f64;
        let h = grid.h();
        let n = grid.n();
        let w = |r: f64| model.warping().g(r).powf(m - 1.0);
        let winv = |r: f64| model.warping().g(r).powf(1.0 - m);
        let cond = (0..n)
            .map(|i| {
                let (a, b) = (grid.r(i), grid.r(i + 1));
                if grid.r_min() == 0.0 {
                    w(0.5 * (a + b)) / h
                } else {
                    1.0 / (panel(&winv, a, 0.5 * (a + b)) + panel(&winv, 0.5 * (a + b), b))
                }
            })
            .collect();
        let mass = (0..=n)
            .map(|i| {
                let r = grid.r(i);
                let lo = if i == 0 { r } else { r - 0.5 * h };
                let hi = if i == n { r } else { r + 0.5 * h };
                let left = if lo < r { panel(&w, lo, r) } else { 0.0 };
                let right = if hi > r { panel(&w, r, hi) } else { 0.0 };
                left + right
            })
            .collect();
        RadialOperator { grid: grid.clone(), cond, mass }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn has_pole(&self) -> bool {
        self.grid.r_min() == 0.0
    }

    /// Conductance of face (i, i+1).
    pub fn cond(&self, i: usize) -> f64 {
        self.cond[i]
    }

    /// Cell volume of node i (per unit sphere area).
    pub fn mass(&self, i: usize) -> f64 {
        self.mass[i]
    }

    /// Indices where the discrete Laplacian is defined: the pole (if present) and all
    /// nodes with two neighbours.
    pub fn interior(&self) -> std::ops::Range<usize> {
        let start = if self.has_pole() { 0 } else { 1 };
        start..self.grid.n()
    }

    /// Outward flux minus inward flux at node i, i.e. M_i·(Δ_h u)_i.
    pub fn flux_balance(&self, u: &[f64], i: usize) -> f64 {
        let right = self.cond[i] * (u[i + 1] - u[i]);
        let left = if i == 0 { 0.0 } else { self.cond[i - 1] * (u[i] - u[i - 1]) };
        right - left
    }

    /// Magnitude of the individual flux terms at node i, for relative residuals.
    pub fn flux_scale(&self, u: &[f64], i: usize) -> f64 {
        let right = (self.cond[i] * (u[i + 1] - u[i])).abs();
        let left = if i == 0 { 0.0 } else { (self.cond[i - 1] * (u[i] - u[i - 1])).abs() };
        (right + left) / self.mass[i]
    }

    /// (Δ_h u)_i at an interior node.
    pub fn laplacian_at(&self, u: &[f64], i: usize) -> f64 {
        self.flux_balance(u, i) / self.mass[i]
    }

    /// Δ_h u on interior nodes, NaN at the Dirichlet nodes.
    pub fn laplacian(&self, u: &RadialFunction) -> Vec<f64> {
        let v = u.values();
        let mut out = vec![f64::NAN; v.len()];
        for i in self.interior() {
            out[i] = self.laplacian_at(v, i);
        }
        out
    }

    /// Symmetrized matrix S = M^{-1/2}(K − diag(a)M)M^{-1/2} on the unknowns
    /// `interior()`, as (diagonal, off-diagonal). `a` is sampled at the nodes.
    pub fn symmetric_form(&self, a: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let idx: Vec<usize> = self.interior().collect();
        let d = idx
            .iter()
            .map(|&i| {
                let k = self.cond[i] + if i == 0 { 0.0 } else { self.cond[i - 1] };
                k / self.mass[i] - a[i]
            })
            .collect();
        let e = idx
            .windows(2)
            .map(|p| -self.cond[p[0]] / (self.mass[p[0]] * self.mass[p[1]]).sqrt())
            .collect();
        (d, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelManifold, WarpingFunction};

    #[test]
    fn pole_stencil_is_m_times_second_derivative() {
        for m in [2usize, 3, 5] {
            let model = ModelManifold::new(m, WarpingFunction::Euclidean, 1.0).unwrap();
            let grid = RadialGrid::ball(1.0, 100).unwrap();
            let op = RadialOperator::new(&model, &grid);
            let u: Vec<f64> = grid.nodes().iter().map(|r| r * r).collect();
            // Δ r² = 2m everywhere
            for i in [0, 1, 50, 99] {
                assert!((op.laplacian_at(&u, i) - 2.0 * m as f64).abs() < 1e-6 * m as f64, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn masses_sum_to_volume() {
        let model = ModelManifold::new(3, WarpingFunction::Euclidean, 2.0).unwrap();
        let grid = RadialGrid::ball(2.0, 64).unwrap();
        let op = RadialOperator::new(&model, &grid);
        let total: f64 = (0..=64).map(|i| op.mass(i)).sum();
        assert!((total - 8.0 / 3.0).abs() < 1e-12);
    }
}
