//! Uniform radial grids and sampled radial functions.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Default number of grid intervals.
pub const DEFAULT_N: usize = 2000;

/// Nodes `r_i = r_min + i h`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    r_min: f64,
    h: f64,
    n: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min >= 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(invalid(format!("grid needs 0 <= r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n < 2 {
            return Err(invalid("grid needs at least two intervals"));
        }
        Ok(RadialGrid { r_min, h: (r_max - r_min) / n as f64, n })
    }

    /// Grid on `[0, r_max]`.
    pub fn ball(r_max: f64, n: usize) -> Result<Self> {
        Self::new(0.0, r_max, n)
    }

    /// Grid on `[eps, r_max]` with `eps = 1e-3 r_max`, for kernels singular at the pole.
    pub fn punctured(r_max: f64, n: usize) -> Result<Self> {
        Self::new(1e-3 * r_max, r_max, n)
    }

    /// Grid with the same spacing and origin but only the first `n + 1` nodes.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n < 2 || n > self.n {
            return Err(invalid(format!("prefix of {n} intervals out of range (have {})", self.n)));
        }
        Ok(RadialGrid { r_min: self.r_min, h: self.h, n })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of intervals; there are `n + 1` nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.r(i)).collect()
    }

    /// Index of the last node with `r_i <= r` (clamped).
    pub fn floor_index(&self, r: f64) -> usize {
        let x = ((r - self.r_min) / self.h + 1e-9).floor();
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.n)
        }
    }

    /// Index of the node nearest to `r` (clamped).
    pub fn nearest_index(&self, r: f64) -> usize {
        let x = ((r - self.r_min) / self.h).round();
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.n)
        }
    }
}

/// Values sampled at every node of a grid, linearly interpolated in between.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialFunction {
    grid: RadialGrid,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "radial function needs {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(RadialFunction { grid, values })
    }

    pub fn from_fn(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        RadialFunction { grid: grid.clone(), values }
    }

    pub fn constant(grid: &RadialGrid, c: f64) -> Self {
        RadialFunction { grid: grid.clone(), values: vec![c; grid.len()] }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Linear interpolation, constant extension outside the grid.
    pub fn eval(&self, r: f64) -> f64 {
        let g = &self.grid;
        if r <= g.r_min {
            return self.values[0];
        }
        if r >= g.r_max() {
            return self.values[g.n];
        }
        let x = (r - g.r_min) / g.h;
        let i = (x.floor() as usize).min(g.n - 1);
        let w = x - i as f64;
        (1.0 - w) * self.values[i] + w * self.values[i + 1]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        RadialFunction { grid: self.grid.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|v| k * v)
    }

    /// Restriction to the first `n + 1` nodes.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        let grid = self.grid.prefix(n)?;
        Ok(RadialFunction { values: self.values[..=n].to_vec(), grid })
    }

    /// Resample onto another grid by interpolation.
    pub fn resample(&self, grid: &RadialGrid) -> Self {
        RadialFunction::from_fn(grid, |r| self.eval(r))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.grid.r(i), v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_interpolation() {
        let g = RadialGrid::ball(2.0, 4).unwrap();
        assert_eq!(g.nodes(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        let f = RadialFunction::from_fn(&g, |r| 2.0 * r + 1.0);
        assert!((f.eval(0.7) - 2.4).abs() < 1e-14);
        assert_eq!(f.eval(-1.0), 1.0);
        assert_eq!(f.eval(9.0), 5.0);
        assert_eq!(g.floor_index(1.0), 2);
        assert_eq!(g.nearest_index(1.3), 3);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(RadialGrid::new(1.0, 1.0, 10).is_err());
        assert!(RadialGrid::ball(1.0, 1).is_err());
        let g = RadialGrid::ball(1.0, 10).unwrap();
        assert!(RadialFunction::new(g, vec![0.0; 3]).is_err());
    }
}
