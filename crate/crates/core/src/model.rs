//! Rotationally symmetric model manifolds dr² + g(r)²dθ² and their Green kernels.

use serde::Serialize;

use crate::error::{domain, invalid, numerical, Error, Result};
use crate::field::RadialField;
use crate::grid::{RadialFunction, RadialGrid};
use crate::ode::Dopri5;
use crate::operator::RadialOperator;
use crate::quadrature::{panel, unit_sphere_area};

/// Piecewise cubic Hermite data (r, g, g′).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteTable {
    r: Vec<f64>,
    g: Vec<f64>,
    dg: Vec<f64>,
}

impl HermiteTable {
    fn locate(&self, r: f64) -> usize {
        let j = self.r.partition_point(|&x| x <= r);
        j.clamp(1, self.r.len() - 1) - 1
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        let j = self.locate(r);
        let (r0, r1) = (self.r[j], self.r[j + 1]);
        let h = r1 - r0;
        let s = (r - r0) / h;
        let (g0, g1, d0, d1) = (self.g[j], self.g[j + 1], self.dg[j] * h, self.dg[j + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let val = (2.0 * s3 - 3.0 * s2 + 1.0) * g0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * g1
            + (s3 - s2) * d1;
        let der = ((6.0 * s2 - 6.0 * s) * g0 + (3.0 * s2 - 4.0 * s + 1.0) * d0 + (-6.0 * s2 + 6.0 * s) * g1
            + (3.0 * s2 - 2.0 * s) * d1)
            / h;
        (val, der)
    }

    pub fn r_end(&self) -> f64 {
        *self.r.last().unwrap()
    }

    pub fn samples(&self) -> (&[f64], &[f64]) {
        (&self.r, &self.g)
    }
}

/// The warping function g of the model.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WarpingFunction {
    Euclidean,
    Hyperbolic { k: f64 },
    Tabulated { table: HermiteTable },
    Riccati { table: HermiteTable, potential: String },
}

impl WarpingFunction {
    pub fn hyperbolic(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(invalid(format!("hyperbolic curvature scale must be positive, got {k}")));
        }
        Ok(WarpingFunction::Hyperbolic { k })
    }

    /// Tabulated g from samples starting at (0, 0); g′ by second-order differences with
    /// g′(0) = 1 imposed.
    pub fn tabulated(r: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        let n = r.len();
        if n < 3 || g.len() != n {
            return Err(invalid("tabulated warping needs at least three (r, g) rows"));
        }
        if r[0] != 0.0 || g[0].abs() > 1e-12 {
            return Err(invalid("tabulated warping must start at r = 0 with g(0) = 0"));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("tabulated warping abscissae must be strictly increasing"));
        }
        if g[1..].iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(invalid("tabulated warping must be positive for r > 0"));
        }
        let mut dg = vec![0.0; n];
        dg[0] = 1.0;
        for i in 1..n - 1 {
            let (h0, h1) = (r[i] - r[i - 1], r[i + 1] - r[i]);
            dg[i] = (-h1 / (h0 * (h0 + h1))) * g[i - 1] + ((h1 - h0) / (h0 * h1)) * g[i]
                + (h0 / (h1 * (h0 + h1))) * g[i + 1];
        }
        let (h0, h1) = (r[n - 2] - r[n - 3], r[n - 1] - r[n - 2]);
        dg[n - 1] = (h1 / (h0 * (h0 + h1))) * g[n - 3] - ((h0 + h1) / (h0 * h1)) * g[n - 2]
            + ((2.0 * h1 + h0) / (h1 * (h0 + h1))) * g[n - 1];
        let est = (g[1] - g[0]) / (r[1] - r[0]);
        if (est - 1.0).abs() > 0.05 {
            return Err(invalid(format!("tabulated warping has g′(0) ≈ {est}, expected 1")));
        }
        Ok(WarpingFunction::Tabulated { table: HermiteTable { r, g, dg } })
    }

    pub fn g(&self, r: f64) -> f64 {
        match self {
            WarpingFunction::Euclidean => r,
            WarpingFunction::Hyperbolic { k } => {
                let s = k.sqrt();
                (s * r).sinh() / s
            }
            WarpingFunction::Tabulated { table } | WarpingFunction::Riccati { table, .. } => table.eval(r).0,
        }
    }

    pub fn dg(&self, r: f64) -> f64 {
        match self {
            WarpingFunction::Euclidean => 1.0,
            WarpingFunction::Hyperbolic { k } => (k.sqrt() * r).cosh(),
            WarpingFunction::Tabulated { table } | WarpingFunction::Riccati { table, .. } => table.eval(r).1,
        }
    }

    /// log g(r), stable for large r on hyperbolic space.
    pub fn ln_g(&self, r: f64) -> f64 {
        match self {
            WarpingFunction::Hyperbolic { k } => {
                let x = k.sqrt() * r;
                if x > 20.0 {
                    x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2 - 0.5 * k.ln()
                } else {
                    self.g(r).ln()
                }
            }
            _ => self.g(r).ln(),
        }
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self, WarpingFunction::Euclidean | WarpingFunction::Hyperbolic { .. })
    }

    fn table_end(&self) -> Option<f64> {
        match self {
            WarpingFunction::Tabulated { table } | WarpingFunction::Riccati { table, .. } => Some(table.r_end()),
            _ => None,
        }
    }
}

/// Solves g″ = F g, g(0) = 0, g′(0) = 1 on [0, r_max] and tabulates (g, g′) on `n_out`
/// uniform intervals.
pub fn riccati_warping(f: &RadialField, r_max: f64, n_out: usize) -> Result<WarpingFunction> {
    if !(r_max > 0.0) || n_out < 2 {
        return Err(invalid("riccati warping needs r_max > 0 and at least two output intervals"));
    }
    let h = r_max / n_out as f64;
    let mut rs = vec![0.0];
    let mut gs = vec![0.0];
    let mut dgs = vec![1.0];
    let ode = Dopri5 { rtol: 1e-13, atol: 1e-15, h_max: h, ..Default::default() };
    ode.integrate(
        |r, y: &[f64; 2]| [y[1], f.eval(r) * y[0]],
        0.0,
        [0.0, 1.0],
        r_max,
        |s| {
            if s.t1 > 0.0 && !(s.y1[0] > 0.0) || s.t0 > 0.0 && !s.zeros(0, 4, 1e-12).is_empty() {
                return Err(domain(format!(
                    "comparison warping not positive: g vanishes near r = {:.6}",
                    s.t1
                )));
            }
            let mut j = rs.len();
            while j <= n_out && (j as f64) * h <= s.t1 * (1.0 + 1e-14) {
                let r = (j as f64 * h).min(s.t1);
                let y = if j == n_out { s.y1 } else { s.eval(r) };
                rs.push(j as f64 * h);
                gs.push(y[0]);
                dgs.push(y[1]);
                j += 1;
            }
            Ok(true)
        },
    )?;
    if rs.len() != n_out + 1 {
        return Err(numerical("riccati integration did not reach r_max"));
    }
    Ok(WarpingFunction::Riccati { table: HermiteTable { r: rs, g: gs, dg: dgs }, potential: f.to_string() })
}

/// Growth class used for closed-form volume verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    Polynomial,
    Exponential,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeGrowth {
    pub finite: bool,
    pub liminf_estimate: f64,
    pub growth_class: GrowthClass,
    pub samples: Vec<(f64, f64)>,
}

/// Analytic tail ∫_{R_max}^∞ g^{1−m} and the model used for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailModel {
    pub kind: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreenChecks {
    pub positive: bool,
    pub strictly_decreasing: bool,
    pub t_strictly_increasing: bool,
    /// Largest relative discrete Laplacian ΔG / (size of flux terms) over interior nodes.
    pub laplacian_max: f64,
    pub superharmonic: bool,
    /// (Ghp) iii): the tail integral converges, so G → 0 at infinity.
    pub decays_to_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreenKernel {
    pub nonparabolic: bool,
    pub tail: TailModel,
    pub grid: Option<RadialGrid>,
    pub values: Vec<f64>,
    pub t: Vec<f64>,
    /// |∇ log G| = g^{1−m}/G.
    pub grad_log: Vec<f64>,
    pub checks: Option<GreenChecks>,
}

impl GreenKernel {
    pub fn as_function(&self) -> Option<RadialFunction> {
        let grid = self.grid.clone()?;
        RadialFunction::new(grid, self.values.clone()).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelManifold {
    m: usize,
    g: WarpingFunction,
    r_max: f64,
}

impl ModelManifold {
    pub fn new(m: usize, g: WarpingFunction, r_max: f64) -> Result<Self> {
        if m < 2 {
            return Err(invalid(format!("dimension must be at least 2, got {m}")));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(invalid(format!("R_max must be positive, got {r_max}")));
        }
        if let Some(end) = g.table_end() {
            if r_max > end * (1.0 + 1e-12) {
                return Err(invalid(format!("warping table ends at {end} < R_max = {r_max}")));
            }
        }
        Ok(ModelManifold { m, g, r_max })
    }

    pub fn euclidean(m: usize, r_max: f64) -> Result<Self> {
        Self::new(m, WarpingFunction::Euclidean, r_max)
    }

    pub fn hyperbolic(m: usize, k: f64, r_max: f64) -> Result<Self> {
        Self::new(m, WarpingFunction::hyperbolic(k)?, r_max)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn warping(&self) -> &WarpingFunction {
        &self.g
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Same manifold with a different truncation radius.
    pub fn with_r_max(&self, r_max: f64) -> Result<Self> {
        Self::new(self.m, self.g.clone(), r_max)
    }

    /// Drift (m−1)g′/g of the radial Laplacian u″ + (m−1)(g′/g)u′.
    pub fn laplacian_drift(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(domain(format!("laplacian drift needs r > 0, got {r}")));
        }
        Ok((self.m as f64 - 1.0) * self.g.dg(r) / self.g.g(r))
    }

    pub fn operator(&self, grid: &RadialGrid) -> RadialOperator {
        RadialOperator::new(self, grid)
    }

    /// vol(B_r) = ω_{m−1} ∫_0^r g^{m−1}.
    pub fn volume(&self, r: f64) -> f64 {
        self.ln_volume(r).exp()
    }

    /// log vol(B_r), accumulated in log space.
    pub fn ln_volume(&self, r: f64) -> f64 {
        let panels = 400;
        let e = self.m as f64 - 1.0;
        let h = r / panels as f64;
        let mut acc = f64::NEG_INFINITY;
        for k in 0..panels {
            let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
            let shift = e * self.g.ln_g(b);
            let v = panel(&|s: f64| (e * self.g.ln_g(s) - shift).exp(), a, b);
            if v > 0.0 {
                let l = v.ln() + shift;
                acc = if acc == f64::NEG_INFINITY { l } else { acc.max(l) + (-(acc - l).abs()).exp().ln_1p() };
            }
        }
        acc + unit_sphere_area(self.m).ln()
    }

    /// (Bvol): liminf log vol(B_r)/r^{2−μ} < ∞, sampled on a geometric sequence.
    pub fn volume_growth_check(&self, mu: f64) -> Result<VolumeGrowth> {
        if !(0.0..2.0).contains(&mu) {
            return Err(invalid(format!("volume growth exponent μ must lie in [0, 2), got {mu}")));
        }
        let count = 40;
        let r0 = self.r_max / 1000.0;
        let q = (1000.0f64).powf(1.0 / (count - 1) as f64);
        let samples: Vec<(f64, f64)> = (0..count)
            .map(|j| {
                let r = r0 * q.powi(j as i32);
                (r, self.ln_volume(r) / r.powf(2.0 - mu))
            })
            .collect();
        let tail = &samples[count / 2..];
        let liminf_estimate = tail.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        let (growth_class, finite) = match self.g {
            WarpingFunction::Euclidean => (GrowthClass::Polynomial, true),
            WarpingFunction::Hyperbolic { .. } => (GrowthClass::Exponential, mu <= 1.0),
            _ => {
                // slope of log(ratio) against log r over the tail
                let pts: Vec<(f64, f64)> =
                    tail.iter().filter(|s| s.1 > 0.0).map(|s| (s.0.ln(), s.1.ln())).collect();
                let finite = if pts.len() < 3 {
                    true
                } else {
                    let n = pts.len() as f64;
                    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
                    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
                    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
                    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
                    sxy / sxx <= 0.25
                };
                (GrowthClass::Numeric, finite)
            }
        };
        Ok(VolumeGrowth { finite, liminf_estimate, growth_class, samples })
    }

    /// Laplacian-comparison constant A = sup_{(0,T]} max(0, g′/g − 1/r), so that
    /// r·Δr ≤ (m−1)(1 + A r).
    pub fn comparison_constant(&self, t_max: f64) -> f64 {
        let n = 2000;
        (1..=n)
            .map(|j| {
                let r = t_max * j as f64 / n as f64;
                (self.g.dg(r) / self.g.g(r) - 1.0 / r).max(0.0)
            })
            .fold(0.0, f64::max)
    }

    fn tail_model(&self) -> TailModel {
        let m = self.m as f64;
        let big_r = self.r_max;
        match self.g {
            WarpingFunction::Euclidean => {
                if self.m == 2 {
                    TailModel { kind: "power r^(2-m): divergent".into(), value: f64::INFINITY }
                } else {
                    TailModel { kind: "power r^(2-m)".into(), value: big_r.powf(2.0 - m) / (m - 2.0) }
                }
            }
            WarpingFunction::Hyperbolic { k } => {
                // sinh^{1-m} = 2^{m-1} e^{-(m-1)x} Σ_j C(m-2+j, j) e^{-2jx}
                let a = k.sqrt();
                let x = a * big_r;
                let pre = (m - 1.0) * (2.0 * a).ln();
                let mut sum = 0.0;
                let mut binom = 1.0;
                for j in 0..100_000usize {
                    if j > 0 {
                        binom *= (m - 2.0 + j as f64) / j as f64;
                    }
                    let p = m - 1.0 + 2.0 * j as f64;
                    let term = binom * (pre - p * x).exp() / (p * a);
                    sum += term;
                    if term < 1e-18 * sum {
                        break;
                    }
                }
                TailModel { kind: "hyperbolic series".into(), value: sum }
            }
            WarpingFunction::Tabulated { .. } | WarpingFunction::Riccati { .. } => self.fitted_tail(),
        }
    }

    /// Best of g ≈ C r^p and g ≈ C e^{κr} over the last quarter of [0, R_max].
    fn fitted_tail(&self) -> TailModel {
        let m = self.m as f64;
        let big_r = self.r_max;
        let xs: Vec<f64> = (0..=40).map(|j| big_r * (0.75 + 0.25 * j as f64 / 40.0)).collect();
        let ys: Vec<f64> = xs.iter().map(|&r| self.g.ln_g(r)).collect();
        let fit = |u: &[f64]| {
            let n = u.len() as f64;
            let mx = u.iter().sum::<f64>() / n;
            let my = ys.iter().sum::<f64>() / n;
            let sxy: f64 = u.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
            let sxx: f64 = u.iter().map(|x| (x - mx).powi(2)).sum();
            let slope = sxy / sxx;
            let res: f64 = u.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
            (slope, res)
        };
        let logs: Vec<f64> = xs.iter().map(|r| r.ln()).collect();
        let (p, res_pow) = fit(&logs);
        let (kappa, res_exp) = fit(&xs);
        let g_r = self.g.g(big_r);
        if res_exp < res_pow {
            if kappa > 0.0 {
                TailModel { kind: format!("exponential fit rate {kappa:.6}"), value: g_r.powf(1.0 - m) / ((m - 1.0) * kappa) }
            } else {
                TailModel { kind: format!("exponential fit rate {kappa:.6}: divergent"), value: f64::INFINITY }
            }
        } else if p * (m - 1.0) > 1.0 {
            TailModel {
                kind: format!("power fit exponent {p:.6}"),
                value: g_r.powf(1.0 - m) * big_r / (p * (m - 1.0) - 1.0),
            }
        } else {
            TailModel { kind: format!("power fit exponent {p:.6}: divergent"), value: f64::INFINITY }
        }
    }

    /// G(r) = ∫_r^∞ g^{1−m} on the punctured grid [1e−3 R_max, R_max] with `n` intervals.
    pub fn green_kernel(&self, n: usize) -> Result<GreenKernel> {
        let tail = self.tail_model();
        if !tail.value.is_finite() {
            return Ok(GreenKernel {
                nonparabolic: false,
                tail,
                grid: None,
                values: vec![],
                t: vec![],
                grad_log: vec![],
                checks: None,
            });
        }
        let grid = RadialGrid::punctured(self.r_max, n)?;
        let op = self.operator(&grid);
        let mut values = vec![0.0; n + 1];
        values[n] = tail.value;
        for i in (0..n).rev() {
            values[i] = values[i + 1] + 1.0 / op.cond(i);
        }
        let m = self.m as f64;
        let t: Vec<f64> = values.iter().map(|g| -0.5 * g.ln()).collect();
        let grad_log: Vec<f64> =
            (0..=n).map(|i| ((1.0 - m) * self.g.ln_g(grid.r(i))).exp() / values[i]).collect();
        let positive = values.iter().all(|&g| g > 0.0 && g.is_finite());
        let strictly_decreasing = values.windows(2).all(|w| w[1] < w[0]);
        let t_strictly_increasing = t.windows(2).all(|w| w[1] > w[0]);
        let mut laplacian_max = f64::NEG_INFINITY;
        for i in op.interior() {
            let scale = op.flux_scale(&values, i).max(f64::MIN_POSITIVE);
            laplacian_max = laplacian_max.max(op.laplacian_at(&values, i) / scale);
        }
        let checks = GreenChecks {
            positive,
            strictly_decreasing,
            t_strictly_increasing,
            laplacian_max,
            superharmonic: laplacian_max <= 1e-6,
            decays_to_zero: tail.value.is_finite() && values[n] < values[0],
        };
        if !positive {
            return Err(Error::Numerical("Green kernel lost positivity".into()));
        }
        Ok(GreenKernel { nonparabolic: true, tail, grid: Some(grid), values, t, grad_log, checks: Some(checks) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drift_examples() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        assert_eq!(e3.laplacian_drift(2.0).unwrap(), 1.0);
        let h2 = ModelManifold::hyperbolic(2, 1.0, 10.0).unwrap();
        assert!((h2.laplacian_drift(1.0).unwrap() - 1.0f64.tanh().recip()).abs() < 1e-15);
        let e5 = ModelManifold::euclidean(5, 10.0).unwrap();
        assert_eq!(e5.laplacian_drift(0.5).unwrap(), 8.0);
        assert!(e3.laplacian_drift(0.0).is_err());
    }

    #[test]
    fn euclidean_volume() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        for r in [0.1, 1.0, 3.0, 10.0] {
            let exact = 4.0 * std::f64::consts::PI / 3.0 * r * r * r;
            assert!((e3.volume(r) / exact - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn volume_growth_verdicts() {
        let e3 = ModelManifold::euclidean(3, 100.0).unwrap();
        assert!(e3.volume_growth_check(0.0).unwrap().finite);
        let h3 = ModelManifold::hyperbolic(3, 1.0, 50.0).unwrap();
        let v = h3.volume_growth_check(0.0).unwrap();
        assert!(v.finite && v.liminf_estimate < 0.2);
        assert!(!h3.volume_growth_check(1.5).unwrap().finite);
        // g = r·exp(r³): log vol grows like 2r³
        let rs: Vec<f64> = (0..=400).map(|j| 4.0 * j as f64 / 400.0).collect();
        let gs: Vec<f64> = rs.iter().map(|&r| r * (r * r * r).exp()).collect();
        let fast = ModelManifold::new(3, WarpingFunction::tabulated(rs, gs).unwrap(), 4.0).unwrap();
        let v = fast.volume_growth_check(0.0).unwrap();
        assert!(!v.finite);
        assert!(v.samples.last().unwrap().1 > v.samples[v.samples.len() / 2].1);
    }

    #[test]
    fn riccati_closed_forms() {
        let flat = riccati_warping(&RadialField::constant(0.0), 5.0, 4000).unwrap();
        let hyp = riccati_warping(&RadialField::constant(1.0), 5.0, 4000).unwrap();
        for j in 1..=500 {
            let r = 5.0 * j as f64 / 500.0 - 0.0013;
            assert!((flat.g(r) / r - 1.0).abs() < 1e-8);
            assert!((hyp.g(r) / r.sinh() - 1.0).abs() < 1e-8);
            assert!((hyp.dg(r) / r.cosh() - 1.0).abs() < 1e-8);
        }
        let sphere = riccati_warping(&RadialField::constant(-1.0), 3.0, 3000).unwrap();
        assert!((sphere.g(1.0) - 1f64.sin()).abs() < 1e-9);
        let err = riccati_warping(&RadialField::constant(-1.0), 4.0, 4000).unwrap_err();
        assert!(err.to_string().contains("not positive"));
    }

    #[test]
    fn green_kernels() {
        let e3 = ModelManifold::euclidean(3, 10.0).unwrap();
        let gk = e3.green_kernel(2000).unwrap();
        let grid = gk.grid.clone().unwrap();
        for (i, &v) in gk.values.iter().enumerate() {
            assert!((v * grid.r(i) - 1.0).abs() < 1e-8);
        }
        let c = gk.checks.unwrap();
        assert!(c.positive && c.strictly_decreasing && c.t_strictly_increasing && c.superharmonic);

        let h3 = ModelManifold::hyperbolic(3, 1.0, 10.0).unwrap();
        let gk = h3.green_kernel(2000).unwrap();
        let grid = gk.grid.clone().unwrap();
        for (i, &v) in gk.values.iter().enumerate() {
            let r = grid.r(i);
            // coth r − 1 without cancellation
            let exact = 2.0 / (2.0 * r).exp_m1();
            assert!((v / exact - 1.0).abs() < 1e-8, "r={r}");
        }
        assert!(!ModelManifold::euclidean(2, 10.0).unwrap().green_kernel(100).unwrap().nonparabolic);
    }

    #[test]
    fn comparison_constant_values() {
        assert_eq!(ModelManifold::euclidean(3, 1.0).unwrap().comparison_constant(2.0), 0.0);
        let a = ModelManifold::hyperbolic(3, 1.0, 5.0).unwrap().comparison_constant(2.0);
        assert!((a - (1.0 / 2f64.tanh() - 0.5)).abs() < 1e-12);
    }
}
