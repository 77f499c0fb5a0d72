//! Coefficients (a, b, c, σ, τ), the nonlinearity f(x, u) = a u − b u^σ + c u^τ, discrete
//! residuals, ratio bounds and constant barriers.

pub mod barriers;

use serde::Serialize;

use crate::error::{domain, hypothesis, invalid, Result};
use crate::field::RadialField;
use crate::grid::{RadialFunction, RadialGrid};
use crate::operator::RadialOperator;

/// Relative residual tolerance for barrier certificates.
pub const BARRIER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientSet {
    pub a: RadialField,
    pub b: RadialField,
    pub c: RadialField,
    pub sigma: f64,
    pub tau: f64,
}

impl CoefficientSet {
    pub fn new(a: RadialField, b: RadialField, c: RadialField, sigma: f64, tau: f64) -> Result<Self> {
        if !(sigma > 1.0) || !sigma.is_finite() {
            return Err(invalid(format!("σ must satisfy σ > 1, got {sigma}")));
        }
        if !(tau < 1.0) || !tau.is_finite() {
            return Err(invalid(format!("τ must satisfy τ < 1, got {tau}")));
        }
        for (name, f) in [("b", &b), ("c", &c)] {
            if let Some(v) = f.as_constant() {
                if v < 0.0 {
                    return Err(invalid(format!("{name} must be nonnegative (sign condition), got {v}")));
                }
            }
        }
        Ok(CoefficientSet { a, b, c, sigma, tau })
    }

    pub fn constant(a: f64, b: f64, c: f64, sigma: f64, tau: f64) -> Result<Self> {
        Self::new(RadialField::constant(a), RadialField::constant(b), RadialField::constant(c), sigma, tau)
    }

    /// f(r, u) for u > 0.
    pub fn f_eval(&self, r: f64, u: f64) -> Result<f64> {
        if !(u > 0.0) && self.tau < 0.0 {
            return Err(domain(format!("u^τ is singular at u = {u} for τ = {}", self.tau)));
        }
        Ok(self.a.eval(r) * u - self.b.eval(r) * u.powf(self.sigma) + self.c.eval(r) * u.powf(self.tau))
    }

    /// Samples the coefficients on `grid`, enforcing b, c ≥ 0 at every node.
    pub fn sample(&self, grid: &RadialGrid) -> Result<Sampled> {
        let a = self.a.sample_finite(grid, "a")?;
        let b = self.b.sample_finite(grid, "b")?;
        let c = self.c.sample_finite(grid, "c")?;
        for (name, v) in [("b", &b), ("c", &c)] {
            if let Some(i) = v.iter().position(|&x| x < 0.0) {
                return Err(invalid(format!(
                    "{name}({}) = {} violates the sign condition b, c ≥ 0",
                    grid.r(i),
                    v[i]
                )));
            }
        }
        Ok(Sampled { a, b, c, sigma: self.sigma, tau: self.tau })
    }

    /// Coefficients of the equation satisfied by 1/u: (−a, c, b, 2−τ, 2−σ).
    pub fn inverted(&self) -> Self {
        CoefficientSet {
            a: self.a.negate(),
            b: self.c.clone(),
            c: self.b.clone(),
            sigma: 2.0 - self.tau,
            tau: 2.0 - self.sigma,
        }
    }

    pub fn with_a(&self, a: RadialField) -> Self {
        CoefficientSet { a, ..self.clone() }
    }

    /// The Yamabe-type equation obtained by dropping c.
    pub fn without_c(&self) -> Self {
        CoefficientSet { c: RadialField::constant(0.0), ..self.clone() }
    }
}

/// Coefficients sampled at grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub sigma: f64,
    pub tau: f64,
}

impl Sampled {
    pub fn f(&self, i: usize, u: f64) -> f64 {
        let ct = if self.c[i] == 0.0 { 0.0 } else { self.c[i] * u.powf(self.tau) };
        self.a[i] * u - self.b[i] * u.powf(self.sigma) + ct
    }

    /// Upper bound of −∂f/∂u over u ∈ [lo, hi], 0 < lo ≤ hi.
    pub fn neg_dfdu_max(&self, i: usize, lo: f64, hi: f64) -> f64 {
        let mut v = -self.a[i] + self.sigma * self.b[i] * hi.powf(self.sigma - 1.0);
        if self.tau < 0.0 && self.c[i] > 0.0 {
            v += -self.tau * self.c[i] * lo.powf(self.tau - 1.0);
        }
        v
    }

    /// Size of the individual terms of f at node i.
    pub fn term_scale(&self, i: usize, u: f64) -> f64 {
        let ct = if self.c[i] == 0.0 { 0.0 } else { (self.c[i] * u.powf(self.tau)).abs() };
        (self.a[i] * u).abs().max(self.b[i] * u.abs().powf(self.sigma)).max(ct)
    }

    pub fn prefix(&self, k: usize) -> Sampled {
        Sampled {
            a: self.a[..=k].to_vec(),
            b: self.b[..=k].to_vec(),
            c: self.c[..=k].to_vec(),
            sigma: self.sigma,
            tau: self.tau,
        }
    }
}

/// Discrete residual Δ_h u + f(u) at the operator's interior nodes, NaN elsewhere.
pub fn residual(op: &RadialOperator, s: &Sampled, u: &[f64]) -> Vec<f64> {
    let mut out = vec![f64::NAN; u.len()];
    for i in op.interior() {
        out[i] = op.laplacian_at(u, i) + s.f(i, u[i]);
    }
    out
}

/// Residual divided by max(1, size of the flux and reaction terms) at each node.
pub fn relative_residual(op: &RadialOperator, s: &Sampled, u: &[f64]) -> Vec<f64> {
    let mut out = vec![f64::NAN; u.len()];
    for i in op.interior() {
        let scale = 1f64.max(op.flux_scale(u, i)).max(s.term_scale(i, u[i]));
        out[i] = (op.laplacian_at(u, i) + s.f(i, u[i])) / scale;
    }
    out
}

pub(crate) fn nan_min(v: &[f64]) -> f64 {
    v.iter().filter(|x| !x.is_nan()).cloned().fold(f64::INFINITY, f64::min)
}

pub(crate) fn nan_max(v: &[f64]) -> f64 {
    v.iter().filter(|x| !x.is_nan()).cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// s ↦ f(r, s)/s is nonincreasing on `s_grid`.
pub fn quotient_monotone_check(coeffs: &CoefficientSet, r: f64, s_grid: &[f64]) -> Result<bool> {
    if s_grid.iter().any(|&s| !(s > 0.0)) || s_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("quotient check needs a positive increasing grid"));
    }
    let q: Vec<f64> = s_grid.iter().map(|&s| coeffs.f_eval(r, s).map(|f| f / s)).collect::<Result<_>>()?;
    Ok(q.windows(2).all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioBounds {
    /// sup (a₊ + c)/b
    pub h: f64,
    /// sup (a₋ + b)/c
    pub k: f64,
    /// max{1, H^{1/(σ−1)}}
    pub h_script: f64,
    /// min{1, K^{1/(τ−1)}}
    pub k_script: f64,
    /// All three fields are constants, so the grid sups are the sups over M.
    pub tail_exact: bool,
}

fn ratio_sup(num: impl Fn(usize) -> f64, den: &[f64]) -> f64 {
    let mut sup: f64 = 0.0;
    for (i, &d) in den.iter().enumerate() {
        if !(d > 0.0) {
            return f64::INFINITY;
        }
        sup = sup.max(num(i) / d);
    }
    sup
}

pub fn ratio_bounds(coeffs: &CoefficientSet, grid: &RadialGrid) -> Result<RatioBounds> {
    let s = coeffs.sample(grid)?;
    let h = ratio_sup(|i| s.a[i].max(0.0) + s.c[i], &s.b);
    let k = ratio_sup(|i| (-s.a[i]).max(0.0) + s.b[i], &s.c);
    let h_script = if h.is_finite() { 1f64.max(h.powf(1.0 / (coeffs.sigma - 1.0))) } else { f64::INFINITY };
    let k_script = if k.is_finite() { 1f64.min(k.powf(1.0 / (coeffs.tau - 1.0))) } else { 0.0 };
    let tail_exact = [&coeffs.a, &coeffs.b, &coeffs.c].iter().all(|f| f.as_constant().is_some());
    Ok(RatioBounds { h, k, h_script, k_script, tail_exact })
}

#[derive(Debug, Clone, Serialize)]
pub struct BarrierPair {
    pub sub: RadialFunction,
    pub sup: RadialFunction,
    /// min over interior nodes of the relative residual of `sub` (should be ≥ −tol).
    pub sub_residual_min: f64,
    /// max over interior nodes of the relative residual of `sup` (should be ≤ tol).
    pub sup_residual_max: f64,
    pub ordered: bool,
    pub certified: bool,
}

/// Residual certificates of an ordered pair on a common grid.
pub fn certify_pair(op: &RadialOperator, s: &Sampled, sub: RadialFunction, sup: RadialFunction) -> BarrierPair {
    let sub_residual_min = nan_min(&relative_residual(op, s, sub.values()));
    let sup_residual_max = nan_max(&relative_residual(op, s, sup.values()));
    let ordered = sub.values().iter().zip(sup.values()).all(|(a, b)| a <= b);
    let certified = ordered && sub_residual_min >= -BARRIER_TOL && sup_residual_max <= BARRIER_TOL;
    BarrierPair { sub, sup, sub_residual_min, sup_residual_max, ordered, certified }
}

/// The global constant pair u⁻ ≡ 𝒦, u⁺ ≡ ℋ.
pub fn constant_barriers(model: &crate::model::ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid) -> Result<BarrierPair> {
    let rb = ratio_bounds(coeffs, grid)?;
    if !rb.h.is_finite() || !rb.k.is_finite() {
        return Err(hypothesis(format!(
            "no constant barriers: H = {}, K = {}; use lemma1_supersolution instead",
            rb.h, rb.k
        )));
    }
    let op = RadialOperator::new(model, grid);
    let s = coeffs.sample(grid)?;
    let sub = RadialFunction::constant(grid, rb.k_script);
    let sup = RadialFunction::constant(grid, rb.h_script);
    Ok(certify_pair(&op, &s, sub, sup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelManifold;

    #[test]
    fn f_examples() {
        let c = CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap();
        assert_eq!(c.f_eval(0.3, 1.0).unwrap(), 0.0);
        assert!(c.f_eval(0.3, 0.0).is_err());
        let lin = CoefficientSet::constant(1.0, 0.0, 0.0, 2.0, 0.5).unwrap();
        assert_eq!(lin.f_eval(1.0, 5.0).unwrap(), 5.0);
        let mix = CoefficientSet::constant(2.0, 1.0, 3.0, 2.0, 0.5).unwrap();
        assert_eq!(mix.f_eval(1.0, 4.0).unwrap(), -2.0);
        assert!(CoefficientSet::constant(0.0, 1.0, 1.0, 0.5, 0.0).is_err());
        assert!(CoefficientSet::constant(0.0, 1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn ratio_examples() {
        let grid = RadialGrid::ball(5.0, 100).unwrap();
        let pinch = ratio_bounds(&CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap(), &grid).unwrap();
        assert_eq!((pinch.h, pinch.k, pinch.h_script, pinch.k_script), (1.0, 1.0, 1.0, 1.0));
        let r = ratio_bounds(&CoefficientSet::constant(3.0, 1.0, 1.0, 3.0, 0.0).unwrap(), &grid).unwrap();
        assert_eq!(r.h, 4.0);
        assert_eq!(r.h_script, 2.0);
        let a = RadialField::parse("-1/(1+r^2)").unwrap();
        let cs = CoefficientSet::new(a, RadialField::constant(1.0), RadialField::constant(2.0), 3.0, -1.0).unwrap();
        let r = ratio_bounds(&cs, &grid).unwrap();
        assert!((r.k - 1.0).abs() < 1e-15);
        assert_eq!(r.k_script, 1.0);
    }

    #[test]
    fn constant_pairs() {
        let model = ModelManifold::euclidean(3, 5.0).unwrap();
        let grid = RadialGrid::ball(5.0, 100).unwrap();
        let pinch = constant_barriers(&model, &CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap(), &grid).unwrap();
        assert!(pinch.certified);
        assert_eq!(pinch.sub_residual_min, 0.0);
        assert_eq!(pinch.sup_residual_max, 0.0);
        let p = constant_barriers(&model, &CoefficientSet::constant(3.0, 1.0, 1.0, 3.0, 0.0).unwrap(), &grid).unwrap();
        assert_eq!(p.sup.value(0), 2.0);
        assert!(p.certified);
        let none = constant_barriers(&model, &CoefficientSet::constant(0.0, 1.0, 0.0, 3.0, 0.0).unwrap(), &grid);
        assert!(none.unwrap_err().is_hypothesis());
    }

    #[test]
    fn quotient_monotone() {
        let s: Vec<f64> = (1..200).map(|k| 0.05 * k as f64).collect();
        let c = CoefficientSet::constant(-2.0, 0.5, 3.0, 2.5, -1.5).unwrap();
        assert!(quotient_monotone_check(&c, 1.0, &s).unwrap());
        let flat = CoefficientSet::constant(7.0, 0.0, 0.0, 2.0, 0.0).unwrap();
        assert!(quotient_monotone_check(&flat, 1.0, &s).unwrap());
    }
}
