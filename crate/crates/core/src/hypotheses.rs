//! Theorem-by-theorem hypothesis predicates evaluated on a model and coefficient set.

use serde::Serialize;

use crate::bounds::brmu_check;
use crate::error::{domain, Result};
use crate::grid::RadialGrid;
use crate::model::ModelManifold;
use crate::nonlinearity::{ratio_bounds, CoefficientSet};
use crate::solver::Check;
use crate::spectral::{dirichlet_eigen, lambda1_bounded_set, spectral_profile, zero_set};

/// Grid intervals used for the eigenvalue predicates.
pub const EIGEN_N: usize = 400;

#[derive(Debug, Clone, Serialize)]
pub struct PredicateTable {
    pub theorem: String,
    pub predicates: Vec<Check>,
    pub all_hold: bool,
}

impl PredicateTable {
    fn new(theorem: &str, predicates: Vec<Check>) -> Self {
        let all_hold = predicates.iter().all(|c| c.holds);
        PredicateTable { theorem: theorem.into(), predicates, all_hold }
    }
}

fn sign_check(name: &str, v: &[f64]) -> Check {
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    Check::new(format!("{name}≥0"), min >= 0.0, min, format!("min {name} on the grid"))
}

/// (Bo>0)/(hp1thmB): λ₁^{Δ+a}(B₀) > 0 for the zero set of b.
fn b0_check(model: &ModelManifold, coeffs: &CoefficientSet, grid: &RadialGrid, name: &str) -> Result<Check> {
    let b = coeffs.b.sample_finite(grid, "b")?;
    let set = zero_set(&b, grid);
    let lam = lambda1_bounded_set(model, &coeffs.a, set, EIGEN_N)?;
    Ok(Check::new(name, lam > 0.0, lam, format!("λ₁^(Δ+a)(B₀), B₀ = {set:?}")))
}

/// Theorem A: sign conditions, b > 0 outside a compact set, (Bo>0) and (hpthmA).
pub fn theorem_a_predicates(model: &ModelManifold, coeffs: &CoefficientSet, n: usize) -> Result<PredicateTable> {
    let r = model.r_max();
    let grid = RadialGrid::ball(r, n)?;
    let s = coeffs.sample(&grid)?;
    let mut p = vec![sign_check("b", &s.b), sign_check("c", &s.c)];
    let tail = &s.b[n - n / 10..];
    let tail_min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    p.push(Check::new("b>0 outside a compact", tail_min > 0.0, tail_min, "min b on [0.9 R, R]"));
    p.push(b0_check(model, coeffs, &grid, "Bo>0")?);
    let radii: Vec<f64> = [0.125, 0.25, 0.5, 1.0].iter().map(|f| f * r).collect();
    let prof = spectral_profile(model, &coeffs.a, &radii, (n / 8).max(16))?;
    p.push(Check::new(
        "hpthmA",
        prof.negative_evidence,
        prof.limit_estimate,
        format!("λ₁^L(B_R) along {:?}: {:?}, discretization error {:.2e}", radii, prof.eigenvalues, prof.discretization_error),
    ));
    Ok(PredicateTable::new("theorem_a", p))
}

/// Theorem B with Ω₁ = B_{r₁}, Ω₂ = B_{r₂}.
pub fn theorem_b_predicates(model: &ModelManifold, coeffs: &CoefficientSet, r1: f64, r2: f64, n: usize) -> Result<PredicateTable> {
    let r = model.r_max();
    if !(0.0 < r1 && r1 < r2 && r2 < r) {
        return Err(domain(format!("need 0 < r₁ < r₂ < R_max, got r₁ = {r1}, r₂ = {r2}")));
    }
    let grid = RadialGrid::ball(r, n)?;
    let s = coeffs.sample(&grid)?;
    let mut p = vec![sign_check("b", &s.b), sign_check("c", &s.c)];
    p.push(b0_check(model, coeffs, &grid, "hp1thmB")?);
    let c0 = zero_set(&s.c, &grid);
    let inside = c0.is_empty() || c0.outer_radius() < r1;
    p.push(Check::new("C₀⊂Ω₁", inside, c0.outer_radius(), format!("C₀ = {c0:?}, Ω₁ = B_{r1}")));
    let mut mu: f64 = 0.0;
    for i in 0..=n {
        if grid.r(i) > r1 {
            let num = (-s.a[i]).max(0.0) + s.b[i];
            mu = mu.max(if s.c[i] > 0.0 { num / s.c[i] } else if num > 0.0 { f64::INFINITY } else { 0.0 });
        }
    }
    p.push(Check::new("hp2thmB", mu.is_finite(), mu, "sup over M∖Ω̄₁ of (a₋ + b)/c"));
    let g2 = RadialGrid::ball(r2, EIGEN_N)?;
    let neg_a: Vec<f64> = coeffs.a.sample_finite(&g2, "a")?.iter().map(|x| -x).collect();
    let lam = dirichlet_eigen(model, &neg_a, &g2)?.lambda1;
    p.push(Check::new("hp3thmB", lam > 0.0, lam, format!("λ₁^(Δ−a)(B_{r2})")));
    Ok(PredicateTable::new("theorem_b", p))
}

/// The bilateral a priori bound: (acb), (abc), (brmu) for b and c, (Bvol).
pub fn bilateral_predicates(model: &ModelManifold, coeffs: &CoefficientSet, n: usize) -> Result<PredicateTable> {
    let grid = RadialGrid::ball(model.r_max(), n)?;
    let s = coeffs.sample(&grid)?;
    let rb = ratio_bounds(coeffs, &grid)?;
    let bmin = s.b.iter().cloned().fold(f64::INFINITY, f64::min);
    let cmin = s.c.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut p = vec![
        Check::new("b>0", bmin > 0.0, bmin, "min b"),
        Check::new("c>0", cmin > 0.0, cmin, "min c"),
        Check::new("acb", rb.h.is_finite(), rb.h, "H = sup (a₊ + c)/b"),
        Check::new("abc", rb.k.is_finite(), rb.k, "K = sup (a₋ + b)/c"),
    ];
    let bb = brmu_check("b", &s.b, &grid);
    let bc = brmu_check("c", &s.c, &grid);
    let mu = bb.value.max(bc.value);
    p.push(bb);
    p.push(bc);
    let mu = if mu.is_finite() { mu.clamp(0.0, 1.999) } else { 0.0 };
    let v = model.volume_growth_check(mu)?;
    p.push(Check::new("Bvol", v.finite, v.liminf_estimate, format!("μ = {mu:.4}, {:?}", v.growth_class)));
    Ok(PredicateTable::new("bilateral_bound", p))
}

/// Comparison outside Ω = B_{r_omega}: (hpcomp) i)–iv).
pub fn comparison_predicates(model: &ModelManifold, coeffs: &CoefficientSet, r_omega: f64, n: usize) -> Result<PredicateTable> {
    let grid = RadialGrid::ball(model.r_max(), n)?;
    let s = coeffs.sample(&grid)?;
    let outside: Vec<usize> = (0..=n).filter(|&i| grid.r(i) >= r_omega).collect();
    let bmin = outside.iter().map(|&i| s.b[i]).fold(f64::INFINITY, f64::min);
    let cmin = outside.iter().map(|&i| s.c[i]).fold(f64::INFINITY, f64::min);
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else if num > 0.0 { f64::INFINITY } else { 0.0 };
    let am = (0..=n).map(|i| ratio((-s.a[i]).max(0.0), s.b[i])).fold(0.0, f64::max);
    let cb = (0..=n).map(|i| ratio(s.c[i], s.b[i])).fold(0.0, f64::max);
    let p = vec![
        Check::new("hpcomp i", bmin > 0.0, bmin, format!("min b on M∖B_{r_omega}")),
        Check::new("hpcomp ii", cmin >= 0.0, cmin, format!("min c on M∖B_{r_omega}")),
        Check::new("hpcomp iii", am.is_finite(), am, "sup a₋/b"),
        Check::new("hpcomp iv", cb.is_finite(), cb, "sup c/b"),
    ];
    Ok(PredicateTable::new("comparison", p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RadialField;

    #[test]
    fn pinched_tables() {
        let model = ModelManifold::euclidean(3, 8.0).unwrap();
        let c = CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0).unwrap();
        assert!(bilateral_predicates(&model, &c, 400).unwrap().all_hold);
        assert!(comparison_predicates(&model, &c, 1.0, 400).unwrap().all_hold);
        // a ≡ 0 gives λ₁ ≥ 0, so (hpthmA) fails
        let a = theorem_a_predicates(&model, &c, 400).unwrap();
        assert!(!a.all_hold);
        assert!(!a.predicates.iter().find(|p| p.name == "hpthmA").unwrap().holds);
    }

    #[test]
    fn theorem_b_table() {
        let model = ModelManifold::euclidean(3, 4.0).unwrap();
        let c = CoefficientSet::new(
            RadialField::constant(1.0),
            RadialField::constant(1.0),
            RadialField::parse("min(1, max(r - 0.5, 0))").unwrap(),
            3.0,
            -1.0,
        )
        .unwrap();
        let t = theorem_b_predicates(&model, &c, 1.0, 2.0, 400).unwrap();
        assert!(t.all_hold, "{:#?}", t.predicates);
        let t = theorem_b_predicates(&model, &c, 0.4, 2.0, 400).unwrap();
        assert!(!t.all_hold);
    }
}
