//! Bundled scenarios shared by the acceptance suite, the CLI configs and the browser demo.

use crate::error::Result;
use crate::field::RadialField;
use crate::model::ModelManifold;
use crate::nonlinearity::CoefficientSet;

pub const THEOREM_A_A: &str = "80*max(0, min(r - 1, 2 - r))";
pub const THEOREM_A_B: &str = "max(r - 0.25, 0)";
pub const THEOREM_A_RADII: [f64; 3] = [2.0, 4.0, 8.0];

pub const THEOREM_B_C: &str = "min(1, max(r - 0.5, 0))";
pub const THEOREM_B_R1: f64 = 1.0;
pub const THEOREM_B_R2: f64 = 2.0;

/// a ≡ 0, b ≡ c ≡ 1, σ = 3, τ = −1 on Euclidean 3-space: u ≡ 1 solves it.
pub fn pinched(r_max: f64) -> Result<(ModelManifold, CoefficientSet)> {
    Ok((ModelManifold::euclidean(3, r_max)?, CoefficientSet::constant(0.0, 1.0, 1.0, 3.0, -1.0)?))
}

/// A tent of height 40 on the annulus 1 < r < 2 makes λ₁(Δ + a) negative; b vanishes on B_{1/4}.
pub fn theorem_a() -> Result<(ModelManifold, CoefficientSet)> {
    let coeffs = CoefficientSet::new(
        RadialField::parse(THEOREM_A_A)?,
        RadialField::parse(THEOREM_A_B)?,
        RadialField::constant(1.0),
        3.0,
        -1.0,
    )?;
    Ok((ModelManifold::euclidean(3, 8.0)?, coeffs))
}

/// a ≡ b ≡ 1, c vanishing on B_{1/2} ⊂ Ω₁ = B_1, Ω₂ = B_2.
pub fn theorem_b() -> Result<(ModelManifold, CoefficientSet)> {
    let coeffs = CoefficientSet::new(
        RadialField::constant(1.0),
        RadialField::constant(1.0),
        RadialField::parse(THEOREM_B_C)?,
        3.0,
        -1.0,
    )?;
    Ok((ModelManifold::euclidean(3, 4.0)?, coeffs))
}
