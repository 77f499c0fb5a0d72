//! Run configuration: one JSON document per run.

use std::path::{Path, PathBuf};

use lichnerowicz::model::riccati_warping;
use lichnerowicz::{CoefficientSet, ModelManifold, RadialField, WarpingFunction};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoeffSpec>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// euclidean, hyperbolic, riccati or tabulated.
    pub kind: String,
    pub m: usize,
    pub r_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    /// Curvature k of g = sinh(√k r)/√k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<f64>,
    /// F in g'' = F g, for kind = riccati.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub riccati: Option<String>,
    /// CSV with r,g columns, for kind = tabulated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// A number, an expression in r, or {"csv": path} with r,value columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Number(f64),
    Expr(String),
    Csv { csv: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffSpec {
    pub a: FieldSpec,
    pub b: FieldSpec,
    pub c: FieldSpec,
    pub sigma: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    /// constant, theorem_a, theorem_b or auto.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsolution: Option<String>,
    /// A solution CSV (r,u) for `bounds`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_tilde: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// kappa, constant, euler or super_euler.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dbeta0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub green_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_omega: Option<f64>,
    /// a, b, bilateral, comparison or all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
}

/// A parsed config together with the directory its relative paths resolve against.
pub struct Loaded {
    pub config: RunConfig,
    pub base: PathBuf,
}

pub fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

impl Loaded {
    pub fn from_path(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        let config: RunConfig =
            serde_json::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let loaded = Loaded { config, base };
        loaded.validate()?;
        Ok(loaded)
    }

    pub fn empty() -> Self {
        Loaded { config: RunConfig { model: None, coefficients: None, params: Params::default(), out: None, seed: None }, base: PathBuf::new() }
    }

    fn validate(&self) -> Result<(), Failure> {
        if let Some(c) = &self.config.coefficients {
            if !(c.sigma > 1.0) {
                return Err(config_error(format!("sigma = {} violates sigma > 1 required of the equation's absorption exponent", c.sigma)));
            }
            if !(c.tau < 1.0) {
                return Err(config_error(format!("tau = {} violates tau < 1 required of the equation's source exponent", c.tau)));
            }
        }
        if let Some(m) = &self.config.model {
            if m.m < 2 {
                return Err(config_error(format!("dimension m = {} must be at least 2", m.m)));
            }
            if !(m.r_max > 0.0 && m.r_max.is_finite()) {
                return Err(config_error(format!("r_max = {} must be positive and finite", m.r_max)));
            }
        }
        Ok(())
    }

    fn resolve(&self, p: &str) -> PathBuf {
        let path = Path::new(p);
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base.join(path)
        }
    }

    pub fn grid_n(&self) -> usize {
        self.config.model.as_ref().and_then(|m| m.grid_n).unwrap_or(lichnerowicz::grid::DEFAULT_N)
    }

    pub fn model(&self) -> Result<ModelManifold, Failure> {
        let spec = self.config.model.as_ref().ok_or_else(|| config_error("this command needs a \"model\" section"))?;
        let warping = match spec.kind.as_str() {
            "euclidean" => WarpingFunction::Euclidean,
            "hyperbolic" => WarpingFunction::hyperbolic(spec.curvature.unwrap_or(1.0))?,
            "riccati" => {
                let src = spec.riccati.as_deref().ok_or_else(|| config_error("kind riccati needs \"riccati\": F(r)"))?;
                riccati_warping(&RadialField::parse(src)?, spec.r_max, 4 * self.grid_n())?
            }
            "tabulated" => {
                let p = spec.path.as_deref().ok_or_else(|| config_error("kind tabulated needs \"path\""))?;
                let (r, g) = lichnerowicz::field::read_two_columns(&self.resolve(p))?;
                WarpingFunction::tabulated(r, g)?
            }
            other => return Err(config_error(format!("unknown model kind {other:?}"))),
        };
        Ok(ModelManifold::new(spec.m, warping, spec.r_max)?)
    }

    fn field(&self, spec: &FieldSpec) -> Result<RadialField, Failure> {
        Ok(match spec {
            FieldSpec::Number(x) => RadialField::constant(*x),
            FieldSpec::Expr(s) => RadialField::parse(s)?,
            FieldSpec::Csv { csv } => RadialField::from_csv(&self.resolve(csv))?,
        })
    }

    pub fn coefficients(&self) -> Result<CoefficientSet, Failure> {
        let c = self.config.coefficients.as_ref().ok_or_else(|| config_error("this command needs a \"coefficients\" section"))?;
        Ok(CoefficientSet::new(self.field(&c.a)?, self.field(&c.b)?, self.field(&c.c)?, c.sigma, c.tau)?)
    }

    pub fn solution_path(&self) -> Option<PathBuf> {
        self.config.params.solution.as_deref().map(|p| self.resolve(p))
    }

    /// SHA-256 of the canonical serialization, after command-line overrides.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.config).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}
