use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::algebra::AlgebraParams;
use crate::grid::GridSpec;
use crate::pde::MIN_BIWAVE_POINTS;
use crate::synthesis::SolutionSpec;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_ORDER_RANGE: (f64, f64) = (1.3, 2.7);

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_order_min() -> f64 {
    DEFAULT_ORDER_RANGE.0
}

fn default_order_max() -> f64 {
    DEFAULT_ORDER_RANGE.1
}

/// Options for `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyOptions {
    /// Bound on the scaled max interior residual.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Number of grid levels for the convergence-order check; 0 or 1 disables it.
    #[serde(default)]
    pub refine: u32,
    #[serde(default = "default_order_min")]
    pub order_min: f64,
    #[serde(default = "default_order_max")]
    pub order_max: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            refine: 0,
            order_min: DEFAULT_ORDER_RANGE.0,
            order_max: DEFAULT_ORDER_RANGE.1,
        }
    }
}

/// The JSON run configuration: `{"c": .., "grid": {..}, "solution": {..}, "verify": {..}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub c: f64,
    pub grid: GridSpec,
    pub solution: SolutionSpec,
    #[serde(default)]
    pub verify: VerifyOptions,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Invalid(format!("invalid config at `{path}`: {}", e.into_inner()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let p = AlgebraParams::new(self.c).map_err(|e| CliError::Invalid(format!("`c`: {e}")))?;
        self.grid
            .validate(MIN_BIWAVE_POINTS)
            .map_err(|e| CliError::Invalid(format!("`grid`: {e}")))?;
        if self.solution.regime() != p.regime() {
            return Err(CliError::Invalid(format!(
                "`solution.type`: a {} solution block does not match c = {} ({} regime)",
                self.solution.regime(),
                self.c,
                p.regime()
            )));
        }
        self.solution
            .validate()
            .map_err(|e| CliError::Invalid(format!("`solution`: {e}")))?;
        let v = &self.verify;
        if !(v.tolerance > 0.0) {
            return Err(CliError::Invalid(format!(
                "`verify.tolerance`: must be positive, got {}",
                v.tolerance
            )));
        }
        if !(v.order_min < v.order_max) {
            return Err(CliError::Invalid(
                "`verify.order_min` must be below `verify.order_max`".into(),
            ));
        }
        Ok(())
    }
}
