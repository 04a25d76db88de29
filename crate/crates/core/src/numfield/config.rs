//! JSON description of a context.
//!
//! ```json
//! {"beta": {"minpoly": [-3, 1]}, "digits": [[0], [1], [3]], "precision": 12}
//! {"beta": "transcendental", "digits": [[0], [1], [0, 1]], "names": ["0", "P", "Q"]}
//! ```

use serde::{Deserialize, Serialize};

use super::{make_context, BetaContext, BetaSpec, ContextError, ContextOptions, DEFAULT_PRECISION};
use crate::poly::IntPoly;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed context config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown beta kind {0:?} (expected \"transcendental\")")]
    BetaKind(String),
    #[error("precision must be between 1 and 1000 digits, got {0}")]
    Precision(u32),
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaField {
    MinPoly { minpoly: IntPoly },
    Kind(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextConfig {
    pub beta: BetaField,
    pub digits: Vec<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl ContextConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn beta_spec(&self) -> Result<BetaSpec, ConfigError> {
        match &self.beta {
            BetaField::MinPoly { minpoly } => Ok(BetaSpec::MinPoly(minpoly.clone())),
            BetaField::Kind(k) if k == "transcendental" => Ok(BetaSpec::Transcendental),
            BetaField::Kind(k) => Err(ConfigError::BetaKind(k.clone())),
        }
    }

    /// Build the context, with `precision` overriding the document's value.
    pub fn build(&self, precision: Option<u32>) -> Result<BetaContext, ConfigError> {
        let precision = precision.or(self.precision).unwrap_or(DEFAULT_PRECISION);
        if precision == 0 || precision > 1000 {
            return Err(ConfigError::Precision(precision));
        }
        let options = ContextOptions { precision, names: self.names.clone() };
        Ok(make_context(&self.beta_spec()?, &self.digits, &options)?)
    }
}

/// Parse and build in one step.
pub fn load_context(text: &str) -> Result<BetaContext, ConfigError> {
    ContextConfig::parse(text)?.build(None)
}
