//! JSON experiment configs and their validation.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use diskapprox::descriptor::{EmbeddingSpecFile, SpaceDescriptor, TriangularArrayFile};
use diskapprox::diagnostics::gliding_hump;
use diskapprox::embedding::CoefficientRule;
use diskapprox::poly::TaylorPoly;
use diskapprox::schemes::{Scheme, TriangularArray};
use diskapprox::spaces::SpaceHandle;
use diskapprox::C64;

use crate::CliError;

/// Scheme selector: a builtin name or a triangular-array file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SchemeConfig {
    Builtin(String),
    ArrayFile { array_file: PathBuf },
}

impl SchemeConfig {
    /// Resolves the scheme; `rows` bounds the builtin array sizes.
    pub fn build(
        &self,
        space: &SpaceHandle<f64>,
        rows: usize,
        base_dir: &Path,
    ) -> Result<Scheme<f64>, CliError> {
        match self {
            Self::Builtin(name) => match name.as_str() {
                "partial" => Ok(Scheme::PartialSum),
                "cesaro" => Ok(Scheme::Cesaro),
                "vallee-poussin" => Ok(Scheme::Array(TriangularArray::vallee_poussin(rows))),
                "projection" => Ok(Scheme::GramProjection(space.clone())),
                other => Err(CliError::Config(format!(
                    "field `scheme`: unknown builtin `{other}` (expected partial, cesaro, vallee-poussin, projection, or an array file)"
                ))),
            },
            Self::ArrayFile { array_file } => {
                let path = resolve(base_dir, array_file);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::Config(format!(
                        "field `scheme.array_file`: cannot read {}: {e}",
                        path.display()
                    ))
                })?;
                let file: TriangularArrayFile<f64> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("field `scheme.array_file`: {e}")))?;
                Ok(Scheme::Array(file.build().map_err(|e| {
                    CliError::Config(format!("field `scheme.array_file`: {e}"))
                })?))
            }
        }
    }
}

/// One input function for a scheme run.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InputConfig {
    Coeffs { coeffs: Vec<[f64; 2]> },
    Geometric { ratio: [f64; 2], degree: usize },
    GlidingHump { blocks: usize, base_degree: usize },
}

impl InputConfig {
    pub fn label(&self, index: usize) -> String {
        match self {
            Self::Coeffs { .. } => format!("{index}:coeffs"),
            Self::Geometric { .. } => format!("{index}:geometric"),
            Self::GlidingHump {
                blocks,
                base_degree,
            } => format!("{index}:hump({blocks};{base_degree})"),
        }
    }

    /// Realizes the input; hump construction is capped at the space horizon.
    pub fn build(&self, max_degree: usize) -> Result<TaylorPoly<f64>, CliError> {
        match self {
            Self::Coeffs { coeffs } => {
                TaylorPoly::new(coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect())
                    .map_err(CliError::runtime)
            }
            Self::Geometric { ratio, degree } => {
                let rule = CoefficientRule::Geometric {
                    ratio: C64::new(ratio[0], ratio[1]),
                };
                Ok(rule.truncate(*degree))
            }
            Self::GlidingHump {
                blocks,
                base_degree,
            } => Ok(gliding_hump(*blocks, *base_degree, max_degree)
                .map_err(CliError::runtime)?
                .poly),
        }
    }
}

/// Config for `scheme-run`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeRunConfig {
    pub space: SpaceDescriptor<f64>,
    pub scheme: SchemeConfig,
    pub inputs: Vec<InputConfig>,
    pub n_max: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Per-`n` operator-norm trials; 0 leaves the opnorm columns empty.
    #[serde(default)]
    pub opnorm_trials: usize,
}

/// Config for `norms`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormsConfig {
    pub space: SpaceDescriptor<f64>,
    pub n_max: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// Membership target inside an `embed` config.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipTarget {
    pub rule: RuleConfig,
    pub radius: f64,
}

/// Coefficient rule selector.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RuleConfig {
    Geometric { ratio: [f64; 2] },
    Monomial { degree: usize },
    Coeffs { coeffs: Vec<[f64; 2]> },
}

impl RuleConfig {
    pub fn build(&self) -> Result<CoefficientRule<f64>, CliError> {
        Ok(match self {
            Self::Geometric { ratio } => CoefficientRule::Geometric {
                ratio: C64::new(ratio[0], ratio[1]),
            },
            Self::Monomial { degree } => CoefficientRule::Monomial { degree: *degree },
            Self::Coeffs { coeffs } => CoefficientRule::Explicit(
                TaylorPoly::new(coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect())
                    .map_err(|e| CliError::Config(format!("field `rule.coeffs`: {e}")))?,
            ),
        })
    }

    pub fn label(&self) -> String {
        match self {
            Self::Geometric { ratio } => format!("geometric({};{})", ratio[0], ratio[1]),
            Self::Monomial { degree } => format!("monomial({degree})"),
            Self::Coeffs { coeffs } => format!("coeffs(len={})", coeffs.len()),
        }
    }
}

/// Config for `embed`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedConfig {
    pub spec: EmbeddingSpecFile<f64>,
    #[serde(default)]
    pub r_list: Vec<f64>,
    #[serde(default)]
    pub membership: Vec<MembershipTarget>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_samples() -> usize {
    200
}

pub fn resolve(base_dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base_dir.join(path)
    }
}

/// Loads and parses a JSON config file.
pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config error: {e}")))
}
