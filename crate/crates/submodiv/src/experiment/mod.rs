//! End-to-end experiment orchestration: configuration, the pipeline stages
//! behind each CLI subcommand, and their CSV/JSON report formats.

mod pipeline;

pub use pipeline::{
    random_modular_instance, random_submodular_instance, run_curvature, run_evaluate,
    run_factorize, run_ingest, run_oracle_check, run_rerank, run_sweep, EvaluateReport,
    FactorizeSummary, IngestSummary, OracleCheckReport, OracleInstanceResult, RerankReport,
    SelectedItem, SweepFailure, SweepRecord, SweepReport,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Full experiment configuration. Loadable from a TOML file; every field has
/// a default so partial files work, and the CLI exposes a flag per key.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct ExperimentConfig {
    pub data: DataConfig,
    pub split: SplitConfig,
    pub wnmf: WnmfSection,
    pub objective: ObjectiveConfig,
    pub rerank: RerankConfig,
    pub sweep: SweepConfig,
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct DataConfig {
    /// Ratings file. Empty means "generate the built-in synthetic dataset".
    pub path: String,
    /// `csv` or `movielens-dat`; inferred from the extension when empty.
    pub format: String,
    /// Seed for the synthetic dataset when no path is given.
    pub synthetic_seed: u64,
    /// Number of ratings for the synthetic dataset.
    pub synthetic_ratings: usize,
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig {
            path: String::new(),
            format: String::new(),
            synthetic_seed: 13,
            synthetic_ratings: 100_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitConfig {
    pub fraction: f64,
    pub n_splits: usize,
    pub seed: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig { fraction: 0.05, n_splits: 5, seed: 42 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct WnmfSection {
    pub rank: usize,
    pub reg: f64,
    pub unobserved_weight: f64,
    pub iters: usize,
    pub seed: u64,
}

impl Default for WnmfSection {
    fn default() -> Self {
        WnmfSection { rank: 32, reg: 0.1, unobserved_weight: 0.05, iters: 200, seed: 7 }
    }
}

impl WnmfSection {
    pub fn to_config(&self, seed_offset: u64) -> crate::data::WnmfConfig {
        crate::data::WnmfConfig {
            rank: self.rank,
            reg: self.reg,
            unobserved_weight: self.unobserved_weight,
            iters: self.iters,
            seed: self.seed + seed_offset,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct ObjectiveConfig {
    /// One of the catalog algorithm names, e.g. `interest-coverage`.
    pub algorithm: String,
    pub lambda: f64,
    pub lambda_grid: Vec<f64>,
    /// Strongest factor loadings kept per item when deriving interest
    /// groups; 0 keeps all of them (then the lambda = 1 objective ranks by
    /// exact predicted relevance).
    pub groups_per_item: usize,
}

impl Default for ObjectiveConfig {
    fn default() -> Self {
        ObjectiveConfig {
            algorithm: "interest-coverage".into(),
            lambda: 0.5,
            lambda_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            groups_per_item: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RerankConfig {
    pub k: usize,
    pub k_grid: Vec<usize>,
}

impl Default for RerankConfig {
    fn default() -> Self {
        RerankConfig { k: 10, k_grid: vec![5, 10, 20] }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    /// Users sampled per split.
    pub users: usize,
    pub seed: u64,
    /// Minimum training ratings for a user to be sampled.
    pub min_train_ratings: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { users: 200, seed: 99, min_train_ratings: 5 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub dir: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: "out".into() }
    }
}

impl ExperimentConfig {
    /// Parses a TOML config file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)
            .map_err(|e| Error::BadParameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.split.fraction > 0.0 && self.split.fraction < 1.0) {
            return Err(Error::FractionOutOfRange(self.split.fraction));
        }
        if self.split.n_splits < 1 {
            return Err(Error::BadParameter("split.n_splits must be >= 1".into()));
        }
        if self.rerank.k < 1 || self.rerank.k_grid.iter().any(|&k| k < 2) {
            return Err(Error::BadParameter(
                "rerank.k must be >= 1 and k_grid entries >= 2 (feature distance needs pairs)"
                    .into(),
            ));
        }
        if self.sweep.users < 1 {
            return Err(Error::BadParameter("sweep.users must be >= 1".into()));
        }
        self.algorithm()?;
        Ok(())
    }

    pub fn algorithm(&self) -> Result<crate::catalog::Algorithm> {
        self.objective.algorithm.parse()
    }

    pub fn output_dir(&self) -> PathBuf {
        PathBuf::from(&self.output.dir)
    }
}
