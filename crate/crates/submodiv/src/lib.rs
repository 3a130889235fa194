//! Submodular re-ranking toolkit.
//!
//! Most published re-ranking objectives for recommendation diversification
//! share one shape: a modular relevance part plus concave (or linear)
//! transforms of modular diversity masses. This crate implements that class
//! directly:
//!
//! - [`objective`]: the composite objective, the MMR form, and the
//!   [`objective::SetFunction`] trait everything else consumes;
//! - [`catalog`]: builders for the published algorithms (MMR, TANGENT,
//!   PPT, set-category, binomial/interest coverage, neighbour coverage,
//!   intent-aware);
//! - [`structure`]: exhaustive submodularity/modularity/monotonicity
//!   checking on small ground sets;
//! - [`greedy`] and [`oracle`]: steepest-ascent and lazy greedy under a
//!   cardinality budget, plus the brute-force optimum for small instances;
//! - [`curvature`]: total curvature, the `(1/a)(1 - e^-a)` guarantee, and
//!   hyperparameter-to-curvature sweeps;
//! - [`data`]: ratings ingestion, holdout splits, weighted NMF factors,
//!   similarity/popularity derivation, and a seeded synthetic generator;
//! - [`metrics`]: DCG, serendipity score and feature distance;
//! - [`experiment`]: the end-to-end pipeline behind the `submodiv` binary.
//!
//! The `examples/` directory walks through each capability; start with
//! `cargo run --example greedy_vs_oracle`.

pub mod catalog;
pub mod curvature;
pub mod data;
pub mod error;
pub mod experiment;
pub mod greedy;
pub mod metrics;
pub mod modular;
pub mod objective;
pub mod oracle;
pub mod set;
pub mod structure;
pub mod transform;

pub use catalog::{build_objective, Algorithm, BuiltObjective, ObjectiveInputs, ObjectiveSpec};
pub use curvature::{
    approximation_bound, certify, curvature_sweep, total_curvature, BoundCertificate,
    CurvatureReport, SweepRow,
};
pub use error::{Error, Result};
pub use greedy::{greedy_maximize, lazy_greedy_maximize, GreedyTrace};
pub use modular::ModularFunction;
pub use objective::{
    CompositeObjective, DiversityTerm, MmrObjective, SetFunction, SimilarityMatrix,
};
pub use oracle::{brute_force_maximize, brute_force_maximize_with, OracleMode, OracleResult};
pub use set::{GroundSet, ItemId, ItemSet};
pub use structure::{check_structure, check_structure_with_limit, StructureVerdict};
pub use transform::ConcaveTransform;
