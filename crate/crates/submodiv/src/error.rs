//! Error types shared across the crate.

use crate::set::ItemId;
use thiserror::Error;

/// Errors surfaced by objectives, optimizers, curvature analysis and data
/// handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar transform was evaluated outside its domain, e.g. `log(x)`
    /// at `x <= 0` on a nonempty set. Signals a mis-specified objective.
    #[error("{transform} evaluated outside its domain at x = {x}")]
    Domain { transform: &'static str, x: f64 },

    /// The item is already a member of the set.
    #[error("item {0} is already in the set")]
    DuplicateItem(ItemId),

    /// An exhaustive enumeration would exceed the configured limit.
    #[error("enumeration of {needed} sets exceeds the limit of {limit}")]
    TooLarge { needed: u128, limit: u128 },

    /// The cardinality budget exceeds the candidate pool.
    #[error("budget k = {k} exceeds the {candidates} available candidates")]
    BudgetTooLarge { k: usize, candidates: usize },

    /// An objective builder was not given a required data input.
    #[error("missing input `{0}` for objective construction")]
    MissingInput(&'static str),

    /// A hyperparameter lies outside the domain of its transform or builder.
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// Curvature value outside [0, 1].
    #[error("alpha = {0} is outside [0, 1]")]
    OutOfRange(f64),

    /// Every singleton of the reference set evaluates to zero, so the
    /// curvature ratio is undefined everywhere.
    #[error("every singleton value is zero; total curvature is undefined")]
    AllItemsDegenerate,

    /// The monotonicity premise of the curvature definition fails.
    #[error("function is not monotone non-decreasing: F({smaller:?}) > F({larger:?})")]
    NotMonotone {
        smaller: Vec<ItemId>,
        larger: Vec<ItemId>,
    },

    /// Curvature requires a normalized function, F(empty) = 0.
    #[error("objective is not normalized: F(empty set) = {0}")]
    NotNormalized(f64),

    /// A data file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The input contained no usable ratings.
    #[error("dataset is empty")]
    EmptyDataset,

    /// Holdout fraction outside (0, 1).
    #[error("holdout fraction {0} is outside (0, 1)")]
    FractionOutOfRange(f64),

    /// The factorization loss became NaN or infinite.
    #[error("non-finite loss at iteration {iteration}; check reg/weight configuration")]
    NonFiniteLoss { iteration: usize },

    /// The requested user index does not exist in the model.
    #[error("unknown user {0}")]
    UnknownUser(usize),

    /// A metric is undefined for the given inputs (reported as missing,
    /// never as zero).
    #[error("metric undefined: {0}")]
    Undefined(&'static str),

    /// Pairwise metrics need at least two items.
    #[error("need at least two items, got {0}")]
    TooFewItems(usize),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
