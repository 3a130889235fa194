//! Ratings data, holdout splits, and the weighted nonnegative matrix
//! factorization that supplies relevance, similarity and item features.

mod ratings;
mod synthetic;
mod wnmf;

pub use ratings::{
    load_ratings, popularity, split_holdout, HoldoutSplit, PopularityTable, Rating,
    RatingsDataset, RatingsFormat,
};
pub use synthetic::{synthetic_ratings, SyntheticConfig};
pub use wnmf::{factorize_wnmf, FactorModel, FeatureMatrix, WnmfConfig};
