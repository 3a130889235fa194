//! Ranking and diversity metrics: discounted cumulative gain, serendipity
//! score, feature distance. All pure functions.

use crate::data::{FeatureMatrix, PopularityTable};
use crate::error::{Error, Result};
use crate::set::{ItemId, ItemSet};
use serde::Serialize;
use std::collections::HashSet;

/// Binary DCG over the first `k` positions:
/// `sum_p rel_p / log2(p + 1)` with `rel_p = 1` iff the item at position `p`
/// (1-based) is in `relevant`. Evaluation truncates at
/// `min(k, ranked.len())`.
pub fn dcg_at_k(ranked: &ItemSet, relevant: &HashSet<ItemId>, k: usize) -> f64 {
    ranked
        .iter()
        .take(k)
        .enumerate()
        .filter(|(_, id)| relevant.contains(id))
        .map(|(idx, _)| 1.0 / ((idx + 2) as f64).log2())
        .sum()
}

/// The largest DCG `k` relevant items can reach.
pub fn ideal_dcg(k: usize) -> f64 {
    (1..=k).map(|p| 1.0 / ((p + 1) as f64).log2()).sum()
}

/// Serendipity outcome: the inverse mean popularity together with how many
/// zero-popularity items had to be left out of the mean.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Serendipity {
    pub score: f64,
    /// Recommended-and-unrated items with a zero popularity count, excluded
    /// from the mean.
    pub zero_popularity_excluded: usize,
    /// Items the mean was taken over.
    pub considered: usize,
}

/// Inverse of the average popularity of the recommended items not yet rated
/// by the user. Undefined (an error, never zero) when no recommended item is
/// unrated or all unrated ones have zero popularity.
pub fn serendipity_score(
    recommended: &ItemSet,
    user_rated: &HashSet<ItemId>,
    pop: &PopularityTable,
) -> Result<Serendipity> {
    let unrated: Vec<ItemId> = recommended.iter().filter(|id| !user_rated.contains(id)).collect();
    if unrated.is_empty() {
        return Err(Error::Undefined("every recommended item is already rated"));
    }
    let mut total = 0u64;
    let mut considered = 0usize;
    let mut excluded = 0usize;
    for id in &unrated {
        let c = pop.count(id.0);
        if c == 0 {
            excluded += 1;
        } else {
            total += c;
            considered += 1;
        }
    }
    if considered == 0 {
        return Err(Error::Undefined("all unrated recommendations have zero popularity"));
    }
    let mean = total as f64 / considered as f64;
    Ok(Serendipity {
        score: 1.0 / mean,
        zero_popularity_excluded: excluded,
        considered,
    })
}

/// Mean Euclidean distance over all unordered pairs of recommended items'
/// feature vectors.
pub fn feature_distance(recommended: &ItemSet, features: &FeatureMatrix) -> Result<f64> {
    let ids: Vec<ItemId> = recommended.iter().collect();
    if ids.len() < 2 {
        return Err(Error::TooFewItems(ids.len()));
    }
    let mut total = 0.0;
    let mut pairs = 0usize;
    for (a, &i) in ids.iter().enumerate() {
        for &j in ids.iter().skip(a + 1) {
            let xi = features.row(i.index());
            let xj = features.row(j.index());
            let dist: f64 = xi
                .iter()
                .zip(xj)
                .map(|(p, q)| (p - q) * (p - q))
                .sum::<f64>()
                .sqrt();
            total += dist;
            pairs += 1;
        }
    }
    Ok(total / pairs as f64)
}

/// Metrics of one recommendation list for one user.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluationReport {
    pub user: usize,
    pub k: usize,
    pub dcg: f64,
    /// Missing when the serendipity score is undefined for this list.
    pub serendipity: Option<f64>,
    pub feature_distance: f64,
}
