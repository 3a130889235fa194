//! The three list metrics on worked toy inputs.
//!
//! Run: `cargo run --example evaluation_metrics`

use std::collections::HashSet;
use submodiv::data::PopularityTable;
use submodiv::metrics::{dcg_at_k, feature_distance, ideal_dcg, serendipity_score, FeatureMatrix};
use submodiv::{ItemId, ItemSet};

fn main() {
    // DCG: binary gains, log2 position discount
    let ranked: ItemSet = [7u32, 3, 9, 1].into_iter().collect();
    let relevant: HashSet<ItemId> = [ItemId(7), ItemId(9)].into_iter().collect();
    let dcg = dcg_at_k(&ranked, &relevant, 4);
    println!("dcg@4 of pattern [1, 0, 1, 0]: {dcg:.4} (ideal {ideal:.4})", ideal = ideal_dcg(4));

    // serendipity: inverse mean popularity of the unrated recommendations
    let pop = PopularityTable::from_counts(vec![40, 4, 1, 0]);
    let recommended: ItemSet = [0u32, 1, 2, 3].into_iter().collect();
    let rated: HashSet<ItemId> = [ItemId(0)].into_iter().collect();
    let ss = serendipity_score(&recommended, &rated, &pop).unwrap();
    println!(
        "serendipity: {:.4} over {} items ({} zero-popularity excluded)",
        ss.score, ss.considered, ss.zero_popularity_excluded
    );

    // feature distance: mean pairwise euclidean distance
    let features = FeatureMatrix::new(
        vec![
            0.0, 0.0, //
            3.0, 4.0, //
            6.0, 8.0, //
        ],
        2,
    );
    let triangle: ItemSet = [0u32, 1, 2].into_iter().collect();
    println!(
        "feature distance of three collinear points: {:.4}",
        feature_distance(&triangle, &features).unwrap()
    );
}
