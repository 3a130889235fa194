//! Weighted nonnegative matrix factorization on synthetic ratings: loss
//! trajectory, relevance predictions, item similarity.
//!
//! Run: `cargo run --example wnmf_factorize`

use submodiv::data::{
    factorize_wnmf, popularity, synthetic_ratings, SyntheticConfig, WnmfConfig,
};
use submodiv::{ItemId, ItemSet};

fn main() {
    let data = synthetic_ratings(&SyntheticConfig {
        n_users: 120,
        n_items: 200,
        n_ratings: 4000,
        n_genres: 6,
        seed: 2,
    });
    println!(
        "{} ratings from {} users over {} items",
        data.len(),
        data.n_users(),
        data.n_items()
    );

    let model = factorize_wnmf(
        &data,
        &WnmfConfig { rank: 6, reg: 0.1, unobserved_weight: 0.05, iters: 80, seed: 7 },
    )
    .unwrap();

    println!("\nweighted loss trajectory (every 10th iteration):");
    for (t, loss) in model.loss_history.iter().enumerate().step_by(10) {
        println!("  iter {t:3}: {loss:.2}");
    }

    // relevance scores for one user's unrated items
    let user = 0;
    let rated: std::collections::HashSet<u32> =
        data.rated_matrix()[user].iter().copied().collect();
    let candidates = ItemSet::from_ids(
        (0..data.n_items() as u32).filter(|i| !rated.contains(i)).map(ItemId),
    )
    .unwrap();
    let relevance = model.predict_relevance(user, &candidates).unwrap();
    let mut scored: Vec<(ItemId, f64)> =
        candidates.iter().map(|i| (i, relevance.weight(i))).collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let pop = popularity(&data);
    println!("\ntop predictions for user {user}:");
    for (item, score) in scored.iter().take(5) {
        println!("  item {item}: score {score:.4} (popularity {})", pop.count(item.0));
    }

    // similar items share latent structure
    let sim = model.item_similarity();
    let anchor = scored[0].0;
    let mut nearest: Vec<(u32, f64)> = (0..data.n_items() as u32)
        .filter(|&i| ItemId(i) != anchor)
        .map(|i| (i, sim.get(anchor, ItemId(i))))
        .collect();
    nearest.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    println!("\nitems most similar to item {anchor}:");
    for (item, s) in nearest.iter().take(3) {
        println!("  item {item}: cosine {s:.4}");
    }
}
