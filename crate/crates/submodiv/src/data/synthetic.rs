//! Seeded synthetic ratings with MovieLens-like shape: skewed genre and
//! item popularity, genre-concentrated user tastes, and ratings that rise
//! with taste affinity. Deterministic for a fixed config, which makes it a
//! reproducible stand-in for benchmark data at desk scale.

use super::ratings::{Rating, RatingsDataset};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct SyntheticConfig {
    pub n_users: usize,
    pub n_items: usize,
    pub n_ratings: usize,
    pub n_genres: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    /// A 100K-rating sample in the MovieLens 1M shape: with a deep catalog
    /// and ~50 ratings per user, nobody exhausts the popular tier, the way
    /// a 1M subsample behaves.
    fn default() -> Self {
        SyntheticConfig {
            n_users: 2000,
            n_items: 3500,
            n_ratings: 100_000,
            n_genres: 12,
            seed: 13,
        }
    }
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

fn sample_index(cum: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total = *cum.last().expect("nonempty weights");
    let x = rng.gen::<f64>() * total;
    match cum.binary_search_by(|c| c.partial_cmp(&x).unwrap()) {
        Ok(i) => (i + 1).min(cum.len() - 1),
        Err(i) => i.min(cum.len() - 1),
    }
}

/// Generates the dataset. Duplicate (user, item) draws are rejected, so the
/// result has exactly `n_ratings` distinct pairs (or as many as fit).
pub fn synthetic_ratings(cfg: &SyntheticConfig) -> RatingsDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = cfg.n_genres.max(2);

    // mainstream genres first, with a steep gradient: the popularity
    // structure lives across genres, not within them
    let genre_pop: Vec<f64> = (0..g).map(|i| 1.0 / (i as f64 + 1.0).powf(1.5)).collect();

    // items spread evenly over genres; rating traffic is what concentrates
    // on the mainstream ones, so niche-genre items end up genuinely
    // unpopular. Ids rotate through the genres and are ordered by acclaim
    // within each genre, the way curated catalogs list their classics
    // first. Acclaim (how well an item is rated) and traffic (how often)
    // are correlated but distinct, which leaves room for cult classics:
    // acclaimed, rarely watched.
    let item_genre: Vec<usize> = (0..cfg.n_items).map(|i| i % g).collect();
    let mut item_acclaim = vec![0.0f64; cfg.n_items];
    let mut item_traffic = vec![0.0f64; cfg.n_items];
    for genre in 0..g {
        let ids: Vec<usize> = (0..cfg.n_items).filter(|i| i % g == genre).collect();
        for (rank, &i) in ids.iter().enumerate() {
            item_acclaim[i] = 1.0 / (rank as f64 + 1.0).powf(0.45);
            // each genre leads with a few cult classics (acclaimed, rarely
            // watched); the heavy traffic goes to the blockbusters after
            // them
            item_traffic[i] = if rank < 3 {
                0.12 * (0.6 + 0.8 * rng.gen::<f64>())
            } else {
                (0.3 + 0.7 * rng.gen::<f64>()) / ((rank - 2) as f64).powf(0.85)
            };
        }
    }

    let mut genre_items: Vec<Vec<usize>> = vec![Vec::new(); g];
    for (i, &genre) in item_genre.iter().enumerate() {
        genre_items[genre].push(i);
    }
    // guarantee every genre has items to draw from
    for genre in 0..g {
        if genre_items[genre].is_empty() {
            let fallback = (genre * 7919) % cfg.n_items;
            genre_items[genre].push(fallback);
        }
    }
    let genre_item_cum: Vec<Vec<f64>> = genre_items
        .iter()
        .map(|items| cumulative(&items.iter().map(|&i| item_traffic[i]).collect::<Vec<_>>()))
        .collect();

    // users: a couple of preferred genres, mainstream-biased, plus a skewed
    // activity level
    let mut affinities: Vec<Vec<f64>> = Vec::with_capacity(cfg.n_users);
    let mut user_genre_cum: Vec<Vec<f64>> = Vec::with_capacity(cfg.n_users);
    // mainstream-heavy tastes: personal genres drawn by a sharpened genre
    // popularity on top of a mainstream anchor everyone shares
    let taste_cum = cumulative(&genre_pop.iter().map(|p| p.powf(1.3)).collect::<Vec<_>>());
    for _ in 0..cfg.n_users {
        let primary = sample_index(&taste_cum, &mut rng);
        let secondary = sample_index(&taste_cum, &mut rng);
        let mut aff: Vec<f64> = (0..g)
            .map(|i| 0.05 + 0.06 * rng.gen::<f64>() + 0.20 * genre_pop[i] / genre_pop[0])
            .collect();
        aff[primary] += 0.7;
        aff[secondary] += 0.35;
        let max = aff.iter().cloned().fold(f64::MIN, f64::max);
        for a in aff.iter_mut() {
            *a /= max;
        }
        user_genre_cum.push(cumulative(&aff));
        affinities.push(aff);
    }
    let activity: Vec<f64> = (0..cfg.n_users)
        .map(|_| rng.gen::<f64>().powf(1.5) + 0.05)
        .collect();
    let activity_cum = cumulative(&activity);

    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(cfg.n_ratings);
    let mut triples = Vec::with_capacity(cfg.n_ratings);
    let max_attempts = cfg.n_ratings.saturating_mul(30);
    let mut attempts = 0usize;
    while triples.len() < cfg.n_ratings && attempts < max_attempts {
        attempts += 1;
        let user = sample_index(&activity_cum, &mut rng);
        // a slice of exploratory traffic keeps every item minimally rated,
        // so factor norms do not collapse on the niche tail
        let item = if rng.gen::<f64>() < 0.05 {
            rng.gen_range(0..cfg.n_items)
        } else {
            let genre = sample_index(&user_genre_cum[user], &mut rng);
            let within = sample_index(&genre_item_cum[genre], &mut rng);
            genre_items[genre][within]
        };
        if !seen.insert((user as u32, item as u32)) {
            continue;
        }
        let aff = affinities[user][item_genre[item]];
        let acclaim = item_acclaim[item].min(1.0);
        // crowd-pleaser bias: mainstream genres rate a little higher for
        // everyone; cult bonus: devoted audiences rate their classics high
        let mainstream = genre_pop[item_genre[item]] / genre_pop[0];
        let cult = aff * (1.0 - mainstream);
        let score = 0.34 * aff
            + 0.26 * acclaim
            + 0.20 * mainstream
            + 0.10 * cult
            + 0.10 * rng.gen::<f64>();
        // stretch the useful score band over the full star range
        let stretched = (score - 0.15) / 0.65;
        let value = (1.0 + (4.0 * stretched.clamp(0.0, 1.0)).round()).clamp(1.0, 5.0);
        triples.push(Rating { user: user as u32, item: item as u32, value });
    }

    RatingsDataset::from_indexed(cfg.n_users, cfg.n_items, triples)
        .expect("generator yields at least one rating")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ratings::popularity;

    #[test]
    fn deterministic_and_well_formed() {
        let cfg = SyntheticConfig {
            n_users: 50,
            n_items: 90,
            n_ratings: 1200,
            n_genres: 6,
            seed: 21,
        };
        let a = synthetic_ratings(&cfg);
        let b = synthetic_ratings(&cfg);
        assert_eq!(a.triples(), b.triples());
        assert_eq!(a.len(), 1200);
        assert!(a.triples().iter().all(|r| (1.0..=5.0).contains(&r.value)));
    }

    #[test]
    fn popularity_is_skewed() {
        // keep the rating matrix sparse so popularity can concentrate
        let cfg = SyntheticConfig {
            n_users: 200,
            n_items: 300,
            n_ratings: 4000,
            n_genres: 8,
            seed: 4,
        };
        let ds = synthetic_ratings(&cfg);
        let pop = popularity(&ds);
        let mut counts: Vec<u64> = pop.counts().to_vec();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        let top_decile: u64 = counts.iter().take(30).sum();
        // the most popular tenth of items absorbs well over its share
        assert!(
            top_decile as f64 > 0.25 * ds.len() as f64,
            "top decile share {}",
            top_decile as f64 / ds.len() as f64
        );
    }
}
