//! Ratings ingestion, holdout splitting and popularity counting.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fs;
use std::path::Path;

/// One observed rating, with user and item already reindexed densely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rating {
    pub user: u32,
    pub item: u32,
    pub value: f64,
}

/// Input file formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatingsFormat {
    /// `user::item::rating::timestamp` lines (the MovieLens 1M layout).
    MovielensDat,
    /// `user,item,rating[,timestamp]` with a header line.
    Csv,
}

impl RatingsFormat {
    pub fn from_extension(path: &Path) -> Option<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dat") => Some(RatingsFormat::MovielensDat),
            Some("csv") => Some(RatingsFormat::Csv),
            _ => None,
        }
    }
}

/// A reindexed ratings table. User and item indices are dense in
/// `[0, n_users)` / `[0, n_items)`; the original external identifiers are
/// kept as labels.
#[derive(Clone, Debug)]
pub struct RatingsDataset {
    triples: Vec<Rating>,
    n_users: usize,
    n_items: usize,
    user_labels: Vec<String>,
    item_labels: Vec<String>,
    duplicates_dropped: usize,
}

impl RatingsDataset {
    /// Builds a dataset from labeled triples, assigning dense indices in
    /// first-appearance order. Duplicate (user, item) pairs keep the value
    /// of the last occurrence; the number dropped is recorded.
    pub fn from_labeled(triples: Vec<(String, String, f64)>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut user_index: HashMap<String, u32> = HashMap::new();
        let mut item_index: HashMap<String, u32> = HashMap::new();
        let mut user_labels = Vec::new();
        let mut item_labels = Vec::new();
        let mut seen: HashMap<(u32, u32), usize> = HashMap::new();
        let mut kept: Vec<Rating> = Vec::with_capacity(triples.len());
        let mut duplicates_dropped = 0usize;

        for (user, item, value) in triples {
            let u = *user_index.entry(user.clone()).or_insert_with(|| {
                user_labels.push(user.clone());
                (user_labels.len() - 1) as u32
            });
            let i = *item_index.entry(item.clone()).or_insert_with(|| {
                item_labels.push(item.clone());
                (item_labels.len() - 1) as u32
            });
            match seen.get(&(u, i)) {
                Some(&pos) => {
                    kept[pos].value = value;
                    duplicates_dropped += 1;
                }
                None => {
                    seen.insert((u, i), kept.len());
                    kept.push(Rating { user: u, item: i, value });
                }
            }
        }

        Ok(RatingsDataset {
            triples: kept,
            n_users: user_labels.len(),
            n_items: item_labels.len(),
            user_labels,
            item_labels,
            duplicates_dropped,
        })
    }

    /// Builds a dataset over fixed index ranges (for synthetic data and
    /// splits). Rejects duplicate pairs and out-of-range indices.
    pub fn from_indexed(n_users: usize, n_items: usize, triples: Vec<Rating>) -> Result<Self> {
        if triples.is_empty() || n_users == 0 || n_items == 0 {
            return Err(Error::EmptyDataset);
        }
        let mut seen = std::collections::HashSet::with_capacity(triples.len());
        for r in &triples {
            if r.user as usize >= n_users || r.item as usize >= n_items {
                return Err(Error::BadParameter(format!(
                    "rating ({}, {}) outside ({n_users}, {n_items})",
                    r.user, r.item
                )));
            }
            if !seen.insert((r.user, r.item)) {
                return Err(Error::BadParameter(format!(
                    "duplicate rating pair ({}, {})",
                    r.user, r.item
                )));
            }
        }
        Ok(RatingsDataset {
            triples,
            n_users,
            n_items,
            user_labels: (0..n_users).map(|u| u.to_string()).collect(),
            item_labels: (0..n_items).map(|i| i.to_string()).collect(),
            duplicates_dropped: 0,
        })
    }

    fn from_parts(&self, triples: Vec<Rating>) -> RatingsDataset {
        RatingsDataset {
            triples,
            n_users: self.n_users,
            n_items: self.n_items,
            user_labels: self.user_labels.clone(),
            item_labels: self.item_labels.clone(),
            duplicates_dropped: 0,
        }
    }

    pub fn triples(&self) -> &[Rating] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_items(&self) -> usize {
        self.n_items
    }

    pub fn user_label(&self, user: usize) -> &str {
        &self.user_labels[user]
    }

    pub fn item_label(&self, item: usize) -> &str {
        &self.item_labels[item]
    }

    pub fn user_by_label(&self, label: &str) -> Option<usize> {
        self.user_labels.iter().position(|l| l == label)
    }

    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// Items each user has rated, as an indicator table.
    pub fn rated_matrix(&self) -> Vec<Vec<u32>> {
        let mut rated = vec![Vec::new(); self.n_users];
        for r in &self.triples {
            rated[r.user as usize].push(r.item);
        }
        rated
    }

    /// Writes the reindexed table as `user,item,rating` CSV.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("user,item,rating\n");
        for r in &self.triples {
            out.push_str(&format!("{},{},{}\n", r.user, r.item, r.value));
        }
        fs::write(path, out)?;
        Ok(())
    }
}

/// Parses a ratings file. Ratings must lie in `[1, 5]`; parse failures carry
/// their line number.
pub fn load_ratings(path: &Path, format: RatingsFormat) -> Result<RatingsDataset> {
    let content = fs::read_to_string(path)?;
    let mut triples = Vec::new();
    let mut lines = content.lines().enumerate();

    if format == RatingsFormat::Csv {
        match lines.next() {
            Some((_, header)) => {
                let cols: Vec<&str> = header.split(',').map(str::trim).collect();
                if cols.len() < 3 || cols[0] != "user" || cols[1] != "item" || cols[2] != "rating" {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("expected header `user,item,rating[,timestamp]`, got `{header}`"),
                    });
                }
            }
            None => return Err(Error::EmptyDataset),
        }
    }

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = match format {
            RatingsFormat::MovielensDat => line.split("::").collect(),
            RatingsFormat::Csv => line.split(',').map(str::trim).collect(),
        };
        match format {
            RatingsFormat::MovielensDat => {
                if fields.len() != 4 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!(
                            "expected `user::item::rating::timestamp`, got {} fields",
                            fields.len()
                        ),
                    });
                }
                for (what, field) in [("user", fields[0]), ("item", fields[1])] {
                    if field.parse::<u64>().is_err() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("{what} id `{field}` is not an integer"),
                        });
                    }
                }
            }
            RatingsFormat::Csv => {
                if fields.len() < 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected at least 3 fields, got {}", fields.len()),
                    });
                }
            }
        }
        let value: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("rating `{}` is not a number", fields[2]),
        })?;
        if !(1.0..=5.0).contains(&value) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("rating {value} outside [1, 5]"),
            });
        }
        // users/items are opaque labels; only ratings need to be numeric
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(Error::Parse { line: line_no, message: "empty user or item field".into() });
        }
        triples.push((fields[0].to_string(), fields[1].to_string(), value));
    }

    RatingsDataset::from_labeled(triples)
}

/// One train/test partition of a dataset.
#[derive(Clone, Debug)]
pub struct HoldoutSplit {
    pub train: RatingsDataset,
    pub test: RatingsDataset,
    pub seed: u64,
    pub fraction: f64,
}

/// Draws `n_splits` independent uniform holdout splits. Split `s` is seeded
/// by `seed + s`, test size is `round(fraction * len)`, and train and test
/// partition the input exactly.
pub fn split_holdout(
    ds: &RatingsDataset,
    fraction: f64,
    n_splits: usize,
    seed: u64,
) -> Result<Vec<HoldoutSplit>> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::FractionOutOfRange(fraction));
    }
    let total = ds.len();
    let test_size = (fraction * total as f64).round() as usize;

    let mut splits = Vec::with_capacity(n_splits);
    for s in 0..n_splits {
        let split_seed = seed + s as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed);
        let mut order: Vec<usize> = (0..total).collect();
        order.shuffle(&mut rng);
        let mut in_test = vec![false; total];
        for &idx in order.iter().take(test_size) {
            in_test[idx] = true;
        }
        let test: Vec<Rating> = ds
            .triples
            .iter()
            .enumerate()
            .filter(|(i, _)| in_test[*i])
            .map(|(_, &r)| r)
            .collect();
        let train: Vec<Rating> = ds
            .triples
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_test[*i])
            .map(|(_, &r)| r)
            .collect();
        splits.push(HoldoutSplit {
            train: ds.from_parts(train),
            test: ds.from_parts(test),
            seed: split_seed,
            fraction,
        });
    }
    Ok(splits)
}

/// Per-item rating counts in a training split.
#[derive(Clone, Debug)]
pub struct PopularityTable {
    counts: Vec<u64>,
}

impl PopularityTable {
    /// Builds a table from raw per-item counts (externally supplied
    /// popularity data).
    pub fn from_counts(counts: Vec<u64>) -> Self {
        PopularityTable { counts }
    }

    pub fn count(&self, item: u32) -> u64 {
        self.counts[item as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts how many training ratings each item received.
pub fn popularity(train: &RatingsDataset) -> PopularityTable {
    let mut counts = vec![0u64; train.n_items()];
    for r in train.triples() {
        counts[r.item as usize] += 1;
    }
    PopularityTable { counts }
}
