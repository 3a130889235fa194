//! Regularized weighted nonnegative matrix factorization with
//! multiplicative updates.
//!
//! Minimizes
//! `sum_ui w_ui (r_ui - U_u . V_i)^2 + reg (|U|_F^2 + |V|_F^2)`
//! where observed cells carry weight 1 and target `r_ui`, and unobserved
//! cells carry weight `unobserved_weight` and target 0. Multiplicative
//! updates keep the factors nonnegative and the loss non-increasing.

use crate::error::{Error, Result};
use crate::modular::ModularFunction;
use crate::objective::SimilarityMatrix;
use crate::set::ItemSet;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use super::ratings::RatingsDataset;

/// Guard against division by exactly zero in the multiplicative update.
const DENOM_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct WnmfConfig {
    pub rank: usize,
    pub reg: f64,
    pub unobserved_weight: f64,
    pub iters: usize,
    pub seed: u64,
}

impl Default for WnmfConfig {
    fn default() -> Self {
        WnmfConfig { rank: 32, reg: 0.1, unobserved_weight: 0.05, iters: 200, seed: 7 }
    }
}

impl WnmfConfig {
    fn validate(&self) -> Result<()> {
        if self.rank < 1 {
            return Err(Error::BadParameter("wnmf rank must be >= 1".into()));
        }
        if self.reg < 0.0 {
            return Err(Error::BadParameter("wnmf reg must be >= 0".into()));
        }
        if !(0.0..=1.0).contains(&self.unobserved_weight) {
            return Err(Error::BadParameter(
                "wnmf unobserved_weight must lie in [0, 1]".into(),
            ));
        }
        if self.iters < 1 {
            return Err(Error::BadParameter("wnmf iters must be >= 1".into()));
        }
        Ok(())
    }
}

/// Nonnegative user/item factors plus the loss trajectory of the fit.
#[derive(Clone, Debug)]
pub struct FactorModel {
    user_factors: Vec<f64>,
    item_factors: Vec<f64>,
    n_users: usize,
    n_items: usize,
    rank: usize,
    pub loss_history: Vec<f64>,
    config: WnmfConfig,
}

/// Row-major per-item feature vectors (the item factors of a model).
#[derive(Clone, Debug)]
pub struct FeatureMatrix {
    rows: Vec<f64>,
    dim: usize,
}

impl FeatureMatrix {
    pub fn new(rows: Vec<f64>, dim: usize) -> Self {
        assert!(dim > 0 && rows.len() % dim == 0);
        FeatureMatrix { rows, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, item: usize) -> &[f64] {
        &self.rows[item * self.dim..(item + 1) * self.dim]
    }
}

/// Fits the factorization with seeded uniform(0, 1) initialization.
pub fn factorize_wnmf(train: &RatingsDataset, config: &WnmfConfig) -> Result<FactorModel> {
    config.validate()?;
    let m = train.n_users();
    let n = train.n_items();
    let d = config.rank;
    let w0 = config.unobserved_weight;
    let reg = config.reg;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut user_factors: Vec<f64> = (0..m * d).map(|_| rng.gen::<f64>()).collect();
    let mut item_factors: Vec<f64> = (0..n * d).map(|_| rng.gen::<f64>()).collect();

    // observed cells grouped per user and per item
    let mut by_user: Vec<Vec<(u32, f64)>> = vec![Vec::new(); m];
    let mut by_item: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for r in train.triples() {
        by_user[r.user as usize].push((r.item, r.value));
        by_item[r.item as usize].push((r.user, r.value));
    }

    let mut loss_history = Vec::with_capacity(config.iters + 1);
    let initial = weighted_loss(&user_factors, &item_factors, m, n, d, &by_user, w0, reg);
    if !initial.is_finite() {
        return Err(Error::NonFiniteLoss { iteration: 0 });
    }
    loss_history.push(initial);

    for iteration in 1..=config.iters {
        update_side(&mut user_factors, &item_factors, m, d, &by_user, w0, reg);
        update_side(&mut item_factors, &user_factors, n, d, &by_item, w0, reg);

        let loss = weighted_loss(&user_factors, &item_factors, m, n, d, &by_user, w0, reg);
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { iteration });
        }
        loss_history.push(loss);
    }

    Ok(FactorModel {
        user_factors,
        item_factors,
        n_users: m,
        n_items: n,
        rank: d,
        loss_history,
        config: *config,
    })
}

/// One multiplicative half-step: updates `rows` (m x d) against the fixed
/// `others` (n x d), where `observed[r]` lists the observed columns of row r.
fn update_side(
    rows: &mut [f64],
    others: &[f64],
    m: usize,
    d: usize,
    observed: &[Vec<(u32, f64)>],
    w0: f64,
    reg: f64,
) {
    // gram = others^T others, for the dense low-weight background term
    let n = others.len() / d;
    let mut gram = vec![0.0f64; d * d];
    for i in 0..n {
        let row = &others[i * d..(i + 1) * d];
        for a in 0..d {
            for b in a..d {
                gram[a * d + b] += row[a] * row[b];
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            gram[a * d + b] = gram[b * d + a];
        }
    }

    let mut num = vec![0.0f64; d];
    let mut den = vec![0.0f64; d];
    for r in 0..m {
        let row = &rows[r * d..(r + 1) * d];
        num.iter_mut().for_each(|v| *v = 0.0);
        // background: w0 * row . gram
        for a in 0..d {
            let mut bg = 0.0;
            for b in 0..d {
                bg += row[b] * gram[b * d + a];
            }
            den[a] = w0 * bg + reg * row[a] + DENOM_EPS;
        }
        for &(col, value) in &observed[r] {
            let other = &others[col as usize * d..(col as usize + 1) * d];
            let pred: f64 = row.iter().zip(other).map(|(x, y)| x * y).sum();
            for a in 0..d {
                num[a] += value * other[a];
                den[a] += (1.0 - w0) * pred * other[a];
            }
        }
        let row = &mut rows[r * d..(r + 1) * d];
        for a in 0..d {
            row[a] *= num[a] / den[a];
        }
    }
}

fn weighted_loss(
    user_factors: &[f64],
    item_factors: &[f64],
    m: usize,
    n: usize,
    d: usize,
    by_user: &[Vec<(u32, f64)>],
    w0: f64,
    reg: f64,
) -> f64 {
    // sum over ALL cells of w0 * pred^2 via the gram matrix, then correct
    // the observed cells to full weight and real targets
    let mut gram = vec![0.0f64; d * d];
    for i in 0..n {
        let row = &item_factors[i * d..(i + 1) * d];
        for a in 0..d {
            for b in 0..d {
                gram[a * d + b] += row[a] * row[b];
            }
        }
    }
    let mut background = 0.0;
    for u in 0..m {
        let row = &user_factors[u * d..(u + 1) * d];
        for a in 0..d {
            let mut t = 0.0;
            for b in 0..d {
                t += row[b] * gram[b * d + a];
            }
            background += row[a] * t;
        }
    }

    let mut observed_part = 0.0;
    let mut observed_pred_sq = 0.0;
    for (u, items) in by_user.iter().enumerate() {
        let row = &user_factors[u * d..(u + 1) * d];
        for &(i, value) in items {
            let other = &item_factors[i as usize * d..(i as usize + 1) * d];
            let pred: f64 = row.iter().zip(other).map(|(x, y)| x * y).sum();
            observed_part += (value - pred) * (value - pred);
            observed_pred_sq += pred * pred;
        }
    }

    let sq_norm =
        |v: &[f64]| -> f64 { v.iter().map(|x| x * x).sum() };

    observed_part + w0 * (background - observed_pred_sq)
        + reg * (sq_norm(user_factors) + sq_norm(item_factors))
}

impl FactorModel {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_items(&self) -> usize {
        self.n_items
    }

    pub fn config(&self) -> &WnmfConfig {
        &self.config
    }

    pub fn user_row(&self, user: usize) -> &[f64] {
        &self.user_factors[user * self.rank..(user + 1) * self.rank]
    }

    pub fn item_row(&self, item: usize) -> &[f64] {
        &self.item_factors[item * self.rank..(item + 1) * self.rank]
    }

    pub fn predict(&self, user: usize, item: usize) -> f64 {
        self.user_row(user)
            .iter()
            .zip(self.item_row(item))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Predicted relevance `U_u . V_i` for each candidate, as a modular
    /// function over the item ground set. Nonnegative by factor
    /// nonnegativity.
    pub fn predict_relevance(&self, user: usize, candidates: &ItemSet) -> Result<ModularFunction> {
        if user >= self.n_users {
            return Err(Error::UnknownUser(user));
        }
        let mut weights = vec![0.0; self.n_items];
        for id in candidates.iter() {
            weights[id.index()] = self.predict(user, id.index());
        }
        Ok(ModularFunction::new(weights))
    }

    /// Cosine similarity of item factor rows; all-zero rows get similarity
    /// 0 everywhere (including their diagonal).
    pub fn item_similarity(&self) -> SimilarityMatrix {
        let norms: Vec<f64> = (0..self.n_items)
            .map(|i| self.item_row(i).iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        SimilarityMatrix::from_fn(self.n_items, |i, j| {
            if norms[i] == 0.0 || norms[j] == 0.0 {
                return 0.0;
            }
            if i == j {
                return 1.0;
            }
            let dot: f64 = self
                .item_row(i)
                .iter()
                .zip(self.item_row(j))
                .map(|(a, b)| a * b)
                .sum();
            (dot / (norms[i] * norms[j])).clamp(0.0, 1.0)
        })
        .expect("cosine matrix is symmetric and in range by construction")
    }

    /// The item factor rows as the feature vectors used by the
    /// feature-distance metric.
    pub fn item_feature_matrix(&self) -> FeatureMatrix {
        FeatureMatrix::new(self.item_factors.clone(), self.rank)
    }

    /// Per-group relevance weights for one user: group `g` holds
    /// `U_u[g] * V_i[g]` for each item `i`. With `groups_per_item = 0`
    /// every loading is kept, so the weights summed over groups recover
    /// `U_u . V_i` exactly. A positive `groups_per_item` sparsifies the
    /// membership to each item's strongest loadings (at most that many, and
    /// only those within a constant fraction of the item's best), so items
    /// read as members of the few groups they are actually about.
    pub fn interest_groups(&self, user: usize, groups_per_item: usize) -> Result<Vec<ModularFunction>> {
        const MEMBERSHIP_FLOOR: f64 = 0.35;
        if user >= self.n_users {
            return Err(Error::UnknownUser(user));
        }
        let d = self.rank;
        let urow = self.user_row(user);
        let mut group_weights = vec![vec![0.0f64; self.n_items]; d];
        let mut keep: Vec<usize> = (0..d).collect();
        for i in 0..self.n_items {
            let irow = self.item_row(i);
            if groups_per_item > 0 && groups_per_item < d {
                keep.sort_unstable_by(|&a, &b| {
                    irow[b].partial_cmp(&irow[a]).unwrap().then(a.cmp(&b))
                });
                let floor = MEMBERSHIP_FLOOR * irow[keep[0]];
                for &g in keep.iter().take(groups_per_item) {
                    if irow[g] >= floor {
                        group_weights[g][i] = urow[g] * irow[g];
                    }
                }
            } else {
                for g in 0..d {
                    group_weights[g][i] = urow[g] * irow[g];
                }
            }
        }
        Ok(group_weights.into_iter().map(ModularFunction::new).collect())
    }

    /// Persists the factors as a CSV pair plus a JSON sidecar holding the
    /// fit configuration.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("user_factors.csv"), matrix_csv(&self.user_factors, self.rank))?;
        fs::write(dir.join("item_factors.csv"), matrix_csv(&self.item_factors, self.rank))?;
        let sidecar = serde_json::json!({
            "schema": 1,
            "rank": self.config.rank,
            "reg": self.config.reg,
            "unobserved_weight": self.config.unobserved_weight,
            "iters": self.config.iters,
            "seed": self.config.seed,
            "n_users": self.n_users,
            "n_items": self.n_items,
            "final_loss": self.loss_history.last(),
        });
        fs::write(dir.join("model.json"), format!("{:#}\n", sidecar))?;
        Ok(())
    }

    /// Loads a model persisted by [`FactorModel::save`].
    pub fn load(dir: &Path) -> Result<FactorModel> {
        let sidecar: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("model.json"))?).map_err(|e| {
                Error::Parse { line: 0, message: format!("model.json: {e}") }
            })?;
        let get = |k: &str| -> Result<f64> {
            sidecar[k]
                .as_f64()
                .ok_or_else(|| Error::Parse { line: 0, message: format!("model.json missing `{k}`") })
        };
        let config = WnmfConfig {
            rank: get("rank")? as usize,
            reg: get("reg")?,
            unobserved_weight: get("unobserved_weight")?,
            iters: get("iters")? as usize,
            seed: get("seed")? as u64,
        };
        let n_users = get("n_users")? as usize;
        let n_items = get("n_items")? as usize;
        let user_factors = parse_matrix_csv(&fs::read_to_string(dir.join("user_factors.csv"))?)?;
        let item_factors = parse_matrix_csv(&fs::read_to_string(dir.join("item_factors.csv"))?)?;
        if user_factors.len() != n_users * config.rank
            || item_factors.len() != n_items * config.rank
        {
            return Err(Error::Parse { line: 0, message: "factor shape mismatch".into() });
        }
        Ok(FactorModel {
            user_factors,
            item_factors,
            n_users,
            n_items,
            rank: config.rank,
            loss_history: Vec::new(),
            config,
        })
    }
}

fn matrix_csv(values: &[f64], d: usize) -> String {
    let mut out = String::new();
    for row in values.chunks(d) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn parse_matrix_csv(content: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        for cell in line.split(',') {
            values.push(cell.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("bad factor value `{cell}`"),
            })?);
        }
    }
    Ok(values)
}
