//! The pipeline stages behind the CLI: ingestion, factorization, re-ranking
//! with certificates, curvature tables, the relevance-diversity sweep, and
//! the randomized greedy-vs-oracle guarantee check.

use super::ExperimentConfig;
use crate::catalog::{self, Algorithm, BuiltObjective};
use crate::curvature::{approximation_bound, certify, curvature_sweep, total_curvature, SweepRow};
use crate::data::{
    factorize_wnmf, load_ratings, popularity, split_holdout, synthetic_ratings, FactorModel,
    FeatureMatrix, PopularityTable, RatingsDataset, RatingsFormat, SyntheticConfig,
};
use crate::error::{Error, Result};
use crate::greedy::greedy_maximize;
use crate::metrics::{dcg_at_k, feature_distance, serendipity_score};
use crate::modular::ModularFunction;
use crate::objective::{CompositeObjective, DiversityTerm, SetFunction, SimilarityMatrix};
use crate::oracle::brute_force_maximize;
use crate::set::{ItemId, ItemSet};
use crate::structure::check_structure;
use crate::transform::ConcaveTransform;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::fs;
use std::path::Path;

/// Loads the configured ratings file, or generates the built-in synthetic
/// dataset when no path is configured.
pub fn load_dataset(cfg: &ExperimentConfig) -> Result<RatingsDataset> {
    if cfg.data.path.is_empty() {
        return Ok(synthetic_ratings(&SyntheticConfig {
            seed: cfg.data.synthetic_seed,
            n_ratings: cfg.data.synthetic_ratings,
            ..SyntheticConfig::default()
        }));
    }
    let path = Path::new(&cfg.data.path);
    let format = match cfg.data.format.as_str() {
        "csv" => RatingsFormat::Csv,
        "movielens-dat" => RatingsFormat::MovielensDat,
        "" => RatingsFormat::from_extension(path).ok_or_else(|| {
            Error::BadParameter(format!(
                "cannot infer format from `{}`; set data.format",
                cfg.data.path
            ))
        })?,
        other => {
            return Err(Error::BadParameter(format!(
                "unknown data format `{other}` (use csv or movielens-dat)"
            )))
        }
    };
    load_ratings(path, format)
}

#[derive(Clone, Debug, Serialize)]
pub struct IngestSummary {
    pub schema: u32,
    pub n_users: usize,
    pub n_items: usize,
    pub n_ratings: usize,
    pub duplicates_dropped: usize,
}

/// Loads, reindexes and caches the dataset; returns the summary it also
/// writes to `<out>/ingest.json`.
pub fn run_ingest(cfg: &ExperimentConfig) -> Result<IngestSummary> {
    let ds = load_dataset(cfg)?;
    let out = cfg.output_dir();
    fs::create_dir_all(&out)?;
    ds.write_csv(&out.join("dataset.csv"))?;
    let summary = IngestSummary {
        schema: 1,
        n_users: ds.n_users(),
        n_items: ds.n_items(),
        n_ratings: ds.len(),
        duplicates_dropped: ds.duplicates_dropped(),
    };
    let meta = serde_json::json!({
        "schema": 1,
        "n_users": ds.n_users(),
        "n_items": ds.n_items(),
        "n_ratings": ds.len(),
        "duplicates_dropped": ds.duplicates_dropped(),
        "user_labels": (0..ds.n_users()).map(|u| ds.user_label(u)).collect::<Vec<_>>(),
        "item_labels": (0..ds.n_items()).map(|i| ds.item_label(i)).collect::<Vec<_>>(),
    });
    fs::write(out.join("dataset_meta.json"), format!("{:#}\n", meta))?;
    write_json(&out.join("ingest.json"), &summary)?;
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizeSummary {
    pub schema: u32,
    pub rank: usize,
    pub iters: usize,
    pub initial_loss: f64,
    pub final_loss: f64,
}

/// Fits the factor model on the full dataset and persists it under
/// `<out>/model/`.
pub fn run_factorize(cfg: &ExperimentConfig) -> Result<FactorizeSummary> {
    let ds = load_dataset(cfg)?;
    let model = factorize_wnmf(&ds, &cfg.wnmf.to_config(0))?;
    let out = cfg.output_dir();
    model.save(&out.join("model"))?;
    let summary = FactorizeSummary {
        schema: 1,
        rank: model.rank(),
        iters: cfg.wnmf.iters,
        initial_loss: model.loss_history[0],
        final_loss: *model.loss_history.last().expect("at least one iteration"),
    };
    write_json(&out.join("factorize.json"), &summary)?;
    Ok(summary)
}

fn load_or_train(cfg: &ExperimentConfig, ds: &RatingsDataset) -> Result<FactorModel> {
    let dir = cfg.output_dir().join("model");
    if dir.join("model.json").exists() {
        if let Ok(model) = FactorModel::load(&dir) {
            if *model.config() == cfg.wnmf.to_config(0)
                && model.n_users() == ds.n_users()
                && model.n_items() == ds.n_items()
            {
                return Ok(model);
            }
        }
    }
    let model = factorize_wnmf(ds, &cfg.wnmf.to_config(0))?;
    model.save(&dir)?;
    Ok(model)
}

/// Candidate pool of a user: every item without a training rating by them,
/// in ascending id order.
fn candidates_for(rated: &[u32], n_items: usize) -> ItemSet {
    let rated: HashSet<u32> = rated.iter().copied().collect();
    ItemSet::from_ids((0..n_items as u32).filter(|i| !rated.contains(i)).map(ItemId))
        .expect("ascending ids are distinct")
}

/// Derives the named algorithm's data inputs for one user from the fitted
/// model and training statistics, then builds the objective.
#[allow(clippy::too_many_arguments)]
fn user_objective(
    algorithm: Algorithm,
    lambda: f64,
    groups_per_item: usize,
    model: &FactorModel,
    pop: &PopularityTable,
    user: usize,
    candidates: &ItemSet,
    rated: &[u32],
    similarity: Option<&SimilarityMatrix>,
) -> Result<BuiltObjective> {
    let relevance = || model.predict_relevance(user, candidates);
    match algorithm {
        Algorithm::InterestCoverage => {
            let groups = model.interest_groups(user, groups_per_item)?;
            Ok(BuiltObjective::Composite(catalog::interest_coverage(groups, lambda)?))
        }
        Algorithm::Mmr => {
            let rel = relevance()?;
            let max = candidates
                .iter()
                .map(|i| rel.weight(i))
                .fold(0.0_f64, f64::max);
            let rel = if max > 0.0 { rel.scaled(1.0 / max) } else { rel };
            let sim = similarity
                .cloned()
                .ok_or(Error::MissingInput("similarity"))?;
            Ok(BuiltObjective::Mmr(catalog::mmr(rel, sim, lambda)?))
        }
        Algorithm::Tangent => Ok(BuiltObjective::Composite(catalog::tangent(relevance()?)?)),
        Algorithm::Ppt => {
            let tendency =
                ModularFunction::new(pop.counts().iter().map(|&c| c as f64).collect());
            let observed_mass: f64 = rated.iter().map(|&i| pop.count(i) as f64).sum();
            Ok(BuiltObjective::Composite(catalog::ppt(
                Some(relevance()?),
                tendency,
                observed_mass,
            )?))
        }
        Algorithm::SetCategory => {
            // dominant latent factor as the item's category
            let categories: Vec<usize> = (0..model.n_items())
                .map(|i| {
                    let row = model.item_row(i);
                    row.iter()
                        .enumerate()
                        .max_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
                        .map(|(g, _)| g)
                        .unwrap_or(0)
                })
                .collect();
            Ok(BuiltObjective::Composite(catalog::set_category(&categories, lambda)?))
        }
        Algorithm::BinomCoverage => {
            let novelty = ModularFunction::new(
                pop.counts().iter().map(|&c| 1.0 / (1.0 + c as f64)).collect(),
            );
            Ok(BuiltObjective::Composite(catalog::binom_coverage(
                None,
                relevance()?,
                novelty,
                lambda,
            )?))
        }
        Algorithm::NeighbourCoverage => Ok(BuiltObjective::Composite(
            catalog::neighbour_coverage(None, relevance()?, lambda)?,
        )),
        Algorithm::IntentAware => {
            let rel = relevance()?;
            let reweighted = ModularFunction::new(
                rel.weights()
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| w / (1.0 + (1.0 + pop.count(i as u32) as f64).ln()))
                    .collect(),
            );
            Ok(BuiltObjective::Composite(catalog::intent_aware(
                Some(rel),
                reweighted,
                lambda,
            )?))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectedItem {
    pub item: u32,
    pub label: String,
    pub gain: f64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RerankReport {
    pub schema: u32,
    pub user: usize,
    pub user_label: String,
    pub algorithm: String,
    pub lambda: f64,
    pub k: usize,
    pub selected: Vec<SelectedItem>,
    pub greedy_value: f64,
    pub evaluations: usize,
    pub certificate: Option<crate::curvature::BoundCertificate>,
    pub certificate_error: Option<String>,
}

/// Re-ranks one user's candidates and attaches the curvature certificate.
/// The user may be given by label or by dense index.
pub fn run_rerank(cfg: &ExperimentConfig, user: &str) -> Result<RerankReport> {
    let ds = load_dataset(cfg)?;
    let user_idx = match ds.user_by_label(user) {
        Some(u) => u,
        None => user
            .parse::<usize>()
            .ok()
            .filter(|&u| u < ds.n_users())
            .ok_or(Error::UnknownUser(usize::MAX))?,
    };
    let model = load_or_train(cfg, &ds)?;
    let pop = popularity(&ds);
    let rated_all = ds.rated_matrix();
    let rated = &rated_all[user_idx];
    let candidates = candidates_for(rated, ds.n_items());
    let algorithm = cfg.algorithm()?;
    let similarity = matches!(algorithm, Algorithm::Mmr).then(|| model.item_similarity());
    let objective = user_objective(
        algorithm,
        cfg.objective.lambda,
        cfg.objective.groups_per_item,
        &model,
        &pop,
        user_idx,
        &candidates,
        rated,
        similarity.as_ref(),
    )?;

    let trace = greedy_maximize(&objective, &candidates, cfg.rerank.k)?;
    let (certificate, certificate_error) = match certify(&objective, &trace, &candidates) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let selected = trace
        .selected
        .iter()
        .zip(trace.gains.iter())
        .zip(trace.values.iter())
        .map(|((id, &gain), &value)| SelectedItem {
            item: id.0,
            label: ds.item_label(id.index()).to_string(),
            gain,
            value,
        })
        .collect();

    let report = RerankReport {
        schema: 1,
        user: user_idx,
        user_label: ds.user_label(user_idx).to_string(),
        algorithm: algorithm.name().to_string(),
        lambda: cfg.objective.lambda,
        k: cfg.rerank.k,
        selected,
        greedy_value: trace.value(),
        evaluations: trace.evaluations,
        certificate,
        certificate_error,
    };
    let out = cfg.output_dir();
    fs::create_dir_all(&out)?;
    write_json(&out.join("rerank.json"), &report)?;
    Ok(report)
}

/// Curvature table over the configured lambda grid for one user's candidate
/// ground set; writes `<out>/curvature.csv`.
pub fn run_curvature(cfg: &ExperimentConfig, user: &str) -> Result<Vec<SweepRow>> {
    let ds = load_dataset(cfg)?;
    let user_idx = match ds.user_by_label(user) {
        Some(u) => u,
        None => user
            .parse::<usize>()
            .ok()
            .filter(|&u| u < ds.n_users())
            .ok_or(Error::UnknownUser(usize::MAX))?,
    };
    let model = load_or_train(cfg, &ds)?;
    let pop = popularity(&ds);
    let rated_all = ds.rated_matrix();
    let rated = rated_all[user_idx].clone();
    let candidates = candidates_for(&rated, ds.n_items());
    let algorithm = cfg.algorithm()?;
    let similarity = matches!(algorithm, Algorithm::Mmr).then(|| model.item_similarity());
    let groups_per_item = cfg.objective.groups_per_item;

    let family = |lambda: f64| -> Result<Box<dyn SetFunction>> {
        Ok(Box::new(user_objective(
            algorithm,
            lambda,
            groups_per_item,
            &model,
            &pop,
            user_idx,
            &candidates,
            &rated,
            similarity.as_ref(),
        )?))
    };
    let rows = curvature_sweep(family, &cfg.objective.lambda_grid, &candidates);
    let out = cfg.output_dir();
    fs::create_dir_all(&out)?;
    fs::write(out.join("curvature.csv"), crate::curvature::sweep_to_csv(&rows))?;
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub split: usize,
    pub lambda: f64,
    pub alpha: f64,
    pub k: usize,
    pub dcg: f64,
    pub ss: Option<f64>,
    pub fd: f64,
    pub users: usize,
    pub ss_undefined: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub split: usize,
    pub lambda: f64,
    pub k: usize,
    pub user: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub rows: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

struct SplitContext {
    model: FactorModel,
    pop: PopularityTable,
    features: FeatureMatrix,
    rated: Vec<Vec<u32>>,
    rated_sets: Vec<HashSet<ItemId>>,
    test_relevant: Vec<HashSet<ItemId>>,
    similarity: Option<SimilarityMatrix>,
    users: Vec<usize>,
}

fn prepare_split(
    cfg: &ExperimentConfig,
    split_idx: usize,
    train: &RatingsDataset,
    test: &RatingsDataset,
    max_k: usize,
) -> Result<SplitContext> {
    let model = factorize_wnmf(train, &cfg.wnmf.to_config(split_idx as u64))?;
    let pop = popularity(train);
    let features = model.item_feature_matrix();
    let rated = train.rated_matrix();
    let rated_sets: Vec<HashSet<ItemId>> = rated
        .iter()
        .map(|items| items.iter().map(|&i| ItemId(i)).collect())
        .collect();
    let mut test_relevant: Vec<HashSet<ItemId>> = vec![HashSet::new(); train.n_users()];
    for r in test.triples() {
        if r.value >= 4.0 {
            test_relevant[r.user as usize].insert(ItemId(r.item));
        }
    }
    let algorithm = cfg.algorithm()?;
    let similarity = matches!(algorithm, Algorithm::Mmr).then(|| model.item_similarity());

    // seeded sample of users with enough training signal to rank and at
    // least one relevant test item to score
    let eligible: Vec<usize> = (0..train.n_users())
        .filter(|&u| {
            rated[u].len() >= cfg.sweep.min_train_ratings
                && !test_relevant[u].is_empty()
                && train.n_items() - rated[u].len() >= max_k
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.sweep.seed + split_idx as u64);
    let mut pool = eligible;
    pool.shuffle(&mut rng);
    pool.truncate(cfg.sweep.users);
    pool.sort_unstable();

    Ok(SplitContext {
        model,
        pop,
        features,
        rated,
        rated_sets,
        test_relevant,
        similarity,
        users: pool,
    })
}

struct UserOutcome {
    alpha: f64,
    dcg: f64,
    ss: Option<f64>,
    fd: f64,
}

fn evaluate_user(
    cfg: &ExperimentConfig,
    ctx: &SplitContext,
    algorithm: Algorithm,
    lambda: f64,
    k: usize,
    user: usize,
) -> Result<UserOutcome> {
    let candidates = candidates_for(&ctx.rated[user], ctx.model.n_items());
    let objective = user_objective(
        algorithm,
        lambda,
        cfg.objective.groups_per_item,
        &ctx.model,
        &ctx.pop,
        user,
        &candidates,
        &ctx.rated[user],
        ctx.similarity.as_ref(),
    )?;
    let trace = greedy_maximize(&objective, &candidates, k)?;
    let alpha = total_curvature(&objective, &candidates)?.alpha;
    let dcg = dcg_at_k(&trace.selected, &ctx.test_relevant[user], k);
    let ss = serendipity_score(&trace.selected, &ctx.rated_sets[user], &ctx.pop)
        .ok()
        .map(|s| s.score);
    let fd = feature_distance(&trace.selected, &ctx.features)?;
    Ok(UserOutcome { alpha, dcg, ss, fd })
}

/// The full sweep: split x lambda x k, user-averaged. Writes
/// `<out>/sweep.csv` (stable schema `split,lambda,alpha,k,dcg,ss,fd`) and,
/// when any per-user evaluation failed, `<out>/sweep_failures.csv` with the
/// reasons.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    let ds = load_dataset(cfg)?;
    let splits = split_holdout(&ds, cfg.split.fraction, cfg.split.n_splits, cfg.split.seed)?;
    let algorithm = cfg.algorithm()?;
    let max_k = cfg.rerank.k_grid.iter().copied().max().unwrap_or(cfg.rerank.k);

    let mut rows = Vec::new();
    let mut failures = Vec::new();

    for (split_idx, split) in splits.iter().enumerate() {
        let ctx = prepare_split(cfg, split_idx, &split.train, &split.test, max_k)?;
        for &lambda in &cfg.objective.lambda_grid {
            for &k in &cfg.rerank.k_grid {
                let outcomes: Vec<(usize, Result<UserOutcome>)> = ctx
                    .users
                    .par_iter()
                    .map(|&user| (user, evaluate_user(cfg, &ctx, algorithm, lambda, k, user)))
                    .collect();

                let mut alpha_sum = 0.0;
                let mut dcg_sum = 0.0;
                let mut fd_sum = 0.0;
                let mut ss_sum = 0.0;
                let mut ss_count = 0usize;
                let mut ok_count = 0usize;
                for (user, outcome) in outcomes {
                    match outcome {
                        Ok(o) => {
                            ok_count += 1;
                            alpha_sum += o.alpha;
                            dcg_sum += o.dcg;
                            fd_sum += o.fd;
                            if let Some(s) = o.ss {
                                ss_sum += s;
                                ss_count += 1;
                            }
                        }
                        Err(e) => failures.push(SweepFailure {
                            split: split_idx,
                            lambda,
                            k,
                            user,
                            reason: e.to_string(),
                        }),
                    }
                }
                if ok_count == 0 {
                    continue;
                }
                let n = ok_count as f64;
                rows.push(SweepRecord {
                    split: split_idx,
                    lambda,
                    alpha: alpha_sum / n,
                    k,
                    dcg: dcg_sum / n,
                    ss: (ss_count > 0).then(|| ss_sum / ss_count as f64),
                    fd: fd_sum / n,
                    users: ok_count,
                    ss_undefined: ok_count - ss_count,
                });
            }
        }
    }

    let out = cfg.output_dir();
    fs::create_dir_all(&out)?;
    fs::write(out.join("sweep.csv"), sweep_records_csv(&rows))?;
    if !failures.is_empty() {
        let mut text = String::from("split,lambda,k,user,reason\n");
        for f in &failures {
            text.push_str(&format!(
                "{},{:.6},{},{},{}\n",
                f.split,
                f.lambda,
                f.k,
                f.user,
                f.reason.replace(',', ";")
            ));
        }
        fs::write(out.join("sweep_failures.csv"), text)?;
    }
    Ok(SweepReport { schema: 1, rows, failures })
}

fn sweep_records_csv(rows: &[SweepRecord]) -> String {
    let mut text = String::from("split,lambda,alpha,k,dcg,ss,fd\n");
    for r in rows {
        let ss = r.ss.map(|v| format!("{v:.6}")).unwrap_or_default();
        text.push_str(&format!(
            "{},{:.6},{:.6},{},{:.6},{},{:.6}\n",
            r.split, r.lambda, r.alpha, r.k, r.dcg, ss, r.fd
        ));
    }
    text
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluateReport {
    pub schema: u32,
    pub algorithm: String,
    pub lambda: f64,
    pub k: usize,
    pub per_split: Vec<SweepRecord>,
    pub mean_alpha: f64,
    pub mean_dcg: f64,
    pub mean_ss: Option<f64>,
    pub mean_fd: f64,
}

/// Metrics at the single configured operating point, averaged per split and
/// then across splits; writes `<out>/evaluation.json`.
pub fn run_evaluate(cfg: &ExperimentConfig) -> Result<EvaluateReport> {
    let mut sweep_cfg = cfg.clone();
    sweep_cfg.objective.lambda_grid = vec![cfg.objective.lambda];
    sweep_cfg.rerank.k_grid = vec![cfg.rerank.k];
    // the narrowed sweep writes its own csv into the same directory
    let report = run_sweep(&sweep_cfg)?;
    let rows = report.rows;
    if rows.is_empty() {
        return Err(Error::Undefined("no split produced any evaluable user"));
    }
    let n = rows.len() as f64;
    let ss_rows: Vec<f64> = rows.iter().filter_map(|r| r.ss).collect();
    let out = EvaluateReport {
        schema: 1,
        algorithm: cfg.objective.algorithm.clone(),
        lambda: cfg.objective.lambda,
        k: cfg.rerank.k,
        mean_alpha: rows.iter().map(|r| r.alpha).sum::<f64>() / n,
        mean_dcg: rows.iter().map(|r| r.dcg).sum::<f64>() / n,
        mean_ss: (!ss_rows.is_empty())
            .then(|| ss_rows.iter().sum::<f64>() / ss_rows.len() as f64),
        mean_fd: rows.iter().map(|r| r.fd).sum::<f64>() / n,
        per_split: rows,
    };
    write_json(&cfg.output_dir().join("evaluation.json"), &out)?;
    Ok(out)
}

/// A seeded monotone normalized submodular objective drawn from the
/// catalog's sound families (modular, multi-group power coverage, saturating
/// coverage, shifted log, single power), with nonnegative random weights.
pub fn random_submodular_instance(n: usize, rng: &mut ChaCha8Rng) -> CompositeObjective {
    let family = rng.gen_range(0..5u32);
    let weights = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.gen::<f64>()).collect() };
    match family {
        0 => random_modular_instance(n, rng),
        1 => {
            // interest-coverage style: several sparse power terms
            let lambda = rng.gen_range(0.2..0.95);
            let n_groups = rng.gen_range(2..5usize);
            let terms = (0..n_groups)
                .map(|_| {
                    let w: Vec<f64> = (0..n)
                        .map(|_| if rng.gen::<f64>() < 0.6 { rng.gen::<f64>() } else { 0.0 })
                        .collect();
                    DiversityTerm::new(1.0, ConcaveTransform::Power(lambda), ModularFunction::new(w))
                })
                .collect();
            CompositeObjective::new(None, terms).expect("valid power terms")
        }
        2 => {
            // saturating coverage plus modular relevance
            let rel = ModularFunction::new(weights(rng)).scaled(0.3);
            let cov = ModularFunction::new(weights(rng)).scaled(2.0);
            CompositeObjective::new(
                Some(rel),
                vec![DiversityTerm::new(1.0, ConcaveTransform::Saturation, cov)],
            )
            .expect("valid saturation term")
        }
        3 => {
            // log of an offset-positive mass plus modular relevance
            let rel = ModularFunction::new(weights(rng)).scaled(0.5);
            let inner = ModularFunction::with_offset(weights(rng), rng.gen_range(0.5..1.5));
            CompositeObjective::new(
                Some(rel),
                vec![DiversityTerm::new(1.0, ConcaveTransform::Log, inner)],
            )
            .expect("valid log term")
        }
        _ => {
            let lambda = rng.gen_range(0.2..0.95);
            CompositeObjective::new(
                None,
                vec![DiversityTerm::new(
                    1.0,
                    ConcaveTransform::Power(lambda),
                    ModularFunction::new(weights(rng)),
                )],
            )
            .expect("valid power term")
        }
    }
}

/// A seeded modular objective with nonnegative random weights.
pub fn random_modular_instance(n: usize, rng: &mut ChaCha8Rng) -> CompositeObjective {
    let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    CompositeObjective::modular(ModularFunction::new(w)).expect("modular is always valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleInstanceResult {
    pub instance: usize,
    pub alpha: f64,
    pub bound: f64,
    pub greedy: f64,
    pub optimum: f64,
    /// `greedy / optimum`, or 1 when the optimum is 0.
    pub ratio: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheckReport {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    /// Minimum of `ratio - bound` across instances; nonnegative iff all pass.
    pub min_margin: f64,
    pub results: Vec<OracleInstanceResult>,
}

/// Randomized greedy-vs-brute-force guarantee suite: every instance is
/// structure-verified, then the greedy value is checked against
/// `bound(alpha) * optimum` (and the classical `1 - 1/e` corollary).
pub fn run_oracle_check(n: usize, k: usize, trials: usize, seed: u64) -> Result<OracleCheckReport> {
    let classical = 1.0 - (-1.0_f64).exp();
    let ground = crate::set::GroundSet::new(n);
    let all = ground.full_set();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(trials);
    let mut violations = 0usize;
    let mut min_margin = f64::INFINITY;

    for instance in 0..trials {
        let obj = random_submodular_instance(n, &mut rng);
        let verdict = check_structure(&obj, &ground)?;
        debug_assert!(verdict.submodular && verdict.monotone);
        if !(verdict.submodular && verdict.monotone) {
            return Err(Error::BadParameter(format!(
                "instance {instance} is not monotone submodular; generator bug"
            )));
        }
        let alpha = total_curvature(&obj, &all)?.alpha;
        let bound = approximation_bound(alpha)?;
        // evaluate the greedy set in ascending id order, the same summation
        // order the oracle uses, so identical sets compare bitwise equal
        let trace = greedy_maximize(&obj, &all, k)?;
        let mut picked: Vec<crate::set::ItemId> = trace.selected.iter().collect();
        picked.sort_unstable();
        let greedy = obj.evaluate(&ItemSet::from_ids(picked)?)?;
        let optimum = brute_force_maximize(&obj, &all, k)?.value;
        let ratio = if optimum > 0.0 { greedy / optimum } else { 1.0 };
        let ok = greedy >= bound * optimum && greedy >= classical * optimum;
        if !ok {
            violations += 1;
        }
        min_margin = min_margin.min(ratio - bound);
        results.push(OracleInstanceResult { instance, alpha, bound, greedy, optimum, ratio, ok });
    }

    Ok(OracleCheckReport {
        schema: 1,
        n,
        k,
        trials,
        seed,
        violations,
        min_margin,
        results,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::BadParameter(format!("serialization: {e}")))?;
    fs::write(path, text + "\n")?;
    Ok(())
}
