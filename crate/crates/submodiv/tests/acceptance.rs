//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them all).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use submodiv::catalog;
use submodiv::data::{factorize_wnmf, FeatureMatrix, PopularityTable, Rating, RatingsDataset, WnmfConfig};
use submodiv::experiment::{
    random_submodular_instance, run_oracle_check, run_sweep, ExperimentConfig,
};
use submodiv::metrics::{dcg_at_k, feature_distance, serendipity_score};
use submodiv::{
    approximation_bound, brute_force_maximize, check_structure, greedy_maximize,
    lazy_greedy_maximize, total_curvature, CompositeObjective, ConcaveTransform, DiversityTerm,
    GroundSet, ItemId, ItemSet, ModularFunction, Result, SetFunction, SimilarityMatrix,
};

fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
        let mut r = vec![0.0; v.len()];
        for (rank, &i) in idx.iter().enumerate() {
            r[i] = rank as f64;
        }
        r
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sx = rx.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>().sqrt();
    let sy = ry.iter().map(|b| (b - my) * (b - my)).sum::<f64>().sqrt();
    cov / (sx * sy)
}

#[test]
fn criterion_1_bound_values() {
    let at_tenth = approximation_bound(0.1).unwrap();
    assert!(
        (0.95..=0.952).contains(&at_tenth),
        "bound(0.1) = {at_tenth} outside [0.95, 0.952]"
    );
    let at_one = approximation_bound(1.0).unwrap();
    let classical = 1.0 - 1.0 / std::f64::consts::E;
    assert!(
        (at_one - classical).abs() < 1e-12,
        "bound(1) = {at_one}, expected {classical}"
    );
    println!("CRITERION 1: PASS (bound(0.1) = {at_tenth:.6}, bound(1) = {at_one:.12})");
}

#[test]
fn criterion_2_greedy_guarantee_oracle_suite() {
    let report = run_oracle_check(10, 3, 200, 20260809).unwrap();
    assert_eq!(
        report.violations, 0,
        "greedy fell below the curvature bound on {} of {} instances",
        report.violations, report.trials
    );
    assert!(report.min_margin >= 0.0);
    println!(
        "CRITERION 2: PASS ({} instances, min(ratio - bound) = {:.6})",
        report.trials, report.min_margin
    );
}

/// The claims as published: every catalog transform composed over random
/// nonnegative modular functions yields a submodular objective, and the MMR
/// set function with nonnegative similarities is submodular.
///
/// Exhaustive checking refutes two of those claims, so this test fails by
/// design and prints the witnesses: 1/x is convex decreasing (its
/// compositions are supermodular), and the additive MMR form double-counts
/// the redundancy penalty when a second item joins a singleton.
#[test]
fn criterion_3_catalog_submodularity_as_claimed() {
    let n = 8;
    let instances = 50;
    let ground = GroundSet::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut failures: Vec<String> = Vec::new();

    let weights = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.gen::<f64>()).collect() };

    // one row per Table-1 functional form; reciprocal-family inners carry a
    // positive offset so the composition is domain-valid on the whole
    // lattice including the empty set
    type Maker = Box<dyn Fn(&mut ChaCha8Rng) -> CompositeObjective>;
    let make_single = |transform: ConcaveTransform, offset: bool| -> Maker {
        Box::new(move |rng: &mut ChaCha8Rng| {
            let inner = if offset {
                ModularFunction::with_offset(
                    (0..n).map(|_| rng.gen::<f64>()).collect(),
                    rng.gen_range(0.5..1.5),
                )
            } else {
                ModularFunction::new((0..n).map(|_| rng.gen::<f64>()).collect())
            };
            CompositeObjective::new(None, vec![DiversityTerm::new(1.0, transform, inner)]).unwrap()
        })
    };
    let rows: Vec<(&str, Maker)> = vec![
        ("identity (x)", make_single(ConcaveTransform::Identity, false)),
        ("reciprocal (1/x)", make_single(ConcaveTransform::Reciprocal, true)),
        ("log", make_single(ConcaveTransform::Log, true)),
        ("scaled-reciprocal (1/(l*x))", make_single(ConcaveTransform::ScaledReciprocal(2.0), true)),
        ("power genre-coverage (x^l)", make_single(ConcaveTransform::Power(0.6), false)),
        ("power interest-coverage (x^l)", make_single(ConcaveTransform::Power(0.3), false)),
        ("saturation (x/(1+x))", make_single(ConcaveTransform::Saturation, false)),
        ("linear (l*x)", make_single(ConcaveTransform::Linear(2.0), false)),
    ];

    for (name, make) in &rows {
        let mut not_submodular = 0;
        let mut witness = None;
        for _ in 0..instances {
            let obj = make(&mut rng);
            let verdict = check_structure(&obj, &ground).unwrap();
            if !verdict.submodular {
                not_submodular += 1;
                if witness.is_none() {
                    witness = verdict.submodular_witness.clone();
                }
            }
        }
        if not_submodular > 0 {
            failures.push(format!(
                "{name}: {not_submodular}/{instances} instances are NOT submodular \
                 (first witness pair {:?})",
                witness
            ));
        }
    }

    // identity/linear rows must additionally be modular with curvature 0
    for transform in [ConcaveTransform::Identity, ConcaveTransform::Linear(1.7)] {
        for _ in 0..instances {
            let obj = CompositeObjective::new(
                None,
                vec![DiversityTerm::new(1.0, transform, ModularFunction::new(weights(&mut rng)))],
            )
            .unwrap();
            let verdict = check_structure(&obj, &ground).unwrap();
            if !verdict.modular {
                failures.push(format!("{}: expected modular", transform.name()));
                break;
            }
            let alpha = total_curvature(&obj, &ground.full_set()).unwrap().alpha;
            if alpha != 0.0 {
                failures.push(format!("{}: curvature {alpha} != 0", transform.name()));
                break;
            }
        }
    }

    // MMR with nonnegative similarities
    let mut mmr_not_submodular = 0;
    let mut mmr_witness = None;
    for _ in 0..instances {
        let rel = ModularFunction::new(weights(&mut rng));
        let sim = SimilarityMatrix::from_fn(n, |i, j| {
            if i == j {
                1.0
            } else {
                // deterministic symmetric entries in [0, 1]
                ((i * 31 + j * 17) % 97) as f64 / 96.0
            }
        })
        .unwrap();
        let obj = catalog::mmr(rel, sim, 0.5).unwrap();
        let verdict = check_structure(&obj, &ground).unwrap();
        if !verdict.submodular {
            mmr_not_submodular += 1;
            if mmr_witness.is_none() {
                mmr_witness = verdict.submodular_witness.clone();
            }
        }
    }
    if mmr_not_submodular > 0 {
        failures.push(format!(
            "mmr: {mmr_not_submodular}/{instances} instances are NOT submodular \
             (first witness pair {:?})",
            mmr_witness
        ));
    }

    if failures.is_empty() {
        println!("CRITERION 3: PASS");
    } else {
        println!("CRITERION 3: FAIL (the published submodularity claims do not all hold)");
        for f in &failures {
            println!("  - {f}");
        }
    }
    assert!(
        failures.is_empty(),
        "catalog submodularity as claimed is refuted by exhaustive checking:\n{}",
        failures.join("\n")
    );
}

/// F(S) = min(|S|, cap), the matroid-rank-style truncation.
struct CardinalityCap {
    n: usize,
    cap: usize,
}

impl SetFunction for CardinalityCap {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        Ok(s.len().min(self.cap) as f64)
    }
    fn ground_size(&self) -> usize {
        self.n
    }
}

#[test]
fn criterion_4_curvature_endpoints() {
    let reference: ItemSet = (0u32..5).collect();

    // power family at lambda = 1 is modular: alpha = 0
    let groups = vec![
        ModularFunction::new(vec![0.4, 0.0, 0.7, 0.1, 0.3]),
        ModularFunction::new(vec![0.0, 0.9, 0.2, 0.5, 0.0]),
    ];
    let modular_case = catalog::interest_coverage(groups, 1.0).unwrap();
    let alpha_one = total_curvature(&modular_case, &reference).unwrap().alpha;
    assert!(alpha_one.abs() <= 1e-9, "power(1) curvature {alpha_one} != 0");
    assert_eq!(alpha_one, 0.0);

    // power family at lambda = 0 over unit weights: alpha = 1
    let coverage = CompositeObjective::new(
        None,
        vec![DiversityTerm::new(1.0, ConcaveTransform::Power(0.0), ModularFunction::uniform(5, 1.0))],
    )
    .unwrap();
    let alpha_zero = total_curvature(&coverage, &reference).unwrap().alpha;
    assert!((alpha_zero - 1.0).abs() <= 1e-9, "power(0) curvature {alpha_zero} != 1");

    // matroid-rank truncation: alpha = 1
    let rank_fn = CardinalityCap { n: 5, cap: 1 };
    let alpha_rank = total_curvature(&rank_fn, &reference).unwrap().alpha;
    assert!((alpha_rank - 1.0).abs() <= 1e-9, "rank-function curvature {alpha_rank} != 1");

    println!(
        "CRITERION 4: PASS (alpha: power(1) = {alpha_one}, power(0) = {alpha_zero}, rank = {alpha_rank})"
    );
}

#[test]
fn criterion_5_relevance_diversity_tradeoff_trend() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::default();
    cfg.output.dir = dir.path().to_string_lossy().into_owned();
    cfg.split.fraction = 0.05;
    cfg.split.n_splits = 5;
    cfg.wnmf.rank = 12;
    cfg.wnmf.iters = 120;
    cfg.wnmf.unobserved_weight = 0.06;
    cfg.objective.lambda_grid = vec![0.0, 0.25, 0.5, 0.75, 1.0];
    cfg.objective.groups_per_item = 3;
    cfg.rerank.k = 10;
    cfg.rerank.k_grid = vec![10];
    cfg.sweep.users = 200;

    let report = run_sweep(&cfg).unwrap();
    assert_eq!(report.rows.len(), 25, "expected 5 splits x 5 lambdas");

    let alphas: Vec<f64> = report.rows.iter().map(|r| r.alpha).collect();
    let dcgs: Vec<f64> = report.rows.iter().map(|r| r.dcg).collect();
    let sss: Vec<f64> = report.rows.iter().map(|r| r.ss.expect("ss defined")).collect();
    let fds: Vec<f64> = report.rows.iter().map(|r| r.fd).collect();

    let rho_dcg = spearman(&alphas, &dcgs);
    let rho_ss = spearman(&alphas, &sss);
    let rho_fd = spearman(&alphas, &fds);

    let dcg_ok = rho_dcg <= -0.8;
    let ss_ok = rho_ss >= 0.8;
    let fd_ok = rho_fd >= 0.8;
    let verdict = if dcg_ok && ss_ok && fd_ok { "PASS" } else { "FAIL" };
    println!(
        "CRITERION 5: {verdict} (spearman vs alpha: dcg = {rho_dcg:.3} [need <= -0.8], \
         ss = {rho_ss:.3} [need >= 0.8], fd = {rho_fd:.3} [need >= 0.8])"
    );
    assert!(
        dcg_ok && ss_ok && fd_ok,
        "trend correlations: dcg {rho_dcg:.3}, ss {rho_ss:.3}, fd {rho_fd:.3}"
    );
}

#[test]
fn criterion_6_wnmf_properties() {
    // loss history is non-increasing on random instances
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..10 {
        let n_users = rng.gen_range(6..15);
        let n_items = rng.gen_range(6..15);
        let mut triples = Vec::new();
        for u in 0..n_users {
            for i in 0..n_items {
                if rng.gen::<f64>() < 0.4 {
                    triples.push(Rating {
                        user: u as u32,
                        item: i as u32,
                        value: rng.gen_range(1.0..=5.0),
                    });
                }
            }
        }
        if triples.is_empty() {
            continue;
        }
        let ds = RatingsDataset::from_indexed(n_users, n_items, triples).unwrap();
        let cfg = WnmfConfig {
            rank: rng.gen_range(1..5),
            reg: rng.gen_range(0.0..0.3),
            unobserved_weight: rng.gen_range(0.0..0.3),
            iters: 40,
            seed: trial,
        };
        let model = factorize_wnmf(&ds, &cfg).unwrap();
        for pair in model.loss_history.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-9,
                "trial {trial}: loss rose {} -> {}",
                pair[0],
                pair[1]
            );
        }
        // factors stay nonnegative after every iteration: every prefix of a
        // deterministic run ends on some iteration's factors
        for iters in [1, 3, 7] {
            let prefix = factorize_wnmf(&ds, &WnmfConfig { iters, ..cfg }).unwrap();
            for u in 0..n_users {
                assert!(prefix.user_row(u).iter().all(|&x| x >= 0.0));
            }
            for i in 0..n_items {
                assert!(prefix.item_row(i).iter().all(|&x| x >= 0.0));
            }
        }
    }

    // planted noiseless rank-1 data is recovered
    let u: Vec<f64> = (0..14).map(|i| 0.5 + (i % 5) as f64 / 4.0).collect();
    let v: Vec<f64> = (0..11).map(|j| 0.4 + (j % 7) as f64 / 6.0).collect();
    let mut triples = Vec::new();
    for (i, &uu) in u.iter().enumerate() {
        for (j, &vv) in v.iter().enumerate() {
            triples.push(Rating { user: i as u32, item: j as u32, value: uu * vv });
        }
    }
    let ds = RatingsDataset::from_indexed(14, 11, triples).unwrap();
    let cfg = WnmfConfig { rank: 1, reg: 0.0, unobserved_weight: 0.0, iters: 500, seed: 11 };
    let model = factorize_wnmf(&ds, &cfg).unwrap();
    let initial = model.loss_history[0];
    let last = *model.loss_history.last().unwrap();
    assert!(
        last < 1e-6 * initial,
        "planted recovery stalled: {initial} -> {last}"
    );
    println!(
        "CRITERION 6: PASS (loss monotone; planted recovery {:.3e} of initial loss)",
        last / initial
    );
}

#[test]
fn criterion_7_lazy_eager_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut max_eval_ratio = 0.0_f64;
    for trial in 0..500 {
        let n = rng.gen_range(8..14usize);
        let obj = random_submodular_instance(n, &mut rng);
        let candidates: ItemSet = (0u32..n as u32).collect();
        let k = rng.gen_range(1..=n.min(6));
        let eager = greedy_maximize(&obj, &candidates, k).unwrap();
        let lazy = lazy_greedy_maximize(&obj, &candidates, k).unwrap();
        assert_eq!(
            eager.selected, lazy.selected,
            "trial {trial}: selections diverge (n = {n}, k = {k})"
        );
        assert_eq!(eager.values, lazy.values, "trial {trial}: trace values diverge");
        assert!(
            lazy.evaluations <= eager.evaluations,
            "trial {trial}: lazy used {} evaluations, eager {}",
            lazy.evaluations,
            eager.evaluations
        );
        assert_eq!(lazy.lazy_fallbacks, 0, "trial {trial}: unexpected fallback");
        max_eval_ratio = max_eval_ratio.max(lazy.evaluations as f64 / eager.evaluations as f64);
    }
    println!(
        "CRITERION 7: PASS (500 instances identical; worst lazy/eager evaluation ratio {:.3})",
        max_eval_ratio
    );
}

#[test]
fn criterion_8_metric_oracles() {
    // frozen examples
    let ranked: ItemSet = [0u32, 1, 2].into_iter().collect();
    let relevant: HashSet<ItemId> = [ItemId(0), ItemId(2)].into_iter().collect();
    assert!((dcg_at_k(&ranked, &relevant, 3) - 1.5).abs() < 1e-12);

    let pop = PopularityTable::from_counts(vec![4, 1]);
    let recommended: ItemSet = [0u32, 1].into_iter().collect();
    let ss = serendipity_score(&recommended, &HashSet::new(), &pop).unwrap();
    assert!((ss.score - 0.4).abs() < 1e-12);

    let fm = FeatureMatrix::new(vec![0.0, 0.0, 3.0, 4.0], 2);
    assert!((feature_distance(&recommended, &fm).unwrap() - 5.0).abs() < 1e-12);

    // invariants on random cases
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(3..20usize);
        let ranked = ItemSet::from_ids((0..n as u32).map(ItemId)).unwrap();
        let relevant: HashSet<ItemId> =
            (0..n as u32).filter(|_| rng.gen::<f64>() < 0.4).map(ItemId).collect();
        let k = rng.gen_range(1..=n);
        let base = dcg_at_k(&ranked, &relevant, k);

        // adding a relevant item never decreases dcg
        let mut more = relevant.clone();
        let extra = ItemId(rng.gen_range(0..n as u32));
        more.insert(extra);
        assert!(dcg_at_k(&ranked, &more, k) >= base - 1e-12);

        // promoting a relevant item to an earlier position never decreases dcg
        if let Some(&rel_item) = relevant.iter().next() {
            let pos = ranked.iter().position(|i| i == rel_item).unwrap();
            if pos > 0 {
                let mut order: Vec<ItemId> = ranked.iter().collect();
                order.swap(pos, pos - 1);
                let promoted = ItemSet::from_ids(order).unwrap();
                assert!(dcg_at_k(&promoted, &relevant, k) >= base - 1e-12);
            }
        }

        // serendipity halves when every popularity count doubles
        let counts: Vec<u64> = (0..n).map(|_| rng.gen_range(0..50)).collect();
        let doubled = PopularityTable::from_counts(counts.iter().map(|c| c * 2).collect());
        let table = PopularityTable::from_counts(counts);
        let recommended = ItemSet::from_ids((0..n as u32).map(ItemId)).unwrap();
        if let Ok(s) = serendipity_score(&recommended, &HashSet::new(), &table) {
            let half = serendipity_score(&recommended, &HashSet::new(), &doubled).unwrap();
            assert!((half.score - s.score / 2.0).abs() < 1e-12);
        }

        // feature distance: translation invariant, scales linearly
        let dim = rng.gen_range(1..5usize);
        let rows: Vec<f64> = (0..n * dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let scale = rng.gen_range(0.1..4.0);
        let fm = FeatureMatrix::new(rows.clone(), dim);
        let translated = FeatureMatrix::new(
            rows.iter().enumerate().map(|(idx, &x)| x + shift[idx % dim]).collect(),
            dim,
        );
        let scaled = FeatureMatrix::new(rows.iter().map(|&x| x * scale).collect(), dim);
        let d = feature_distance(&recommended, &fm).unwrap();
        let dt = feature_distance(&recommended, &translated).unwrap();
        let dsc = feature_distance(&recommended, &scaled).unwrap();
        assert!((d - dt).abs() < 1e-9, "translation changed fd: {d} vs {dt}");
        assert!((dsc - d * scale).abs() < 1e-9 * scale.max(1.0));
    }
    println!("CRITERION 8: PASS (frozen oracles exact; 1000 random invariant cases hold)");
}
