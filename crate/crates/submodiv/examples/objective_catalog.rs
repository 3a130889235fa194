//! Build every catalog objective on a toy ground set, evaluate it, and run
//! the exhaustive structure checker on each.
//!
//! Run: `cargo run --example objective_catalog`

use submodiv::catalog;
use submodiv::{
    check_structure, CompositeObjective, ConcaveTransform, DiversityTerm, GroundSet, ItemSet,
    ModularFunction, SetFunction, SimilarityMatrix,
};

fn report(name: &str, obj: &dyn SetFunction, ground: &GroundSet, sample: &ItemSet) {
    let verdict = check_structure(obj, ground).expect("small ground set");
    println!(
        "{name:20} F(sample) = {:8.4}   submodular: {:5}  modular: {:5}  monotone: {:5}",
        obj.evaluate(sample).unwrap(),
        verdict.submodular,
        verdict.modular,
        verdict.monotone,
    );
    if let Some((a, b)) = verdict.submodular_witness {
        println!("{:20}   submodularity fails at A = {a:?}, B = {b:?}", "");
    }
}

fn main() {
    let n = 5;
    let ground = GroundSet::new(n);
    let sample: ItemSet = [0u32, 2, 4].into_iter().collect();

    let relevance = ModularFunction::new(vec![0.9, 0.3, 0.7, 0.2, 0.5]);
    let popularity = ModularFunction::new(vec![120.0, 40.0, 90.0, 10.0, 64.0]);
    let groups = vec![
        ModularFunction::new(vec![0.9, 0.0, 0.0, 0.2, 0.5]),
        ModularFunction::new(vec![0.0, 0.3, 0.7, 0.0, 0.0]),
    ];
    let similarity = SimilarityMatrix::from_fn(n, |i, j| {
        if i == j {
            1.0
        } else {
            1.0 / (1.0 + (i as f64 - j as f64).abs())
        }
    })
    .unwrap();

    println!("catalog objectives on a 5-item ground set\n");

    let mmr = catalog::mmr(relevance.clone(), similarity, 0.5).unwrap();
    report("mmr(0.5)", &mmr, &ground, &sample);

    let tangent = catalog::tangent(relevance.clone()).unwrap();
    report("tangent", &tangent, &ground, &sample);

    let ppt = catalog::ppt(Some(relevance.clone()), popularity, 300.0).unwrap();
    report("ppt", &ppt, &ground, &sample);

    let set_category = catalog::set_category(&[0, 0, 1, 1, 2], 1.0).unwrap();
    report("set-category", &set_category, &ground, &sample);

    let binom = catalog::binom_coverage(
        Some(relevance.clone()),
        ModularFunction::new(vec![1.0, 1.0, 0.0, 1.0, 0.0]),
        ModularFunction::new(vec![0.2, 0.8, 0.5, 0.9, 0.4]),
        0.5,
    )
    .unwrap();
    report("binom-coverage", &binom, &ground, &sample);

    let interest = catalog::interest_coverage(groups.clone(), 0.5).unwrap();
    report("interest-cov(0.5)", &interest, &ground, &sample);

    // at lambda = 1 the coverage terms collapse into a modular function
    let interest_modular = catalog::interest_coverage(groups, 1.0).unwrap();
    report("interest-cov(1.0)", &interest_modular, &ground, &sample);

    let neighbour = catalog::neighbour_coverage(
        Some(relevance.clone()),
        ModularFunction::new(vec![2.0, 0.5, 1.5, 0.2, 1.0]),
        1.0,
    )
    .unwrap();
    report("neighbour-coverage", &neighbour, &ground, &sample);

    let intent = catalog::intent_aware(
        Some(relevance),
        ModularFunction::new(vec![0.45, 0.15, 0.35, 0.1, 0.25]),
        2.0,
    )
    .unwrap();
    report("intent-aware", &intent, &ground, &sample);

    // a hand-built composite with several diversity terms
    let combo = CompositeObjective::new(
        Some(ModularFunction::new(vec![0.9, 0.3, 0.7, 0.2, 0.5])),
        vec![
            DiversityTerm::new(0.5, ConcaveTransform::Power(0.5), ModularFunction::uniform(n, 1.0)),
            DiversityTerm::new(0.3, ConcaveTransform::Saturation, ModularFunction::uniform(n, 2.0)),
        ],
    )
    .unwrap();
    report("custom composite", &combo, &ground, &sample);
}
