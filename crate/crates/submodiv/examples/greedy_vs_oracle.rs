//! Greedy against the exact brute-force optimum, with the curvature
//! certificate sandwiching the unknown optimum.
//!
//! Run: `cargo run --example greedy_vs_oracle`

use submodiv::{
    approximation_bound, brute_force_maximize, certify, greedy_maximize, total_curvature,
    CompositeObjective, ConcaveTransform, DiversityTerm, ItemSet, ModularFunction,
};

fn main() {
    // relevance plus a saturating coverage term over ten items
    let relevance = ModularFunction::new(vec![
        0.21, 0.74, 0.32, 0.91, 0.13, 0.55, 0.68, 0.07, 0.44, 0.83,
    ]);
    let coverage = ModularFunction::new(vec![
        1.8, 0.2, 1.1, 0.4, 2.0, 0.9, 0.3, 1.5, 0.6, 0.1,
    ]);
    let objective = CompositeObjective::new(
        Some(relevance),
        vec![DiversityTerm::new(1.2, ConcaveTransform::Saturation, coverage)],
    )
    .unwrap();

    let candidates: ItemSet = (0u32..10).collect();
    let k = 4;

    let trace = greedy_maximize(&objective, &candidates, k).unwrap();
    println!("greedy picks (in order):");
    for ((id, gain), value) in trace.selected.iter().zip(&trace.gains).zip(&trace.values) {
        println!("  item {id}: gain {gain:+.4} -> F = {value:.4}");
    }
    println!("greedy value  = {:.6} ({} evaluations)", trace.value(), trace.evaluations);

    let exact = brute_force_maximize(&objective, &candidates, k).unwrap();
    println!(
        "exact optimum = {:.6} over {} candidate sets: {:?}",
        exact.value, exact.sets_examined, exact.optimum
    );

    // total curvature of the full ground set certifies how close greedy
    // must be
    let report = total_curvature(&objective, &candidates).unwrap();
    let bound = approximation_bound(report.alpha).unwrap();
    println!(
        "total curvature alpha = {:.4} (argmax item {}), bound factor = {:.4}",
        report.alpha, report.argmax_item, bound
    );

    let certificate = certify(&objective, &trace, &candidates).unwrap();
    println!(
        "certified: optimum <= {:.6}; observed ratio greedy/optimum = {:.4} >= {:.4}",
        certificate.certified_opt_upper,
        trace.value() / exact.value,
        bound
    );
    assert!(trace.value() >= bound * exact.value);
    assert!(certificate.certified_opt_upper >= exact.value);
}
