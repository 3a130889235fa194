//! How the hyperparameter of a concave-over-modular objective tunes its
//! total curvature, and with it the greedy guarantee.
//!
//! Run: `cargo run --example curvature_sweep`

use submodiv::{
    curvature_sweep, sweep_to_csv, CompositeObjective, ConcaveTransform, DiversityTerm, ItemSet,
    ModularFunction, Result, SetFunction,
};

fn main() {
    let n = 8;
    let reference: ItemSet = (0u32..n).collect();
    let weights = vec![0.6, 1.1, 0.3, 0.9, 0.5, 1.4, 0.2, 0.8];

    // the power family: lambda = 1 is modular (curvature 0, greedy exact),
    // lambda = 0 counts coverage (curvature 1, the classical 1 - 1/e bound)
    let family = move |lambda: f64| -> Result<Box<dyn SetFunction>> {
        Ok(Box::new(CompositeObjective::new(
            None,
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Power(lambda),
                ModularFunction::new(weights.clone()),
            )],
        )?))
    };

    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let rows = curvature_sweep(family, &grid, &reference);

    println!("power family over an 8-item ground set:\n");
    print!("{}", sweep_to_csv(&rows));

    let alphas: Vec<f64> = rows.iter().filter_map(|r| r.alpha).collect();
    assert_eq!(alphas.first(), Some(&1.0));
    assert_eq!(alphas.last(), Some(&0.0));
    assert!(alphas.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    println!("\ncurvature decreases monotonically from 1 to 0 as lambda rises");
}
