//! Total curvature and the curvature-dependent greedy guarantee.
//!
//! For a normalized monotone non-decreasing submodular `F` and a reference
//! set `S`, the total curvature is
//! `alpha = max_{j in S} (F(S - j) + F(j) - F(S)) / F(j)`
//! over items with `F(j) > 0`. It is 0 for modular functions, 1 for
//! matroid-rank-like ones, and the greedy solution is guaranteed at least a
//! `(1/alpha)(1 - e^-alpha)` fraction of the optimum.

use crate::error::{Error, Result};
use crate::greedy::GreedyTrace;
use crate::objective::SetFunction;
use crate::set::{ItemId, ItemSet};
use crate::structure::evaluate_lattice;
use serde::Serialize;

/// Reference set size up to which the monotonicity premise is verified
/// exhaustively; larger sets are taken on the caller's word.
pub const MONOTONICITY_CHECK_LIMIT: usize = 12;

/// Numerators within this absolute tolerance of zero are treated as exact
/// zeros, so modular objectives report a curvature of exactly 0 despite
/// floating-point cancellation noise.
const ZERO_SNAP: f64 = 1e-9;

/// Per-item curvature terms and their maximum.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    /// The total curvature, snapped to 0 when tiny and clamped to [0, 1].
    pub alpha: f64,
    /// The raw maximum before snapping/clamping.
    pub alpha_raw: f64,
    /// `(j, (F(S - j) + F(j) - F(S)) / F(j))` for every j with `F(j) > 0`.
    pub per_item: Vec<(ItemId, f64)>,
    /// Item attaining the (pre-clamp) maximum.
    pub argmax_item: ItemId,
    /// Items excluded because `F(j) = 0` makes their ratio undefined.
    pub skipped: Vec<ItemId>,
    /// The set curvature was computed with respect to.
    pub reference_set: ItemSet,
}

/// Computes the total curvature of `obj` with respect to `reference`,
/// purely through value-oracle evaluations.
///
/// Preconditions checked here: the reference set is nonempty, `F` is
/// normalized (`F(empty) = 0`), and — for references of at most
/// [`MONOTONICITY_CHECK_LIMIT`] items — `F` is monotone non-decreasing on
/// the reference's subset lattice.
pub fn total_curvature(obj: &dyn SetFunction, reference: &ItemSet) -> Result<CurvatureReport> {
    if reference.is_empty() {
        return Err(Error::BadParameter("curvature reference set is empty".into()));
    }
    let at_empty = obj.evaluate(&ItemSet::new())?;
    if at_empty.abs() > 1e-12 {
        return Err(Error::NotNormalized(at_empty));
    }
    if reference.len() <= MONOTONICITY_CHECK_LIMIT {
        verify_monotone_on(obj, reference)?;
    }

    let full_value = obj.evaluate(reference)?;
    let mut per_item = Vec::with_capacity(reference.len());
    let mut skipped = Vec::new();
    for j in reference.iter() {
        let singleton_value = obj.evaluate(&ItemSet::singleton(j))?;
        if singleton_value <= 0.0 {
            skipped.push(j);
            continue;
        }
        let without_value = obj.evaluate(&reference.without(j))?;
        // For a modular function the numerator is exactly zero; over large
        // reference sets the two big evaluations cancel with rounding noise
        // proportional to their magnitude, which must not survive the
        // division by a possibly tiny singleton value.
        let scale = full_value.abs().max(without_value.abs()).max(1.0);
        let mut numerator = without_value + singleton_value - full_value;
        if numerator.abs() <= ZERO_SNAP * scale {
            numerator = 0.0;
        }
        per_item.push((j, numerator / singleton_value));
    }

    if per_item.is_empty() {
        return Err(Error::AllItemsDegenerate);
    }

    let (argmax_item, alpha_raw) = per_item
        .iter()
        .copied()
        .reduce(|best, cur| if cur.1 > best.1 { cur } else { best })
        .expect("per_item is nonempty");

    let alpha = if alpha_raw.abs() <= ZERO_SNAP {
        0.0
    } else {
        alpha_raw.clamp(0.0, 1.0)
    };

    Ok(CurvatureReport {
        alpha,
        alpha_raw,
        per_item,
        argmax_item,
        skipped,
        reference_set: reference.clone(),
    })
}

fn verify_monotone_on(obj: &dyn SetFunction, reference: &ItemSet) -> Result<()> {
    let table = evaluate_lattice(obj, reference)?;
    let n = reference.len();
    for mask in 0..(1u64 << n) {
        for bit in 0..n {
            if mask >> bit & 1 == 1 {
                continue;
            }
            let with = mask | (1 << bit);
            if table[with as usize] < table[mask as usize] - 1e-9 {
                return Err(Error::NotMonotone {
                    smaller: reference.subset_by_mask(mask).iter().collect(),
                    larger: reference.subset_by_mask(with).iter().collect(),
                });
            }
        }
    }
    Ok(())
}

/// The greedy approximation factor `(1/alpha)(1 - e^-alpha)`, extended by
/// continuity to 1 at `alpha = 0`. Strictly decreasing, reaching `1 - 1/e`
/// at `alpha = 1`.
pub fn approximation_bound(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange(alpha));
    }
    if alpha == 0.0 {
        Ok(1.0)
    } else {
        Ok((1.0 - (-alpha).exp()) / alpha)
    }
}

/// A posteriori optimality certificate for a greedy run: since
/// `greedy >= bound_factor * optimum` for monotone submodular objectives,
/// `greedy / bound_factor` upper-bounds the unknown optimum.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub alpha: f64,
    pub bound_factor: f64,
    pub greedy_value: f64,
    pub certified_opt_upper: f64,
}

/// Combines the curvature of `obj` on `reference` with the trace's final
/// value into a [`BoundCertificate`].
pub fn certify(
    obj: &dyn SetFunction,
    trace: &GreedyTrace,
    reference: &ItemSet,
) -> Result<BoundCertificate> {
    let report = total_curvature(obj, reference)?;
    let bound_factor = approximation_bound(report.alpha)?;
    let greedy_value = trace.value();
    Ok(BoundCertificate {
        alpha: report.alpha,
        bound_factor,
        greedy_value,
        certified_opt_upper: greedy_value / bound_factor,
    })
}

/// One row of a hyperparameter-to-curvature sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub alpha: Option<f64>,
    pub bound_factor: Option<f64>,
    /// Builder or curvature failure for this row; other rows still run.
    pub error: Option<String>,
}

/// Evaluates the curvature of `family(lambda)` on `reference` for every grid
/// value. Rows are independent; a failing row is marked rather than aborting
/// the sweep.
pub fn curvature_sweep(
    family: impl Fn(f64) -> Result<Box<dyn SetFunction>>,
    grid: &[f64],
    reference: &ItemSet,
) -> Vec<SweepRow> {
    grid.iter()
        .map(|&lambda| {
            let outcome = family(lambda)
                .and_then(|obj| total_curvature(obj.as_ref(), reference))
                .and_then(|report| {
                    let bound = approximation_bound(report.alpha)?;
                    Ok((report.alpha, bound))
                });
            match outcome {
                Ok((alpha, bound_factor)) => SweepRow {
                    lambda,
                    alpha: Some(alpha),
                    bound_factor: Some(bound_factor),
                    error: None,
                },
                Err(e) => SweepRow {
                    lambda,
                    alpha: None,
                    bound_factor: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Renders sweep rows as CSV with the stable header
/// `lambda,alpha,bound_factor` at six decimal places. Failed rows are
/// omitted (they carry no values).
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("lambda,alpha,bound_factor\n");
    for row in rows {
        if let (Some(alpha), Some(bound)) = (row.alpha, row.bound_factor) {
            out.push_str(&format!("{:.6},{:.6},{:.6}\n", row.lambda, alpha, bound));
        }
    }
    out
}
