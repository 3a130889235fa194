//! Steepest-ascent greedy and its lazily-evaluated twin.

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::set::{ItemId, ItemSet};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Record of one greedy run.
///
/// `values[t]` is the objective evaluated on the first `t + 1` picks and
/// `gains[t] = values[t] - values[t-1]` with `values[-1] = 0`, so for a
/// normalized objective the gains are exactly the selected marginal gains.
#[derive(Clone, Debug)]
pub struct GreedyTrace {
    pub selected: ItemSet,
    pub values: Vec<f64>,
    pub gains: Vec<f64>,
    /// Number of objective evaluations performed.
    pub evaluations: usize,
    /// Times the lazy variant had to rescan every candidate because a stale
    /// upper bound was exceeded upward (a non-submodularity symptom).
    /// Always zero for the eager variant.
    pub lazy_fallbacks: usize,
}

impl GreedyTrace {
    /// Objective value of the full selection (0 for an empty budget).
    pub fn value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    fn from_picks(picks: Vec<(ItemId, f64)>, evaluations: usize, lazy_fallbacks: usize) -> Self {
        let mut selected = ItemSet::new();
        let mut values = Vec::with_capacity(picks.len());
        let mut gains = Vec::with_capacity(picks.len());
        let mut previous = 0.0;
        for (id, value) in picks {
            selected.push_unchecked(id);
            gains.push(value - previous);
            values.push(value);
            previous = value;
        }
        GreedyTrace { selected, values, gains, evaluations, lazy_fallbacks }
    }
}

/// Picks `k` items by scanning every remaining candidate's marginal gain at
/// each step, ties broken by smallest item id. Negative gains are still
/// taken: re-ranking must emit a full top-k list.
pub fn greedy_maximize(
    obj: &dyn SetFunction,
    candidates: &ItemSet,
    k: usize,
) -> Result<GreedyTrace> {
    if k > candidates.len() {
        return Err(Error::BudgetTooLarge { k, candidates: candidates.len() });
    }

    let mut evaluations = 0usize;
    let mut selected = ItemSet::new();
    let mut current = obj.evaluate(&selected)?;
    evaluations += 1;

    let mut remaining: Vec<ItemId> = candidates.iter().collect();
    let mut picks = Vec::with_capacity(k);

    for _ in 0..k {
        // (gain, value at S + j, candidate)
        let mut best: Option<(f64, f64, ItemId)> = None;
        for &j in &remaining {
            let value = obj.evaluate(&selected.cloned_with(j))?;
            evaluations += 1;
            let gain = value - current;
            let better = match best {
                None => true,
                Some((bg, _, bj)) => gain > bg || (gain == bg && j < bj),
            };
            if better {
                best = Some((gain, value, j));
            }
        }
        let (_, value, j) = best.expect("k <= remaining candidates");
        selected.push_unchecked(j);
        remaining.retain(|&r| r != j);
        picks.push((j, value));
        current = value;
    }

    Ok(GreedyTrace::from_picks(picks, evaluations, 0))
}

/// Heap entry: stale upper bound on a candidate's marginal gain.
struct Bound {
    gain: f64,
    /// Objective value of `S + id` when the gain was computed.
    value: f64,
    id: ItemId,
    /// Selection step the gain was computed at; entries from earlier steps
    /// are stale.
    step: usize,
}

impl PartialEq for Bound {
    fn eq(&self, other: &Self) -> bool {
        self.gain == other.gain && self.id == other.id
    }
}
impl Eq for Bound {}
impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: larger gain first, then smaller id, matching the eager
        // tie-break exactly
        self.gain
            .partial_cmp(&other.gain)
            .expect("marginal gains must not be NaN")
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Same selection as [`greedy_maximize`], usually with far fewer objective
/// evaluations.
///
/// Candidates sit in a max-heap keyed by their last-known marginal gain. A
/// popped stale bound is refreshed and pushed back; a popped fresh bound is
/// the true argmax whenever the objective is submodular, because every other
/// bound only over-estimates. If a refreshed gain ever exceeds its stale
/// bound the submodularity premise is broken, so the step falls back to a
/// full eager rescan and `lazy_fallbacks` is incremented.
pub fn lazy_greedy_maximize(
    obj: &dyn SetFunction,
    candidates: &ItemSet,
    k: usize,
) -> Result<GreedyTrace> {
    if k > candidates.len() {
        return Err(Error::BudgetTooLarge { k, candidates: candidates.len() });
    }

    let mut evaluations = 0usize;
    let mut fallbacks = 0usize;
    let mut selected = ItemSet::new();
    let mut current = obj.evaluate(&selected)?;
    evaluations += 1;

    let mut heap = BinaryHeap::with_capacity(candidates.len());
    for j in candidates.iter() {
        let value = obj.evaluate(&selected.cloned_with(j))?;
        evaluations += 1;
        heap.push(Bound { gain: value - current, value, id: j, step: 0 });
    }

    let mut picks = Vec::with_capacity(k);

    for step in 0..k {
        let chosen = loop {
            let top = heap.pop().expect("k <= candidates");
            if top.step == step {
                break top;
            }
            let value = obj.evaluate(&selected.cloned_with(top.id))?;
            evaluations += 1;
            let gain = value - current;
            if gain > top.gain + EXCEEDANCE_TOLERANCE * top.gain.abs().max(1.0) {
                // stale bound exceeded upward: not submodular, rescan
                fallbacks += 1;
                let mut ids: Vec<ItemId> = heap.drain().map(|b| b.id).collect();
                ids.push(top.id);
                for id in ids {
                    let value = obj.evaluate(&selected.cloned_with(id))?;
                    evaluations += 1;
                    heap.push(Bound { gain: value - current, value, id, step });
                }
            } else {
                heap.push(Bound { gain, value, id: top.id, step });
            }
        };
        selected.push_unchecked(chosen.id);
        picks.push((chosen.id, chosen.value));
        current = chosen.value;
    }

    Ok(GreedyTrace::from_picks(picks, evaluations, fallbacks))
}

/// Relative slack before a refreshed gain counts as exceeding its stale
/// bound.
const EXCEEDANCE_TOLERANCE: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::ModularFunction;
    use crate::objective::{CompositeObjective, DiversityTerm};
    use crate::transform::ConcaveTransform;

    fn modular_obj(weights: Vec<f64>) -> CompositeObjective {
        CompositeObjective::modular(ModularFunction::new(weights)).unwrap()
    }

    #[test]
    fn modular_greedy_takes_top_k_weights() {
        let obj = modular_obj(vec![3.0, 1.0, 2.0]);
        let all: ItemSet = [0u32, 1, 2].into_iter().collect();
        let trace = greedy_maximize(&obj, &all, 2).unwrap();
        assert_eq!(trace.selected.as_slice(), &[ItemId(0), ItemId(2)]);
        assert_eq!(trace.value(), 5.0);
        assert_eq!(trace.gains, vec![3.0, 2.0]);
    }

    #[test]
    fn sqrt_objective_prefers_heavy_items() {
        let obj = CompositeObjective::new(
            None,
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Power(0.5),
                ModularFunction::new(vec![4.0, 4.0, 0.0]),
            )],
        )
        .unwrap();
        let all: ItemSet = [0u32, 1, 2].into_iter().collect();
        let trace = greedy_maximize(&obj, &all, 2).unwrap();
        assert_eq!(trace.selected.as_slice(), &[ItemId(0), ItemId(1)]);
        assert_eq!(trace.value(), 8.0_f64.sqrt());
    }

    #[test]
    fn empty_budget_is_empty_trace() {
        let obj = modular_obj(vec![1.0, 2.0]);
        let all: ItemSet = [0u32, 1].into_iter().collect();
        let trace = greedy_maximize(&obj, &all, 0).unwrap();
        assert!(trace.selected.is_empty());
        assert_eq!(trace.value(), 0.0);
    }

    #[test]
    fn budget_larger_than_pool_errors() {
        let obj = modular_obj(vec![1.0]);
        let all: ItemSet = [0u32].into_iter().collect();
        assert!(matches!(
            greedy_maximize(&obj, &all, 2),
            Err(Error::BudgetTooLarge { k: 2, candidates: 1 })
        ));
        assert!(matches!(
            lazy_greedy_maximize(&obj, &all, 2),
            Err(Error::BudgetTooLarge { .. })
        ));
    }

    #[test]
    fn lazy_matches_eager_on_the_catalog_examples() {
        let obj = modular_obj(vec![3.0, 1.0, 2.0]);
        let all: ItemSet = [0u32, 1, 2].into_iter().collect();
        let eager = greedy_maximize(&obj, &all, 2).unwrap();
        let lazy = lazy_greedy_maximize(&obj, &all, 2).unwrap();
        assert_eq!(eager.selected, lazy.selected);
        assert_eq!(eager.values, lazy.values);
        assert!(lazy.evaluations <= eager.evaluations);
        assert_eq!(lazy.lazy_fallbacks, 0);
    }

    #[test]
    fn lazy_saves_evaluations_on_large_modular_instances() {
        let weights: Vec<f64> = (0..100).map(|i| ((i * 37) % 100) as f64 / 10.0).collect();
        let obj = modular_obj(weights);
        let all: ItemSet = (0u32..100).collect();
        let eager = greedy_maximize(&obj, &all, 10).unwrap();
        let lazy = lazy_greedy_maximize(&obj, &all, 10).unwrap();
        assert_eq!(eager.selected, lazy.selected);
        assert!(lazy.evaluations < 100 * 10, "lazy = {}", lazy.evaluations);
        assert!(lazy.evaluations < eager.evaluations);
    }

    #[test]
    fn negative_gains_are_still_taken() {
        let obj = modular_obj(vec![1.0, -2.0, -0.5]);
        let all: ItemSet = [0u32, 1, 2].into_iter().collect();
        let trace = greedy_maximize(&obj, &all, 3).unwrap();
        assert_eq!(trace.selected.len(), 3);
        assert_eq!(trace.selected.as_slice(), &[ItemId(0), ItemId(2), ItemId(1)]);
    }

    #[test]
    fn tie_break_prefers_smallest_id() {
        let obj = modular_obj(vec![1.0, 5.0, 5.0, 1.0]);
        let all: ItemSet = [3u32, 2, 1, 0].into_iter().collect();
        let trace = greedy_maximize(&obj, &all, 3).unwrap();
        assert_eq!(trace.selected.as_slice(), &[ItemId(1), ItemId(2), ItemId(0)]);
        let lazy = lazy_greedy_maximize(&obj, &all, 3).unwrap();
        assert_eq!(lazy.selected, trace.selected);
    }
}
