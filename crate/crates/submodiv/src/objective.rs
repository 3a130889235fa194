//! Set-function objectives: the generic composite form
//! `F(S) = f(S) + sum_t weight_t * g_t(h_t(S)) - normalization`
//! and the maximal-marginal-relevance form.

use crate::error::{Error, Result};
use crate::modular::ModularFunction;
use crate::set::{ItemId, ItemSet};
use crate::transform::ConcaveTransform;
use serde::{Deserialize, Serialize};

/// A real-valued function on subsets of a ground set.
///
/// Implementations are immutable after construction and evaluation is pure,
/// so a single objective can be shared across threads freely.
pub trait SetFunction: Send + Sync {
    /// `F(S)`.
    fn evaluate(&self, s: &ItemSet) -> Result<f64>;

    /// Number of items in the ground set the function is defined over.
    fn ground_size(&self) -> usize;

    /// `F(S + j) - F(S)`.
    fn marginal_gain(&self, s: &ItemSet, j: ItemId) -> Result<f64> {
        if s.contains(j) {
            return Err(Error::DuplicateItem(j));
        }
        let with_j = s.cloned_with(j);
        Ok(self.evaluate(&with_j)? - self.evaluate(s)?)
    }
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        (**self).evaluate(s)
    }
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn marginal_gain(&self, s: &ItemSet, j: ItemId) -> Result<f64> {
        (**self).marginal_gain(s, j)
    }
}

impl SetFunction for Box<dyn SetFunction> {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        (**self).evaluate(s)
    }
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn marginal_gain(&self, s: &ItemSet, j: ItemId) -> Result<f64> {
        (**self).marginal_gain(s, j)
    }
}

/// One diversity term: `weight * transform(inner(S))`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiversityTerm {
    pub weight: f64,
    pub transform: ConcaveTransform,
    pub inner: ModularFunction,
}

impl DiversityTerm {
    pub fn new(weight: f64, transform: ConcaveTransform, inner: ModularFunction) -> Self {
        DiversityTerm { weight, transform, inner }
    }

    /// Value of this term on `S`.
    ///
    /// Two deliberate extensions of the raw composition:
    /// - at the empty set, a term whose transform is undefined there
    ///   contributes 0 (the normalization constant absorbs the rest), and
    /// - reciprocal-family terms contribute 0 whenever the inner mass is
    ///   exactly zero, matching their per-category use where an uncovered
    ///   category is simply absent from the sum.
    fn value(&self, s: &ItemSet) -> Result<f64> {
        let x = self.inner.sum(s);
        match self.transform.apply(x) {
            Ok(v) => Ok(self.weight * v),
            Err(Error::Domain { .. }) if x == 0.0 && (s.is_empty() || self.transform.vanishes_at_zero()) => {
                Ok(0.0)
            }
            Err(e) => Err(e),
        }
    }
}

/// The unified re-ranking objective: an optional modular relevance part plus
/// any number of transformed-modular diversity terms, shifted so that the
/// empty set evaluates to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositeObjective {
    relevance: Option<ModularFunction>,
    terms: Vec<DiversityTerm>,
    normalization: f64,
    ground_size: usize,
}

impl CompositeObjective {
    /// Validates the parts and fixes the normalization constant so that
    /// `evaluate(empty) == 0`.
    pub fn new(relevance: Option<ModularFunction>, terms: Vec<DiversityTerm>) -> Result<Self> {
        let mut ground_size = relevance.as_ref().map_or(0, ModularFunction::ground_size);
        for term in &terms {
            term.transform.validate()?;
            if !term.weight.is_finite() {
                return Err(Error::BadParameter(format!(
                    "non-finite term weight {}",
                    term.weight
                )));
            }
            ground_size = ground_size.max(term.inner.ground_size());
        }
        let mut obj = CompositeObjective {
            relevance,
            terms,
            normalization: 0.0,
            ground_size,
        };
        obj.normalization = obj.raw_value(&ItemSet::new())?;
        Ok(obj)
    }

    /// A bare modular objective (no diversity terms, normalized).
    pub fn modular(relevance: ModularFunction) -> Result<Self> {
        CompositeObjective::new(Some(relevance), Vec::new())
    }

    pub fn relevance(&self) -> Option<&ModularFunction> {
        self.relevance.as_ref()
    }

    pub fn terms(&self) -> &[DiversityTerm] {
        &self.terms
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    fn raw_value(&self, s: &ItemSet) -> Result<f64> {
        let mut total = match &self.relevance {
            Some(f) => f.sum(s),
            None => 0.0,
        };
        for term in &self.terms {
            total += term.value(s)?;
        }
        Ok(total)
    }
}

impl SetFunction for CompositeObjective {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        Ok(self.raw_value(s)? - self.normalization)
    }

    fn ground_size(&self) -> usize {
        self.ground_size
    }
}

/// A symmetric item-item similarity matrix with entries in `[0, 1]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    /// Validates shape, symmetry and the `[0, 1]` range (1e-9 slack, then
    /// clamped).
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::BadParameter(format!(
                "similarity matrix needs {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (data[i * n + j] - data[j * n + i]).abs() > 1e-9 {
                    return Err(Error::BadParameter(format!(
                        "similarity matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if let Some(&bad) = data
            .iter()
            .find(|v| !v.is_finite() || **v < -1e-9 || **v > 1.0 + 1e-9)
        {
            return Err(Error::BadParameter(format!(
                "similarity entry {bad} outside [0, 1]"
            )));
        }
        let data = data.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
        Ok(SimilarityMatrix { n, data })
    }

    /// Fills the matrix from a symmetric generator called once per pair
    /// `i <= j`, mirroring the result.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SimilarityMatrix::new(n, data)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: ItemId, j: ItemId) -> f64 {
        self.data[i.index() * self.n + j.index()]
    }
}

/// Maximal marginal relevance as a set function:
/// `F(S) = sum_{i in S} (lambda * rel(i) - (1 - lambda) * max_{j in S \ {i}} sim(i, j))`
/// with the max over an empty pool defined as 0, so the first item carries
/// no redundancy penalty.
#[derive(Clone, Debug)]
pub struct MmrObjective {
    relevance: ModularFunction,
    similarity: SimilarityMatrix,
    lambda: f64,
}

impl MmrObjective {
    pub fn new(
        relevance: ModularFunction,
        similarity: SimilarityMatrix,
        lambda: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::BadParameter(format!(
                "mmr needs lambda in [0, 1], got {lambda}"
            )));
        }
        if relevance.offset() != 0.0 {
            return Err(Error::BadParameter(
                "mmr relevance must have zero offset".into(),
            ));
        }
        if relevance.ground_size() != similarity.size() {
            return Err(Error::BadParameter(format!(
                "mmr relevance covers {} items but similarity covers {}",
                relevance.ground_size(),
                similarity.size()
            )));
        }
        Ok(MmrObjective { relevance, similarity, lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn relevance(&self) -> &ModularFunction {
        &self.relevance
    }

    pub fn similarity(&self) -> &SimilarityMatrix {
        &self.similarity
    }
}

impl SetFunction for MmrObjective {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        let mut total = 0.0;
        for i in s.iter() {
            let mut max_sim = 0.0_f64;
            for j in s.iter() {
                if j != i {
                    max_sim = max_sim.max(self.similarity.get(i, j));
                }
            }
            total += self.lambda * self.relevance.weight(i) - (1.0 - self.lambda) * max_sim;
        }
        Ok(total)
    }

    fn ground_size(&self) -> usize {
        self.similarity.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_power_half(n: usize) -> CompositeObjective {
        CompositeObjective::new(
            None,
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Power(0.5),
                ModularFunction::uniform(n, 1.0),
            )],
        )
        .unwrap()
    }

    #[test]
    fn modular_part_only() {
        let obj =
            CompositeObjective::modular(ModularFunction::new(vec![3.0, 1.0])).unwrap();
        let s: ItemSet = [0u32, 1].into_iter().collect();
        assert_eq!(obj.evaluate(&s).unwrap(), 4.0);
        assert_eq!(obj.evaluate(&ItemSet::new()).unwrap(), 0.0);
    }

    #[test]
    fn sqrt_of_unit_weights() {
        // g = Power(0.5), h = unit weights, S = {a, b} -> sqrt(2)
        let obj = unit_power_half(2);
        let s: ItemSet = [0u32, 1].into_iter().collect();
        assert_eq!(obj.evaluate(&s).unwrap(), 2.0_f64.sqrt());
    }

    #[test]
    fn marginal_gain_matches_evaluate_difference() {
        let obj = unit_power_half(2);
        let empty = ItemSet::new();
        let a = ItemSet::singleton(ItemId(0));
        assert_eq!(obj.marginal_gain(&empty, ItemId(1)).unwrap(), 1.0);
        let g = obj.marginal_gain(&a, ItemId(1)).unwrap();
        assert!((g - (2.0_f64.sqrt() - 1.0)).abs() < 1e-15);
        // diminishing returns by direct evaluation
        assert!(obj.marginal_gain(&empty, ItemId(1)).unwrap() >= g);
    }

    #[test]
    fn marginal_gain_rejects_members() {
        let obj = unit_power_half(2);
        let a = ItemSet::singleton(ItemId(0));
        assert!(matches!(
            obj.marginal_gain(&a, ItemId(0)),
            Err(Error::DuplicateItem(ItemId(0)))
        ));
    }

    #[test]
    fn normalization_absorbs_offsets_and_guarded_terms() {
        // log term over an offset-free inner: guarded to 0 at the empty set
        let obj = CompositeObjective::new(
            Some(ModularFunction::with_offset(vec![1.0, 2.0], 5.0)),
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Log,
                ModularFunction::new(vec![2.0, 3.0]),
            )],
        )
        .unwrap();
        assert_eq!(obj.evaluate(&ItemSet::new()).unwrap(), 0.0);
        let s: ItemSet = [0u32, 1].into_iter().collect();
        // (5 + 3) + ln(5) - 5
        assert!((obj.evaluate(&s).unwrap() - (3.0 + 5.0_f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn log_of_zero_on_nonempty_set_is_a_domain_error() {
        let obj = CompositeObjective::new(
            None,
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Log,
                ModularFunction::new(vec![0.0, 1.0]),
            )],
        )
        .unwrap();
        let s = ItemSet::singleton(ItemId(0));
        assert!(matches!(obj.evaluate(&s), Err(Error::Domain { .. })));
    }

    #[test]
    fn reciprocal_terms_skip_zero_mass() {
        // a category-count style term: zero count contributes nothing
        let obj = CompositeObjective::new(
            None,
            vec![
                DiversityTerm::new(
                    1.0,
                    ConcaveTransform::ScaledReciprocal(1.0),
                    ModularFunction::new(vec![1.0, 0.0]),
                ),
                DiversityTerm::new(
                    1.0,
                    ConcaveTransform::ScaledReciprocal(1.0),
                    ModularFunction::new(vec![0.0, 1.0]),
                ),
            ],
        )
        .unwrap();
        let s = ItemSet::singleton(ItemId(0));
        assert_eq!(obj.evaluate(&s).unwrap(), 1.0);
    }

    #[test]
    fn mmr_reduces_to_relevance_at_lambda_one() {
        let rel = ModularFunction::new(vec![0.9, 0.4, 0.7]);
        let sim = SimilarityMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.8 }).unwrap();
        let obj = MmrObjective::new(rel, sim, 1.0).unwrap();
        let s: ItemSet = [0u32, 1, 2].into_iter().collect();
        assert_eq!(obj.evaluate(&s).unwrap(), 0.9 + 0.4 + 0.7);
    }

    #[test]
    fn mmr_penalizes_by_nearest_selected_neighbour() {
        let rel = ModularFunction::new(vec![1.0, 1.0]);
        let sim = SimilarityMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 0.5 }).unwrap();
        let obj = MmrObjective::new(rel, sim, 0.5).unwrap();
        let pair: ItemSet = [0u32, 1].into_iter().collect();
        // each of the two items is penalized by the other: 2*(0.5*1 - 0.5*0.5)
        assert_eq!(obj.evaluate(&pair).unwrap(), 0.5);
        assert_eq!(obj.evaluate(&ItemSet::singleton(ItemId(0))).unwrap(), 0.5);
    }

    #[test]
    fn similarity_matrix_rejects_asymmetry() {
        let data = vec![1.0, 0.2, 0.3, 1.0];
        assert!(SimilarityMatrix::new(2, data).is_err());
    }

    #[test]
    fn mmr_lambda_out_of_range() {
        let rel = ModularFunction::new(vec![1.0]);
        let sim = SimilarityMatrix::new(1, vec![1.0]).unwrap();
        assert!(matches!(
            MmrObjective::new(rel, sim, 1.5),
            Err(Error::BadParameter(_))
        ));
    }
}
