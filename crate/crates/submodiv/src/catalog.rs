//! Builders for the published re-ranking objectives, each wired onto the
//! composite template with the transform its algorithm uses.

use crate::error::{Error, Result};
use crate::modular::ModularFunction;
use crate::objective::{
    CompositeObjective, DiversityTerm, MmrObjective, SetFunction, SimilarityMatrix,
};
use crate::set::ItemSet;
use crate::transform::ConcaveTransform;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// The supported re-ranking algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Mmr,
    Tangent,
    Ppt,
    SetCategory,
    BinomCoverage,
    InterestCoverage,
    NeighbourCoverage,
    IntentAware,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mmr => "mmr",
            Algorithm::Tangent => "tangent",
            Algorithm::Ppt => "ppt",
            Algorithm::SetCategory => "set-category",
            Algorithm::BinomCoverage => "binom-coverage",
            Algorithm::InterestCoverage => "interest-coverage",
            Algorithm::NeighbourCoverage => "neighbour-coverage",
            Algorithm::IntentAware => "intent-aware",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mmr" => Ok(Algorithm::Mmr),
            "tangent" => Ok(Algorithm::Tangent),
            "ppt" => Ok(Algorithm::Ppt),
            "set-category" => Ok(Algorithm::SetCategory),
            "binom-coverage" => Ok(Algorithm::BinomCoverage),
            "interest-coverage" => Ok(Algorithm::InterestCoverage),
            "neighbour-coverage" => Ok(Algorithm::NeighbourCoverage),
            "intent-aware" => Ok(Algorithm::IntentAware),
            other => Err(Error::BadParameter(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Named data inputs an objective may draw on. Builders reject a spec whose
/// algorithm needs an input that was not supplied.
#[derive(Clone, Debug, Default)]
pub struct ObjectiveInputs {
    /// Predicted relevance per item (`sim_1(u, .)` for MMR, `rel` elsewhere).
    pub relevance: Option<ModularFunction>,
    /// Popularity-tendency mass per item (the PPT inner modular).
    pub tendency: Option<ModularFunction>,
    /// The user's observed popularity mass `h(O)` normalizing the PPT term.
    pub observed_mass: Option<f64>,
    /// Category of each item, for the per-category count terms.
    pub categories: Option<Vec<usize>>,
    /// Item-item similarity for the MMR penalty.
    pub similarity: Option<SimilarityMatrix>,
    /// One modular weight vector per interest group.
    pub groups: Option<Vec<ModularFunction>>,
    /// Genre-coverage mass (the BinomDiv coverage inner).
    pub coverage: Option<ModularFunction>,
    /// Non-redundancy mass (the BinomDiv second inner).
    pub non_redundancy: Option<ModularFunction>,
    /// Re-weighted collaborative-filtering scores (intent-aware inner).
    pub reweight: Option<ModularFunction>,
}

/// Algorithm name, hyperparameter and data inputs, as read from a config.
#[derive(Clone, Debug)]
pub struct ObjectiveSpec {
    pub algorithm: Algorithm,
    pub lambda: Option<f64>,
    pub inputs: ObjectiveInputs,
}

/// An objective built from a spec; either form exposes [`SetFunction`].
#[derive(Clone, Debug)]
pub enum BuiltObjective {
    Composite(CompositeObjective),
    Mmr(MmrObjective),
}

impl SetFunction for BuiltObjective {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        match self {
            BuiltObjective::Composite(o) => o.evaluate(s),
            BuiltObjective::Mmr(o) => o.evaluate(s),
        }
    }

    fn ground_size(&self) -> usize {
        match self {
            BuiltObjective::Composite(o) => o.ground_size(),
            BuiltObjective::Mmr(o) => o.ground_size(),
        }
    }
}

/// Wires the named algorithm from its inputs. `MissingInput` names the first
/// absent input; `BadParameter` flags a hyperparameter outside its domain.
pub fn build_objective(spec: &ObjectiveSpec) -> Result<BuiltObjective> {
    let inputs = &spec.inputs;
    let lambda = spec.lambda;
    match spec.algorithm {
        Algorithm::Mmr => {
            let rel = require(inputs.relevance.clone(), "relevance")?;
            let sim = require(inputs.similarity.clone(), "similarity")?;
            Ok(BuiltObjective::Mmr(mmr(rel, sim, lambda.unwrap_or(0.5))?))
        }
        Algorithm::Tangent => {
            let rel = require(inputs.relevance.clone(), "relevance")?;
            Ok(BuiltObjective::Composite(tangent(rel)?))
        }
        Algorithm::Ppt => {
            let tendency = require(inputs.tendency.clone(), "tendency")?;
            let observed = require(inputs.observed_mass, "observed_mass")?;
            Ok(BuiltObjective::Composite(ppt(
                inputs.relevance.clone(),
                tendency,
                observed,
            )?))
        }
        Algorithm::SetCategory => {
            let categories = require(inputs.categories.clone(), "categories")?;
            Ok(BuiltObjective::Composite(set_category(
                &categories,
                lambda.unwrap_or(1.0),
            )?))
        }
        Algorithm::BinomCoverage => {
            let coverage = require(inputs.coverage.clone(), "coverage")?;
            let non_redundancy = require(inputs.non_redundancy.clone(), "non_redundancy")?;
            Ok(BuiltObjective::Composite(binom_coverage(
                inputs.relevance.clone(),
                coverage,
                non_redundancy,
                lambda.unwrap_or(0.5),
            )?))
        }
        Algorithm::InterestCoverage => {
            let groups = require(inputs.groups.clone(), "groups")?;
            Ok(BuiltObjective::Composite(interest_coverage(
                groups,
                lambda.unwrap_or(0.5),
            )?))
        }
        Algorithm::NeighbourCoverage => {
            let coverage = require(inputs.coverage.clone(), "coverage")?;
            Ok(BuiltObjective::Composite(neighbour_coverage(
                inputs.relevance.clone(),
                coverage,
                lambda.unwrap_or(1.0),
            )?))
        }
        Algorithm::IntentAware => {
            let reweight = require(inputs.reweight.clone(), "reweight")?;
            Ok(BuiltObjective::Composite(intent_aware(
                inputs.relevance.clone(),
                reweight,
                lambda.unwrap_or(1.0),
            )?))
        }
    }
}

fn require<T>(value: Option<T>, name: &'static str) -> Result<T> {
    value.ok_or(Error::MissingInput(name))
}

/// Relevance traded against a nearest-selected-neighbour similarity penalty.
pub fn mmr(
    relevance: ModularFunction,
    similarity: SimilarityMatrix,
    lambda: f64,
) -> Result<MmrObjective> {
    MmrObjective::new(relevance, similarity, lambda)
}

/// `F(S) = rel(S) + 1/rel(S)`: relevance plus its reciprocal.
pub fn tangent(relevance: ModularFunction) -> Result<CompositeObjective> {
    CompositeObjective::new(
        Some(relevance.clone()),
        vec![DiversityTerm::new(1.0, ConcaveTransform::Reciprocal, relevance)],
    )
}

/// `F(S) = rel(S) + log(h(S) / h(O))`: personal popularity tendency of the
/// recommendation normalized by the user's observed mass, in natural log.
pub fn ppt(
    relevance: Option<ModularFunction>,
    tendency: ModularFunction,
    observed_mass: f64,
) -> Result<CompositeObjective> {
    if !(observed_mass > 0.0) {
        return Err(Error::BadParameter(format!(
            "ppt needs observed_mass > 0, got {observed_mass}"
        )));
    }
    CompositeObjective::new(
        relevance,
        vec![DiversityTerm::new(
            1.0,
            ConcaveTransform::Log,
            tendency.scaled(1.0 / observed_mass),
        )],
    )
}

/// One `1/(lambda * count_c(S))` term per category; categories with no
/// selected member contribute nothing.
pub fn set_category(categories: &[usize], lambda: f64) -> Result<CompositeObjective> {
    if categories.is_empty() {
        return Err(Error::BadParameter("set-category needs a nonempty category map".into()));
    }
    let n = categories.len();
    let max_cat = *categories.iter().max().expect("nonempty");
    let mut terms = Vec::with_capacity(max_cat + 1);
    for cat in 0..=max_cat {
        let weights: Vec<f64> = categories
            .iter()
            .map(|&c| if c == cat { 1.0 } else { 0.0 })
            .collect();
        if weights.iter().all(|&w| w == 0.0) {
            continue;
        }
        debug_assert_eq!(weights.len(), n);
        terms.push(DiversityTerm::new(
            1.0,
            ConcaveTransform::ScaledReciprocal(lambda),
            ModularFunction::new(weights),
        ));
    }
    CompositeObjective::new(None, terms)
}

/// Relevance plus coverage^lambda plus non-redundancy^lambda: the additive
/// reading of the coverage-times-non-redundancy genre diversity term.
pub fn binom_coverage(
    relevance: Option<ModularFunction>,
    coverage: ModularFunction,
    non_redundancy: ModularFunction,
    lambda: f64,
) -> Result<CompositeObjective> {
    CompositeObjective::new(
        relevance,
        vec![
            DiversityTerm::new(1.0, ConcaveTransform::Power(lambda), coverage),
            DiversityTerm::new(1.0, ConcaveTransform::Power(lambda), non_redundancy),
        ],
    )
}

/// Sum of `h_g(S)^lambda` over interest groups. At `lambda = 1` the terms
/// collapse into a single modular function (pure relevance); at `lambda = 0`
/// the objective counts covered groups, the most diverse extreme.
pub fn interest_coverage(
    groups: Vec<ModularFunction>,
    lambda: f64,
) -> Result<CompositeObjective> {
    if groups.is_empty() {
        return Err(Error::BadParameter("interest-coverage needs at least one group".into()));
    }
    let terms = groups
        .into_iter()
        .map(|inner| DiversityTerm::new(1.0, ConcaveTransform::Power(lambda), inner))
        .collect();
    CompositeObjective::new(None, terms)
}

/// Relevance plus the saturating coverage `weight * x/(1+x)` of a positive
/// neighbour-coverage mass.
pub fn neighbour_coverage(
    relevance: Option<ModularFunction>,
    coverage: ModularFunction,
    weight: f64,
) -> Result<CompositeObjective> {
    if !(weight > 0.0) {
        return Err(Error::BadParameter(format!(
            "neighbour-coverage needs weight > 0, got {weight}"
        )));
    }
    CompositeObjective::new(
        relevance,
        vec![DiversityTerm::new(weight, ConcaveTransform::Saturation, coverage)],
    )
}

/// Relevance plus `lambda * h(S)` over re-weighted scores; fully modular.
pub fn intent_aware(
    relevance: Option<ModularFunction>,
    reweight: ModularFunction,
    lambda: f64,
) -> Result<CompositeObjective> {
    if !(lambda > 0.0) {
        return Err(Error::BadParameter(format!(
            "intent-aware needs lambda > 0, got {lambda}"
        )));
    }
    CompositeObjective::new(
        relevance,
        vec![DiversityTerm::new(1.0, ConcaveTransform::Linear(lambda), reweight)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{GroundSet, ItemId};
    use crate::structure::check_structure;

    #[test]
    fn tangent_example() {
        // rel weights {a: 2, b: 3}, S = {a, b} -> 5 + 1/5
        let obj = tangent(ModularFunction::new(vec![2.0, 3.0])).unwrap();
        let s: ItemSet = [0u32, 1].into_iter().collect();
        assert!((obj.evaluate(&s).unwrap() - 5.2).abs() < 1e-12);
        assert_eq!(obj.evaluate(&ItemSet::new()).unwrap(), 0.0);
    }

    #[test]
    fn ppt_example() {
        // h(O) = 10, h weights {a: 2, b: 3}, no relevance:
        // F({a, b}) = ln(5/10)
        let obj = ppt(None, ModularFunction::new(vec![2.0, 3.0]), 10.0).unwrap();
        let s: ItemSet = [0u32, 1].into_iter().collect();
        assert!((obj.evaluate(&s).unwrap() - 0.5_f64.ln()).abs() < 1e-12);
        assert!((obj.evaluate(&s).unwrap() + 0.6931471805599453).abs() < 1e-12);
    }

    #[test]
    fn interest_coverage_at_lambda_one_is_modular() {
        let groups = vec![
            ModularFunction::new(vec![0.5, 0.0, 0.2, 0.1]),
            ModularFunction::new(vec![0.0, 0.7, 0.3, 0.0]),
        ];
        let obj = interest_coverage(groups, 1.0).unwrap();
        let verdict = check_structure(&obj, &GroundSet::new(4)).unwrap();
        assert!(verdict.modular);
        assert!(verdict.submodular);
    }

    #[test]
    fn set_category_spreads_across_categories() {
        // two categories; a fresh category is worth 1/lambda, a repeat is a
        // loss, so greedy-style gains favour new categories
        let obj = set_category(&[0, 0, 1], 1.0).unwrap();
        let one = ItemSet::singleton(ItemId(0));
        let same_cat: ItemSet = [0u32, 1].into_iter().collect();
        let cross_cat: ItemSet = [0u32, 2].into_iter().collect();
        assert_eq!(obj.evaluate(&one).unwrap(), 1.0);
        assert_eq!(obj.evaluate(&same_cat).unwrap(), 0.5);
        assert_eq!(obj.evaluate(&cross_cat).unwrap(), 2.0);
    }

    #[test]
    fn intent_aware_is_modular() {
        let obj = intent_aware(
            Some(ModularFunction::new(vec![1.0, 2.0, 0.5])),
            ModularFunction::new(vec![0.2, 0.1, 0.9]),
            2.0,
        )
        .unwrap();
        let verdict = check_structure(&obj, &GroundSet::new(3)).unwrap();
        assert!(verdict.modular);
    }

    #[test]
    fn builder_surface_reports_missing_inputs() {
        let spec = ObjectiveSpec {
            algorithm: Algorithm::Mmr,
            lambda: Some(0.5),
            inputs: ObjectiveInputs {
                relevance: Some(ModularFunction::new(vec![1.0])),
                ..Default::default()
            },
        };
        assert!(matches!(
            build_objective(&spec),
            Err(Error::MissingInput("similarity"))
        ));
    }

    #[test]
    fn builder_surface_rejects_bad_lambda() {
        let spec = ObjectiveSpec {
            algorithm: Algorithm::InterestCoverage,
            lambda: Some(1.5),
            inputs: ObjectiveInputs {
                groups: Some(vec![ModularFunction::new(vec![1.0, 1.0])]),
                ..Default::default()
            },
        };
        assert!(matches!(build_objective(&spec), Err(Error::BadParameter(_))));
    }

    #[test]
    fn interest_coverage_lambda_one_via_spec_is_modular() {
        let spec = ObjectiveSpec {
            algorithm: Algorithm::InterestCoverage,
            lambda: Some(1.0),
            inputs: ObjectiveInputs {
                groups: Some(vec![
                    ModularFunction::new(vec![0.4, 0.1, 0.0]),
                    ModularFunction::new(vec![0.0, 0.3, 0.8]),
                ]),
                ..Default::default()
            },
        };
        let obj = build_objective(&spec).unwrap();
        let verdict = check_structure(&obj, &GroundSet::new(3)).unwrap();
        assert!(verdict.modular);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for name in [
            "mmr",
            "tangent",
            "ppt",
            "set-category",
            "binom-coverage",
            "interest-coverage",
            "neighbour-coverage",
            "intent-aware",
        ] {
            let alg: Algorithm = name.parse().unwrap();
            assert_eq!(alg.name(), name);
        }
        assert!("pagerank".parse::<Algorithm>().is_err());
    }
}
