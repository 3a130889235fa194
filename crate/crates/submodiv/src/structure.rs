//! Brute-force structural checks: submodularity, modularity, monotonicity.
//!
//! The checks enumerate the full subset lattice, so they are exact oracles
//! for small ground sets and refuse larger ones.

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::set::{GroundSet, ItemSet};

/// Largest ground set the exhaustive checker accepts by default. 2^12
/// evaluations plus the pairwise scans finish well under a second.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 12;

/// Absolute tolerance for float equality in the modularity check and for
/// inequality slack in the submodularity/monotonicity checks.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

/// Outcome of the exhaustive check. For each property that fails, a witness
/// pair of sets violating the checked inequality is provided. The witness
/// pair `(A, B)` for submodularity/modularity violates
/// `F(A) + F(B) >= F(A u B) + F(A n B)` (respectively its equality form);
/// the monotone witness is a pair `(S, T)` with `S` a subset of `T` and
/// `F(S) > F(T)`.
#[derive(Clone, Debug)]
pub struct StructureVerdict {
    pub submodular: bool,
    pub modular: bool,
    pub monotone: bool,
    pub submodular_witness: Option<(ItemSet, ItemSet)>,
    pub modular_witness: Option<(ItemSet, ItemSet)>,
    pub monotone_witness: Option<(ItemSet, ItemSet)>,
}

/// Exhaustively classifies `obj` on the given ground set with the default
/// size limit.
pub fn check_structure(obj: &dyn SetFunction, ground: &GroundSet) -> Result<StructureVerdict> {
    check_structure_with_limit(obj, ground, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Exhaustively classifies `obj`, refusing ground sets larger than `limit`
/// items (callers must fall back to sampled spot checks beyond that).
///
/// Submodularity is checked through the equivalent local condition
/// `F(S + i) + F(S + j) >= F(S + i + j) + F(S)` over every set `S` and pair
/// `i != j` outside it; modularity is the same condition with equality and
/// monotonicity compares every set with its one-item extensions. Witnesses
/// are reported for the first violation in ascending mask order.
pub fn check_structure_with_limit(
    obj: &dyn SetFunction,
    ground: &GroundSet,
    limit: usize,
) -> Result<StructureVerdict> {
    let n = ground.size();
    if n > limit {
        return Err(Error::TooLarge {
            needed: 1u128 << n,
            limit: 1u128 << limit,
        });
    }

    let full = ground.full_set();
    let table = evaluate_lattice(obj, &full)?;

    let mut verdict = StructureVerdict {
        submodular: true,
        modular: true,
        monotone: true,
        submodular_witness: None,
        modular_witness: None,
        monotone_witness: None,
    };

    for mask in 0..(1u64 << n) {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                continue;
            }
            let with_i = mask | (1 << i);

            if verdict.monotone && table[with_i as usize] < table[mask as usize] - EQUALITY_TOLERANCE
            {
                verdict.monotone = false;
                verdict.monotone_witness =
                    Some((full.subset_by_mask(mask), full.subset_by_mask(with_i)));
            }

            for j in (i + 1)..n {
                if mask >> j & 1 == 1 {
                    continue;
                }
                let with_j = mask | (1 << j);
                let with_both = with_i | (1 << j);
                let lhs = table[with_i as usize] + table[with_j as usize];
                let rhs = table[with_both as usize] + table[mask as usize];

                if verdict.submodular && lhs < rhs - EQUALITY_TOLERANCE {
                    verdict.submodular = false;
                    verdict.submodular_witness =
                        Some((full.subset_by_mask(with_i), full.subset_by_mask(with_j)));
                }
                if verdict.modular && (lhs - rhs).abs() > EQUALITY_TOLERANCE {
                    verdict.modular = false;
                    verdict.modular_witness =
                        Some((full.subset_by_mask(with_i), full.subset_by_mask(with_j)));
                }
            }
        }
    }

    debug_assert!(verdict.submodular || !verdict.modular, "modular implies submodular");
    Ok(verdict)
}

/// Evaluates `obj` on every subset of `base`, indexed by membership mask.
pub(crate) fn evaluate_lattice(obj: &dyn SetFunction, base: &ItemSet) -> Result<Vec<f64>> {
    let n = base.len();
    assert!(n < 64, "lattice evaluation limited to under 64 items");
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        table.push(obj.evaluate(&base.subset_by_mask(mask))?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::ModularFunction;
    use crate::objective::{CompositeObjective, DiversityTerm, MmrObjective, SimilarityMatrix};
    use crate::transform::ConcaveTransform;

    #[test]
    fn modular_is_modular_and_submodular() {
        let f = ModularFunction::new(vec![3.0, 1.0, 2.0, 0.5]);
        let v = check_structure(&f, &GroundSet::new(4)).unwrap();
        assert!(v.submodular && v.modular && v.monotone);
        assert!(v.submodular_witness.is_none() && v.modular_witness.is_none());
    }

    #[test]
    fn sqrt_of_modular_is_submodular_not_modular() {
        let obj = CompositeObjective::new(
            None,
            vec![DiversityTerm::new(
                1.0,
                ConcaveTransform::Power(0.5),
                ModularFunction::new(vec![0.3, 1.2, 0.7, 2.0]),
            )],
        )
        .unwrap();
        let v = check_structure(&obj, &GroundSet::new(4)).unwrap();
        assert!(v.submodular);
        assert!(!v.modular);
        assert!(v.modular_witness.is_some());
        assert!(v.monotone);
    }

    #[test]
    fn mmr_with_positive_similarity_is_not_submodular() {
        // The additive set-function reading of MMR double-counts the
        // penalty when a second item joins a singleton, which breaks
        // diminishing returns for any strictly positive similarity.
        let rel = ModularFunction::new(vec![0.5; 4]);
        let sim = SimilarityMatrix::from_fn(4, |i, j| if i == j { 1.0 } else { 0.5 }).unwrap();
        let obj = MmrObjective::new(rel, sim, 0.5).unwrap();
        let v = check_structure(&obj, &GroundSet::new(4)).unwrap();
        assert!(!v.submodular);
        let (a, b) = v.submodular_witness.unwrap();
        // the witness really violates the subset inequality
        let union: ItemSet = {
            let mut u = a.clone();
            for id in b.iter() {
                if !u.contains(id) {
                    u.insert(id).unwrap();
                }
            }
            u
        };
        let inter = ItemSet::from_ids(a.iter().filter(|&id| b.contains(id))).unwrap();
        let lhs = obj.evaluate(&a).unwrap() + obj.evaluate(&b).unwrap();
        let rhs = obj.evaluate(&union).unwrap() + obj.evaluate(&inter).unwrap();
        assert!(lhs < rhs - EQUALITY_TOLERANCE);
    }

    #[test]
    fn mmr_with_zero_similarity_is_modular() {
        let rel = ModularFunction::new(vec![0.9, 0.1, 0.5]);
        let sim = SimilarityMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        // diagonal never enters the penalty, so all cross terms are zero
        let obj = MmrObjective::new(rel, sim, 0.5).unwrap();
        let v = check_structure(&obj, &GroundSet::new(3)).unwrap();
        assert!(v.submodular && v.modular);
    }

    #[test]
    fn tangent_reciprocal_is_supermodular_in_practice() {
        // 1/x is convex decreasing, so rel(S) + 1/rel(S) fails the
        // submodular inequality on generic instances.
        let rel = ModularFunction::new(vec![2.0, 3.0, 1.0, 0.5]);
        let obj = CompositeObjective::new(
            Some(rel.clone()),
            vec![DiversityTerm::new(1.0, ConcaveTransform::Reciprocal, rel)],
        )
        .unwrap();
        let v = check_structure(&obj, &GroundSet::new(4)).unwrap();
        assert!(!v.submodular);
        assert!(v.submodular_witness.is_some());
    }

    #[test]
    fn too_large_ground_is_refused() {
        let f = ModularFunction::uniform(13, 1.0);
        assert!(matches!(
            check_structure(&f, &GroundSet::new(13)),
            Err(Error::TooLarge { .. })
        ));
        assert!(check_structure_with_limit(&f, &GroundSet::new(13), 13).is_ok());
    }

    #[test]
    fn decreasing_function_gets_monotone_witness() {
        let f = ModularFunction::new(vec![1.0, -2.0, 0.5]);
        let v = check_structure(&f, &GroundSet::new(3)).unwrap();
        assert!(!v.monotone);
        let (s, t) = v.monotone_witness.unwrap();
        assert!(f.sum(&s) > f.sum(&t));
        assert_eq!(s.len() + 1, t.len());
    }
}
