//! Exact maximization by exhaustive enumeration. The test oracle the greedy
//! guarantees are checked against.

use crate::error::{Error, Result};
use crate::objective::SetFunction;
use crate::set::{ItemId, ItemSet};

/// Default ceiling on the number of candidate subsets the oracle will
/// enumerate.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 2_000_000;

/// Whether the oracle searches all subsets of size at most `k` or exactly
/// `k`. For monotone objectives the two coincide; re-ranking objectives with
/// negative marginal gains need `ExactlyK` to mirror the fixed-size lists the
/// greedy emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    AtMostK,
    ExactlyK,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub optimum: ItemSet,
    pub value: f64,
    pub sets_examined: u64,
}

/// Exact maximum of `obj` over subsets of `candidates` with `|S| <= k`,
/// using the default enumeration limit.
pub fn brute_force_maximize(
    obj: &dyn SetFunction,
    candidates: &ItemSet,
    k: usize,
) -> Result<OracleResult> {
    brute_force_maximize_with(obj, candidates, k, OracleMode::AtMostK, DEFAULT_ENUMERATION_LIMIT)
}

/// Exact maximization with explicit mode and enumeration limit. Candidates
/// are enumerated in ascending id order, so ties resolve to the
/// lexicographically first subset.
pub fn brute_force_maximize_with(
    obj: &dyn SetFunction,
    candidates: &ItemSet,
    k: usize,
    mode: OracleMode,
    limit: u128,
) -> Result<OracleResult> {
    if k > candidates.len() {
        return Err(Error::BudgetTooLarge { k, candidates: candidates.len() });
    }
    let n = candidates.len();
    let needed = match mode {
        OracleMode::AtMostK => (0..=k).map(|j| binomial(n, j)).sum::<u128>(),
        OracleMode::ExactlyK => binomial(n, k),
    };
    if needed > limit {
        return Err(Error::TooLarge { needed, limit });
    }

    let mut pool: Vec<ItemId> = candidates.iter().collect();
    pool.sort_unstable();

    let sizes = match mode {
        OracleMode::AtMostK => 0..=k,
        OracleMode::ExactlyK => k..=k,
    };

    let mut best: Option<(f64, ItemSet)> = None;
    let mut examined = 0u64;
    for size in sizes {
        for_each_combination(&pool, size, |members| {
            examined += 1;
            let set = ItemSet::from_unique(members.to_vec());
            let value = obj.evaluate(&set)?;
            if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
                best = Some((value, set));
            }
            Ok(())
        })?;
    }

    let (value, optimum) = best.expect("at least one subset is always examined");
    Ok(OracleResult { optimum, value, sets_examined: examined })
}

/// Calls `f` with each `size`-combination of `pool` in lexicographic order.
fn for_each_combination(
    pool: &[ItemId],
    size: usize,
    mut f: impl FnMut(&[ItemId]) -> Result<()>,
) -> Result<()> {
    let n = pool.len();
    if size > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buffer: Vec<ItemId> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        f(&buffer)?;
        if size == 0 {
            return Ok(());
        }
        // advance to the next combination
        let mut pos = size;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            if idx[pos] + (size - pos) < n {
                idx[pos] += 1;
                for later in (pos + 1)..size {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
        }
        for (slot, &i) in buffer.iter_mut().zip(idx.iter()) {
            *slot = pool[i];
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}
