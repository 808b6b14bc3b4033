//! Slow, independent ground truth: exhaustive Hall checks, exhaustive
//! matching maximization, and Monte-Carlo generic-rank estimation. These
//! exist for tests and cross-validation, not for speed.

use thiserror::Error;

use crate::graph::{BipartiteView, StructuredPattern, TargetSet};
use crate::numeric::{child_seed, numeric_rank, sample_realization, Tolerances};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteforceError {
    #[error("right side has {size} vertices, exhaustive Hall check is capped at {cap}")]
    RightTooLarge { size: usize, cap: usize },
    #[error("view has {size} edges, exhaustive matching is capped at {cap}")]
    EdgesTooLarge { size: usize, cap: usize },
}

const HALL_CAP: usize = 20;
const MATCHING_CAP: usize = 24;

/// Exhaustive Hall check: every one of the 2^|right| subsets is tested.
///
/// Violators are sought in ascending size and, within a size, in
/// lexicographic order of the sorted index sequence, so the returned set is
/// the lexicographically-first smallest one.
pub fn hall_bruteforce(
    view: &BipartiteView,
) -> Result<(bool, Option<Vec<usize>>), BruteforceError> {
    let k = view.right_size();
    if k > HALL_CAP {
        return Err(BruteforceError::RightTooLarge {
            size: k,
            cap: HALL_CAP,
        });
    }
    for size in 1..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let neighborhood = view.neighbor_ids_of_positions(&combo);
            if neighborhood.len() < size {
                let states = combo.iter().map(|&p| view.right()[p]).collect();
                return Ok((false, Some(states)));
            }
            if !next_combination(&mut combo, k) {
                break;
            }
        }
    }
    Ok((true, None))
}

/// Advance to the next size-|combo| combination of {0..k} in lexicographic
/// order; false once exhausted.
fn next_combination(combo: &mut [usize], k: usize) -> bool {
    let size = combo.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if combo[i] < k - (size - i) {
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Maximum matching size by exhaustive enumeration over edge subsets.
///
/// Every matching is visited exactly once via take/skip recursion on the edge
/// list; branches that cannot beat the current best are cut, which never
/// changes the maximum.
pub fn matching_bruteforce(view: &BipartiteView) -> Result<usize, BruteforceError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for pos in 0..view.right_size() {
        for &left in view.neighbors_of_pos(pos) {
            edges.push((left, pos));
        }
    }
    if edges.len() > MATCHING_CAP {
        return Err(BruteforceError::EdgesTooLarge {
            size: edges.len(),
            cap: MATCHING_CAP,
        });
    }
    fn recurse(
        edges: &[(usize, usize)],
        index: usize,
        left_used: u64,
        right_used: u64,
        size: usize,
        best: &mut usize,
    ) {
        if size + (edges.len() - index) <= *best {
            return;
        }
        if index == edges.len() {
            *best = (*best).max(size);
            return;
        }
        let (l, r) = edges[index];
        if left_used & (1 << l) == 0 && right_used & (1 << r) == 0 {
            recurse(
                edges,
                index + 1,
                left_used | (1 << l),
                right_used | (1 << r),
                size + 1,
                best,
            );
        }
        recurse(edges, index + 1, left_used, right_used, size, best);
    }
    let mut best = 0;
    recurse(&edges, 0, 0, 0, 0, &mut best);
    Ok(best)
}

/// Which realized matrix a generic rank is estimated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericRankScope {
    /// Rows of the state matrix alone.
    AOnly,
    /// Rows of the concatenation [A, B].
    ConcatAb,
}

/// Monte-Carlo generic rank: the maximum numeric rank over `trials` sampled
/// realizations of the selected rows. A lower bound on the generic rank that
/// attains it except on a measure-zero set of draws, so a handful of trials
/// is plenty.
pub fn generic_rank_mc(
    pattern: &StructuredPattern,
    rows: Option<&TargetSet>,
    scope: GenericRankScope,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> usize {
    let mut best = 0;
    for trial in 0..trials {
        let r = sample_realization(pattern, child_seed(seed, trial as u64), tol);
        let full = match scope {
            GenericRankScope::AOnly => r.a.clone(),
            GenericRankScope::ConcatAb => {
                let n = pattern.n();
                let m = pattern.m();
                let mut ab = nalgebra::DMatrix::zeros(n, n + m);
                ab.view_mut((0, 0), (n, n)).copy_from(&r.a);
                ab.view_mut((0, n), (n, m)).copy_from(&r.b);
                ab
            }
        };
        let selected = match rows {
            Some(t) => full.select_rows(t.indices().iter()),
            None => full,
        };
        best = best.max(numeric_rank(&selected, tol).expect("sampled weights are finite"));
    }
    best
}
