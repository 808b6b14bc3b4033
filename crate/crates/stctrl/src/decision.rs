//! Decision procedures for structural controllability and structural target
//! controllability of undirected networks, with Monte-Carlo cross-validation
//! and a greedy input-augmentation heuristic.
//!
//! Both verdicts rest on the same two conditions over the system digraph:
//! the relevant state vertices must be input-reachable, and the Hall
//! condition |N(S)| >= |S| must hold over every subset of them. For full
//! controllability the conditions range over all states; for target
//! controllability only over the target vertices, so apart from reachability
//! the test is local to the targets' neighborhood.

use crate::graph::{BipartiteView, StructuredPattern, SystemDigraph, TargetError, TargetSet};
use crate::numeric::{
    child_seed, numeric_rank, sample_realization, target_controllability_matrix, NumericError,
    Tolerances,
};
use crate::structural::{
    hall_check, max_matching, reachability_forest, HallCertificate, ReachabilityForest,
};

/// Which question a verdict answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Question {
    Controllability,
    TargetControllability(TargetSet),
}

/// A decision with its certificates.
///
/// The decision is exactly (reachability passes) AND (Hall holds). Both
/// witnesses are always attached; when both conditions fail, reachability is
/// the one to report first (it is the cheaper defect to fix).
#[derive(Clone, Debug)]
pub struct Verdict {
    pub question: Question,
    pub decision: bool,
    /// BFS forest from the inputs.
    pub reachability: ReachabilityForest,
    /// Required states that no input reaches, ascending.
    pub unreachable: Vec<usize>,
    pub hall: HallCertificate,
    pub monte_carlo: Option<MonteCarloSummary>,
}

fn decide(pattern: &StructuredPattern, question: Question) -> Verdict {
    let digraph = SystemDigraph::from_pattern(pattern);
    let forest = reachability_forest(&digraph);
    let required: Vec<usize> = match &question {
        Question::Controllability => (0..pattern.n()).collect(),
        Question::TargetControllability(t) => t.indices().to_vec(),
    };
    let unreachable: Vec<usize> = required
        .iter()
        .copied()
        .filter(|&x| !forest.reached(x))
        .collect();
    let view = BipartiteView::new(&digraph, &required)
        .expect("required vertices are states by construction");
    let hall = hall_check(&view);
    Verdict {
        decision: unreachable.is_empty() && hall.satisfied,
        question,
        reachability: forest,
        unreachable,
        hall,
        monte_carlo: None,
    }
}

/// Decide structural controllability: every state must be input-reachable
/// and the Hall condition must hold over the full state set.
pub fn is_structurally_controllable(pattern: &StructuredPattern) -> Verdict {
    decide(pattern, Question::Controllability)
}

/// Decide structural target controllability with respect to `targets`: the
/// target vertices must be input-reachable and the Hall condition must hold
/// over every subset of them.
pub fn is_structurally_target_controllable(
    pattern: &StructuredPattern,
    targets: &TargetSet,
) -> Verdict {
    decide(pattern, Question::TargetControllability(targets.clone()))
}

/// Monte-Carlo cross-validation of a structural verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub seed: u64,
    /// Full row rank to compare against: |T| for a target question, n for
    /// full controllability.
    pub required_rank: usize,
    /// Numeric rank of (C_T·)Q per trial, in trial order.
    pub ranks: Vec<usize>,
    /// Fraction of trials agreeing with the structural decision.
    pub agreement: f64,
    /// Trials that still disagreed after the tightened-tolerance retry.
    pub anomalies: Vec<usize>,
    /// Whether power blocks were rescaled for rank robustness (n > 20).
    pub normalized: bool,
    pub structural_decision: bool,
}

/// States worth keeping for numeric work on a target question: everything
/// input-reachable plus everything connected to a target. The rest cannot
/// influence the targets (symmetry makes reachability two-way), so dropping
/// them changes no rank. The combinatorial decision never prunes.
fn numeric_keep_set(pattern: &StructuredPattern, targets: &TargetSet) -> Vec<usize> {
    let digraph = SystemDigraph::from_pattern(pattern);
    let mut keep = vec![false; pattern.n()];
    for x in crate::structural::input_reachable(&digraph) {
        keep[x] = true;
    }
    let mut stack: Vec<usize> = targets.indices().to_vec();
    let mut seen = vec![false; pattern.n()];
    for &t in targets.indices() {
        seen[t] = true;
    }
    while let Some(x) = stack.pop() {
        keep[x] = true;
        for &y in digraph.out_states(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..pattern.n()).filter(|&x| keep[x]).collect()
}

/// Sample realizations and compare full-row-rank of the (target)
/// controllability matrix against the structural decision, trial by trial.
///
/// Trial `i` uses the child seed derived from (`seed`, `i`), so results do
/// not depend on evaluation order. A trial disagreeing with the structural
/// decision is re-checked once with the rank tolerance tightened by 1e-2;
/// trials that still disagree are recorded as anomalies, never dropped. A
/// FALSE structural verdict admits no numeric escape — rank deficiency is
/// certain, not generic — so anomalies there always deserve attention.
pub fn monte_carlo_verify(
    pattern: &StructuredPattern,
    targets: Option<&TargetSet>,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<MonteCarloSummary, NumericError> {
    if trials == 0 {
        return Err(NumericError::NoTrials);
    }
    let structural = match targets {
        Some(t) => is_structurally_target_controllable(pattern, t).decision,
        None => is_structurally_controllable(pattern).decision,
    };
    // Prune for the numeric runs only (target questions).
    let (work_pattern, work_targets) = match targets {
        None => (
            pattern.clone(),
            TargetSet::all(pattern.n()).expect("n >= 1"),
        ),
        Some(t) => {
            let keep = numeric_keep_set(pattern, t);
            if keep.len() == pattern.n() {
                (pattern.clone(), t.clone())
            } else {
                let reindexed = t
                    .indices()
                    .iter()
                    .map(|&x| keep.binary_search(&x).expect("targets are kept"));
                let sub = pattern.induced(&keep);
                let new_t = TargetSet::new(reindexed, keep.len()).expect("nonempty targets");
                (sub, new_t)
            }
        }
    };
    let required_rank = work_targets.k();
    let normalized = work_pattern.n() > 20;
    let tightened = tol.with_rank_rel(tol.rank_rel * 1e-2);
    let mut ranks = Vec::with_capacity(trials);
    let mut anomalies = Vec::new();
    for trial in 0..trials {
        let r = sample_realization(&work_pattern, child_seed(seed, trial as u64), tol);
        let q = target_controllability_matrix(&r, &work_targets, normalized);
        let mut rank = numeric_rank(&q, tol)?;
        if (rank == required_rank) != structural {
            rank = numeric_rank(&q, &tightened)?;
            if (rank == required_rank) != structural {
                anomalies.push(trial);
            }
        }
        ranks.push(rank);
    }
    let agreement = (trials - anomalies.len()) as f64 / trials as f64;
    Ok(MonteCarloSummary {
        trials,
        seed,
        required_rank,
        ranks,
        agreement,
        anomalies,
        normalized,
        structural_decision: structural,
    })
}

/// Greedy input augmentation: new input attachments that make the pattern
/// structurally target controllable with respect to `targets`.
///
/// First one attachment per connected component that holds a target but no
/// input-reachable vertex (placed on the component's smallest target), then
/// one attachment per right-unmatched target of a maximum matching until the
/// target side saturates. The result is sufficient by construction and an
/// upper bound on the minimum; it makes no minimality claim.
///
/// Returns (state, input) pairs; new inputs are numbered from the pattern's
/// current input count. An empty target list needs no attachments.
pub fn suggest_input_augmentation(
    pattern: &StructuredPattern,
    targets: &[usize],
) -> Result<Vec<(usize, usize)>, TargetError> {
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    let target_set = TargetSet::new(targets.iter().copied(), pattern.n())?;
    let mut work = pattern.clone();
    let mut attachments: Vec<(usize, usize)> = Vec::new();

    // Reachability: components are those of the undirected state graph, so
    // one attachment anywhere reaches the whole component.
    let digraph = SystemDigraph::from_pattern(&work);
    let reached = crate::structural::input_reachable(&digraph);
    let mut component = vec![usize::MAX; work.n()];
    let mut comp_count = 0;
    for start in 0..work.n() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = comp_count;
        while let Some(x) = stack.pop() {
            for &y in digraph.out_states(x) {
                if component[y] == usize::MAX {
                    component[y] = comp_count;
                    stack.push(y);
                }
            }
        }
        comp_count += 1;
    }
    for comp in 0..comp_count {
        let members: Vec<usize> = (0..work.n()).filter(|&x| component[x] == comp).collect();
        let has_target = members.iter().any(|x| target_set.contains(*x));
        let is_reached = members.iter().any(|x| reached.contains(x));
        if has_target && !is_reached {
            let anchor = *members
                .iter()
                .find(|x| target_set.contains(**x))
                .expect("component holds a target");
            attachments.push((anchor, work.m() + attachments.len()));
        }
    }

    // Hall: attach a dedicated input to each right-unmatched target.
    let mut guard = 0;
    loop {
        let with_new = apply_attachments(&work, &attachments);
        let digraph = SystemDigraph::from_pattern(&with_new);
        let view = BipartiteView::new(&digraph, target_set.indices())
            .expect("targets are valid states");
        let matching = max_matching(&view);
        if matching.saturates_right() {
            work = with_new;
            break;
        }
        for &x in &matching.right_unmatched {
            attachments.push((x, pattern.m() + attachments.len()));
        }
        guard += 1;
        assert!(guard <= pattern.n(), "augmentation failed to converge");
    }
    debug_assert!(is_structurally_target_controllable(&work, &target_set).decision);
    Ok(attachments)
}

fn apply_attachments(
    pattern: &StructuredPattern,
    attachments: &[(usize, usize)],
) -> StructuredPattern {
    let extra = attachments.len();
    StructuredPattern::from_pairs(
        pattern.n(),
        pattern.m() + extra,
        pattern.a_entries().iter().copied(),
        pattern
            .b_entries()
            .iter()
            .copied()
            .chain(attachments.iter().copied()),
    )
    .expect("attachment indices are in range")
}
