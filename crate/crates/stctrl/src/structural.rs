//! Combinatorial machinery: input-reachability, maximum bipartite matching,
//! Hall-condition certificates, term rank and cycle covers.
//!
//! Everything here is deterministic: adjacency lists are sorted, vertices are
//! processed in ascending order, so certificates are reproducible.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{BipartiteView, StructuredPattern, SystemDigraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("no cycle cover: rows {violating:?} cannot be matched to distinct columns within the set")]
    NoCover { violating: Vec<usize> },
}

/// A matching of a bipartite view: left vertices paired with right states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// (left vertex, right state index), sorted by the right index.
    pub pairs: Vec<(Vertex, usize)>,
    /// Right state indices left unmatched, ascending.
    pub right_unmatched: Vec<usize>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// True when every right vertex of `view` is matched.
    pub fn saturates_right(&self) -> bool {
        self.right_unmatched.is_empty()
    }

    /// Check the matching against its source view: every pair is an edge and
    /// no vertex repeats on either side.
    pub fn is_valid_for(&self, view: &BipartiteView) -> bool {
        let mut lefts = BTreeSet::new();
        let mut rights = BTreeSet::new();
        self.pairs.iter().all(|&(left, right)| {
            lefts.insert(left)
                && rights.insert(right)
                && view.neighbor_set(&[right]).contains(&left)
        })
    }
}

/// Outcome of the Hall condition |N(S)| >= |S| over all S subsets of the right side.
///
/// Exactly one of the certificates is present: a saturating matching when the
/// condition holds, a violating set (with |N(S)| < |S|, re-verified before
/// return) when it does not.
#[derive(Clone, Debug)]
pub struct HallCertificate {
    pub satisfied: bool,
    /// Right state indices S with |N(S)| < |S|, ascending.
    pub violating_set: Option<Vec<usize>>,
    pub saturating_matching: Option<Matching>,
}

/// Disjoint cycles covering a state set in the state digraph.
///
/// Each cycle is a vertex sequence; `[v]` is a self-loop, `[a, b]` a 2-cycle.
/// Even cycles are always decomposed into 2-cycles (the symmetric pattern
/// provides the reverse edges), so entries are self-loops, 2-cycles, or odd
/// cycles of length >= 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    pub fn covered(&self) -> BTreeSet<usize> {
        self.cycles.iter().flatten().copied().collect()
    }
}

/// States reachable from some input by a directed path, with the BFS forest
/// as witness: `parent[x]` is the predecessor of x on its path (an input for
/// the roots), `None` for unreached states.
#[derive(Clone, Debug)]
pub struct ReachabilityForest {
    pub parent: Vec<Option<Vertex>>,
}

impl ReachabilityForest {
    pub fn reached(&self, state: usize) -> bool {
        self.parent[state].is_some()
    }

    pub fn reached_set(&self) -> BTreeSet<usize> {
        (0..self.parent.len()).filter(|&x| self.reached(x)).collect()
    }
}

/// Multi-source BFS from every input vertex, visiting in ascending order.
pub fn reachability_forest(digraph: &SystemDigraph) -> ReachabilityForest {
    let mut parent = vec![None; digraph.n()];
    let mut queue = VecDeque::new();
    for u in 0..digraph.m() {
        for &x in digraph.states_fed_by(u) {
            if parent[x].is_none() {
                parent[x] = Some(Vertex::Input(u));
                queue.push_back(x);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in digraph.out_states(x) {
            if parent[y].is_none() {
                parent[y] = Some(Vertex::State(x));
                queue.push_back(y);
            }
        }
    }
    ReachabilityForest { parent }
}

/// The set of input-reachable state vertices.
pub fn input_reachable(digraph: &SystemDigraph) -> BTreeSet<usize> {
    reachability_forest(digraph).reached_set()
}

/// Internal bipartite matching state over dense vertex ids.
struct DenseMatching {
    match_left: Vec<Option<usize>>,
    match_right: Vec<Option<usize>>,
    size: usize,
}

/// Hopcroft–Karp maximum matching. `adj` maps each left vertex to its right
/// neighbors; lists must be sorted for deterministic output.
fn hopcroft_karp(left_count: usize, right_count: usize, adj: &[Vec<usize>]) -> DenseMatching {
    const UNREACHED: usize = usize::MAX;
    let mut match_left = vec![None; left_count];
    let mut match_right = vec![None; right_count];
    let mut size = 0;
    let mut dist = vec![UNREACHED; left_count];
    loop {
        // BFS phase: layer left vertices by alternating distance from the
        // free ones.
        let mut queue = VecDeque::new();
        for u in 0..left_count {
            if match_left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = UNREACHED;
            }
        }
        let mut augmenting = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    None => augmenting = true,
                    Some(u2) => {
                        if dist[u2] == UNREACHED {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !augmenting {
            break;
        }
        // DFS phase: vertex-disjoint augmenting paths along the layers.
        fn try_augment(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_left: &mut [Option<usize>],
            match_right: &mut [Option<usize>],
        ) -> bool {
            let du = dist[u];
            dist[u] = UNREACHED;
            for &v in &adj[u] {
                let take = match match_right[v] {
                    None => true,
                    Some(u2) => {
                        dist[u2] == du + 1
                            && try_augment(u2, adj, dist, match_left, match_right)
                    }
                };
                if take {
                    match_left[u] = Some(v);
                    match_right[v] = Some(u);
                    return true;
                }
            }
            false
        }
        for u in 0..left_count {
            if match_left[u].is_none()
                && dist[u] == 0
                && try_augment(u, adj, &mut dist, &mut match_left, &mut match_right)
            {
                size += 1;
            }
        }
    }
    DenseMatching {
        match_left,
        match_right,
        size,
    }
}

/// Left-to-right adjacency of a view (inverting its right-to-left lists).
fn view_left_adjacency(view: &BipartiteView) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); view.left_size()];
    for pos in 0..view.right_size() {
        for &left in view.neighbors_of_pos(pos) {
            adj[left].push(pos);
        }
    }
    adj
}

fn matching_from_dense(view: &BipartiteView, dense: &DenseMatching) -> Matching {
    let mut pairs: Vec<(Vertex, usize)> = dense
        .match_right
        .iter()
        .enumerate()
        .filter_map(|(pos, left)| left.map(|l| (view.left_vertex(l), view.right()[pos])))
        .collect();
    pairs.sort_by_key(|&(_, right)| right);
    let right_unmatched = dense
        .match_right
        .iter()
        .enumerate()
        .filter_map(|(pos, left)| left.is_none().then(|| view.right()[pos]))
        .collect();
    Matching {
        pairs,
        right_unmatched,
    }
}

/// Maximum-cardinality matching of a bipartite view.
pub fn max_matching(view: &BipartiteView) -> Matching {
    let adj = view_left_adjacency(view);
    let dense = hopcroft_karp(view.left_size(), view.right_size(), &adj);
    matching_from_dense(view, &dense)
}

/// Decide the Hall condition over the right side of `view`.
///
/// Satisfied iff a maximum matching saturates the right side. When it does
/// not, a violating set is extracted by alternating-path reachability from
/// the lowest-indexed unmatched right vertex and re-verified before return.
pub fn hall_check(view: &BipartiteView) -> HallCertificate {
    let adj = view_left_adjacency(view);
    let dense = hopcroft_karp(view.left_size(), view.right_size(), &adj);
    let matching = matching_from_dense(view, &dense);
    if matching.saturates_right() {
        return HallCertificate {
            satisfied: true,
            violating_set: None,
            saturating_matching: Some(matching),
        };
    }
    let start = dense
        .match_right
        .iter()
        .position(Option::is_none)
        .expect("an unmatched right vertex exists");
    // Alternating BFS: right -> left along any edge, left -> right along its
    // matched edge. Every reached left vertex is matched, otherwise the path
    // would augment a maximum matching.
    let mut right_seen = vec![false; view.right_size()];
    let mut left_seen = vec![false; view.left_size()];
    right_seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(pos) = queue.pop_front() {
        for &left in view.neighbors_of_pos(pos) {
            if !left_seen[left] {
                left_seen[left] = true;
                let back = dense.match_left[left]
                    .expect("left vertex reached from an unmatched right vertex must be matched");
                if !right_seen[back] {
                    right_seen[back] = true;
                    queue.push_back(back);
                }
            }
        }
    }
    let positions: Vec<usize> = (0..view.right_size()).filter(|&p| right_seen[p]).collect();
    let violating: Vec<usize> = positions.iter().map(|&p| view.right()[p]).collect();
    let neighborhood = view.neighbor_ids_of_positions(&positions);
    assert!(
        neighborhood.len() < violating.len(),
        "extracted set must violate the Hall condition"
    );
    HallCertificate {
        satisfied: false,
        violating_set: Some(violating),
        saturating_matching: None,
    }
}

/// Which pattern a term rank is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermRankScope {
    /// The state pattern alone.
    AOnly,
    /// The concatenation [A, B]: input columns join the column side.
    ConcatAb,
}

/// Term rank: the maximum number of stars on distinct rows and distinct
/// columns, computed as a maximum matching between columns and rows.
pub fn term_rank(pattern: &StructuredPattern, scope: TermRankScope) -> usize {
    let n = pattern.n();
    let cols = match scope {
        TermRankScope::AOnly => n,
        TermRankScope::ConcatAb => n + pattern.m(),
    };
    let mut adj = vec![Vec::new(); cols];
    for &(i, j) in pattern.a_entries() {
        adj[j].push(i);
        if i != j {
            adj[i].push(j);
        }
    }
    if scope == TermRankScope::ConcatAb {
        for &(i, j) in pattern.b_entries() {
            adj[n + j].push(i);
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    hopcroft_karp(cols, n, &adj).size
}

/// Cover the states in `set` by disjoint cycles of the state digraph.
///
/// Requires a matching of the rows in `set` onto distinct columns in `set`
/// (all within the state pattern); the matching is read as a permutation and
/// decomposed into cycles, and every even cycle is split into 2-cycles via
/// the symmetric reverse edges. Fails with a violating row subset otherwise.
pub fn cycle_cover(pattern: &StructuredPattern, set: &[usize]) -> Result<CycleCover, CoverError> {
    let members: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let k = members.len();
    // Left: column positions; right: row positions; edge iff the pattern has
    // a star at (row, col).
    let mut adj = vec![Vec::new(); k];
    for (ci, &c) in members.iter().enumerate() {
        for (ri, &r) in members.iter().enumerate() {
            if pattern.has_a(r, c) {
                adj[ci].push(ri);
            }
        }
    }
    let dense = hopcroft_karp(k, k, &adj);
    if dense.size < k {
        // Alternating reachability from an unmatched row gives rows that
        // cannot all be matched within the set.
        let start = dense
            .match_right
            .iter()
            .position(Option::is_none)
            .expect("deficient matching leaves an unmatched row");
        let mut row_seen = vec![false; k];
        let mut col_seen = vec![false; k];
        row_seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(ri) = queue.pop_front() {
            for ci in 0..k {
                if adj[ci].contains(&ri) && !col_seen[ci] {
                    col_seen[ci] = true;
                    if let Some(r2) = dense.match_left[ci] {
                        if !row_seen[r2] {
                            row_seen[r2] = true;
                            queue.push_back(r2);
                        }
                    }
                }
            }
        }
        let violating = (0..k).filter(|&r| row_seen[r]).map(|r| members[r]).collect();
        return Err(CoverError::NoCover { violating });
    }
    // match_right[row] = col: sigma maps each row position to its column.
    let sigma: Vec<usize> = dense
        .match_right
        .iter()
        .map(|c| c.expect("full matching"))
        .collect();
    let mut visited = vec![false; k];
    let mut cycles = Vec::new();
    for start in 0..k {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            cycle.push(members[cur]);
            cur = sigma[cur];
        }
        if cycle.len() >= 2 && cycle.len() % 2 == 0 {
            // Split into 2-cycles on consecutive vertices; the symmetric
            // pattern supplies each reverse edge.
            for pair in cycle.chunks(2) {
                cycles.push(vec![pair[0].min(pair[1]), pair[0].max(pair[1])]);
            }
        } else {
            cycles.push(cycle);
        }
    }
    cycles.sort();
    Ok(CycleCover { cycles })
}
