//! Structured patterns, system digraphs, bipartite views and target sets.
//!
//! A `StructuredPattern` is the zero/star pattern of a pair (A, B): the state
//! pattern is symmetrically structured (the (i, j) and (j, i) stars are the
//! same free parameter), the input pattern is free. The associated system
//! digraph has one state vertex per state, one input vertex per input, a
//! directed edge x_j -> x_i per star [A]_ij and u_j -> x_i per star [B]_ij.
//! All indices at this layer are 0-based; the document layer converts from
//! the 1-based external convention.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("state index {index} out of range for n = {n} states")]
    StateOutOfRange { index: usize, n: usize },
    #[error("input index {index} out of range for m = {m} inputs")]
    InputOutOfRange { index: usize, m: usize },
    #[error("state pattern is not symmetric: entry ({i}, {j}) is set but ({j}, {i}) is not")]
    Asymmetric { i: usize, j: usize },
    #[error("state pattern row {row} has {len} entries, expected {n}")]
    RaggedStateRow { row: usize, len: usize, n: usize },
    #[error("input pattern row {row} has {len} entries, expected {m}")]
    RaggedInputRow { row: usize, len: usize, m: usize },
    #[error("input pattern has {rows} rows but the state pattern has {n}")]
    RowCountMismatch { rows: usize, n: usize },
    #[error("state dimension must be at least 1")]
    EmptyStateSpace,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TargetError {
    #[error("target index {index} out of range for n = {n} states")]
    OutOfRange { index: usize, n: usize },
    #[error("target set must contain at least one state")]
    Empty,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ViewError {
    #[error("right vertex set contains index {index}, which is not a state (n = {n})")]
    NonStateVertex { index: usize, n: usize },
}

/// Zero/star pattern of a structural pair (A, B).
///
/// The state pattern is stored as the set of unordered index pairs carrying a
/// star; `(i, i)` is a self-loop. Both orientations of an off-diagonal star
/// map to the same parameter, so `n_params_a` counts unordered pairs once.
/// Duplicate pair declarations collapse: patterns are sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredPattern {
    n: usize,
    m: usize,
    /// Canonical unordered pairs (i <= j), sorted.
    a_entries: Vec<(usize, usize)>,
    /// (state, input) pairs, sorted.
    b_entries: Vec<(usize, usize)>,
}

impl StructuredPattern {
    /// Build a pattern from unordered state pairs and (state, input) pairs.
    ///
    /// Pairs may come in either orientation and may repeat; they are
    /// canonicalized to `(min, max)` and deduplicated.
    pub fn from_pairs(
        n: usize,
        m: usize,
        a_pairs: impl IntoIterator<Item = (usize, usize)>,
        b_pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PatternError> {
        if n == 0 {
            return Err(PatternError::EmptyStateSpace);
        }
        let mut a_set = BTreeSet::new();
        for (i, j) in a_pairs {
            if i >= n {
                return Err(PatternError::StateOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(PatternError::StateOutOfRange { index: j, n });
            }
            a_set.insert((i.min(j), i.max(j)));
        }
        let mut b_set = BTreeSet::new();
        for (i, j) in b_pairs {
            if i >= n {
                return Err(PatternError::StateOutOfRange { index: i, n });
            }
            if j >= m {
                return Err(PatternError::InputOutOfRange { index: j, m });
            }
            b_set.insert((i, j));
        }
        Ok(Self {
            n,
            m,
            a_entries: a_set.into_iter().collect(),
            b_entries: b_set.into_iter().collect(),
        })
    }

    /// Build a pattern from full boolean matrices.
    ///
    /// An asymmetric state matrix is a modeling error for undirected networks
    /// and is rejected rather than symmetrized.
    pub fn from_matrices(a: &[Vec<bool>], b: &[Vec<bool>]) -> Result<Self, PatternError> {
        let n = a.len();
        if n == 0 {
            return Err(PatternError::EmptyStateSpace);
        }
        for (row, entries) in a.iter().enumerate() {
            if entries.len() != n {
                return Err(PatternError::RaggedStateRow {
                    row,
                    len: entries.len(),
                    n,
                });
            }
        }
        if b.len() != n {
            return Err(PatternError::RowCountMismatch { rows: b.len(), n });
        }
        let m = b.first().map_or(0, Vec::len);
        for (row, entries) in b.iter().enumerate() {
            if entries.len() != m {
                return Err(PatternError::RaggedInputRow {
                    row,
                    len: entries.len(),
                    m,
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if a[i][j] && !a[j][i] {
                    return Err(PatternError::Asymmetric { i, j });
                }
            }
        }
        let a_pairs = (0..n).flat_map(|i| (i..n).filter(move |&j| a[i][j]).map(move |j| (i, j)));
        let b_pairs =
            (0..n).flat_map(|i| (0..m).filter(move |&j| b[i][j]).map(move |j| (i, j)));
        Self::from_pairs(n, m, a_pairs, b_pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Canonical unordered state pairs carrying a star, sorted.
    pub fn a_entries(&self) -> &[(usize, usize)] {
        &self.a_entries
    }

    /// (state, input) pairs carrying a star, sorted.
    pub fn b_entries(&self) -> &[(usize, usize)] {
        &self.b_entries
    }

    /// Number of independent state parameters (unordered pairs count once).
    pub fn n_params_a(&self) -> usize {
        self.a_entries.len()
    }

    pub fn n_params_b(&self) -> usize {
        self.b_entries.len()
    }

    pub fn has_a(&self, i: usize, j: usize) -> bool {
        self.a_param_index(i, j).is_some()
    }

    pub fn has_b(&self, state: usize, input: usize) -> bool {
        self.b_entries.binary_search(&(state, input)).is_ok()
    }

    /// Parameter index of the star at (i, j), in canonical entry order.
    pub fn a_param_index(&self, i: usize, j: usize) -> Option<usize> {
        self.a_entries.binary_search(&(i.min(j), i.max(j))).ok()
    }

    pub fn b_param_index(&self, state: usize, input: usize) -> Option<usize> {
        self.b_entries.binary_search(&(state, input)).ok()
    }

    /// Restrict to the states in `keep` (sorted, distinct), re-indexing them
    /// by their position in `keep`. All inputs are kept; stars with an
    /// endpoint outside `keep` are dropped.
    pub fn induced(&self, keep: &[usize]) -> StructuredPattern {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(keep.iter().all(|&v| v < self.n));
        let pos = |v: usize| keep.binary_search(&v).ok();
        let a_pairs = self
            .a_entries
            .iter()
            .filter_map(|&(i, j)| Some((pos(i)?, pos(j)?)));
        let b_pairs = self
            .b_entries
            .iter()
            .filter_map(|&(i, j)| Some((pos(i)?, j)));
        StructuredPattern::from_pairs(keep.len(), self.m, a_pairs, b_pairs)
            .expect("induced pattern indices are in range")
    }
}

/// A vertex of the system digraph: a state x_i or an input u_j.
///
/// Ordering puts states before inputs, each ascending by index, which fixes
/// the deterministic tie-breaking used throughout. Display uses the 1-based
/// external labels x1..xn, u1..um.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    State(usize),
    Input(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::State(i) => write!(f, "x{}", i + 1),
            Vertex::Input(j) => write!(f, "u{}", j + 1),
        }
    }
}

/// The system digraph D(A, B) of a structural pair.
///
/// Each off-diagonal star yields both directed orientations; a self-loop
/// yields one loop edge. Input vertices have no incoming edges.
#[derive(Clone, Debug)]
pub struct SystemDigraph {
    n: usize,
    m: usize,
    /// Out-neighbors among states, per state, sorted (self-loops included once).
    state_out: Vec<Vec<usize>>,
    /// States fed by each input, sorted.
    input_out: Vec<Vec<usize>>,
    /// In-neighbors (states and inputs) per state, sorted.
    state_in: Vec<Vec<Vertex>>,
}

impl SystemDigraph {
    pub fn from_pattern(pattern: &StructuredPattern) -> Self {
        let n = pattern.n();
        let m = pattern.m();
        let mut state_out = vec![Vec::new(); n];
        let mut input_out = vec![Vec::new(); m];
        let mut state_in = vec![Vec::new(); n];
        for &(i, j) in pattern.a_entries() {
            state_out[i].push(j);
            state_in[j].push(Vertex::State(i));
            if i != j {
                state_out[j].push(i);
                state_in[i].push(Vertex::State(j));
            }
        }
        for &(i, j) in pattern.b_entries() {
            input_out[j].push(i);
            state_in[i].push(Vertex::Input(j));
        }
        for adj in state_out.iter_mut().chain(input_out.iter_mut()) {
            adj.sort_unstable();
        }
        for adj in state_in.iter_mut() {
            adj.sort_unstable();
        }
        Self {
            n,
            m,
            state_out,
            input_out,
            state_in,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Directed state edges (from, to); symmetric pairs appear twice.
    pub fn state_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.state_out
            .iter()
            .enumerate()
            .flat_map(|(from, tos)| tos.iter().map(move |&to| (from, to)))
    }

    pub fn state_edge_count(&self) -> usize {
        self.state_out.iter().map(Vec::len).sum()
    }

    /// Directed input edges (input, state).
    pub fn input_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.input_out
            .iter()
            .enumerate()
            .flat_map(|(u, tos)| tos.iter().map(move |&to| (u, to)))
    }

    pub fn input_edge_count(&self) -> usize {
        self.input_out.iter().map(Vec::len).sum()
    }

    pub fn out_states(&self, state: usize) -> &[usize] {
        &self.state_out[state]
    }

    pub fn states_fed_by(&self, input: usize) -> &[usize] {
        &self.input_out[input]
    }

    /// In-neighbors of a state vertex, i.e. every v with an edge v -> x.
    /// A self-loop puts a state in its own in-neighborhood.
    pub fn in_neighbors(&self, state: usize) -> &[Vertex] {
        &self.state_in[state]
    }

    /// N(S) for a set of state indices: all vertices with an edge into S.
    pub fn neighborhood(&self, states: &[usize]) -> BTreeSet<Vertex> {
        states
            .iter()
            .flat_map(|&x| self.state_in[x].iter().copied())
            .collect()
    }

    /// Recover the structural pair; round-trips with `from_pattern`.
    pub fn to_pattern(&self) -> StructuredPattern {
        let a_pairs = self.state_edges().map(|(from, to)| (to, from));
        let b_pairs = self.input_edges().map(|(u, x)| (x, u));
        StructuredPattern::from_pairs(self.n, self.m, a_pairs, b_pairs)
            .expect("digraph indices are in range")
    }
}

/// Bipartite view B(S1, S2) with S1 = X ∪ U on the left and a chosen set of
/// state vertices on the right; edge {v, x} iff the digraph has v -> x.
///
/// Left vertices are identified by a dense id: states are 0..n, inputs are
/// n..n+m.
#[derive(Clone, Debug)]
pub struct BipartiteView {
    n: usize,
    m: usize,
    /// Sorted, distinct state indices forming the right side.
    right: Vec<usize>,
    /// Per right position, sorted left ids adjacent to it.
    adj: Vec<Vec<usize>>,
}

impl BipartiteView {
    pub fn new(digraph: &SystemDigraph, right: &[usize]) -> Result<Self, ViewError> {
        let n = digraph.n();
        let m = digraph.m();
        for &x in right {
            if x >= n {
                return Err(ViewError::NonStateVertex { index: x, n });
            }
        }
        let right: Vec<usize> = right.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let adj = right
            .iter()
            .map(|&x| {
                digraph
                    .in_neighbors(x)
                    .iter()
                    .map(|&v| match v {
                        Vertex::State(i) => i,
                        Vertex::Input(j) => n + j,
                    })
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            })
            .collect();
        Ok(Self { n, m, right, adj })
    }

    /// Number of left vertices (all states plus all inputs).
    pub fn left_size(&self) -> usize {
        self.n + self.m
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn right_size(&self) -> usize {
        self.right.len()
    }

    pub fn left_vertex(&self, id: usize) -> Vertex {
        if id < self.n {
            Vertex::State(id)
        } else {
            Vertex::Input(id - self.n)
        }
    }

    /// Left ids adjacent to the right vertex at `pos`.
    pub fn neighbors_of_pos(&self, pos: usize) -> &[usize] {
        &self.adj[pos]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Neighbor set N_B(S) of a set of right state indices.
    pub fn neighbor_set(&self, states: &[usize]) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for &x in states {
            if let Ok(pos) = self.right.binary_search(&x) {
                out.extend(self.adj[pos].iter().map(|&id| self.left_vertex(id)));
            }
        }
        out
    }

    /// Neighbor set over right positions, as left ids.
    pub(crate) fn neighbor_ids_of_positions(&self, positions: &[usize]) -> BTreeSet<usize> {
        positions
            .iter()
            .flat_map(|&p| self.adj[p].iter().copied())
            .collect()
    }
}

/// A target set T: sorted distinct state indices, at least one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSet {
    indices: Vec<usize>,
    n: usize,
}

impl TargetSet {
    /// Duplicates collapse; indices are sorted.
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self, TargetError> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(TargetError::Empty);
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= n) {
            return Err(TargetError::OutOfRange { index: bad, n });
        }
        Ok(Self {
            indices: set.into_iter().collect(),
            n,
        })
    }

    /// The full target set T = [n], reducing target controllability to
    /// ordinary controllability.
    pub fn all(n: usize) -> Result<Self, TargetError> {
        Self::new(0..n, n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// The k x n selector: row l has a single 1 in column i_l.
    pub fn selector(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.indices.len(), self.n);
        for (row, &i) in self.indices.iter().enumerate() {
            c[(row, i)] = 1.0;
        }
        c
    }
}
