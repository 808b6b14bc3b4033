//! Numerical realizations of structural pairs: seeded random sampling, the
//! cycle-cover construction with spectral perturbation, and controllability
//! matrices.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{StructuredPattern, TargetSet};
use crate::numeric::spectral::count_nonzero_simple;
use crate::numeric::{child_seed, NumericError, Tolerances};
use crate::structural::CycleCover;

/// Concrete symmetric (A, B) with the weight vector that produced them.
///
/// A is symmetric bitwise: each sampled weight is written to both (i, j) and
/// (j, i). Zeros of the pattern stay exactly zero. `params` lists the state
/// weights in canonical entry order followed by the input weights.
#[derive(Clone, Debug)]
pub struct NumericRealization {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub params: Vec<f64>,
    pub seed: u64,
}

impl NumericRealization {
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn m(&self) -> usize {
        self.b.ncols()
    }
}

fn realize(pattern: &StructuredPattern, a_weights: &[f64], b_weights: &[f64], seed: u64) -> NumericRealization {
    let n = pattern.n();
    let m = pattern.m();
    let mut a = DMatrix::zeros(n, n);
    for (&(i, j), &w) in pattern.a_entries().iter().zip(a_weights) {
        a[(i, j)] = w;
        a[(j, i)] = w;
    }
    let mut b = DMatrix::zeros(n, m);
    for (&(i, j), &w) in pattern.b_entries().iter().zip(b_weights) {
        b[(i, j)] = w;
    }
    let mut params = a_weights.to_vec();
    params.extend_from_slice(b_weights);
    NumericRealization { a, b, params, seed }
}

/// Draw one weight from the two-sided uniform distribution on
/// [-1, -floor] ∪ [floor, 1].
fn draw_weight(rng: &mut ChaCha8Rng, floor: f64) -> f64 {
    let magnitude = rng.gen_range(floor..=1.0);
    if rng.gen_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// Sample a realization: one independent weight per free parameter, written
/// symmetrically. Deterministic for a fixed seed.
pub fn sample_realization(
    pattern: &StructuredPattern,
    seed: u64,
    tol: &Tolerances,
) -> NumericRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a_weights: Vec<f64> = (0..pattern.n_params_a())
        .map(|_| draw_weight(&mut rng, tol.weight_floor))
        .collect();
    let b_weights: Vec<f64> = (0..pattern.n_params_b())
        .map(|_| draw_weight(&mut rng, tol.weight_floor))
        .collect();
    realize(pattern, &a_weights, &b_weights, seed)
}

/// Realize a pattern from an explicit cycle cover: distinct nonzero weights
/// on self-loops and 2-cycle pairs, zero on every other star. Odd cycles of
/// length >= 3 leave one vertex uncovered by the pairing; their edges then
/// receive a small symmetric perturbation (magnitude <= `perturb`, retried up
/// to 16 times with fresh draws) until every covered vertex contributes a
/// nonzero simple eigenvalue.
pub fn constructive_realization(
    pattern: &StructuredPattern,
    cover: &CycleCover,
    perturb: f64,
    seed: u64,
    tol: &Tolerances,
) -> Result<NumericRealization, NumericError> {
    let n = pattern.n();
    let mut seen = vec![false; n];
    for cycle in &cover.cycles {
        if cycle.is_empty() {
            return Err(NumericError::InvalidCover("empty cycle".into()));
        }
        for &v in cycle {
            if v >= n {
                return Err(NumericError::InvalidCover(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if seen[v] {
                return Err(NumericError::InvalidCover(format!(
                    "vertex {v} appears in two cycles"
                )));
            }
            seen[v] = true;
        }
        let len = cycle.len();
        for t in 0..len {
            let from = cycle[t];
            let to = cycle[(t + 1) % len];
            if (len == 1 && !pattern.has_a(from, from))
                || (len > 1 && !pattern.has_a(from, to))
            {
                return Err(NumericError::InvalidCover(format!(
                    "({from}, {to}) is not a star of the pattern"
                )));
            }
            if len <= 2 && t == 1 {
                break;
            }
        }
    }

    let total: usize = cover.cycles.iter().map(Vec::len).sum();
    let mut base = vec![0.0; pattern.n_params_a()];
    let mut next = 0.0;
    let mut draw = || {
        next += 1.0;
        next
    };
    let mut odd_edges: Vec<usize> = Vec::new();
    for cycle in &cover.cycles {
        match cycle.len() {
            1 => base[pattern.a_param_index(cycle[0], cycle[0]).unwrap()] = draw(),
            2 => base[pattern.a_param_index(cycle[0], cycle[1]).unwrap()] = draw(),
            len => {
                // Pair consecutive vertices; the last one stays unpaired and
                // is separated by the perturbation below.
                for pair in cycle.chunks(2) {
                    if pair.len() == 2 {
                        base[pattern.a_param_index(pair[0], pair[1]).unwrap()] = draw();
                    }
                }
                for t in 0..len {
                    odd_edges
                        .push(pattern.a_param_index(cycle[t], cycle[(t + 1) % len]).unwrap());
                }
            }
        }
    }
    odd_edges.sort_unstable();
    odd_edges.dedup();

    let b_weights = vec![0.0; pattern.n_params_b()];
    if odd_edges.is_empty() {
        let r = realize(pattern, &base, &b_weights, seed);
        debug_assert_eq!(count_nonzero_simple(&r, tol), Ok(total));
        return Ok(r);
    }
    for attempt in 0..16 {
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, attempt));
        let mut weights = base.clone();
        for &idx in &odd_edges {
            weights[idx] += rng.gen_range(-perturb..=perturb);
        }
        let r = realize(pattern, &weights, &b_weights, seed);
        if count_nonzero_simple(&r, tol)? == total {
            return Ok(r);
        }
    }
    Err(NumericError::PerturbationFailed)
}

/// The controllability matrix Q(A, B) = [B, AB, ..., A^{n-1}B], exactly.
pub fn controllability_matrix(r: &NumericRealization) -> DMatrix<f64> {
    build_controllability(r, false)
}

/// Q(A, B) with each power block rescaled to unit max-entry.
///
/// Positive per-block scaling leaves the rank unchanged; it only keeps the
/// singular-value spread sane for larger networks, so rank tests stay
/// meaningful past n ≈ 20. Reports flag when this variant was used.
pub fn controllability_matrix_normalized(r: &NumericRealization) -> DMatrix<f64> {
    build_controllability(r, true)
}

fn build_controllability(r: &NumericRealization, normalized: bool) -> DMatrix<f64> {
    let n = r.n();
    let m = r.m();
    let mut q = DMatrix::zeros(n, n * m);
    let mut block = r.b.clone();
    for j in 0..n {
        if j > 0 {
            block = &r.a * &block;
        }
        if normalized {
            let scale = block.amax();
            if scale > 0.0 {
                block /= scale;
            }
        }
        q.view_mut((0, j * m), (n, m)).copy_from(&block);
    }
    q
}

/// C_T · Q(A, B): the rows of the controllability matrix selected by T.
pub fn target_controllability_matrix(
    r: &NumericRealization,
    targets: &TargetSet,
    normalized: bool,
) -> DMatrix<f64> {
    let q = build_controllability(r, normalized);
    q.select_rows(targets.indices().iter())
}
