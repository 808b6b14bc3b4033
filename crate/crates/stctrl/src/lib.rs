//! Structural controllability and structural target controllability of
//! undirected networks, decided from topology alone.
//!
//! The state matrix of an undirected network is symmetric with unknown link
//! weights, so controllability questions become questions about the zero/star
//! pattern of the pair (A, B). This crate decides them combinatorially
//! (input-reachability plus a Hall condition checked by bipartite matching)
//! and cross-validates every verdict with a numeric oracle built from random
//! symmetric realizations, rank tests, PBH mode tests, cycle-cover
//! constructions, characteristic/adjugate polynomials and Sylvester
//! resultants.
//!
//! Entry points:
//! - [`graph`]: structured patterns, system digraphs, bipartite views and
//!   target selectors.
//! - [`structural`]: reachability, maximum matching, Hall certificates, term
//!   rank and cycle covers.
//! - [`numeric`]: random realizations, ranks, spectra and the polynomial
//!   machinery.
//! - [`decision`]: the actual verdicts plus Monte-Carlo cross-validation and
//!   an input-augmentation heuristic.
//! - [`bruteforce`]: slow exhaustive ground truth used by tests and sweeps.
//! - [`document`] / [`report`]: the JSON network schema and analysis reports
//!   consumed by the `stctrl` CLI.

pub mod bruteforce;
pub mod decision;
pub mod document;
pub mod graph;
pub mod numeric;
pub mod report;
pub mod structural;

pub use decision::{
    is_structurally_controllable, is_structurally_target_controllable, monte_carlo_verify,
    suggest_input_augmentation, MonteCarloSummary, Question, Verdict,
};
pub use graph::{BipartiteView, StructuredPattern, SystemDigraph, TargetSet, Vertex};
pub use numeric::{NumericRealization, Tolerances};
pub use structural::{CycleCover, HallCertificate, Matching};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::graph::StructuredPattern;

    /// The bundled 10-state, 2-input example network: a symmetric pattern
    /// with one self-loop on x6 and inputs attached to x2 (u1) and x1, x5
    /// (u2). Indices here are 0-based.
    pub fn ten_node_pattern() -> StructuredPattern {
        StructuredPattern::from_pairs(
            10,
            2,
            [
                (0, 1),
                (0, 3),
                (0, 4),
                (1, 2),
                (2, 3),
                (4, 6),
                (5, 5),
                (5, 6),
                (6, 8),
                (7, 8),
                (8, 9),
            ],
            [(1, 0), (0, 1), (4, 1)],
        )
        .unwrap()
    }
}
