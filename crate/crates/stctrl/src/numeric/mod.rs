//! Numeric oracle: random symmetric realizations, rank and eigen
//! computations, PBH mode tests, characteristic/adjugate/truncated
//! polynomials, Sylvester resultants and the Hoffman–Wielandt inequality.
//!
//! Structural verdicts are generic statements: they hold for all parameter
//! values off a proper variety. The oracle probes that variety numerically —
//! sample concrete weights, realize the matrices, and measure ranks and
//! spectra — instead of ever representing it symbolically.

mod poly;
mod realization;
mod spectral;

pub use poly::{
    adjugate_poly, char_poly, eval_matrix_poly, phi_poly, poly_suite, psi_poly, sylvester_matrix,
    sylvester_resultant, Poly, PolySuite,
};
pub use realization::{
    constructive_realization, controllability_matrix, controllability_matrix_normalized,
    sample_realization, target_controllability_matrix, NumericRealization,
};
pub use spectral::{
    count_nonzero_simple, hoffman_wielandt, numeric_rank, pbh_modes, symmetric_eigenvalues,
    ModeReport,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("eigendecomposition did not converge")]
    EigenFailed,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial has a zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("cycle cover is not valid for the pattern: {0}")]
    InvalidCover(String),
    #[error("perturbation retries exhausted without separating the spectrum")]
    PerturbationFailed,
    #[error("at least one trial is required")]
    NoTrials,
}

/// Every threshold used by the numeric machinery, centralized.
///
/// Factors marked `*_factor` are relative to the Frobenius norm of the matrix
/// under test; `rank_rel` is relative to the largest singular value times the
/// larger matrix dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Rank threshold: sigma > rank_rel * sigma_max * max(rows, cols).
    pub rank_rel: f64,
    /// Absolute rank floor used when sigma_max = 0.
    pub rank_abs: f64,
    /// An eigenvalue counts as zero when |lambda| <= eig_zero_factor * ||A||_F.
    pub eig_zero_factor: f64,
    /// An eigenvalue counts as simple when its nearest-neighbor gap exceeds
    /// eig_gap_factor * ||A||_F.
    pub eig_gap_factor: f64,
    /// A mode is uncontrollable when ||e^T B|| <= pbh * ||e|| * ||B||_F.
    pub pbh: f64,
    /// Sampled weights satisfy weight_floor <= |w| <= 1, keeping realizations
    /// away from the degenerate zero-weight surface.
    pub weight_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_rel: 1e-9,
            rank_abs: 1e-12,
            eig_zero_factor: 1e-8,
            eig_gap_factor: 1e-7,
            pbh: 1e-8,
            weight_floor: 0.05,
        }
    }
}

impl Tolerances {
    /// Same thresholds with the rank tolerance replaced.
    pub fn with_rank_rel(self, rank_rel: f64) -> Self {
        Self { rank_rel, ..self }
    }
}

/// Child seed for trial `index` under `master`, so Monte-Carlo trials are
/// identical regardless of execution order or parallelism. SplitMix64 mixing.
pub fn child_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
