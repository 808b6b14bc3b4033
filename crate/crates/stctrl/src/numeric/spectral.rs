//! Rank and spectral tests: SVD-based numeric rank, symmetric
//! eigendecompositions, PBH mode controllability, and the Hoffman–Wielandt
//! perturbation bound.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::numeric::{NumericError, NumericRealization, Tolerances};

/// Count singular values above rank_rel * sigma_max * max(rows, cols); the
/// absolute floor rank_abs applies when sigma_max = 0.
pub fn numeric_rank(m: &DMatrix<f64>, tol: &Tolerances) -> Result<usize, NumericError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(NumericError::NonFinite);
    }
    let svd = m.clone().svd(false, false);
    let sigma_max = svd.singular_values.max();
    let threshold = if sigma_max == 0.0 {
        tol.rank_abs
    } else {
        tol.rank_rel * sigma_max * m.nrows().max(m.ncols()) as f64
    };
    Ok(svd.singular_values.iter().filter(|&&s| s > threshold).count())
}

/// Eigenvalues of a symmetric matrix (real spectrum), unsorted.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>, NumericError> {
    if a.nrows() != a.ncols() {
        return Err(NumericError::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(NumericError::NonFinite);
    }
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 0)
        .ok_or(NumericError::EigenFailed)?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

fn sorted_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>, NumericError> {
    let mut v = symmetric_eigenvalues(a)?;
    v.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(v)
}

/// Group sorted eigenvalues into clusters whose internal gaps are <= gap_tol.
fn cluster_spectrum(sorted: &[f64], gap_tol: f64) -> Vec<(usize, usize)> {
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > gap_tol {
            clusters.push((start, i - start));
            start = i;
        }
    }
    clusters
}

/// Spectrum of a realization annotated with multiplicities and per-mode
/// controllability flags from the PBH test.
#[derive(Clone, Debug)]
pub struct ModeReport {
    /// Ascending eigenvalues of A.
    pub eigenvalues: Vec<f64>,
    /// Cluster size each eigenvalue belongs to (1 = simple).
    pub multiplicity: Vec<usize>,
    /// Per eigenvalue: false iff some left eigenvector of its cluster
    /// annihilates B.
    pub controllable: Vec<bool>,
    pub nonzero_simple_count: usize,
}

/// PBH test over the real eigendecomposition of A.
///
/// Eigenvalues are clustered by gap; a cluster is uncontrollable when the
/// smallest singular value of (eigenbasis^T B) falls below pbh * ||B||_F —
/// i.e. some unit vector e in the eigenspace has ||e^T B|| essentially zero.
pub fn pbh_modes(r: &NumericRealization, tol: &Tolerances) -> Result<ModeReport, NumericError> {
    let a = &r.a;
    let n = a.nrows();
    if a.iter().any(|v| !v.is_finite()) || r.b.iter().any(|v| !v.is_finite()) {
        return Err(NumericError::NonFinite);
    }
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 0)
        .ok_or(NumericError::EigenFailed)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let a_norm = a.norm();
    let gap_tol = tol.eig_gap_factor * a_norm;
    let zero_tol = tol.eig_zero_factor * a_norm;
    let clusters = cluster_spectrum(&eigenvalues, gap_tol);

    let b_norm = r.b.norm();
    let m = r.b.ncols();
    let mut multiplicity = vec![0usize; n];
    let mut controllable = vec![false; n];
    for &(start, len) in &clusters {
        let basis = eig
            .eigenvectors
            .select_columns(order[start..start + len].iter());
        let block = basis.transpose() * &r.b;
        // The smallest singular value of e^T B over unit e in the eigenspace;
        // zero whenever the eigenspace is wider than the input count.
        let sigma_min = if m == 0 || len > m {
            0.0
        } else {
            block.svd(false, false).singular_values.min()
        };
        let is_controllable = sigma_min > tol.pbh * b_norm;
        for i in start..start + len {
            multiplicity[i] = len;
            controllable[i] = is_controllable;
        }
    }
    let nonzero_simple_count = clusters
        .iter()
        .filter(|&&(start, len)| len == 1 && eigenvalues[start].abs() > zero_tol)
        .count();
    Ok(ModeReport {
        eigenvalues,
        multiplicity,
        controllable,
        nonzero_simple_count,
    })
}

/// Number of eigenvalues that are nonzero (|lambda| > zero tolerance) and
/// simple (nearest-neighbor gap above the gap tolerance).
pub fn count_nonzero_simple(
    r: &NumericRealization,
    tol: &Tolerances,
) -> Result<usize, NumericError> {
    let sorted = sorted_eigenvalues(&r.a)?;
    let a_norm = r.a.norm();
    let gap_tol = tol.eig_gap_factor * a_norm;
    let zero_tol = tol.eig_zero_factor * a_norm;
    Ok(cluster_spectrum(&sorted, gap_tol)
        .into_iter()
        .filter(|&(start, len)| len == 1 && sorted[start].abs() > zero_tol)
        .count())
}

/// Hoffman–Wielandt inequality for symmetric A and perturbation E: pairing
/// both spectra in ascending order, the squared eigenvalue displacement is
/// bounded by ||E||_F^2. Returns whether the bound holds and the slack
/// ||E||_F^2 - sum (lambda_hat_i - lambda_i)^2.
pub fn hoffman_wielandt(
    a: &DMatrix<f64>,
    e: &DMatrix<f64>,
) -> Result<(bool, f64), NumericError> {
    if a.nrows() != e.nrows() || a.ncols() != e.ncols() {
        return Err(NumericError::DimensionMismatch(format!(
            "A is {}x{} but E is {}x{}",
            a.nrows(),
            a.ncols(),
            e.nrows(),
            e.ncols()
        )));
    }
    let base = sorted_eigenvalues(a)?;
    let shifted = sorted_eigenvalues(&(a + e))?;
    let displacement: f64 = base
        .iter()
        .zip(&shifted)
        .map(|(l, lh)| (lh - l) * (lh - l))
        .sum();
    let slack = e.norm_squared() - displacement;
    Ok((slack >= 0.0, slack))
}
