//! Characteristic, truncated, adjugate and trace polynomials of a
//! realization, plus Sylvester resultants.
//!
//! The characteristic coefficients and the adjugate coefficient matrices come
//! from one Faddeev–LeVerrier recurrence; the eigenvalue-product expansion is
//! reserved for tests as the independent oracle.

use nalgebra::DMatrix;

use crate::numeric::{NumericError, NumericRealization};

/// Univariate real polynomial, coefficients ascending from the constant term.
///
/// The coefficient vector length fixes the structural degree: trailing zeros
/// are kept, so a polynomial that happens to evaluate to a lower degree still
/// carries its declared one. Resultants require the leading coefficient to be
/// nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Build from ascending coefficients `[c0, c1, ...]`; an empty vector is
    /// promoted to the zero constant.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        if coeffs.is_empty() {
            Self { coeffs: vec![0.0] }
        } else {
            Self { coeffs }
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("non-empty coefficients")
    }

    /// Horner evaluation.
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::from_coeffs(vec![0.0]);
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i + 1) as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

/// Faddeev–LeVerrier recurrence: returns the monic characteristic
/// coefficients (ascending, length n + 1) and the adjugate coefficient
/// matrices N_1..N_n with adj(sI - A) = N_1 s^{n-1} + ... + N_n.
fn faddeev_leverrier(a: &DMatrix<f64>) -> (Vec<f64>, Vec<DMatrix<f64>>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "state matrix must be square");
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut mats: Vec<DMatrix<f64>> = Vec::with_capacity(n);
    for k in 1..=n {
        let nk = if k == 1 {
            DMatrix::identity(n, n)
        } else {
            a * &mats[k - 2] + DMatrix::from_diagonal_element(n, n, coeffs[n - k + 1])
        };
        coeffs[n - k] = -(a * &nk).trace() / k as f64;
        mats.push(nk);
    }
    (coeffs, mats)
}

/// Monic characteristic polynomial det(sI - A), ascending coefficients.
pub fn char_poly(r: &NumericRealization) -> Poly {
    Poly::from_coeffs(faddeev_leverrier(&r.a).0)
}

/// Adjugate coefficient matrices N_1..N_n of adj(sI - A).
pub fn adjugate_poly(r: &NumericRealization) -> Vec<DMatrix<f64>> {
    faddeev_leverrier(&r.a).1
}

/// Evaluate a matrix polynomial with descending-power coefficient matrices
/// M_1 s^{L-1} + M_2 s^{L-2} + ... + M_L at the point `s`.
pub fn eval_matrix_poly(mats: &[DMatrix<f64>], s: f64) -> DMatrix<f64> {
    let (rows, cols) = (mats[0].nrows(), mats[0].ncols());
    mats.iter()
        .fold(DMatrix::zeros(rows, cols), |acc, m| acc * s + m)
}

/// Degree-k truncation of the characteristic polynomial: the polynomial
/// s^k + a_{n-1} s^{k-1} + ... + a_{n-k} sharing the top k + 1 characteristic
/// coefficients. With k the term rank, the remaining coefficients vanish
/// generically and the truncation carries exactly the nonzero spectrum.
pub fn phi_poly(char_poly: &Poly, k: usize) -> Poly {
    let n = char_poly.degree();
    assert!(k <= n, "truncation degree {k} exceeds the dimension {n}");
    Poly::from_coeffs(char_poly.coeffs()[n - k..].to_vec())
}

/// The trace polynomial psi(s) = tr([adj(sI - A) B][adj(sI - A) B]^T):
/// the squared Frobenius norm of adj(sI - A) B as a polynomial in s. It
/// vanishes at s exactly when every left eigenvector for s annihilates B.
pub fn psi_poly(r: &NumericRealization) -> Poly {
    let mats = adjugate_poly(r);
    let n = mats.len();
    let blocks: Vec<DMatrix<f64>> = mats.iter().map(|nk| nk * &r.b).collect();
    // adj(sI - A) B = sum_k G_k s^{n-k}; the trace of the outer product
    // collects Frobenius inner products <G_k, G_l> at power 2n - k - l.
    let mut coeffs = vec![0.0; 2 * n - 1];
    for (ki, gk) in blocks.iter().enumerate() {
        for (li, gl) in blocks.iter().enumerate() {
            let power = 2 * n - (ki + 1) - (li + 1);
            coeffs[power] += gk.dot(gl);
        }
    }
    Poly::from_coeffs(coeffs)
}

/// Characteristic data of a realization bundled with its truncation at the
/// term rank `k` and the trace polynomial.
#[derive(Clone, Debug)]
pub struct PolySuite {
    /// Ascending monic characteristic coefficients, length n + 1.
    pub char_coeffs: Vec<f64>,
    /// Truncation degree (the term rank of the pattern).
    pub k: usize,
    pub phi: Poly,
    /// Adjugate coefficient matrices N_1..N_n.
    pub adjugate: Vec<DMatrix<f64>>,
    pub psi: Poly,
}

pub fn poly_suite(r: &NumericRealization, k: usize) -> PolySuite {
    let (char_coeffs, adjugate) = faddeev_leverrier(&r.a);
    let cp = Poly::from_coeffs(char_coeffs.clone());
    let phi = phi_poly(&cp, k);
    let psi = psi_poly(r);
    PolySuite {
        char_coeffs,
        k,
        phi,
        adjugate,
        psi,
    }
}

/// The Sylvester matrix of p and q: deg(q) staggered rows of p's coefficients
/// written from the constant term up, then deg(p) rows of q's coefficients
/// mirrored bottom-up. Its determinant vanishes exactly when p and q share a
/// common factor (given nonzero leading coefficients).
pub fn sylvester_matrix(p: &Poly, q: &Poly) -> Result<DMatrix<f64>, NumericError> {
    if p.leading() == 0.0 || q.leading() == 0.0 {
        return Err(NumericError::ZeroLeadingCoefficient);
    }
    let dp = p.degree();
    let dq = q.degree();
    let size = dp + dq;
    let mut s = DMatrix::zeros(size, size);
    // Ascending coefficients land left-to-right: row r holds
    // [const .. leading] at columns r .. r + dp.
    for row in 0..dq {
        for (offset, &c) in p.coeffs().iter().enumerate() {
            s[(row, row + offset)] = c;
        }
    }
    // The q block mirrors upward: the bottom row starts at column 0.
    for t in 0..dp {
        let row = size - 1 - t;
        for (offset, &c) in q.coeffs().iter().enumerate() {
            s[(row, t + offset)] = c;
        }
    }
    Ok(s)
}

/// Sylvester resultant R(p, q): zero iff the polynomials share a root.
pub fn sylvester_resultant(p: &Poly, q: &Poly) -> Result<f64, NumericError> {
    if p.leading() == 0.0 || q.leading() == 0.0 {
        return Err(NumericError::ZeroLeadingCoefficient);
    }
    if p.degree() + q.degree() == 0 {
        return Ok(1.0);
    }
    Ok(sylvester_matrix(p, q)?.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::StructuredPattern;
    use crate::numeric::{sample_realization, symmetric_eigenvalues, Tolerances};
    use nalgebra::dmatrix;

    fn bare(a: DMatrix<f64>) -> NumericRealization {
        let n = a.nrows();
        NumericRealization {
            a,
            b: DMatrix::zeros(n, 0),
            params: vec![],
            seed: 0,
        }
    }

    fn with_b(a: DMatrix<f64>, b: DMatrix<f64>) -> NumericRealization {
        NumericRealization {
            a,
            b,
            params: vec![],
            seed: 0,
        }
    }

    /// Expand prod (s - root_i) — the independent route to the coefficients.
    fn poly_from_roots(roots: &[f64]) -> Poly {
        roots.iter().fold(Poly::from_coeffs(vec![1.0]), |acc, &r| {
            acc.mul(&Poly::from_coeffs(vec![-r, 1.0]))
        })
    }

    #[test]
    fn char_poly_of_diagonal() {
        let p = char_poly(&bare(dmatrix![2.0, 0.0; 0.0, 3.0]));
        assert_eq!(p.coeffs(), &[6.0, -5.0, 1.0]);
    }

    #[test]
    fn char_poly_of_swap() {
        let p = char_poly(&bare(dmatrix![0.0, 1.0; 1.0, 0.0]));
        assert_eq!(p.coeffs(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn char_poly_matches_eigenvalue_product() {
        let pattern = StructuredPattern::from_pairs(
            4,
            0,
            [(0, 1), (1, 2), (2, 3), (0, 3), (1, 1)],
            [],
        )
        .unwrap();
        let r = sample_realization(&pattern, 17, &Tolerances::default());
        let direct = char_poly(&r);
        let mut roots = symmetric_eigenvalues(&r.a).unwrap();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = poly_from_roots(&roots);
        for (c, o) in direct.coeffs().iter().zip(oracle.coeffs()) {
            assert!((c - o).abs() <= 1e-8 * (1.0 + o.abs()), "{c} vs {o}");
        }
    }

    #[test]
    fn phi_of_rank_one_diagonal() {
        // char(s) = s^2 - a s for A = diag(a, 0); truncating at k = 1 keeps
        // s - a.
        let a = 1.3;
        let cp = char_poly(&bare(dmatrix![a, 0.0; 0.0, 0.0]));
        let phi = phi_poly(&cp, 1);
        assert_eq!(phi.degree(), 1);
        assert!((phi.coeffs()[0] + a).abs() < 1e-12);
        assert_eq!(phi.coeffs()[1], 1.0);
    }

    #[test]
    fn phi_at_full_degree_is_char() {
        let cp = char_poly(&bare(dmatrix![0.0, 1.0; 1.0, 0.0]));
        assert_eq!(phi_poly(&cp, 2), cp);
    }

    #[test]
    fn phi_vanishes_on_nonzero_spectrum_of_example() {
        use crate::structural::{term_rank, TermRankScope};
        use crate::testutil::ten_node_pattern;
        let pattern = ten_node_pattern();
        let k = term_rank(&pattern, TermRankScope::AOnly);
        let r = sample_realization(&pattern, 23, &Tolerances::default());
        let suite = poly_suite(&r, k);
        let tol = Tolerances::default();
        let zero_tol = tol.eig_zero_factor * r.a.norm();
        for lambda in symmetric_eigenvalues(&r.a).unwrap() {
            if lambda.abs() > zero_tol {
                let scale: f64 = suite
                    .phi
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.abs() * lambda.abs().powi(i as i32))
                    .sum();
                assert!(
                    suite.phi.eval(lambda).abs() <= 1e-6 * scale,
                    "phi({lambda}) = {}",
                    suite.phi.eval(lambda)
                );
            }
        }
    }

    #[test]
    fn adjugate_of_scalar_is_one() {
        let mats = adjugate_poly(&bare(dmatrix![4.2]));
        assert_eq!(mats.len(), 1);
        assert_eq!(mats[0], dmatrix![1.0]);
    }

    #[test]
    fn adjugate_of_swap_matrix() {
        // adj(sI - A) = [[s, 1], [1, s]] for the swap matrix.
        let mats = adjugate_poly(&bare(dmatrix![0.0, 1.0; 1.0, 0.0]));
        assert_eq!(mats[0], DMatrix::identity(2, 2));
        assert_eq!(mats[1], dmatrix![0.0, 1.0; 1.0, 0.0]);
        let at = eval_matrix_poly(&mats, 2.0);
        assert_eq!(at, dmatrix![2.0, 1.0; 1.0, 2.0]);
    }

    #[test]
    fn adjugate_identity_at_probe_points() {
        let pattern =
            StructuredPattern::from_pairs(3, 0, [(0, 1), (1, 2), (0, 0)], []).unwrap();
        let r = sample_realization(&pattern, 5, &Tolerances::default());
        let cp = char_poly(&r);
        let mats = adjugate_poly(&r);
        for &s in &[2.5, -1.7, 0.3] {
            let si_a = DMatrix::from_diagonal_element(3, 3, s) - &r.a;
            let adj = eval_matrix_poly(&mats, s);
            let lhs = &si_a * &adj;
            let rhs = DMatrix::from_diagonal_element(3, 3, cp.eval(s));
            let scale = si_a.norm() * adj.norm() + rhs.norm() + 1.0;
            assert!((lhs - rhs).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn psi_of_scalar_pair() {
        let psi = psi_poly(&with_b(dmatrix![3.0], dmatrix![2.0]));
        assert_eq!(psi.coeffs(), &[4.0]);
    }

    #[test]
    fn psi_of_zero_input_is_zero() {
        let psi = psi_poly(&with_b(dmatrix![1.0, 0.5; 0.5, 0.0], DMatrix::zeros(2, 1)));
        assert!(psi.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn psi_matches_direct_frobenius_norm() {
        let pattern = StructuredPattern::from_pairs(3, 1, [(0, 1), (1, 2)], [(0, 0)]).unwrap();
        let r = sample_realization(&pattern, 8, &Tolerances::default());
        let psi = psi_poly(&r);
        let mats = adjugate_poly(&r);
        for &s in &[1.7, -0.4, 2.2] {
            let direct = (eval_matrix_poly(&mats, s) * &r.b).norm_squared();
            assert!((psi.eval(s) - direct).abs() <= 1e-8 * (1.0 + direct));
        }
    }

    #[test]
    fn resultant_detects_shared_root() {
        let p = Poly::from_coeffs(vec![-1.0, 0.0, 1.0]); // s^2 - 1
        let q = Poly::from_coeffs(vec![-1.0, 1.0]); // s - 1
        let r = sylvester_resultant(&p, &q).unwrap();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn resultant_of_coprime_linear_factors() {
        let p = Poly::from_coeffs(vec![-1.0, 1.0]); // s - 1
        let q = Poly::from_coeffs(vec![-2.0, 1.0]); // s - 2
        let r = sylvester_resultant(&p, &q).unwrap();
        assert_eq!(r.abs(), 1.0);
    }

    #[test]
    fn resultant_requires_nonzero_leading() {
        let p = Poly::from_coeffs(vec![1.0, 0.0]);
        let q = Poly::from_coeffs(vec![-2.0, 1.0]);
        assert_eq!(
            sylvester_resultant(&p, &q),
            Err(NumericError::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn resultant_of_truncation_and_derivative_separates_spectra() {
        // Distinct nonzero eigenvalues leave phi and phi' coprime.
        let pattern = StructuredPattern::from_pairs(4, 0, [(0, 1), (2, 3)], []).unwrap();
        let r = sample_realization(&pattern, 33, &Tolerances::default());
        let suite = poly_suite(&r, 4);
        let res = sylvester_resultant(&suite.phi, &suite.phi.derivative()).unwrap();
        assert!(res.abs() > 1e-10, "resultant {res}");
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::from_coeffs(vec![1.0, -3.0, 2.0]); // 2s^2 - 3s + 1
        assert_eq!(p.eval(2.0), 3.0);
        assert_eq!(p.derivative().coeffs(), &[-3.0, 4.0]);
        assert_eq!(Poly::from_coeffs(vec![5.0]).derivative().coeffs(), &[0.0]);
    }
}
