//! Symmetric eigensolver and singular-value utilities.
//!
//! Symmetric eigenvalues come from cyclic-by-row two-sided Jacobi.
//! Singular values come from one-sided Jacobi on the columns of M rather
//! than from the Gram matrix M M^T: squaring doubles the condition
//! number and limits a true zero singular value to about 1e-8 accuracy,
//! while the one-sided sweep keeps full absolute accuracy. The matrices
//! here are small (n up to a few hundred), so Jacobi is accurate and
//! keeps the crate dependency-free.

use serde::Serialize;

use crate::matrix::{LinalgError, Matrix};

/// Which digraph matrix a spectrum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixKind {
    A,
    L,
    Q,
    Raw,
}

impl MatrixKind {
    pub fn label(&self) -> &'static str {
        match self {
            MatrixKind::A => "A",
            MatrixKind::L => "L",
            MatrixKind::Q => "Q",
            MatrixKind::Raw => "raw",
        }
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(MatrixKind::A),
            "L" | "l" => Ok(MatrixKind::L),
            "Q" | "q" => Ok(MatrixKind::Q),
            other => Err(format!("unknown matrix kind {other:?}")),
        }
    }
}

/// Descending multiset of nonnegative singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    pub kind: MatrixKind,
    pub order: usize,
    pub values: Vec<f64>,
}

impl SingularSpectrum {
    /// Wraps raw values: sorts descending and validates nonnegativity.
    pub fn new(kind: MatrixKind, mut values: Vec<f64>) -> Self {
        values.sort_unstable_by(|a, b| b.total_cmp(a));
        let order = values.len();
        debug_assert!(values.iter().all(|&v| v >= 0.0));
        SingularSpectrum { kind, order, values }
    }

    pub fn sigma1(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn trace_norm(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn sum_of_fourth_powers(&self) -> f64 {
        self.values.iter().map(|v| v * v * v * v).sum()
    }

    /// Elementwise comparison after descending sort.
    pub fn max_abs_diff(&self, other: &SingularSpectrum) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Two spectra agree iff same length and max difference <= 1e-7.
    pub fn matches(&self, other: &SingularSpectrum) -> bool {
        self.values.len() == other.values.len() && self.max_abs_diff(other) <= SPECTRUM_TOL
    }

    /// Multiplicity of 0 as a singular value, at the matching tolerance.
    pub fn zero_multiplicity(&self) -> usize {
        self.values.iter().filter(|&&v| v <= SPECTRUM_TOL).count()
    }
}

/// Spectrum equality tolerance.
pub const SPECTRUM_TOL: f64 = 1e-7;

const SYMMETRY_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
/// Column pair counts as orthogonal when |u_p . u_q| <= this times
/// |u_p| |u_q|.
const ORTHO_TOL: f64 = 1e-14;

/// Eigenvalues of a symmetric matrix, descending.
pub fn symmetric_eigenvalues(s: &Matrix) -> Result<Vec<f64>, LinalgError> {
    assert_eq!(s.rows(), s.cols());
    let asym = s.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(LinalgError::NotSymmetric(asym));
    }
    let n = s.rows();
    let mut a: Vec<f64> = s.data().to_vec();
    jacobi(&mut a, n)?;
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(eigs)
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

fn jacobi(a: &mut [f64], n: usize) -> Result<(), LinalgError> {
    if n < 2 {
        return Ok(());
    }
    let frob = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tol = 1e-12 * (1.0 + frob);
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(a, n) <= tol {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    if off_diagonal_norm(a, n) <= tol {
        Ok(())
    } else {
        Err(LinalgError::NoConvergence)
    }
}

/// Singular values of a real matrix via one-sided Jacobi: columns of a
/// working copy are rotated until pairwise orthogonal, and the surviving
/// column norms are the singular values.
pub fn singular_values(m: &Matrix, kind: MatrixKind) -> Result<SingularSpectrum, LinalgError> {
    let rows = m.rows();
    let cols = m.cols();
    let mut u: Vec<f64> = m.data().to_vec();
    // columns this far below the matrix scale are numerically zero; the
    // relative criterion below can never be met against roundoff in them
    let zero_col = 1e-28 * u.iter().map(|v| v * v).sum::<f64>();
    let mut converged = cols < 2;
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols - 1 {
            for q in p + 1..cols {
                let mut a = 0.0;
                let mut b = 0.0;
                let mut c = 0.0;
                for i in 0..rows {
                    let up = u[i * cols + p];
                    let uq = u[i * cols + q];
                    a += up * up;
                    b += uq * uq;
                    c += up * uq;
                }
                if a <= zero_col || b <= zero_col || c.abs() <= ORTHO_TOL * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * c);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let up = u[i * cols + p];
                    let uq = u[i * cols + q];
                    u[i * cols + p] = cs * up - sn * uq;
                    u[i * cols + q] = sn * up + cs * uq;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }
    let values = (0..cols)
        .map(|j| {
            (0..rows)
                .map(|i| u[i * cols + j] * u[i * cols + j])
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    Ok(SingularSpectrum::new(kind, values))
}

/// Sum of singular values.
pub fn trace_norm(m: &Matrix) -> Result<f64, LinalgError> {
    Ok(singular_values(m, MatrixKind::Raw)?.trace_norm())
}

#[derive(Debug, Clone)]
pub struct InterlacingReport {
    /// sigma_k(A) >= sigma_k(B) for all k, within -1e-9 margin.
    pub holds_upper: bool,
    /// The printed lower chain sigma_k(B) >= sigma_{k+r}(A), with r the
    /// submatrix order and sigma_j = 0 for j > n. Reported, not enforced.
    pub holds_paper_lower: bool,
    pub worst_upper_margin: f64,
    pub worst_lower_margin: f64,
}

/// Compares the singular values of a matrix and one of its principal
/// submatrices against both interlacing chains.
pub fn check_interlacing(mbig: &Matrix, indices: &[usize]) -> Result<InterlacingReport, LinalgError> {
    let b = mbig.principal_submatrix(indices)?;
    let big = singular_values(mbig, MatrixKind::Raw)?;
    let small = singular_values(&b, MatrixKind::Raw)?;
    let n = big.values.len();
    let r = small.values.len();
    let mut worst_upper = f64::INFINITY;
    let mut worst_lower = f64::INFINITY;
    for k in 0..r {
        worst_upper = worst_upper.min(big.values[k] - small.values[k]);
        let shifted = if k + r < n { big.values[k + r] } else { 0.0 };
        worst_lower = worst_lower.min(small.values[k] - shifted);
    }
    Ok(InterlacingReport {
        holds_upper: worst_upper >= -1e-9,
        holds_paper_lower: worst_lower >= -1e-9,
        worst_upper_margin: worst_upper,
        worst_lower_margin: worst_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::matrix::{adjacency_matrix, laplacian};

    #[test]
    fn identity_eigenvalues() {
        let eigs = symmetric_eigenvalues(&Matrix::identity(5)).unwrap();
        assert_eq!(eigs, vec![1.0; 5]);
    }

    #[test]
    fn symmetric_cycle_eigenvalues() {
        // A of the symmetric C_6 has eigenvalues 2 cos(2 pi j / 6)
        let c6 = Digraph::directed_cycle(6).unwrap().symmetric_closure();
        let eigs = symmetric_eigenvalues(&adjacency_matrix(&c6)).unwrap();
        let mut expect: Vec<f64> = (0..6)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 6.0).cos())
            .collect();
        expect.sort_unstable_by(|a, b| b.total_cmp(a));
        for (e, x) in eigs.iter().zip(&expect) {
            assert!((e - x).abs() < 1e-9, "{e} vs {x}");
        }
    }

    #[test]
    fn symmetric_path_eigenvalues_large() {
        // closed eigenvalues of the symmetric path for n up to 200
        for n in [50usize, 120, 200] {
            let p = Digraph::directed_path(n).unwrap().symmetric_closure();
            let eigs = symmetric_eigenvalues(&adjacency_matrix(&p)).unwrap();
            let mut expect: Vec<f64> = (1..=n)
                .map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n as f64 + 1.0)).cos())
                .collect();
            expect.sort_unstable_by(|a, b| b.total_cmp(a));
            let worst = eigs
                .iter()
                .zip(&expect)
                .fold(0.0f64, |m, (e, x)| m.max((e - x).abs()));
            assert!(worst < 1e-9, "n={n} worst={worst:e}");
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = Matrix::from_rows(2, 2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            symmetric_eigenvalues(&m),
            Err(LinalgError::NotSymmetric(_))
        ));
    }

    #[test]
    fn cycle_laplacian_singular_values() {
        // L(C_4) has singular values {2, sqrt 2, sqrt 2, 0}
        let c4 = Digraph::directed_cycle(4).unwrap();
        let s = singular_values(&laplacian(&c4), MatrixKind::L).unwrap();
        let expect = [2.0, 2f64.sqrt(), 2f64.sqrt(), 0.0];
        for (v, x) in s.values.iter().zip(expect) {
            assert!((v - x).abs() < 1e-10);
        }
    }

    #[test]
    fn u1_singular_values() {
        let u1 = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let s = singular_values(&laplacian(&u1), MatrixKind::L).unwrap();
        let expect = [2.0, 3f64.sqrt(), 1.0, 0.0];
        for (v, x) in s.values.iter().zip(expect) {
            assert!((v - x).abs() < 1e-9, "{:?}", s.values);
        }
    }

    #[test]
    fn permutation_matrix_singular_values_are_ones() {
        let p = Matrix::from_rows(3, 3, vec![0., 1., 0., 0., 0., 1., 1., 0., 0.]).unwrap();
        let s = singular_values(&p, MatrixKind::Raw).unwrap();
        for v in &s.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_norm_values() {
        let c4 = Digraph::directed_cycle(4).unwrap();
        let tn = trace_norm(&laplacian(&c4)).unwrap();
        let expect = 2.0 / (std::f64::consts::PI / 8.0).tan();
        assert!((tn - expect).abs() < 1e-9);
        assert_eq!(trace_norm(&Matrix::zeros(3, 3)).unwrap(), 0.0);

        let s4 = Digraph::oriented_star(3, 0).unwrap();
        let tn = trace_norm(&laplacian(&s4)).unwrap();
        assert!((tn - 12f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn interlacing_full_matrix_is_trivial() {
        let m = Matrix::from_fn(4, 4, |i, j| ((i * 7 + j * 3) % 5) as f64);
        let r = check_interlacing(&m, &[0, 1, 2, 3]).unwrap();
        assert!(r.holds_upper && r.holds_paper_lower);
    }

    #[test]
    fn interlacing_tree_bound() {
        // any tree containing T5 has sigma1(L) >= sigma1(L(T5)) = sqrt 5
        let t = Digraph::new(6, &[(0, 1), (1, 2), (3, 1), (4, 1), (2, 5)]).unwrap();
        let l = laplacian(&t);
        let r = check_interlacing(&l, &[0, 1, 2, 3, 4]).unwrap();
        assert!(r.holds_upper);
        let s = singular_values(&l, MatrixKind::L).unwrap();
        assert!(s.sigma1() >= 5f64.sqrt() - 1e-9);
    }
}
