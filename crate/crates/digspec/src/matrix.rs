//! Dense real matrices and the digraph-matrix constructors.

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("Jacobi sweep cap reached without convergence")]
    NoConvergence,
    #[error("trailing block is singular (|det D| = {0:e})")]
    SingularBlock(f64),
    #[error("submatrix index {0} out of range or repeated")]
    IndexError(usize),
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from row-major entries, rejecting NaN and infinities.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        assert_eq!(data.len(), rows * cols);
        for (i, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(LinalgError::NonFinite(i / cols, i % cols));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * out.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// The Gram matrix M * M^T.
    pub fn gram(&self) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut s = 0.0;
                for k in 0..self.cols {
                    s += self.get(i, k) * self.get(j, k);
                }
                out.data[i * self.rows + j] = s;
                out.data[j * self.rows + i] = s;
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i + 1..self.cols.min(self.rows) {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn add_diagonal(&self, shift: &[f64]) -> Matrix {
        assert_eq!(shift.len(), self.rows.min(self.cols));
        let mut out = self.clone();
        for (i, &s) in shift.iter().enumerate() {
            out.data[i * out.cols + i] += s;
        }
        out
    }

    /// Rows and columns restricted to `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Matrix, LinalgError> {
        for (pos, &i) in indices.iter().enumerate() {
            if i >= self.rows || i >= self.cols {
                return Err(LinalgError::IndexError(i));
            }
            if indices[..pos].contains(&i) {
                return Err(LinalgError::IndexError(i));
            }
        }
        Ok(Matrix::from_fn(indices.len(), indices.len(), |i, j| {
            self.get(indices[i], indices[j])
        }))
    }

    /// Determinant by LU with partial pivoting. A pivot below the scaled
    /// singularity threshold yields 0.
    pub fn determinant(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1.0;
        }
        let mut a = self.data.clone();
        let threshold = 1e-9 * (1.0 + self.max_abs());
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[pivot * n + col].abs() {
                    pivot = r;
                }
            }
            let p = a[pivot * n + col];
            if p.abs() <= threshold {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    /// Schur complement M/D = A - B D^-1 C for the trailing q x q block D,
    /// where p is the leading block size. Also returns
    /// (det M, det D, det(M/D)) so the determinant identity can be checked.
    pub fn schur_complement(&self, p: usize) -> Result<(Matrix, (f64, f64, f64)), LinalgError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        assert!(p <= n);
        let q = n - p;
        let d_idx: Vec<usize> = (p..n).collect();
        let d = self.principal_submatrix(&d_idx)?;
        let det_d = d.determinant();
        if det_d.abs() <= 1e-9 {
            return Err(LinalgError::SingularBlock(det_d.abs()));
        }
        // X = D^-1 C via Gaussian elimination on [D | C]
        let c = Matrix::from_fn(q, p, |i, j| self.get(p + i, j));
        let x = solve(&d, &c)?;
        let mut out = Matrix::from_fn(p, p, |i, j| self.get(i, j));
        for i in 0..p {
            for j in 0..p {
                let mut s = 0.0;
                for k in 0..q {
                    s += self.get(i, p + k) * x.get(k, j);
                }
                out.data[i * p + j] -= s;
            }
        }
        let det_m = self.determinant();
        let det_s = out.determinant();
        Ok((out, (det_m, det_d, det_s)))
    }
}

/// Solves A X = B for square well-conditioned A.
fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.rows);
    let n = a.rows;
    let m = b.cols;
    let mut aug = vec![0.0; n * (n + m)];
    for i in 0..n {
        for j in 0..n {
            aug[i * (n + m) + j] = a.get(i, j);
        }
        for j in 0..m {
            aug[i * (n + m) + n + j] = b.get(i, j);
        }
    }
    let w = n + m;
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if aug[r * w + col].abs() > aug[pivot * w + col].abs() {
                pivot = r;
            }
        }
        let p = aug[pivot * w + col];
        if p.abs() <= 1e-12 {
            return Err(LinalgError::SingularBlock(p.abs()));
        }
        if pivot != col {
            for j in 0..w {
                aug.swap(col * w + j, pivot * w + j);
            }
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = aug[r * w + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..w {
                aug[r * w + j] -= f * aug[col * w + j];
            }
        }
    }
    let mut x = Matrix::zeros(n, m);
    for i in 0..n {
        let p = aug[i * w + i];
        for j in 0..m {
            x.data[i * m + j] = aug[i * w + n + j] / p;
        }
    }
    Ok(x)
}

pub fn adjacency_matrix(d: &Digraph) -> Matrix {
    let n = d.n();
    let mut m = Matrix::zeros(n, n);
    for &(u, v) in d.arcs() {
        m.set(u, v, 1.0);
    }
    m
}

pub fn outdegree_matrix(d: &Digraph) -> Matrix {
    let n = d.n();
    let mut m = Matrix::zeros(n, n);
    for (i, &deg) in d.out_degrees().iter().enumerate() {
        m.set(i, i, deg as f64);
    }
    m
}

/// L(D) = Delta+ - A(D).
pub fn laplacian(d: &Digraph) -> Matrix {
    let mut m = outdegree_matrix(d);
    for &(u, v) in d.arcs() {
        m.set(u, v, -1.0);
    }
    m
}

/// Q(D) = Delta+ + A(D).
pub fn signless_laplacian(d: &Digraph) -> Matrix {
    let mut m = outdegree_matrix(d);
    for &(u, v) in d.arcs() {
        m.set(u, v, 1.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_basics() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        let a = adjacency_matrix(&c3);
        assert_eq!(
            (a.get(0, 0), a.get(0, 1), a.get(0, 2)),
            (0.0, 1.0, 0.0)
        );
        let k1 = adjacency_matrix(&Digraph::k1());
        assert_eq!((k1.rows(), k1.get(0, 0)), (1, 0.0));
    }

    #[test]
    fn laplacian_row_sums_vanish() {
        let d = Digraph::new(5, &[(0, 1), (0, 2), (1, 4), (3, 2), (2, 0)]).unwrap();
        let l = laplacian(&d);
        for i in 0..5 {
            let s: f64 = (0..5).map(|j| l.get(i, j)).sum();
            assert_eq!(s, 0.0);
        }
    }

    #[test]
    fn q_minus_l_is_twice_a() {
        let d = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let a = adjacency_matrix(&d);
        let l = laplacian(&d);
        let q = signless_laplacian(&d);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.get(i, j) - l.get(i, j), 2.0 * a.get(i, j));
            }
        }
    }

    #[test]
    fn gram_of_cycle_laplacian() {
        // L L^T for the directed cycle equals 2I - A of the symmetric cycle
        let n = 6;
        let c = Digraph::directed_cycle(n).unwrap();
        let g = laplacian(&c).gram();
        let sym = adjacency_matrix(&c.symmetric_closure());
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 2.0 } else { -sym.get(i, j) };
                assert!((g.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gram_of_path_adjacency_is_outdegree_matrix() {
        let p = Digraph::directed_path(5).unwrap();
        let g = adjacency_matrix(&p).gram();
        let dm = outdegree_matrix(&p);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(g.get(i, j), dm.get(i, j));
            }
        }
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(Matrix::identity(4).determinant(), 1.0);
        // permutation matrix
        let p = Matrix::from_rows(3, 3, vec![0., 1., 0., 0., 0., 1., 1., 0., 0.]).unwrap();
        assert!((p.determinant() - 1.0).abs() < 1e-12);
        let swap = Matrix::from_rows(2, 2, vec![0., 1., 1., 0.]).unwrap();
        assert!((swap.determinant() + 1.0).abs() < 1e-12);
        // rows of L(C_n) sum to zero, so det = 0
        for n in 2..=8 {
            let det = laplacian(&Digraph::directed_cycle(n).unwrap()).determinant();
            assert!(det.abs() <= 1e-9, "n={n} det={det}");
        }
    }

    #[test]
    fn schur_two_by_two() {
        let m = Matrix::from_rows(2, 2, vec![2., 1., 1., 1.]).unwrap();
        let (s, (dm, dd, ds)) = m.schur_complement(1).unwrap();
        assert!((s.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((dm - 1.0).abs() < 1e-12);
        assert!((dd - 1.0).abs() < 1e-12);
        assert!((ds - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schur_block_diagonal() {
        // block-diagonal: M/D = A and det M = det A * det D
        let m = Matrix::from_rows(
            4,
            4,
            vec![
                3., 1., 0., 0., //
                2., 4., 0., 0., //
                0., 0., 5., 1., //
                0., 0., 2., 3.,
            ],
        )
        .unwrap();
        let (s, (dm, dd, ds)) = m.schur_complement(2).unwrap();
        assert!((s.get(0, 0) - 3.0).abs() < 1e-12 && (s.get(1, 1) - 4.0).abs() < 1e-12);
        assert!((dm - dd * ds).abs() < 1e-9);
    }

    #[test]
    fn schur_singular_block_rejected() {
        let m = Matrix::from_rows(2, 2, vec![1., 1., 1., 0.]).unwrap();
        // trailing 1x1 block is 0
        assert!(matches!(
            m.schur_complement(1),
            Err(LinalgError::SingularBlock(_))
        ));
    }

    #[test]
    fn principal_submatrix_cases() {
        let m = Matrix::from_fn(3, 3, |i, j| (3 * i + j) as f64);
        let full = m.principal_submatrix(&[0, 1, 2]).unwrap();
        assert_eq!(full, m);
        let one = m.principal_submatrix(&[2]).unwrap();
        assert_eq!(one.get(0, 0), 8.0);
        assert!(matches!(
            m.principal_submatrix(&[0, 3]),
            Err(LinalgError::IndexError(3))
        ));
        assert!(matches!(
            m.principal_submatrix(&[1, 1]),
            Err(LinalgError::IndexError(1))
        ));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(
            Matrix::from_rows(1, 2, vec![1.0, f64::NAN]),
            Err(LinalgError::NonFinite(0, 1))
        ));
    }
}
