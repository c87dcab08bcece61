//! Dense linear algebra kernel sized for the small problems in this crate
//! (matrices up to roughly 64 x 64).
//!
//! The eigensolver is a cyclic Jacobi iteration. For symmetric matrices of
//! this size it is simple, unconditionally stable, and accurate to a few ulps,
//! which the catalog self-checks and the complement construction rely on.

use crate::error::{Error, Result};

/// Row-major dense matrix with value semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from a flat row-major buffer.
    ///
    /// Panics on a shape mismatch; use [`Matrix::checked`] for untrusted data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        assert_eq!(data.len(), rows * cols, "buffer length must be rows*cols");
        Matrix { rows, cols, data }
    }

    /// Validating constructor: checks shape and that every entry is finite.
    pub fn checked(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 1 || cols < 1 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite entry {x}")));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        assert!(!rows.is_empty(), "need at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flatten().copied().collect();
        Matrix::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// A^T A without forming the transpose.
    pub fn gram_of_columns(&self) -> Matrix {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..self.cols {
                for j in i..self.cols {
                    g[(i, j)] += row[i] * row[j];
                }
            }
        }
        for i in 0..self.cols {
            for j in 0..i {
                g[(i, j)] = g[(j, i)];
            }
        }
        g
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest magnitude among entries off the main diagonal.
    pub fn max_abs_offdiag(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].abs());
                }
            }
        }
        m
    }

    /// Frobenius norm of self - I (square matrices only).
    pub fn distance_from_identity(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - if i == j { 1.0 } else { 0.0 };
                s += d * d;
            }
        }
        s.sqrt()
    }

    pub fn max_abs_diff(&self, rhs: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a symmetric matrix: A = Q diag(values) Q^T.
#[derive(Debug, Clone)]
pub struct SymEig {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, one per column, ordered like `values`.
    pub vectors: Matrix,
}

const MAX_JACOBI_SWEEPS: usize = 50;

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps until the largest off-diagonal magnitude drops below
/// `1e-14 * max(1, |A|_max)`. `tol` bounds the accepted asymmetry of the
/// input; the iteration itself runs on the symmetrized matrix (A + A^T)/2.
pub fn sym_eig(a: &Matrix, tol: f64) -> Result<SymEig> {
    if a.rows() != a.cols() {
        return Err(Error::InvalidInput(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let asym = a.max_abs_diff(&a.transpose());
    if asym > tol {
        return Err(Error::InvalidInput(format!(
            "matrix is asymmetric: max |A - A^T| = {asym:.3e} exceeds {tol:.3e}"
        )));
    }

    let mut m = a.clone();
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }

    let mut q = Matrix::identity(n);
    let threshold = 1e-14 * a.max_abs().max(1.0);

    let mut converged = m.max_abs_offdiag() < threshold;
    let mut sweep = 0;
    while !converged && sweep < MAX_JACOBI_SWEEPS {
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = m[(p, r)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(r, r)];
                let theta = 0.5 * (aqq - app) / apq;
                // tan of the rotation angle; the guarded form avoids
                // overflow of theta^2 for nearly diagonal pairs
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                m[(p, p)] = app - t * apq;
                m[(r, r)] = aqq + t * apq;
                m[(p, r)] = 0.0;
                m[(r, p)] = 0.0;
                for k in 0..n {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = m[(k, p)];
                    let akq = m[(k, r)];
                    let new_p = akp - s * (akq + tau * akp);
                    let new_q = akq + s * (akp - tau * akq);
                    m[(k, p)] = new_p;
                    m[(p, k)] = new_p;
                    m[(k, r)] = new_q;
                    m[(r, k)] = new_q;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkq = q[(k, r)];
                    q[(k, p)] = qkp - s * (qkq + tau * qkp);
                    q[(k, r)] = qkq + s * (qkp - tau * qkq);
                }
            }
        }
        sweep += 1;
        converged = m.max_abs_offdiag() < threshold;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps \
             (off-diagonal residual {:.3e})",
            m.max_abs_offdiag()
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new_col)] = q[(k, old_col)];
        }
    }
    Ok(SymEig { values, vectors })
}

/// Smallest singular value below which a tall matrix is treated as rank
/// deficient.
pub const RANK_TOL: f64 = 1e-12;

/// Closest matrix with orthonormal columns: V (V^T V)^{-1/2}.
///
/// Computed through the eigendecomposition of V^T V, which is accurate for
/// the well-conditioned inputs the frame projections produce.
pub fn nearest_isometry(v: &Matrix) -> Result<Matrix> {
    if v.rows() < v.cols() {
        return Err(Error::InvalidInput(format!(
            "need rows >= cols for an isometry target, got {}x{}",
            v.rows(),
            v.cols()
        )));
    }
    let b = v.gram_of_columns();
    let eig = sym_eig(&b, 1e-9 * b.max_abs().max(1.0))?;
    let sigma_min = eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    if sigma_min <= RANK_TOL {
        return Err(Error::DegenerateInput(format!(
            "matrix is rank deficient: smallest singular value {sigma_min:.3e}"
        )));
    }
    // Q diag(1/sqrt(lambda)) Q^T
    let d = v.cols();
    let mut inv_sqrt = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = 0.0;
            for k in 0..d {
                s += eig.vectors[(i, k)] * eig.vectors[(j, k)] / eig.values[k].sqrt();
            }
            inv_sqrt[(i, j)] = s;
        }
    }
    Ok(v.matmul(&inv_sqrt))
}
