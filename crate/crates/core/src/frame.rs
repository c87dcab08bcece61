//! Frames of N vectors in R^d, stored as the rows of their analysis matrix,
//! plus the scalar diagnostics used everywhere else in the crate.
//!
//! Conventions: a frame is *uniform* when every vector has squared norm d/N,
//! and *Parseval* when V^T V = I_d. The maximum correlation of a frame is the
//! largest |cos| between distinct vectors after normalization; for a uniform
//! frame it equals (N/d) * max |<f_k, f_l>|.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{sym_eig, Matrix};

/// Default absolute tolerance for yes/no predicates on normalized
/// quantities (equiangularity, tightness).
pub const DEFAULT_TOL: f64 = 1e-8;

/// Uniformity defect below which `max_correlation` may use the scaled
/// Grammian shortcut instead of normalizing every pair.
pub const UNIFORM_FAST_PATH_TOL: f64 = 1e-12;

/// N vectors in R^d with N >= d >= 1; every vector is nonzero and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    mat: Matrix,
}

impl Frame {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Frame> {
        if vectors.is_empty() {
            return Err(Error::InvalidInput(
                "a frame needs at least one vector".into(),
            ));
        }
        let d = vectors[0].len();
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidInput(
                "all frame vectors must have the same dimension".into(),
            ));
        }
        let n = vectors.len();
        let mat = Matrix::checked(n, d, vectors.into_iter().flatten().collect())?;
        Frame::from_matrix(mat)
    }

    /// Rows of `mat` become the frame vectors.
    pub fn from_matrix(mat: Matrix) -> Result<Frame> {
        let (n, d) = (mat.rows(), mat.cols());
        if d < 1 || n < d {
            return Err(Error::InvalidInput(format!(
                "need N >= d >= 1 vectors, got N={n}, d={d}"
            )));
        }
        if !mat.is_finite() {
            return Err(Error::InvalidInput("frame entries must be finite".into()));
        }
        for i in 0..n {
            if mat.row(i).iter().all(|&x| x == 0.0) {
                return Err(Error::InvalidInput(format!("vector {i} is zero")));
            }
        }
        Ok(Frame { mat })
    }

    /// Number of vectors.
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.mat.cols()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        self.mat.row(i)
    }

    /// The N x d analysis matrix whose rows are the frame vectors.
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn vectors(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| self.vector(i).to_vec()).collect()
    }

    pub fn norms_sq(&self) -> Vec<f64> {
        (0..self.n())
            .map(|i| self.vector(i).iter().map(|x| x * x).sum())
            .collect()
    }
}

/// Gram matrix of a frame: symmetric positive semidefinite, entry (i,j)
/// equal to <f_j, f_i>.
#[derive(Debug, Clone, PartialEq)]
pub struct Grammian {
    mat: Matrix,
}

impl Grammian {
    /// Validating constructor for matrices not produced by [`grammian`]:
    /// requires exact symmetry and minimum eigenvalue >= -1e-10.
    pub fn new(mat: Matrix) -> Result<Grammian> {
        if mat.rows() != mat.cols() {
            return Err(Error::InvalidInput("a Grammian must be square".into()));
        }
        if mat.max_abs_diff(&mat.transpose()) != 0.0 {
            return Err(Error::InvalidInput("a Grammian must be symmetric".into()));
        }
        let eig = sym_eig(&mat, 0.0)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -1e-10 {
            return Err(Error::InvalidInput(format!(
                "matrix is not positive semidefinite: min eigenvalue {min:.3e}"
            )));
        }
        Ok(Grammian { mat })
    }

    fn from_frame(f: &Frame) -> Grammian {
        let n = f.n();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = dot(f.vector(j), f.vector(i));
            }
        }
        Grammian { mat: g }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram matrix G = V V^T of the frame.
pub fn grammian(f: &Frame) -> Grammian {
    Grammian::from_frame(f)
}

/// Frobenius distance of V^T V from I_d; zero exactly for Parseval frames.
pub fn parseval_defect(f: &Frame) -> f64 {
    f.matrix().gram_of_columns().distance_from_identity()
}

/// Largest deviation of a squared vector norm from d/N.
pub fn uniformity_defect(f: &Frame) -> f64 {
    let target = f.d() as f64 / f.n() as f64;
    f.norms_sq()
        .iter()
        .fold(0.0f64, |m, ns| m.max((ns - target).abs()))
}

/// Largest |cos| between distinct frame vectors, clamped to [0, 1].
pub fn max_correlation(f: &Frame) -> Result<f64> {
    if f.n() < 2 {
        return Err(Error::InvalidInput(
            "max correlation needs at least two vectors".into(),
        ));
    }
    let n = f.n();
    let mut max_inner = 0.0f64;
    for k in 0..n {
        for l in (k + 1)..n {
            max_inner = max_inner.max(dot(f.vector(k), f.vector(l)).abs());
        }
    }
    let m = if uniformity_defect(f) <= UNIFORM_FAST_PATH_TOL {
        max_inner * n as f64 / f.d() as f64
    } else {
        let norms: Vec<f64> = f.norms_sq().iter().map(|ns| ns.sqrt()).collect();
        let mut m = 0.0f64;
        for k in 0..n {
            for l in (k + 1)..n {
                m = m.max(dot(f.vector(k), f.vector(l)).abs() / (norms[k] * norms[l]));
            }
        }
        m
    };
    Ok(m.clamp(0.0, 1.0))
}

/// Lower bound sqrt((N-d)/(d(N-1))) on the maximum correlation of any
/// uniform (N,d) frame, attained exactly by equiangular tight frames.
pub fn welch_bound(n: usize, d: usize) -> Result<f64> {
    if d < 1 || n < d {
        return Err(Error::InvalidInput(format!(
            "Welch bound needs N >= d >= 1, got N={n}, d={d}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput(
            "Welch bound needs at least two vectors".into(),
        ));
    }
    Ok(((n - d) as f64 / (d as f64 * (n - 1) as f64)).sqrt())
}

/// True when every normalized |<f_k, f_l>|, k != l, lies within `tol` of
/// their common mean.
pub fn is_equiangular(f: &Frame, tol: f64) -> Result<bool> {
    if f.n() < 2 {
        return Err(Error::InvalidInput(
            "equiangularity needs at least two vectors".into(),
        ));
    }
    let n = f.n();
    let norms: Vec<f64> = f.norms_sq().iter().map(|ns| ns.sqrt()).collect();
    let mut cosines = Vec::with_capacity(n * (n - 1) / 2);
    for k in 0..n {
        for l in (k + 1)..n {
            cosines.push(dot(f.vector(k), f.vector(l)).abs() / (norms[k] * norms[l]));
        }
    }
    let mean = cosines.iter().sum::<f64>() / cosines.len() as f64;
    Ok(cosines.iter().all(|c| (c - mean).abs() <= tol))
}

/// l2 error of the frame expansion: || h - sum_i <h, f_i> f_i ||.
pub fn reconstruction_error(f: &Frame, h: &[f64]) -> Result<f64> {
    if h.len() != f.d() {
        return Err(Error::InvalidInput(format!(
            "vector has dimension {}, frame lives in dimension {}",
            h.len(),
            f.d()
        )));
    }
    if h.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("vector entries must be finite".into()));
    }
    let mut recon = vec![0.0; f.d()];
    for i in 0..f.n() {
        let c = dot(h, f.vector(i));
        for (r, x) in recon.iter_mut().zip(f.vector(i)) {
            *r += c * x;
        }
    }
    Ok(h.iter()
        .zip(&recon)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Column-space view of tightness: a frame is tight exactly when V^T V is a
/// multiple of the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessDiagnostics {
    /// Squared norms of the d columns of the analysis matrix.
    pub column_norms_sq: Vec<f64>,
    /// Largest off-diagonal magnitude of V^T V.
    pub max_column_inner: f64,
    /// Column norms agree within tol and columns are orthogonal within tol.
    pub is_tight: bool,
}

pub fn tightness_diagnostics(f: &Frame, tol: f64) -> TightnessDiagnostics {
    let vtv = f.matrix().gram_of_columns();
    let column_norms_sq: Vec<f64> = (0..f.d()).map(|c| vtv[(c, c)]).collect();
    let max_column_inner = vtv.max_abs_offdiag();
    let spread = column_norms_sq.iter().fold(f64::MIN, |m, &x| m.max(x))
        - column_norms_sq.iter().fold(f64::MAX, |m, &x| m.min(x));
    TightnessDiagnostics {
        column_norms_sq,
        max_column_inner,
        is_tight: spread <= tol && max_column_inner <= tol,
    }
}

/// Scalar summary of one frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub n: usize,
    pub d: usize,
    pub parseval_defect: f64,
    pub uniformity_defect: f64,
    /// Mean eigenvalue of V^T V; the frame constant A of a tight frame.
    pub tight_constant_a: f64,
    pub max_correlation: f64,
    pub min_angle_deg: f64,
    pub min_angle_rad: f64,
    pub welch_bound: f64,
    /// Equiangularity at the default tolerance.
    pub equiangular: bool,
    pub redundancy: f64,
}

pub fn analyze(f: &Frame) -> Result<FrameReport> {
    let max_correlation = max_correlation(f)?;
    let min_angle_rad = max_correlation.acos();
    let trace: f64 = f.norms_sq().iter().sum();
    Ok(FrameReport {
        n: f.n(),
        d: f.d(),
        parseval_defect: parseval_defect(f),
        uniformity_defect: uniformity_defect(f),
        tight_constant_a: trace / f.d() as f64,
        max_correlation,
        min_angle_deg: min_angle_rad.to_degrees(),
        min_angle_rad,
        welch_bound: welch_bound(f.n(), f.d())?,
        equiangular: is_equiangular(f, DEFAULT_TOL)?,
        redundancy: f.n() as f64 / f.d() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn onb(d: usize) -> Frame {
        Frame::from_matrix(Matrix::identity(d)).unwrap()
    }

    pub(crate) fn cube4() -> Frame {
        Frame::new(vec![
            vec![0.5, 0.5, 0.5],
            vec![-0.5, -0.5, 0.5],
            vec![-0.5, 0.5, -0.5],
            vec![0.5, -0.5, -0.5],
        ])
        .unwrap()
    }

    /// Cube scaled by sqrt(4/7) stacked over an orthonormal basis scaled
    /// by sqrt(3/7): a uniform Parseval (7,3) frame.
    fn seven_three() -> Frame {
        let a = (4.0f64 / 7.0).sqrt();
        let b = (3.0f64 / 7.0).sqrt();
        let mut rows: Vec<Vec<f64>> = cube4()
            .vectors()
            .into_iter()
            .map(|v| v.into_iter().map(|x| a * x).collect())
            .collect();
        for c in 0..3 {
            let mut e = vec![0.0; 3];
            e[c] = b;
            rows.push(e);
        }
        Frame::new(rows).unwrap()
    }

    /// Ten unit vectors spanning a hexagonal equator plus two twisted
    /// triangles; columns orthogonal with unequal norms, so not tight.
    pub(crate) fn hexakis_unit() -> Frame {
        let beta = 3.0f64.powf(-0.25);
        let z = beta * (3.0f64.sqrt() - 1.0).sqrt();
        let s3 = 3.0f64.sqrt();
        Frame::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![-s3 / 2.0, 0.5, 0.0],
            vec![s3 / 2.0, 0.5, 0.0],
            vec![beta, 0.0, z],
            vec![beta, 0.0, -z],
            vec![beta / 2.0, beta * s3 / 2.0, z],
            vec![-beta / 2.0, -beta * s3 / 2.0, z],
            vec![beta / 2.0, -beta * s3 / 2.0, -z],
            vec![-beta / 2.0, beta * s3 / 2.0, -z],
        ])
        .unwrap()
    }

    #[test]
    fn frame_construction_rejects_bad_input() {
        assert!(Frame::new(vec![]).is_err());
        assert!(Frame::new(vec![vec![1.0, 0.0], vec![0.0]]).is_err());
        assert!(Frame::new(vec![vec![1.0, 0.0]]).is_err()); // N < d
        assert!(Frame::new(vec![vec![1.0], vec![0.0]]).is_err()); // zero vector
        assert!(Frame::new(vec![vec![f64::NAN], vec![1.0]]).is_err());
    }

    #[test]
    fn grammian_of_orthonormal_basis_is_identity() {
        let g = grammian(&onb(3));
        assert_eq!(g.matrix().max_abs_diff(&Matrix::identity(3)), 0.0);
    }

    #[test]
    fn grammian_of_cube_frame() {
        // I_4 - (1/4) J_4, exact in binary arithmetic
        let g = grammian(&cube4());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.75 } else { -0.25 };
                assert_eq!(g.matrix()[(i, j)], want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn grammian_of_repeated_line_is_scaled_all_ones() {
        let f = Frame::new(vec![vec![0.5]; 4]).unwrap();
        let g = grammian(&f);
        assert!(g.matrix().max_abs_diff(&Matrix::new(4, 4, vec![0.25; 16])) == 0.0);
    }

    #[test]
    fn grammian_validator_rejects_asymmetry_and_negative_spectrum() {
        let m = Matrix::new(2, 2, vec![1.0, 0.2, 0.3, 1.0]);
        assert!(Grammian::new(m).is_err());
        let neg = Matrix::new(2, 2, vec![1.0, 2.0, 2.0, 1.0]); // eigenvalue -1
        assert!(Grammian::new(neg).is_err());
        let ok = Matrix::new(2, 2, vec![1.0, 0.5, 0.5, 1.0]);
        assert!(Grammian::new(ok).is_ok());
    }

    #[test]
    fn parseval_defect_examples() {
        assert_eq!(parseval_defect(&onb(4)), 0.0);
        assert!(parseval_defect(&cube4()) <= 1e-12);
        assert!(parseval_defect(&hexakis_unit()) > 0.5);
    }

    #[test]
    fn uniformity_defect_examples() {
        assert!(uniformity_defect(&cube4()) <= 1e-15);
        let f = Frame::new(vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![2.0 / 2.0f64.sqrt(), 2.0 / 2.0f64.sqrt()],
        ])
        .unwrap();
        assert!(uniformity_defect(&f) > 0.1);
    }

    #[test]
    fn max_correlation_examples() {
        assert_eq!(max_correlation(&onb(5)).unwrap(), 0.0);
        let m = max_correlation(&seven_three()).unwrap();
        assert!((m - 3.0f64.sqrt() / 3.0).abs() <= 1e-12, "got {m}");
    }

    #[test]
    fn max_correlation_needs_two_vectors() {
        let f = Frame::new(vec![vec![1.0]]).unwrap();
        assert!(max_correlation(&f).is_err());
    }

    #[test]
    fn fast_path_matches_normalized_path_on_uniform_frames() {
        // same frame, one copy nudged past the fast-path gate
        let f = cube4();
        let fast = max_correlation(&f).unwrap();
        let mut vs = f.vectors();
        vs[0][0] += 1e-9; // uniformity defect ~1e-9 forces the slow path
        let slow = max_correlation(&Frame::new(vs).unwrap()).unwrap();
        assert!((fast - slow).abs() <= 1e-8);
    }

    #[test]
    fn welch_bound_values() {
        assert_eq!(welch_bound(3, 3).unwrap(), 0.0);
        assert!((welch_bound(4, 3).unwrap() - 1.0 / 3.0).abs() <= 1e-16);
        assert!((welch_bound(6, 3).unwrap() - 1.0 / 5.0f64.sqrt()).abs() <= 1e-16);
        assert!(welch_bound(2, 3).is_err());
        assert!(welch_bound(1, 1).is_err());
        assert!(welch_bound(3, 0).is_err());
    }

    #[test]
    fn equiangularity_examples() {
        assert!(is_equiangular(&cube4(), 1e-10).unwrap());
        assert!(!is_equiangular(&seven_three(), 1e-6).unwrap());
        assert!(is_equiangular(&onb(3), 0.0).unwrap());
    }

    #[test]
    fn reconstruction_error_examples() {
        assert!(reconstruction_error(&cube4(), &[1.0, 0.0, 0.0]).unwrap() <= 1e-12);
        assert_eq!(
            reconstruction_error(&onb(3), &[0.3, -0.7, 2.0]).unwrap(),
            0.0
        );

        let s = (3.0f64 / 10.0).sqrt();
        let scaled = Frame::new(
            hexakis_unit()
                .vectors()
                .into_iter()
                .map(|v| v.into_iter().map(|x| s * x).collect())
                .collect(),
        )
        .unwrap();
        let err = reconstruction_error(&scaled, &[0.0, 0.0, 1.0]).unwrap();
        assert!(err > 0.01);
        // axis error has the closed form 1 - (3/10)(6 - 2 sqrt(3))
        let want = 1.0 - 0.3 * (6.0 - 2.0 * 3.0f64.sqrt());
        assert!((err - want).abs() <= 1e-12, "err {err}, want {want}");
    }

    #[test]
    fn reconstruction_error_rejects_dimension_mismatch() {
        assert!(reconstruction_error(&cube4(), &[1.0, 0.0]).is_err());
    }

    #[test]
    fn tightness_diagnostics_examples() {
        let diag = tightness_diagnostics(&onb(3), DEFAULT_TOL);
        assert!(diag.is_tight);
        assert_eq!(diag.column_norms_sq, vec![1.0, 1.0, 1.0]);
        assert_eq!(diag.max_column_inner, 0.0);

        let hex = tightness_diagnostics(&hexakis_unit(), DEFAULT_TOL);
        assert!(!hex.is_tight);
        let s3 = 3.0f64.sqrt();
        let want = [2.5 + s3, 1.5 + s3, 6.0 - 2.0 * s3];
        for (got, want) in hex.column_norms_sq.iter().zip(want) {
            assert!((got - want).abs() <= 1e-10, "got {got}, want {want}");
        }
        assert!(hex.max_column_inner <= 1e-12);
    }

    #[test]
    fn analyze_cube_frame() {
        let r = analyze(&cube4()).unwrap();
        assert_eq!(r.n, 4);
        assert_eq!(r.d, 3);
        assert!(r.parseval_defect <= 1e-12);
        assert!(r.uniformity_defect <= 1e-15);
        assert!((r.tight_constant_a - 1.0).abs() <= 1e-12);
        assert!((r.max_correlation - 1.0 / 3.0).abs() <= 1e-12);
        assert!((r.welch_bound - 1.0 / 3.0).abs() <= 1e-12);
        assert!(r.equiangular);
        assert_eq!(r.redundancy, 4.0 / 3.0);
        assert!((r.min_angle_deg - (1.0f64 / 3.0).acos().to_degrees()).abs() <= 1e-12);
        assert!((r.min_angle_rad.to_degrees() - r.min_angle_deg).abs() <= 1e-12);
    }
}
