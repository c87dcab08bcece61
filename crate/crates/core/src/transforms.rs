//! Frame-to-frame constructions: orthogonal complements, weighted unions,
//! rescaling of tight frames, and the symmetry operations (rotations and
//! signed permutations) that preserve the correlation structure.

use crate::error::{Error, Result};
use crate::frame::{grammian, parseval_defect, uniformity_defect, Frame};
use crate::linalg::{sym_eig, Matrix};

/// Input tolerance on the Parseval and uniformity defects of frames fed to
/// [`complement`], [`union`], and [`scale_to_parseval`].
pub const INPUT_DEFECT_TOL: f64 = 1e-8;

/// Eigenvalue threshold separating the complement eigenspace (values near 1)
/// from the range eigenspace (values near 0) of I - G.
const COMPLEMENT_SPLIT: f64 = 0.5;

/// Orthogonality tolerance on rotation matrices.
pub const ROTATION_TOL: f64 = 1e-10;

/// A relabeling i -> sign[i] * f[perm[i]] of the frame vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<f64>,
}

impl SignedPermutation {
    /// `perm` must be a bijection of 0..n and every sign must be +1 or -1.
    pub fn new(perm: Vec<usize>, signs: Vec<f64>) -> Result<SignedPermutation> {
        if perm.len() != signs.len() {
            return Err(Error::InvalidInput(format!(
                "permutation has {} entries but {} signs",
                perm.len(),
                signs.len()
            )));
        }
        if perm.is_empty() {
            return Err(Error::InvalidInput("empty signed permutation".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidInput(format!(
                    "permutation is not a bijection of 0..{}",
                    perm.len()
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(Error::InvalidInput("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[f64] {
        &self.signs
    }
}

fn require_uniform_parseval(f: &Frame, what: &str) -> Result<()> {
    let pd = parseval_defect(f);
    let ud = uniformity_defect(f);
    if pd > INPUT_DEFECT_TOL || ud > INPUT_DEFECT_TOL {
        return Err(Error::InvalidInput(format!(
            "{what} needs a uniform Parseval frame: parseval defect {pd:.3e}, \
             uniformity defect {ud:.3e} (tolerance {INPUT_DEFECT_TOL:.0e})"
        )));
    }
    Ok(())
}

/// Uniform Parseval (N, N-d) frame whose Grammian is I_N - G.
///
/// Built from the eigenvectors of I - G with eigenvalue above 1/2; each
/// eigenvector is oriented so its first nonzero entry is positive, making the
/// output deterministic.
pub fn complement(f: &Frame) -> Result<Frame> {
    let (n, d) = (f.n(), f.d());
    if n == d {
        return Err(Error::NoComplement(format!(
            "a ({n},{d}) frame spans the whole space; its complement is empty"
        )));
    }
    require_uniform_parseval(f, "complement")?;

    let g = grammian(f);
    let mut h = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] -= g.matrix()[(i, j)];
        }
    }
    let eig = sym_eig(&h, 0.0)?;
    let keep: Vec<usize> = (0..n)
        .filter(|&i| eig.values[i] >= COMPLEMENT_SPLIT)
        .collect();
    if keep.len() != n - d {
        return Err(Error::Numerical(format!(
            "complement eigenspace split failed: {} eigenvalues above {COMPLEMENT_SPLIT}, \
             expected {}",
            keep.len(),
            n - d
        )));
    }

    let mut w = Matrix::zeros(n, n - d);
    for (col, &src) in keep.iter().enumerate() {
        let flip = (0..n)
            .map(|r| eig.vectors[(r, src)])
            .find(|x| x.abs() > 1e-9)
            .is_some_and(|x| x < 0.0);
        let scale = if flip { -1.0 } else { 1.0 };
        for r in 0..n {
            w[(r, col)] = scale * eig.vectors[(r, src)];
        }
    }
    Frame::from_matrix(w)
}

/// Weighted concatenation of a uniform Parseval (N,d) frame and a uniform
/// Parseval (M,d) frame: scaling the first by sqrt(N/(N+M)) and the second by
/// sqrt(M/(N+M)) yields a uniform Parseval (N+M, d) frame.
pub fn union(f: &Frame, g: &Frame) -> Result<Frame> {
    if f.d() != g.d() {
        return Err(Error::InvalidInput(format!(
            "union needs equal dimensions, got d={} and d={}",
            f.d(),
            g.d()
        )));
    }
    require_uniform_parseval(f, "union")?;
    require_uniform_parseval(g, "union")?;

    let (n, m) = (f.n() as f64, g.n() as f64);
    let a = (n / (n + m)).sqrt();
    let b = (m / (n + m)).sqrt();
    let mut rows = Vec::with_capacity(f.n() + g.n());
    for i in 0..f.n() {
        rows.push(f.vector(i).iter().map(|x| a * x).collect::<Vec<_>>());
    }
    for i in 0..g.n() {
        rows.push(g.vector(i).iter().map(|x| b * x).collect::<Vec<_>>());
    }
    Frame::new(rows)
}

/// Rescales a tight frame (V^T V = A I for some A > 0) to Parseval.
pub fn scale_to_parseval(f: &Frame) -> Result<Frame> {
    let vtv = f.matrix().gram_of_columns();
    let a = (0..f.d()).map(|c| vtv[(c, c)]).sum::<f64>() / f.d() as f64;
    let mut dev = 0.0f64;
    for i in 0..f.d() {
        for j in 0..f.d() {
            let target = if i == j { a } else { 0.0 };
            dev = dev.max((vtv[(i, j)] - target).abs());
        }
    }
    if dev > INPUT_DEFECT_TOL * a.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "frame is not tight: max |V^T V - {a:.6} I| = {dev:.3e}"
        )));
    }
    let s = 1.0 / a.sqrt();
    Frame::new(
        f.vectors()
            .into_iter()
            .map(|v| v.into_iter().map(|x| s * x).collect())
            .collect(),
    )
}

/// Relabels the frame as i -> sign[i] * f[perm[i]].
pub fn apply_signed_permutation(f: &Frame, s: &SignedPermutation) -> Result<Frame> {
    if s.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "signed permutation acts on {} vectors, frame has {}",
            s.len(),
            f.n()
        )));
    }
    let rows = (0..f.n())
        .map(|i| {
            f.vector(s.perm()[i])
                .iter()
                .map(|x| s.signs()[i] * x)
                .collect()
        })
        .collect();
    Frame::new(rows)
}

/// Applies an orthogonal matrix to every vector: f_i -> U f_i.
pub fn rotate(f: &Frame, u: &Matrix) -> Result<Frame> {
    if u.rows() != f.d() || u.cols() != f.d() {
        return Err(Error::InvalidInput(format!(
            "rotation must be {d}x{d}, got {}x{}",
            u.rows(),
            u.cols(),
            d = f.d()
        )));
    }
    let dev = u.gram_of_columns().max_abs_diff(&Matrix::identity(f.d()));
    if dev > ROTATION_TOL {
        return Err(Error::InvalidInput(format!(
            "matrix is not orthogonal: max |U^T U - I| = {dev:.3e}"
        )));
    }
    // row vectors transform by right-multiplication with U^T
    Frame::from_matrix(f.matrix().matmul(&u.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::max_correlation;

    fn onb(d: usize) -> Frame {
        Frame::from_matrix(Matrix::identity(d)).unwrap()
    }

    fn cube4() -> Frame {
        Frame::new(vec![
            vec![0.5, 0.5, 0.5],
            vec![-0.5, -0.5, 0.5],
            vec![-0.5, 0.5, -0.5],
            vec![0.5, -0.5, -0.5],
        ])
        .unwrap()
    }

    fn line(n: usize) -> Frame {
        Frame::new(vec![vec![1.0 / (n as f64).sqrt()]; n]).unwrap()
    }

    #[test]
    fn complement_of_repeated_line_is_a_simplex() {
        let c = complement(&line(4)).unwrap();
        assert_eq!((c.n(), c.d()), (4, 3));
        let g = grammian(&c);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.75 } else { -0.25 };
                assert!((g.matrix()[(i, j)] - want).abs() <= 1e-12);
            }
        }
        assert!(parseval_defect(&c) <= 1e-12);
        assert!(uniformity_defect(&c) <= 1e-12);
    }

    #[test]
    fn complement_is_an_involution_on_grammians() {
        let f = cube4();
        let cc = complement(&complement(&f).unwrap()).unwrap();
        let diff = grammian(&cc).matrix().max_abs_diff(grammian(&f).matrix());
        assert!(diff <= 1e-8, "round trip moved the Grammian by {diff:.3e}");
    }

    #[test]
    fn complement_correlation_scales_by_d_over_n_minus_d() {
        let f = cube4();
        let c = complement(&f).unwrap();
        let want = 3.0 * max_correlation(&f).unwrap(); // d/(N-d) = 3
        assert!((max_correlation(&c).unwrap() - want).abs() <= 1e-10);
    }

    #[test]
    fn complement_is_deterministic() {
        let a = complement(&cube4()).unwrap();
        let b = complement(&cube4()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complement_rejects_full_span_and_non_parseval_frames() {
        assert!(matches!(complement(&onb(3)), Err(Error::NoComplement(_))));
        let skew = Frame::new(vec![vec![1.0, 0.0], vec![0.9, 0.1], vec![0.0, 0.4]]).unwrap();
        assert!(matches!(complement(&skew), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn union_of_cube_and_basis_has_three_cosine_levels() {
        let u = union(&cube4(), &onb(3)).unwrap();
        assert_eq!((u.n(), u.d()), (7, 3));
        assert!(parseval_defect(&u) <= 1e-12);
        assert!(uniformity_defect(&u) <= 1e-12);
        let levels = [0.0, 1.0 / 3.0, 1.0 / 3.0f64.sqrt()];
        let norm_sq = 3.0 / 7.0;
        let mut seen = [false; 3];
        for k in 0..7 {
            for l in (k + 1)..7 {
                let c = u
                    .vector(k)
                    .iter()
                    .zip(u.vector(l))
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    .abs()
                    / norm_sq;
                let hit = levels
                    .iter()
                    .position(|t| (c - t).abs() <= 1e-12)
                    .unwrap_or_else(|| panic!("unexpected cosine {c}"));
                seen[hit] = true;
            }
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn union_of_two_bases_is_uniform_parseval() {
        let u = union(&onb(2), &onb(2)).unwrap();
        assert_eq!((u.n(), u.d()), (4, 2));
        for ns in u.norms_sq() {
            assert!((ns - 0.5).abs() <= 1e-15);
        }
        assert!(parseval_defect(&u) <= 1e-15);
    }

    #[test]
    fn union_rejects_mismatched_or_loose_inputs() {
        assert!(union(&cube4(), &onb(2)).is_err());
        let loose = Frame::new(vec![vec![1.0, 0.0], vec![0.9, 0.1], vec![0.0, 0.4]]).unwrap();
        assert!(union(&loose, &onb(2)).is_err());
    }

    #[test]
    fn scale_to_parseval_strips_a_tight_constant() {
        let tripled = Frame::new(vec![vec![3.0, 0.0], vec![0.0, 3.0]]).unwrap();
        let p = scale_to_parseval(&tripled).unwrap();
        assert!(p.matrix().max_abs_diff(&Matrix::identity(2)) <= 1e-15);
    }

    #[test]
    fn scale_to_parseval_rejects_non_tight_frames() {
        let f = Frame::new(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(matches!(scale_to_parseval(&f), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn signed_permutation_validation() {
        assert!(SignedPermutation::new(vec![0, 1], vec![1.0]).is_err());
        assert!(SignedPermutation::new(vec![0, 0], vec![1.0, 1.0]).is_err());
        assert!(SignedPermutation::new(vec![0, 2], vec![1.0, 1.0]).is_err());
        assert!(SignedPermutation::new(vec![0, 1], vec![1.0, 0.5]).is_err());
        assert!(SignedPermutation::new(vec![1, 0], vec![-1.0, 1.0]).is_ok());
    }

    #[test]
    fn signed_permutation_conjugates_the_grammian() {
        let f = cube4();
        let s = SignedPermutation::new(vec![2, 0, 3, 1], vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let h = apply_signed_permutation(&f, &s).unwrap();
        let g = grammian(&f);
        let gh = grammian(&h);
        for i in 0..4 {
            for j in 0..4 {
                let want = s.signs()[i] * s.signs()[j] * g.matrix()[(s.perm()[i], s.perm()[j])];
                assert!((gh.matrix()[(i, j)] - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn global_sign_flip_preserves_the_grammian_magnitudes() {
        let f = cube4();
        let s = SignedPermutation::new(vec![0, 1, 2, 3], vec![-1.0; 4]).unwrap();
        let h = apply_signed_permutation(&f, &s).unwrap();
        assert_eq!(grammian(&f), grammian(&h));
    }

    #[test]
    fn identity_signed_permutation_is_a_no_op() {
        let f = cube4();
        let h = apply_signed_permutation(&f, &SignedPermutation::identity(4)).unwrap();
        assert_eq!(f, h);
    }

    #[test]
    fn rotation_preserves_the_grammian() {
        let f = cube4();
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        #[rustfmt::skip]
        let u = Matrix::new(3, 3, vec![
              c,  -s, 0.0,
              s,   c, 0.0,
            0.0, 0.0, 1.0,
        ]);
        let r = rotate(&f, &u).unwrap();
        let diff = grammian(&r).matrix().max_abs_diff(grammian(&f).matrix());
        assert!(diff <= 1e-12);
    }

    #[test]
    fn rotation_rejects_non_orthogonal_or_misshapen_matrices() {
        let f = cube4();
        let mut u = Matrix::identity(3);
        u[(0, 1)] = 0.01;
        assert!(rotate(&f, &u).is_err());
        assert!(rotate(&f, &Matrix::identity(2)).is_err());
        let refl = Matrix::new(3, 3, {
            let mut v = vec![0.0; 9];
            v[0] = 1.0;
            v[4] = 1.0;
            v[8] = -1.0;
            v
        });
        assert!(rotate(&f, &refl).is_ok());
    }
}
