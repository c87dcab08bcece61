//! Named frame constructions with exact coordinates, the table of certified
//! minimal coherences, and the grid check showing that the ten-line
//! configuration admits no two-vector axis replacement.
//!
//! Every constant is written as the closed-form expression it comes from,
//! never as a decimal literal, and every build is validated against the
//! entry's expected metrics before it is returned.

use crate::error::{Error, Result};
use crate::frame::{
    is_equiangular, max_correlation, parseval_defect, tightness_diagnostics, uniformity_defect,
    Frame,
};
use crate::linalg::Matrix;
use crate::transforms::union;

/// Parseval and uniformity defect bound a catalog build must meet.
pub const BUILD_DEFECT_TOL: f64 = 1e-12;

/// Allowed gap between a built frame's coherence and its catalog value.
pub const BUILD_COHERENCE_TOL: f64 = 1e-10;

/// Largest family parameter accepted (the dense kernel is sized for this).
pub const MAX_FAMILY_SIZE: usize = 64;

/// One catalog construction and the metrics its build must reproduce.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub is_parseval: bool,
    pub equiangular: bool,
    /// None when the frame has fewer than two vectors.
    pub expected_max_correlation: Option<f64>,
    /// Geometric origin of the construction.
    pub provenance: String,
    /// Named exact constants appearing in the coordinates.
    pub constants: Vec<(String, f64)>,
}

const NAMED: [&str; 7] = [
    "cube4",
    "pentagon-complement5",
    "icosahedron6",
    "cube-plus-onb7",
    "hexakis-lines10",
    "rhombicuboctahedron12",
    "pentakis-dodecahedron16",
];

/// Catalog listing in a fixed order: family representatives first, then the
/// named solids. `build` also accepts any family instance up to
/// [`MAX_FAMILY_SIZE`], e.g. "simplex:9".
pub fn list() -> Vec<CatalogEntry> {
    let mut names = vec![
        "onb:2",
        "onb:3",
        "line:3",
        "line:5",
        "simplex:4",
        "simplex:5",
        "harmonic2:5",
        "harmonic2:7",
    ];
    names.extend(NAMED);
    names.into_iter().map(|n| entry(n).unwrap()).collect()
}

/// Catalog entry for `name` without building the frame.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    if let Some((family, param)) = name.split_once(':') {
        let n: usize = param.parse().map_err(|_| {
            Error::InvalidInput(format!(
                "family size in {name:?} must be a positive integer"
            ))
        })?;
        return family_entry(family, n, name);
    }
    match name {
        "cube4" => Ok(CatalogEntry {
            name: name.into(),
            n: 4,
            d: 3,
            is_parseval: true,
            equiangular: true,
            expected_max_correlation: Some(1.0 / 3.0),
            provenance: "alternate vertices of the cube with side length one".into(),
            constants: vec![("coordinate".into(), 0.5)],
        }),
        "pentagon-complement5" => {
            let a = (18.0 * (15.0 - 5.0f64.sqrt())).sqrt();
            let b = (150.0 - 30.0 * 5.0f64.sqrt()).sqrt();
            let c = (3.0f64 / 5.0).sqrt();
            Ok(CatalogEntry {
                name: name.into(),
                n: 5,
                d: 3,
                is_parseval: true,
                equiangular: false,
                expected_max_correlation: Some(2.0 / 3.0 * (std::f64::consts::PI / 5.0).cos()),
                provenance: "orthogonal complement of the five half-turn pentagon directions"
                    .into(),
                constants: vec![("a".into(), a), ("b".into(), b), ("c".into(), c)],
            })
        }
        "icosahedron6" => Ok(CatalogEntry {
            name: name.into(),
            n: 6,
            d: 3,
            is_parseval: true,
            equiangular: true,
            expected_max_correlation: Some(1.0 / 5.0f64.sqrt()),
            provenance: "one vertex per antipodal pair of the regular icosahedron".into(),
            constants: vec![
                ("alpha".into(), 1.0 / 5.0f64.sqrt()),
                ("scale".into(), 1.0 / 2.0f64.sqrt()),
            ],
        }),
        "cube-plus-onb7" => Ok(CatalogEntry {
            name: name.into(),
            n: 7,
            d: 3,
            is_parseval: true,
            equiangular: false,
            expected_max_correlation: Some(3.0f64.sqrt() / 3.0),
            provenance: "weighted union of the cube diagonals and an orthonormal basis".into(),
            constants: vec![
                ("cube_weight".into(), (4.0f64 / 7.0).sqrt()),
                ("basis_weight".into(), (3.0f64 / 7.0).sqrt()),
            ],
        }),
        "hexakis-lines10" => Ok(CatalogEntry {
            name: name.into(),
            n: 10,
            d: 3,
            is_parseval: false,
            equiangular: false,
            expected_max_correlation: Some(3.0f64.sqrt() / 2.0),
            provenance: "ten unit lines: four through a planar hexagon's axes, six through \
                         twisted triangles above and below"
                .into(),
            constants: vec![("beta".into(), 3.0f64.powf(-0.25))],
        }),
        "rhombicuboctahedron12" => {
            let root = (2.0 * 2.0f64.sqrt() + 5.0).sqrt();
            Ok(CatalogEntry {
                name: name.into(),
                n: 12,
                d: 3,
                is_parseval: true,
                equiangular: false,
                expected_max_correlation: Some((7.0 + 4.0 * 2.0f64.sqrt()) / 17.0),
                provenance: "one vertex per antipodal pair of a rhombicuboctahedron inscribed \
                             in the unit sphere, scaled by 1/2"
                    .into(),
                constants: vec![
                    ("short".into(), 1.0 / root),
                    ("long".into(), (1.0 + 2.0f64.sqrt()) / root),
                    ("scale".into(), 0.5),
                ],
            })
        }
        "pentakis-dodecahedron16" => Ok(CatalogEntry {
            name: name.into(),
            n: 16,
            d: 3,
            is_parseval: true,
            equiangular: false,
            expected_max_correlation: Some(((5.0 + 2.0 * 5.0f64.sqrt()) / 15.0).sqrt()),
            provenance: "one vertex per antipodal pair of a pentakis dodecahedron inscribed \
                         in the unit sphere, scaled by sqrt(3)/4"
                .into(),
            constants: pentakis_constants()
                .iter()
                .enumerate()
                .map(|(i, &c)| (format!("c{i}"), c))
                .chain(std::iter::once(("scale".into(), 3.0f64.sqrt() / 4.0)))
                .collect(),
        }),
        _ => Err(Error::NotFound(format!(
            "no catalog entry {name:?}; valid names are onb:d, line:N, simplex:N, \
             harmonic2:N, {}",
            NAMED.join(", ")
        ))),
    }
}

fn family_entry(family: &str, n: usize, name: &str) -> Result<CatalogEntry> {
    let check_range = |min: usize| -> Result<()> {
        if n < min || n > MAX_FAMILY_SIZE {
            return Err(Error::InvalidInput(format!(
                "{family} family size must lie in {min}..={MAX_FAMILY_SIZE}, got {n}"
            )));
        }
        Ok(())
    };
    match family {
        "onb" => {
            check_range(1)?;
            Ok(CatalogEntry {
                name: name.into(),
                n,
                d: n,
                is_parseval: true,
                equiangular: true,
                expected_max_correlation: (n >= 2).then_some(0.0),
                provenance: "standard orthonormal basis".into(),
                constants: vec![],
            })
        }
        "line" => {
            check_range(1)?;
            Ok(CatalogEntry {
                name: name.into(),
                n,
                d: 1,
                is_parseval: true,
                equiangular: true,
                expected_max_correlation: (n >= 2).then_some(1.0),
                provenance: "N copies of one direction on the line, scaled to Parseval".into(),
                constants: vec![("coordinate".into(), 1.0 / (n as f64).sqrt())],
            })
        }
        "simplex" => {
            check_range(2)?;
            Ok(CatalogEntry {
                name: name.into(),
                n,
                d: n - 1,
                is_parseval: true,
                equiangular: true,
                expected_max_correlation: Some(1.0 / (n as f64 - 1.0)),
                provenance: "vertex directions of a regular simplex centered at the origin".into(),
                constants: vec![],
            })
        }
        "harmonic2" => {
            check_range(2)?;
            Ok(CatalogEntry {
                name: name.into(),
                n,
                d: 2,
                is_parseval: true,
                equiangular: n <= 3,
                expected_max_correlation: Some((std::f64::consts::PI / n as f64).cos()),
                provenance: "equally spaced half-turn directions on the circle, scaled to \
                             Parseval"
                    .into(),
                constants: vec![("radius".into(), (2.0 / n as f64).sqrt())],
            })
        }
        _ => Err(Error::NotFound(format!(
            "no catalog family {family:?}; valid names are onb:d, line:N, simplex:N, \
             harmonic2:N, {}",
            NAMED.join(", ")
        ))),
    }
}

/// Builds a catalog frame and validates it against its entry.
pub fn build(name: &str) -> Result<Frame> {
    let entry = entry(name)?;
    let frame = construct(&entry)?;
    validate(&entry, &frame)?;
    Ok(frame)
}

fn construct(entry: &CatalogEntry) -> Result<Frame> {
    let name = entry.name.as_str();
    if let Some((family, _)) = name.split_once(':') {
        return match family {
            "onb" => Frame::from_matrix(Matrix::identity(entry.n)),
            "line" => Frame::new(vec![vec![1.0 / (entry.n as f64).sqrt()]; entry.n]),
            "simplex" => Frame::from_matrix(simplex_matrix(entry.n)),
            "harmonic2" => Frame::new(harmonic2_rows(entry.n)),
            _ => unreachable!("entry() vets family names"),
        };
    }
    match name {
        "cube4" => Frame::new(cube4_rows()),
        "pentagon-complement5" => Frame::new(pentagon_complement5_rows()),
        "icosahedron6" => {
            // two readings of the fifth vector's first coordinate exist; the
            // equiangularity self-check at 1e-10 picks the valid one
            let variants = icosahedron6_variants();
            for rows in variants {
                let f = Frame::new(rows)?;
                if is_equiangular(&f, 1e-10)? {
                    return Ok(f);
                }
            }
            Err(Error::Construction(
                "no icosahedron variant is equiangular at 1e-10".into(),
            ))
        }
        "cube-plus-onb7" => {
            let cube = build("cube4")?;
            let onb = build("onb:3")?;
            union(&cube, &onb)
        }
        "hexakis-lines10" => Frame::new(hexakis_rows()),
        "rhombicuboctahedron12" => Frame::new(rhombicuboctahedron12_rows()),
        "pentakis-dodecahedron16" => {
            // two readings of the twelfth vertex exist; only one makes the
            // synthesis columns orthogonal, checked via tightness at 1e-12
            let variants = pentakis16_variants();
            for rows in variants {
                let f = Frame::new(rows)?;
                if tightness_diagnostics(&f, BUILD_DEFECT_TOL).is_tight {
                    return Ok(f);
                }
            }
            Err(Error::Construction(
                "no pentakis dodecahedron variant is tight at 1e-12".into(),
            ))
        }
        _ => unreachable!("entry() vets names"),
    }
}

fn validate(entry: &CatalogEntry, f: &Frame) -> Result<()> {
    let fail = |msg: String| Err(Error::Construction(format!("{}: {msg}", entry.name)));
    if (f.n(), f.d()) != (entry.n, entry.d) {
        return fail(format!(
            "built a ({},{}) frame, expected ({},{})",
            f.n(),
            f.d(),
            entry.n,
            entry.d
        ));
    }
    if entry.is_parseval {
        let pd = parseval_defect(f);
        let ud = uniformity_defect(f);
        if pd > BUILD_DEFECT_TOL || ud > BUILD_DEFECT_TOL {
            return fail(format!(
                "defects too large: parseval {pd:.3e}, uniformity {ud:.3e}"
            ));
        }
    }
    if let Some(expected) = entry.expected_max_correlation {
        let got = max_correlation(f)?;
        if (got - expected).abs() > BUILD_COHERENCE_TOL {
            return fail(format!(
                "max correlation {got:.15} differs from expected {expected:.15}"
            ));
        }
    }
    if f.n() >= 2 && is_equiangular(f, crate::frame::DEFAULT_TOL)? != entry.equiangular {
        return fail(format!(
            "equiangularity flag mismatch (expected {})",
            entry.equiangular
        ));
    }
    Ok(())
}

fn cube4_rows() -> Vec<Vec<f64>> {
    vec![
        vec![0.5, 0.5, 0.5],
        vec![-0.5, -0.5, 0.5],
        vec![-0.5, 0.5, -0.5],
        vec![0.5, -0.5, -0.5],
    ]
}

/// Rows of the N x (N-1) Helmert block: orthonormal columns spanning the
/// hyperplane orthogonal to the all-ones vector, so W W^T = I - (1/N) J.
fn simplex_matrix(n: usize) -> Matrix {
    let mut w = Matrix::zeros(n, n - 1);
    for k in 1..n {
        let scale = 1.0 / ((k as f64) * (k as f64 + 1.0)).sqrt();
        for i in 0..k {
            w[(i, k - 1)] = scale;
        }
        w[(k, k - 1)] = -(k as f64) * scale;
    }
    w
}

fn harmonic2_rows(n: usize) -> Vec<Vec<f64>> {
    let radius = (2.0 / n as f64).sqrt();
    (1..=n)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / n as f64;
            vec![radius * t.cos(), radius * t.sin()]
        })
        .collect()
}

fn pentagon_complement5_rows() -> Vec<Vec<f64>> {
    let r5 = 5.0f64.sqrt();
    let a = (18.0 * (15.0 - r5)).sqrt();
    let b = (150.0 - 30.0 * r5).sqrt();
    let c = (3.0f64 / 5.0).sqrt();
    [
        vec![1.0, 0.0, 0.0],
        vec![(-1.0 - r5) / 6.0, (15.0 - r5) / a, 0.0],
        vec![
            (1.0 - r5) / 6.0,
            (-5.0 - 3.0 * r5) / a,
            (150.0 - 30.0 * r5) / (a * b),
        ],
        vec![
            (-1.0 + r5) / 6.0,
            (5.0 - 3.0 * r5) / a,
            -60.0 * r5 / (a * b),
        ],
        vec![
            (1.0 + r5) / 6.0,
            4.0 * r5 / a,
            (150.0 - 30.0 * r5) / (a * b),
        ],
    ]
    .into_iter()
    .map(|row| row.into_iter().map(|x| c * x).collect())
    .collect()
}

/// Both readings of the icosahedron vertex list. The first keeps the fifth
/// vector's first coordinate radical as displayed alongside f3/f4; the second
/// swaps it to the f6 radical. Exactly one yields equiangular lines.
fn icosahedron6_variants() -> [Vec<Vec<f64>>; 2] {
    let alpha = 1.0 / 5.0f64.sqrt();
    let s = 1.0 / 2.0f64.sqrt();
    let narrow = alpha * ((1.0 - alpha) / (1.0 + alpha)).sqrt();
    let wide = alpha * ((1.0 + alpha) / (1.0 - alpha)).sqrt();
    let upper_y = ((1.0 + 2.0 * alpha) * (1.0 - alpha) / (1.0 + alpha)).sqrt();
    let lower_y = ((1.0 - 2.0 * alpha) * (1.0 + alpha) / (1.0 - alpha)).sqrt();
    let build = |f5_x: f64| -> Vec<Vec<f64>> {
        [
            vec![0.0, 0.0, 1.0],
            vec![(1.0 - alpha * alpha).sqrt(), 0.0, alpha],
            vec![narrow, upper_y, alpha],
            vec![narrow, -upper_y, alpha],
            vec![f5_x, lower_y, alpha],
            vec![-wide, -lower_y, alpha],
        ]
        .into_iter()
        .map(|row| row.into_iter().map(|x| s * x).collect())
        .collect()
    };
    [build(-narrow), build(-wide)]
}

fn hexakis_rows() -> Vec<Vec<f64>> {
    let beta = 3.0f64.powf(-0.25);
    let z = beta * (3.0f64.sqrt() - 1.0).sqrt();
    let s3 = 3.0f64.sqrt();
    vec![
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
    ]
}

fn rhombicuboctahedron12_rows() -> Vec<Vec<f64>> {
    let root = (2.0 * 2.0f64.sqrt() + 5.0).sqrt();
    let s = 1.0 / root;
    let t = (1.0 + 2.0f64.sqrt()) / root;
    [
        [s, s, t],
        [s, s, -t],
        [s, -s, t],
        [s, -s, -t],
        [s, t, s],
        [s, t, -s],
        [s, -t, s],
        [s, -t, -s],
        [t, s, s],
        [t, s, -s],
        [t, -s, s],
        [t, -s, -s],
    ]
    .into_iter()
    .map(|row| row.into_iter().map(|x| 0.5 * x).collect())
    .collect()
}

fn pentakis_constants() -> [f64; 5] {
    let r3 = 3.0f64.sqrt();
    let r5 = 5.0f64.sqrt();
    let r15 = 15.0f64.sqrt();
    [
        (r15 - r3) / 6.0,
        (10.0 * (5.0 - r5)).sqrt() / 10.0,
        r3 / 3.0,
        (10.0 * (5.0 + r5)).sqrt() / 10.0,
        (r15 + r3) / 6.0,
    ]
}

/// Both readings of the twelfth pentakis dodecahedron vertex. The first is
/// the displayed sign pattern (0, -c3, -c1), which is antipodal to vertex 11
/// and breaks column orthogonality; the second flips the last sign.
fn pentakis16_variants() -> [Vec<Vec<f64>>; 2] {
    let [c0, c1, c2, c3, c4] = pentakis_constants();
    let scale = 3.0f64.sqrt() / 4.0;
    let build = |v12: [f64; 3]| -> Vec<Vec<f64>> {
        let mut rows = vec![
            [0.0, c0, c4],
            [0.0, c0, -c4],
            [c4, 0.0, c0],
            [c4, 0.0, -c0],
            [c0, c4, 0.0],
            [c0, -c4, 0.0],
            [c1, 0.0, c3],
            [c1, 0.0, -c3],
            [c3, c1, 0.0],
            [c3, -c1, 0.0],
            [0.0, c3, c1],
        ];
        rows.push(v12);
        rows.extend([[c2, c2, c2], [c2, -c2, -c2], [-c2, c2, -c2], [-c2, -c2, c2]]);
        rows.into_iter()
            .map(|row| row.into_iter().map(|x| scale * x).collect())
            .collect()
    };
    [build([0.0, -c3, -c1]), build([0.0, c3, -c1])]
}

/// How a minimal-coherence value is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoherenceReference {
    /// Proved minimal with a closed form.
    Certified(f64),
    /// Proved minimal; the value is read off the catalog construction.
    FromConstruction(f64),
    Unknown,
}

impl CoherenceReference {
    pub fn value(&self) -> Option<f64> {
        match self {
            CoherenceReference::Certified(v) | CoherenceReference::FromConstruction(v) => Some(*v),
            CoherenceReference::Unknown => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CoherenceReference::Certified(_) => "certified",
            CoherenceReference::FromConstruction(_) => "from-construction",
            CoherenceReference::Unknown => "unknown",
        }
    }
}

/// Minimal coherence C(N,d) over uniform (N,d) frames, where a proof pins it
/// down; `Unknown` otherwise.
pub fn known_coherence(n: usize, d: usize) -> Result<CoherenceReference> {
    if d < 1 || n < d {
        return Err(Error::InvalidInput(format!(
            "known coherence needs N >= d >= 1, got N={n}, d={d}"
        )));
    }
    use CoherenceReference::*;
    Ok(match (n, d) {
        (n, d) if n == d => Certified(0.0),
        (_, 1) => Certified(1.0),
        (n, d) if d == n - 1 => Certified(1.0 / (n as f64 - 1.0)),
        (5, 3) => Certified(2.0 / 3.0 * (std::f64::consts::PI / 5.0).cos()),
        (6, 3) => Certified(1.0 / 5.0f64.sqrt()),
        (7, 3) => Certified(3.0f64.sqrt() / 3.0),
        (12, 3) => FromConstruction(max_correlation(&build("rhombicuboctahedron12")?)?),
        (16, 3) => FromConstruction(max_correlation(&build("pentakis-dodecahedron16")?)?),
        (n, 2) => Certified((std::f64::consts::PI / n as f64).cos()),
        _ => Unknown,
    })
}

/// Result of the two-vector axis replacement search for the ten-line
/// configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RattleReport {
    pub resolution: usize,
    /// Minimal max-violation of the replacement system over the search grid.
    pub system_residual: f64,
    pub infeasible: bool,
    /// Analytic reduction showing why no solution exists.
    pub contradiction: String,
}

/// Residual above which the replacement system counts as infeasible.
pub const RATTLE_INFEASIBLE_ABOVE: f64 = 0.1;

/// Tests whether the two axis vectors of the ten-line configuration can be
/// replaced by (0, b1, c1), (0, b2, c2) keeping unit rows, orthogonal
/// columns, and equal column norms. The constraints read
///
///   (1) b1^2 + c1^2 = 1        (2) b2^2 + c2^2 = 1
///   (3) b1^2 + b2^2 = 1        (4) c1^2 + c2^2 = 3*sqrt(3) - 9/2
///
/// Equations (1)-(3) are solvable together; the grid walks their solution
/// set and measures the violation of (4), which is constant: subtracting (3)
/// from (1) gives c1^2 = b2^2, so (2) forces c1^2 + c2^2 = 1, off from the
/// target by |1 - (3*sqrt(3) - 9/2)| = 5.5 - 3*sqrt(3) at every grid point.
pub fn rattle_feasibility_check(resolution: usize) -> Result<RattleReport> {
    if resolution < 1 {
        return Err(Error::InvalidInput(
            "grid resolution must be positive".into(),
        ));
    }
    let target = 3.0 * 3.0f64.sqrt() - 4.5;
    let mut best = f64::MAX;
    for i in 0..resolution {
        let b1_sq = if resolution == 1 {
            0.5
        } else {
            i as f64 / (resolution - 1) as f64
        };
        // exact solution of (1)-(3) at this b1
        let c1_sq = 1.0 - b1_sq;
        let b2_sq = 1.0 - b1_sq;
        let c2_sq = 1.0 - b2_sq;
        let violation = (c1_sq + c2_sq - target).abs();
        best = best.min(violation);
    }
    Ok(RattleReport {
        resolution,
        system_residual: best,
        infeasible: best > RATTLE_INFEASIBLE_ABOVE,
        contradiction: format!(
            "subtracting b1^2 + b2^2 = 1 from b1^2 + c1^2 = 1 gives c1^2 = b2^2; \
             combined with b2^2 + c2^2 = 1 this forces c1^2 + c2^2 = 1, but equal \
             column norms require c1^2 + c2^2 = 3*sqrt(3) - 9/2 = {target:.12}, \
             a contradiction of size {best:.12} at any resolution"
        ),
    })
}
