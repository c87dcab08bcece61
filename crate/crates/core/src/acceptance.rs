//! The release gate: thirteen checks covering catalog exactness, the proved
//! minima, the complement law, the correlation lower bound, equivalence
//! oracle agreement, optimizer corroboration, determinism, and the gradient.
//!
//! Every tolerance is pinned here, next to the check that uses it. The suite
//! is self-contained and deterministic; the CLI `verify` subcommand and the
//! integration test both run exactly this code.

use crate::catalog::{build, list, rattle_feasibility_check};
use crate::equivalence::{
    brute_force_equivalent, equivalent, EquivalenceStatus, DEFAULT_NODE_BUDGET,
};
use crate::error::Result;
use crate::frame::{
    analyze, grammian, is_equiangular, max_correlation, parseval_defect, tightness_diagnostics,
    uniformity_defect, welch_bound, Frame,
};
use crate::io::write_frame_file;
use crate::linalg::Matrix;
use crate::optimizer::{
    minimize, random_uniform_parseval, smooth_coherence, smooth_coherence_gradient, OptimizerConfig,
};
use crate::transforms::{apply_signed_permutation, complement, rotate, SignedPermutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// One acceptance criterion's outcome.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    /// Stable one-line rendering: "PASS 03 pentagon-complement ..." .
    pub fn render(&self) -> String {
        format!(
            "{} {:02} {:<28} {:>8.2?}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.details
        )
    }
}

type Criterion = (&'static str, fn() -> Result<(bool, String)>);

/// Runs all thirteen criteria in order. Never panics; failures are reported.
pub fn run_all() -> Vec<CriterionReport> {
    let criteria: Vec<Criterion> = vec![
        ("catalog-exactness", catalog_exactness),
        ("four-three-minimum", four_three_minimum),
        ("five-three-minimum", five_three_minimum),
        ("six-three-equiangular", six_three_equiangular),
        ("seven-three-levels", seven_three_levels),
        ("ten-three-rattle", ten_three_rattle),
        ("twelve-sixteen-tightness", twelve_sixteen_tightness),
        ("complement-law", complement_law),
        ("welch-bound-suite", welch_bound_suite),
        ("equivalence-oracle", equivalence_oracle),
        ("optimizer-corroboration", optimizer_corroboration),
        ("determinism", determinism),
        ("gradient-check", gradient_check),
    ];
    criteria
        .into_iter()
        .enumerate()
        .map(|(idx, (name, check))| {
            let started = Instant::now();
            let (passed, details) = match check() {
                Ok(outcome) => outcome,
                Err(e) => (false, format!("errored: {e}")),
            };
            CriterionReport {
                id: idx + 1,
                name,
                passed,
                details,
                elapsed: started.elapsed(),
            }
        })
        .collect()
}

/// 1. Every Parseval catalog entry builds with both defects at 1e-12, all
///    inside one second.
fn catalog_exactness() -> Result<(bool, String)> {
    let started = Instant::now();
    let mut worst = (0.0f64, String::new());
    for entry in list() {
        if !entry.is_parseval {
            continue;
        }
        let f = build(&entry.name)?;
        let defect = parseval_defect(&f).max(uniformity_defect(&f));
        if defect > worst.0 {
            worst = (defect, entry.name.clone());
        }
    }
    let elapsed = started.elapsed();
    let in_budget = elapsed < Duration::from_secs(1);
    let passed = worst.0 <= 1e-12 && in_budget;
    Ok((
        passed,
        format!(
            "worst defect {:.2e} ({}), built in {:.2?}",
            worst.0, worst.1, elapsed
        ),
    ))
}

/// 2. The four-vector frame: coherence exactly 1/3, equiangular, and at the
///    correlation lower bound (equality holds exactly for equiangular tight
///    frames).
fn four_three_minimum() -> Result<(bool, String)> {
    let f = build("cube4")?;
    let report = analyze(&f)?;
    let bound = welch_bound(4, 3)?;
    let coherence_exact = (report.max_correlation - 1.0 / 3.0).abs() <= 1e-12;
    let at_bound = (report.max_correlation - bound).abs() <= 1e-12;
    let passed = coherence_exact && report.equiangular && at_bound;
    Ok((
        passed,
        format!(
            "coherence {:.12}, equiangular {}, lower bound {:.12}",
            report.max_correlation, report.equiangular, bound
        ),
    ))
}

/// 3. The five-vector frame: coherence (2/3)cos(pi/5), minimal angle
///    57.361 degrees, and the complement of the five circle directions is
///    equivalent to the catalog construction.
fn five_three_minimum() -> Result<(bool, String)> {
    let f = build("pentagon-complement5")?;
    let report = analyze(&f)?;
    let want = 2.0 / 3.0 * (std::f64::consts::PI / 5.0).cos();
    let coherence_ok = (report.max_correlation - want).abs() <= 1e-12;
    let angle_ok = (report.min_angle_deg - 57.361).abs() <= 0.001;

    let circle = build("harmonic2:5")?;
    let lifted = complement(&circle)?;
    let verdict = equivalent(&lifted, &f, 1e-8, DEFAULT_NODE_BUDGET)?;
    let equiv_ok = verdict.status == EquivalenceStatus::Equivalent;

    let passed = coherence_ok && angle_ok && equiv_ok;
    Ok((
        passed,
        format!(
            "coherence {:.12}, angle {:.4} deg, complement-vs-catalog {}",
            report.max_correlation,
            report.min_angle_deg,
            verdict.status.label()
        ),
    ))
}

/// 4. The six-vector frame is equiangular at 1e-10 and every normalized
///    cosine sits within 1e-12 of 1/sqrt(5).
fn six_three_equiangular() -> Result<(bool, String)> {
    let f = build("icosahedron6")?;
    let equi = is_equiangular(&f, 1e-10)?;
    let want = 1.0 / 5.0f64.sqrt();
    let norms: Vec<f64> = f.norms_sq().iter().map(|x| x.sqrt()).collect();
    let mut worst = 0.0f64;
    for k in 0..f.n() {
        for l in (k + 1)..f.n() {
            let dot: f64 = f
                .vector(k)
                .iter()
                .zip(f.vector(l))
                .map(|(a, b)| a * b)
                .sum();
            let c = dot.abs() / (norms[k] * norms[l]);
            worst = worst.max((c - want).abs());
        }
    }
    let passed = equi && worst <= 1e-12;
    Ok((
        passed,
        format!("equiangular {equi}, worst cosine deviation {worst:.2e}"),
    ))
}

/// 5. The seven-vector frame: coherence sqrt(3)/3 and normalized magnitudes
///    exactly on the three levels {0, 1/3, 1/sqrt(3)}.
fn seven_three_levels() -> Result<(bool, String)> {
    let f = build("cube-plus-onb7")?;
    let want_coherence = 3.0f64.sqrt() / 3.0;
    let coherence = max_correlation(&f)?;
    let coherence_ok = (coherence - want_coherence).abs() <= 1e-12;

    let levels = [0.0, 1.0 / 3.0, 3.0f64.sqrt() / 3.0];
    let mut seen = [false; 3];
    let mut stray = 0usize;
    let norms: Vec<f64> = f.norms_sq().iter().map(|x| x.sqrt()).collect();
    for k in 0..f.n() {
        for l in (k + 1)..f.n() {
            let dot: f64 = f
                .vector(k)
                .iter()
                .zip(f.vector(l))
                .map(|(a, b)| a * b)
                .sum();
            let c = dot.abs() / (norms[k] * norms[l]);
            match levels.iter().position(|&v| (c - v).abs() <= 1e-12) {
                Some(i) => seen[i] = true,
                None => stray += 1,
            }
        }
    }
    let passed = coherence_ok && seen.iter().all(|&s| s) && stray == 0;
    Ok((
        passed,
        format!(
            "coherence {:.12}, levels seen {:?}, off-level pairs {}",
            coherence, seen, stray
        ),
    ))
}

/// 6. The ten-line frame is not tight, its squared column norms match the
///    closed forms, and the axis replacement system is infeasible with residual
///    at least 0.30.
fn ten_three_rattle() -> Result<(bool, String)> {
    let f = build("hexakis-lines10")?;
    let diag = tightness_diagnostics(&f, 1e-8);
    let s3 = 3.0f64.sqrt();
    let want_cols = [2.5 + s3, 1.5 + s3, 6.0 - 2.0 * s3];
    let col_err = diag
        .column_norms_sq
        .iter()
        .zip(want_cols)
        .map(|(got, want)| (got - want).abs())
        .fold(0.0f64, f64::max);
    let report = rattle_feasibility_check(1000)?;
    let passed =
        !diag.is_tight && col_err <= 1e-10 && report.infeasible && report.system_residual >= 0.30;
    Ok((
        passed,
        format!(
            "tight {}, column error {:.2e}, replacement residual {:.6}",
            diag.is_tight, col_err, report.system_residual
        ),
    ))
}

/// 7. The twelve- and sixteen-line frames are tight and uniform at 1e-12.
fn twelve_sixteen_tightness() -> Result<(bool, String)> {
    let mut details = String::new();
    let mut passed = true;
    for name in ["rhombicuboctahedron12", "pentakis-dodecahedron16"] {
        let f = build(name)?;
        let tight = tightness_diagnostics(&f, 1e-12).is_tight;
        let uniform = uniformity_defect(&f) <= 1e-12;
        let parseval = parseval_defect(&f) <= 1e-12;
        passed &= tight && uniform && parseval;
        let _ = write!(
            details,
            "{name}: tight {tight}, defects ({:.1e}, {:.1e}); ",
            parseval_defect(&f),
            uniformity_defect(&f)
        );
    }
    Ok((passed, details))
}

/// 8. Complement law on the whole catalog: coherence scales by d/(N-d) and
///    the two Grammians sum to the identity, both within 1e-8.
fn complement_law() -> Result<(bool, String)> {
    let mut worst_scale = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut checked = 0usize;
    for entry in list() {
        if !entry.is_parseval || entry.n <= entry.d {
            continue;
        }
        let f = build(&entry.name)?;
        let comp = complement(&f)?;
        let lhs = max_correlation(&comp)?;
        let rhs = entry.d as f64 / (entry.n - entry.d) as f64 * max_correlation(&f)?;
        worst_scale = worst_scale.max((lhs - rhs).abs());

        let g = grammian(&f);
        let gc = grammian(&comp);
        let n = entry.n;
        for i in 0..n {
            for j in 0..n {
                let sum = g.matrix()[(i, j)] + gc.matrix()[(i, j)];
                let want = if i == j { 1.0 } else { 0.0 };
                worst_sum = worst_sum.max((sum - want).abs());
            }
        }
        checked += 1;
    }
    let passed = worst_scale <= 1e-8 && worst_sum <= 1e-8 && checked >= 10;
    Ok((
        passed,
        format!(
            "{checked} frames, worst scaling error {worst_scale:.2e}, worst identity error {worst_sum:.2e}"
        ),
    ))
}

/// 9. One thousand seeded random uniform Parseval frames all respect the
///    correlation lower bound, within thirty seconds.
fn welch_bound_suite() -> Result<(bool, String)> {
    let started = Instant::now();
    let shapes = [(4usize, 3usize), (5, 3), (6, 3), (7, 3), (5, 2), (8, 3)];
    let mut worst_margin = f64::INFINITY;
    for i in 0..1000u64 {
        let (n, d) = shapes[(i as usize) % shapes.len()];
        let f = random_uniform_parseval(n, d, 9_000 + i)?;
        let margin = max_correlation(&f)? - welch_bound(n, d)?;
        worst_margin = worst_margin.min(margin);
        if margin < -1e-9 {
            return Ok((
                false,
                format!("frame {i} ({n},{d}) undercuts the bound by {:.2e}", -margin),
            ));
        }
    }
    let elapsed = started.elapsed();
    let passed = elapsed < Duration::from_secs(30);
    Ok((
        passed,
        format!("1000 frames, smallest margin {worst_margin:.3e}, in {elapsed:.2?}"),
    ))
}

fn seeded_rotation(d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut u = Matrix::identity(d);
    for p in 0..d {
        for q in (p + 1)..d {
            let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let mut g = Matrix::identity(d);
            g[(p, p)] = theta.cos();
            g[(q, q)] = theta.cos();
            g[(p, q)] = -theta.sin();
            g[(q, p)] = theta.sin();
            u = u.matmul(&g);
        }
    }
    u
}

fn seeded_signed_permutation(n: usize, rng: &mut ChaCha8Rng) -> SignedPermutation {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let signs: Vec<f64> = (0..n)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    SignedPermutation::new(perm, signs).expect("shuffled indices form a bijection")
}

/// 10. One hundred seeded pairs at N <= 6: the backtracking verdict must
///     agree with the exhaustive signed-permutation oracle, within sixty
///     seconds. Half the pairs are planted equivalent via a hidden signed
///     permutation and rotation.
fn equivalence_oracle() -> Result<(bool, String)> {
    let started = Instant::now();
    let donors = [
        "cube4",
        "simplex:4",
        "simplex:5",
        "harmonic2:5",
        "pentagon-complement5",
        "icosahedron6",
        "onb:3",
        "harmonic2:6",
    ];
    let shapes = [(4usize, 3usize), (5, 3), (5, 2), (6, 3), (4, 2), (6, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(31_337);
    let mut planted = 0usize;
    let mut agreements = 0usize;
    for case in 0..100usize {
        let (f, g, expect_equivalent) = if case % 2 == 0 {
            let f = build(donors[(case / 2) % donors.len()])?;
            let s = seeded_signed_permutation(f.n(), &mut rng);
            let u = seeded_rotation(f.d(), &mut rng);
            let g = rotate(&apply_signed_permutation(&f, &s)?, &u)?;
            planted += 1;
            (f, g, Some(true))
        } else {
            let (n, d) = shapes[(case / 2) % shapes.len()];
            let f = random_uniform_parseval(n, d, 50_000 + case as u64)?;
            let g = random_uniform_parseval(n, d, 60_000 + case as u64)?;
            (f, g, None)
        };
        let verdict = equivalent(&f, &g, 1e-8, DEFAULT_NODE_BUDGET)?;
        let oracle = brute_force_equivalent(&f, &g, 1e-8)?;
        let agree = matches!(
            (verdict.status, &oracle),
            (EquivalenceStatus::Equivalent, Some(_)) | (EquivalenceStatus::Inequivalent, None)
        );
        if let Some(want) = expect_equivalent {
            if want != matches!(verdict.status, EquivalenceStatus::Equivalent) {
                return Ok((
                    false,
                    format!(
                        "case {case}: planted pair judged {}",
                        verdict.status.label()
                    ),
                ));
            }
        }
        if !agree {
            return Ok((
                false,
                format!(
                    "case {case}: search says {}, oracle says {}",
                    verdict.status.label(),
                    if oracle.is_some() {
                        "equivalent"
                    } else {
                        "inequivalent"
                    }
                ),
            ));
        }
        agreements += 1;
    }
    let elapsed = started.elapsed();
    let passed = agreements == 100 && elapsed < Duration::from_secs(60);
    Ok((
        passed,
        format!("{agreements}/100 agree ({planted} planted), in {elapsed:.2?}"),
    ))
}

/// 11. Full 32-restart searches reproduce every proved minimum within 1e-3,
///     never undercut the correlation lower bound, and fit in sixty seconds per
///     size.
fn optimizer_corroboration() -> Result<(bool, String)> {
    let sizes = [(4usize, 3usize), (5, 3), (6, 3), (7, 3), (5, 2)];
    let mut details = String::new();
    let mut passed = true;
    for (n, d) in sizes {
        let started = Instant::now();
        let config = OptimizerConfig::new(n, d, 2024);
        let result = minimize(&config)?;
        let elapsed = started.elapsed();
        let reference = result
            .reference
            .value()
            .expect("all five sizes have proved minima");
        let close = (result.achieved - reference).abs() <= 1e-3;
        let above_welch = result.achieved >= welch_bound(n, d)? - 1e-9;
        let in_budget = elapsed <= Duration::from_secs(60);
        passed &= close && above_welch && in_budget;
        let _ = write!(
            details,
            "({n},{d}) {:+.2e} in {:.2?}; ",
            result.achieved - reference,
            elapsed
        );
    }
    Ok((passed, details))
}

/// 12. Bitwise determinism: repeated searches with one config agree on every
///     reported number and on the emitted file bytes; catalog emission is
///     byte-identical across calls.
fn determinism() -> Result<(bool, String)> {
    let mut config = OptimizerConfig::new(5, 3, 7);
    config.restarts = 4;
    let a = minimize(&config)?;
    let b = minimize(&config)?;
    let runs_match = a.achieved.to_bits() == b.achieved.to_bits()
        && a.per_restart_best
            .iter()
            .zip(&b.per_restart_best)
            .all(|(x, y)| x.to_bits() == y.to_bits())
        && write_frame_file(&a.best_frame, "run") == write_frame_file(&b.best_frame, "run");

    let mut emits_match = true;
    for entry in list() {
        let first = write_frame_file(&build(&entry.name)?, &entry.name);
        let second = write_frame_file(&build(&entry.name)?, &entry.name);
        emits_match &= first == second;
    }
    let passed = runs_match && emits_match;
    Ok((
        passed,
        format!("searches bit-identical {runs_match}, emissions byte-identical {emits_match}"),
    ))
}

/// 13. Analytic gradient vs central differences (step 1e-6) at 1e-6
///     relative error on twenty seeded frames.
fn gradient_check() -> Result<(bool, String)> {
    let shapes = [(4usize, 3usize), (5, 3), (6, 3), (5, 2), (7, 3)];
    let exponents = [2u32, 4, 8, 16];
    let h = 1e-6;
    let mut worst = 0.0f64;
    for trial in 0..20usize {
        let (n, d) = shapes[trial % shapes.len()];
        let p = exponents[trial % exponents.len()];
        let f = random_uniform_parseval(n, d, 77_000 + trial as u64)?;
        let grad = smooth_coherence_gradient(&f, p)?;
        let mut max_err = 0.0f64;
        let mut max_mag = 0.0f64;
        for i in 0..n {
            for j in 0..d {
                let mut plus = f.matrix().clone();
                plus[(i, j)] += h;
                let mut minus = f.matrix().clone();
                minus[(i, j)] -= h;
                let ep = smooth_coherence(&Frame::from_matrix(plus)?, p)?;
                let em = smooth_coherence(&Frame::from_matrix(minus)?, p)?;
                let fd = (ep - em) / (2.0 * h);
                max_err = max_err.max((grad[(i, j)] - fd).abs());
                max_mag = max_mag.max(grad[(i, j)].abs());
            }
        }
        worst = worst.max(max_err / max_mag.max(1.0));
    }
    let passed = worst <= 1e-6;
    Ok((
        passed,
        format!("20 frames, worst relative error {worst:.3e}"),
    ))
}
