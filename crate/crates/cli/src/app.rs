//! CLI implementation; the binary in main.rs is a thin wrapper around
//! [`run`], which is also what the integration tests drive.
//!
//! Exit codes: 0 success, 1 operational failure (bad file, failed search,
//! failed verification), 2 usage error. Human output renders every number
//! with 12 significant digits; `--json` emits the same values at full
//! precision under a stable key schema.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use framekit_core::catalog::{build, list, rattle_feasibility_check};
use framekit_core::equivalence::{equivalent, EquivalenceStatus, DEFAULT_NODE_BUDGET};
use framekit_core::frame::{analyze, tightness_diagnostics, welch_bound, Frame, DEFAULT_TOL};
use framekit_core::io::{parse_frame_file, write_frame_file};
use framekit_core::optimizer::{minimize, OptimizerConfig};
use framekit_core::transforms::{complement, union};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "framekit",
    version,
    about = "Construct, analyze, transform, and search for low-coherence \
             uniform Parseval frames in small real dimensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse or emit the built-in frame constructions
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the metric report for a frame file
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON instead of the human table
        #[arg(long)]
        json: bool,
    },
    /// Emit the orthogonal complement of a uniform Parseval frame
    Complement {
        file: PathBuf,
        /// Write the frame file here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the weighted union of two uniform Parseval frames
    Union {
        first: PathBuf,
        second: PathBuf,
        /// Write the frame file here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide signed-permutation equivalence of two frames
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Entrywise Grammian tolerance
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Backtracking node budget before answering "unknown"
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Search for a minimal-coherence uniform Parseval frame
    Optimize {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Emit the result as JSON instead of the human report
        #[arg(long)]
        json: bool,
        /// Write the best frame here as a frame file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether the ten-line configuration's axis pair can be replaced
    Rattle,
    /// Run the full acceptance suite (exit 0 iff everything passes)
    Verify,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List every catalog entry with its headline metrics
    List,
    /// Print or save a catalog frame as a frame file
    Emit {
        name: String,
        /// Write the frame file here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` and executes one subcommand, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            if let Some(io_err) = e.downcast_ref::<std::io::Error>() {
                if io_err.kind() == std::io::ErrorKind::BrokenPipe {
                    return 0;
                }
            }
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

type AppResult<T> = Result<T, Box<dyn std::error::Error>>;

fn dispatch(command: Command, out: &mut dyn Write) -> AppResult<i32> {
    match command {
        Command::Catalog { action } => match action {
            CatalogAction::List => catalog_list(out),
            CatalogAction::Emit { name, output } => catalog_emit(&name, output.as_deref(), out),
        },
        Command::Analyze { file, json } => cmd_analyze(&file, json, out),
        Command::Complement { file, output } => cmd_complement(&file, output.as_deref(), out),
        Command::Union {
            first,
            second,
            output,
        } => cmd_union(&first, &second, output.as_deref(), out),
        Command::Equiv {
            first,
            second,
            tol,
            budget,
        } => cmd_equiv(&first, &second, tol, budget, out),
        Command::Optimize {
            n,
            d,
            seed,
            restarts,
            json,
            output,
        } => cmd_optimize(n, d, seed, restarts, json, output.as_deref(), out),
        Command::Rattle => cmd_rattle(out),
        Command::Verify => cmd_verify(out),
    }
}

/// Renders with 12 significant digits: positional notation in a readable
/// magnitude window, scientific outside it.
fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let mut exp = x.abs().log10().floor() as i32;
    // Rounding at 12 digits can carry into the next magnitude (0.99999... to
    // 1.0000...), which would print a 13th digit without this bump.
    let rounded = (x.abs() * 10f64.powi(11 - exp)).round() * 10f64.powi(exp - 11);
    if rounded >= 10f64.powi(exp + 1) {
        exp += 1;
    }
    if (-4..=11).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn read_frame(path: &Path) -> AppResult<Frame> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(parse_frame_file(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn emit_frame(
    frame: &Frame,
    provenance: &str,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> AppResult<i32> {
    let text = write_frame_file(frame, provenance);
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(0)
}

fn catalog_list(out: &mut dyn Write) -> AppResult<i32> {
    writeln!(
        out,
        "{:<24} {:>3} {:>3}  {:<8} {:<11} {:<14}  origin",
        "name", "N", "d", "parseval", "equiangular", "coherence"
    )?;
    for entry in list() {
        let coherence = entry
            .expected_max_correlation
            .map(fmt12)
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:<24} {:>3} {:>3}  {:<8} {:<11} {:<14}  {}",
            entry.name,
            entry.n,
            entry.d,
            if entry.is_parseval { "yes" } else { "no" },
            if entry.equiangular { "yes" } else { "no" },
            coherence,
            entry.provenance
        )?;
    }
    Ok(0)
}

fn catalog_emit(name: &str, output: Option<&Path>, out: &mut dyn Write) -> AppResult<i32> {
    let frame = build(name)?;
    emit_frame(&frame, &format!("catalog {name}"), output, out)
}

fn cmd_analyze(file: &Path, json: bool, out: &mut dyn Write) -> AppResult<i32> {
    let frame = read_frame(file)?;
    let report = analyze(&frame)?;
    let diag = tightness_diagnostics(&frame, DEFAULT_TOL);
    if json {
        let mut payload = serde_json::to_value(&report)?;
        payload["tightness"] = serde_json::to_value(&diag)?;
        writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
        return Ok(0);
    }
    writeln!(out, "{:<18} {} x {}", "frame", report.n, report.d)?;
    writeln!(
        out,
        "{:<18} {}",
        "parseval defect",
        fmt12(report.parseval_defect)
    )?;
    writeln!(
        out,
        "{:<18} {}",
        "uniformity defect",
        fmt12(report.uniformity_defect)
    )?;
    writeln!(
        out,
        "{:<18} {}",
        "tight constant A",
        fmt12(report.tight_constant_a)
    )?;
    writeln!(
        out,
        "{:<18} {}",
        "max correlation",
        fmt12(report.max_correlation)
    )?;
    writeln!(
        out,
        "{:<18} {} deg ({} rad)",
        "min angle",
        fmt12(report.min_angle_deg),
        fmt12(report.min_angle_rad)
    )?;
    writeln!(out, "{:<18} {}", "welch bound", fmt12(report.welch_bound))?;
    writeln!(out, "{:<18} {}", "equiangular", report.equiangular)?;
    writeln!(out, "{:<18} {}", "redundancy", fmt12(report.redundancy))?;
    writeln!(out, "{:<18} {}", "tight", diag.is_tight)?;
    let cols: Vec<String> = diag.column_norms_sq.iter().map(|&x| fmt12(x)).collect();
    writeln!(out, "{:<18} {}", "column norms^2", cols.join(" "))?;
    writeln!(
        out,
        "{:<18} {}",
        "max column inner",
        fmt12(diag.max_column_inner)
    )?;
    Ok(0)
}

fn cmd_complement(file: &Path, output: Option<&Path>, out: &mut dyn Write) -> AppResult<i32> {
    let frame = read_frame(file)?;
    let comp = complement(&frame)?;
    emit_frame(
        &comp,
        &format!("complement of {}", file.display()),
        output,
        out,
    )
}

fn cmd_union(
    first: &Path,
    second: &Path,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> AppResult<i32> {
    let f = read_frame(first)?;
    let g = read_frame(second)?;
    let u = union(&f, &g)?;
    emit_frame(
        &u,
        &format!("union of {} and {}", first.display(), second.display()),
        output,
        out,
    )
}

fn cmd_equiv(
    first: &Path,
    second: &Path,
    tol: f64,
    budget: u64,
    out: &mut dyn Write,
) -> AppResult<i32> {
    let f = read_frame(first)?;
    let g = read_frame(second)?;
    let verdict = equivalent(&f, &g, tol, budget)?;
    writeln!(out, "{:<24} {}", "verdict", verdict.status.label())?;
    writeln!(out, "{:<24} {}", "nodes explored", verdict.nodes_explored)?;
    match verdict.status {
        EquivalenceStatus::Equivalent => {
            let w = verdict
                .witness
                .expect("equivalent verdicts carry a witness");
            let perm: Vec<String> = w.perm().iter().map(|p| p.to_string()).collect();
            let signs: Vec<&str> = w
                .signs()
                .iter()
                .map(|&s| if s > 0.0 { "+" } else { "-" })
                .collect();
            writeln!(out, "{:<24} {}", "witness permutation", perm.join(" "))?;
            writeln!(out, "{:<24} {}", "witness signs", signs.join(" "))?;
        }
        EquivalenceStatus::Inequivalent => {
            writeln!(
                out,
                "{:<24} {}",
                "distinguishing invariant",
                verdict
                    .distinguishing_invariant
                    .as_deref()
                    .unwrap_or("(none recorded)")
            )?;
        }
        EquivalenceStatus::Unknown => {
            writeln!(out, "{:<24} node budget exhausted; raise --budget", "note")?;
        }
    }
    Ok(0)
}

fn cmd_optimize(
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
    json: bool,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> AppResult<i32> {
    let mut config = OptimizerConfig::new(n, d, seed);
    config.restarts = restarts;
    let result = minimize(&config)?;
    let bound = welch_bound(n, d).ok();
    let provenance = format!("optimize N={n} d={d} seed={seed} restarts={restarts}");

    if json {
        let history: Vec<serde_json::Value> = result
            .history
            .iter()
            .map(|stage| {
                serde_json::json!({
                    "p": stage.p,
                    "accepted_steps": stage.objectives.len() - 1,
                    "objective": stage.objectives.last().copied(),
                })
            })
            .collect();
        let payload = serde_json::json!({
            "n": n,
            "d": d,
            "seed": seed,
            "restarts": restarts,
            "achieved": result.achieved,
            "welch_bound": bound,
            "reference": {
                "kind": result.reference.label(),
                "value": result.reference.value(),
            },
            "certified": result.certified.label(),
            "per_restart_best": result.per_restart_best,
            "history": history,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
    } else {
        writeln!(
            out,
            "{:<16} {} x {} (seed {seed}, restarts {restarts})",
            "optimize", n, d
        )?;
        writeln!(out, "{:<16} {}", "achieved", fmt12(result.achieved))?;
        if let Some(b) = bound {
            writeln!(out, "{:<16} {}", "welch bound", fmt12(b))?;
        }
        match result.reference.value() {
            Some(v) => writeln!(
                out,
                "{:<16} {} ({})",
                "reference",
                fmt12(v),
                result.reference.label()
            )?,
            None => writeln!(out, "{:<16} none", "reference")?,
        }
        writeln!(out, "{:<16} {}", "certified", result.certified.label())?;
        let best = result
            .per_restart_best
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let worst = result
            .per_restart_best
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        writeln!(
            out,
            "{:<16} best {} / worst {}",
            "restart spread",
            fmt12(best),
            fmt12(worst)
        )?;
    }
    if output.is_some() {
        emit_frame(&result.best_frame, &provenance, output, out)?;
    }
    Ok(0)
}

fn cmd_rattle(out: &mut dyn Write) -> AppResult<i32> {
    let report = rattle_feasibility_check(1000)?;
    writeln!(
        out,
        "{:<16} b1^2 + c1^2 = 1; b2^2 + c2^2 = 1; b1^2 + b2^2 = 1; c1^2 + c2^2 = 3*sqrt(3) - 9/2",
        "system"
    )?;
    writeln!(out, "{:<16} {}", "grid resolution", report.resolution)?;
    writeln!(out, "{:<16} {}", "residual", fmt12(report.system_residual))?;
    writeln!(out, "{:<16} {}", "infeasible", report.infeasible)?;
    writeln!(out, "{:<16} {}", "reduction", report.contradiction)?;
    Ok(0)
}

fn cmd_verify(out: &mut dyn Write) -> AppResult<i32> {
    let reports = framekit_core::acceptance::run_all();
    let mut failures = 0usize;
    for report in &reports {
        writeln!(out, "{}", report.render())?;
        if !report.passed {
            failures += 1;
        }
    }
    if failures == 0 {
        writeln!(out, "all {} acceptance criteria pass", reports.len())?;
        Ok(0)
    } else {
        writeln!(
            out,
            "{failures} of {} acceptance criteria FAILED",
            reports.len()
        )?;
        Ok(1)
    }
}
