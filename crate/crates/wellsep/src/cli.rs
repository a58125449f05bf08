//! Command-line front end: one subcommand per workflow, results emitted as
//! CSV or JSON tables with provenance metadata.
//!
//! Exit codes: 0 success, 2 bad input or parse failure, 3 solver
//! non-convergence, 4 violated mathematical precondition.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bounds::{
    condition_bound, condition_number_2, corollary_bound, estimate_k, lemma_entry_bound,
    relative_error, spectral_norm, ErrorRegion,
};
use crate::derive_seed;
use crate::eigen::{eig_general, eig_symmetric, match_to_discs, SpectrumReport};
use crate::error::{Error, Result};
use crate::gershgorin::{compute_discs, separation_report, RadiusMode, SeparationReport};
use crate::matrix::{DenseMatrix, Symmetry};
use crate::mmio::{
    format_real, hash_bytes, hash_file, read_matrix_market, render_matrix_market, render_table,
    write_matrix_market, write_table, ColumnType, ResultTable, TableFormat, Value,
};
use crate::perron::{compare_starts, gen_perron_test};
use crate::perturb::{
    check_interlacing, gen_hessenberg_positive, gen_separated_symmetric, gen_structured_S,
    truncate_offdiag, Separation,
};

#[derive(Debug, Parser)]
#[command(
    name = "wellsep",
    version,
    about = "Gershgorin-disc spectral analysis: disc geometry, truncation error bounds, \
             interlacing and conditioning experiments, and power-method seeding"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base RNG seed for generated matrices and solver restarts.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Disc radius convention: row, col, or min.
    #[arg(long, global = true, default_value = "row")]
    radius_mode: RadiusMode,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Table format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: TableFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gershgorin discs and the separation report for a Matrix Market file.
    Discs { file: PathBuf },

    /// Per-eigenvalue relative errors and closed-form bounds for the
    /// off-diagonal truncation A -> diag(A) + c * offdiag(A).
    Bounds {
        file: PathBuf,
        /// Off-diagonal retention factor c in [0, 1].
        #[arg(long, value_parser = parse_unit_interval)]
        truncate: f64,
        /// Also emit entry magnitudes of the largest-modulus eigenvalue's
        /// eigenvector against their per-disc decay bounds.
        #[arg(long)]
        eigvec_trend: bool,
    },

    /// Eigenvalue interlacing trials: well-separated symmetric matrices
    /// under the nonnegative structured perturbation t * S.
    Interlace {
        #[arg(long)]
        n: usize,
        /// Perturbation step size (must be nonnegative).
        #[arg(long, value_parser = parse_nonnegative, allow_negative_numbers = true)]
        t: f64,
        #[arg(long)]
        trials: usize,
    },

    /// Eigenvector condition numbers of well-separated symmetric matrices
    /// against the closed-form budget, plus eigenvalue-shift checks under a
    /// small structured perturbation.
    Condition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
    },

    /// Power-method convergence: random starts vs diagonal-seeded starts on
    /// generated positive matrices.
    Perron {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        /// Seeding shift; defaults to twice the largest diagonal entry.
        #[arg(long = "K")]
        k_shift: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },

    /// Emit a generated test matrix in Matrix Market format.
    Generate {
        /// Family: sep-sym, hessenberg, perron, or S.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Diagonal spacing for sep-sym: linear or quadratic (ignored by the
        /// other families).
        #[arg(long, default_value = "linear")]
        sep: Separation,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    SepSym,
    Hessenberg,
    Perron,
    StructuredS,
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sep-sym" => Ok(Family::SepSym),
            "hessenberg" => Ok(Family::Hessenberg),
            "perron" => Ok(Family::Perron),
            "S" | "s" => Ok(Family::StructuredS),
            other => Err(format!(
                "unknown family `{other}` (use sep-sym|hessenberg|perron|S)"
            )),
        }
    }
}

fn parse_nonnegative(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("must be nonnegative, got {v}"))
    }
}

fn parse_unit_interval(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must lie in [0, 1], got {v}"))
    }
}

struct Ctx {
    seed: u64,
    radius_mode: RadiusMode,
    out: Option<PathBuf>,
    format: TableFormat,
}

/// Parses `std::env::args`, runs the requested command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version arrive here too; they exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::UnsupportedField(_)
        | Error::NotSquare { .. }
        | Error::DimensionMismatch(_) => 2,
        Error::NonConvergence { .. } => 3,
        _ => 4,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let ctx = Ctx {
        seed: cli.seed,
        radius_mode: cli.radius_mode,
        out: cli.out,
        format: cli.format,
    };
    match cli.command {
        Command::Discs { file } => cmd_discs(&ctx, &file),
        Command::Bounds {
            file,
            truncate,
            eigvec_trend,
        } => cmd_bounds(&ctx, &file, truncate, eigvec_trend),
        Command::Interlace { n, t, trials } => cmd_interlace(&ctx, n, t, trials),
        Command::Condition { n, trials } => cmd_condition(&ctx, n, trials),
        Command::Perron {
            n,
            trials,
            k_shift,
            tol,
            max_iter,
        } => cmd_perron(&ctx, n, trials, k_shift, tol, max_iter),
        Command::Generate { family, n, sep } => cmd_generate(&ctx, family, n, sep),
    }
}

fn emit(ctx: &Ctx, table: &ResultTable) -> Result<()> {
    match &ctx.out {
        Some(path) => write_table(table, ctx.format, path),
        None => {
            print!("{}", render_table(table, ctx.format));
            Ok(())
        }
    }
}

/// Picks the solver matching the matrix's structure.
fn eig_any(a: &DenseMatrix) -> Result<SpectrumReport> {
    if a.symmetry() == Symmetry::Symmetric && a.is_real() {
        eig_symmetric(a)
    } else {
        eig_general(a)
    }
}

/// Provenance digest for runs whose input is generated, not read from disk.
fn generated_hash(descriptor: &str) -> String {
    hash_bytes(descriptor.as_bytes())
}

fn separation_metadata(table: &mut ResultTable, report: &SeparationReport) {
    table.set_meta("disjoint", report.disjoint.to_string());
    table.set_meta("pairwise_gap", format_real(report.pairwise_gap));
    table.set_meta(
        "sep_constant_linear",
        format_real(report.sep_constant_linear),
    );
    table.set_meta(
        "sep_constant_quadratic",
        format_real(report.sep_constant_quadratic),
    );
    table.set_meta("max_radius", format_real(report.max_radius));
    table.set_meta("separation_order", report.separation_order.as_str());
    table.set_meta("unit_circle_clear", report.unit_circle_clear.to_string());
    table.set_meta("origin_clear", report.origin_clear.to_string());
}

fn cmd_discs(ctx: &Ctx, file: &Path) -> Result<()> {
    let a = read_matrix_market(file)?;
    let discs = compute_discs(&a);
    let report = separation_report(&discs, ctx.radius_mode)?;

    let mut table = ResultTable::new(
        "discs",
        &[
            ("disc_index", ColumnType::Index),
            ("center", ColumnType::Complex),
            ("row_radius", ColumnType::Real),
            ("col_radius", ColumnType::Real),
            ("min_radius", ColumnType::Real),
            ("radius", ColumnType::Real),
        ],
    );
    for d in &report.discs {
        table.push_row(vec![
            Value::Index(d.index),
            Value::Complex(d.center),
            Value::Real(d.row_radius),
            Value::Real(d.col_radius),
            Value::Real(d.min_radius),
            Value::Real(d.radius(ctx.radius_mode)),
        ]);
    }
    table.stamp(ctx.radius_mode.as_str(), ctx.seed, &hash_file(file)?);
    table.set_meta("input", file.display().to_string());
    table.set_meta("n", a.n().to_string());
    separation_metadata(&mut table, &report);
    emit(ctx, &table)
}

/// `x.csv` becomes `x.trend.csv`; extensionless paths get `.trend`.
fn trend_path(out: &Path) -> PathBuf {
    match out.extension() {
        Some(ext) => out.with_extension(format!("trend.{}", ext.to_string_lossy())),
        None => out.with_extension("trend"),
    }
}

fn cmd_bounds(ctx: &Ctx, file: &Path, c: f64, eigvec_trend: bool) -> Result<()> {
    let a = read_matrix_market(file)?;
    let input_hash = hash_file(file)?;
    let discs = compute_discs(&a);
    let report = separation_report(&discs, ctx.radius_mode)?;
    if !report.disjoint {
        eprintln!(
            "warning: Gershgorin discs overlap (pairwise gap {:.3e}); \
             eigenvalue-to-disc pairing may be loose",
            report.pairwise_gap
        );
    }
    let spectrum = match_to_discs(&eig_any(&a)?, &report)?;

    let truncated = truncate_offdiag(&a, c);
    let discs_t = compute_discs(&truncated);
    let report_t = separation_report(&discs_t, ctx.radius_mode)?;
    let spectrum_t = match_to_discs(&eig_any(&truncated)?, &report_t)?;

    let n = a.n();
    let mut by_disc = vec![None; n];
    for p in &spectrum.pairs {
        by_disc[p.disc_index.expect("matching assigns every pair")] = Some(p);
    }
    let mut by_disc_t = vec![None; n];
    for p in &spectrum_t.pairs {
        by_disc_t[p.disc_index.expect("matching assigns every pair")] = Some(p);
    }

    let mut table = ResultTable::error_bounds();
    for i in 0..n {
        let pa = by_disc[i].expect("disc assignment is a bijection");
        let pt = by_disc_t[i].expect("disc assignment is a bijection");
        let r1 = report.discs[i].radius(ctx.radius_mode);
        let r2 = report_t.discs[i].radius(ctx.radius_mode);
        let region = ErrorRegion::from_center(report.discs[i].center, r1, r2)?;
        let rel = relative_error(pa.eigenvalue, pt.eigenvalue)?;
        table.push_row(vec![
            Value::Index(i),
            Value::Real(pa.eigenvalue.re),
            Value::Real(pa.eigenvalue.im),
            Value::Real(rel),
            Value::Real(region.bound),
            Value::Real(region.shifted_center),
        ]);
    }
    table.stamp(ctx.radius_mode.as_str(), ctx.seed, &input_hash);
    table.set_meta("input", file.display().to_string());
    table.set_meta("truncate_c", format_real(c));
    separation_metadata(&mut table, &report);
    emit(ctx, &table)?;

    if eigvec_trend {
        let pivot = spectrum
            .pairs
            .iter()
            .max_by(|p, q| p.eigenvalue.norm().total_cmp(&q.eigenvalue.norm()))
            .expect("spectrum is nonempty");
        let lambda = pivot.eigenvalue;
        let xmax = pivot
            .eigenvector
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let mut trend = ResultTable::eigvec_trend();
        for (i, x) in pivot.eigenvector.iter().enumerate() {
            // entries whose disc center coincides with lambda get an
            // unbounded budget rather than an error
            let bound = match lemma_entry_bound(
                a.get(i, i),
                report.discs[i].radius(ctx.radius_mode),
                lambda,
            ) {
                Ok(b) => b,
                Err(Error::CoincidentCenter { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            trend.push_row(vec![
                Value::Index(i),
                Value::Real(x.norm() / xmax),
                Value::Real(bound),
            ]);
        }
        trend.stamp(ctx.radius_mode.as_str(), ctx.seed, &input_hash);
        trend.set_meta("input", file.display().to_string());
        trend.set_meta("lambda_re", format_real(lambda.re));
        trend.set_meta("lambda_im", format_real(lambda.im));
        match &ctx.out {
            Some(path) => write_table(&trend, ctx.format, trend_path(path))?,
            None => print!("{}", render_table(&trend, ctx.format)),
        }
    }
    Ok(())
}

fn cmd_interlace(ctx: &Ctx, n: usize, t_step: f64, trials: usize) -> Result<()> {
    let mut table = ResultTable::new(
        "interlace",
        &[
            ("trial", ColumnType::Index),
            ("t", ColumnType::Real),
            ("interlaced", ColumnType::Text),
            ("first_violation", ColumnType::Text),
            ("base_min", ColumnType::Real),
            ("pert_min", ColumnType::Real),
            ("base_max", ColumnType::Real),
            ("pert_max", ColumnType::Real),
        ],
    );
    for trial in 0..trials {
        let a = gen_separated_symmetric(
            n,
            Separation::Linear,
            derive_seed(ctx.seed, 2 * trial as u64),
        )?;
        let s = gen_structured_S(n, derive_seed(ctx.seed, 2 * trial as u64 + 1))?;
        let r = check_interlacing(&a, &s, t_step)?;
        table.push_row(vec![
            Value::Index(trial),
            Value::Real(t_step),
            Value::Text(r.interlaced.to_string()),
            Value::Text(
                r.first_violation
                    .map(|i| i.to_string())
                    .unwrap_or_default(),
            ),
            Value::Real(*r.base_eigs.first().expect("n >= 2")),
            Value::Real(*r.pert_eigs.first().expect("n >= 2")),
            Value::Real(*r.base_eigs.last().expect("n >= 2")),
            Value::Real(*r.pert_eigs.last().expect("n >= 2")),
        ]);
    }
    table.stamp(
        ctx.radius_mode.as_str(),
        ctx.seed,
        &generated_hash(&format!(
            "interlace sep-sym n={n} t={} trials={trials} seed={}",
            format_real(t_step),
            ctx.seed
        )),
    );
    table.set_meta("n", n.to_string());
    table.set_meta("trials", trials.to_string());
    table.set_meta("t", format_real(t_step));
    emit(ctx, &table)
}

fn cmd_condition(ctx: &Ctx, n: usize, trials: usize) -> Result<()> {
    let mut table = ResultTable::new(
        "condition",
        &[
            ("trial", ColumnType::Index),
            ("n", ColumnType::Index),
            ("k_est", ColumnType::Real),
            ("kappa_computed", ColumnType::Real),
            ("kappa_bound", ColumnType::Real),
            ("delta_norm", ColumnType::Real),
            ("bf_bound", ColumnType::Real),
            ("max_eig_shift", ColumnType::Real),
            ("regime", ColumnType::Text),
        ],
    );
    for trial in 0..trials {
        let a = gen_separated_symmetric(
            n,
            Separation::Quadratic,
            derive_seed(ctx.seed, 2 * trial as u64),
        )?;
        let s = gen_structured_S(n, derive_seed(ctx.seed, 2 * trial as u64 + 1))?;
        let discs = compute_discs(&a);
        let report = separation_report(&discs, ctx.radius_mode)?;
        let spectrum = match_to_discs(&eig_symmetric(&a)?, &report)?;
        let k_est = estimate_k(&spectrum, &report.discs)?;
        let kappa_computed = condition_number_2(&spectrum)?;

        let zero = DenseMatrix::diagonal(&vec![0.0; n])?;
        let delta = zero.add_scaled(&s, 0.01)?;
        let delta_norm = spectral_norm(&delta)?;
        let perturbed = a.add_scaled(&s, 0.01)?;
        let pert_spectrum = eig_symmetric(&perturbed)?;
        let max_eig_shift = spectrum
            .pairs
            .iter()
            .zip(&pert_spectrum.pairs)
            .map(|(p, q)| (p.eigenvalue - q.eigenvalue).norm())
            .fold(0.0, f64::max);

        let (kappa_bound, bf_bound, regime) = match condition_bound(n, k_est) {
            Ok(cb) => (cb.kappa_bound, corollary_bound(&cb, delta_norm)?, "ok"),
            Err(Error::InvalidRegime { .. }) => (f64::NAN, f64::NAN, "invalid_regime"),
            Err(e) => return Err(e),
        };
        table.push_row(vec![
            Value::Index(trial),
            Value::Index(n),
            Value::Real(k_est),
            Value::Real(kappa_computed),
            Value::Real(kappa_bound),
            Value::Real(delta_norm),
            Value::Real(bf_bound),
            Value::Real(max_eig_shift),
            Value::Text(regime.to_string()),
        ]);
    }
    table.stamp(
        ctx.radius_mode.as_str(),
        ctx.seed,
        &generated_hash(&format!(
            "condition sep-sym-quadratic n={n} trials={trials} seed={}",
            ctx.seed
        )),
    );
    table.set_meta("n", n.to_string());
    table.set_meta("trials", trials.to_string());
    table.set_meta("delta_scale", format_real(0.01));
    emit(ctx, &table)
}

fn cmd_perron(
    ctx: &Ctx,
    n: usize,
    trials: usize,
    k_shift: Option<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<()> {
    // generated diagonals are a permutation of 1..=n, so twice the largest
    // diagonal entry is 2n for every trial
    let k = k_shift.unwrap_or(2.0 * n as f64);
    let summary = compare_starts(n, trials, k, tol, max_iter, ctx.seed)?;

    let mut table = ResultTable::perron_trace();
    for (trial, trace) in &summary.traces {
        for (it, residual) in trace.error_log.iter().enumerate() {
            table.push_row(vec![
                Value::Index(*trial),
                Value::Text(trace.start_kind.as_str().to_string()),
                Value::Index(it + 1),
                Value::Real(*residual),
            ]);
        }
    }
    table.stamp(
        ctx.radius_mode.as_str(),
        ctx.seed,
        &generated_hash(&format!(
            "perron n={n} trials={trials} K={} tol={} seed={}",
            format_real(k),
            format_real(tol),
            ctx.seed
        )),
    );
    table.set_meta("n", n.to_string());
    table.set_meta("trials", trials.to_string());
    table.set_meta("k_shift", format_real(k));
    table.set_meta("tol", format_real(tol));
    table.set_meta("max_iter", max_iter.to_string());
    table.set_meta("mean_random", format_real(summary.mean_random));
    table.set_meta("median_random", format_real(summary.median_random));
    table.set_meta("mean_seeded", format_real(summary.mean_seeded));
    table.set_meta("median_seeded", format_real(summary.median_seeded));
    table.set_meta("mean_saving", format_real(summary.mean_saving));
    table.set_meta("excluded_trials", summary.excluded_trials.to_string());
    eprintln!(
        "perron: mean iterations random {:.2}, seeded {:.2}, saving {:.2} ({} of {} trials excluded)",
        summary.mean_random, summary.mean_seeded, summary.mean_saving,
        summary.excluded_trials, trials
    );
    emit(ctx, &table)
}

fn cmd_generate(ctx: &Ctx, family: Family, n: usize, sep: Separation) -> Result<()> {
    let m = match family {
        Family::SepSym => gen_separated_symmetric(n, sep, ctx.seed)?,
        Family::Hessenberg => gen_hessenberg_positive(n, ctx.seed)?,
        Family::Perron => gen_perron_test(n, ctx.seed)?,
        Family::StructuredS => gen_structured_S(n, ctx.seed)?,
    };
    match &ctx.out {
        Some(path) => write_matrix_market(&m, path),
        None => {
            print!("{}", render_matrix_market(&m));
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_seed_42_row_csv() {
        let cli = Cli::try_parse_from(["wellsep", "discs", "m.mtx"]).unwrap();
        assert_eq!(cli.seed, 42);
        assert_eq!(cli.radius_mode, RadiusMode::Row);
        assert_eq!(cli.format, TableFormat::Csv);
        assert!(cli.out.is_none());
    }

    #[test]
    fn negative_step_is_rejected_at_parse_time() {
        let r = Cli::try_parse_from(["wellsep", "interlace", "--n", "8", "--t", "-0.5", "--trials", "3"]);
        assert!(r.is_err());
        let ok = Cli::try_parse_from(["wellsep", "interlace", "--n", "8", "--t", "0.5", "--trials", "3"]);
        assert!(ok.is_ok());
    }

    #[test]
    fn truncation_factor_must_sit_in_unit_interval() {
        assert!(Cli::try_parse_from(["wellsep", "bounds", "m.mtx", "--truncate", "1.5"]).is_err());
        assert!(Cli::try_parse_from(["wellsep", "bounds", "m.mtx", "--truncate", "0.5"]).is_ok());
    }

    #[test]
    fn capital_k_flag_and_family_names_parse() {
        let cli = Cli::try_parse_from([
            "wellsep", "perron", "--n", "10", "--trials", "2", "--K", "25.0",
        ])
        .unwrap();
        match cli.command {
            Command::Perron { k_shift, tol, max_iter, .. } => {
                assert_eq!(k_shift, Some(25.0));
                assert_eq!(tol, 1e-8);
                assert_eq!(max_iter, 10_000);
            }
            _ => panic!("wrong subcommand"),
        }
        for fam in ["sep-sym", "hessenberg", "perron", "S"] {
            assert!(Cli::try_parse_from(["wellsep", "generate", "--family", fam, "--n", "4"]).is_ok());
        }
        assert!(Cli::try_parse_from(["wellsep", "generate", "--family", "nope", "--n", "4"]).is_err());
    }

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(
            exit_code_for(&Error::Parse {
                line: 3,
                reason: "x".into()
            }),
            2
        );
        assert_eq!(exit_code_for(&Error::NotSquare { rows: 2, cols: 3 }), 2);
        assert_eq!(
            exit_code_for(&Error::NonConvergence {
                what: "x".into(),
                achieved: 1.0,
                iterations: 5
            }),
            3
        );
        assert_eq!(exit_code_for(&Error::Precondition("x".into())), 4);
        assert_eq!(
            exit_code_for(&Error::InvalidRegime {
                n: 4,
                k: 10.0,
                denominator: -1.0
            }),
            4
        );
    }

    #[test]
    fn trend_path_inserts_suffix_before_extension() {
        assert_eq!(
            trend_path(Path::new("out/bounds.csv")),
            PathBuf::from("out/bounds.trend.csv")
        );
        assert_eq!(trend_path(Path::new("report")), PathBuf::from("report.trend"));
    }
}
