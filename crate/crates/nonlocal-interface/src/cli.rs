//! The `nli` command line: `solve`, `study`, and `verify`.
//!
//! Configuration is resolved in three layers: built-in defaults (the
//! benchmark problem at `h = 2^-12`), then an optional JSON config file, then
//! explicit flags. `--dump-config` prints the effective configuration and
//! exits without running.
//!
//! Exit codes: `0` success, `1` a verification check failed, `2`
//! configuration or usage error, `3` numerical failure while running.

use crate::analysis::study::{
    delta_study, h_study, halving_horizons, halving_spacings, jump_study_vs_delta, jump_study_vs_h,
    StudyReport,
};
use crate::analysis::{
    green_identity_parts, nonlocal_operator_apply_1d, nonlocal_operator_apply_2d,
    operator_limit_study_1d, operator_limit_study_2d, radial_moment_kappa,
};
use crate::analysis::operator::{amplitude_1d, amplitude_2d};
use crate::assembly::{assemble_stiffness, ConstraintData, QuadraticPoly, SourceTerm};
use crate::geometry::{build_mesh, DomainLayout};
use crate::kernels::{kernel_constants_2d, make_kernel, KernelFamily, Material};
use crate::local::{local_exact, local_fem_solve};
use crate::problem::{InterfaceProblem, NonlocalSolution};
use crate::rng::SplitMix64;
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Complete run configuration; every field has a benchmark default, may be
/// set in a JSON config file, and (except the constraint quadratics and the
/// domain) may be overridden by a flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub kappa1: f64,
    pub kappa2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub h: f64,
    pub kernel: KernelFamily,
    /// Constant source term (both sides).
    pub f: f64,
    /// Left constraint quadratic `[c0, c1, c2]` for `c0 + c1 x + c2 x^2`.
    pub g1: [f64; 3],
    /// Right constraint quadratic.
    pub g2: [f64; 3],
    /// `[a, x_interface, b]`.
    pub domain: [f64; 3],
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kappa1: 1.0,
            kappa2: 3.0,
            delta1: 0.03125,
            delta2: 0.0625,
            h: 0.000244140625, // 2^-12
            kernel: KernelFamily::K1,
            f: 1.0,
            g1: [0.0625, -0.125, -0.5],
            g2: [0.0625, -1.0 / 24.0, -1.0 / 6.0],
            domain: [-0.5, 0.0, 0.5],
        }
    }
}

impl RunConfig {
    /// Build the problem this configuration describes.
    pub fn problem(&self) -> crate::Result<InterfaceProblem> {
        let layout = DomainLayout::new(
            self.domain[0],
            self.domain[1],
            self.domain[2],
            self.delta1,
            self.delta2,
        )?;
        let material = Material::new(self.kappa1, self.kappa2)?;
        let constraints = ConstraintData::new(
            QuadraticPoly::from_coeffs(self.g1),
            QuadraticPoly::from_coeffs(self.g2),
        );
        Ok(InterfaceProblem::with_constraints(
            layout,
            material,
            self.kernel,
            SourceTerm::constant(self.f),
            constraints,
        ))
    }
}

fn parse_family(s: &str) -> Result<KernelFamily, String> {
    s.parse()
}

/// Flags shared by `solve` and `study`.
#[derive(Debug, Clone, Args)]
pub struct ConfigFlags {
    /// JSON configuration file; explicit flags override its fields.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Left diffusion coefficient.
    #[arg(long, value_name = "VALUE")]
    pub kappa1: Option<f64>,
    /// Right diffusion coefficient.
    #[arg(long, value_name = "VALUE")]
    pub kappa2: Option<f64>,
    /// Left interaction horizon.
    #[arg(long, value_name = "VALUE")]
    pub delta1: Option<f64>,
    /// Right interaction horizon.
    #[arg(long, value_name = "VALUE")]
    pub delta2: Option<f64>,
    /// Mesh spacing.
    #[arg(long, value_name = "VALUE")]
    pub h: Option<f64>,
    /// Kernel family: k1, k2, k3, or k4.
    #[arg(long, value_name = "FAMILY", value_parser = parse_family)]
    pub kernel: Option<KernelFamily>,
    /// Constant source term.
    #[arg(long, value_name = "VALUE")]
    pub f: Option<f64>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "nli",
    about = "Nonlocal diffusion across a 1D material interface",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one configuration and write the solution as CSV.
    Solve(SolveArgs),
    /// Run a convergence or jump study; writes a CSV table and a JSON sidecar.
    Study(StudyArgs),
    /// Run a numerical verification suite (exit code 1 on failure).
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    flags: ConfigFlags,
    /// Output CSV path.
    #[arg(long, value_name = "PATH", default_value = "solution.csv")]
    out: PathBuf,
    /// Also write the assembled stiffness matrix as `i j value` lines.
    #[arg(long, value_name = "PATH")]
    dump_matrix: Option<PathBuf>,
    /// Print the solution to stdout as two gnuplot-ready blocks (one per
    /// side of the interface).
    #[arg(long)]
    series: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StudyKind {
    /// Shrink both horizons at fixed h; L2 error against the local solution.
    Delta,
    /// Refine the mesh at fixed horizons; L2 distance to a fine reference.
    H,
    /// Interface jump under mesh refinement (saturates).
    JumpH,
    /// Interface jump as the horizons shrink (first order).
    JumpDelta,
}

impl StudyKind {
    fn name(self) -> &'static str {
        match self {
            StudyKind::Delta => "delta",
            StudyKind::H => "h",
            StudyKind::JumpH => "jump-h",
            StudyKind::JumpDelta => "jump-delta",
        }
    }
}

#[derive(Debug, Args)]
struct StudyArgs {
    /// What to vary and what to measure.
    #[arg(value_enum)]
    kind: StudyKind,
    #[command(flatten)]
    flags: ConfigFlags,
    /// Number of refinement levels (halvings, including the first row).
    #[arg(long, default_value_t = 6)]
    levels: usize,
    /// Coarsest spacing for h-varying studies.
    #[arg(long, default_value_t = 0.03125)]
    h_start: f64,
    /// Reference spacing for the mesh-refinement study.
    #[arg(long, default_value_t = 0.000244140625)]
    h_fine: f64,
    /// Output CSV path (default `study_<kind>.csv`; the JSON sidecar swaps
    /// the extension).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    /// Discrete integration-by-parts identity on random function pairs.
    Green,
    /// Pointwise operator limit in 1D: exact on quadratics and cubics,
    /// second order on quartics.
    #[value(name = "operator-1d")]
    Operator1d,
    /// Pointwise operator limit in 2D, plus the kernel moment condition.
    #[value(name = "operator-2d")]
    Operator2d,
    /// Local finite element solver against the closed-form solution.
    LocalFem,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Which verification to run.
    #[arg(value_enum)]
    check: VerifyKind,
}

/// Exit code for a library error: mis-specified problems are configuration
/// errors (2), failures while computing are numerical errors (3).
fn classify(err: &Error) -> i32 {
    match err {
        Error::NonCommensurate { .. }
        | Error::OutOfDomain { .. }
        | Error::InvalidParameter { .. } => 2,
        Error::NotPositiveDefinite { .. }
        | Error::DimensionMismatch { .. }
        | Error::SingularSystem
        | Error::QuadratureDomainClipped { .. }
        | Error::IncompatibleMeshes => 3,
    }
}

type CliResult = Result<i32, (i32, String)>;

/// Print one line to stdout; if the consumer closed the pipe (`nli ... |
/// head`), stop quietly instead of panicking.
fn out(args: std::fmt::Arguments) {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    let result = w.write_fmt(args).and_then(|_| w.write_all(b"\n"));
    if let Err(e) = result {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(3);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { out(format_args!($($t)*)) };
}

fn config_error(msg: impl Display) -> (i32, String) {
    (2, msg.to_string())
}

fn run_error(err: Error) -> (i32, String) {
    (classify(&err), err.to_string())
}

fn write_error(err: io::Error) -> (i32, String) {
    (3, format!("failed to write output: {err}"))
}

/// Error mapping for multi-line stdout output: a closed pipe ends the run
/// successfully, anything else is a write failure.
fn stdout_error(err: io::Error) -> (i32, String) {
    if err.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    write_error(err)
}

/// Resolve the effective configuration: defaults, then config file, then
/// flags.
pub fn effective_config(flags: &ConfigFlags) -> Result<RunConfig, (i32, String)> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        let text = fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        cfg = serde_json::from_str(&text)
            .map_err(|e| config_error(format!("invalid config {}: {e}", path.display())))?;
    }
    if let Some(v) = flags.kappa1 {
        cfg.kappa1 = v;
    }
    if let Some(v) = flags.kappa2 {
        cfg.kappa2 = v;
    }
    if let Some(v) = flags.delta1 {
        cfg.delta1 = v;
    }
    if let Some(v) = flags.delta2 {
        cfg.delta2 = v;
    }
    if let Some(v) = flags.h {
        cfg.h = v;
    }
    if let Some(v) = flags.kernel {
        cfg.kernel = v;
    }
    if let Some(v) = flags.f {
        cfg.f = v;
    }
    Ok(cfg)
}

fn dump_config(cfg: &RunConfig) -> CliResult {
    outln!(
        "{}",
        serde_json::to_string_pretty(cfg).expect("config serialization cannot fail")
    );
    Ok(0)
}

fn write_solution_csv(path: &Path, cfg: &RunConfig, sol: &NonlocalSolution) -> io::Result<()> {
    let local = local_exact(
        &Material::new(cfg.kappa1, cfg.kappa2).expect("validated earlier"),
        &SourceTerm::constant(cfg.f),
        cfg.domain[0],
        cfg.domain[1],
        cfg.domain[2],
    );
    let mesh = sol.mesh();
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "x,u_nonlocal,u_local_exact")?;
    for dof in 0..mesh.dof_count() {
        let x = mesh.dof_coordinate(dof);
        let side = mesh.dof_side(dof);
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e}",
            x,
            sol.values()[dof],
            local.eval(x, side)
        )?;
    }
    w.flush()
}

fn print_series(sol: &NonlocalSolution) -> io::Result<()> {
    let mesh = sol.mesh();
    let stdout = io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "# x u  (left of the interface)")?;
    for dof in 0..=mesh.interface_dof_left() {
        writeln!(w, "{:.16e} {:.16e}", mesh.dof_coordinate(dof), sol.values()[dof])?;
    }
    writeln!(w)?;
    writeln!(w, "# x u  (right of the interface)")?;
    for dof in mesh.interface_dof_right()..mesh.dof_count() {
        writeln!(w, "{:.16e} {:.16e}", mesh.dof_coordinate(dof), sol.values()[dof])?;
    }
    Ok(())
}

fn run_solve(args: &SolveArgs) -> CliResult {
    let cfg = effective_config(&args.flags)?;
    if args.flags.dump_config {
        return dump_config(&cfg);
    }
    let problem = cfg.problem().map_err(|e| (2, e.to_string()))?;
    let solution = problem.solve(cfg.h).map_err(run_error)?;

    if let Some(matrix_path) = &args.dump_matrix {
        let mesh = build_mesh(&problem.layout, cfg.h).map_err(run_error)?;
        let matrix = assemble_stiffness(&mesh, &problem.kernel());
        let mut w = BufWriter::new(fs::File::create(matrix_path).map_err(write_error)?);
        matrix.write_coordinate(&mut w).map_err(write_error)?;
        w.flush().map_err(write_error)?;
    }

    write_solution_csv(&args.out, &cfg, &solution).map_err(write_error)?;
    if args.series {
        print_series(&solution).map_err(stdout_error)?;
    }
    let mesh = solution.mesh();
    let (ul, ur) = solution.interface_values();
    outln!(
        "solved: {} elements, {} dofs, h = {:.5e}",
        mesh.element_count(),
        mesh.dof_count(),
        mesh.h()
    );
    outln!(
        "interface: u(0-) = {:.5e}, u(0+) = {:.5e}, jump = {:.5e}",
        ul,
        ur,
        (ur - ul).abs()
    );
    outln!("wrote {}", args.out.display());
    Ok(0)
}

fn run_study(args: &StudyArgs) -> CliResult {
    let cfg = effective_config(&args.flags)?;
    if args.flags.dump_config {
        return dump_config(&cfg);
    }
    if args.levels == 0 {
        return Err(config_error("--levels must be at least 1"));
    }
    let problem = cfg.problem().map_err(|e| (2, e.to_string()))?;
    let report: StudyReport = match args.kind {
        StudyKind::Delta => {
            let horizons = halving_horizons(cfg.delta1, cfg.delta2, args.levels);
            delta_study(&problem, cfg.h, &horizons).map_err(run_error)?
        }
        StudyKind::H => {
            let spacings = halving_spacings(args.h_start, args.levels);
            h_study(&problem, &spacings, args.h_fine).map_err(run_error)?
        }
        StudyKind::JumpH => {
            let spacings = halving_spacings(args.h_start, args.levels);
            jump_study_vs_h(&problem, &spacings).map_err(run_error)?
        }
        StudyKind::JumpDelta => {
            let horizons = halving_horizons(cfg.delta1, cfg.delta2, args.levels);
            jump_study_vs_delta(&problem, cfg.h, &horizons).map_err(run_error)?
        }
    };

    let csv_path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("study_{}.csv", args.kind.name())));
    let mut json_path = csv_path.clone();
    json_path.set_extension("json");

    let mut csv = BufWriter::new(fs::File::create(&csv_path).map_err(write_error)?);
    report.write_csv(&mut csv).map_err(write_error)?;
    csv.flush().map_err(write_error)?;
    let mut json = BufWriter::new(fs::File::create(&json_path).map_err(write_error)?);
    report.write_json(&mut json).map_err(write_error)?;
    json.flush().map_err(write_error)?;

    let stdout = io::stdout();
    report
        .print_table(&mut stdout.lock())
        .map_err(stdout_error)?;
    outln!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(0)
}

/// One verification criterion: prints its own pass/fail line.
fn criterion(name: &str, detail: String, pass: bool) -> bool {
    if pass {
        outln!("ok:   {name} — {detail}");
    } else {
        outln!("FAIL: {name} — {detail}");
    }
    pass
}

fn verify_green() -> CliResult {
    let layout = DomainLayout::centered_unit(0.0625, 0.0625).map_err(run_error)?;
    let material = Material::new(1.0, 1.0).map_err(run_error)?;
    let kernel = make_kernel(KernelFamily::K3, &material, &layout);
    let mesh = build_mesh(&layout, 0.015625).map_err(run_error)?;
    let mut rng = SplitMix64::new(2026);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let u: Vec<f64> = (0..mesh.dof_count()).map(|_| rng.symmetric()).collect();
        let v: Vec<f64> = (0..mesh.dof_count())
            .map(|d| if mesh.is_constrained_dof(d) { 0.0 } else { rng.symmetric() })
            .collect();
        let parts = green_identity_parts(&u, &v, &mesh, &kernel).map_err(run_error)?;
        worst = worst.max(parts.relative_residual());
    }
    let pass = criterion(
        "integration by parts",
        format!("50 random pairs, max relative residual {worst:.3e} (tolerance 1e-10)"),
        worst <= 1e-10,
    );
    Ok(if pass { 0 } else { 1 })
}

fn verify_operator_1d() -> CliResult {
    let mut all = true;
    // exactness on quadratics and cubics
    let mut worst = 0.0f64;
    for (u, ddu) in [
        (Box::new(|y: f64| y * y) as Box<dyn Fn(f64) -> f64>, Box::new(|_x: f64| 2.0) as Box<dyn Fn(f64) -> f64>),
        (Box::new(|y: f64| y.powi(3)), Box::new(|x: f64| 6.0 * x)),
    ] {
        for kappa in [0.5, 2.0] {
            for delta in [0.25, 0.03125] {
                for x in [-0.3, 0.2] {
                    let lu = nonlocal_operator_apply_1d(
                        &u,
                        x,
                        amplitude_1d(kappa, delta),
                        delta,
                        (-2.0, 2.0),
                    )
                    .map_err(run_error)?;
                    worst = worst.max((lu - kappa * ddu(x)).abs());
                }
            }
        }
    }
    all &= criterion(
        "quadratics and cubics exact",
        format!("max |Lu - kappa u''| = {worst:.3e} (tolerance 1e-10)"),
        worst <= 1e-10,
    );

    // second order on a quartic
    let deltas = halving_spacings(0.25, 5);
    let report = operator_limit_study_1d(1.0, 0.15, &deltas);
    let mut worst_order: f64 = 0.0;
    for row in &report.rows[1..] {
        worst_order = worst_order.max((row.order.unwrap() - 2.0).abs());
    }
    all &= criterion(
        "quartic deviation order two",
        format!("max |order - 2| = {worst_order:.3e} over {} halvings (tolerance 0.1)", deltas.len() - 1),
        worst_order <= 0.1,
    );
    Ok(if all { 0 } else { 1 })
}

fn verify_operator_2d() -> CliResult {
    let mut all = true;
    // exactness on quadratics and cubics
    let mut worst = 0.0f64;
    let center = (0.3, -0.2);
    for kappa in [0.5, 2.0] {
        for delta in [0.25, 0.0625] {
            let c = amplitude_2d(kappa, delta);
            type Surface = fn(f64, f64) -> f64;
            let cases: [(Surface, f64); 3] = [
                (|x, _| x * x, 2.0),
                (|x, y| x * y, 0.0),
                (|x, _| x.powi(3), 6.0 * center.0),
            ];
            for (u, lap) in cases {
                let lu = nonlocal_operator_apply_2d(u, center, c, delta);
                worst = worst.max((lu - kappa * lap).abs());
            }
        }
    }
    all &= criterion(
        "quadratics and cubics exact",
        format!("max |Lu - kappa lap(u)| = {worst:.3e} (tolerance 1e-10)"),
        worst <= 1e-10,
    );

    // second order on a quartic
    let deltas = halving_spacings(0.25, 5);
    let report = operator_limit_study_2d(1.0, center, &deltas);
    let mut worst_order: f64 = 0.0;
    for row in &report.rows[1..] {
        worst_order = worst_order.max((row.order.unwrap() - 2.0).abs());
    }
    all &= criterion(
        "quartic deviation order two",
        format!("max |order - 2| = {worst_order:.3e} over {} halvings (tolerance 0.1)", deltas.len() - 1),
        worst_order <= 0.1,
    );

    // moment condition recovers the paired coefficient
    let mut worst_moment = 0.0f64;
    for kappa in [0.5, 1.0, 3.0] {
        let material = Material::new(kappa, kappa).map_err(run_error)?;
        let c = kernel_constants_2d(&material, 0.125, 0.25);
        for delta in [0.125, 0.25, 0.5] {
            let recovered = radial_moment_kappa(c.c_tilde12, c.beta, delta);
            worst_moment = worst_moment.max((recovered - kappa).abs());
        }
    }
    all &= criterion(
        "cross-kernel moment recovers kappa",
        format!("max |moment - kappa| = {worst_moment:.3e} (tolerance 1e-10)"),
        worst_moment <= 1e-10,
    );
    Ok(if all { 0 } else { 1 })
}

fn verify_local_fem() -> CliResult {
    let material = Material::new(1.0, 3.0).map_err(run_error)?;
    let source = SourceTerm::constant(1.0);
    let exact = local_exact(&material, &source, -0.5, 0.0, 0.5);
    let fem = local_fem_solve(&material, &source, -0.5, 0.0, 0.5, 0.000244140625).map_err(run_error)?;
    let err = fem.l2_error(&exact);
    let pass = criterion(
        "local FEM vs closed form",
        format!("L2 error {err:.3e} at h = 2^-12 (tolerance 1e-8)"),
        err <= 1e-8,
    );
    Ok(if pass { 0 } else { 1 })
}

fn run_verify(args: &VerifyArgs) -> CliResult {
    let code = match args.check {
        VerifyKind::Green => verify_green()?,
        VerifyKind::Operator1d => verify_operator_1d()?,
        VerifyKind::Operator2d => verify_operator_2d()?,
        VerifyKind::LocalFem => verify_local_fem()?,
    };
    if code == 0 {
        outln!("verification passed");
    } else {
        outln!("verification FAILED");
    }
    Ok(code)
}

/// Entry point used by the `nli` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout (code 0) and usage errors to
            // stderr (code 2)
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Study(args) => run_study(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn no_flags() -> ConfigFlags {
        ConfigFlags {
            config: None,
            kappa1: None,
            kappa2: None,
            delta1: None,
            delta2: None,
            h: None,
            kernel: None,
            f: None,
            dump_config: false,
        }
    }

    #[test]
    fn default_config_is_the_benchmark() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.kappa1, 1.0);
        assert_eq!(cfg.kappa2, 3.0);
        assert_eq!(cfg.delta1, 2f64.powi(-5));
        assert_eq!(cfg.delta2, 2f64.powi(-4));
        assert_eq!(cfg.h, 2f64.powi(-12));
        assert_eq!(cfg.kernel, KernelFamily::K1);
        assert_eq!(cfg.domain, [-0.5, 0.0, 0.5]);
        // constraint quadratics match the closed-form local solution
        let p = cfg.problem().unwrap();
        let local = p.local_solution();
        assert_abs_diff_eq!(local.left.c0, cfg.g1[0], epsilon = 1e-15);
        assert_abs_diff_eq!(local.left.c1, cfg.g1[1], epsilon = 1e-15);
        assert_abs_diff_eq!(local.left.c2, cfg.g1[2], epsilon = 1e-15);
        assert_abs_diff_eq!(local.right.c1, cfg.g2[1], epsilon = 1e-15);
    }

    #[test]
    fn flags_override_defaults() {
        let mut flags = no_flags();
        flags.kappa2 = Some(10.0);
        flags.kernel = Some(KernelFamily::K3);
        flags.h = Some(0.03125);
        let cfg = effective_config(&flags).unwrap();
        assert_eq!(cfg.kappa2, 10.0);
        assert_eq!(cfg.kernel, KernelFamily::K3);
        assert_eq!(cfg.h, 0.03125);
        // untouched fields keep their defaults
        assert_eq!(cfg.kappa1, 1.0);
        assert_eq!(cfg.delta1, 2f64.powi(-5));
    }

    #[test]
    fn config_file_sits_between_defaults_and_flags() {
        let dir = std::env::temp_dir().join("nli-cli-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("partial.json");
        fs::write(&path, r#"{ "kappa2": 7.0, "kernel": "k2", "h": 0.0625 }"#).unwrap();
        let mut flags = no_flags();
        flags.config = Some(path.clone());
        flags.h = Some(0.125);
        let cfg = effective_config(&flags).unwrap();
        assert_eq!(cfg.kappa2, 7.0); // from file
        assert_eq!(cfg.kernel, KernelFamily::K2); // from file
        assert_eq!(cfg.h, 0.125); // flag beats file
        assert_eq!(cfg.kappa1, 1.0); // default
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn unknown_config_fields_are_rejected() {
        let dir = std::env::temp_dir().join("nli-cli-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("typo.json");
        fs::write(&path, r#"{ "kapa1": 2.0 }"#).unwrap();
        let mut flags = no_flags();
        flags.config = Some(path.clone());
        let err = effective_config(&flags).unwrap_err();
        assert_eq!(err.0, 2);
        assert!(err.1.contains("kapa1"), "message should name the field: {}", err.1);
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn config_json_round_trips() {
        let cfg = RunConfig::default();
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        assert!(text.contains("\"kernel\": \"k1\""));
    }

    #[test]
    fn error_classification_follows_the_exit_code_contract() {
        assert_eq!(
            classify(&Error::NonCommensurate {
                quantity: "delta1/h",
                ratio: 1.5
            }),
            2
        );
        assert_eq!(
            classify(&Error::InvalidParameter {
                name: "h",
                value: -1.0,
                requirement: "positive"
            }),
            2
        );
        assert_eq!(
            classify(&Error::OutOfDomain {
                x: 2.0,
                lo: -0.5,
                hi: 0.5
            }),
            2
        );
        assert_eq!(
            classify(&Error::NotPositiveDefinite {
                index: 3,
                pivot: -0.1
            }),
            3
        );
        assert_eq!(classify(&Error::SingularSystem), 3);
        assert_eq!(
            classify(&Error::DimensionMismatch {
                expected: 3,
                found: 2
            }),
            3
        );
    }

    #[test]
    fn kernel_flag_parser_accepts_all_families() {
        for name in ["k1", "k2", "k3", "k4", "K2"] {
            assert!(parse_family(name).is_ok());
        }
        assert!(parse_family("k9").is_err());
    }

    #[test]
    fn study_kind_names_match_output_files() {
        assert_eq!(StudyKind::Delta.name(), "delta");
        assert_eq!(StudyKind::H.name(), "h");
        assert_eq!(StudyKind::JumpH.name(), "jump-h");
        assert_eq!(StudyKind::JumpDelta.name(), "jump-delta");
    }
}
