//! Command-line surface: evaluate special functions and layer functions,
//! solve the model boundary value problems, run the verification suite and
//! reproduce the result figures.
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument error,
//! 3 numerical failure.

mod csvio;
mod figures;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csvio::{fmt, CsvTable};
use fraclayer::layers;
use fraclayer::mesh::{GradeSide, Mesh};
use fraclayer::solver::{self, ProblemSpec};
use fraclayer::specfun::{mittag_leffler, MLParams};
use fraclayer::verify::{self, Check, VerifyConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fraclayer",
    about = "Boundary layers of singularly perturbed Caputo fractional boundary value problems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the two-parameter Mittag-Leffler function E_{a,b}(z)
    Ml(MlArgs),
    /// Tabulate a layer function as CSV
    Layer(LayerArgs),
    /// Solve one of the model boundary value problems
    Solve(SolveArgs),
    /// Run the verification suite for the quantitative layer claims
    Verify(VerifyArgs),
    /// Emit the two result figures as CSV and SVG
    Figures(FiguresArgs),
}

#[derive(Args)]
struct MlArgs {
    /// First parameter (must be positive)
    #[arg(long)]
    a: f64,
    /// Second parameter
    #[arg(long)]
    b: f64,
    /// Argument (single evaluation)
    #[arg(long, conflicts_with_all = ["z_min", "z_max"])]
    z: Option<f64>,
    /// Grid start (with --z-max and --points)
    #[arg(long, requires = "z_max")]
    z_min: Option<f64>,
    /// Grid end
    #[arg(long, requires = "z_min")]
    z_max: Option<f64>,
    /// Grid size
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Write CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LayerProblem {
    /// Convection-diffusion layer correction V(x)
    Conv,
    /// Decaying reaction branch V0 at the stretched coordinate x/eps^{1/(2-alpha)}
    Reac0,
    /// Exponential right-layer model V1(x)
    Reac1,
    /// Classical exponential layer
    Classical,
}

#[derive(Args)]
struct LayerArgs {
    #[arg(long, value_enum)]
    problem: LayerProblem,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 0.0)]
    x_min: f64,
    #[arg(long, default_value_t = 1.0)]
    x_max: f64,
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Write CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SolveKind {
    ConvDiffusion,
    ReactionDiffusion,
    Classical,
    StretchedConv,
    StretchedReac,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MeshArg {
    Uniform,
    Graded,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    kind: SolveKind,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = MeshArg::Graded)]
    mesh: MeshArg,
    /// Grading exponent r >= 1
    #[arg(long, default_value_t = 2.0)]
    grading: f64,
    /// Graded side (defaults to the layer side of the chosen problem)
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Solution CSV path
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated eps list for the asymptotic checks
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    eps: Option<Vec<f64>>,
    /// Tolerance overrides file: one `name = value` per line, # comments
    #[arg(long)]
    tolerances: Option<PathBuf>,
    /// Report CSV path
    #[arg(long, default_value = "verify_report.csv")]
    csv: PathBuf,
    /// Skip the figure-determinism rows
    #[arg(long)]
    skip_figures: bool,
}

#[derive(Args)]
struct FiguresArgs {
    /// Output directory for fig1/fig2 CSV and SVG
    #[arg(long)]
    out_dir: PathBuf,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn numerical_error(msg: &str) -> ExitCode {
    eprintln!("numerical failure: {msg}");
    ExitCode::from(EXIT_NUMERICAL)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Ml(args) => cmd_ml(args),
        Command::Layer(args) => cmd_layer(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Figures(args) => cmd_figures(args),
    }
}

fn emit_table(table: CsvTable, output: Option<&Path>) -> ExitCode {
    match output {
        Some(path) => {
            if let Err(e) = table.write(path) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{}", table.to_string());
            ExitCode::SUCCESS
        }
    }
}

fn cmd_ml(args: MlArgs) -> ExitCode {
    let eval = |z: f64| -> Result<f64, String> {
        let p = MLParams::new(args.a, args.b, z).map_err(|e| e.to_string())?;
        let e = mittag_leffler(&p).map_err(|e| e.to_string())?;
        if e.accuracy_flagged {
            eprintln!("warning: accuracy flag raised at z = {z}");
        }
        Ok(e.value)
    };
    match (args.z, args.z_min, args.z_max) {
        (Some(z), None, None) => match eval(z) {
            Ok(v) => {
                println!("{}", fmt(v));
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e),
        },
        (None, Some(lo), Some(hi)) => {
            if args.points < 2 || !(hi > lo) {
                return usage_error("grid needs --points >= 2 and --z-max > --z-min");
            }
            let mut table = CsvTable::new(&["z", "value"]);
            for i in 0..args.points {
                let z = lo + (hi - lo) * i as f64 / (args.points - 1) as f64;
                match eval(z) {
                    Ok(v) => table.push_floats(&[z, v]),
                    Err(e) => return usage_error(&e),
                }
            }
            emit_table(table, args.output.as_deref())
        }
        _ => usage_error("provide either --z or the pair --z-min/--z-max"),
    }
}

fn cmd_layer(args: LayerArgs) -> ExitCode {
    if !(args.eps > 0.0 && args.eps < 1.0) {
        return usage_error("eps must lie in (0, 1)");
    }
    if args.points < 2 || !(args.x_max > args.x_min) {
        return usage_error("grid needs --points >= 2 and --x-max > --x-min");
    }
    let alpha_ok = match args.problem {
        LayerProblem::Classical => true,
        _ => args.alpha > 0.0 && args.alpha < 1.0,
    };
    if !alpha_ok {
        return usage_error("alpha must lie in (0, 1) for the fractional layers");
    }
    let half = (args.alpha - 0.5).abs() < 1e-12;
    let mu = if args.problem == LayerProblem::Reac1 {
        match layers::mu_reac(args.eps, args.alpha) {
            Ok(m) => m,
            Err(e) => return numerical_error(&e.to_string()),
        }
    } else {
        0.0
    };
    let mut table = CsvTable::new(&["x", "value"]);
    for i in 0..args.points {
        let x = args.x_min + (args.x_max - args.x_min) * i as f64 / (args.points - 1) as f64;
        let value = match args.problem {
            LayerProblem::Conv => {
                if half {
                    Ok(layers::conv_layer_correction(x.clamp(0.0, 1.0), args.eps))
                } else {
                    layers::conv_layer_correction_general(x, args.eps, args.alpha)
                }
            }
            LayerProblem::Reac0 => {
                let xi = x / args.eps.powf(1.0 / (2.0 - args.alpha));
                layers::reac_layer0(xi, args.alpha)
            }
            LayerProblem::Reac1 => Ok(layers::reac_layer1_model(x, args.eps, args.alpha, mu)),
            LayerProblem::Classical => Ok(layers::classical_conv_layer(x, args.eps)),
        };
        match value {
            Ok(v) => table.push_floats(&[x, v]),
            Err(e) => return numerical_error(&e.to_string()),
        }
    }
    emit_table(table, args.output.as_deref())
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    if !(args.eps > 0.0 && args.eps <= 1.0) {
        return usage_error("eps must be positive (and at most 1)");
    }
    if args.n < 2 {
        return usage_error("need --n >= 2 intervals");
    }
    let p = match args.kind {
        SolveKind::ConvDiffusion => ProblemSpec::convection_diffusion(args.alpha, args.eps),
        SolveKind::ReactionDiffusion => ProblemSpec::reaction_diffusion(args.alpha, args.eps),
        SolveKind::Classical => ProblemSpec::classical(args.eps),
        SolveKind::StretchedConv => ProblemSpec::stretched_conv(args.alpha, args.eps),
        SolveKind::StretchedReac => ProblemSpec::stretched_reac(args.alpha, args.eps),
    };
    if let Err(e) = p.validate() {
        return usage_error(&e.to_string());
    }
    let side = args.side.map(|s| match s {
        SideArg::Left => GradeSide::Left,
        SideArg::Right => GradeSide::Right,
        SideArg::Both => GradeSide::Both,
    });
    let default_side = match args.kind {
        SolveKind::ReactionDiffusion => GradeSide::Both,
        _ => GradeSide::Left,
    };
    let mesh = match args.mesh {
        MeshArg::Uniform => Mesh::uniform(args.n, p.domain_length),
        MeshArg::Graded => Mesh::graded(
            args.n,
            p.domain_length,
            args.grading,
            side.unwrap_or(default_side),
        ),
    };
    let mesh = match mesh {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let sol = match solver::solve_bvp(&p, &mesh) {
        Ok(s) => s,
        Err(e) => return numerical_error(&e.to_string()),
    };
    let mut table = CsvTable::new(&["x", "u"]);
    for (&x, &u) in mesh.nodes().iter().zip(&sol.values) {
        table.push_floats(&[x, u]);
    }
    if let Err(e) = table.write(&args.output) {
        return usage_error(&format!("cannot write {}: {e}", args.output.display()));
    }
    let mut summary = format!(
        "n={} residual_norm={:.3e} bc_error={:.1e} growth={:.2e}",
        args.n, sol.residual_norm, sol.bc_error, sol.growth_factor
    );
    if sol.growth_factor > solver::GROWTH_WARN_FACTOR {
        summary.push_str(" growth-warning");
    }
    match (solver::exact_solution(&p), args.kind) {
        (Some(exact), _) => {
            let err = mesh
                .nodes()
                .iter()
                .zip(&sol.values)
                .map(|(&x, &u)| (u - exact(x)).abs())
                .fold(0.0f64, f64::max);
            summary.push_str(&format!(" oracle_error={:.3e}", err));
        }
        (None, SolveKind::Classical) => {
            let err = mesh
                .nodes()
                .iter()
                .zip(&sol.values)
                .map(|(&x, &u)| {
                    let model =
                        layers::reduced_solution(x) + layers::classical_conv_layer(x, args.eps);
                    (u - model).abs()
                })
                .fold(0.0f64, f64::max);
            summary.push_str(&format!(" layer_model_deviation={:.3e}", err));
        }
        _ => {}
    }
    println!("{summary}");
    ExitCode::SUCCESS
}

fn parse_tolerances(path: &Path) -> Result<Vec<(String, f64)>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected `name = value`", lineno + 1));
        };
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|e| format!("line {}: bad value: {e}", lineno + 1))?;
        out.push((name.trim().to_string(), value));
    }
    Ok(out)
}

/// Emits the figures twice into scratch directories and checks that the
/// outputs are byte-identical with exact zero boundary rows.
fn figure_checks() -> Result<Vec<Check>, String> {
    let dir_a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir_b = tempfile::tempdir().map_err(|e| e.to_string())?;
    figures::emit(dir_a.path())?;
    figures::emit(dir_b.path())?;
    let mut identical = true;
    for name in ["fig1.csv", "fig1.svg", "fig2.csv", "fig2.svg"] {
        let a = std::fs::read(dir_a.path().join(name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(dir_b.path().join(name)).map_err(|e| e.to_string())?;
        identical &= a == b;
    }
    // boundary rows of the solution columns are exactly zero
    let mut boundary_dev = 0.0f64;
    for name in ["fig1.csv", "fig2.csv"] {
        let text =
            std::fs::read_to_string(dir_a.path().join(name)).map_err(|e| e.to_string())?;
        let rows: Vec<&str> = text.lines().collect();
        for row in [rows[1], *rows.last().unwrap()] {
            let u: f64 = row.split(',').nth(1).unwrap().parse().map_err(|_| "bad csv")?;
            boundary_dev = boundary_dev.max(u.abs());
        }
    }
    Ok(vec![
        Check {
            name: "figures_deterministic".into(),
            measured: if identical { 1.0 } else { 0.0 },
            target: 1.0,
            tolerance: 0.0,
            pass: identical,
            claim: "two figure runs emit byte-identical files".into(),
        },
        Check {
            name: "figures_boundary_rows".into(),
            measured: boundary_dev,
            target: 0.0,
            tolerance: 0.0,
            pass: boundary_dev == 0.0,
            claim: "solution columns vanish exactly at both boundaries".into(),
        },
    ])
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let mut cfg = VerifyConfig::default();
    if let Some(eps) = args.eps {
        if eps.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return usage_error("every eps must lie in (0, 1)");
        }
        cfg.eps_list = eps;
    }
    if let Some(path) = args.tolerances.as_deref() {
        match parse_tolerances(path) {
            Ok(t) => cfg.overrides = t,
            Err(e) => return usage_error(&e),
        }
    }
    let mut report = match verify::run_all(&cfg) {
        Ok(r) => r,
        Err(e) => return numerical_error(&e.to_string()),
    };
    if !args.skip_figures {
        match figure_checks() {
            Ok(extra) => report.extend(extra),
            Err(e) => return numerical_error(&e),
        }
    }
    let name_w = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    println!(
        "{:<name_w$}  {:>13}  {:>13}  {:>9}  {:<4}  claim",
        "name", "measured", "target", "tol", "pass"
    );
    for c in &report.checks {
        println!(
            "{:<name_w$}  {:>13.6e}  {:>13.6e}  {:>9.2e}  {:<4}  {}",
            c.name,
            c.measured,
            c.target,
            c.tolerance,
            if c.pass { "ok" } else { "FAIL" },
            c.claim
        );
    }
    println!("overall: {}", if report.overall { "PASS" } else { "FAIL" });
    let mut table = CsvTable::new(&["name", "measured", "target", "tolerance", "pass", "claim"]);
    for c in &report.checks {
        table.push_raw(vec![
            c.name.clone(),
            fmt(c.measured),
            fmt(c.target),
            fmt(c.tolerance),
            c.pass.to_string(),
            c.claim.clone(),
        ]);
    }
    if let Err(e) = table.write(&args.csv) {
        return usage_error(&format!("cannot write {}: {e}", args.csv.display()));
    }
    if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}

fn cmd_figures(args: FiguresArgs) -> ExitCode {
    match figures::emit(&args.out_dir) {
        Ok(()) => {
            println!(
                "wrote fig1.csv fig1.svg fig2.csv fig2.svg to {}",
                args.out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            if e.starts_with("cannot create") {
                usage_error(&e)
            } else {
                numerical_error(&e)
            }
        }
    }
}
