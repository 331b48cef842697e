//! `qfht`: batch front end for the fractional Hankel transform library.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing property,
//! 2 on bad arguments, unreadable input or an inadmissible configuration,
//! 3 when a computation fails to converge.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qfht_core::bargmann::{
    bargmann_forward, bargmann_inverse, frht_via_bargmann, DiscQuadratureRule, SliceRegularSeries,
};
use qfht_core::hilbert::{analyze, build_rule, synthesize, MAX_RULE_SIZE};
use qfht_core::io::{read_coeffs, read_signal, write_coeffs, write_kernel_table, write_signal, KernelRow};
use qfht_core::kernel::{k_kernel, KernelConfig};
use qfht_core::transform::{frht_quadrature, FrhtOperator};
use qfht_core::verify::{seed_from_env, Suite};
use qfht_core::{Error, ImaginaryUnit, Quaternion, RadialSignal};

#[derive(Parser)]
#[command(name = "qfht", version, about = "Quaternionic fractional Hankel transform tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suite and print a JSON report.
    Verify,
    /// Tabulate the weighted kernel x^a e^-x R_theta(x, y) on a square grid.
    KernelTable(KernelTableArgs),
    /// Apply the transform to a signal file.
    Transform(TransformArgs),
    /// Forward or inverse Bargmann transform.
    Bargmann(BargmannArgs),
}

#[derive(Args)]
struct KernelTableArgs {
    /// Parameter as "w,x,y,z".
    #[arg(long, allow_hyphen_values = true)]
    theta: Quaternion,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    xmin: f64,
    #[arg(long, default_value_t = 10.0)]
    xmax: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, visible_alias = "out")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKind {
    Spectral,
    Quadrature,
    Bargmann,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    I,
    J,
    K,
}

impl From<UnitArg> for ImaginaryUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::I => ImaginaryUnit::I,
            UnitArg::J => ImaginaryUnit::J,
            UnitArg::K => ImaginaryUnit::K,
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta: Quaternion,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "spectral")]
    path: PathKind,
    /// Highest Laguerre index kept by the spectral and Bargmann paths.
    /// Defaults to M-1, where the spectral path loses nothing beyond rounding.
    #[arg(short = 'N', long)]
    cutoff: Option<usize>,
    /// Slice used for the Bergman pairing on the Bargmann path.
    #[arg(long, value_enum, default_value = "i")]
    unit: UnitArg,
    #[arg(long, visible_alias = "out")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BargmannArgs {
    /// Map coefficients back to a signal instead.
    #[arg(long, requires = "coeffs", conflicts_with = "input")]
    inverse: bool,
    /// Signal to transform (forward direction).
    #[arg(long, required_unless_present = "inverse")]
    input: Option<PathBuf>,
    /// Coefficient file (inverse direction).
    #[arg(long)]
    coeffs: Option<PathBuf>,
    #[arg(long)]
    alpha: f64,
    /// Highest coefficient index kept by the forward map; defaults to M-1.
    #[arg(short = 'N', long)]
    cutoff: Option<usize>,
    /// Rule size of the reconstructed signal.
    #[arg(short = 'M', long, default_value_t = 128)]
    rule_size: usize,
    #[arg(long, value_enum, default_value = "i")]
    unit: UnitArg,
    #[arg(long, visible_alias = "output")]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Runtime(String),
    Properties,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence(_) | Error::Numerical(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify => verify(),
        Command::KernelTable(a) => kernel_table(a),
        Command::Transform(a) => transform(a),
        Command::Bargmann(a) => bargmann(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Properties) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("qfht: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("qfht: {msg}");
            ExitCode::from(3)
        }
    }
}

fn verify() -> Result<(), Failure> {
    let seed = seed_from_env().map_err(Failure::Config)?;
    let reports = Suite::new(seed).run_all();
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &reports).map_err(|e| Failure::Runtime(e.to_string()))?;
    writeln!(out)?;
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!(
            "qfht: {} failed: deviation {:e} vs tolerance {:e}",
            r.property, r.max_deviation, r.tolerance
        );
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Properties)
    }
}

fn kernel_table(a: KernelTableArgs) -> Result<(), Failure> {
    if !(a.xmin > 0.0 && a.xmax >= a.xmin && a.xmax.is_finite()) {
        return Err(Failure::Config(format!(
            "grid needs 0 < xmin <= xmax, got xmin={}, xmax={}",
            a.xmin, a.xmax
        )));
    }
    if a.points == 0 {
        return Err(Failure::Config("grid needs at least one point".into()));
    }
    let cfg = KernelConfig::new(a.alpha)?;
    let unit = ImaginaryUnit::of(&a.theta);
    let step = if a.points > 1 { (a.xmax - a.xmin) / (a.points - 1) as f64 } else { 0.0 };
    let grid: Vec<f64> = (0..a.points).map(|i| a.xmin + step * i as f64).collect();
    let mut rows = Vec::with_capacity(grid.len() * grid.len());
    for &x in &grid {
        for &y in &grid {
            rows.push(KernelRow::new(x, y, k_kernel(a.theta, x, y, &cfg)?, unit));
        }
    }
    write_kernel_table(sink(a.output.as_deref())?, &rows)?;
    Ok(())
}

fn transform(a: TransformArgs) -> Result<(), Failure> {
    let f = read_signal(open(&a.input)?, a.alpha)?;
    let m = f.rule().count();
    let n_max = cutoff(a.cutoff, m)?;
    let op = FrhtOperator::new(a.theta, f.rule().clone())?;
    let g = match a.path {
        // at full cutoff the spectral identity is exactly the identity on node samples
        PathKind::Spectral if op.is_identity() && n_max == m - 1 => f,
        PathKind::Spectral => synthesize(&op.apply_spectral(&analyze(&f, n_max)?), f.rule()),
        PathKind::Quadrature => frht_quadrature(&f, &op)?,
        PathKind::Bargmann => {
            let disc = DiscQuadratureRule::for_count(a.alpha, n_max + 1)?;
            frht_via_bargmann(&f, a.theta, n_max, &disc, a.unit.into())?
        }
    };
    write_signal(sink(a.output.as_deref())?, &g)?;
    Ok(())
}

fn bargmann(a: BargmannArgs) -> Result<(), Failure> {
    if a.inverse {
        let path = a.coeffs.as_deref().expect("clap enforces --coeffs with --inverse");
        let series = SliceRegularSeries::new(read_coeffs(open(path)?)?);
        if series.is_empty() {
            return Err(Failure::Config("coefficient file is empty".into()));
        }
        if a.rule_size > MAX_RULE_SIZE {
            return Err(Failure::Config(format!("rule size must be at most {MAX_RULE_SIZE}")));
        }
        let rule = Arc::new(build_rule(a.alpha, a.rule_size)?);
        let disc = DiscQuadratureRule::for_count(a.alpha, series.len())?;
        let f: RadialSignal = bargmann_inverse(&series, &rule, &disc, a.unit.into())?;
        write_signal(sink(a.out.as_deref())?, &f)?;
    } else {
        let path = a.input.as_deref().expect("clap enforces --input without --inverse");
        let f = read_signal(open(path)?, a.alpha)?;
        let n_max = cutoff(a.cutoff, f.rule().count())?;
        let series = bargmann_forward(&f, n_max)?;
        write_coeffs(sink(a.out.as_deref())?, &series.coeffs)?;
    }
    Ok(())
}

fn cutoff(requested: Option<usize>, m: usize) -> Result<usize, Failure> {
    match requested {
        None => Ok(m - 1),
        Some(n) if n < m => Ok(n),
        Some(n) => Err(Failure::Config(format!("cutoff N={n} needs a rule with more than {n} nodes, have {m}"))),
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
