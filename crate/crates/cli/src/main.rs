//! Command-line front-end: evaluate densities and kernels on grids, emit
//! coefficient tables and plot-point files, run the verification suites and
//! draw samples.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! error. CSV output is UTF-8, comma-separated with `\n` line endings and
//! values printed at 17 significant digits so they re-parse bit-identically.

mod family;
mod grid;
mod output;

use clap::{Args, Parser, Subcommand};
use family::Family;
use grid::Grid;
use output::{format_f64, OutputTarget};

use chebden::kernels::{kernel_closed, KernelId, KernelPoint};
use chebden::sampler::{sample, SampleConfig};
use chebden::verify::{self, VerifyOptions};

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_DOMAIN: i32 = 3;

#[derive(Parser)]
#[command(
    name = "chebden",
    version,
    about = "Chebyshev kernel identities and pole-family densities on (-1, 1)",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a density family (or its CDF) on an x grid; emits CSV `x,value`.
    Eval(EvalArgs),
    /// Evaluate a kernel identity on an x grid; emits CSV `x,value`.
    Kernel(KernelArgs),
    /// Emit the normalizer, pole coefficients and t_j drivers as JSON.
    Coeffs(CoeffsArgs),
    /// Run verification suites; exits 1 if any identity check fails.
    Verify(VerifyArgs),
    /// Draw inverse-CDF samples; one value per line plus a JSON sidecar.
    Sample(SampleArgs),
    /// Evaluate several curves on a shared grid; emits multi-column CSV.
    Table(TableArgs),
}

#[derive(Args)]
struct FamilyOpts {
    /// Family name: fn, f2, f4, marg-fc, marg-fw
    #[arg(long)]
    family: String,
    /// Pole parameters for `fn`, comma separated, each in (-1, 1)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// rho for f2 / marg-fc / marg-fw
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    /// y for f2
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    /// first-pair rho for f4
    #[arg(long, allow_hyphen_values = true)]
    rho1: Option<f64>,
    /// first-pair y for f4
    #[arg(long, allow_hyphen_values = true)]
    y1: Option<f64>,
    /// second-pair rho for f4
    #[arg(long, allow_hyphen_values = true)]
    rho2: Option<f64>,
    /// second-pair y for f4
    #[arg(long, allow_hyphen_values = true)]
    y2: Option<f64>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyOpts,
    /// Evaluation grid lo:hi:count (inclusive endpoints, clipped into (-1, 1))
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Emit the CDF instead of the density (fn, f2, f4 only)
    #[arg(long)]
    cdf: bool,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel name: gu, gt, gut, ushift1, tshift1, ushift2diag, syma,
    /// event, oddt, tudiag, t4
    #[arg(long)]
    id: String,
    /// rho, |rho| <= 0.99
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
    /// Second argument y (bivariate kernels only)
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    /// Evaluation grid lo:hi:count over x in [-1, 1]
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Pole parameters, comma separated, each in (-1, 1)
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Largest t_j index to emit
    #[arg(long, default_value_t = 20)]
    jmax: u32,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: kernels, coeffs, densities, quadrature, sampler,
    /// acceptance, or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest |rho| used by randomized checks
    #[arg(long, default_value_t = 0.9)]
    rho_max: f64,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    family: FamilyOpts,
    /// Number of samples
    #[arg(long)]
    count: usize,
    /// Seed of the SplitMix64 stream
    #[arg(long)]
    seed: u64,
    /// Inversion tolerance in (0, 1e-6]
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output file; the sidecar goes to `<out>.json`. With stdout output the
    /// sidecar is printed to stderr.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Shared grid lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Curve spec, repeatable: `[cdf:]family:params` with colon-separated
    /// params, e.g. `f2:0.5:0.5`, `cdf:f4:0.6:0.3:0.4:-0.5`, `marg-fw:0.8`,
    /// and `fn:0.5;-0.25` (pole list separated by semicolons)
    #[arg(long = "curve", required = true)]
    curves: Vec<String>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// A usage problem (exit 2) or a domain/evaluation problem (exit 3).
#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl From<chebden::Error> for CliError {
    fn from(e: chebden::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            EXIT_DOMAIN
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Kernel(args) => run_kernel(args),
        Command::Coeffs(args) => run_coeffs(args),
        Command::Verify(args) => run_verify(args),
        Command::Sample(args) => run_sample(args),
        Command::Table(args) => run_table(args),
    }
}

fn run_eval(args: EvalArgs) -> Result<i32, CliError> {
    let family = Family::from_opts(&args.family)?;
    let grid = Grid::parse(&args.grid)?;
    let xs = grid.clipped_points();
    let mut out = OutputTarget::create(args.out.as_deref())?;
    out.line("x,value")?;
    if args.cdf {
        let density = family.density()?;
        for x in xs {
            out.line(&format!("{},{}", format_f64(x), format_f64(density.cdf(x)?)))?;
        }
    } else {
        for x in xs {
            out.line(&format!("{},{}", format_f64(x), format_f64(family.pdf(x)?)))?;
        }
    }
    out.finish()?;
    Ok(0)
}

fn run_kernel(args: KernelArgs) -> Result<i32, CliError> {
    let id = KernelId::parse(&args.id).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown kernel '{}'; available: {}",
            args.id,
            KernelId::ALL.map(|k| k.name()).join(", ")
        ))
    })?;
    let y = match (id.is_diagonal(), args.y) {
        (true, None) => None,
        (true, Some(_)) => {
            return Err(CliError::Usage(format!(
                "kernel '{}' is diagonal and takes no --y",
                id.name()
            )))
        }
        (false, Some(y)) => Some(y),
        (false, None) => {
            return Err(CliError::Usage(format!(
                "kernel '{}' is bivariate; pass --y",
                id.name()
            )))
        }
    };
    let grid = Grid::parse(&args.grid)?;
    let mut out = OutputTarget::create(args.out.as_deref())?;
    out.line("x,value")?;
    for x in grid.points() {
        let point = match y {
            Some(y) => KernelPoint::new(x, y, args.rho)?,
            None => KernelPoint::diagonal(x, args.rho)?,
        };
        out.line(&format!(
            "{},{}",
            format_f64(x),
            format_f64(kernel_closed(id, &point))
        ))?;
    }
    out.finish()?;
    Ok(0)
}

fn run_coeffs(args: CoeffsArgs) -> Result<i32, CliError> {
    let params = family::parse_pole_list(&args.a, ',')?;
    let b = chebden::normalizer(&params)?;
    let poles = chebden::b_coeffs(&params)?;
    let t = chebden::coeffs::t_coeffs_upto(args.jmax, &params)?;
    let doc = serde_json::json!({ "B": b, "b": poles, "t": t });
    let mut out = OutputTarget::create(args.out.as_deref())?;
    out.line(&serde_json::to_string_pretty(&doc).expect("serializable"))?;
    out.finish()?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let mut opts = VerifyOptions {
        rho_max: args.rho_max,
        ..VerifyOptions::default()
    };
    if !(args.rho_max > 0.0 && args.rho_max <= 0.99) {
        return Err(CliError::Usage(format!(
            "--rho-max {} outside (0, 0.99]",
            args.rho_max
        )));
    }
    if let Ok(tol) = std::env::var("CHEB_VERIFY_TOL") {
        opts.base_tol = tol.parse().map_err(|_| {
            CliError::Usage(format!("CHEB_VERIFY_TOL='{tol}' is not a number"))
        })?;
    }
    let results = if args.suite == "all" {
        verify::run_all(&opts)
    } else {
        verify::run_suite(&args.suite, &opts)
            .map_err(|e| CliError::Usage(e.to_string()))?
    };
    let mut failed = 0usize;
    for check in &results {
        println!("{check}");
        failed += usize::from(!check.passed);
    }
    println!(
        "{} checks, {} passed, {} failed",
        results.len(),
        results.len() - failed,
        failed
    );
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY_FAILED })
}

fn run_sample(args: SampleArgs) -> Result<i32, CliError> {
    let family = Family::from_opts(&args.family)?;
    let density = family.density()?;
    let cfg = SampleConfig::new(args.count, args.seed)?.with_tolerance(args.tol)?;
    let values = sample(&density, &cfg)?;
    let sidecar = serde_json::json!({
        "seed": args.seed,
        "config": {
            "family": family.describe(),
            "count": args.count,
            "inversion_tolerance": args.tol,
        },
    });
    let sidecar_text = serde_json::to_string_pretty(&sidecar).expect("serializable");
    let mut out = OutputTarget::create(args.out.as_deref())?;
    for v in &values {
        out.line(&format_f64(*v))?;
    }
    out.finish()?;
    match &args.out {
        Some(path) => {
            let mut sidecar_path = path.clone().into_os_string();
            sidecar_path.push(".json");
            std::fs::write(sidecar_path, sidecar_text + "\n")?;
        }
        None => eprintln!("{sidecar_text}"),
    }
    Ok(0)
}

fn run_table(args: TableArgs) -> Result<i32, CliError> {
    let grid = Grid::parse(&args.grid)?;
    let specs: Vec<(String, bool, Family)> = args
        .curves
        .iter()
        .map(|raw| family::parse_curve_spec(raw).map(|(cdf, fam)| (raw.clone(), cdf, fam)))
        .collect::<Result<_, _>>()?;
    let mut out = OutputTarget::create(args.out.as_deref())?;
    let header: Vec<&str> = std::iter::once("x")
        .chain(specs.iter().map(|(name, _, _)| name.as_str()))
        .collect();
    out.line(&header.join(","))?;
    // densities are built once; closed-form curves evaluate pointwise
    let mut columns = Vec::new();
    for (_, want_cdf, fam) in &specs {
        columns.push(if *want_cdf { Some(fam.density()?) } else { None });
    }
    for x in grid.clipped_points() {
        let mut record = vec![format_f64(x)];
        for ((_, want_cdf, fam), density) in specs.iter().zip(&columns) {
            let v = if *want_cdf {
                density.as_ref().expect("built above").cdf(x)?
            } else {
                fam.pdf(x)?
            };
            record.push(format_f64(v));
        }
        out.line(&record.join(","))?;
    }
    out.finish()?;
    Ok(0)
}
