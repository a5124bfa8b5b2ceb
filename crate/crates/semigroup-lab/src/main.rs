//! Command-line surface: model listing, orbit tracing, rate reports,
//! harmonic estimates, and the verification suite, with CSV/JSON outputs
//! and seeded reproducibility.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use semigroup_lab::error::Error;
use semigroup_lab::harmonic::{
    dyadic_comb_chain, hm_halfplane_halfline, hm_sector, hm_strip_top, slit_mid_bounds,
    slit_mid_primitives, wos_estimate, BoundaryPrimitive, SectorSide,
};
use semigroup_lab::models::{model_by_id, model_catalog, ParamDomain, ShiftType};
use semigroup_lab::orbits::{orbit_trace, TimeGrid};
use semigroup_lab::rates::rate_verdicts;
use semigroup_lab::report::{
    estimate_to_json, fmt_f64, rate_report_to_json, trace_to_csv, trace_to_json,
};
use semigroup_lab::verify::{outcomes_to_json, print_outcomes, run_suite, Suite, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "semigroup-lab",
    about = "Numerical laboratory for non-elliptic semigroups of the unit disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the model catalog with domains, shift types and capabilities.
    ListModels,
    /// Trace an orbit and its convergence metrics to CSV or JSON.
    Orbit(OrbitArgs),
    /// Fit convergence rates on an orbit and report bracket verdicts.
    Rates(RatesArgs),
    /// Exact and Monte Carlo harmonic-measure estimates.
    #[command(subcommand)]
    Harmonic(HarmonicCmd),
    /// Run the acceptance suite and write a JSON verdict report.
    Verify(VerifyArgs),
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got '{s}'"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

#[derive(Args)]
struct OrbitArgs {
    /// Model id (see list-models).
    #[arg(long)]
    model: String,
    /// Starting point as RE,IM in the model's parameter domain.
    #[arg(long, value_parser = parse_complex)]
    z: Option<Complex64>,
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    #[arg(long, default_value_t = 1e6)]
    t1: f64,
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TraceFormat::Csv)]
    format: TraceFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct RatesArgs {
    #[arg(long)]
    model: String,
    #[arg(long, value_parser = parse_complex)]
    z: Option<Complex64>,
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    #[arg(long, default_value_t = 1e6)]
    t1: f64,
    #[arg(long, default_value_t = 241)]
    count: usize,
    /// Bracket slack epsilon.
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum HarmonicCmd {
    /// Top-edge measure of a horizontal strip, exact vs walk-on-spheres.
    Strip {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = 0.0)]
        bottom: f64,
        #[arg(long, default_value_t = 2.0)]
        height: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Left-ray measure in the upper half-plane, exact vs walk-on-spheres.
    Halfplane {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        /// Split point c of the boundary into (−∞, c] and [c, ∞).
        #[arg(long, default_value_t = 0.0)]
        split: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Exact angular-sector measure.
    Sector {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = SideArg::Beta)]
        side: SideArg,
    },
    /// Slit measure of the slit-mid domain from t on the orbit ray, with
    /// the exact lower/upper envelope.
    SlitMid {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// The dyadic-comb rectangle chain at index n.
    DyadicComb {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Alpha,
    Beta,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    paths: u64,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Write the JSON verdict report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Geometry,
    Orbits,
    Rates,
    Harmonic,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Geometry => Suite::Geometry,
            SuiteArg::Orbits => Suite::Orbits,
            SuiteArg::Rates => Suite::Rates,
            SuiteArg::Harmonic => Suite::Harmonic,
            SuiteArg::All => Suite::All,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::NoOrbitCapability(_) => 2,
        _ => 3,
    }
}

fn write_or_print(out: Option<&PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn theta_label(theta: f64) -> &'static str {
    if theta == std::f64::consts::PI {
        "pi"
    } else if theta == std::f64::consts::FRAC_PI_2 {
        "pi/2"
    } else {
        "0"
    }
}

fn cmd_list_models() -> u8 {
    for m in model_catalog() {
        let domain = match m.parameter_domain() {
            ParamDomain::Disk => "disk",
            ParamDomain::UpperHalfPlane => "half-plane",
        };
        let shift = match m.shift_type() {
            ShiftType::Finite => "finite",
            ShiftType::Infinite => "infinite",
        };
        let caps = if m.has_orbit() { "orbit" } else { "geometry-only" };
        println!(
            "{:<12} {:<11} {:<9} theta={:<5} {}",
            m.id(),
            domain,
            shift,
            theta_label(m.inner_argument()),
            caps
        );
    }
    0
}

fn cmd_orbit(args: &OrbitArgs) -> u8 {
    let Some(model) = model_by_id(&args.model) else {
        eprintln!("unknown model '{}'", args.model);
        return 2;
    };
    if !model.has_orbit() {
        eprintln!("model '{}' has no orbit capability (geometry only)", args.model);
        return 2;
    }
    let z0 = args.z.unwrap_or_else(|| model.base_point());
    let grid = match TimeGrid::new(args.t0, args.t1, args.count) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    if !model.in_parameter_domain(z0) {
        eprintln!("starting point {z0} lies outside the parameter domain");
        return 2;
    }
    let trace = match orbit_trace(model, z0, grid) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            return 3;
        }
    };
    let content = match args.format {
        TraceFormat::Csv => trace_to_csv(&trace),
        TraceFormat::Json => trace_to_json(&trace),
    };
    if let Err(e) = write_or_print(args.out.as_ref(), &content) {
        eprintln!("{e}");
        return 3;
    }
    0
}

fn cmd_rates(args: &RatesArgs) -> u8 {
    let Some(model) = model_by_id(&args.model) else {
        eprintln!("unknown model '{}'", args.model);
        return 2;
    };
    if !model.has_orbit() {
        eprintln!("model '{}' has no orbit capability (geometry only)", args.model);
        return 2;
    }
    let z0 = args.z.unwrap_or_else(|| model.base_point());
    let grid = match TimeGrid::new(args.t0, args.t1, args.count) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let reports = match orbit_trace(model, z0, grid).and_then(|t| rate_verdicts(model, &t, args.eps)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return error_code(&e);
        }
    };
    let mut body = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            body.push(',');
        }
        body.push_str(&rate_report_to_json(r));
    }
    let content = format!("[{body}]\n");
    if let Err(e) = write_or_print(args.out.as_ref(), &content) {
        eprintln!("{e}");
        return 3;
    }
    let any_outside = reports
        .iter()
        .any(|r| r.verdict == semigroup_lab::rates::Verdict::Outside);
    u8::from(any_outside)
}

fn cmd_harmonic(cmd: &HarmonicCmd) -> u8 {
    let result: Result<String, Error> = (|| match cmd {
        HarmonicCmd::Strip { z, bottom, height, paths, seed } => {
            let exact = hm_strip_top(*z, *bottom, *height)?;
            let prims = vec![
                BoundaryPrimitive::HorizontalLine { y: bottom + height, label: "top".into() },
                BoundaryPrimitive::HorizontalLine { y: *bottom, label: "bottom".into() },
            ];
            let wos = wos_estimate(&prims, None, *z, &["top"], *paths, *seed)?;
            Ok(format!(
                "{{\"exact\":{},\"wos\":{}}}\n",
                estimate_to_json(&exact),
                estimate_to_json(&wos)
            ))
        }
        HarmonicCmd::Halfplane { z, split, paths, seed } => {
            let exact = hm_halfplane_halfline(*z, *split)?;
            let prims = vec![
                BoundaryPrimitive::HorizontalRayLeft {
                    anchor: Complex64::new(*split, 0.0),
                    label: "left".into(),
                },
                BoundaryPrimitive::HorizontalSegment {
                    anchor: Complex64::new(*split, 0.0),
                    len: 1e9,
                    label: "right".into(),
                },
            ];
            let wos = wos_estimate(&prims, None, *z, &["left"], *paths, *seed)?;
            Ok(format!(
                "{{\"exact\":{},\"wos\":{}}}\n",
                estimate_to_json(&exact),
                estimate_to_json(&wos)
            ))
        }
        HarmonicCmd::Sector { z, alpha, beta, side } => {
            let side = match side {
                SideArg::Alpha => SectorSide::Alpha,
                SideArg::Beta => SectorSide::Beta,
            };
            let exact = hm_sector(*z, *alpha, *beta, side)?;
            Ok(format!("{{\"exact\":{}}}\n", estimate_to_json(&exact)))
        }
        HarmonicCmd::SlitMid { t, paths, seed } => {
            let (lower, upper) = slit_mid_bounds(*t);
            let prims = slit_mid_primitives();
            let wos = wos_estimate(&prims, None, Complex64::new(*t, 0.0), &["slit"], *paths, *seed)?;
            Ok(format!(
                "{{\"lower\":{},\"upper\":{},\"wos\":{}}}\n",
                fmt_f64(lower),
                fmt_f64(upper),
                estimate_to_json(&wos)
            ))
        }
        HarmonicCmd::DyadicComb { n, paths, seed } => {
            let r = dyadic_comb_chain(*n, *paths, *seed)?;
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{{\"n\":{},\"t_n\":{},\"strip_exact\":{},\"top\":{},\"right\":{},\"chain_holds\":{},\"log_bound_holds\":{}}}",
                r.n,
                fmt_f64(r.t_n),
                fmt_f64(r.strip_exact),
                estimate_to_json(&r.top),
                estimate_to_json(&r.right),
                r.chain_holds,
                r.log_bound_holds
            );
            Ok(s)
        }
    })();
    match result {
        Ok(content) => {
            print!("{content}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            error_code(&e)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let cfg = VerifyConfig { seed: args.seed, paths: args.paths, eps: args.eps };
    let suite: Suite = args.suite.into();
    let outcomes = match run_suite(suite, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("numerical failure before verdict stage: {e}");
            return 3;
        }
    };
    print_outcomes(&outcomes);
    if let Some(path) = &args.json {
        let report = outcomes_to_json(suite, &cfg, &outcomes);
        if let Err(e) = std::fs::write(path, report) {
            eprintln!("{e}");
            return 3;
        }
        println!("report written to {}", path.display());
    }
    u8::from(!outcomes.iter().all(|o| o.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::ListModels => cmd_list_models(),
        Command::Orbit(args) => cmd_orbit(args),
        Command::Rates(args) => cmd_rates(args),
        Command::Harmonic(cmd) => cmd_harmonic(cmd),
        Command::Verify(args) => cmd_verify(args),
    };
    ExitCode::from(code)
}
