//! Command-line front end: zero tables, ξ evaluation, coupling spectra,
//! phase shifts, plot data and the verification suite.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use xilab::numfmt::json_num;
use xilab::scattering::{phase_shift_tsv, phase_sweep};
use xilab::specfun::SpecFunConfig;
use xilab::spectrum::{audit_spectrum, spectrum_from_zeros, write_spectrum};
use xilab::verify::{emit_plot_data, run_suite, PlotKind, PlotRequest, RunConfig, Selection};
use xilab::xi::{big_xi, xi};
use xilab::zeros::{
    find_zeros, read_zero_table, write_zero_table, zero_table_from_json, zero_table_json, ScanConfig, ZetaRoute,
};
use xilab::{LabError, Result, Verdict, Zero};

#[derive(Parser, Debug)]
#[command(name = "xilab", version, about = "Numerical checks around ξ, its zeros and an inverse-square scattering model")]
struct Cli {
    #[command(flatten)]
    specfun: SpecFunFlags,

    #[command(subcommand)]
    command: Command,
}

/// Numerical settings shared by every subcommand.
#[derive(Args, Debug)]
struct SpecFunFlags {
    /// Minimum number of directly summed ζ terms
    #[arg(long, global = true, default_value_t = 10)]
    zeta_terms_min: usize,

    /// Highest Bernoulli order in the Euler–Maclaurin tail (even, 4..=24)
    #[arg(long, global = true, default_value_t = 12)]
    zeta_bernoulli_order: usize,

    /// Absolute tolerance for double-exponential quadrature
    #[arg(long, global = true, default_value_t = 1e-12)]
    quad_abs_tol: f64,

    /// Maximum refinement levels for quadrature
    #[arg(long, global = true, default_value_t = 12)]
    quad_max_levels: usize,
}

impl SpecFunFlags {
    fn config(&self) -> Result<SpecFunConfig<f64>> {
        let cfg = SpecFunConfig {
            zeta_terms_min: self.zeta_terms_min,
            zeta_bernoulli_order: self.zeta_bernoulli_order,
            quad_abs_tol: self.quad_abs_tol,
            quad_max_levels: self.quad_max_levels,
        };
        cfg.validate().map_err(|e| LabError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Euler–Maclaurin ζ
    Em,
    /// Alternating η series
    Eta,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    BigXiCurve,
    Spectrum,
    PhaseSweep,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Locate zeros of Ξ(t) and write a zero table (.json or CSV)
    Zeros {
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 60.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 1e-10)]
        bisect_tol: f64,
        #[arg(long, value_enum, default_value_t = Route::Em)]
        route: Route,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate ξ(s) at s = re + i·im
    Xi {
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        im: f64,
    },
    /// Map a zero table to coupling constants λ = s(s−1)
    Spectrum {
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Phase shift for the inverse-square potential, numeric against analytic
    Scatter {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        k: f64,
        /// Sweep k over the decade [k, 10k] instead of a single wavenumber
        #[arg(long)]
        sweep: bool,
        /// Grid points for --sweep
        #[arg(long, default_value_t = 7)]
        points: usize,
        /// Write the TSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Write plot data as TSV
    Plot {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        /// Range start (t for big_xi_curve, λ for phase_sweep)
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        /// Range end
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Grid step for big_xi_curve; overrides --points
        #[arg(long)]
        step: Option<f64>,
        /// Wavenumber for phase_sweep
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Zero table for the spectrum plot
        #[arg(long)]
        zeros: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every registered check (the default)
    #[arg(long, conflicts_with = "check")]
    all: bool,

    /// Run only these check ids
    #[arg(long, num_args = 1..)]
    check: Vec<String>,

    /// Exit with status 1 when any row is REFUTED
    #[arg(long)]
    strict: bool,

    #[arg(long)]
    json: Option<PathBuf>,

    #[arg(long)]
    md: Option<PathBuf>,

    /// Override a tolerance, as check_id=value (repeatable)
    #[arg(long = "tol", value_name = "ID=VALUE")]
    tol: Vec<String>,

    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    /// Upper end of the zero scan used by the Hadamard and spectrum checks
    #[arg(long, default_value_t = 240.0)]
    zero_t_max: f64,

    #[arg(long, default_value_t = 0.05)]
    scan_step: f64,

    /// Record the wall-clock time in the config block
    #[arg(long)]
    timestamp: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = cli.specfun.config()?;
    match cli.command {
        Command::Zeros {
            t_min,
            t_max,
            step,
            bisect_tol,
            route,
            out,
        } => {
            let scan = ScanConfig {
                t_min,
                t_max,
                step,
                bisect_tol,
            };
            scan.validate().map_err(|e| LabError::Usage(e.to_string()))?;
            let route = match route {
                Route::Em => ZetaRoute::EulerMaclaurin,
                Route::Eta => ZetaRoute::Alternating,
            };
            let zeros = find_zeros(&scan, route, &cfg)?;
            if is_json(&out) {
                write_text(&out, &pretty(&zero_table_json(&zeros)))?;
            } else {
                write_zero_table(&out, &zeros)?;
            }
            println!("{} zeros on [{t_min}, {t_max}] written to {}", zeros.len(), out.display());
        }
        Command::Xi { re, im } => {
            let s = Complex64::new(re, im);
            let v = xi(s, &cfg);
            let mut doc = json!({
                "s": { "re": json_num(re), "im": json_num(im) },
                "xi": { "re": json_num(v.re), "im": json_num(v.im) },
            });
            if re == 0.5 {
                doc["big_xi"] = json_num(big_xi(im, &cfg)?);
            }
            print!("{}", pretty(&doc));
        }
        Command::Spectrum { zeros, out } => {
            let table = load_zeros(&zeros)?;
            let spectrum = spectrum_from_zeros(&table)?;
            write_spectrum(&out, &spectrum)?;
            let audit = audit_spectrum(&table);
            println!("{} coupling constants written to {}; audit {}", spectrum.len(), out.display(), audit.verdict);
        }
        Command::Scatter {
            lambda,
            k,
            sweep,
            points,
            out,
        } => {
            if !(k > 0.0) || (sweep && points < 2) {
                return Err(LabError::Usage("need k > 0 and, with --sweep, --points ≥ 2".into()));
            }
            let ks: Vec<f64> = if sweep {
                (0..points).map(|i| k * 10f64.powf(i as f64 / (points - 1) as f64)).collect()
            } else {
                vec![k]
            };
            let rows = phase_sweep(&[lambda], &ks).into_iter().collect::<Result<Vec<_>>>()?;
            let text = phase_shift_tsv(&rows);
            match out {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify(args) => return verify(args, cfg),
        Command::Plot {
            kind,
            out,
            from,
            to,
            points,
            step,
            k,
            zeros,
        } => {
            let kind = match kind {
                Kind::BigXiCurve => PlotKind::BigXiCurve,
                Kind::Spectrum => PlotKind::Spectrum,
                Kind::PhaseSweep => PlotKind::PhaseSweep,
            };
            let mut req = PlotRequest::new(kind);
            req.start = from.unwrap_or(req.start);
            req.end = to.unwrap_or(req.end);
            req.points = points.unwrap_or(req.points);
            req.k = k;
            if let Some(h) = step {
                if !(h > 0.0) || kind != PlotKind::BigXiCurve {
                    return Err(LabError::Usage("--step needs a positive value and --kind big_xi_curve".into()));
                }
                req.points = ((req.end - req.start) / h).round() as usize + 1;
            }
            if kind == PlotKind::Spectrum {
                let path = zeros.ok_or_else(|| LabError::Usage("--kind spectrum needs --zeros <path>".into()))?;
                req.zeros = load_zeros(&path)?;
            }
            emit_plot_data(&req, &cfg, &out)?;
            println!("{} written to {}", kind.name(), out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs, specfun: SpecFunConfig<f64>) -> Result<ExitCode> {
    let mut cfg = RunConfig {
        specfun,
        jobs: args.jobs,
        zero_t_max: args.zero_t_max,
        scan_step: args.scan_step,
        ..RunConfig::default()
    };
    for t in &args.tol {
        cfg.set_tolerance(t)?;
    }
    if args.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        cfg.timestamp = Some(format!("unix:{secs}"));
    }
    let selection = if args.check.is_empty() {
        Selection::All
    } else {
        Selection::Ids(args.check)
    };
    let report = run_suite(&selection, &cfg)?;

    for r in &report.results {
        println!("{:<14} {:<28} {}", r.verdict.as_str(), r.check_id, r.case);
    }
    let s = report.summary;
    println!(
        "{} rows: {} confirmed, {} refuted, {} not applicable",
        s.total(),
        s.confirmed,
        s.refuted,
        s.not_applicable
    );

    if let Some(path) = &args.json {
        write_text(path, &report.to_json_string())?;
    }
    if let Some(path) = &args.md {
        write_text(path, &report.to_markdown())?;
    }
    let refuted = report.results.iter().any(|r| r.verdict == Verdict::Refuted);
    Ok(if args.strict && refuted {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn load_zeros(path: &Path) -> Result<Vec<Zero>> {
    if is_json(path) {
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path)?)?;
        zero_table_from_json(&v)
    } else {
        read_zero_table(path)
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}
