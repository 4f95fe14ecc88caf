//! `twistlab`: evaluate interpolated Orlicz functions, derived-space
//! quasinorms and `Ω^n`, and run the randomized verification suites.
//!
//! Exit codes: 0 success, 1 failed suite, 2 usage or malformed input,
//! 3 numeric failure.

mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use twistlab::harness::DerivedNorm;

use config::CoupleConfig;
use report::{Request, Suite};

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<twistlab::Error> for Failure {
    fn from(e: twistlab::Error) -> Self {
        use twistlab::Error::*;
        let code = match e {
            Domain(_) | Unsupported(_) | Usage(_) => 2,
            Numeric { .. } | Degenerate(_) => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Derived spaces of interpolated Orlicz couples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CoupleArgs {
    /// Couple configuration (JSON). Defaults to the (ℓ∞, ℓ₁) couple at θ = 1/2.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Overrides the configured θ.
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Rochberg,
    Fenchel,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print φ_θ(t) or φ_θ⁻¹(s).
    PhiEval {
        #[command(flatten)]
        couple: CoupleArgs,
        #[arg(long, conflicts_with = "s", required_unless_present = "s")]
        t: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
    },
    /// Print derived-space quasinorms of a block vector.
    Norm {
        #[command(flatten)]
        couple: CoupleArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
        /// Block-vector file (JSON, blocks ordered high_to_low).
        vector: PathBuf,
    },
    /// Print Ω^n of a block vector, one "k re im" line per support coordinate.
    Omega {
        #[command(flatten)]
        couple: CoupleArgs,
        #[arg(long)]
        n: usize,
        vector: PathBuf,
    },
    /// Run a verification suite and write its JSON report.
    ///
    /// Default trials: taylor 1000, quasilinear 200, quasiconvex 2000,
    /// delta2 1000, boundary 100, threelines 200, equivalence 200,
    /// coordinate 200, realcomplex 1000, kaltonpeck 500, powers 200.
    /// Without --n each suite runs its default orders.
    Verify {
        #[command(flatten)]
        couple: CoupleArgs,
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict to a single derived order.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per estimate (overrides every suite default).
        #[arg(long)]
        trials: Option<usize>,
        /// Report path; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Record wall time in the report (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Describe the configured couple.
    CoupleInfo {
        #[command(flatten)]
        couple: CoupleArgs,
    },
}

/// `%.15g`-style formatting.
fn fmt_g(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let fixed = format!("{v:.*}", (14 - exp).max(0) as usize);
    if fixed.contains('.') {
        fixed.trim_end_matches('0').trim_end_matches('.').into()
    } else {
        fixed
    }
}

fn load(args: &CoupleArgs) -> Result<(CoupleConfig, twistlab::InterpolationCouple), Failure> {
    let cfg = CoupleConfig::load(args.config.as_deref(), args.theta)?;
    let couple = cfg.build()?;
    Ok((cfg, couple))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("TWISTLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("TWISTLAB_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads()?;
    let mut out = std::io::stdout().lock();
    let mut emit = |line: String| writeln!(out, "{line}").map_err(|e| Failure::usage(e.to_string()));
    match cli.command {
        Command::PhiEval { couple, t, s } => {
            let (_, couple) = load(&couple)?;
            let v = match (t, s) {
                (Some(t), _) => couple.phi_theta(t)?,
                (None, Some(s)) => couple.phi_theta_inverse(s)?,
                (None, None) => unreachable!("clap requires one of --t/--s"),
            };
            emit(fmt_g(v))?;
        }
        Command::Norm {
            couple,
            n,
            which,
            vector,
        } => {
            let (_, couple) = load(&couple)?;
            let v = config::load_vector(&vector)?;
            let eval = |norm| -> Result<f64, Failure> { Ok(DerivedNorm::eval(norm, &couple, n, &v)?) };
            match which {
                Which::Rochberg => emit(format!("rochberg {}", fmt_g(eval(DerivedNorm::Rochberg)?)))?,
                Which::Fenchel => emit(format!("fenchel {}", fmt_g(eval(DerivedNorm::Fenchel)?)))?,
                Which::Both => {
                    let r = eval(DerivedNorm::Rochberg)?;
                    let f = eval(DerivedNorm::Fenchel)?;
                    emit(format!("rochberg {}", fmt_g(r)))?;
                    emit(format!("fenchel {}", fmt_g(f)))?;
                    if f > 0.0 {
                        emit(format!("ratio {}", fmt_g(r / f)))?;
                    }
                }
            }
        }
        Command::Omega { couple, n, vector } => {
            let (_, couple) = load(&couple)?;
            let v = config::load_vector(&vector)?;
            for (k, z) in couple.omega_n(n, &v)? {
                emit(format!("{k} {} {}", fmt_g(z.re), fmt_g(z.im)))?;
            }
        }
        Command::Verify {
            couple,
            suite,
            n,
            seed,
            trials,
            out: path,
            timing,
        } => {
            if n == Some(0) || trials == Some(0) {
                return Err(Failure::usage("--n and --trials must be positive"));
            }
            let (cfg, built) = load(&couple)?;
            let start = Instant::now();
            let mut rep = report::run(&Request {
                config: &cfg,
                couple: &built,
                suite,
                n,
                seed,
                trials,
            })?;
            if timing {
                rep.wall_time = Some(start.elapsed().as_secs_f64());
            }
            let text = serde_json::to_string_pretty(&rep).expect("report serializes");
            match path {
                Some(p) => {
                    std::fs::write(&p, text + "\n").map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
                    for e in &rep.entries {
                        emit(format!(
                            "{} {} {}",
                            if e.pass { "pass" } else { "FAIL" },
                            e.estimate.name,
                            fmt_g(e.estimate.value)
                        ))?;
                    }
                }
                None => emit(text)?,
            }
            return Ok(if rep.pass { 0 } else { 1 });
        }
        Command::CoupleInfo { couple } => {
            let (cfg, couple) = load(&couple)?;
            let (lo, hi) = couple.conformal().boundary_limits();
            emit(format!("config {}", serde_json::to_string(&cfg).expect("config serializes")))?;
            emit(format!("theta {}", fmt_g(couple.theta())))?;
            for (name, phi) in [("phi0", couple.phi0()), ("phi1", couple.phi1())] {
                emit(format!(
                    "{name} nondegenerate={} ess_sup={} delta2={} convexity_verified={}",
                    phi.is_nondegenerate(),
                    phi.is_ess_sup(),
                    phi.satisfies_delta2(),
                    phi.convexity_verified()
                ))?;
            }
            emit(format!("phi_theta(1) {}", fmt_g(couple.phi_theta(1.0)?)))?;
            emit(format!(
                "conformal_derivative {}",
                fmt_g(couple.conformal().derivative_at_theta())
            ))?;
            emit(format!("boundary_limit_minus {} {}", fmt_g(lo.re), fmt_g(lo.im)))?;
            emit(format!("boundary_limit_plus {} {}", fmt_g(hi.re), fmt_g(hi.im)))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("twistlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
