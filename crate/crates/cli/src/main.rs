use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ti2kit::decomp::{default_h_terms, h_series, k1_closed};
use ti2kit::endpoint::{phi, psi, solve_endpoint_b, DEFAULT_SOLVE_TOL};
use ti2kit::polylog::{clausen2, li2, ComplexValue};
use ti2kit::report::{write_reports, ReportFormat};
use ti2kit::special::{catalan_reference, ei_negative, hurwitz_zeta};
use ti2kit::ti2core::ti2;
use ti2kit::verify::{run, ConfigError, Identity, VerificationConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "ti2kit", version, about = "Inverse tangent integral toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single function and print its value
    Compute {
        /// ti2, li2, clausen2, hurwitz, ei, catalan, psi, phi, b-of-a, H or K1
        function: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
    },
    /// Check named identities and emit residual reports
    Verify(Box<VerifyArgs>),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity name or `all`
    identity: String,
    /// Comma-separated a values for theorem1
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated theta values for corollary4
    #[arg(long)]
    theta: Option<String>,
    /// Comma-separated n values for corollary3
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated A values for corollary2
    #[arg(long = "A")]
    upper: Option<String>,
    /// Comma-separated alpha values for corollary2 and pointwise
    #[arg(long)]
    alpha: Option<String>,
    /// Comma-separated x values for pointwise
    #[arg(long)]
    x: Option<String>,
    /// Pole-series truncation
    #[arg(long = "K")]
    k: Option<String>,
    /// Exponential-integral series truncation
    #[arg(long = "J")]
    j: Option<String>,
    /// Hurwitz series truncation
    #[arg(long = "N")]
    n_hurwitz: Option<String>,
    /// Tolerance applied to every identity
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<String>,
    /// File of key=value lines; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(String),
}

impl From<ti2kit::Error> for Failure {
    fn from(e: ti2kit::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn format_value(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.is_finite() && (1e-4..1e6).contains(&v.abs()) {
        let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
        format!("{rounded:.15}")
    } else {
        format!("{v:.14e}")
    }
}

fn arity(name: &str, args: &[f64], allowed: &[usize]) -> Result<(), Failure> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "`{name}` takes {} argument(s), got {}",
            allowed
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" or "),
            args.len()
        )))
    }
}

fn compute(function: &str, args: &[f64]) -> Result<String, Failure> {
    let value = match function {
        "ti2" => {
            arity(function, args, &[1])?;
            ti2(args[0])?
        }
        "li2" => {
            arity(function, args, &[1, 2])?;
            let z = ComplexValue::new(args[0], args.get(1).copied().unwrap_or(0.0));
            let w = li2(z)?;
            return Ok(format!("{} {}", format_value(w.re), format_value(w.im)));
        }
        "clausen2" => {
            arity(function, args, &[1])?;
            clausen2(args[0])?
        }
        "hurwitz" => {
            arity(function, args, &[2])?;
            hurwitz_zeta(args[0], args[1])?
        }
        "ei" => {
            arity(function, args, &[1])?;
            ei_negative(-args[0])?
        }
        "catalan" => {
            arity(function, args, &[0, 1])?;
            catalan_reference(args.first().copied().unwrap_or(1e-15))?
        }
        "psi" => {
            arity(function, args, &[1])?;
            psi(args[0])?
        }
        "phi" => {
            arity(function, args, &[2])?;
            phi(args[0], args[1])?
        }
        "b-of-a" => {
            arity(function, args, &[1, 2])?;
            solve_endpoint_b(args[0], args.get(1).copied().unwrap_or(DEFAULT_SOLVE_TOL))?.b
        }
        "H" => {
            arity(function, args, &[2, 3])?;
            let terms = match args.get(2) {
                Some(&j) if j >= 1.0 && j.fract() == 0.0 => j as usize,
                Some(&j) => {
                    return Err(Failure::Usage(format!(
                        "J must be a positive integer, got {j}"
                    )))
                }
                None if args[0] > 0.0 => default_h_terms(args[0]),
                None => 1,
            };
            h_series(args[0], args[1], terms)?.value
        }
        "K1" => {
            arity(function, args, &[0])?;
            k1_closed()
        }
        other => return Err(Failure::Usage(format!("unknown function `{other}`"))),
    };
    Ok(format_value(value))
}

fn build_config(v: &VerifyArgs) -> Result<VerificationConfig, Failure> {
    let mut cfg = VerificationConfig::default();
    if let Some(path) = &v.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_file_contents(&text)?;
    }
    let flags = [
        ("a", &v.a),
        ("theta", &v.theta),
        ("n", &v.n),
        ("A", &v.upper),
        ("alpha", &v.alpha),
        ("x", &v.x),
        ("K", &v.k),
        ("J", &v.j),
        ("N", &v.n_hurwitz),
        ("tol", &v.tol),
        ("workers", &v.workers),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            cfg.set(key, value)?;
        }
    }
    match v.format {
        Some(Format::Json) => cfg.format = ReportFormat::Json,
        Some(Format::Table) => cfg.format = ReportFormat::Table,
        None => {}
    }
    Ok(cfg)
}

fn verify(v: &VerifyArgs) -> Result<bool, Failure> {
    let identity = match v.identity.as_str() {
        "all" => None,
        name => Some(name.parse::<Identity>()?),
    };
    let cfg = build_config(v)?;
    let reports = run(identity, &cfg)?;
    let mut buf = Vec::new();
    write_reports(&reports, cfg.format, &mut buf).expect("writing to memory");
    let written = match &v.out {
        Some(path) => {
            fs::write(path, &buf).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => io::stdout().write_all(&buf).map_err(|e| e.to_string()),
    };
    written.map_err(Failure::Io)?;
    Ok(reports.iter().all(|r| r.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute { function, args } => compute(function, args).map(|line| {
            println!("{line}");
            true
        }),
        Command::Verify(v) => verify(v),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
