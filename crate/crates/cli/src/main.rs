//! `tnz`: evaluate T_n(z), print tables and expansions, emit b-files and run
//! the cross-check suite.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 domain error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use tn_core::check::{run_checks, CheckConfig};
use tn_core::exact::format_rational;
use tn_core::oeis::{emit_bfile, generate, parse_bfile, SequenceId};
use tn_core::{
    parse_rational, tn_direct, tn_polynomial, tn_power_sum, tn_recurrence, tn_shifted_sum,
    upper_gamma_numeric, ExactRational,
};

#[derive(Parser, Debug)]
#[command(
    name = "tnz",
    version,
    about = "Exact evaluation of the T_n(z) polynomial family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate T_n(z) by one route.
    Eval {
        n: u32,
        /// Rational argument, "p" or "p/q".
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = Method::Power)]
        method: Method,
    },
    /// Print "n T_n(z)" for n = 0..=n_max.
    Table {
        #[arg(allow_hyphen_values = true)]
        z: String,
        n_max: u32,
    },
    /// Print the coefficients of T_n in powers of (z - center).
    Poly {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        center: String,
    },
    /// Emit a b-file for one of the named sequences.
    Bfile {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        count: usize,
        /// Write to this path instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the upper incomplete Gamma function Γ(a, x).
    Gamma {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Run every cross-route identity over a window of (n, z).
    ///
    /// The window may also be given positionally: `check N_MAX Z_MIN Z_MAX`.
    Check {
        #[arg(long = "n-max", default_value_t = 20)]
        n_max: u32,
        #[arg(long = "z-min", default_value_t = -30, allow_hyphen_values = true)]
        z_min: i64,
        #[arg(long = "z-max", default_value_t = 30, allow_hyphen_values = true)]
        z_max: i64,
        #[arg(value_name = "N_MAX", conflicts_with = "n_max")]
        n_max_pos: Option<u32>,
        #[arg(
            value_name = "Z_MIN",
            allow_hyphen_values = true,
            requires = "z_max_pos",
            conflicts_with = "z_min"
        )]
        z_min_pos: Option<i64>,
        #[arg(
            value_name = "Z_MAX",
            allow_hyphen_values = true,
            conflicts_with = "z_max"
        )]
        z_max_pos: Option<i64>,
        /// Derangement reference b-file to use instead of the vendored one.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Rec,
    Power,
    Shifted,
    Gamma,
}

enum Failure {
    Usage(String),
    Domain(String),
    Check,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Check => 1,
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
        }
    }
}

fn rational_arg(text: &str) -> Result<ExactRational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_eval(n: u32, z: &str, method: Method) -> Result<(), Failure> {
    let z = rational_arg(z)?;
    let value = match method {
        Method::Direct => tn_direct(n, &ExactRational::from_integer(0.into()), &z),
        Method::Rec => tn_recurrence(n, &z),
        Method::Power => tn_power_sum(n, &z),
        Method::Shifted => tn_shifted_sum(n, &z),
        Method::Gamma => return eval_gamma(n, &z),
    };
    println!("{}", format_rational(&value));
    Ok(())
}

fn eval_gamma(n: u32, z: &ExactRational) -> Result<(), Failure> {
    let shifted = z + ExactRational::from_integer(n.into());
    let x = shifted.to_f64().unwrap_or(f64::NAN);
    if x.is_nan() || x <= 0.0 {
        return Err(Failure::Domain(format!(
            "gamma route needs z + n > 0, got {}",
            format_rational(&shifted)
        )));
    }
    let scale = x.exp();
    let gamma =
        upper_gamma_numeric(f64::from(n) + 1.0, x).map_err(|e| Failure::Domain(e.to_string()))?;
    let value = scale * gamma.value;
    let exact = tn_power_sum(n, z).to_f64().unwrap_or(f64::INFINITY);
    if !value.is_finite() || !exact.is_finite() {
        return Err(Failure::Domain("value exceeds double range".to_string()));
    }
    let deviation = ((value - exact) / exact).abs();
    println!("{value}");
    println!("rel_dev {deviation:e}");
    Ok(())
}

fn cmd_table(z: &str, n_max: u32) -> Result<(), Failure> {
    let z = rational_arg(z)?;
    for n in 0..=n_max {
        println!("{n} {}", format_rational(&tn_power_sum(n, &z)));
    }
    Ok(())
}

fn cmd_poly(n: u32, center: &str) -> Result<(), Failure> {
    let center = rational_arg(center)?;
    let poly = tn_polynomial(n, &center);
    let line: Vec<String> = poly.coeffs().iter().map(format_rational).collect();
    println!("{}", line.join(" "));
    Ok(())
}

fn cmd_bfile(seq: &str, count: usize, out: Option<&PathBuf>) -> Result<(), Failure> {
    let id: SequenceId = seq
        .parse()
        .map_err(|e: tn_core::oeis::OeisError| Failure::Usage(e.to_string()))?;
    if count == 0 {
        return Err(Failure::Domain("--count must be at least 1".to_string()));
    }
    let text = emit_bfile(&generate(id, count));
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gamma(a: f64, x: f64) -> Result<(), Failure> {
    let g = upper_gamma_numeric(a, x).map_err(|e| Failure::Domain(e.to_string()))?;
    println!("{}", g.value);
    println!("rel_err_bound {:e}", g.rel_err_bound);
    Ok(())
}

fn cmd_check(
    n_max: u32,
    z_min: i64,
    z_max: i64,
    reference: Option<&PathBuf>,
) -> Result<(), Failure> {
    if z_min > z_max {
        return Err(Failure::Usage(format!(
            "--z-min {z_min} exceeds --z-max {z_max}"
        )));
    }
    let mut config = CheckConfig::new(n_max, z_min, z_max);
    if let Some(path) = reference {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let table =
            parse_bfile(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        config.derangement_reference = Some(table);
    }
    let report = run_checks(&config);
    for suite in &report.suites {
        println!("{suite}");
        for failure in &suite.failures {
            println!("  mismatch: {failure}");
        }
    }
    println!(
        "summary: {} suites, {} cells, {} failures",
        report.suites.len(),
        report.total_cells(),
        report.total_failures()
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval { n, z, method } => cmd_eval(*n, z, *method),
        Command::Table { z, n_max } => cmd_table(z, *n_max),
        Command::Poly { n, center } => cmd_poly(*n, center),
        Command::Bfile { seq, count, out } => cmd_bfile(seq, *count, out.as_ref()),
        Command::Gamma { a, x } => cmd_gamma(*a, *x),
        Command::Check {
            n_max,
            z_min,
            z_max,
            n_max_pos,
            z_min_pos,
            z_max_pos,
            reference,
        } => cmd_check(
            n_max_pos.unwrap_or(*n_max),
            z_min_pos.unwrap_or(*z_min),
            z_max_pos.unwrap_or(*z_max),
            reference.as_ref(),
        ),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Domain(msg) => eprintln!("error: {msg}"),
                Failure::Check => eprintln!("check failed"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
