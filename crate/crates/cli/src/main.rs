use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use planar_dunkl_cli::{
    constants_table, constants_to_csv, constants_to_text, harmonics_table, harmonics_to_csv, harmonics_to_text,
    outcomes_to_csv, outcomes_to_text, parse_suites, verify, Format, KappaArg, Perturbation, RunConfig,
};

/// Exact planar harmonics, monogenics and structure constants for type-A
/// Dunkl operators.
#[derive(Parser)]
#[command(name = "planar-dunkl", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit h_n^+ and h_n^- for n <= max-degree.
    Harmonics(Common),
    /// Emit norms and sphere factors of h_n^+ and h_n^-.
    Constants(Common),
    /// Run verification suites; exits nonzero on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long = "n-vars", default_value_t = 3)]
    n_vars: usize,
    /// `symbolic` or an exact rational such as `-7/3`.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    kappa: KappaArg,
    #[arg(long = "max-degree", env = "PLANAR_DUNKL_MAX_DEGREE", default_value_t = 6)]
    max_degree: u32,
    /// Defaults to json for tables and text for verify.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Perturb one g polynomial, `kind:n:delta` (for testing the suites).
    #[arg(long = "perturb-g", hide = true)]
    perturb_g: Option<Perturbation>,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            n_vars: self.n_vars,
            kappa: self.kappa.clone(),
            max_degree: self.max_degree,
            perturb: self.perturb_g.clone(),
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::Harmonics(c) => {
            let t = harmonics_table(&c.config())?;
            let text = match c.format.unwrap_or(Format::Json) {
                Format::Json => json(&t)?,
                Format::Csv => harmonics_to_csv(&t)?,
                Format::Text => harmonics_to_text(&t)?,
            };
            c.emit(&text)?;
            Ok(t.failures() == 0)
        }
        Command::Constants(c) => {
            let t = constants_table(&c.config())?;
            let text = match c.format.unwrap_or(Format::Json) {
                Format::Json => json(&t)?,
                Format::Csv => constants_to_csv(&t)?,
                Format::Text => constants_to_text(&t)?,
            };
            c.emit(&text)?;
            Ok(t.failures() == 0)
        }
        Command::Verify { common: c, suite } => {
            let suites = parse_suites(&suite)?;
            let out = verify(&c.config(), &suites)?;
            let text = match c.format.unwrap_or(Format::Text) {
                Format::Json => json(&out)?,
                Format::Csv => outcomes_to_csv(&out)?,
                Format::Text => outcomes_to_text(&out),
            };
            c.emit(&text)?;
            Ok(out.iter().all(|o| o.passed))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
