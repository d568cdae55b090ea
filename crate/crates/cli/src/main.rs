//! `hcyc`: exact Hopf-cyclic computations on JSON scenario files.
//!
//! Exit status 0 when every check passes, 1 when a certification or
//! validation fails, 2 on parse, budget or usage errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopf_cyclic::builders::DEFAULT_MAX_BASIS;
use hopf_cyclic::io::parse_scenario;
use hopf_cyclic::morita::DEFAULT_MAX_R;
use hopf_cyclic::{Error, Q};

use output::Output;

#[derive(Parser)]
#[command(name = "hcyc", version, about = "Exact Hopf-cyclic cohomology of small categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest basis any builder may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BASIS)]
    max_basis: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ComplexKind {
    Cm,
    Nerve,
    HopfCat,
    Coalgebra,
    Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CharKind {
    Gamma,
    GammaM,
    Psi,
}

/// `pair` uses `^σk_δ` built from the modular pair, `sayd` the file's SAYD section.
#[derive(Clone, Copy, ValueEnum)]
pub enum Coefficients {
    Pair,
    Sayd,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable validator.
    Validate { file: PathBuf },
    /// Betti table and representatives of a cocyclic module.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum)]
        complex: ComplexKind,
        /// Truncation N; degrees 0..N-1 are reported.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Coefficients::Pair)]
        coefficients: Coefficients,
    },
    /// Basis of σ-twisted δ-invariant traces and their degree-zero cocycles.
    Traces { file: PathBuf },
    /// Certify a characteristic map up to the given degree.
    Charmap {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: CharKind,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Cup products of cyclic cocycles of the category with itself (H = k).
    Cup {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// Compare D with its linearization D⊗M_r.
    Morita {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Dimensions and certification of the universal DG semicategory.
    Omega {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Inner automorphism checks and the vanishing criterion.
    Vanish {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Validate { file }
            | Command::Cohomology { file, .. }
            | Command::Traces { file }
            | Command::Charmap { file, .. }
            | Command::Cup { file, .. }
            | Command::Morita { file, .. }
            | Command::Omega { file, .. }
            | Command::Vanish { file, .. } => file,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::Traces { .. } => "traces",
            Command::Charmap { .. } => "charmap",
            Command::Cup { .. } => "cup",
            Command::Morita { .. } => "morita",
            Command::Omega { .. } => "omega",
            Command::Vanish { .. } => "vanish",
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> hopf_cyclic::Result<()> {
    let path = cli.command.file();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let sc = parse_scenario::<Q>(&text)?;
    let b = cli.max_basis;
    match &cli.command {
        Command::Validate { .. } => commands::validate(&sc, out),
        Command::Cohomology { complex, max_degree, coefficients, .. } => {
            commands::cohomology_cmd(&sc, *complex, *max_degree, *coefficients, b, out)?
        }
        Command::Traces { .. } => commands::traces(&sc, b, out)?,
        Command::Charmap { kind, degree, .. } => commands::charmap(&sc, *kind, *degree, b, out)?,
        Command::Cup { p, q, .. } => commands::cup(&sc, *p, *q, b, out)?,
        Command::Morita { r, max_degree, .. } => {
            if *r > DEFAULT_MAX_R {
                out.notes.push(format!("r = {r} exceeds the tested range 1..={DEFAULT_MAX_R}"));
            }
            commands::morita(&sc, *r, *max_degree, b, out)?
        }
        Command::Omega { max_degree, .. } => commands::omega_cmd(&sc, *max_degree, b, out)?,
        Command::Vanish { max_degree, .. } => commands::vanish(&sc, *max_degree, b, out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = cli.command.file().file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut out = Output::new(cli.command.name(), &input);
    let code = match run(&cli, &mut out) {
        Ok(()) => {
            if out.ok() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("hcyc: {e}");
            match e {
                Error::Precondition(_) | Error::NotDescending(_) => {
                    out.failed = true;
                    out.notes.push(e.to_string());
                    1
                }
                _ => return ExitCode::from(2),
            }
        }
    };
    let out = out.finish();
    let text = match cli.format {
        Format::Json => out.to_json(),
        Format::Table => out.to_table(),
    };
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("hcyc: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
