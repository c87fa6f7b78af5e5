//! `naimark` — build and verify Naimark extensions from JSON POVM files.
//!
//! Exit status: 0 on success, 1 when a verification fails (the output is
//! still written), 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use naimark::io::{extension_to_json, povm_to_json, read_extension, read_povm, to_json};
use naimark::{
    build_extension_with, builtin_povm, random_povm, verify_extension, BuildOptions, FactorMode, ToleranceConfig,
};

/// Seed used when `build` checks its own output.
const SELF_CHECK_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "naimark", version, about = "Naimark extensions of finite POVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an extension from a POVM file and check it.
    Build {
        povm: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "thin")]
        mode: FactorMode,
        /// Verification tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Keep the raw dimension instead of padding to a multiple of D.
        #[arg(long)]
        no_pad: bool,
        /// Append the complement projector so the projectors sum to I.
        #[arg(long)]
        complete_pvm: bool,
        /// Born-rule samples for the self-check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Verify an extension file against a POVM file.
    Verify {
        extension: PathBuf,
        #[arg(long)]
        povm: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the report here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write one of the builtin example POVMs.
    Example {
        name: String,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        f: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a seeded random POVM with prescribed element ranks.
    RandomPovm {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        elements: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Failure {
    Verification,
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: naimark::error::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Build {
            povm,
            output,
            mode,
            tol,
            no_pad,
            complete_pvm,
            samples,
        } => {
            let cfg = ToleranceConfig::default().with_verify_tol(tol)?;
            let parsed = with_path(&povm, read_povm(&povm, &cfg))?;
            let options = BuildOptions {
                mode,
                pad: !no_pad,
                complete_pvm,
            };
            let (ext, _) = build_extension_with(&parsed, &options, &cfg)?;
            write_file(&output, &extension_to_json(&ext))?;
            let report = verify_extension(&parsed, &ext, &cfg, samples, SELF_CHECK_SEED)?;
            eprintln!(
                "built {} projectors, N = {} (raw {}), bands {:?}",
                ext.projectors.len(),
                ext.total_dim,
                ext.raw_dim(),
                ext.band_widths
            );
            if !report.passed() {
                eprintln!("self-check failed: {}", report.summary());
                return Err(Failure::Verification);
            }
            Ok(())
        }
        Command::Verify {
            extension,
            povm,
            samples,
            seed,
            tol,
            output,
        } => {
            let cfg = ToleranceConfig::default().with_verify_tol(tol)?;
            let ext = with_path(&extension, read_extension(&extension))?;
            let parsed = with_path(&povm, read_povm(&povm, &cfg))?;
            let report = verify_extension(&parsed, &ext, &cfg, samples, seed)?;
            let json = to_json(&report);
            match output {
                Some(path) => write_file(&path, &json)?,
                None => println!("{json}"),
            }
            eprintln!("{}", report.summary());
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Example { name, z, f, output } => {
            let stray = match name.as_str() {
                "roulette-xz" => f.map(|_| "--f"),
                "roulette-diag" => z.map(|_| "--z"),
                _ => None,
            };
            if let Some(flag) = stray {
                return Err(Failure::Input(format!("`{name}` does not take {flag}")));
            }
            let params: Vec<f64> = z.into_iter().chain(f).collect();
            let povm = builtin_povm(&name, &params)?;
            write_file(&output, &povm_to_json(&povm))
        }
        Command::RandomPovm {
            dim,
            elements,
            ranks,
            seed,
            output,
        } => {
            let povm = random_povm(dim, elements, &ranks, seed)?;
            write_file(&output, &povm_to_json(&povm))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
