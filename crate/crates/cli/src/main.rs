//! `cartanchan`: build Cartan operator bases, certify the structure-constant
//! and projector identities, compute Choi spectra and CP/PPT regions, and run
//! the composition check behind the PPT-squared statement.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod args;
mod certify;
mod commands;
mod output;

use args::{ChannelArgs, CommonArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "cartanchan",
    version,
    about = "Cartan-covariant channel toolkit",
    after_help = "The brute-force structure-constant suites cap at D=8 by default; \
                  set CARTANCHAN_MAX_DIM to raise the cap."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export Cartan-partitioned operator bases as JSON.
    Basis(CommonArgs),
    /// Verify the structure-constant and projector identities.
    VerifyLiealg(CommonArgs),
    /// Emit the Choi matrix with its analytic and numeric spectrum.
    Choi(ChannelArgs),
    /// Emit the analytic/numeric Choi spectrum and CP/PPT verdicts.
    Spectrum(ChannelArgs),
    /// Emit CP, PPT and WEB region vertices (CSV per region, JSON summary).
    Region(CommonArgs),
    /// Compose extreme PPT channels and test WEB membership.
    Ppt2(CommonArgs),
    /// Emit the polygon data behind the three region figures.
    EmitFigures(CommonArgs),
    /// Run every verification section and write one certification report.
    CheckAll(CommonArgs),
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Basis(a) => {
            let cfg = RunConfig::from_common(&a, &[4, 8])?;
            commands::cmd_basis(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyLiealg(a) => {
            let cfg = RunConfig::from_common(&a, &[2, 3, 4, 5, 6, 7, 8])?;
            let pass = commands::cmd_verify_liealg(&cfg)?;
            Ok(exit_for(pass))
        }
        Command::Choi(a) => {
            commands::cmd_channel(&a, true)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum(a) => {
            commands::cmd_channel(&a, false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Region(a) => {
            let cfg = RunConfig::from_common(&a, &[4, 8])?;
            commands::cmd_region(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ppt2(a) => {
            let cfg = RunConfig::from_common(&a, &[5, 6, 8, 12, 16])?;
            let pass = commands::cmd_ppt2(&cfg)?;
            Ok(exit_for(pass))
        }
        Command::EmitFigures(a) => {
            let cfg = RunConfig::from_common(&a, &[4, 8, 16, 32])?;
            commands::cmd_emit_figures(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckAll(a) => {
            let cfg = RunConfig::from_common(&a, &[2, 3, 4, 5, 6, 7, 8])?;
            let pass = certify::cmd_check_all(&cfg)?;
            Ok(exit_for(pass))
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
