// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! `zeno`: reproducible runs of the Zeno gate simulator.

mod commands;
mod output;
mod params;

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use zeno_core::gate::ProtocolFamily;

use crate::commands::{FermionArgs, GateChoice};
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "zeno", version, about = "Zeno-suppressed photonic gate simulator")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Discrete,
    Absorption,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single photon oscillating between the cores: P1(t).
    Rabi {
        #[arg(long, default_value_t = 2.0 * PI)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// One photon per core with no suppression: P11(t).
    Hom {
        #[arg(long, default_value_t = PI)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Error probability against measurement count or matched absorption.
    ZenoSweep {
        #[arg(long, value_enum, default_value = "discrete")]
        mode: Mode,
        /// Comma-separated list of N.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
    },
    /// Extracted two-qubit map compared with √SWAP′.
    #[command(group(ArgGroup::new("protocol").required(true).args(["measurements", "tau_d", "matched"])))]
    Gate {
        /// Discrete protocol with this many measurements.
        #[arg(long)]
        measurements: Option<u32>,
        /// Absorption protocol with this decay time (units of ħ/ε).
        #[arg(long)]
        tau_d: Option<f64>,
        /// Absorption protocol matched to N measurements.
        #[arg(long)]
        matched: Option<f64>,
    },
    /// Fermion equivalence, dressed anti-commutators and the statistics no-go check.
    FermionReport {
        #[arg(long, default_value_t = 0.01)]
        tau_d: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long = "n", default_value_t = 1000)]
        measurements: u32,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = FRAC_PI_4)]
        time: f64,
    },
    /// Two-photon absorption rate from a parameter file.
    Rate {
        #[arg(long)]
        params: PathBuf,
    },
    /// Logical failure of the two-photon encoding against physical failure.
    Threshold {
        /// Comma-separated physical failure probabilities in (0, 1).
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::Gate { .. } | Command::FermionReport { .. } | Command::Rate { .. } => Format::Json,
            _ => Format::Csv,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let text = match &cli.command {
        Command::Rabi { t_max, steps } => commands::rabi(*t_max, *steps, format)?,
        Command::Hom { t_max, steps } => commands::hom(*t_max, *steps, format)?,
        Command::ZenoSweep { mode, n } => {
            let family = match mode {
                Mode::Discrete => ProtocolFamily::Discrete,
                Mode::Absorption => ProtocolFamily::Absorption,
            };
            commands::zeno_sweep(family, n, format)?
        }
        Command::Gate {
            measurements,
            tau_d,
            matched,
        } => {
            let choice = match (measurements, tau_d, matched) {
                (Some(n), _, _) => GateChoice::Measurements(*n),
                (_, Some(t), _) => GateChoice::TauD(*t),
                (_, _, Some(m)) => GateChoice::Matched(*m),
                _ => unreachable!("clap requires one protocol"),
            };
            commands::gate(choice, format)?
        }
        Command::FermionReport {
            tau_d,
            tau,
            measurements,
            epsilon,
            time,
        } => commands::fermion_report(
            &FermionArgs {
                tau_d: *tau_d,
                tau: *tau,
                measurements: *measurements,
                epsilon: *epsilon,
                time: *time,
            },
            format,
        )?,
        Command::Rate { params } => commands::rate(params, format)?,
        Command::Threshold { p, trials, seed } => commands::threshold(p, *trials, *seed, format)?,
    };
    output::emit(&text, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
