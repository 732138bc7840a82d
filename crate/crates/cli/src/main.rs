// Copyright 2026 The rsp-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `rsp`: run, audit, and check remote state preparation protocols.
//!
//! Exit codes: 0 success, 1 audit discrepancy or failed delivery,
//! 2 usage error, 3 unavailable protocol stage.

mod params;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use rsp_core::bases::check_bases;
use rsp_core::corrections::{audit_tables, AuditProtocol};
use rsp_core::protocol::{self, ProtocolId, RunMode};
use rsp_core::{Angles2, RspError};

use params::ParamFile;

/// Directory used for output files when `--output` is not given.
const OUTPUT_DIR_ENV: &str = "RSP_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
}

impl From<RspError> for CliError {
    fn from(e: RspError) -> Self {
        match e {
            RspError::StageUnavailable(msg) => CliError::Unavailable(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Unavailable(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "rsp", version, about = "Two-step remote state preparation over GHZ channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a protocol and emit its traces.
    Run(RunArgs),
    /// Cross-check the reference correction tables against the oracle.
    Audit(AuditArgs),
    /// Orthonormality sweep over every basis used at one dimension.
    CheckBases(CheckBasesArgs),
    /// Qubit protocol with the measurement stages swapped.
    StageOrder(StageOrderArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProtocolArg {
    Qubit,
    D4,
    D8,
}

impl From<ProtocolArg> for ProtocolId {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Qubit => ProtocolId::Qubit,
            ProtocolArg::D4 => ProtocolId::D4,
            ProtocolArg::D8 => ProtocolId::D8,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AuditProtocolArg {
    Qubit,
    D4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sample,
    Enumerate,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; defaults to standard output (or $RSP_OUTPUT_DIR when set).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum)]
    protocol: ProtocolArg,
    /// JSON parameter file (theta/phi, gamma1..3/alpha1..3, or thetas/phis).
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    gamma3: Option<f64>,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long)]
    alpha2: Option<f64>,
    #[arg(long)]
    alpha3: Option<f64>,
    /// Eight comma-separated magnitude angles (d8).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    thetas: Option<Vec<f64>>,
    /// Eight comma-separated phases, the first 0 (d8).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    phis: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Required in sample mode; ignored when enumerating.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long, value_enum)]
    protocol: AuditProtocolArg,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CheckBasesArgs {
    #[arg(long, value_parser = ["2", "4", "8"])]
    d: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct StageOrderArgs {
    #[arg(long)]
    theta: f64,
    #[arg(long)]
    phi: f64,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rsp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Audit(args) => cmd_audit(args),
        Command::CheckBases(args) => cmd_check_bases(args),
        Command::StageOrder(args) => cmd_stage_order(args),
    }
}

fn cmd_run(args: RunArgs) -> Result<u8, CliError> {
    let protocol = ProtocolId::from(args.protocol);
    let file = match &args.params {
        Some(path) => ParamFile::load(path)?,
        None => ParamFile::default(),
    };
    let flags = ParamFile {
        theta: args.theta,
        phi: args.phi,
        gamma1: args.gamma1,
        gamma2: args.gamma2,
        gamma3: args.gamma3,
        alpha1: args.alpha1,
        alpha2: args.alpha2,
        alpha3: args.alpha3,
        thetas: args.thetas,
        phis: args.phis,
    };
    let params = file.merge(flags).into_parameters(protocol)?;
    let mode = match (args.mode, args.seed) {
        (ModeArg::Enumerate, _) => RunMode::Enumerate,
        (ModeArg::Sample, Some(seed)) => RunMode::Sample(seed),
        (ModeArg::Sample, None) => return Err(CliError::Usage("--mode sample requires --seed".into())),
    };
    let traces = protocol::run(&params, mode)?;
    let text = match args.out.format {
        Format::Json => to_json(&traces),
        Format::Text => render::traces(&traces),
    };
    emit(&args.out, &format!("run-{}", protocol.as_str()), &text)?;
    Ok(if traces.iter().all(|t| t.succeeded()) { 0 } else { 1 })
}

fn cmd_audit(args: AuditArgs) -> Result<u8, CliError> {
    let (protocol, label) = match args.protocol {
        AuditProtocolArg::Qubit => (AuditProtocol::Qubit, "qubit"),
        AuditProtocolArg::D4 => (AuditProtocol::D4, "d4"),
    };
    let report = audit_tables(protocol, args.samples, args.seed)?;
    let text = match args.out.format {
        Format::Json => to_json(&report),
        Format::Text => render::audit(&report),
    };
    emit(&args.out, &format!("audit-{label}"), &text)?;
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn cmd_check_bases(args: CheckBasesArgs) -> Result<u8, CliError> {
    let d: usize = args.d.parse().expect("restricted by the value parser");
    let report = check_bases(d, args.samples, args.seed)?;
    let text = match args.out.format {
        Format::Json => to_json(&report),
        Format::Text => render::bases(&report),
    };
    emit(&args.out, &format!("check-bases-d{d}"), &text)?;
    if !report.phase_passed() {
        return Ok(1);
    }
    if !report.theta_passed() {
        return Err(CliError::Unavailable(format!(
            "d={d} magnitude-stage basis failed its orthonormality sweep"
        )));
    }
    Ok(0)
}

fn cmd_stage_order(args: StageOrderArgs) -> Result<u8, CliError> {
    let a = Angles2::new(args.theta, args.phi)?;
    let report = protocol::stage_order_experiment(&a)?;
    let text = match args.out.format {
        Format::Json => to_json(&report),
        Format::Text => render::stage_order(&report),
    };
    emit(&args.out, "stage-order", &text)?;
    Ok(0)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(out: &OutputArgs, stem: &str, text: &str) -> Result<(), CliError> {
    let path = out.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|dir| {
            let ext = match out.format {
                Format::Json => "json",
                Format::Text => "txt",
            };
            PathBuf::from(dir).join(format!("{stem}.{ext}"))
        })
    });
    let written = match &path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| {
        let target = path.map(|p| p.display().to_string()).unwrap_or_else(|| "stdout".into());
        CliError::Usage(format!("cannot write {target}: {e}"))
    })
}
