use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cpog_cli::{DegreeMethod, Outcome, SpectrumMethod, VerifyBounds};
use cpog_core::graph::ExportFormat;
use cpog_core::verify::VerifyTarget;
use cpog_core::DEFAULT_CAP;

/// Co-prime order graphs of finite abelian and dihedral groups.
#[derive(Parser)]
#[command(name = "cpog", version)]
struct Cli {
    /// Largest group order any command will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, canonical decomposition and element-order profile.
    Describe { spec: String },
    /// Degree of each element-order class.
    Degrees {
        spec: String,
        #[arg(long, value_enum, default_value_t = DegreeArg::Both)]
        method: DegreeArg,
    },
    /// Laplacian spectrum, closed form and/or exact.
    Spectrum {
        spec: String,
        #[arg(long, value_enum, default_value_t = SpectrumArg::Both)]
        method: SpectrumArg,
    },
    /// Write the graph as DOT, CSV edge list or JSON.
    Export {
        spec: String,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(short, long)]
        output: PathBuf,
        /// Attach the certified closed-form spectrum (JSON only).
        #[arg(long)]
        with_spectrum: bool,
    },
    /// Sweep a range of groups against brute force or exact certificates.
    Verify {
        #[arg(value_enum)]
        target: TargetArg,
        /// Largest group order (degrees-abelian, default 200) or graph size (spectra, default 750).
        #[arg(long)]
        max_order: Option<u64>,
        /// Largest rotation count for degrees-dihedral (default 100).
        #[arg(long)]
        max_n: Option<u64>,
        /// Largest p and q for block (default 30).
        #[arg(long)]
        max_pq: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeArg {
    Formula,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumArg {
    ClosedForm,
    Exact,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    DegreesAbelian,
    DegreesDihedral,
    Spectra,
    Block,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cap = cli.cap;
    match cli.command {
        Command::Describe { spec } => cpog_cli::describe(&spec, cap),
        Command::Degrees { spec, method } => {
            let method = match method {
                DegreeArg::Formula => DegreeMethod::Formula,
                DegreeArg::Brute => DegreeMethod::Brute,
                DegreeArg::Both => DegreeMethod::Both,
            };
            cpog_cli::degrees(&spec, method, cap)
        }
        Command::Spectrum { spec, method } => {
            let method = match method {
                SpectrumArg::ClosedForm => SpectrumMethod::ClosedForm,
                SpectrumArg::Exact => SpectrumMethod::Exact,
                SpectrumArg::Both => SpectrumMethod::Both,
            };
            cpog_cli::spectrum(&spec, method, cap)
        }
        Command::Export {
            spec,
            format,
            output,
            with_spectrum,
        } => {
            let format = match format {
                FormatArg::Dot => ExportFormat::Dot,
                FormatArg::Csv => ExportFormat::Csv,
                FormatArg::Json => ExportFormat::Json,
            };
            cpog_cli::export(&spec, format, &output, with_spectrum, cap)
        }
        Command::Verify {
            target,
            max_order,
            max_n,
            max_pq,
        } => {
            let target = match target {
                TargetArg::DegreesAbelian => VerifyTarget::DegreesAbelian,
                TargetArg::DegreesDihedral => VerifyTarget::DegreesDihedral,
                TargetArg::Spectra => VerifyTarget::Spectra,
                TargetArg::Block => VerifyTarget::Block,
            };
            let bounds = VerifyBounds {
                max_order,
                max_n,
                max_pq,
            };
            cpog_cli::verify(target, bounds, cap)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
