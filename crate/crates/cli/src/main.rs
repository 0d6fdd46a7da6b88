use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bqt_sim::config::parse_config;
use bqt_sim::presets::{run_preset, PresetId};
use bqt_sim::sweep::{run_sweep, DEFAULT_NODES};
use bqt_sim::{emit, validate, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bqt-sim",
    about = "Bidirectional teleportation sweeps over correlated noise channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    #[value(name = "closed-form")]
    ClosedForm,
    Oracle,
}

impl From<BackendArg> for bqt_core::bqt::Backend {
    fn from(value: BackendArg) -> Self {
        match value {
            BackendArg::ClosedForm => bqt_core::bqt::Backend::ClosedForm,
            BackendArg::Oracle => bqt_core::bqt::Backend::Oracle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the backend named in the config.
        #[arg(long)]
        backend: Option<BackendArg>,
        /// Quadrature nodes per axis for averaged fidelities.
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Reproduce one of the standard figures (fig2..fig9).
    Preset {
        id: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        backend: Option<BackendArg>,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Run the cross-check suite and report pass/fail per invariant.
    Validate {
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sweep {
            config,
            out,
            backend,
            nodes,
        } => {
            let text = fs::read_to_string(&config)?;
            let mut spec = parse_config(&text)?;
            if let Some(backend) = backend {
                spec.backend = backend.into();
            }
            fs::create_dir_all(&out)?;
            let table = run_sweep(&spec, nodes)?;
            let csv_path = out.join("sweep.csv");
            emit::emit_csv(&table, &csv_path)?;
            println!("wrote {}", csv_path.display());
            for column in &spec.outputs {
                let path = out.join(format!("sweep_{}.svg", column.name()));
                emit::emit_svg(&table, column.name(), &path)?;
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Preset {
            id,
            out,
            backend,
            nodes,
        } => {
            let id: PresetId = id.parse()?;
            fs::create_dir_all(&out)?;
            let files = run_preset(id, &out, backend.map(Into::into), nodes)?;
            for file in files {
                println!("wrote {}", file.display());
            }
            Ok(())
        }
        Command::Validate { nodes } => {
            let outcomes = validate::run_all(nodes);
            let mut all_passed = true;
            for outcome in &outcomes {
                let status = if outcome.passed { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", outcome.name, outcome.detail);
                all_passed &= outcome.passed;
            }
            if all_passed {
                Ok(())
            } else {
                Err(Error::Validation {
                    field: "validate".to_string(),
                    message: "one or more checks failed".to_string(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
