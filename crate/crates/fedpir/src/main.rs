use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fedpir::commands::{self, SimulateOptions};
use fedpir::CliError;

#[derive(Parser)]
#[command(name = "fedpir", version, about = "Objective-hiding federated one-shot learning: simulation, rates and audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the protocol and write transcript.csv and result.csv
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Mask the answers so the federator learns only the desired sums
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Closed-form sharing rate, PIR rate and total cost of a config
    Rates {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write figure CSVs (fig3.csv to fig7.csv)
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=7))]
        figure: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        /// Inclusive replication range `a..b`; ignored by figure 7
        #[arg(long)]
        rho: Option<String>,
    },
    /// Exhaustive privacy and correctness audits
    Audit {
        /// Audit this micro config instead of the built-in suite
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also run the deliberately broken variants
        #[arg(long)]
        negative_controls: bool,
    },
    /// Print the parameters derived from a config
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (text, ok) = match cli.command {
        Command::Simulate {
            config,
            out,
            symmetric,
            seed,
        } => (
            commands::simulate(&SimulateOptions {
                config: &config,
                out: &out,
                symmetric,
                seed,
            })?,
            true,
        ),
        Command::Rates { config, out } => (commands::rates(&config, out.as_deref())?, true),
        Command::Sweep { figure, out, rho } => {
            let rhos = rho.as_deref().map(commands::parse_range).transpose()?;
            (commands::sweep(figure, &out, rhos)?, true)
        }
        Command::Audit {
            config,
            negative_controls,
        } => {
            let ok = commands::audit(config.as_deref(), negative_controls, &mut std::io::stdout().lock())?;
            (String::new(), ok)
        }
        Command::Validate { config } => (commands::validate(&config)?, true),
    };
    print!("{text}");
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
