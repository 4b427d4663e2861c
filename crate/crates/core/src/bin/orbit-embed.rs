use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbit_embed::cli::{run_file, Command, Overrides};
use orbit_embed::Error;

#[derive(Parser)]
#[command(
    name = "orbit-embed",
    version,
    about = "Invariant embeddings for cyclic group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the separating monomial set as JSON
    Monomials(Args),
    /// Embed the signals named in the config
    Embed(Args),
    /// Run the verification suites; exits nonzero if any fails
    Verify(Args),
    /// Lower-Lipschitz sweep with a CSV table for plotting
    Sweep(Args),
    /// Regenerate golden values from the reference oracles
    Fixtures(Args),
}

#[derive(clap::Args, Clone)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Monomials(a) => (Command::Monomials, a),
        Cmd::Embed(a) => (Command::Embed, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Sweep(a) => (Command::Sweep, a),
        Cmd::Fixtures(a) => (Command::Fixtures, a),
    };
    let overrides = Overrides {
        seed: args.seed,
        out: args.out,
    };
    match run_file(command, &args.config, &overrides) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("orbit-embed: {e}");
            ExitCode::from(match e {
                Error::Usage(_) | Error::Parameter(_) | Error::InvalidForm(_) | Error::Empty(_) => {
                    64
                }
                Error::Data { .. } | Error::Dimension { .. } | Error::Input(_) | Error::Json(_) => {
                    65
                }
                Error::Hypothesis(_) => 66,
                Error::Io(_) => 74,
            })
        }
    }
}
