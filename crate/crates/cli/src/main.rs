use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wyko_cli::commands::{self, SweepConfig};
use wyko_cli::{to_radians, CliError};
use wyko_core::sweep::SweepMode;

#[derive(Parser)]
#[command(
    name = "wyko",
    version,
    about = "Entanglement measures and WYKO Bell values for a four-qubit state family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Family2d,
    Theta1d,
}

#[derive(Subcommand)]
enum Command {
    /// Emit CSV sweep data over the family
    Sweep {
        /// Points per axis
        #[arg(long = "grid", default_value_t = 101)]
        grid: usize,
        #[arg(long, value_enum, default_value = "theta1d")]
        mode: Mode,
        /// Output file, or `-` for standard output
        #[arg(long = "out", default_value = "-")]
        out: PathBuf,
    },
    /// Run every numeric cross-check and report the maximum errors
    Verify,
    /// Show amplitudes, measures and Bell value of |ψ(θ₁,θ₂)⟩
    State {
        #[arg(long, allow_negative_numbers = true)]
        theta1: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta2: f64,
        /// Interpret angles in degrees
        #[arg(long)]
        degrees: bool,
    },
    /// Search measurement settings maximizing |⟨B⟩| for |ψ(θ)⟩
    Optimize {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Interpret the angle in degrees
        #[arg(long)]
        degrees: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Sweep { grid, mode, out } => {
            let mode = match mode {
                Mode::Family2d => SweepMode::Family2d,
                Mode::Theta1d => SweepMode::Theta1d,
            };
            let output = (out.as_os_str() != "-").then_some(out);
            commands::sweep(&SweepConfig {
                grid_size: grid,
                mode,
                output,
            })
        }
        Command::Verify => commands::verify(&mut stdout),
        Command::State {
            theta1,
            theta2,
            degrees,
        } => commands::state(
            to_radians(theta1, degrees),
            to_radians(theta2, degrees),
            &mut stdout,
        ),
        Command::Optimize {
            theta,
            restarts,
            seed,
            degrees,
        } => commands::optimize(to_radians(theta, degrees), restarts, seed, &mut stdout),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
