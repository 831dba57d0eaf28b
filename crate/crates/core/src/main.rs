use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use biwave::cli::{self, CliError, Fault, RunConfig, VerifyArgs};

#[derive(Parser)]
#[command(name = "biwave", version, about = "Build and verify solutions of u_xxxx - 2c u_xxyy + u_yyyy = 0")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Cayley,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebra constants, idempotents and characteristic roots for c.
    Info {
        #[arg(short = 'c', long = "c", allow_hyphen_values = true)]
        c: f64,
    },
    /// Sample the configured solution and write it as CSV.
    Synth {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a synthesized or supplied grid against the biwave equation.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV grid with header x,y,u.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Parameter c (required with --input unless --config is also given).
        #[arg(short = 'c', long = "c", allow_hyphen_values = true)]
        c: Option<f64>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Number of grid levels for the convergence-order check.
        #[arg(long)]
        refine: Option<u32>,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

fn run(args: Args) -> Result<u8, CliError> {
    match args.command {
        Command::Info { c } => {
            print!("{}", cli::cmd_info(c)?);
            Ok(0)
        }
        Command::Synth { config, output } => {
            let cfg = RunConfig::load(&config)?;
            print!("{}", cli::cmd_synth(&cfg, &output)?);
            Ok(0)
        }
        Command::Verify { config, input, c, tolerance, refine } => {
            let config = config.as_deref().map(RunConfig::load).transpose()?;
            let report = cli::cmd_verify(&VerifyArgs { config, input, c, tolerance, refine })?;
            print!("{}", report.text);
            Ok(report.exit_code())
        }
        Command::Selftest { seed, inject_fault } => {
            let fault = match inject_fault {
                Some(FaultArg::Cayley) => Fault::Cayley,
                None => Fault::None,
            };
            let report = cli::cmd_selftest(seed, fault);
            print!("{}", report.text);
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
