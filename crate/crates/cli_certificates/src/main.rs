//! `jetcert`: construct and check jet-differential certificates and run the
//! verification suites.

use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use cli_certificates::{
    cmd_check, cmd_construct, cmd_logpole, cmd_nevanlinna, cmd_verify_identities, ConstructMode, Outcome,
    Overrides, Result, RunConfig,
};

#[derive(Parser)]
#[command(name = "jetcert", version, about = "Jet-differential certificates and verification suites")]
struct Cli {
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact identity suites on the grid n <= --n, delta <= --delta, k <= --max-k.
    VerifyIdentities {
        #[command(flatten)]
        flags: Overrides,
    },
    /// Build a certificate for a Fermat or given hypersurface.
    Construct {
        #[command(flatten)]
        flags: Overrides,
        /// Search the smallest Fermat degree with a nonzero solution.
        #[arg(long)]
        search: bool,
        /// Use the smallest power of df/dx1 clearing the denominators.
        #[arg(long)]
        minimal_power: bool,
    },
    /// Re-verify a certificate file given by --input.
    Check {
        #[command(flatten)]
        flags: Overrides,
    },
    /// Log-pole rewrites, the Cartan construction and the direct image.
    Logpole {
        #[command(flatten)]
        flags: Overrides,
    },
    /// Characteristic functions and comparison reports.
    Nevanlinna {
        #[command(flatten)]
        flags: Overrides,
    },
}

fn defaults(command: &Command) -> Overrides {
    match command {
        Command::VerifyIdentities { .. } => Overrides { n: Some(3), delta: Some(5), ..Overrides::default() },
        _ => Overrides::default(),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = cli.config.as_deref().map(Overrides::from_file).transpose()?;
    let defaults = defaults(&cli.command);
    match cli.command {
        Command::VerifyIdentities { flags } => cmd_verify_identities(&RunConfig::resolve(flags, file, defaults)?),
        Command::Construct { flags, search, minimal_power } => {
            cmd_construct(&RunConfig::resolve(flags, file, defaults)?, ConstructMode { search, minimal_power })
        }
        Command::Check { flags } => cmd_check(&RunConfig::resolve(flags, file, defaults)?),
        Command::Logpole { flags } => cmd_logpole(&RunConfig::resolve(flags, file, defaults)?),
        Command::Nevanlinna { flags } => cmd_nevanlinna(&RunConfig::resolve(flags, file, defaults)?),
    }
}

fn main() {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            for line in &outcome.stderr {
                eprintln!("{line}");
            }
            process::exit(outcome.exit.code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code().code());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use cli_certificates::ExitCode;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_with_two() {
        let err = Cli::try_parse_from(["jetcert", "construct", "--n", "x"]).err().unwrap();
        assert_eq!(err.exit_code(), ExitCode::Usage.code());
    }
}
