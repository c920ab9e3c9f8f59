use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reesmod_cli::{run, Options, EXIT_DIAGNOSTICS, EXIT_INTERNAL};

#[derive(Parser)]
#[command(
    name = "reesmod",
    version,
    about = "Affine modifications, Rees algebras and their transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script.
    Run {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Leave out timings.
        #[arg(long)]
        no_timing: bool,
        /// Default search bound for membership tests.
        #[arg(long, default_value_t = reesmod::modification::DEFAULT_NMAX)]
        nmax: u32,
        /// Repeat every command over GF(p) and compare, e.g. `GF(32003)`.
        #[arg(long, value_name = "GF(p)", value_parser = parse_field)]
        field_check: Option<u64>,
    },
}

fn parse_field(s: &str) -> Result<u64, String> {
    let p = s
        .trim()
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected GF(p), got `{s}`"))?
        .parse::<u64>()
        .map_err(|e| e.to_string())?;
    reesmod::Field::prime(p).map_err(|e| e.to_string())?;
    Ok(p)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_DIAGNOSTICS as u8
            } else {
                0
            });
        }
    };
    let Command::Run {
        file,
        json,
        no_timing,
        nmax,
        field_check,
    } = cli.command;
    let source = match std::fs::read_to_string(&file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_DIAGNOSTICS as u8);
        }
    };
    let options = Options {
        json,
        timing: !no_timing,
        nmax,
        field_check,
    };
    match std::panic::catch_unwind(|| run(&source, &options)) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code as u8)
        }
        Err(_) => {
            eprintln!("internal error: the interpreter panicked");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
    }
}
