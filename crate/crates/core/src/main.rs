use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use phinmod::cli::{run_json, Command, SessionConfig};
use phinmod::{json, Error};

/// Exact computations for Frobenius-nilpotent pairs in GL_n.
///
/// Reads a JSON payload (or an array of payloads with --batch) and writes
/// a canonical JSON report. Exit codes: 0 success, 1 invalid input,
/// 2 unsupported case, 3 internal error.
#[derive(Debug, Parser)]
#[command(name = "phinmod", version)]
struct Args {
    /// Prime p; scalars live in Q(sqrt p).
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Matrix size; inferred from the payload when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Number of Frobenius slots.
    #[arg(long, default_value_t = 1)]
    f: usize,
    /// Command to run, e.g. gl2-report or gl3-certificate.
    #[arg(long)]
    cmd: String,
    /// Input file; stdin when omitted or "-".
    #[arg(long = "in")]
    input: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// Treat the input as an array of independent payloads.
    #[arg(long)]
    batch: bool,
}

fn read_input(args: &Args, command: Command) -> io::Result<String> {
    match args.input.as_deref() {
        Some("-") | None if command.takes_input() => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some("-") | None => Ok(String::new()),
        Some(path) => fs::read_to_string(path),
    }
}

fn emit(args: &Args, text: &str) -> io::Result<()> {
    match &args.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let setup = args
        .cmd
        .parse::<Command>()
        .and_then(|cmd| SessionConfig::new(args.p, args.n, args.f, cmd));
    let (text, code) = match setup {
        Err(e) => {
            let mut text = serde_json::to_string(&json::error(&e)).expect("serializable");
            text.push('\n');
            (text, e.exit_code())
        }
        Ok(cfg) => match read_input(&args, cfg.command) {
            Ok(input) => run_json(&cfg, &input, args.batch),
            Err(e) => {
                let err = Error::Invalid(format!("cannot read input: {e}"));
                let mut text = serde_json::to_string(&json::error(&err)).expect("serializable");
                text.push('\n');
                (text, err.exit_code())
            }
        },
    };
    if let Err(e) = emit(&args, &text) {
        eprintln!("phinmod: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
