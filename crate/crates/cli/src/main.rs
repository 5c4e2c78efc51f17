use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use projlat::groebner::set_basis_cap;
use projlat::session::{run_session, OutputMode, Session};
use projlat::{finite, Field};

#[derive(Parser)]
#[command(name = "projlat", version, about = "Run projlat session scripts and finite-model checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a session file.
    Run {
        file: PathBuf,
        /// Emit one JSON object per statement.
        #[arg(long)]
        json: bool,
        /// Coefficient field for every ring in the file: QQ or GF:<p>.
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
    /// Exhaustive checks on the monomial model with n variables.
    Verify {
        #[arg(long, value_name = "N")]
        finite: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Read statements from standard input one line at a time.
    Repl {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "QQ" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("GF:")
        .ok_or_else(|| format!("expected QQ or GF:<p>, got '{s}'"))?
        .parse::<u64>()
        .map_err(|e| e.to_string())?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn apply_cap_from_env() -> Result<(), String> {
    if let Ok(v) = std::env::var("PROJLAT_GB_CAP") {
        let cap = v.trim().parse::<usize>().map_err(|_| format!("PROJLAT_GB_CAP must be a positive integer, got '{v}'"))?;
        set_basis_cap(cap);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = apply_cap_from_env() {
        eprintln!("projlat: {e}");
        return ExitCode::from(2);
    }
    match cli.command {
        Cmd::Run { file, json, field } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("projlat: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            match run_session(&text, field) {
                Ok(out) => {
                    let mode = if json { OutputMode::Json } else { OutputMode::Text };
                    print!("{}", out.render(mode));
                    ExitCode::from(out.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Verify { finite: n, format } => match finite::finite_verify(n) {
            Ok(report) => {
                match format {
                    Format::Text => print!("{report}"),
                    Format::Json => {
                        let names: Vec<_> = report
                            .checks
                            .iter()
                            .map(|c| serde_json::json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                            .collect();
                        let v = serde_json::json!({ "title": report.title, "passed": report.passed(), "checks": names });
                        println!("{v}");
                    }
                }
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                }
            }
            Err(e) => {
                eprintln!("projlat: {e}");
                ExitCode::from(3)
            }
        },
        Cmd::Repl { json } => repl(json),
    }
}

fn repl(json: bool) -> ExitCode {
    let mut session = Session::new(None);
    let stdin = io::stdin();
    let mut stdout = io::stdout();
    let mut failed = false;
    for (i, line) in stdin.lock().lines().enumerate() {
        let Ok(line) = line else { break };
        match session.execute_line(i + 1, &line) {
            Ok(Some(record)) => {
                failed |= !record.ok;
                if json {
                    let _ = writeln!(stdout, "{}", serde_json::to_string(&record).expect("serializable"));
                } else {
                    let _ = writeln!(stdout, "{}", record.text());
                }
            }
            Ok(None) => {}
            Err(e) => {
                failed = true;
                let _ = writeln!(stdout, "error: {e}");
            }
        }
        let _ = stdout.flush();
    }
    if failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
