//! `twoalg`: classify, compare and enumerate 2-dimensional algebras.
//!
//! Reports go to stdout (or `--out`), as text or with `--json` as JSON; in
//! JSON mode a line of run metadata (command, elapsed time) goes to stderr.
//! Exit status is 0 on success, 1 on domain errors (unsupported field,
//! violated preconditions, bad parameters) and 2 on malformed input.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use twoalg_core::{Error, FieldSpec};

#[derive(Parser)]
#[command(name = "twoalg", version, about = "Exact classification of 2-dimensional algebras")]
struct Cli {
    /// Field: Q, F2 or Fp:<p>. For file inputs it must match the file.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Allow the F5 exhaustive census.
    #[arg(long, global = true)]
    expensive: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an algebra, with the basis change reaching it.
    Classify { file: PathBuf },
    /// Whether two algebras are isomorphic, with a witness.
    Iso { a: PathBuf, b: PathBuf },
    /// Orbit census of the 256 algebras over F2.
    EnumerateF2,
    /// Orbit census over F_q for q <= 5 (F5 needs --expensive).
    EnumerateFq,
    /// Jordan identity check.
    Jordan { file: PathBuf },
    /// The nonzero idempotents.
    Idempotents { file: PathBuf },
    /// Isomorphism invariants.
    Fingerprint { file: PathBuf },
    /// Algebra file of a family representative (`Mu11 alpha2=1 beta2=0`) or
    /// of a Jordan catalog entry (`J3`).
    Catalog { family: String, params: Vec<String> },
}

/// A failure with its exit status.
struct Failure {
    kind: &'static str,
    message: String,
    status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, status) = match &e {
            Error::Format(_) => ("format", 2),
            Error::Field(_) => ("field", 1),
            Error::SingularMatrix => ("singular-matrix", 1),
            Error::Characteristic2(_) => ("characteristic-2", 1),
            Error::UnsupportedField { .. } => ("unsupported-field", 1),
            Error::Precondition(_) => ("precondition", 1),
            Error::InvalidParams { .. } => ("invalid-params", 1),
        };
        Failure {
            kind,
            message: e.to_string(),
            status,
        }
    }
}

impl Failure {
    fn input(message: String) -> Self {
        Failure {
            kind: "input",
            message,
            status: 2,
        }
    }

    fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

/// A report in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
}

fn field_option(cli: &Cli) -> Result<Option<FieldSpec>, Failure> {
    cli.field.as_deref().map(|s| s.parse::<FieldSpec>().map_err(|e| Failure::from(Error::from(e)))).transpose()
}

fn load(path: &Path, expected: Option<FieldSpec>) -> Result<twoalg_core::Algebra, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let alg = twoalg_core::io::parse_algebra(&text)
        .map_err(|e| Failure::from(e).with_context(&path.display().to_string()))?;
    if let Some(f) = expected {
        if f != alg.field() {
            return Err(Failure {
                kind: "field",
                message: format!("{}: field {} does not match --field {f}", path.display(), alg.field()),
                status: 1,
            });
        }
    }
    Ok(alg)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let field = field_option(cli)?;
    Ok(match &cli.command {
        Command::Classify { file } => report::classify(&load(file, field)?)?,
        Command::Iso { a, b } => report::iso(&load(a, field)?, &load(b, field)?)?,
        Command::EnumerateF2 => {
            if field.is_some_and(|f| f != FieldSpec::Prime(2)) {
                return Err(Failure {
                    kind: "field",
                    message: "enumerate-f2 works over F2 only; use enumerate-fq".into(),
                    status: 1,
                });
            }
            report::enumerate_f2()
        }
        Command::EnumerateFq => {
            let f = field.ok_or_else(|| Failure::input("enumerate-fq needs --field".into()))?;
            report::enumerate_fq(f, cli.expensive)?
        }
        Command::Jordan { file } => report::jordan(&load(file, field)?)?,
        Command::Idempotents { file } => report::idempotents(&load(file, field)?),
        Command::Fingerprint { file } => report::fingerprint(&load(file, field)?),
        Command::Catalog { family, params } => report::catalog(family, params, field.unwrap_or(FieldSpec::Rational))?,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Iso { .. } => "iso",
        Command::EnumerateF2 => "enumerate-f2",
        Command::EnumerateFq => "enumerate-fq",
        Command::Jordan { .. } => "jordan",
        Command::Idempotents { .. } => "idempotents",
        Command::Fingerprint { .. } => "fingerprint",
        Command::Catalog { .. } => "catalog",
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure {
            kind: "io",
            message: format!("{}: {e}", path.display()),
            status: 1,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|out| {
        let body = if cli.json {
            format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable"))
        } else {
            out.text
        };
        emit(&cli, &body)
    });
    // runtime details stay out of the report so reports are reproducible
    if cli.json {
        eprintln!(
        "{}",
        json!({
            "command": command_name(&cli.command),
            "elapsed_ms": start.elapsed().as_millis() as u64,
            "version": env!("CARGO_PKG_VERSION"),
        })
        );
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            } else {
                eprintln!("error ({}): {}", f.kind, f.message);
            }
            ExitCode::from(f.status)
        }
    }
}
