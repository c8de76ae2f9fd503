//! File formats, reports and the `findual` command line.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! everything that would be printed, so the binary is a thin wrapper and the
//! whole surface is testable in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use findual_core::CoreError;
use serde::Serialize;
use serde_json::Value;

mod commands;
pub mod schema;

pub use schema::{load, Structure, StructureFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for anything wrong with the input itself, 1 for a structure that
    /// parses but breaks an invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::IndexOutOfRange { .. }
                | CoreError::ArityMismatch { .. }
                | CoreError::PosetMismatch
                | CoreError::LatticeMismatch
                | CoreError::TooLarge { .. }
                | CoreError::Unknown { .. }
                | CoreError::Regex { .. } => 2,
                _ => 1,
            },
            _ => 2,
        }
    }
}

/// What a command produced before it is wrapped into a [`Report`].
#[derive(Default)]
pub(crate) struct Outcome {
    pub flags: Option<Value>,
    pub result: Option<StructureFile>,
    pub details: Option<Value>,
    /// Set when an invariant fails; the command then exits with 1.
    pub failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<&'static str>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub options: serde_json::Map<String, Value>,
    pub status: &'static str,
    pub exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<StructureFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Parser)]
#[command(name = "findual", version, about = "Finite dualities: dualize, classify and check small structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print only the verdict line.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write the result structure (or the report, if there is none) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Structure file (JSON with a `kind` field).
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Dual of a poset, lattice, operator, relation, monoid, algebra, category or morphism.
    Dualize(Input),
    /// Structural flags of an operator, relation, algebra, monoid, relmon or category.
    Classify(Input),
    /// Check modal correspondences of a unary operator on both sides.
    Correspond {
        #[command(flatten)]
        input: Input,
        /// One of reflexive, symmetric, euclidean, transitive, total, empty, quantifier.
        #[arg(long)]
        property: Option<String>,
    },
    /// Syntactic monoid, residuation ideal and comultiplication of a regular language.
    Synmon {
        #[command(flatten)]
        input: Input,
        /// Also print the comultiplication of the language.
        #[arg(long)]
        gamma: bool,
    },
    /// Exhaustive property suites up to a size bound.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Restrict the correspondence suite to one modal property.
        #[arg(long)]
        property: Option<String>,
    },
    /// Schema and invariant check only.
    Validate(Input),
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn read_structure(path: &Path) -> Result<StructureFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON, except that arrays holding no objects stay on one line.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("reports serialize");
    let mut s = String::new();
    write_value(&mut s, &v, 0);
    s.push('\n');
    s
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(xs) => xs.iter().any(has_object),
        _ => false,
    }
}

fn write_value(s: &mut String, v: &Value, depth: usize) {
    let pad = |s: &mut String, d: usize| s.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Object(m) if !m.is_empty() => {
            s.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                pad(s, depth + 1);
                s.push_str(&Value::String(k.clone()).to_string());
                s.push_str(": ");
                write_value(s, x, depth + 1);
                s.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push('}');
        }
        Value::Array(xs) if has_object(v) => {
            s.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                pad(s, depth + 1);
                write_value(s, x, depth + 1);
                s.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push(']');
        }
        _ => s.push_str(&v.to_string()),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Output { code, stdout, stderr };
        }
    };
    let mut report = Report {
        command: "",
        input: None,
        options: serde_json::Map::new(),
        status: "ok",
        exit: 0,
        flags: None,
        result: None,
        details: None,
        witness: None,
    };
    let outcome = execute(&cli.command, &mut report);
    match outcome {
        Ok(o) => {
            report.flags = o.flags;
            report.result = o.result;
            report.details = o.details;
            if let Some(w) = o.failure {
                report.status = "failed";
                report.exit = 1;
                report.witness = Some(w);
            }
        }
        Err(e) => {
            report.exit = e.exit_code();
            report.status = if report.exit == 1 { "failed" } else { "error" };
            report.witness = Some(e.to_string());
        }
    }
    let mut stderr = String::new();
    if let Some(path) = &cli.out {
        let text = match &report.result {
            Some(r) => to_json(r),
            None => to_json(&report),
        };
        if let Err(source) = std::fs::write(path, text) {
            let e = CliError::Write { path: path.display().to_string(), source };
            stderr = format!("{e}\n");
            report.exit = 2;
            report.status = "error";
            report.witness.get_or_insert_with(|| e.to_string());
        }
    }
    let stdout = if cli.quiet {
        match &report.witness {
            Some(w) if report.exit != 0 => format!("{}: {w}\n", report.status),
            _ => "ok\n".to_string(),
        }
    } else {
        to_json(&report)
    };
    Output { code: report.exit, stdout, stderr }
}

fn execute(command: &Command, report: &mut Report) -> Result<Outcome, CliError> {
    let open = |input: &Input, report: &mut Report| -> Result<Structure, CliError> {
        let file = read_structure(&input.input)?;
        report.input = Some(file.kind());
        load(&file)
    };
    match command {
        Command::Dualize(input) => {
            report.command = "dualize";
            commands::dualize(open(input, report)?)
        }
        Command::Classify(input) => {
            report.command = "classify";
            commands::classify(open(input, report)?)
        }
        Command::Correspond { input, property } => {
            report.command = "correspond";
            if let Some(p) = property {
                report.options.insert("property".into(), p.clone().into());
            }
            let s = open(input, report)?;
            commands::correspond(s, property.as_deref())
        }
        Command::Synmon { input, gamma } => {
            report.command = "synmon";
            report.options.insert("gamma".into(), (*gamma).into());
            commands::synmon(open(input, report)?, *gamma)
        }
        Command::Sweep { max_size, property } => {
            report.command = "sweep";
            report.options.insert("max_size".into(), (*max_size).into());
            if let Some(p) = property {
                report.options.insert("property".into(), p.clone().into());
            }
            commands::sweep(*max_size, property.as_deref())
        }
        Command::Validate(input) => {
            report.command = "validate";
            commands::validate(open(input, report)?)
        }
    }
}
