//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use symdisc_core::problems::OracleKind;
use symdisc_core::{regular_representation, Limits};

use crate::commands::{self, Timings};
use crate::error::CliError;
use crate::formats::read_rep_file;
use crate::report::{render_json, render_text, SCHEMA_VERSION};
use crate::spec::GroupSpec;

/// Environment variable overriding the group-order cap.
pub const GROUP_CAP_VAR: &str = "SYMDISC_GROUP_CAP";

#[derive(Parser, Debug)]
#[command(name = "symdisc", version, about = "Optimal single-query discrimination of group-symmetric oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized routine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include per-phase wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Optimal discrimination for the regular representation of a group, or a representation file.
    Analyze {
        #[arg(long, value_parser = parse_spec, required_unless_present = "rep_file")]
        group: Option<GroupSpec>,
        /// Representation JSON; its own group spec takes precedence over --group.
        #[arg(long)]
        rep_file: Option<PathBuf>,
        #[arg(long, value_parser = positive)]
        ancilla: Option<usize>,
    },
    /// Product of two hidden group elements from one query.
    Groupmult {
        #[arg(long, value_parser = parse_spec)]
        group: GroupSpec,
        /// Restrict to one nontrivial irreducible (index into the character table) and its dual.
        #[arg(long)]
        irrep: Option<usize>,
        /// Random-input trials for the optimality check.
        #[arg(long, value_parser = positive)]
        trials: Option<usize>,
    },
    /// Hidden conjugating element.
    Conjugation {
        #[arg(long, value_parser = parse_spec)]
        group: GroupSpec,
        #[arg(long, value_parser = positive)]
        ancilla: Option<usize>,
    },
    /// Character table of a group.
    Chartable {
        #[arg(long, value_parser = parse_spec)]
        group: GroupSpec,
    },
    /// Bernstein-Vazirani oracles on n bits.
    Bv {
        #[arg(long)]
        n: usize,
    },
    /// Van Dam's weight-k oracles on n bits.
    Vandam {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Limits with the group-order cap taken from the environment, if set.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(GROUP_CAP_VAR) {
        limits.max_order = v
            .trim()
            .parse()
            .ok()
            .filter(|&c: &usize| c >= 1)
            .ok_or_else(|| CliError::Usage(format!("{GROUP_CAP_VAR} must be a positive integer, got {v:?}")))?;
    }
    Ok(limits)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, limits: &Limits) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution { stdout: text, stderr: String::new(), code }
            } else {
                Execution { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli, limits) {
        Ok((report, matched)) => {
            let rendered = match cli.format {
                Format::Json => render_json(&report),
                Format::Text => render_text(&report),
            };
            let code = exit_code(matched);
            match &cli.out {
                Some(path) => match fs::write(path, &rendered) {
                    Ok(()) => Execution { stdout: String::new(), stderr: String::new(), code },
                    Err(source) => failure(CliError::Io { path: path.display().to_string(), source }),
                },
                None => Execution { stdout: rendered, stderr: String::new(), code },
            }
        }
        Err(e) => failure(e),
    }
}

/// 0 when every closed-form comparison agreed, 1 otherwise. Errors exit with 2.
pub fn exit_code(matched: bool) -> i32 {
    if matched {
        0
    } else {
        1
    }
}

/// A report matches only when its `results.match` is literally `true`.
pub fn report_matches(results: &Value) -> bool {
    results["match"].as_bool() == Some(true)
}

fn failure(e: CliError) -> Execution {
    Execution { stdout: String::new(), stderr: e.to_json() + "\n", code: 2 }
}

fn request_echo(cli: &Cli) -> Value {
    let mut req = match &cli.command {
        Command::Analyze { group, rep_file, ancilla } => json!({
            "command": "analyze",
            "group": group.as_ref().map(ToString::to_string),
            "rep_file": rep_file.as_ref().map(|p| p.display().to_string()),
            "ancilla": ancilla,
        }),
        Command::Groupmult { group, irrep, trials } => {
            json!({ "command": "groupmult", "group": group.to_string(), "irrep": irrep, "trials": trials })
        }
        Command::Conjugation { group, ancilla } => {
            json!({ "command": "conjugation", "group": group.to_string(), "ancilla": ancilla })
        }
        Command::Chartable { group } => json!({ "command": "chartable", "group": group.to_string() }),
        Command::Bv { n } => json!({ "command": "bv", "n": n }),
        Command::Vandam { n, k } => json!({ "command": "vandam", "n": n, "k": k }),
    };
    req["seed"] = json!(cli.seed);
    req
}

fn execute(cli: &Cli, limits: &Limits) -> Result<(Value, bool), CliError> {
    let seed = cli.seed;
    let mut t = Timings::default();
    let results = match &cli.command {
        Command::Analyze { group, rep_file, ancilla } => {
            let (rep, name) = match (rep_file, group) {
                (Some(path), _) => {
                    let file = read_rep_file(path)?;
                    let name = file.group.clone();
                    (t.time("load", || file.into_rep(limits))?, name)
                }
                (None, Some(spec)) => {
                    let g = t.time("group", || spec.build(limits))?;
                    (regular_representation(&g)?, spec.to_string())
                }
                (None, None) => return Err(CliError::Usage("analyze needs --group or --rep-file".into())),
            };
            commands::analyze(&rep, &name, *ancilla, seed, &mut t)?
        }
        Command::Groupmult { group, irrep, trials } => {
            let g = t.time("group", || group.build(limits))?;
            commands::groupmult(&g, &group.to_string(), *irrep, *trials, seed, limits, &mut t)?
        }
        Command::Conjugation { group, ancilla } => {
            let g = t.time("group", || group.build(limits))?;
            commands::conjugation(&g, group, *ancilla, seed, &mut t)?
        }
        Command::Chartable { group } => {
            let g = t.time("group", || group.build(limits))?;
            commands::chartable(&g, &group.to_string(), seed, &mut t)?
        }
        Command::Bv { n } => commands::oracle(OracleKind::BernsteinVazirani { n: *n }, seed, limits, &mut t)?,
        Command::Vandam { n, k } => commands::oracle(OracleKind::VanDam { n: *n, k: *k }, seed, limits, &mut t)?,
    };
    let matched = report_matches(&results);
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "request": request_echo(cli),
        "results": results,
    });
    if cli.timings {
        report["timings"] = t.to_json();
    }
    Ok((report, matched))
}
