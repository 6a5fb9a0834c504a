//! Command-line front end: parses arguments, runs one experiment and prints
//! a JSON report.
//!
//! Exit codes: 0 when every check passes, 2 when a check implied by the
//! theorems fails, 1 on usage or input errors.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use args::{Cli, Command};
pub use commands::trial_seed;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub config: Value,
    pub records: Vec<Value>,
    pub summary: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

/// Accepts `polytope make ...`, `tverberg search ...` and `bu solve ...` as
/// well as bare subcommands, and treats a binary named `bu` as `bu`.
fn normalize(argv: Vec<OsString>) -> Vec<OsString> {
    let mut it = argv.into_iter();
    let program = it.next().unwrap_or_else(|| "tverberg".into());
    let mut rest: Vec<OsString> = it.collect();
    let stem = Path::new(&program).file_stem().map(|s| s.to_os_string());
    if stem.as_deref() == Some("bu".as_ref()) && rest.first().is_none_or(|a| a != "bu") {
        rest.insert(0, "bu".into());
    }
    if rest.first().is_some_and(|a| a == "polytope" || a == "tverberg") {
        rest.remove(0);
    }
    if rest.first().is_some_and(|a| a == "bu") && rest.get(1).is_some_and(|a| a == "solve") {
        rest.remove(1);
    }
    std::iter::once(program).chain(rest).collect()
}

fn execute(command: &Command) -> commands::CliResult<commands::Outcome> {
    match command {
        Command::Make(a) => commands::make(a),
        Command::Subdivide(a) => commands::subdivide(a),
        Command::Packing(a) => commands::packing(a),
        Command::Search(a) => commands::search(a),
        Command::CountCross(a) => commands::count_cross(a),
        Command::Neighborly(a) => commands::neighborly(a),
        Command::D1(a) => commands::d1(a),
        Command::Bu(a) => commands::bu(a),
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv = normalize(argv.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_ERROR
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_PASS
            };
        }
    };
    let config = serde_json::to_value(&cli.command).expect("arguments serialize");
    let (name, config) = match config {
        Value::Object(map) => map.into_iter().next().expect("one subcommand"),
        other => (String::new(), other),
    };
    let start = Instant::now();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let report = Report {
        command: name,
        seed: outcome.seed,
        config,
        records: outcome.records,
        summary: outcome.summary,
        pass: outcome.pass,
        runtime_ms: cli.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if writeln!(out, "{text}").is_err() {
        return EXIT_ERROR;
    }
    if report.pass {
        EXIT_PASS
    } else {
        let _ = writeln!(err, "check failed: {}", report.summary);
        EXIT_CHECK_FAILED
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Entry point shared by the binaries.
pub fn main_entry() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    run(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(args: &[&str]) -> Vec<String> {
        normalize(args.iter().map(OsString::from).collect()).into_iter().map(|s| s.into_string().unwrap()).collect()
    }

    #[test]
    fn group_prefixes_are_dropped() {
        assert_eq!(norm(&["x", "polytope", "make"]), ["x", "make"]);
        assert_eq!(norm(&["x", "tverberg", "d1"]), ["x", "d1"]);
        assert_eq!(norm(&["x", "bu", "solve", "--m", "2"]), ["x", "bu", "--m", "2"]);
        assert_eq!(norm(&["/usr/bin/bu", "solve", "--p", "2"]), ["/usr/bin/bu", "bu", "--p", "2"]);
        assert_eq!(norm(&["bu", "--p", "2"]), ["bu", "bu", "--p", "2"]);
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(["t", "make", "--family", "cube", "--dim", "3", "--bogus"], &mut out, &mut err);
        assert_eq!(code, EXIT_ERROR);
        assert!(String::from_utf8(err).unwrap().contains("Usage"));
        assert!(out.is_empty());
    }

    #[test]
    fn help_exits_cleanly() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["t", "--help"], &mut out, &mut err), EXIT_PASS);
    }
}
