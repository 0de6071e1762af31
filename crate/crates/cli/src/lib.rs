//! Command line front end: option handling, reports, the result cache and
//! the corpus runner.

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod options;

use std::fs;

use commands::{execute, Failure, Status};
use corpus::{run_corpus, SuiteOptions};
use options::{Cli, Command};

fn write_json(path: &std::path::Path, v: &impl serde::Serialize) -> Result<(), String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    s.push('\n');
    fs::write(path, s).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs a parsed command line and returns the process exit code: 0 when
/// decided, 2 when the budget ran out, 1 on input errors (and, for `corpus`,
/// when any property fails).
pub fn run(cli: Cli) -> i32 {
    let opts = match cli.options.validate() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Command::Corpus { dir } = &cli.command {
        let suite = SuiteOptions { budget_ms: opts.budget_ms, ..SuiteOptions::default() };
        let report = match run_corpus(dir, opts.field, &suite) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}: {e}", dir.display());
                return 1;
            }
        };
        if let Some(out) = &opts.out {
            if let Err(e) = write_json(out, &report) {
                eprintln!("error: {e}");
                return 1;
            }
        }
        if opts.json {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        } else {
            print!("{}", report.table());
        }
        return if report.failed() { 1 } else { 0 };
    }
    match execute(&cli.command, &opts) {
        Ok(report) => {
            if let Some(out) = &opts.out {
                if let Err(e) = write_json(out, &report) {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            if opts.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for line in &report.summary {
                    println!("{line}");
                }
            }
            match report.status {
                Status::Decided => 0,
                Status::Undecided => 2,
            }
        }
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Undecided(m) => eprintln!("undecided: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            f.exit_code()
        }
    }
}
