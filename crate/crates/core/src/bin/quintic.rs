use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use quintic::cli::{dispatch, emit_report, error_report, RunRequest};

fn main() -> ExitCode {
    let req = match RunRequest::try_parse() {
        Ok(r) => r,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{}", e.render());
            print!("{}", emit_report(&error_report(None, "usage", e.to_string().trim_end())));
            return ExitCode::from(2);
        }
    };
    let outcome = dispatch(&req);
    for w in outcome.report["warnings"].as_array().into_iter().flatten() {
        eprintln!("warning: {}", w.as_str().unwrap_or_default());
    }
    let text = emit_report(&outcome.report);
    match &req.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let msg = format!("cannot write {}: {e}", path.display());
                print!("{}", emit_report(&error_report(Some(req.command.name()), "io", &msg)));
                return ExitCode::from(2);
            }
        }
        // a closed pipe downstream is not an error of the run
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
