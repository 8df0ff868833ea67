//! Batch front end for `clausen-core`: lemma verification runs, criterion
//! checks, parameter sweeps and disc falsification, written as CSV or JSON.

pub mod options;
pub mod output;
pub mod range;
pub mod scan;
pub mod verify;

use std::path::Path;

pub use disc_test::{run_disc_test, DiscReport, DiscRow, DiscSpec, DiscTarget};
pub use options::{Cli, Command, Format, Options};
pub use range::{NameList, RangeSpec};
pub use scan::{run_check, run_scan, scan_point, ScanRow, ScanSpec};
pub use verify::{run_verify_lemma, VerifyEntry, VerifyPlan, VerifyReport, VerifyRow};

pub mod exit {
    pub const OK: i32 = 0;
    pub const AUDIT_FAILURE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("empty plan: nothing to verify")]
    EmptyPlan,
    #[error("invalid range {0}")]
    InvalidRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Core(#[from] clausen_core::Error),
    #[error("config {path}: {msg}")]
    Config { path: String, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialising output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Output(_) => exit::IO,
            _ => exit::INVALID_INPUT,
        }
    }
}

/// What a successful run found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Outcome {
    pub audit_failed: bool,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        if self.audit_failed {
            exit::AUDIT_FAILURE
        } else {
            exit::OK
        }
    }
}

/// Execute one parsed command line, writing its report.
pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (command, opts) = cli.resolve()?;
    let format = opts.format.unwrap_or_default();
    let out = opts.out.as_deref();
    match command {
        Command::VerifyLemma(_) => {
            let plan = VerifyPlan::from_options(&opts)?;
            let report = run_verify_lemma(&plan)?;
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            for &i in &report.flagged {
                let r = &report.rows[i];
                eprintln!(
                    "flagged: {} {} a={} b={} c={} closed={:?} oracle={:?}",
                    r.part, r.variant, r.a, r.b, r.c, r.closed, r.oracle
                );
            }
            output::write_rows(&report.rows, format, out)?;
            Ok(Outcome { audit_failed: report.audit_failed })
        }
        Command::Check(_) => {
            let spec = ScanSpec::from_options(&opts)?;
            let (rows, notes) = run_check(&spec)?;
            for (theorem, note) in notes {
                eprintln!("{theorem}: {note}");
            }
            output::write_rows(&rows, format, out)?;
            Ok(Outcome::default())
        }
        Command::Scan(_) => {
            let spec = ScanSpec::from_options(&opts)?;
            let rows = run_scan(&spec)?;
            output::write_rows(&rows, format, out)?;
            Ok(Outcome::default())
        }
        Command::DiscTest(_) => {
            let spec = DiscSpec::from_options(&opts)?;
            let report = run_disc_test(&spec)?;
            if report.false_certificates > 0 {
                eprintln!(
                    "{} point(s) where a holding criterion met a negative disc margin",
                    report.false_certificates
                );
            }
            output::write_rows(&report.rows, format, out)?;
            Ok(Outcome { audit_failed: report.false_certificates > 0 })
        }
    }
}
