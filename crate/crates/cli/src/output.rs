//! CSV and JSON emission. Both are built in memory and written in one go.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{CliError, Format};

pub fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    // written explicitly so an empty report still carries its header
    w.write_record(header).map_err(|e| CliError::Output(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

pub fn to_json<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut buf = serde_json::to_vec_pretty(rows).map_err(|e| CliError::Output(e.to_string()))?;
    buf.push(b'\n');
    Ok(buf)
}

/// Rows that know their CSV header.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
}

pub fn render<T: Row>(rows: &[T], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => to_csv(rows, T::HEADER),
        Format::Json => to_json(rows),
    }
}

pub fn write_rows<T: Row>(rows: &[T], format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(rows, format)?;
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}
