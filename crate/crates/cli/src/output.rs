use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde_json::Value;

use crate::args::Format;
use crate::CliResult;

pub enum Rendered {
    Json(Value),
    Csv(String),
}

impl Rendered {
    pub fn into_bytes(self) -> Vec<u8> {
        match self {
            Rendered::Json(v) => {
                let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
                s.push('\n');
                s.into_bytes()
            }
            Rendered::Csv(s) => s.into_bytes(),
        }
    }
}

pub fn write(r: Rendered, path: Option<&Path>) -> io::Result<()> {
    let bytes = r.into_bytes();
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(&bytes)?;
            w.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()
        }
    }
}

pub fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut buf)?;
    } else {
        File::open(path)
            .map_err(|e| crate::CliError(format!("{}: {e}", path.display())))?
            .read_to_end(&mut buf)?;
    }
    Ok(buf)
}

pub fn format_or(format: Option<Format>, default: Format) -> Format {
    format.unwrap_or(default)
}

/// Adds `+ 0.0` so that negative zero prints as `0`.
pub fn clean(v: f64) -> f64 {
    v + 0.0
}

/// Builds CSV text from a header and rows of already formatted fields.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}
