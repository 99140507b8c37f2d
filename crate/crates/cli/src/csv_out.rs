//! Deterministic CSV writing: fixed float format, `\n` line endings, no
//! locale or timestamp dependence.

use std::io::Write;
use std::path::Path;

use crate::CliError;

pub fn format_float(v: f64) -> String {
    format!("{v:.12e}")
}

pub struct CsvWriter {
    buffer: Vec<u8>,
    columns: usize,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut buffer = Vec::new();
        let _ = writeln!(buffer, "{}", header.join(","));
        Self {
            buffer,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "ragged CSV row");
        let _ = writeln!(self.buffer, "{}", fields.join(","));
    }

    pub fn write_to(self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, &self.buffer)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
    }
}

/// Resolves the output path: the CLI flag wins over the config field.
pub fn output_path(
    flag: Option<std::path::PathBuf>,
    config_field: Option<std::path::PathBuf>,
) -> Result<std::path::PathBuf, CliError> {
    flag.or(config_field).ok_or_else(|| {
        CliError::Config("field `output` missing (or pass --output PATH)".into())
    })
}
