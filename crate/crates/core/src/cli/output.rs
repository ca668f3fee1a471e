use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::config::{Format, RunConfig};
use crate::Result;

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write through a temporary file and rename into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// A numeric table echoed with the resolved configuration.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn to_csv(&self, config: &RunConfig) -> String {
        let mut s = format!("# config: {}\n", config.to_json());
        for note in &self.notes {
            s.push_str(&format!("# note: {note}\n"));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, config: &RunConfig) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), json!(v)))
                        .collect(),
                )
            })
            .collect();
        json!({ "config": config, "notes": self.notes, "columns": self.columns, "rows": rows })
    }

    /// Write `<dir>/<stem>.csv` or `<dir>/<stem>.json`.
    pub fn write(&self, config: &RunConfig, stem: &str) -> Result<PathBuf> {
        let (path, body) = match config.format {
            Format::Csv => (config.out.join(format!("{stem}.csv")), self.to_csv(config)),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(config))?;
                s.push('\n');
                (config.out.join(format!("{stem}.json")), s)
            }
        };
        write_atomic(&path, body.as_bytes())?;
        Ok(path)
    }
}
