//! Result tables and their on-disk form.
//!
//! `<out>/<experiment>_<seed>.csv` starts with one `#` metadata line (tool
//! version, schema, seed, config echo), then a header and rows. A JSON
//! sidecar `<experiment>_<seed>.json` carries the same metadata. Both files
//! are rendered in memory and moved into place, so a failed run leaves
//! nothing behind.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl ResultTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rows with any `false` in a column named `*_ok` or `converged`.
    pub fn flagged_rows(&self) -> usize {
        let flag_cols: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.ends_with("_ok") || **c == "converged")
            .map(|(i, _)| i)
            .collect();
        self.rows
            .iter()
            .filter(|r| flag_cols.iter().any(|&i| r[i] == "false"))
            .count()
    }
}

/// Number formatting shared by every table: shortest round-trip form.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x}")
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn metadata(experiment: &str, seed: u64, config: &Value) -> Value {
    json!({
        "tool": "amplearn",
        "version": ARTIFACT_VERSION,
        "schema": format!("{experiment}/v{SCHEMA_VERSION}"),
        "experiment": experiment,
        "seed": seed,
        "config": config,
    })
}

pub fn render_csv(table: &ResultTable, meta: &Value) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    writeln!(buf, "# {}", serde_json::to_string(meta)?)?;
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&table.columns)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.partial",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
    ));
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("moving into {}", path.display()))?;
    Ok(())
}

pub struct Written {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
}

pub fn write_outputs(out: &Path, experiment: &str, seed: u64, config: &Value, table: &ResultTable) -> Result<Written> {
    let meta = metadata(experiment, seed, config);
    let csv_bytes = render_csv(table, &meta)?;
    let mut side = meta;
    side["columns"] = json!(table.columns);
    side["rows"] = json!(table.rows.len());
    side["flagged_rows"] = json!(table.flagged_rows());
    let side_bytes = serde_json::to_vec_pretty(&side)?;

    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let csv = out.join(format!("{experiment}_{seed}.csv"));
    let sidecar = out.join(format!("{experiment}_{seed}.json"));
    write_atomic(&csv, &csv_bytes)?;
    if let Err(e) = write_atomic(&sidecar, &side_bytes) {
        let _ = fs::remove_file(&csv);
        return Err(e);
    }
    Ok(Written { csv, sidecar })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_metadata_line() {
        let mut t = ResultTable::new(vec!["a", "b_ok"]);
        t.push(vec!["1".into(), "true".into()]);
        t.push(vec!["2".into(), "false".into()]);
        let bytes = render_csv(&t, &metadata("x", 1, &json!({}))).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# {"));
        assert_eq!(lines.next().unwrap(), "a,b_ok");
        assert_eq!(t.flagged_rows(), 1);
    }

    #[test]
    fn number_format_round_trips() {
        let x = 0.1 + 0.2;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
        assert_eq!(num(2.0), "2");
    }
}
