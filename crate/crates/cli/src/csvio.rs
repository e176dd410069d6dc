//! RFC-4180-style CSV emission: header row, CRLF line endings, quoting
//! only when a field needs it. Floats use Rust's shortest round-trip
//! formatting so emitted artifacts are bit-stable across runs.

use std::fs;
use std::path::Path;

use plunge_core::Result;

#[derive(Debug, Clone)]
pub struct Csv {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&escape_row(&self.columns));
        for row in &self.rows {
            out.push_str("\r\n");
            out.push_str(&escape_row(row));
        }
        out.push_str("\r\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, self.render())?;
        Ok(())
    }
}

fn escape_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') || f.contains('\r') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Shortest round-trip decimal form, shared by CSV and SVG emitters.
pub fn fmt(value: f64) -> String {
    format!("{value}")
}

/// Parse one column back out of a rendered CSV (used by tests and the
/// SVG/CSV agreement check).
pub fn column(rendered: &str, index: usize) -> Vec<String> {
    rendered
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').nth(index).unwrap_or_default().to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_header_and_rows_with_crlf() {
        let mut csv = Csv::new(vec!["k", "value"]);
        csv.push(vec!["1".to_string(), fmt(0.5)]);
        csv.push(vec!["2".to_string(), fmt(0.25)]);
        assert_eq!(csv.render(), "k,value\r\n1,0.5\r\n2,0.25\r\n");
    }

    #[test]
    fn quotes_fields_that_need_it() {
        let mut csv = Csv::new(vec!["name"]);
        csv.push(vec!["a,b".to_string()]);
        csv.push(vec!["say \"hi\"".to_string()]);
        let rendered = csv.render();
        assert!(rendered.contains("\"a,b\""));
        assert!(rendered.contains("\"say \"\"hi\"\"\""));
    }

    #[test]
    fn column_extraction_round_trips() {
        let mut csv = Csv::new(vec!["k", "value"]);
        csv.push(vec!["1".to_string(), fmt(0.1234567890123)]);
        let rendered = csv.render();
        assert_eq!(column(&rendered, 1), vec!["0.1234567890123"]);
    }
}
