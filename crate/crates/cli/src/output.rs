//! Report rendering: aligned text tables, CSV and JSON.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Rows of pre-formatted cells under a header.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Self {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    fn write_text(&self, w: &mut dyn Write) -> Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (width, cell) in widths.iter_mut().zip(row) {
                *width = (*width).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, &wd)| format!("{c:<wd$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(w, "{}", line(self.headers.clone()))?;
        let rule: Vec<String> = widths.iter().map(|&n| "-".repeat(n)).collect();
        writeln!(w, "{}", line(rule.iter().map(String::as_str).collect()))?;
        for row in &self.rows {
            writeln!(w, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    fn write_csv(&self, w: &mut dyn Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.headers)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Writes `table` as text or CSV, or `record` as JSON.
pub fn emit<T: Serialize>(
    w: &mut dyn Write,
    format: Format,
    table: &Table,
    record: &T,
) -> Result<()> {
    match format {
        Format::Table => table.write_text(w),
        Format::Csv => table.write_csv(w),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, record)?;
            writeln!(w)?;
            Ok(())
        }
    }
}

/// Shortest representation that round-trips, in exponent notation for
/// very small or very large magnitudes.
pub fn full(x: f64) -> String {
    let magnitude = if x == 0.0 { 0.0 } else { x.abs().log10() };
    if x.is_finite() && !(-5.0..21.0).contains(&magnitude) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Rounded to three significant figures for display.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-3..6).contains(&magnitude) {
        return format!("{x:.2e}");
    }
    let decimals = (2 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn opt(x: Option<f64>, f: fn(f64) -> String) -> String {
    x.map(f).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_significant_figures() {
        assert_eq!(sig3(198.34), "198");
        assert_eq!(sig3(2.392), "2.39");
        assert_eq!(sig3(0.6384), "0.638");
        assert_eq!(sig3(0.0123456), "0.0123");
        assert_eq!(sig3(6.3406e20), "6.34e20");
        assert_eq!(sig3(0.0), "0");
        assert_eq!(sig3(-12.34), "-12.3");
    }

    #[test]
    fn full_precision_round_trips() {
        for x in [0.1 + 0.2, 1.2325951644078e-32, 6.3406e20, 3.0e25, 198.0] {
            assert_eq!(full(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(full(1.5e-32), "1.5e-32");
        assert_eq!(full(0.03), "0.03");
    }

    #[test]
    fn text_table_is_aligned() {
        let mut t = Table::new(&["name", "value"]);
        t.row(vec!["a".into(), "1".into()]);
        t.row(vec!["longer".into(), "22".into()]);
        let mut buf = Vec::new();
        t.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "name    value\n------  -----\na       1\nlonger  22\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["label"]);
        t.row(vec!["a,b".into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "label\n\"a,b\"\n");
    }
}
