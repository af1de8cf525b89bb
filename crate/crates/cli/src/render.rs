//! Rendering of command results as aligned text, CSV or JSON.

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;

/// Significant digits in the text table.
pub const TABLE_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    /// A computed value, rounded in the text table.
    Num(f64),
    /// An input value, printed as given.
    Param(f64),
}

impl Cell {
    fn text(&self) -> String {
        match *self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => fmt_sig(v, TABLE_DIGITS),
            Cell::Param(v) => format!("{v}"),
        }
    }

    /// Shortest representation that parses back to the same value.
    fn exact(&self) -> String {
        match *self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) | Cell::Param(v) => format!("{v}"),
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Int(i) => Value::from(i),
            Cell::Num(v) | Cell::Param(v) => {
                serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    /// Heading in the text table.
    pub title: &'static str,
    /// CSV header and JSON field name.
    pub key: &'static str,
}

pub const fn col(title: &'static str, key: &'static str) -> Column {
    Column { title, key }
}

/// Result of one command, ready to render in any format.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra per-row JSON fields beyond the columns.
    pub json_extra: Vec<Map<String, Value>>,
    /// `# ` lines above the text table.
    pub metadata: Vec<String>,
    /// Advisory messages for stderr.
    pub notes: Vec<String>,
    /// Tolerance misses; any entry makes the run fail.
    pub failures: Vec<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Table => Ok(self.render_table()),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::text).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain(std::iter::once(c.title.chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for m in &self.metadata {
            out.push_str("# ");
            out.push_str(m);
            out.push('\n');
        }
        let line = |fields: Vec<String>| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{:>w$}", f, w = w))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&line(
            self.columns.iter().map(|c| c.title.to_string()).collect(),
        ));
        out.push('\n');
        for r in cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| c.key))?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::exact))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn render_json(&self) -> Result<String, CliError> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut obj = Map::new();
                for (c, cell) in self.columns.iter().zip(r) {
                    obj.insert(c.key.to_string(), cell.json());
                }
                if let Some(extra) = self.json_extra.get(i) {
                    for (k, v) in extra {
                        obj.entry(k.clone()).or_insert_with(|| v.clone());
                    }
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&records)?;
        s.push('\n');
        Ok(s)
    }
}

/// `v` rounded to `digits` significant digits, in fixed notation for
/// exponents in `[−4, digits)` and scientific notation otherwise.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!("{mantissa}e{exp}");
    }
    format!("{:.*}", (digits as i32 - 1 - exp) as usize, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.8084027964575696, 6), "0.808403");
        assert_eq!(fmt_sig(1349.1, 6), "1349.10");
        assert_eq!(fmt_sig(46.79771961, 6), "46.7977");
        assert_eq!(fmt_sig(9.9999996, 6), "10.0000");
        assert_eq!(fmt_sig(-0.000123456789, 6), "-0.000123457");
        assert_eq!(fmt_sig(1.5e-9, 6), "1.50000e-9");
        assert_eq!(fmt_sig(2.98544e-5, 6), "2.98544e-5");
        assert_eq!(fmt_sig(2.5e7, 6), "2.50000e7");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(f64::INFINITY, 6), "inf");
    }

    fn sample() -> Output {
        Output {
            columns: vec![col("n", "n"), col("value, raw", "value,raw")],
            rows: vec![
                vec![Cell::Int(0), Cell::Num(0.1 + 0.2)],
                vec![Cell::Int(1), Cell::Num(f64::INFINITY)],
            ],
            metadata: vec!["demo".into()],
            ..Default::default()
        }
    }

    #[test]
    fn csv_quotes_and_keeps_precision() {
        let out = sample().render(Format::Csv).unwrap();
        assert_eq!(out, "n,\"value,raw\"\n0,0.30000000000000004\n1,inf\n");
    }

    #[test]
    fn json_full_precision_and_null_for_infinite() {
        let out = sample().render(Format::Json).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["value,raw"].as_f64().unwrap(), 0.1 + 0.2);
        assert!(v[1]["value,raw"].is_null());
    }

    #[test]
    fn table_alignment() {
        let out = sample().render(Format::Table).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "# demo");
        assert_eq!(lines[1], "n  value, raw");
        assert_eq!(lines[2], "0    0.300000");
        assert_eq!(lines[3], "1         inf");
    }
}
