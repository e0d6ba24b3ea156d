//! `key=value` records and CSV tables.

use std::fmt::{Display, Write as _};

/// One line of space-separated `key=value` pairs.
#[derive(Debug, Default, Clone)]
pub struct Record(Vec<(String, String)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.0.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.0.push((key.to_owned(), value.to_string()));
    }
}

impl Display for Record {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn records(rs: &[Record]) -> String {
    rs.iter().map(|r| format!("{r}\n")).collect()
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(csv_number).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}
