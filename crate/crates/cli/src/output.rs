//! Tables written as CSV (header row, LF endings) or as a JSON array of records.

use std::io::{self, Write};

use serde_json::{Map, Number};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    Text(String),
    Missing,
}

impl Value {
    fn csv(&self) -> String {
        match self.normalized() {
            // 12 significant digits
            Value::Float(x) if x.is_finite() => format!("{x:.11e}"),
            Value::Float(x) => x.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s,
            Value::Missing => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self.normalized() {
            Value::Float(x) => {
                let rounded: Option<f64> = format!("{x:.11e}").parse().ok();
                rounded
                    .and_then(Number::from_f64)
                    .map_or(serde_json::Value::Null, serde_json::Value::Number)
            }
            Value::Int(n) => serde_json::Value::from(n),
            Value::Text(s) => serde_json::Value::from(s),
            Value::Missing => serde_json::Value::Null,
        }
    }
}

impl Value {
    /// Folds `-0.0` into `0.0` so signed zeros never reach the output.
    fn normalized(&self) -> Value {
        match self {
            Value::Float(x) => Value::Float(x + 0.0),
            other => other.clone(),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Missing, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            w.write_all(cells.join(",").as_bytes())?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        let records: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (col, v) in self.columns.iter().zip(row) {
                    m.insert((*col).to_owned(), v.json());
                }
                serde_json::Value::Object(m)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *w, &records)?;
        w.write_all(b"\n")
    }

    pub fn write(&self, format: Format, w: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["phi", "n_opt", "winner"]);
        t.push(vec![0.1.into(), 120usize.into(), "individual".into()]);
        t.push(vec![f64::INFINITY.into(), Value::Missing, "simultaneous".into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "phi,n_opt,winner\n1.00000000000e-1,120,individual\ninf,,simultaneous\n"
        );
    }

    #[test]
    fn json_records_keep_column_names() {
        let mut buf = Vec::new();
        sample().write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["n_opt"], 120);
        assert_eq!(v[0]["winner"], "individual");
        assert!(v[1]["phi"].is_null());
        assert!(v[1]["n_opt"].is_null());
    }
}
