//! Report rendering: JSON with floats cut to 15 significant digits, and a CSV
//! mirror built from the report's `rows` array.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rounds `x` to 15 significant digits; the shortest repr of the result then
/// never prints more.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut v = v.clone();
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, inner, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => round15(x).to_string(),
            _ => n.to_string(),
        },
        Value::Bool(b) => b.to_string(),
        other => serde_json::to_string(other).expect("values serialize"),
    }
}

/// One CSV record per element of `rows` (or a single record for the whole
/// report when it has none), nested objects flattened to dotted columns.
pub fn to_csv_string(v: &Value) -> String {
    let records: Vec<Map<String, Value>> = match v.get("rows") {
        Some(Value::Array(rows)) => rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                flatten("", r, &mut m);
                m
            })
            .collect(),
        _ => {
            let mut m = Map::new();
            flatten("", v, &mut m);
            vec![m]
        }
    };
    let mut columns: Vec<String> = Vec::new();
    for r in &records {
        for k in r.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns).expect("in-memory write");
    for r in &records {
        let row: Vec<String> = columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect();
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => to_json_string(v),
        Format::Csv => to_csv_string(v),
    }
}

fn mirror_path(path: &Path, format: Format) -> PathBuf {
    path.with_extension(match format {
        Format::Json => "csv",
        Format::Csv => "json",
    })
}

/// Writes the report to `out` (or stdout). With `mirror`, the other format is
/// written next to `out` as well.
pub fn emit(v: &Value, format: Format, out: Option<&Path>, mirror: bool) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(render(v, format).as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            std::fs::write(path, render(v, format))?;
            if mirror {
                let other = if format == Format::Json { Format::Csv } else { Format::Json };
                std::fs::write(mirror_path(path, format), render(v, other))?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fifteen_digits() {
        assert_eq!(round15(0.6131471927654584), 0.613147192765458);
        assert_eq!(round15(0.4), 0.4);
        assert_eq!(round15(2.0 / 3.0).to_string(), "0.666666666666667");
        assert!(round15(f64::INFINITY).is_infinite());
    }

    #[test]
    fn csv_from_rows() {
        let v = json!({"group": "S:3", "rows": [{"a": 1, "b": {"c": 0.5}}, {"a": 2, "d": true}]});
        let s = to_csv_string(&v);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "a,b.c,d");
        assert_eq!(lines[1], "1,0.5,");
        assert_eq!(lines[2], "2,,true");
    }

    #[test]
    fn csv_without_rows_is_one_record() {
        let v = json!({"x": 1, "y": [1, 2]});
        assert_eq!(to_csv_string(&v), "x,y\n1,\"[1,2]\"\n");
    }
}
