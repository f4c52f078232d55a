//! Output emission: a JSON envelope (validated against the schema shipped
//! in docs/), generic CSV, and aligned tables. Floating values in CSV and
//! table modes are printed with 15 significant digits.

use serde_json::Value;
use zmlab_core::error::Error;

/// Render a float with 15 significant digits, round-trip safe.
pub fn fmt_float(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:.14e}")
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => fmt_float(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// The JSON envelope every subcommand emits in JSON mode.
pub fn json_ok(command: &str, data: Value) -> Value {
    serde_json::json!({
        "command": command,
        "status": "ok",
        "data": data,
    })
}

pub fn json_error(command: &str, err: &Error) -> Value {
    serde_json::json!({
        "command": command,
        "status": "error",
        "error": {
            "code": err.code(),
            "message": err.to_string(),
        },
    })
}

/// Generic CSV rendering: arrays of flat objects become header + rows;
/// a single object becomes a two-line CSV.
pub fn to_csv(data: &Value) -> String {
    match data {
        Value::Array(rows) if !rows.is_empty() => {
            let mut columns: Vec<String> = Vec::new();
            for row in rows {
                if let Value::Object(map) = row {
                    for key in map.keys() {
                        if !columns.iter().any(|c| c == key) {
                            columns.push(key.clone());
                        }
                    }
                }
            }
            let mut out = columns.join(",");
            out.push('\n');
            for row in rows {
                if let Value::Object(map) = row {
                    let line: Vec<String> = columns
                        .iter()
                        .map(|c| map.get(c).map(scalar).unwrap_or_default())
                        .collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
            }
            out
        }
        Value::Object(map) => {
            let keys: Vec<&String> = map.keys().collect();
            let header = keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(",");
            let row = keys
                .iter()
                .map(|k| scalar(&map[k.as_str()]))
                .collect::<Vec<_>>()
                .join(",");
            format!("{header}\n{row}\n")
        }
        other => format!("{}\n", scalar(other)),
    }
}

/// Aligned table rendering for human consumption.
pub fn to_table(data: &Value) -> String {
    match data {
        Value::Array(rows) if !rows.is_empty() => {
            let mut columns: Vec<String> = Vec::new();
            for row in rows {
                if let Value::Object(map) = row {
                    for key in map.keys() {
                        if !columns.iter().any(|c| c == key) {
                            columns.push(key.clone());
                        }
                    }
                }
            }
            let mut cells: Vec<Vec<String>> = vec![columns.clone()];
            for row in rows {
                if let Value::Object(map) = row {
                    cells.push(
                        columns
                            .iter()
                            .map(|c| map.get(c).map(scalar).unwrap_or_default())
                            .collect(),
                    );
                }
            }
            let widths: Vec<usize> = (0..columns.len())
                .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            let mut nested: Vec<(&String, &Value)> = Vec::new();
            for (k, v) in map {
                match v {
                    Value::Array(items)
                        if items.iter().all(|i| i.is_object()) && !items.is_empty() =>
                    {
                        nested.push((k, v));
                    }
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!(
                            "{k:<width$}  {}\n",
                            serde_json::to_string(v).unwrap()
                        ));
                    }
                    _ => out.push_str(&format!("{k:<width$}  {}\n", scalar(v))),
                }
            }
            for (k, v) in nested {
                out.push_str(&format!("\n{k}:\n"));
                out.push_str(&to_table(v));
            }
            out
        }
        other => format!("{}\n", scalar(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_significant_digits() {
        assert_eq!(fmt_float(0.5), "5.00000000000000e-1");
        assert_eq!(fmt_float(3.0), "3");
        let s = fmt_float(std::f64::consts::PI);
        assert!(s.starts_with("3.14159265358979"), "{s}");
    }

    #[test]
    fn csv_of_object_array() {
        let data = serde_json::json!([{"a": 1, "b": 0.25}, {"a": 2, "b": 0.5}]);
        let csv = to_csv(&data);
        assert!(csv.starts_with("a,b\n"));
        assert!(csv.contains("2.50000000000000e-1"));
    }

    #[test]
    fn table_alignment() {
        let data = serde_json::json!([{"name": "x", "value": 1}, {"name": "longer", "value": 2}]);
        let t = to_table(&data);
        assert!(t.lines().count() == 3);
        assert!(t.starts_with("name"));
    }
}
