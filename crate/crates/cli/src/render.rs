//! Plain-text rendering of op results.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn is_row(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|r| r.iter().all(|x| scalar(x).is_some()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter()
                .map(|(k, v)| format!("{k}: {}", inline(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => scalar(other).unwrap_or_default(),
    }
}

fn table(out: &mut String, rows: &[Value]) {
    let Some(Value::Object(first)) = rows.first() else {
        return;
    };
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| r.get(k.as_str()).map(inline).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(j, k)| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: Vec<&str>| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "  {}", line(keys.iter().map(|k| k.as_str()).collect()));
    for r in &cells {
        let _ = writeln!(out, "  {}", line(r.iter().map(String::as_str).collect()));
    }
}

/// `key: value` lines; matrices print one row per line and arrays of
/// objects as aligned tables.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Array(rows)
                        if !rows.is_empty()
                            && rows.iter().all(is_row)
                            && rows.iter().all(Value::is_array) =>
                    {
                        let _ = writeln!(out, "{k}:");
                        for r in rows {
                            let _ = writeln!(
                                out,
                                "  {}",
                                inline(r).trim_start_matches('[').trim_end_matches(']')
                            );
                        }
                    }
                    Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                        let _ = writeln!(out, "{k}:");
                        table(&mut out, rows);
                    }
                    other => {
                        let _ = writeln!(out, "{k}: {}", inline(other));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}", inline(other));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn shapes() {
        let t = to_text(
            &json!({"h": 0.5, "v": [1, 2], "m": [[1, 2], [3, 4]], "rows": [{"a": 1, "bb": "x"}]}),
        );
        assert_eq!(
            t,
            "h: 0.5\nv: [1, 2]\nm:\n  1, 2\n  3, 4\nrows:\n  a  bb\n  1  x\n"
        );
        assert_eq!(to_text(&json!(null)), "-\n");
    }
}
