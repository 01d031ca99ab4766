//! Plain-text rendering of a JSON payload, so both output modes carry the
//! same data.

use serde_json::{Map, Value};

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => object(map, 0, &mut out),
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.is_empty() => "(none)".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match v {
            v if is_flat(v) => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                object(inner, indent + 2, out);
            }
            Value::Array(items) => {
                out.push_str(&format!("{pad}{k}:\n"));
                array(items, indent + 2, out);
            }
            _ => unreachable!("scalars are flat"),
        }
    }
}

fn array(items: &[Value], indent: usize, out: &mut String) {
    let rows: Option<Vec<&Map<String, Value>>> = items
        .iter()
        .map(|x| x.as_object().filter(|m| m.values().all(is_flat)))
        .collect();
    match rows {
        Some(rows) if !rows.is_empty() && rows.iter().all(|r| r.keys().eq(rows[0].keys())) => {
            table(&rows, indent, out)
        }
        _ => {
            let pad = " ".repeat(indent);
            for x in items {
                match x {
                    Value::Object(inner) => {
                        out.push_str(&format!("{pad}-\n"));
                        object(inner, indent + 2, out);
                    }
                    Value::Array(inner) if !is_flat(x) => {
                        out.push_str(&format!("{pad}-\n"));
                        array(inner, indent + 2, out);
                    }
                    other => out.push_str(&format!("{pad}- {}\n", scalar(other))),
                }
            }
        }
    }
}

fn table(rows: &[&Map<String, Value>], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let header: Vec<String> = rows[0].keys().cloned().collect();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.values().map(scalar).collect()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        let joined: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("{pad}{}\n", joined.join("  ").trim_end())
    };
    out.push_str(&line(&header));
    for r in &cells {
        out.push_str(&line(r));
    }
}
