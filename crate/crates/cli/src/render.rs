//! Text rendering of a report. Everything printed comes from the same JSON
//! value the `--json` mode emits, so both carry identical numbers.

use std::fmt::Write;

use serde_json::Value;

use crate::Report;

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    let name = report.config_echo.as_ref().and_then(|c| c.name.clone());
    match name {
        Some(n) => writeln!(out, "== {} ({n}) ==", report.command).unwrap(),
        None => writeln!(out, "== {} ==", report.command).unwrap(),
    }
    value(&mut out, &report.results, 0);
    for w in &report.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Scalars and arrays of scalars on one line; `None` for anything deeper.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            Some(format!("[{}]", items.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|x| inline(x).is_some()) && items.len() <= 8 => {
            Some(format!("[{}]", items.iter().map(|x| inline(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn cell(v: &Value) -> String {
    inline(v).unwrap_or_else(|| v.to_string())
}

fn value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        value(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => table(out, items, indent),
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => writeln!(out, "{pad}{s}").unwrap(),
                    None => value(out, x, indent + 1),
                }
            }
        }
        other => writeln!(out, "{pad}{}", cell(other)).unwrap(),
    }
}

fn table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = "  ".repeat(indent);
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> =
        (0..columns.len()).map(|i| cells.iter().map(|r| r[i].chars().count()).chain([columns[i].len()]).max().unwrap()).collect();
    let line = |fields: &[String]| -> String {
        let parts: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
        format!("{pad}{}", parts.join("  ").trim_end())
    };
    writeln!(out, "{}", line(&columns)).unwrap();
    for r in &cells {
        writeln!(out, "{}", line(r)).unwrap();
    }
}
