use std::fmt::Write as _;

use serde_json::{Map, Value};

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Json,
    Pretty,
}

/// Render a report. JSON keys are sorted, so output is byte-stable.
pub fn emit_report(report: &Value, mode: Mode) -> String {
    match mode {
        Mode::Json => {
            let mut s = serde_json::to_string(report).expect("reports contain only JSON values");
            s.push('\n');
            s
        }
        Mode::Pretty => {
            let mut out = String::new();
            pretty(&mut out, "", report, 0);
            out
        }
    }
}

fn is_check(m: &Map<String, Value>) -> bool {
    m.len() == 3 && m.contains_key("residual") && m.contains_key("threshold") && m.contains_key("pass")
}

fn is_matrix(m: &Map<String, Value>) -> bool {
    m.len() == 3 && m.contains_key("rows") && m.contains_key("cols") && m.contains_key("entries")
}

fn number(v: &Value) -> String {
    match v.as_f64() {
        Some(x) if v.is_f64() => format!("{x:.6e}"),
        _ => v.to_string(),
    }
}

fn complex(v: &Value) -> String {
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => {
            let (re, im) = (re.as_f64().unwrap_or(f64::NAN), im.as_f64().unwrap_or(f64::NAN));
            let sign = if im.is_sign_negative() { '-' } else { '+' };
            format!("{re:.6} {sign} {:.6}i", im.abs())
        }
        _ => v.to_string(),
    }
}

fn pretty(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let label = if key.is_empty() { String::new() } else { format!("{key}: ") };
    match v {
        Value::Object(m) if is_check(m) => {
            let pass = m["pass"].as_bool().unwrap_or(false);
            let _ = writeln!(
                out,
                "{pad}[{}] {key:<28} residual = {:<14} threshold = {}",
                if pass { "PASS" } else { "FAIL" },
                number(&m["residual"]),
                number(&m["threshold"]),
            );
        }
        Value::Object(m) if is_matrix(m) => {
            let _ = writeln!(out, "{pad}{label}{}x{}", m["rows"], m["cols"]);
            let rows: Vec<Vec<String>> = m["entries"]
                .as_array()
                .map(|rs| {
                    rs.iter()
                        .map(|r| r.as_array().map(|cs| cs.iter().map(complex).collect()).unwrap_or_default())
                        .collect()
                })
                .unwrap_or_default();
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(out, "{pad}  [ {} ]", cells.join("  "));
            }
        }
        Value::Object(m) => {
            if !key.is_empty() {
                let _ = writeln!(out, "{pad}{key}:");
            }
            let inner = if key.is_empty() { depth } else { depth + 1 };
            for (k, x) in m {
                pretty(out, k, x, inner);
            }
        }
        Value::Array(items) if items.len() == 2 && items.iter().all(Value::is_number) => {
            let _ = writeln!(out, "{pad}{label}{}", complex(v));
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(number).collect();
            let _ = writeln!(out, "{pad}{label}[{}]", parts.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in items.iter().enumerate() {
                pretty(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        scalar => {
            let _ = writeln!(out, "{pad}{label}{}", number(scalar));
        }
    }
}
