//! Pretty JSON that keeps numeric arrays, and arrays of those, on one line,
//! so a matrix prints one row per line.

use serde::Serialize;
use serde_json::Value;

fn depth(v: &Value) -> Option<usize> {
    match v {
        Value::Array(items) => items.iter().try_fold(1, |d, x| Some(d.max(1 + depth(x)?))),
        Value::Object(_) => None,
        _ => Some(0),
    }
}

fn write(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if !items.is_empty() && depth(v).is_some_and(|d| d > 2) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) => {
            // inline; objects inside still break onto their own lines
            if items.iter().any(Value::is_object) {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    write(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            } else {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write(x, indent + 1, out);
                }
                out.push(']');
            }
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Serializes with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write(&v, 0, &mut out);
    out.push('\n');
    out
}
