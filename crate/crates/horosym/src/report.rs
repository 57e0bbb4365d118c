//! Deterministic report serialization shared by the library and the CLI:
//! rationals render as `"p/q"` strings, floats at 17 significant digits,
//! JSON objects with sorted keys, and a fixed CSV dialect.

use crate::rational::{fmt_rat, Rat};
use serde::ser::Serializer;
use serde_json::Value;
use std::collections::BTreeMap;

/// Serde helper: render a `Rat` field as its `"p/q"` string.
pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(x))
}

/// Render a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

/// JSON value for a float, as a string token to keep byte determinism.
pub fn json_f64(x: f64) -> Value {
    Value::String(fmt_f64(x))
}

pub fn json_rat(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

/// Recursively sort object keys; `serde_json::Value` maps already iterate in
/// insertion order, so reports build `BTreeMap`s before conversion.
pub fn sorted(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let sorted_map: BTreeMap<String, Value> =
                map.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            Value::Object(sorted_map.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Verdict of a report: `PASS`, `FAIL`, or `N/A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N/A",
        }
    }
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::NotApplicable => 0,
            Verdict::Fail => 1,
        }
    }
}

/// Envelope around command payloads. The timestamp field is kept `null`
/// unless explicitly stamped, so identical inputs give identical bytes.
#[derive(Debug, Clone)]
pub struct ReportEnvelope {
    pub command: String,
    pub space: Option<String>,
    pub timestamp: Option<String>,
    pub payload: Value,
    pub verdict: Verdict,
}

impl ReportEnvelope {
    pub fn new(command: &str, space: Option<&str>, payload: Value, verdict: Verdict) -> Self {
        ReportEnvelope {
            command: command.to_string(),
            space: space.map(str::to_string),
            timestamp: None,
            payload,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert(
            "space".into(),
            self.space.clone().map(Value::String).unwrap_or(Value::Null),
        );
        map.insert(
            "timestamp".into(),
            self.timestamp.clone().map(Value::String).unwrap_or(Value::Null),
        );
        map.insert("tool_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        map.insert("payload".into(), self.payload.clone());
        map.insert("verdict".into(), Value::String(self.verdict.as_str().into()));
        serde_json::to_string_pretty(&sorted(Value::Object(map))).expect("serializable") + "\n"
    }
}

/// Minimal CSV writer: comma separator, `"` quoting only when needed.
pub fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    quoted.join(",")
}

/// Parse one CSV line of the dialect written by [`csv_line`].
pub fn parse_csv_line(line: &str) -> Result<Vec<String>, String> {
    let mut fields = vec![];
    let mut cur = String::new();
    let mut chars = line.chars().peekable();
    let mut in_quotes = false;
    while let Some(c) = chars.next() {
        if in_quotes {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    cur.push('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push(c);
            }
        } else {
            match c {
                '"' if cur.is_empty() => in_quotes = true,
                ',' => {
                    fields.push(std::mem::take(&mut cur));
                }
                _ => cur.push(c),
            }
        }
    }
    if in_quotes {
        return Err("unterminated quote".into());
    }
    fields.push(cur);
    Ok(fields)
}

/// Fixed-width text table with a header row.
pub fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let ncol = header.len();
    let mut width = vec![0usize; ncol];
    for (i, h) in header.iter().enumerate() {
        width[i] = h.len();
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(ncol) {
            width[i] = width[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], width: &[usize]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<w$}", cell, w = width[i]));
        }
        line.trim_end().to_string()
    };
    out.push_str(&fmt_row(header, &width));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row, &width));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_serialization() {
        assert_eq!(json_rat(&rat(112, 19)), Value::String("112/19".into()));
    }

    #[test]
    fn deterministic_json() {
        let env = ReportEnvelope::new(
            "constants",
            Some("AI"),
            serde_json::json!({"b": 1, "a": 2}),
            Verdict::Pass,
        );
        assert_eq!(env.to_json(), env.to_json());
        let first_key_pos = env.to_json().find("\"a\"").unwrap();
        let second_key_pos = env.to_json().find("\"b\"").unwrap();
        assert!(first_key_pos < second_key_pos);
    }

    #[test]
    fn csv_round_trip() {
        let fields = vec!["a".to_string(), "with,comma".into(), "q\"uote".into()];
        let line = csv_line(&fields);
        assert_eq!(parse_csv_line(&line).unwrap(), fields);
    }
}
