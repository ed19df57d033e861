//! Reports: a JSON body plus a list of expected-versus-computed checks.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn eq<T: PartialEq + ToString>(name: impl Into<String>, expected: T, computed: T) -> Self {
        Check { name: name.into(), pass: expected == computed, expected: expected.to_string(), computed: computed.to_string() }
    }

    pub fn within(name: impl Into<String>, expected: f64, tol: f64, computed: f64) -> Self {
        Check {
            name: name.into(),
            expected: format!("{expected} +- {tol:e}"),
            computed: format!("{computed:.9}"),
            pass: (computed - expected).abs() <= tol,
        }
    }

    /// A computation that failed where a value was expected.
    pub fn failed(name: impl Into<String>, expected: impl ToString, err: impl std::fmt::Display) -> Self {
        Check { name: name.into(), expected: expected.to_string(), computed: format!("error: {err}"), pass: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub body: Value,
    pub checks: Vec<Check>,
    /// Replaces the generic text rendering.
    #[serde(skip)]
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &str, body: Value) -> Self {
        Report { command: command.into(), body, checks: Vec::new(), text: None }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = format!("== {} ==\n", self.command);
        flatten(&self.body, "", &mut out);
        if !self.checks.is_empty() {
            out.push('\n');
            let rows: Vec<[String; 4]> = self
                .checks
                .iter()
                .map(|c| [if c.pass { "ok" } else { "MISMATCH" }.to_string(), c.name.clone(), c.expected.clone(), c.computed.clone()])
                .collect();
            out.push_str(&aligned(&["status", "check", "expected", "computed"], &rows));
        }
        out
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Columns padded to their widest cell.
pub fn aligned<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s: String = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<width$}", width = w[i]))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
