use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Disagreement with a tabulated value; reported, never fatal.
    Warn,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a subcommand produces. No timing or host data goes in here so
/// the serialized form is reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub statement: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, statement: &str, inputs: Value) -> Self {
        Report {
            command: command.into(),
            statement: statement.into(),
            inputs,
            results: Value::Null,
            table: None,
            verdicts: Vec::new(),
            pass: true,
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, status: Status, detail: impl Into<String>) {
        if status == Status::Fail {
            self.pass = false;
        }
        self.verdicts.push(Verdict { check: check.into(), status, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// The table if there is one, otherwise the verdict list.
    pub fn to_csv(&self) -> String {
        let owned;
        let table = match &self.table {
            Some(t) => t,
            None => {
                owned = Table {
                    columns: vec!["check".into(), "status".into(), "detail".into()],
                    rows: self
                        .verdicts
                        .iter()
                        .map(|v| vec![v.check.clone(), v.status.tag().to_lowercase(), v.detail.clone()])
                        .collect(),
                };
                &owned
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&table.columns).chain(&table.rows) {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.statement);
        if let Value::Object(inputs) = &self.inputs {
            let parts: Vec<String> = inputs.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
            if !parts.is_empty() {
                let _ = writeln!(out, "inputs: {}", parts.join(" "));
            }
        }
        // Nested values are left to the table and the JSON report.
        if let Value::Object(results) = &self.results {
            for (k, v) in results.iter().filter(|(_, v)| is_flat(v)) {
                let _ = writeln!(out, "  {k}: {}", compact(v));
            }
        }
        if let Some(t) = &self.table {
            out.push_str(&render_table(t));
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "[{}] {}: {}", v.status.tag(), v.check, v.detail);
        }
        let warns = self.verdicts.iter().filter(|v| v.status == Status::Warn).count();
        let _ = writeln!(out, "result: {} ({} checks, {warns} warnings)", if self.pass { "PASS" } else { "FAIL" }, self.verdicts.len());
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        _ => true,
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn render_table(t: &Table) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for row in &t.rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&t.columns);
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}
