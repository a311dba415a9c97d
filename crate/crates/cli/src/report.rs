//! Deterministic command reports, rendered as text or JSON with
//! identical verdict content.

use serde::{Deserialize, Serialize};

/// One result line: a named value or a named comparison.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultLine {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl ResultLine {
    /// A computed value; `pass` records that the computation succeeded.
    pub fn value(name: impl Into<String>, value: impl Into<String>) -> Self {
        ResultLine {
            name: name.into(),
            lhs: value.into(),
            rhs: String::new(),
            pass: true,
        }
    }

    pub fn comparison(
        name: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        pass: bool,
    ) -> Self {
        ResultLine {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
        }
    }
}

/// The full report of one command invocation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub inputs: Vec<String>,
    pub results: Vec<ResultLine>,
    pub exit: i32,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("gwitt {} (field {})\n", self.command, self.field));
        for input in &self.inputs {
            out.push_str(&format!("  input: {input}\n"));
        }
        for line in &self.results {
            let mark = if line.pass { "ok " } else { "FAIL" };
            if line.rhs.is_empty() {
                out.push_str(&format!("  [{mark}] {}: {}\n", line.name, line.lhs));
            } else {
                out.push_str(&format!(
                    "  [{mark}] {}: {} vs {}\n",
                    line.name, line.lhs, line.rhs
                ));
            }
        }
        out.push_str(&format!("exit: {}\n", self.exit));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
