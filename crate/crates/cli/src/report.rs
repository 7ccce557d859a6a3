//! Line-oriented output shared by every subcommand.
//!
//! Machine mode prints `key=value`; human mode prints `key: value` with the
//! keys padded to a common width. Keys are identical in both modes.

use std::fmt::Display;

#[derive(Default)]
pub struct Report {
    rows: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) {
        self.rows.push((key.into(), value.to_string()));
    }

    /// Records a float, printing negative zero as `0`.
    pub fn num(&mut self, key: impl Into<String>, value: f64) {
        self.put(key, value + 0.0);
    }

    /// Records a pass/fail flag and returns whether it passed.
    pub fn check(&mut self, key: impl Into<String>, ok: bool) -> bool {
        self.put(key, if ok { "pass" } else { "fail" });
        ok
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            for (k, v) in &self.rows {
                out.push_str(&format!("{k}={v}\n"));
            }
        } else {
            let width = self.rows.iter().map(|(k, _)| k.chars().count() + 1).max().unwrap_or(0);
            for (k, v) in &self.rows {
                out.push_str(&format!("{:width$}  {v}\n", format!("{k}:")));
            }
        }
        out
    }
}
