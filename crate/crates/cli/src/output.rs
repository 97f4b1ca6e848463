//! Deterministic output formatting.
//!
//! JSON numbers are printed with 17 significant digits (round-trip safe
//! for f64); CSV plot data with 12. Everything is assembled in fixed
//! order, so identical invocations produce byte-identical output.

use std::fmt::Write as _;

/// 17 significant digits, lowercase scientific: round-trips to the same f64.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// 12 significant digits for plot-ready CSV.
pub fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

/// Minimal ordered JSON-object builder. Keys are plain identifiers and
/// strings never contain characters needing escapes beyond quotes.
pub struct JsonMap {
    body: String,
}

impl JsonMap {
    pub fn new() -> Self {
        Self {
            body: String::new(),
        }
    }

    fn sep(&mut self) {
        if !self.body.is_empty() {
            self.body.push(',');
        }
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.sep();
        let _ = write!(self.body, "\"{key}\":{}", fmt17(value));
    }

    pub fn push_int(&mut self, key: &str, value: i64) {
        self.sep();
        let _ = write!(self.body, "\"{key}\":{value}");
    }

    pub fn push_bool(&mut self, key: &str, value: bool) {
        self.sep();
        let _ = write!(self.body, "\"{key}\":{value}");
    }

    pub fn push_str(&mut self, key: &str, value: &str) {
        self.sep();
        let escaped = value.replace('\\', "\\\\").replace('"', "\\\"");
        let _ = write!(self.body, "\"{key}\":\"{escaped}\"");
    }

    /// Inserts an already-serialized JSON value.
    pub fn push_raw(&mut self, key: &str, value: &str) {
        self.sep();
        let _ = write!(self.body, "\"{key}\":{value}");
    }

    pub fn finish(self) -> String {
        format!("{{{}}}", self.body)
    }
}

/// Writes to the path when given, otherwise to stdout.
pub fn write_out(path: Option<&str>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {p}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
