use std::fmt::Write as _;
use std::time::Instant;

/// Human-readable lines plus the key-value pairs behind them.
pub struct Report {
    subcommand: &'static str,
    lines: Vec<String>,
    fields: Vec<(String, String)>,
    passed: bool,
    start: Instant,
}

impl Report {
    pub fn new(subcommand: &'static str) -> Self {
        Report {
            subcommand,
            lines: Vec::new(),
            fields: Vec::new(),
            passed: true,
            start: Instant::now(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    /// A line that is also recorded under `key`.
    pub fn entry(&mut self, key: impl Into<String>, label: &str, value: impl ToString) {
        let value = value.to_string();
        self.lines.push(format!("{label}: {value}"));
        self.fields.push((key.into(), value));
    }

    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.passed = false;
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn render(&self, structured: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        if structured {
            let _ = writeln!(out, "--- structured ---");
            let _ = writeln!(out, "subcommand = {}", self.subcommand);
            for (k, v) in &self.fields {
                // multi-line values keep one physical line per key
                let _ = writeln!(out, "{k} = {}", v.replace('\n', " | "));
            }
            let _ = writeln!(
                out,
                "status = {}",
                if self.passed { "pass" } else { "fail" }
            );
            let _ = writeln!(out, "elapsed_ms = {}", self.start.elapsed().as_millis());
            let _ = writeln!(out, "--- end ---");
        }
        out
    }
}
