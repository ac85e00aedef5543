use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Computed, but the test is one-sided and did not decide.
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub claim: String,
    pub anchor: String,
    pub status: Status,
    pub values: Value,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: Value,
    /// Sorted by claim id.
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(config: Value, mut entries: Vec<Entry>) -> Self {
        entries.sort_by(|a, b| a.claim.cmp(&b.claim));
        Report { config, entries }
    }

    /// Only failures fail a report.
    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "anchor": e.anchor,
                    "claim": e.claim,
                    "status": e.status.as_str(),
                    "values": e.values,
                    "wall_ms": (e.wall_ms * 1000.0).round() / 1000.0,
                })
            })
            .collect();
        json!({
            "config": self.config,
            "entries": entries,
            "status": if self.failed() { "fail" } else { "pass" },
            "tool": "knotcert",
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{:<8} {:<32} {} [{:.1} ms]\n",
                e.status.as_str().to_uppercase(),
                e.claim,
                e.values,
                e.wall_ms
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} pass, {} fail, {} skipped, {} unknown)\n",
            if self.failed() { "FAIL" } else { "PASS" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.count(Status::Unknown),
        ));
        out
    }
}
