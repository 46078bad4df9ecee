use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every part of the plan reached a proof.
    Proven,
    /// A command without a proof obligation finished cleanly.
    Success,
    /// Everything that ran was proven, but the plan was truncated.
    Partial,
    Undecided,
    /// The plan was emitted but not run.
    Deferred,
    /// Recomputation disagrees with embedded reference data.
    Failed,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Proven | Verdict::Success | Verdict::Partial => 0,
            Verdict::Undecided | Verdict::Deferred => 1,
            Verdict::Failed => 3,
        }
    }
}

/// Everything a command did. Serialized output is stable for equal inputs
/// apart from `timings_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub outputs: Value,
    pub notices: Vec<String>,
    pub checkpoints: Vec<String>,
    pub timings_ms: BTreeMap<String, u64>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: impl Serialize) -> Self {
        RunReport {
            command: command.into(),
            inputs: serde_json::to_value(inputs).expect("inputs serialize"),
            verdict: Verdict::Success,
            outputs: Value::Null,
            notices: Vec::new(),
            checkpoints: Vec::new(),
            timings_ms: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn notice(&mut self, s: impl Into<String>) {
        self.notices.push(s.into());
    }

    pub fn set_outputs(&mut self, outputs: impl Serialize) {
        self.outputs = serde_json::to_value(outputs).expect("outputs serialize");
    }

    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms.insert(label.to_string(), start.elapsed().as_millis() as u64);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for n in &self.notices {
            out.push_str("NOTICE: ");
            out.push_str(n);
            out.push('\n');
        }
        for c in &self.checkpoints {
            out.push_str("checkpoint: ");
            out.push_str(c);
            out.push('\n');
        }
        let total: u64 = self.timings_ms.values().sum();
        out.push_str(&format!("verdict: {:?} ({total} ms)\n", self.verdict));
        out
    }
}
