//! Machine-readable command output. Field order is declaration order, so
//! identical inputs give byte-identical JSON.

use serde::{Deserialize, Serialize};

use crate::pencil::SegreReport;
use crate::tensor::{ConditionResult, Mode, VerificationReport};

/// Output of `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub n: usize,
    pub d: usize,
    pub mode: Mode,
    pub seed: u64,
    pub criterion: String,
    pub verdict: bool,
    pub conditions: Vec<ConditionResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Segre data of the first two metrics, when they form a classifiable
    /// pencil.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segre: Option<SegreReport>,
    /// Wall-clock time, only with `--timing`: it would break determinism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportFile {
    pub fn new(n: usize, d: usize, seed: u64, rep: VerificationReport, segre: Option<SegreReport>) -> Self {
        ReportFile {
            n,
            d,
            mode: rep.mode,
            seed,
            criterion: rep.criterion,
            verdict: rep.verdict,
            conditions: rep.conditions,
            notes: rep.notes,
            segre,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "mode: {}  seed: {}  n = {}  d = {}\ncriterion: {}\nverdict: {}\n",
            self.mode,
            self.seed,
            self.n,
            self.d,
            self.criterion,
            if self.verdict { "PASS" } else { "FAIL" }
        );
        for c in &self.conditions {
            let tag = match (c.passed, c.required) {
                (true, _) => "pass",
                (false, true) => "FAIL",
                (false, false) => "fail (not required)",
            };
            out.push_str(&format!("  [{tag}] {}", c.name));
            if let Some(m) = &c.metrics {
                let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!(" (metrics {})", m.join(",")));
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                let idx: Vec<String> = w.indices.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("      witness at ({}): {}\n", idx.join(","), w.residual));
            }
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        if let Some(s) = &self.segre {
            out.push_str(&format!("segre: {}{}\n", s.symbol(), if s.consistent { "" } else { " (inconsistent)" }));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time: {t} ms\n"));
        }
        out
    }
}
