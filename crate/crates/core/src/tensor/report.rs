//! Verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact polynomial identities.
    Symbolic,
    /// Exact evaluation at seeded random points.
    Sampled,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled => "sampled",
        })
    }
}

/// Number of random points used in sampled mode.
pub const SAMPLE_POINTS: usize = 20;
/// Coordinates of sample points are drawn from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 1_000_000;
/// Redraws allowed when a required determinant vanishes at a sample point.
pub const MAX_REJECTIONS: usize = 100;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: Mode::Symbolic, seed: DEFAULT_SEED }
    }
}

impl VerifyOptions {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn sampled(seed: u64) -> Self {
        VerifyOptions { mode: Mode::Sampled, seed }
    }

    /// Symbolic up to five components, sampled above.
    pub fn for_size(n: usize, seed: u64) -> Self {
        VerifyOptions { mode: if n <= 5 { Mode::Symbolic } else { Mode::Sampled }, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 1-based index tuple of the first nonzero residual component.
    pub indices: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub name: String,
    /// 1-based metric indices the condition refers to, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub metrics: Option<Vec<usize>>,
    pub passed: bool,
    /// Whether the condition enters the verdict.
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub criterion: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub verdict: bool,
    pub conditions: Vec<ConditionResult>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(criterion: &str, opts: VerifyOptions, conditions: Vec<ConditionResult>) -> Self {
        let verdict = conditions.iter().filter(|c| c.required).all(|c| c.passed);
        VerificationReport {
            criterion: criterion.to_string(),
            mode: opts.mode,
            seed: (opts.mode == Mode::Sampled).then_some(opts.seed),
            verdict,
            conditions,
            notes: Vec::new(),
        }
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Whether the named condition passed; `None` if it was not checked.
    pub fn passed(&self, name: &str) -> Option<bool> {
        self.condition(name).map(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionResult> {
        self.conditions.iter().filter(|c| c.required && !c.passed)
    }

    /// First failing condition whose name contains `needle`.
    pub fn failed_containing(&self, needle: &str) -> bool {
        self.failures().any(|c| c.name.contains(needle))
    }
}
