//! Check records shared by all verification suites.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Computed and recorded, never gating.
    ReportOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// Short name of the identity or statement being checked.
    pub anchor: String,
    pub verdict: Verdict,
    /// Offending entry on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Computed values worth recording (dimensions, scalars, counts).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub wall_ms: f64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        self.detail = Some(match self.detail.take() {
            Some(prev) => format!("{prev}; {detail}"),
            None => detail,
        });
        self
    }
}

/// Times `f`, which returns `Ok(())` on success or `Err(witness)`.
pub fn gating(id: &str, anchor: &str, f: impl FnOnce() -> Result<(), String>) -> CheckRecord {
    let start = Instant::now();
    let res = f();
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (verdict, witness) = match res {
        Ok(()) => (Verdict::Pass, None),
        Err(w) => (Verdict::Fail, Some(w)),
    };
    CheckRecord {
        id: id.into(),
        anchor: anchor.into(),
        verdict,
        witness,
        detail: None,
        wall_ms,
    }
}

/// Times `f` and records its output without gating on it.
pub fn report_only(id: &str, anchor: &str, f: impl FnOnce() -> String) -> CheckRecord {
    let start = Instant::now();
    let detail = f();
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    CheckRecord {
        id: id.into(),
        anchor: anchor.into(),
        verdict: Verdict::ReportOnly,
        witness: None,
        detail: Some(detail),
        wall_ms,
    }
}

/// Helper for equality checks on matrices: `Err` names the first differing entry.
pub fn expect_equal(a: &crate::tensor::Matrix, b: &crate::tensor::Matrix) -> Result<(), String> {
    match a.first_difference(b) {
        None => Ok(()),
        Some((usize::MAX, _)) => Err(format!(
            "shape {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )),
        Some((i, j)) => Err(format!(
            "entry ({}, {}): {} vs {}",
            i + 1,
            j + 1,
            a[(i, j)],
            b[(i, j)]
        )),
    }
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}
