//! Report types: one entry per certified inequality instance, plus the
//! roll-up summary. Everything is plain data so the serialized form is a
//! stable function of the inputs; entries appear in battery order and no
//! map types are involved anywhere.

use alloc::string::String;
use alloc::vec::Vec;

use super::region::Rect;
use super::InequalityId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EntryStatus {
    /// The bound held within tolerance.
    Pass,
    /// The bound was violated beyond tolerance.
    Fail,
    /// A precondition of the statement was not met; nothing was certified.
    Refused,
    /// Computed for information only; no certified constant applies.
    Info,
}

/// Parameters a check ran with, echoed into its entry. Only the fields
/// that apply to the particular inequality are populated.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct EntryParams {
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub beta: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub s: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub p: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub region: Option<Rect>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub region_measure: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub epsilon: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub epsilon_clamped: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditEntry {
    pub id: InequalityId,
    /// Measure index alpha; absent only for scalar lemmas.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub alpha: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub wavelet: Option<String>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub function: Option<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub params: EntryParams,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub lhs: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub rhs: Option<f64>,
    /// Slack factor, stated so that values >= 1 mean the bound holds with
    /// room: bounded side over bounding side for lower bounds, the
    /// reciprocal arrangement for upper bounds.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub ratio: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub margin: Option<f64>,
    pub tolerance: f64,
    pub status: EntryStatus,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "String::is_empty"))]
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub refused: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub summary: Summary,
}

impl AuditReport {
    pub fn from_entries(entries: Vec<AuditEntry>) -> AuditReport {
        let mut summary = Summary { total: entries.len(), ..Summary::default() };
        for e in &entries {
            match e.status {
                EntryStatus::Pass => summary.passed += 1,
                EntryStatus::Fail => summary.failed += 1,
                EntryStatus::Refused => summary.refused += 1,
                EntryStatus::Info => summary.info += 1,
            }
        }
        AuditReport { entries, summary }
    }

    /// An audit run succeeds when nothing failed; refusals and
    /// informational rows do not count against it.
    pub fn all_clear(&self) -> bool {
        self.summary.failed == 0
    }
}
