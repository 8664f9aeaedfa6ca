//! Pass/fail records and verdict statuses shared by the checks and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        })
    }
}

/// Outcome of one verification. `witness` carries the offending object
/// (a polynomial in canonical form, a root index, ...) on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), status: CheckStatus::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), status: CheckStatus::Fail, witness: Some(witness.into()) }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

/// Which result settles (or fails to settle) a factoriality question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "THM3_MAIN")]
    Thm3Main,
    #[serde(rename = "THM3_REMARK_ALT")]
    Thm3RemarkAlt,
    #[serde(rename = "PROP4_1")]
    Prop4_1,
    #[serde(rename = "PROP4_2")]
    Prop4_2,
    #[serde(rename = "DG_NOT_SC")]
    DgNotSc,
    #[serde(rename = "NO_REG_SS_TYPE_C")]
    NoRegSsTypeC,
    #[serde(rename = "COROOT_DIFF_ZERO")]
    CorootDiffZero,
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::Thm3Main => "THM3_MAIN",
            Reason::Thm3RemarkAlt => "THM3_REMARK_ALT",
            Reason::Prop4_1 => "PROP4_1",
            Reason::Prop4_2 => "PROP4_2",
            Reason::DgNotSc => "DG_NOT_SC",
            Reason::NoRegSsTypeC => "NO_REG_SS_TYPE_C",
            Reason::CorootDiffZero => "COROOT_DIFF_ZERO",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatusKind {
    #[serde(rename = "PROVEN_UFD")]
    ProvenUfd,
    #[serde(rename = "OPEN_PER_PAPER")]
    OpenPerPaper,
}

/// A factoriality verdict. There is deliberately no negative variant: the
/// available criteria are sufficient conditions only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    pub status: StatusKind,
    pub reason: Reason,
}

impl Status {
    pub fn proven(reason: Reason) -> Self {
        Self { status: StatusKind::ProvenUfd, reason }
    }

    pub fn open(reason: Reason) -> Self {
        Self { status: StatusKind::OpenPerPaper, reason }
    }

    pub fn is_proven(&self) -> bool {
        self.status == StatusKind::ProvenUfd
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.status {
            StatusKind::ProvenUfd => "PROVEN_UFD",
            StatusKind::OpenPerPaper => "OPEN_PER_PAPER",
        };
        write!(f, "{kind} ({})", self.reason)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rendering_and_json() {
        let s = Status::open(Reason::NoRegSsTypeC);
        assert_eq!(s.to_string(), "OPEN_PER_PAPER (NO_REG_SS_TYPE_C)");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"status":"OPEN_PER_PAPER","reason":"NO_REG_SS_TYPE_C"}"#);
        assert_eq!(serde_json::from_str::<Status>(&j).unwrap(), s);
    }

    #[test]
    fn reason_tags_match_serde() {
        for r in [
            Reason::Thm3Main,
            Reason::Thm3RemarkAlt,
            Reason::Prop4_1,
            Reason::Prop4_2,
            Reason::DgNotSc,
            Reason::NoRegSsTypeC,
            Reason::CorootDiffZero,
        ] {
            assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.tag()));
        }
    }

    #[test]
    fn check_report_omits_empty_witness() {
        let j = serde_json::to_string(&CheckReport::pass("x")).unwrap();
        assert_eq!(j, r#"{"name":"x","status":"PASS"}"#);
        assert!(CheckReport::fail("y", "w").to_string().contains("witness: w"));
    }
}
