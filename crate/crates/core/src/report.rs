//! Findings produced by the verification routines.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Observations that are neither a pass nor a failure, such as a
    /// printed value that the computation does not reproduce but that is
    /// documented as a misprint.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            findings: Vec::new(),
        }
    }

    fn push(&mut self, status: Status, check: impl Into<String>, detail: impl Into<String>) {
        self.findings.push(Finding {
            check: check.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Pass, check, detail);
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Fail, check, detail);
    }

    pub fn info(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Info, check, detail);
    }

    /// Records a pass or a fail depending on `ok`.
    pub fn check(&mut self, ok: bool, check: impl Into<String>, detail: impl Into<String>) -> bool {
        self.push(if ok { Status::Pass } else { Status::Fail }, check, detail);
        ok
    }

    /// Records whether `left == right`, showing both sides.
    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, check: impl Into<String>, left: &T, right: &T) -> bool {
        let ok = left == right;
        let detail = if ok {
            format!("{left}")
        } else {
            format!("{left} != {right}")
        };
        self.check(ok, check, detail)
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    /// True when no finding failed.
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.findings.iter().filter(|f| f.status == status).count()
    }

    /// One line: title, verdict and counts.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} pass, {} fail, {} info)",
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info)
        )
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for x in &self.findings {
            writeln!(f, "[{}] {}: {}", x.status, x.check, x.detail)?;
        }
        write!(f, "{}", self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_ignores_info() {
        let mut r = Report::new("t");
        r.pass("a", "ok");
        r.info("b", "note");
        assert!(r.passed());
        assert!(!r.check_eq("c", &1, &2));
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().detail, "1 != 2");
        assert_eq!(r.summary(), "t: FAIL (1 pass, 1 fail, 1 info)");
    }
}
