use std::fmt;
use std::io::Write;
use std::time::Duration;

use crate::error::Result;

/// One named check inside a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Exact residual or measured value, when the check has one.
    pub residual: Option<String>,
    /// Window or horizon the numbers came from.
    pub window: String,
    /// Violated invariant and witness on failure, summary otherwise.
    pub detail: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        passed: bool,
        window: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            passed,
            residual: None,
            window: window.into(),
            detail: detail.into(),
        }
    }

    pub fn with_residual(mut self, residual: impl fmt::Display) -> Self {
        self.residual = Some(residual.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// CSV with columns `suite,check,status,residual,window,detail,runtime_ms`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "suite",
            "check",
            "status",
            "residual",
            "window",
            "detail",
            "runtime_ms",
        ])?;
        let ms = self.runtime.as_millis().to_string();
        for c in &self.checks {
            w.write_record([
                self.suite.as_str(),
                c.name.as_str(),
                if c.passed { "pass" } else { "fail" },
                c.residual.as_deref().unwrap_or(""),
                c.window.as_str(),
                c.detail.as_str(),
                ms.as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "{}: {} ({}/{} checks, {:.2?})",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            passed,
            self.checks.len(),
            self.runtime
        )?;
        for c in self.failures().take(10) {
            write!(f, "\n  {} failed on {}: {}", c.name, c.window, c.detail)?;
        }
        Ok(())
    }
}
