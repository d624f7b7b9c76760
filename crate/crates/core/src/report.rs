//! Per-check verification outcomes.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Variable,
    Degree,
    Structure,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Variable => "variable",
            Representation::Degree => "degree",
            Representation::Structure => "structure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    #[serde(rename = "symbolic")]
    Symbolic,
    #[serde(rename = "sampled-exact")]
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled => "sampled-exact",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one verification task.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub relation: String,
    pub representation: Representation,
    pub mode: Mode,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn new(
        relation: impl Into<String>,
        representation: Representation,
        mode: Mode,
        witness: Option<String>,
    ) -> VerificationReport {
        VerificationReport {
            relation: relation.into(),
            representation,
            mode,
            status: if witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness,
            elapsed_ms: 0.0,
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> VerificationReport {
        self.detail = Some(detail.into());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} [{} {}]",
            self.relation,
            self.representation.as_str(),
            self.mode.as_str()
        )?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Run `f` and record its wall-clock time on the report it returns.
pub fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut r = f();
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    r
}
