//! Verification records and reports.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Reproducible failure data: the input and both sides of the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// One checked statement. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub axiom: String,
    pub family: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    /// `exact` or `zip`.
    pub mode: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Number of instances checked.
    pub cases: usize,
    /// `log2` of the failure probability bound of a randomized check.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_log2: Option<f64>,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{status} {} [{}] {}{} {} ({} cases)",
            self.axiom, self.family, self.ty, self.rank, self.mode, self.cases
        )?;
        if let Some(b) = self.bound_log2 {
            write!(f, " bound 2^{b:.0}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  input: {}\n  lhs:   {}\n  rhs:   {}", w.input, w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

/// Accumulates the outcome of a batch of checks of one statement.
pub struct Check {
    rec: CheckRecord,
}

impl Check {
    pub fn new(axiom: &str, family: &str, ty: impl fmt::Display, rank: usize, mode: &str) -> Self {
        Check {
            rec: CheckRecord {
                axiom: axiom.to_string(),
                family: family.to_string(),
                ty: ty.to_string(),
                rank,
                mode: mode.to_string(),
                status: Status::Pass,
                witness: None,
                cases: 0,
                bound_log2: None,
            },
        }
    }

    pub fn with_bound(mut self, log2: f64) -> Self {
        self.rec.bound_log2 = Some(log2);
        self
    }

    /// Records one instance; keeps the first failing witness.
    pub fn case<T: PartialEq + fmt::Display>(&mut self, input: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        self.rec.cases += 1;
        if lhs != rhs && self.rec.status == Status::Pass {
            self.rec.status = Status::Fail;
            self.rec.witness =
                Some(Witness { input: input(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    /// Records one boolean instance.
    pub fn holds(&mut self, input: impl FnOnce() -> String, ok: bool) {
        self.case(input, &ok, &true);
    }

    /// Adds the cases of another record of the same statement.
    pub fn absorb(&mut self, o: CheckRecord) {
        self.rec.cases += o.cases;
        if o.status == Status::Fail && self.rec.status == Status::Pass {
            self.rec.status = Status::Fail;
            self.rec.witness = o.witness;
        }
    }

    pub fn finish(self) -> CheckRecord {
        self.rec
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, o: VerificationReport) {
        self.records.extend(o.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        let verdict = if self.passed() { "all checks passed" } else { "FAILURES" };
        write!(f, "{verdict} ({} records)", self.records.len())
    }
}
