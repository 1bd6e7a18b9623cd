//! Machine-readable check reports: one record per (axiom, instance).

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The truncation window was too small to decide.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub axiom: String,
    pub instance: String,
    pub status: Status,
    /// Nonzero residual (failures) or a truncation certificate note.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckRecord {
    pub fn new(axiom: impl Into<String>, instance: impl Into<String>, status: Status) -> Self {
        CheckRecord { axiom: axiom.into(), instance: instance.into(), status, residual: None }
    }

    pub fn with_residual(mut self, r: impl Into<String>) -> Self {
        self.residual = Some(r.into());
        self
    }

    pub fn pass(axiom: impl Into<String>, instance: impl Into<String>) -> Self {
        Self::new(axiom, instance, Status::Pass)
    }

    pub fn from_bool(axiom: impl Into<String>, instance: impl Into<String>, ok: bool) -> Self {
        Self::new(axiom, instance, if ok { Status::Pass } else { Status::Fail })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{:<12} {:<22} {}", tag, r.axiom, r.instance));
            if let Some(res) = &r.residual {
                out.push_str(&format!("  [{}]", res));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} pass, {} fail, {} inconclusive\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        ));
        out
    }
}
