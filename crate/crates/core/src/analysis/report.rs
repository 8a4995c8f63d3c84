use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One offending (or noteworthy) tuple of vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub detail: String,
}

/// Outcome of one named check; serializes to JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub message: String,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
    /// Comparisons that held but within the strictness margin (float only).
    pub near_ties: Vec<Witness>,
}

/// Witness lists are truncated to this many entries.
pub const MAX_WITNESSES: usize = 25;

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            status: Status::Pass,
            message: String::new(),
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
            near_ties: Vec::new(),
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        CheckReport { status: Status::Skipped, message: format!("skipped: {reason}"), ..Self::new(name) }
    }

    pub fn violation(&mut self, vertices: Vec<usize>, detail: String) {
        self.status = Status::Fail;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { vertices, detail });
        }
    }

    pub fn near_tie(&mut self, vertices: Vec<usize>, detail: String) {
        if self.near_ties.len() < MAX_WITNESSES {
            self.near_ties.push(Witness { vertices, detail });
        }
    }

    /// Records a witness that is informative rather than a violation.
    pub fn note(&mut self, vertices: Vec<usize>, detail: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { vertices, detail });
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub(crate) fn finish(mut self) -> Self {
        if self.message.is_empty() {
            self.message = match self.status {
                Status::Pass => format!("{} comparisons hold", self.checked),
                Status::Fail => format!("{} violation(s) among {} comparisons", self.violations, self.checked),
                Status::Skipped => "skipped".into(),
            };
        }
        self
    }
}
