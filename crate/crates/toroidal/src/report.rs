//! Machine-readable verification reports.
//!
//! Validators never throw on mathematical failure; they return a [`Report`]
//! whose clauses carry a witness for every violation. Serialization is
//! deterministic (ordered fields, string-encoded exact scalars).

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clause: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub clauses: Vec<ClauseReport>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            clauses: Vec::new(),
        }
    }

    pub fn pass(&mut self, clause: impl Into<String>) {
        self.clauses.push(ClauseReport {
            clause: clause.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, clause: impl Into<String>, witness: serde_json::Value) {
        self.clauses.push(ClauseReport {
            clause: clause.into(),
            status: Status::Fail,
            witness: Some(witness),
        });
    }

    pub fn check(&mut self, clause: impl Into<String>, ok: bool, witness: impl FnOnce() -> serde_json::Value) {
        if ok {
            self.pass(clause);
        } else {
            self.fail(clause, witness());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseReport> {
        self.clauses.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.clauses {
            self.clauses.push(ClauseReport {
                clause: format!("{}: {}", other.name, c.clause),
                ..c
            });
        }
    }
}
