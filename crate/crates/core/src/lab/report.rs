use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Status, TheoremId, VerificationOutcome};

/// Outcome counts per theorem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    counts: BTreeMap<TheoremId, BTreeMap<Status, usize>>,
}

impl Summary {
    pub fn new(outcomes: &[VerificationOutcome]) -> Self {
        let mut counts: BTreeMap<TheoremId, BTreeMap<Status, usize>> = BTreeMap::new();
        for o in outcomes {
            *counts.entry(o.theorem_id).or_default().entry(o.status).or_insert(0) += 1;
        }
        Summary { counts }
    }

    pub fn count(&self, theorem: TheoremId, status: Status) -> usize {
        self.counts.get(&theorem).and_then(|c| c.get(&status)).copied().unwrap_or(0)
    }

    pub fn total(&self, status: Status) -> usize {
        self.counts.values().filter_map(|c| c.get(&status)).sum()
    }

    pub fn theorems(&self) -> impl Iterator<Item = TheoremId> + '_ {
        self.counts.keys().copied()
    }
}

pub fn render_json(outcomes: &[VerificationOutcome]) -> String {
    let mut s = serde_json::to_string_pretty(outcomes).expect("outcomes serialize");
    s.push('\n');
    s
}

pub fn render_csv(outcomes: &[VerificationOutcome]) -> String {
    let mut s = String::from("theorem_id,n,instance_hash,status\n");
    for o in outcomes {
        writeln!(s, "{},{},{},{}", o.theorem_id, o.n, o.instance_hash, o.status).unwrap();
    }
    s
}

/// One line per outcome, details for failures and anomalies, then one
/// summary line per theorem.
pub fn render_text(outcomes: &[VerificationOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        write!(s, "{:<12} n={} {} {}", o.theorem_id, o.n, o.instance_hash, o.status).unwrap();
        if matches!(o.status, Status::Failed | Status::Anomaly) {
            write!(s, " {} {}", o.instance, o.details).unwrap();
        }
        s.push('\n');
    }
    let summary = Summary::new(outcomes);
    for t in summary.theorems() {
        writeln!(
            s,
            "summary {t}: {} passed, {} failed, {} skipped, {} anomalies",
            summary.count(t, Status::Passed),
            summary.count(t, Status::Failed),
            summary.count(t, Status::Skipped),
            summary.count(t, Status::Anomaly),
        )
        .unwrap();
    }
    s
}
