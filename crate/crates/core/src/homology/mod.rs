//! Graded Betti numbers and the invariants read off from them.
//!
//! Betti tables are always those of the quotient `S/I`, so `β_{0,0} = 1`.

mod complex;
mod hochster;
mod independence;
mod invariants;
mod taylor;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use crate::linalg::Field;
pub use complex::{HomologyDims, SimplicialComplex};
pub use hochster::{betti_table_squarefree, independence_complex, stanley_reisner_complex};
pub use independence::{edge_ideal_betti_table, independence_homology};
pub use invariants::{depth_symbolic_cover, pd_reg_depth, reg_edge_ideal, DepthReport, QuotientInvariants};
pub use taylor::taylor_betti_oracle;

/// Graded Betti numbers `β_{i,j}` of a quotient ring; zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    num_vars: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(num_vars: usize) -> Self {
        BettiTable { num_vars, entries: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub(crate) fn merge(mut self, other: BettiTable) -> BettiTable {
        for ((i, j), b) in other.entries {
            self.add(i, j, b);
        }
        self
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, β_{i,j})` sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Total Betti number `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    pub fn pd(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num_vars": self.num_vars,
            "entries": self.entries().map(|(i, j, b)| json!([i, j, b])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed Betti table JSON".into());
        let num_vars = v.get("num_vars").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let mut table = BettiTable::new(num_vars);
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(bad)? {
            let triple: Vec<u64> = e.as_array().ok_or_else(bad)?.iter().filter_map(Value::as_u64).collect();
            let [i, j, b] = triple[..] else { return Err(bad()) };
            table.add(i as usize, j as usize, b);
        }
        Ok(table)
    }
}

impl fmt::Display for BettiTable {
    /// One `i j beta` line per nonzero entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, b) in self.entries() {
            writeln!(f, "{i} {j} {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
