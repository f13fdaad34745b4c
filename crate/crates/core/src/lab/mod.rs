//! Instance-by-instance checks of the depth-stability statements over
//! exhaustive corpora of small graphs.
//!
//! Every check yields a [`VerificationOutcome`]. Instances whose
//! computations exceed a guard are reported as skipped, never as passed.

mod report;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, enumerate_unlabeled, EnumerateOptions, Graph};
use crate::homology::{depth_symbolic_cover, DepthReport};
use crate::linalg::Field;

pub use report::{render_csv, render_json, render_text, Summary};
pub use verify::StabilityReport;

/// The statements checked by the lab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// Depth of symbolic powers equals `n - t - 1` from the threshold on.
    Main,
    /// The two-case depth formula for clique-whiskered graphs.
    Whisker,
    /// `reg I(G_k) = ind-match(G_k) + 1 = ord-match(G) + 1` at the threshold.
    Regind,
    /// `reg I(G) <= ord-match(G) + 1`.
    RegUpper,
    /// Symbolic and ordinary powers agree for bipartite graphs, with the depth limit from `k = t`.
    Bipartite,
    /// The explicit matchings of `G_k` are induced.
    ProofMatch,
    /// `(J(G)^(k))^pol = J(G_k)`.
    Polarization,
    /// `reg S/I(G) >= ind-match(G)`.
    Katzman,
    /// Hochster's formula agrees with the Taylor complex.
    Oracle,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Main,
        TheoremId::Whisker,
        TheoremId::Regind,
        TheoremId::RegUpper,
        TheoremId::Bipartite,
        TheoremId::ProofMatch,
        TheoremId::Polarization,
        TheoremId::Katzman,
        TheoremId::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Main => "main",
            TheoremId::Whisker => "whisker",
            TheoremId::Regind => "regind",
            TheoremId::RegUpper => "regupper",
            TheoremId::Bipartite => "bipartite",
            TheoremId::ProofMatch => "proofmatch",
            TheoremId::Polarization => "polarization",
            TheoremId::Katzman => "katzman",
            TheoremId::Oracle => "oracle",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    /// A guard was exceeded before anything could be checked.
    Skipped,
    /// A hypothesis the construction relies on could not be met.
    Anomaly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Skipped => "skipped",
            Status::Anomaly => "anomaly",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub theorem_id: TheoremId,
    pub n: usize,
    pub instance_hash: String,
    pub instance: Value,
    pub status: Status,
    pub passed: bool,
    pub details: Value,
}

impl VerificationOutcome {
    pub(crate) fn new(theorem_id: TheoremId, instance: Value, status: Status, details: Value) -> Self {
        let n = instance.get("n").and_then(Value::as_u64).unwrap_or(0) as usize;
        VerificationOutcome {
            theorem_id,
            n,
            instance_hash: instance_hash(theorem_id, &instance),
            instance,
            status,
            passed: status == Status::Passed,
            details,
        }
    }
}

/// First 16 hex digits of the SHA-256 of the theorem id and the instance JSON.
pub fn instance_hash(theorem_id: TheoremId, instance: &Value) -> String {
    let digest = Sha256::new()
        .chain_update(theorem_id.as_str())
        .chain_update(b"\n")
        .chain_update(instance.to_string())
        .finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.num_vertices(), "edges": g.edges() })
}

/// Settings for a corpus sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabConfig {
    pub max_vertices: usize,
    /// Largest power checked by the windowed statements.
    pub k_max: usize,
    pub field: Field,
    pub guards: Guards,
    pub jobs: usize,
    /// Sweep every labelled graph instead of one graph per isomorphism class.
    pub labeled: bool,
    /// Powers beyond the threshold checked by the main statement.
    pub k_extra: usize,
    /// Generator limit for ideals fed to the Taylor oracle.
    pub oracle_generators: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            max_vertices: 5,
            k_max: 3,
            field: Field::Rationals,
            guards: Guards::default(),
            jobs: 1,
            labeled: false,
            k_extra: 1,
            oracle_generators: 8,
        }
    }
}

type DepthKey = (Vec<u64>, usize);

/// Verifier state: the field, the guards and a cache of computed depths.
pub struct Lab {
    field: Field,
    guards: Guards,
    depths: Mutex<HashMap<DepthKey, Result<DepthReport>>>,
}

impl Lab {
    pub fn new(field: Field, guards: Guards) -> Self {
        Lab { field, guards, depths: Mutex::new(HashMap::new()) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn guards(&self) -> Guards {
        self.guards
    }

    /// `depth S/J(G)^(k)` through [`depth_symbolic_cover`], cached per labelled graph.
    pub fn depth(&self, g: &Graph, k: usize) -> Result<DepthReport> {
        let key = (g.adjacency().to_vec(), k);
        if let Some(hit) = self.depths.lock().expect("depth cache poisoned").get(&key) {
            return hit.clone();
        }
        let value = depth_symbolic_cover(g, k, self.field, self.guards.hochster);
        self.depths.lock().expect("depth cache poisoned").insert(key, value.clone());
        value
    }
}

/// The graphs on exactly `n` vertices swept by `config`.
pub fn corpus(n: usize, config: &LabConfig, options: EnumerateOptions) -> Result<Vec<Graph>> {
    if config.labeled {
        Ok(enumerate_graphs(n, options, config.guards.enumerate)?.collect())
    } else {
        enumerate_unlabeled(n, options, config.guards.enumerate)
    }
}

/// Runs every verifier in `theorems` over the corpus described by `config`.
/// The output order depends only on `config` and `theorems`, never on `jobs`.
pub fn run_corpus(config: &LabConfig, theorems: &[TheoremId]) -> Result<Vec<VerificationOutcome>> {
    if config.jobs == 0 {
        return Err(Error::Input("jobs must be at least 1".into()));
    }
    if config.max_vertices > config.guards.enumerate {
        return Err(Error::Resource(format!(
            "{} vertices exceeds the enumeration guard of {}",
            config.max_vertices, config.guards.enumerate
        )));
    }
    let mut tasks: Vec<verify::Task> = Vec::new();
    let mut seen = BTreeMap::new();
    for &theorem in theorems {
        if seen.insert(theorem, ()).is_none() {
            tasks.extend(verify::tasks(theorem, config)?);
        }
    }
    let lab = Lab::new(config.field, config.guards);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        use rayon::prelude::*;
        tasks.par_iter().filter_map(|task| task.run(&lab, config)).collect()
    }))
}
