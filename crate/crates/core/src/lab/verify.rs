use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::{corpus, graph_json, Lab, LabConfig, Status, TheoremId, VerificationOutcome};
use crate::error::{input_err, Error, Result};
use crate::graph::{
    clique_partitions, independence_number, independent_b_side_certificate, induced_matching_number, is_bipartite,
    largest_stable_with_certificate, max_s_ordered_matching, ordered_matching_number, whisker, CliquePartition,
    EnumerateOptions, Graph,
};
use crate::homology::{betti_table_squarefree, pd_reg_depth, reg_edge_ideal, taylor_betti_oracle, Field};
use crate::ideal::{cover_ideal, edge_ideal, equal, polarize, power, symbolic_power_cover, MonomialIdeal};
use crate::layered::{
    build_gk, check_polarization_identity, is_induced_matching_layered, proof_matching_bipartite, proof_matching_main,
    stability_threshold,
};

/// Depths of `S/J(G)^(k)` over a window of `k`, against the predicted limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    #[serde(serialize_with = "serialize_graph")]
    pub graph: Graph,
    pub ord_match: usize,
    pub largest_stable_s: usize,
    pub threshold: usize,
    pub depths: BTreeMap<usize, usize>,
    /// `n - ord_match - 1`.
    pub limit_depth: usize,
    /// Smallest computed `k` from which every computed depth in the window
    /// equals the limit. Says nothing about powers beyond the window.
    pub sdstab_observed_upper: Option<usize>,
    /// Powers in the window that exceeded the guard.
    pub beyond_guard: Vec<usize>,
}

fn serialize_graph<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    graph_json(g).serialize(s)
}

fn observed_stabilization(depths: &BTreeMap<usize, usize>, limit: usize) -> Option<usize> {
    let mut first = None;
    for (&k, &d) in depths.iter().rev() {
        if d != limit {
            break;
        }
        first = Some(k);
    }
    first
}

fn require_no_isolated(g: &Graph) -> Result<()> {
    if g.has_isolated_vertex() {
        return Err(input_err!("the graph has an isolated vertex"));
    }
    Ok(())
}

fn require_edge(g: &Graph) -> Result<()> {
    if g.num_edges() == 0 {
        return Err(input_err!("the graph has no edges"));
    }
    Ok(())
}

/// Guard overruns become skips and internal errors become failures; other
/// errors propagate.
fn finish(
    theorem: TheoremId,
    instance: Value,
    body: impl FnOnce() -> Result<(Status, Value)>,
) -> Result<VerificationOutcome> {
    match body() {
        Ok((status, details)) => Ok(VerificationOutcome::new(theorem, instance, status, details)),
        Err(Error::Resource(msg)) => {
            Ok(VerificationOutcome::new(theorem, instance, Status::Skipped, json!({ "reason": msg })))
        }
        Err(Error::Internal(msg)) => {
            Ok(VerificationOutcome::new(theorem, instance, Status::Failed, json!({ "error": msg })))
        }
        Err(e) => Err(e),
    }
}

fn with_graph(g: &Graph, extra: Value) -> Value {
    let mut v = graph_json(g);
    if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
        obj.extend(more);
    }
    v
}

fn status_of(violations: &[Value], checked_anything: bool) -> Status {
    if !violations.is_empty() {
        Status::Failed
    } else if !checked_anything {
        Status::Skipped
    } else {
        Status::Passed
    }
}

fn keyed<T: Serialize>(map: &BTreeMap<usize, T>) -> Value {
    Value::Object(map.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

impl Lab {
    /// Depths for `k = 1..=k_max`; powers over the guard are listed, not computed.
    pub fn stability_report(&self, g: &Graph, k_max: usize) -> Result<StabilityReport> {
        require_edge(g)?;
        let (t, _) = ordered_matching_number(g);
        let (s, _) = largest_stable_with_certificate(g, t);
        let limit = g.num_vertices() - t - 1;
        let mut depths = BTreeMap::new();
        let mut beyond = Vec::new();
        for k in 1..=k_max {
            match self.depth(g, k) {
                Ok(r) => {
                    depths.insert(k, r.depth);
                }
                Err(Error::Resource(_)) => beyond.push(k),
                Err(e) => return Err(e),
            }
        }
        Ok(StabilityReport {
            graph: g.clone(),
            ord_match: t,
            largest_stable_s: s,
            threshold: stability_threshold(t, s),
            sdstab_observed_upper: observed_stabilization(&depths, limit),
            depths,
            limit_depth: limit,
            beyond_guard: beyond,
        })
    }

    /// `depth S/J(G)^(k) = n - t - 1` for `threshold <= k <= threshold + k_extra`,
    /// and `>= n - t - 1` for every smaller `k`.
    pub fn verify_main(&self, g: &Graph, k_extra: usize) -> Result<VerificationOutcome> {
        require_no_isolated(g)?;
        require_edge(g)?;
        let instance = with_graph(g, json!({ "k_extra": k_extra }));
        finish(TheoremId::Main, instance, || {
            let (t, _) = ordered_matching_number(g);
            let (s, _) = largest_stable_with_certificate(g, t);
            let report = self.stability_report(g, stability_threshold(t, s) + k_extra)?;
            let mut violations = Vec::new();
            for (&k, &d) in &report.depths {
                if d < report.limit_depth {
                    violations.push(json!({ "k": k, "depth": d, "lower_bound": report.limit_depth }));
                } else if k >= report.threshold && d != report.limit_depth {
                    violations.push(json!({ "k": k, "depth": d, "expected": report.limit_depth }));
                }
            }
            let checked = report.depths.keys().any(|&k| k >= report.threshold);
            let mut details = serde_json::to_value(&report).expect("serializable");
            details["violations"] = json!(violations);
            Ok((status_of(&violations, checked), details))
        })
    }

    /// The two-case depth formula for `G^π` for `k = 1..=k_max`, and an
    /// m-ordered matching of size `m = |π|` in `G^π`.
    pub fn verify_whisker(&self, g: &Graph, pi: &CliquePartition, k_max: usize) -> Result<VerificationOutcome> {
        let w = whisker(g, pi)?;
        let instance = with_graph(g, json!({ "partition": pi.blocks(), "k_max": k_max }));
        finish(TheoremId::Whisker, instance, || {
            let (n, m, alpha) = (g.num_vertices(), pi.len(), independence_number(g));
            let expected = |k: usize| if k == 1 { n + m - alpha - 1 } else { n - 1 };
            let mut violations = Vec::new();
            let (t, _) = ordered_matching_number(&w);
            let cert = max_s_ordered_matching(&w, m);
            if t != m || cert.as_ref().map(|c| c.len()) != Some(m) {
                violations.push(json!({ "ord_match": t, "m": m, "m_ordered_certificate": cert }));
            }
            let mut depths = BTreeMap::new();
            let mut beyond = Vec::new();
            for k in 1..=k_max {
                match self.depth(&w, k) {
                    Ok(r) => {
                        if r.depth != expected(k) {
                            violations.push(json!({ "k": k, "depth": r.depth, "expected": expected(k) }));
                        }
                        depths.insert(k, r.depth);
                    }
                    Err(Error::Resource(_)) => beyond.push(k),
                    Err(e) => return Err(e),
                }
            }
            let details = json!({
                "m": m,
                "alpha": alpha,
                "ord_match_whiskered": t,
                "m_ordered_certificate": cert,
                "expected": keyed(&(1..=k_max).map(|k| (k, expected(k))).collect()),
                "depths": keyed(&depths),
                "beyond_guard": beyond,
                "observed_stabilization_upper": observed_stabilization(&depths, n - 1),
                "violations": violations,
            });
            Ok((status_of(&violations, !depths.is_empty()), details))
        })
    }

    /// `reg I(G_k) = ind-match(G_k) + 1 = t + 1` at the threshold and one past it.
    pub fn verify_regind(&self, g: &Graph) -> Result<VerificationOutcome> {
        require_no_isolated(g)?;
        require_edge(g)?;
        finish(TheoremId::Regind, graph_json(g), || {
            let (t, _) = ordered_matching_number(g);
            let (s, _) = largest_stable_with_certificate(g, t);
            let threshold = stability_threshold(t, s);
            let guard = self.guards.hochster;
            let mut rows = BTreeMap::new();
            let mut beyond = Vec::new();
            let mut violations = Vec::new();
            for k in [threshold, threshold + 1] {
                if g.num_vertices() * k > guard {
                    beyond.push(k);
                    continue;
                }
                let lg = build_gk(g, k)?;
                let reg = reg_edge_ideal(&lg.as_graph(), self.field, guard)?;
                let im = lg.induced_matching_number();
                if reg != im + 1 || im != t {
                    violations.push(json!({ "k": k, "reg": reg, "ind_match": im, "ord_match": t }));
                }
                rows.insert(k, json!({ "reg": reg, "ind_match": im }));
            }
            let details = json!({
                "ord_match": t,
                "largest_stable_s": s,
                "threshold": threshold,
                "values": keyed(&rows),
                "beyond_guard": beyond,
                "violations": violations,
            });
            Ok((status_of(&violations, rows.contains_key(&threshold)), details))
        })
    }

    /// `reg I(G) <= ord-match(G) + 1`.
    pub fn verify_reg_upper(&self, g: &Graph) -> Result<VerificationOutcome> {
        require_edge(g)?;
        finish(TheoremId::RegUpper, graph_json(g), || {
            let reg = reg_edge_ideal(g, self.field, self.guards.hochster)?;
            let (t, _) = ordered_matching_number(g);
            let ok = reg <= t + 1;
            let status = if ok { Status::Passed } else { Status::Failed };
            Ok((status, json!({ "reg_edge_ideal": reg, "ord_match": t })))
        })
    }

    /// `reg S/I(G) >= ind-match(G)`.
    pub fn verify_katzman(&self, g: &Graph) -> Result<VerificationOutcome> {
        require_edge(g)?;
        finish(TheoremId::Katzman, graph_json(g), || {
            let reg_quotient = reg_edge_ideal(g, self.field, self.guards.hochster)? - 1;
            let im = induced_matching_number(g);
            let status = if reg_quotient >= im { Status::Passed } else { Status::Failed };
            Ok((status, json!({ "reg_quotient": reg_quotient, "ind_match": im })))
        })
    }

    /// For bipartite `G`: `J(G)^(k) = J(G)^k` for `k <= k_max`, and
    /// `depth S/J(G)^k = n - t - 1` for `t <= k <= max(k_max, t)`.
    pub fn verify_bipartite(&self, g: &Graph, k_max: usize) -> Result<VerificationOutcome> {
        if !is_bipartite(g) {
            return Err(input_err!("the graph is not bipartite"));
        }
        require_no_isolated(g)?;
        require_edge(g)?;
        let instance = with_graph(g, json!({ "k_max": k_max }));
        finish(TheoremId::Bipartite, instance, || {
            let n = g.num_vertices();
            let (t, _) = ordered_matching_number(g);
            let limit = n - t - 1;
            let j = cover_ideal(g)?;
            let mut violations = Vec::new();
            let mut powers_equal = BTreeMap::new();
            for k in 1..=k_max {
                let same = equal(&symbolic_power_cover(g, k)?, &power(&j, k)?)?;
                if !same {
                    violations.push(json!({ "k": k, "symbolic_equals_ordinary": false }));
                }
                powers_equal.insert(k, same);
            }
            let mut depths = BTreeMap::new();
            let mut beyond = Vec::new();
            for k in t..=k_max.max(t) {
                match pd_reg_depth(&power(&j, k)?, self.field, self.guards.hochster) {
                    Ok(inv) => {
                        if inv.depth != limit {
                            violations.push(json!({ "k": k, "depth": inv.depth, "expected": limit }));
                        }
                        depths.insert(k, inv.depth);
                    }
                    Err(Error::Resource(_)) => beyond.push(k),
                    Err(e) => return Err(e),
                }
            }
            let details = json!({
                "ord_match": t,
                "limit_depth": limit,
                "symbolic_equals_ordinary": keyed(&powers_equal),
                "depths": keyed(&depths),
                "beyond_guard": beyond,
                "violations": violations,
            });
            Ok((status_of(&violations, !depths.is_empty()), details))
        })
    }

    /// Builds the explicit matchings of `G_k` (for `s >= 2` at
    /// `k in [threshold, threshold + 2]`, and for bipartite graphs at
    /// `k in [t, t + 2]`) and checks that they are induced. Where `G_k` is
    /// within the guard, `ind-match(G_k) >= t` is also computed directly.
    /// Returns `None` when neither construction applies.
    pub fn verify_proof_matchings(&self, g: &Graph) -> Result<Option<VerificationOutcome>> {
        require_no_isolated(g)?;
        require_edge(g)?;
        let (t, _) = ordered_matching_number(g);
        let (s, cert) = largest_stable_with_certificate(g, t);
        let bipartite = is_bipartite(g);
        if s < 2 && !bipartite {
            return Ok(None);
        }
        finish(TheoremId::ProofMatch, graph_json(g), || {
            let mut checks = Vec::new();
            let mut violations = Vec::new();
            let mut anomaly = None;
            let mut record = |construction: &str, k: usize, m: crate::layered::LayeredMatching| -> Result<()> {
                let lg = build_gk(g, k)?;
                let induced = is_induced_matching_layered(&lg, &m)?;
                let im = (lg.num_vertices() <= self.guards.hochster).then(|| lg.induced_matching_number());
                if !induced || m.len() != t || im.is_some_and(|im| im < t) {
                    violations.push(json!({ "construction": construction, "k": k, "matching": m }));
                }
                checks.push(json!({
                    "construction": construction,
                    "k": k,
                    "matching": m,
                    "induced": induced,
                    "ind_match_gk": im,
                }));
                Ok(())
            };
            if s >= 2 {
                let threshold = stability_threshold(t, s);
                for k in threshold..=threshold + 2 {
                    record("main", k, proof_matching_main(g, &cert, s, k)?)?;
                }
            }
            if bipartite {
                match independent_b_side_certificate(g) {
                    Some(b_cert) => {
                        for k in t..=t + 2 {
                            record("bipartite", k, proof_matching_bipartite(g, &b_cert, k)?)?;
                        }
                    }
                    None => anomaly = Some("no maximum ordered matching with an independent b-side"),
                }
            }
            let status = match (violations.is_empty(), anomaly) {
                (false, _) => Status::Failed,
                (true, Some(_)) => Status::Anomaly,
                (true, None) => Status::Passed,
            };
            let details = json!({
                "ord_match": t,
                "largest_stable_s": s,
                "checks": checks,
                "anomaly": anomaly,
                "violations": violations,
            });
            Ok((status, details))
        })
        .map(Some)
    }

    /// `(J(G)^(k))^pol = J(G_k)` for `k = 1..=k_max`.
    pub fn verify_polarization(&self, g: &Graph, k_max: usize) -> Result<VerificationOutcome> {
        require_edge(g)?;
        let instance = with_graph(g, json!({ "k_max": k_max }));
        finish(TheoremId::Polarization, instance, || {
            let mut results = BTreeMap::new();
            for k in 1..=k_max {
                results.insert(k, check_polarization_identity(g, k)?);
            }
            let failed: Vec<usize> = results.iter().filter(|(_, &ok)| !ok).map(|(&k, _)| k).collect();
            let status = if failed.is_empty() { Status::Passed } else { Status::Failed };
            Ok((status, json!({ "identity_holds": keyed(&results), "violations": failed })))
        })
    }

    /// Hochster's formula against the Taylor complex, over `Q` and `F_2`, for
    /// `I(G)`, `J(G)` and the polarizations of `J(G)^(k)` for `2 <= k <= k_max`,
    /// keeping ideals with at most `max_generators` generators. Betti tables
    /// that differ between the two fields are counted but do not fail.
    pub fn verify_oracle(&self, g: &Graph, k_max: usize, max_generators: usize) -> Result<VerificationOutcome> {
        require_edge(g)?;
        let instance = with_graph(g, json!({ "k_max": k_max, "max_generators": max_generators }));
        finish(TheoremId::Oracle, instance, || {
            let mut ideals: Vec<(String, MonomialIdeal)> =
                vec![("edge".into(), edge_ideal(g)), ("cover".into(), cover_ideal(g)?)];
            for k in 2..=k_max {
                ideals.push((format!("symbolic_cover_{k}_polarized"), polarize(&symbolic_power_cover(g, k)?)?));
            }
            let limit = max_generators.min(self.guards.taylor);
            let mut checked = Vec::new();
            let mut beyond = Vec::new();
            let mut violations = Vec::new();
            let mut field_disagreements = Vec::new();
            for (name, ideal) in ideals {
                if ideal.num_generators() > limit || ideal.num_vars() > self.guards.hochster {
                    beyond.push(name);
                    continue;
                }
                let mut tables = Vec::new();
                for field in [Field::Rationals, Field::F2] {
                    let hochster = betti_table_squarefree(&ideal, field, self.guards.hochster)?;
                    let taylor = taylor_betti_oracle(&ideal, field, self.guards.taylor)?;
                    if hochster != taylor {
                        violations.push(json!({
                            "ideal": name,
                            "field": field.to_string(),
                            "hochster": hochster.to_json(),
                            "taylor": taylor.to_json(),
                        }));
                    }
                    tables.push(hochster);
                }
                if tables[0] != tables[1] {
                    field_disagreements.push(name.clone());
                }
                checked.push(name);
            }
            let details = json!({
                "checked": checked,
                "beyond_guard": beyond,
                "field_disagreements": field_disagreements,
                "violations": violations,
            });
            Ok((status_of(&violations, !checked.is_empty()), details))
        })
    }
}

/// One unit of work in a corpus sweep.
pub(crate) enum Task {
    Graph(TheoremId, Graph),
    Whisker(Graph, CliquePartition),
}

impl Task {
    pub(crate) fn run(&self, lab: &Lab, config: &LabConfig) -> Option<VerificationOutcome> {
        let (theorem, graph, result) = match self {
            Task::Whisker(g, pi) => (TheoremId::Whisker, g, lab.verify_whisker(g, pi, config.k_max).map(Some)),
            Task::Graph(theorem, g) => {
                let r = match theorem {
                    TheoremId::Main => lab.verify_main(g, config.k_extra).map(Some),
                    TheoremId::Regind => lab.verify_regind(g).map(Some),
                    TheoremId::RegUpper => lab.verify_reg_upper(g).map(Some),
                    TheoremId::Bipartite => lab.verify_bipartite(g, config.k_max).map(Some),
                    TheoremId::ProofMatch => lab.verify_proof_matchings(g),
                    TheoremId::Polarization => lab.verify_polarization(g, config.k_max).map(Some),
                    TheoremId::Katzman => lab.verify_katzman(g).map(Some),
                    TheoremId::Oracle => lab.verify_oracle(g, config.k_max, config.oracle_generators).map(Some),
                    TheoremId::Whisker => unreachable!("whisker tasks carry a partition"),
                };
                (*theorem, g, r)
            }
        };
        result.unwrap_or_else(|e| {
            // Corpus tasks satisfy every precondition, so this is a bug.
            Some(VerificationOutcome::new(
                theorem,
                graph_json(graph),
                Status::Failed,
                json!({ "error": e.to_string() }),
            ))
        })
    }
}

pub(crate) fn tasks(theorem: TheoremId, config: &LabConfig) -> Result<Vec<Task>> {
    let no_isolated = EnumerateOptions { connected: false, no_isolated: true };
    let mut out = Vec::new();
    for n in 1..=config.max_vertices {
        let options =
            if matches!(theorem, TheoremId::Whisker | TheoremId::RegUpper | TheoremId::Katzman | TheoremId::Oracle) {
                EnumerateOptions::default()
            } else {
                no_isolated
            };
        for g in corpus(n, config, options)? {
            match theorem {
                TheoremId::Whisker => {
                    out.extend(clique_partitions(&g).into_iter().map(|pi| Task::Whisker(g.clone(), pi)));
                }
                TheoremId::Bipartite if !is_bipartite(&g) => {}
                _ if g.num_edges() == 0 && theorem != TheoremId::Whisker => {}
                _ => out.push(Task::Graph(theorem, g)),
            }
        }
    }
    Ok(out)
}
