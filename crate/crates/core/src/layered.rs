//! The layered graph `G_k` and induced matchings inside it.
//!
//! `G_k` has vertices `(i, p)` for `1 <= i <= n`, `1 <= p <= k`, and an edge
//! `{(i, p), (j, q)}` whenever `{i, j}` is an edge of `G` and `p + q <= k + 1`.
//! Its cover ideal, in the variables `x_{i,p}`, is the polarization of
//! `J(G)^(k)`.
//!
//! Text form:
//!
//! ```text
//! n 2 k 2
//! 1_1 2_1
//! 1_1 2_2
//! 1_2 2_1
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{input_err, Error, Result};
use crate::graph::{
    induced_matching_number, is_bipartite, is_ordered_matching, is_s_ordered_matching, mask_is_independent,
    ordered_matching_number, Graph, Matching, MAX_VERTICES,
};
use crate::ideal::{cover_ideal, equal_under, polarize, symbolic_power_cover, MonomialIdeal, Var, VariableSpace};

/// A vertex `(i, p)` of a layered graph.
pub type LayeredVertex = (usize, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    base_n: usize,
    level: usize,
    graph: Graph,
}

/// `G_k`.
pub fn build_gk(g: &Graph, k: usize) -> Result<LayeredGraph> {
    if k == 0 {
        return Err(input_err!("k must be at least 1"));
    }
    let n = g.num_vertices();
    let size = n.checked_mul(k).filter(|&s| s <= MAX_VERTICES).ok_or_else(|| {
        Error::Resource(format!("G_k would have n*k = {n}*{k} vertices, over the {MAX_VERTICES}-vertex limit"))
    })?;
    let mut lg = LayeredGraph { base_n: n, level: k, graph: Graph::new(size)? };
    for (i, j) in g.edges() {
        for p in 1..=k {
            for q in 1..=k + 1 - p {
                lg.graph.add_edge(lg.index((i, p)), lg.index((j, q)))?;
            }
        }
    }
    Ok(lg)
}

impl LayeredGraph {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn num_vertices(&self) -> usize {
        self.base_n * self.level
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// 1-based index of `(i, p)` in [`LayeredGraph::as_graph`].
    pub fn index(&self, (i, p): LayeredVertex) -> usize {
        (i - 1) * self.level + p
    }

    pub fn vertex(&self, index: usize) -> LayeredVertex {
        ((index - 1) / self.level + 1, (index - 1) % self.level + 1)
    }

    pub fn contains(&self, (i, p): LayeredVertex) -> bool {
        (1..=self.base_n).contains(&i) && (1..=self.level).contains(&p)
    }

    pub fn has_edge(&self, u: LayeredVertex, v: LayeredVertex) -> bool {
        self.contains(u) && self.contains(v) && self.graph.has_edge(self.index(u), self.index(v))
    }

    /// Edges with the smaller vertex first, in lexicographic order.
    pub fn edges(&self) -> Vec<(LayeredVertex, LayeredVertex)> {
        self.graph.edges().into_iter().map(|(u, v)| (self.vertex(u), self.vertex(v))).collect()
    }

    /// The same graph on vertices `1..=n*k`, with `(i, p)` at `(i-1)*k + p`.
    pub fn as_graph(&self) -> Graph {
        self.graph.clone()
    }

    /// The variables `x_{i,p}` in the vertex order of [`LayeredGraph::as_graph`].
    pub fn variable_space(&self) -> VariableSpace {
        VariableSpace::layered(self.base_n, self.level)
    }

    /// `J(G_k)` in the variables `x_{i,p}`.
    pub fn cover_ideal(&self) -> Result<MonomialIdeal> {
        let simple = cover_ideal(&self.graph)?;
        MonomialIdeal::from_supports(Arc::new(self.variable_space()), &simple.squarefree_supports()?)
    }

    pub fn induced_matching_number(&self) -> usize {
        induced_matching_number(&self.graph)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {} k {}\n", self.base_n, self.level);
        for ((i, p), (j, q)) in self.edges() {
            s.push_str(&format!("{i}_{p} {j}_{q}\n"));
        }
        s
    }
}

impl fmt::Debug for LayeredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LayeredGraph(n={}, k={}, edges={:?})", self.base_n, self.level, self.edges())
    }
}

fn parse_vertex(tok: &str) -> Result<LayeredVertex> {
    let bad = || Error::Parse(format!("bad layered vertex `{tok}`"));
    let (i, p) = tok.split_once('_').ok_or_else(bad)?;
    Ok((i.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
}

impl FromStr for LayeredGraph {
    type Err = Error;

    /// Parses any layered edge list; edges need not satisfy `p + q <= k + 1`.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty layered graph file".into()))?;
        let (n, k) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", n, "k", k] => match (n.parse::<usize>(), k.parse::<usize>()) {
                (Ok(n), Ok(k)) if n >= 1 && k >= 1 => (n, k),
                _ => return Err(Error::Parse(format!("bad header `{header}`"))),
            },
            _ => return Err(Error::Parse(format!("expected `n <n> k <k>`, found `{header}`"))),
        };
        if n * k > MAX_VERTICES {
            return Err(Error::Parse(format!("n*k = {} exceeds {MAX_VERTICES}", n * k)));
        }
        let mut lg = LayeredGraph { base_n: n, level: k, graph: Graph::new(n * k)? };
        for line in lines {
            let (u, v) = match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                [a, b] => (parse_vertex(a)?, parse_vertex(b)?),
                _ => return Err(Error::Parse(format!("expected `i_p j_q`, found `{line}`"))),
            };
            if !lg.contains(u) || !lg.contains(v) || u == v {
                return Err(Error::Parse(format!("bad layered edge `{line}`")));
            }
            lg.graph.add_edge(lg.index(u), lg.index(v))?;
        }
        Ok(lg)
    }
}

/// Compares `(J(G)^(k))^pol` with `J(G_k)` under `x_{i,p} <-> (i, p)`.
pub fn check_polarization_identity(g: &Graph, k: usize) -> Result<bool> {
    if g.num_edges() == 0 {
        return Err(input_err!("the graph needs at least one edge"));
    }
    let pol = polarize(&symbolic_power_cover(g, k)?)?;
    let layered = build_gk(g, k)?.cover_ideal()?;
    // Vertices isolated in G never occur in the polarization, so its space
    // may be smaller; the map is the identity on layered variables.
    equal_under(&pol, &layered, |v| matches!(v, Var::Layered(..)).then_some(*v))
}

/// Pairwise disjoint edges of a layered graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredMatching {
    pairs: Vec<(LayeredVertex, LayeredVertex)>,
}

impl LayeredMatching {
    pub fn new(lg: &LayeredGraph, pairs: Vec<(LayeredVertex, LayeredVertex)>) -> Result<Self> {
        check_pairs(lg, &pairs)?;
        Ok(LayeredMatching { pairs })
    }

    pub fn pairs(&self) -> &[(LayeredVertex, LayeredVertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_pairs(lg: &LayeredGraph, pairs: &[(LayeredVertex, LayeredVertex)]) -> Result<()> {
    let mut seen = Vec::new();
    for &(u, v) in pairs {
        if !lg.has_edge(u, v) {
            return Err(input_err!("x_{}_{} x_{}_{} is not an edge of G_{}", u.0, u.1, v.0, v.1, lg.level));
        }
        for w in [u, v] {
            if seen.contains(&w) {
                return Err(input_err!("vertex x_{}_{} is used twice", w.0, w.1));
            }
            seen.push(w);
        }
    }
    Ok(())
}

impl fmt::Display for LayeredMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, ((i, p), (j, q))) in self.pairs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(x_{i}_{p},x_{j}_{q})")?;
        }
        write!(f, "]")
    }
}

impl Serialize for LayeredMatching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pairs.iter().map(|((i, p), (j, q))| [format!("x_{i}_{p}"), format!("x_{j}_{q}")]))
    }
}

/// True iff no edge of `lg` joins two different pairs of `m`.
pub fn is_induced_matching_layered(lg: &LayeredGraph, m: &LayeredMatching) -> Result<bool> {
    check_pairs(lg, &m.pairs)?;
    for (x, &(u1, v1)) in m.pairs.iter().enumerate() {
        for &(u2, v2) in &m.pairs[x + 1..] {
            if [(u1, u2), (u1, v2), (v1, u2), (v1, v2)].iter().any(|&(a, b)| lg.has_edge(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `2t - 1` when `s = 1`, and `2t - 2s + 2` when `s >= 2`.
pub fn stability_threshold(t: usize, s: usize) -> usize {
    if s <= 1 {
        (2 * t).saturating_sub(1)
    } else {
        2 * t + 2 - 2 * s
    }
}

fn certificate_size(g: &Graph, cert: &Matching) -> Result<usize> {
    let (t, _) = ordered_matching_number(g);
    if cert.len() != t {
        return Err(input_err!("certificate has {} edges but the ordered matching number is {t}", cert.len()));
    }
    Ok(t)
}

fn translate(lg: &LayeredGraph, pairs: Vec<(LayeredVertex, LayeredVertex)>) -> Result<LayeredMatching> {
    LayeredMatching::new(lg, pairs).map_err(|e| Error::Internal(format!("proof matching is malformed: {e}")))
}

/// The matching
/// `{x_{a_i, t+2-s-i}, x_{b_i, k+s+i-t-1}}` for `i <= t - s` together with
/// `{x_{a_i, 1}, x_{b_i, k}}` for `i > t - s`, where `cert = (a_i, b_i)` is an
/// s-ordered matching of maximum size `t` and `s >= 2`.
pub fn proof_matching_main(g: &Graph, cert: &Matching, s: usize, k: usize) -> Result<LayeredMatching> {
    if s < 2 {
        return Err(Error::Precondition(format!("this construction needs s >= 2, got {s}")));
    }
    if !is_s_ordered_matching(g, cert, s) {
        return Err(input_err!("{cert} is not a {s}-ordered matching"));
    }
    let t = certificate_size(g, cert)?;
    let threshold = stability_threshold(t, s);
    if k < threshold {
        return Err(Error::Precondition(format!("k = {k} is below the threshold 2t - 2s + 2 = {threshold}")));
    }
    let pairs = cert
        .pairs()
        .iter()
        .enumerate()
        .map(|(idx, &(a, b))| {
            let i = idx + 1;
            if i + s <= t {
                ((a, t + 2 - s - i), (b, k + s + i - t - 1))
            } else {
                ((a, 1), (b, k))
            }
        })
        .collect();
    translate(&build_gk(g, k)?, pairs)
}

/// The matching `{x_{a_i, t+1-i}, x_{b_i, k+i-t}}` for a bipartite graph,
/// where `cert` is an ordered matching of maximum size `t` whose `b`-side is
/// independent.
pub fn proof_matching_bipartite(g: &Graph, cert: &Matching, k: usize) -> Result<LayeredMatching> {
    if !is_bipartite(g) {
        return Err(input_err!("the graph is not bipartite"));
    }
    if !is_ordered_matching(g, cert) {
        return Err(input_err!("{cert} is not an ordered matching"));
    }
    let b_mask = cert.b_side().iter().fold(0u64, |m, &b| m | 1 << (b - 1));
    if !mask_is_independent(g.adjacency(), b_mask) {
        return Err(input_err!("the b-side of {cert} is not independent"));
    }
    let t = certificate_size(g, cert)?;
    if k < t {
        return Err(Error::Precondition(format!("k = {k} is below t = {t}")));
    }
    let pairs = cert
        .pairs()
        .iter()
        .enumerate()
        .map(|(idx, &(a, b))| {
            let i = idx + 1;
            ((a, t + 1 - i), (b, k + i - t))
        })
        .collect();
    translate(&build_gk(g, k)?, pairs)
}
