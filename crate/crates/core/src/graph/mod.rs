//! Simple undirected graphs on vertices `1..=n` and their brute-force
//! combinatorial invariants.

mod enumerate;
mod matching;
mod whisker;

pub use enumerate::{canonical_code, enumerate_graphs, enumerate_unlabeled, EnumerateOptions};
pub(crate) use matching::largest_stable_with_certificate;
pub use matching::{
    independent_b_side_certificate, is_ordered_matching, is_s_ordered_matching, largest_stable_s,
    max_s_ordered_matching, ordered_matching_number, s_ordered_matching_number, InvariantReport, MatchValue, Matching,
};
pub use whisker::{clique_partitions, whisker, CliquePartition};

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{input_err, Error, Result};

/// Hard limit imposed by the bitmask adjacency representation.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph with vertices labelled `1..=n`.
///
/// Adjacency is kept as one bitmask per vertex; bit `v - 1` of `adj[u - 1]`
/// is set iff `{u, v}` is an edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(input_err!("a graph needs at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!("{n} vertices exceeds the {MAX_VERTICES}-vertex limit")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(input_err!("loop at vertex {u}"));
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for u in 1..n {
            g.add_edge(u, u + 1)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(input_err!("a cycle needs at least 3 vertices"));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n, 1)?;
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 1..=self.n {
            let mut higher = self.adj[u - 1] >> u;
            while higher != 0 {
                let off = higher.trailing_zeros() as usize;
                out.push((u, u + 1 + off));
                higher &= higher - 1;
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Neighbourhood of `v` as a 0-based bitmask.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v - 1]
    }

    /// All adjacency masks, 0-based.
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|&a| a == 0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == self.vertex_mask()
    }

    /// Image of the graph under `perm`, where vertex `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(input_err!("permutation has length {} but the graph has {} vertices", perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(input_err!("not a permutation of 1..={}", self.n));
            }
        }
        let mut g = Graph::new(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u - 1], perm[v - 1])?;
        }
        Ok(g)
    }

    /// Serializes to the edge-list text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(input_err!("vertex {v} is outside 1..={}", self.n))
        } else {
            Ok(())
        }
    }

    pub(crate) fn mask_of(&self, w: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &v in w {
            self.check_vertex(v)?;
            mask |= 1 << (v - 1);
        }
        Ok(mask)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex count `{count}`")))?,
            _ => return Err(Error::Parse(format!("expected `n <num_vertices>`, found `{header}`"))),
        };
        let mut g = Graph::new(n).map_err(|e| Error::Parse(e.to_string()))?;
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: bad vertex `{tok}`", lineno + 1)))
            };
            let (u, v) = match fields.as_slice() {
                [a, b] => (parse(a)?, parse(b)?),
                _ => return Err(Error::Parse(format!("line {}: expected `u v`", lineno + 1))),
            };
            if !(1 <= u && u < v && v <= n) {
                return Err(Error::Parse(format!("line {}: need 1 <= u < v <= {n}, got `{u} {v}`", lineno + 1)));
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse(format!("line {}: duplicate edge {u} {v}", lineno + 1)));
            }
            g.add_edge(u, v).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }
}

/// True iff no edge of `g` has both endpoints in `w`.
pub fn is_independent(g: &Graph, w: &[usize]) -> Result<bool> {
    let mask = g.mask_of(w)?;
    Ok(mask_is_independent(g.adjacency(), mask))
}

pub(crate) fn mask_is_independent(adj: &[u64], mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & mask != 0 {
            return false;
        }
    }
    true
}

/// Size of a largest independent set.
pub fn independence_number(g: &Graph) -> usize {
    max_independent(g.adjacency(), g.vertex_mask())
}

fn max_independent(adj: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    let v = mask.trailing_zeros() as usize;
    let without = mask & !(1 << v);
    let nbrs = adj[v] & mask;
    if nbrs == 0 {
        return 1 + max_independent(adj, without);
    }
    let skip = max_independent(adj, without);
    let take = 1 + max_independent(adj, without & !nbrs);
    skip.max(take)
}

/// Largest induced matching, as edges `(u, v)` with `u < v`.
pub fn max_induced_matching(g: &Graph) -> Vec<(usize, usize)> {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (u - 1, v - 1)).collect();
    let adj = g.adjacency();
    let mut best = Vec::new();
    let mut current = Vec::new();
    induced_search(adj, &edges, 0, 0, &mut current, &mut best);
    best.into_iter().map(|(u, v)| (u + 1, v + 1)).collect()
}

pub fn induced_matching_number(g: &Graph) -> usize {
    max_induced_matching(g).len()
}

fn induced_search(
    adj: &[u64],
    edges: &[(usize, usize)],
    start: usize,
    blocked: u64,
    current: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    // Each further edge consumes two unblocked vertices.
    let free_vertices =
        edges[start.min(edges.len())..].iter().fold(0u64, |acc, &(u, v)| acc | 1 << u | 1 << v) & !blocked;
    if current.len() + free_vertices.count_ones() as usize / 2 <= best.len() {
        return;
    }
    for idx in start..edges.len() {
        let (u, v) = edges[idx];
        if blocked >> u & 1 == 1 || blocked >> v & 1 == 1 {
            continue;
        }
        current.push((u, v));
        let closed = adj[u] | adj[v] | 1 << u | 1 << v;
        induced_search(adj, edges, idx + 1, blocked | closed, current, best);
        current.pop();
    }
}

/// A proper 2-colouring (`colors[v - 1]` in `{0, 1}`) when the graph is bipartite.
pub fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.num_vertices();
    let mut color: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            let mut nbrs = g.adj[u];
            while nbrs != 0 {
                let v = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                match color[v] {
                    None => {
                        color[v] = Some(1 - cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}
