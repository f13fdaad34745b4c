//! Ordered and s-ordered matchings.
//!
//! A matching `(a_1, b_1), ..., (a_r, b_r)` is *s-ordered* when `r >= s`,
//! the `a`-side is independent and every edge `{a_i, b_j}` has `i = j` or
//! `i <= j - s`. For `s = 1` this is an ordered matching. An edge
//! `{a_i, b_j}` with `i > j` is never allowed.
//!
//! All searches are exhaustive over oriented, ordered sequences of disjoint
//! edges. Each extension is checked against every earlier position, so a
//! pruned prefix can never become valid again.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{independence_number, induced_matching_number, mask_is_independent, Graph};
use crate::error::{input_err, Result};

/// An ordered list of oriented edges `(a_i, b_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates that `pairs` is a nonempty matching of `g`.
    pub fn new(g: &Graph, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(input_err!("a matching must be nonempty"));
        }
        let mut used = 0u64;
        for &(a, b) in &pairs {
            if !g.has_edge(a, b) {
                return Err(input_err!("({a}, {b}) is not an edge"));
            }
            let bits = 1u64 << (a - 1) | 1u64 << (b - 1);
            if used & bits != 0 {
                return Err(input_err!("matching edges are not pairwise disjoint"));
            }
            used |= bits;
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn a_side(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn b_side(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs.serialize(s)
    }
}

/// A matching number that may be `-inf` when no matching of the required
/// kind exists. `NegInfinity` sorts below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchValue {
    NegInfinity,
    Finite(usize),
}

impl MatchValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            MatchValue::Finite(v) => Some(v),
            MatchValue::NegInfinity => None,
        }
    }
}

impl fmt::Display for MatchValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchValue::NegInfinity => write!(f, "-inf"),
            MatchValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for MatchValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatchValue::NegInfinity => s.serialize_str("-inf"),
            MatchValue::Finite(v) => s.serialize_u64(*v as u64),
        }
    }
}

pub fn is_ordered_matching(g: &Graph, m: &Matching) -> bool {
    is_s_ordered_matching(g, m, 1)
}

pub fn is_s_ordered_matching(g: &Graph, m: &Matching, s: usize) -> bool {
    let r = m.len();
    if s == 0 || r < s {
        return false;
    }
    let Ok(a_mask) = g.mask_of(&m.a_side()) else { return false };
    if !mask_is_independent(g.adjacency(), a_mask) {
        return false;
    }
    for (i, &(a, _)) in m.pairs.iter().enumerate() {
        for (j, &(_, b)) in m.pairs.iter().enumerate() {
            if g.has_edge(a, b) && !(i == j || i + s <= j) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy)]
struct SearchRules {
    s: usize,
    independent_b: bool,
}

struct Search<'g> {
    adj: &'g [u64],
    oriented: Vec<(usize, usize)>,
    rules: SearchRules,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    target: Option<usize>,
}

impl Search<'_> {
    fn admissible(&self, a: usize, b: usize, used: u64) -> bool {
        if used >> a & 1 == 1 || used >> b & 1 == 1 {
            return false;
        }
        let r = self.current.len();
        for (i, &(ai, bi)) in self.current.iter().enumerate() {
            // a-side independent
            if self.adj[a] >> ai & 1 == 1 {
                return false;
            }
            // {a_r, b_i} with r > i
            if self.adj[a] >> bi & 1 == 1 {
                return false;
            }
            // {a_i, b_r} needs r - i >= s
            if self.adj[ai] >> b & 1 == 1 && r - i < self.rules.s {
                return false;
            }
            if self.rules.independent_b && self.adj[b] >> bi & 1 == 1 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, used: u64, free: u32) {
        let len = self.current.len();
        if len >= self.rules.s && len > self.best.len() {
            self.best = self.current.clone();
            if Some(len) == self.target {
                return;
            }
        }
        if len + free as usize / 2 <= self.best.len().max(self.rules.s.saturating_sub(1)) {
            return;
        }
        if self.target.is_some_and(|t| self.best.len() >= t) {
            return;
        }
        for idx in 0..self.oriented.len() {
            let (a, b) = self.oriented[idx];
            if !self.admissible(a, b, used) {
                continue;
            }
            self.current.push((a, b));
            self.run(used | 1 << a | 1 << b, free - 2);
            self.current.pop();
            if self.target.is_some_and(|t| self.best.len() >= t) {
                return;
            }
        }
    }
}

fn search(g: &Graph, rules: SearchRules, target: Option<usize>) -> Option<Matching> {
    let adj = g.adjacency();
    let mut oriented = Vec::new();
    for (u, v) in g.edges() {
        oriented.push((u - 1, v - 1));
        oriented.push((v - 1, u - 1));
    }
    oriented.sort_unstable();
    let covered = oriented.iter().fold(0u64, |acc, &(a, _)| acc | 1 << a);
    let mut state = Search { adj, oriented, rules, current: Vec::new(), best: Vec::new(), target };
    state.run(0, covered.count_ones());
    if state.best.is_empty() {
        None
    } else {
        Some(Matching { pairs: state.best.into_iter().map(|(a, b)| (a + 1, b + 1)).collect() })
    }
}

/// Maximum ordered matching size with a witness; `(0, None)` for edgeless graphs.
pub fn ordered_matching_number(g: &Graph) -> (usize, Option<Matching>) {
    let cert = search(g, SearchRules { s: 1, independent_b: false }, None);
    (cert.as_ref().map_or(0, Matching::len), cert)
}

/// A maximum s-ordered matching, or `None` when none exists.
pub fn max_s_ordered_matching(g: &Graph, s: usize) -> Option<Matching> {
    if s == 0 {
        return None;
    }
    search(g, SearchRules { s, independent_b: false }, None)
}

pub fn s_ordered_matching_number(g: &Graph, s: usize) -> MatchValue {
    match max_s_ordered_matching(g, s) {
        Some(m) => MatchValue::Finite(m.len()),
        None => MatchValue::NegInfinity,
    }
}

/// Largest `s >= 1` whose s-ordered matching number equals the ordered
/// matching number.
pub fn largest_stable_s(g: &Graph) -> Result<usize> {
    let (t, _) = ordered_matching_number(g);
    if t == 0 {
        return Err(input_err!("largest stable s is undefined for an edgeless graph"));
    }
    Ok(largest_stable_with_certificate(g, t).0)
}

/// Returns `(s, certificate)` where the certificate is an s-ordered matching of size `t`.
pub(crate) fn largest_stable_with_certificate(g: &Graph, t: usize) -> (usize, Matching) {
    // Any s-ordered matching has size >= s, so s <= t.
    for s in (1..=t).rev() {
        if let Some(m) = search(g, SearchRules { s, independent_b: false }, Some(t)) {
            if m.len() == t {
                return (s, m);
            }
        }
    }
    unreachable!("an ordered matching of size t exists")
}

/// An ordered matching of maximum size `ord_match(g)` whose `b`-side is also
/// independent, if one exists.
pub fn independent_b_side_certificate(g: &Graph) -> Option<Matching> {
    let (t, _) = ordered_matching_number(g);
    if t == 0 {
        return None;
    }
    search(g, SearchRules { s: 1, independent_b: true }, Some(t)).filter(|m| m.len() == t)
}

/// Every matching invariant of a graph at once.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub num_vertices: usize,
    pub alpha: usize,
    pub ind_match: usize,
    pub ord_match: usize,
    pub ord_match_certificate: Option<Matching>,
    /// `(s, s-ordered matching number)` for `s = 1..=ord_match + 1`; the last
    /// entry is always `-inf`.
    pub s_ord_match: Vec<(usize, MatchValue)>,
    pub largest_stable_s: Option<usize>,
    pub stable_certificate: Option<Matching>,
}

impl InvariantReport {
    pub fn compute(g: &Graph) -> Self {
        let (t, cert) = ordered_matching_number(g);
        let s_ord_match = (1..=t + 1).map(|s| (s, s_ordered_matching_number(g, s))).collect();
        let (largest, stable_cert) = if t > 0 {
            let (s, m) = largest_stable_with_certificate(g, t);
            (Some(s), Some(m))
        } else {
            (None, None)
        };
        InvariantReport {
            num_vertices: g.num_vertices(),
            alpha: independence_number(g),
            ind_match: induced_matching_number(g),
            ord_match: t,
            ord_match_certificate: cert,
            s_ord_match,
            largest_stable_s: largest,
            stable_certificate: stable_cert,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("vertices {}\n", self.num_vertices));
        s.push_str(&format!("alpha {}\n", self.alpha));
        s.push_str(&format!("ind_match {}\n", self.ind_match));
        s.push_str(&format!("ord_match {}\n", self.ord_match));
        if let Some(c) = &self.ord_match_certificate {
            s.push_str(&format!("ord_match_certificate {c}\n"));
        }
        for (k, v) in &self.s_ord_match {
            s.push_str(&format!("s_ord_match[{k}] {v}\n"));
        }
        match self.largest_stable_s {
            Some(v) => s.push_str(&format!("largest_stable_s {v}\n")),
            None => s.push_str("largest_stable_s undefined\n"),
        }
        if let Some(c) = &self.stable_certificate {
            s.push_str(&format!("stable_certificate {c}\n"));
        }
        s
    }
}
