//! Monomial ideals, stored by their minimal generators.
//!
//! Every [`MonomialIdeal`] keeps its generators as an antichain under
//! divisibility, sorted by exponent vector in decreasing lexicographic
//! order. The zero ideal has no generators; the unit ideal is generated by
//! the monomial `1`.

mod text;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{input_err, Error, Result};
use crate::graph::Graph;

/// A variable: either `x_i` or a layered `x_{i,p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Simple(usize),
    Layered(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Simple(i) => write!(f, "x{i}"),
            Var::Layered(i, p) => write!(f, "x_{i}_{p}"),
        }
    }
}

/// An ordered list of distinct variables; position fixes the exponent slot.
#[derive(Debug, Clone)]
pub struct VariableSpace {
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl PartialEq for VariableSpace {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VariableSpace {}

impl VariableSpace {
    pub fn new(vars: Vec<Var>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vars.len());
        for (pos, &v) in vars.iter().enumerate() {
            if index.insert(v, pos).is_some() {
                return Err(input_err!("variable {v} listed twice"));
            }
        }
        Ok(VariableSpace { vars, index })
    }

    /// `x1, ..., xn`.
    pub fn simple(n: usize) -> Self {
        VariableSpace::new((1..=n).map(Var::Simple).collect()).expect("distinct")
    }

    /// `x_{1,1}, ..., x_{1,k}, x_{2,1}, ..., x_{n,k}`.
    pub fn layered(n: usize, k: usize) -> Self {
        let vars = (1..=n).flat_map(|i| (1..=k).map(move |p| Var::Layered(i, p))).collect();
        VariableSpace::new(vars).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn position(&self, v: &Var) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// An exponent vector over some [`VariableSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// Squarefree monomial with the given 0-based support.
    pub fn from_support(nvars: usize, mask: u64) -> Self {
        Monomial { exps: (0..nvars).map(|i| (mask >> i & 1) as u32).collect() }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or_else(|| Error::Resource("exponent overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// 0-based support bitmask; only meaningful for at most 64 variables.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    space: Arc<VariableSpace>,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to a minimal generating set.
pub fn minimalize(space: Arc<VariableSpace>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    if let Some(bad) = gens.iter().find(|m| m.exps.len() != space.len()) {
        return Err(input_err!(
            "monomial with {} exponents does not live in a {}-variable space",
            bad.exps.len(),
            space.len()
        ));
    }
    Ok(MonomialIdeal { space, gens: minimal_antichain(gens) })
}

fn minimal_antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| b.exps.cmp(&a.exps));
    kept
}

/// Minimal antichain of subsets (by inclusion).
pub(crate) fn minimal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & m == k) {
            kept.push(m);
        }
    }
    kept
}

/// Minimal transversals of a family of sets: the generator supports of the
/// intersection of the primes spanned by each set.
pub(crate) fn minimal_transversals(sets: &[u64]) -> Vec<u64> {
    let mut current = vec![0u64];
    for &set in sets {
        let mut next = Vec::with_capacity(current.len() * 2);
        for &m in &current {
            if m & set != 0 {
                next.push(m);
            } else {
                let mut bits = set;
                while bits != 0 {
                    next.push(m | bits & bits.wrapping_neg());
                    bits &= bits - 1;
                }
            }
        }
        current = minimal_masks(next);
    }
    current
}

/// Supports of the minimal vertex covers of a graph given by 0-based adjacency masks.
pub(crate) fn vertex_cover_masks(adj: &[u64]) -> Vec<u64> {
    let mut edges = Vec::new();
    for (u, &nbrs) in adj.iter().enumerate() {
        let mut higher = nbrs >> u >> 1;
        while higher != 0 {
            let v = u + 1 + higher.trailing_zeros() as usize;
            edges.push(1u64 << u | 1u64 << v);
            higher &= higher - 1;
        }
    }
    minimal_transversals(&edges)
}

impl MonomialIdeal {
    pub fn new(space: Arc<VariableSpace>, gens: Vec<Monomial>) -> Result<Self> {
        minimalize(space, gens)
    }

    pub fn zero(space: Arc<VariableSpace>) -> Self {
        MonomialIdeal { space, gens: Vec::new() }
    }

    /// Squarefree ideal from 0-based generator supports.
    pub fn from_supports(space: Arc<VariableSpace>, masks: &[u64]) -> Result<Self> {
        let n = space.len();
        if n < 64 && masks.iter().any(|&m| m >> n != 0) {
            return Err(input_err!("support outside the variable space"));
        }
        let gens = masks.iter().map(|&m| Monomial::from_support(n, m)).collect();
        minimalize(space, gens)
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn num_vars(&self) -> usize {
        self.space.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.degree() == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Generator supports as 0-based bitmasks. Requires a squarefree ideal
    /// in at most 64 variables.
    pub fn squarefree_supports(&self) -> Result<Vec<u64>> {
        if !self.is_squarefree() {
            return Err(input_err!("ideal is not squarefree"));
        }
        if self.num_vars() > 64 {
            return Err(Error::Resource(format!("{} variables exceeds the 64-variable limit", self.num_vars())));
        }
        Ok(self.gens.iter().map(Monomial::support_mask).collect())
    }

    fn same_space(&self, other: &MonomialIdeal) -> Result<()> {
        if self.space != other.space {
            return Err(input_err!("ideals live in different variable spaces"));
        }
        Ok(())
    }
}

pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.same_space(b)?;
    let gens = a.gens.iter().flat_map(|x| b.gens.iter().map(move |y| x.lcm(y))).collect();
    minimalize(a.space.clone(), gens)
}

pub fn product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.same_space(b)?;
    let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
    for x in &a.gens {
        for y in &b.gens {
            gens.push(x.checked_mul(y)?);
        }
    }
    minimalize(a.space.clone(), gens)
}

pub fn power(i: &MonomialIdeal, k: usize) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(input_err!("power exponent must be at least 1"));
    }
    let mut acc = i.clone();
    for _ in 1..k {
        acc = product(&acc, i)?;
    }
    Ok(acc)
}

/// `I(G)` in the variables `x1..xn`.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.num_vertices();
    let space = Arc::new(VariableSpace::simple(n));
    let masks: Vec<u64> = g.edges().into_iter().map(|(u, v)| 1u64 << (u - 1) | 1u64 << (v - 1)).collect();
    MonomialIdeal::from_supports(space, &masks).expect("edges are squarefree supports")
}

/// `J(G)`: the intersection of `(x_i, x_j)` over all edges.
pub fn cover_ideal(g: &Graph) -> Result<MonomialIdeal> {
    if g.num_edges() == 0 {
        return Err(input_err!("the cover ideal of an edgeless graph is the unit ideal"));
    }
    let space = Arc::new(VariableSpace::simple(g.num_vertices()));
    MonomialIdeal::from_supports(space, &vertex_cover_masks(g.adjacency()))
}

fn check_proper_squarefree(i: &MonomialIdeal) -> Result<Vec<u64>> {
    let masks = i.squarefree_supports()?;
    if i.is_zero() || i.is_unit() {
        return Err(input_err!("expected a proper nonzero ideal"));
    }
    Ok(masks)
}

/// Minimal primes of a squarefree ideal, each as a sorted list of variables.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<Vec<Vec<Var>>> {
    let masks = check_proper_squarefree(i)?;
    let mut primes: Vec<Vec<Var>> = minimal_transversals(&masks)
        .into_iter()
        .map(|m| (0..i.num_vars()).filter(|b| m >> b & 1 == 1).map(|b| i.space.vars[b]).collect())
        .collect();
    primes.sort();
    Ok(primes)
}

/// The `k`-th power of the prime generated by `vars` (positions in `space`).
fn prime_power(space: &Arc<VariableSpace>, vars: &[usize], k: usize) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    let mut exps = vec![0u32; space.len()];
    fn rec(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {}
            [last] => {
                exps[*last] += left;
                out.push(Monomial::new(exps.clone()));
                exps[*last] -= left;
            }
            [first, rest @ ..] => {
                for e in (0..=left).rev() {
                    exps[*first] += e;
                    rec(rest, left - e, exps, out);
                    exps[*first] -= e;
                }
            }
        }
    }
    let k = u32::try_from(k).map_err(|_| Error::Resource("exponent overflow".into()))?;
    rec(vars, k, &mut exps, &mut gens);
    minimalize(space.clone(), gens)
}

fn intersect_prime_powers(space: &Arc<VariableSpace>, primes: &[Vec<usize>], k: usize) -> Result<MonomialIdeal> {
    let mut acc: Option<MonomialIdeal> = None;
    for p in primes {
        let pk = prime_power(space, p, k)?;
        acc = Some(match acc {
            None => pk,
            Some(a) => intersect(&a, &pk)?,
        });
    }
    acc.ok_or_else(|| input_err!("no primes to intersect"))
}

/// `I^(k)` as the intersection of the `k`-th powers of the minimal primes.
pub fn symbolic_power(i: &MonomialIdeal, k: usize) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(input_err!("symbolic power exponent must be at least 1"));
    }
    let masks = check_proper_squarefree(i)?;
    let primes: Vec<Vec<usize>> = minimal_transversals(&masks)
        .into_iter()
        .map(|m| (0..i.num_vars()).filter(|b| m >> b & 1 == 1).collect())
        .collect();
    intersect_prime_powers(&i.space, &primes, k)
}

/// `J(G)^(k)` computed directly as the intersection of `(x_i, x_j)^k` over the edges.
pub fn symbolic_power_cover(g: &Graph, k: usize) -> Result<MonomialIdeal> {
    if k == 0 {
        return Err(input_err!("symbolic power exponent must be at least 1"));
    }
    if g.num_edges() == 0 {
        return Err(input_err!("symbolic powers of the cover ideal need at least one edge"));
    }
    let space = Arc::new(VariableSpace::simple(g.num_vertices()));
    let primes: Vec<Vec<usize>> = g.edges().into_iter().map(|(u, v)| vec![u - 1, v - 1]).collect();
    intersect_prime_powers(&space, &primes, k)
}

/// Polarization: `x_i^a` becomes `x_{i,1} ... x_{i,a}`. The new space holds
/// `x_{i,1..a_i}` where `a_i` is the largest exponent of `x_i` among the
/// generators. Only simple variables can be polarized.
pub fn polarize(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    let nv = i.num_vars();
    let mut top = vec![0u32; nv];
    for m in &i.gens {
        for (t, &e) in top.iter_mut().zip(&m.exps) {
            *t = (*t).max(e);
        }
    }
    let mut vars = Vec::new();
    let mut offset = Vec::with_capacity(nv);
    for (pos, &a) in top.iter().enumerate() {
        offset.push(vars.len());
        if a == 0 {
            continue;
        }
        let Var::Simple(label) = i.space.vars[pos] else {
            return Err(input_err!("cannot polarize the layered variable {}", i.space.vars[pos]));
        };
        vars.extend((1..=a as usize).map(|p| Var::Layered(label, p)));
    }
    let space = Arc::new(VariableSpace::new(vars)?);
    let gens = i
        .gens
        .iter()
        .map(|m| {
            let mut exps = vec![0u32; space.len()];
            for (pos, &e) in m.exps.iter().enumerate() {
                for p in 0..e as usize {
                    exps[offset[pos] + p] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    minimalize(space, gens)
}

/// Alexander dual of a proper nonzero squarefree ideal: the intersection of
/// the primes spanned by the generator supports.
pub fn alexander_dual(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    let masks = check_proper_squarefree(i)?;
    MonomialIdeal::from_supports(i.space.clone(), &minimal_transversals(&masks))
}

/// Equality of minimal generating sets; the spaces must match.
pub fn equal(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<bool> {
    a.same_space(b)?;
    Ok(a.gens == b.gens)
}

/// Equality after carrying `a` into `b`'s space through `map`. Every
/// variable of `a` must map to a variable of `b`, injectively.
pub fn equal_under(a: &MonomialIdeal, b: &MonomialIdeal, map: impl Fn(&Var) -> Option<Var>) -> Result<bool> {
    let mut target = Vec::with_capacity(a.num_vars());
    let mut hit = vec![false; b.num_vars()];
    for v in a.space.vars() {
        let image = map(v).ok_or_else(|| input_err!("variable {v} has no image"))?;
        let pos = b
            .space
            .position(&image)
            .ok_or_else(|| input_err!("image {image} of {v} is not a variable of the target space"))?;
        if std::mem::replace(&mut hit[pos], true) {
            return Err(input_err!("variable map is not injective at {image}"));
        }
        target.push(pos);
    }
    let moved = a
        .gens
        .iter()
        .map(|m| {
            let mut exps = vec![0u32; b.num_vars()];
            for (src, &e) in m.exps.iter().enumerate() {
                exps[target[src]] = e;
            }
            Monomial::new(exps)
        })
        .collect();
    let moved = minimalize(b.space.clone(), moved)?;
    Ok(moved.gens == b.gens)
}

#[cfg(test)]
mod tests;
