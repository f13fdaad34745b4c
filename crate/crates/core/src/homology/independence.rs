//! Reduced homology of independence complexes, with the standard
//! simplifications applied before any matrix is built:
//!
//! * an isolated vertex makes the complex a cone;
//! * a disconnected graph gives the join of the components' complexes;
//! * if `N(u) ⊆ N(v)` for distinct `u, v`, deleting `v` preserves the
//!   homotopy type.

use std::collections::HashMap;

use rayon::prelude::*;

use super::complex::{restricted_homology, HomologyDims};
use super::hochster::hochster_index;
use super::BettiTable;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Field;

const MEMO_LIMIT: usize = 1 << 20;

struct IndHomology<'a> {
    adj: &'a [u64],
    field: Field,
    memo: HashMap<u64, HomologyDims>,
}

impl IndHomology<'_> {
    fn dims(&mut self, mask: u64) -> HomologyDims {
        if mask == 0 {
            return HomologyDims::empty_complex();
        }
        let adj = self.adj;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if adj[v] & mask == 0 {
                return HomologyDims::acyclic();
            }
        }
        if let Some(h) = self.memo.get(&mask) {
            return h.clone();
        }
        let h = self.reduce(mask);
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(mask, h.clone());
        h
    }

    fn reduce(&mut self, mask: u64) -> HomologyDims {
        let adj = self.adj;
        let low = mask & mask.wrapping_neg();
        let mut comp = low;
        let mut frontier = low;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        if comp != mask {
            let a = self.dims(comp);
            if a.is_acyclic() {
                return a;
            }
            return a.join(&self.dims(mask & !comp));
        }
        let mut us = mask;
        while us != 0 {
            let u = us.trailing_zeros() as usize;
            us &= us - 1;
            let nu = adj[u] & mask;
            let mut vs = mask & !(1u64 << u);
            while vs != 0 {
                let v = vs.trailing_zeros() as usize;
                vs &= vs - 1;
                if nu & !adj[v] == 0 {
                    return self.dims(mask & !(1u64 << v));
                }
            }
        }
        let nonfaces: Vec<u64> = {
            let mut out = Vec::new();
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut higher = adj[v] & mask & !((2u64 << v) - 1);
                while higher != 0 {
                    let w = higher.trailing_zeros();
                    higher &= higher - 1;
                    out.push(1u64 << v | 1u64 << w);
                }
            }
            out
        };
        restricted_homology(&nonfaces, mask, self.field)
    }
}

/// Reduced homology of the independence complex of `g` restricted to the
/// 0-based vertex set `mask`.
pub fn independence_homology(g: &Graph, mask: u64, field: Field) -> HomologyDims {
    IndHomology { adj: g.adjacency(), field, memo: HashMap::new() }.dims(mask & g.vertex_mask())
}

/// Betti table of `S/I(G)` by Hochster's formula over induced subgraphs.
pub fn edge_ideal_betti_table(g: &Graph, field: Field, guard: usize) -> Result<BettiTable> {
    let n = g.num_vertices();
    if n > guard {
        return Err(Error::Resource(format!("{n} vertices exceeds the Hochster guard of {guard}")));
    }
    // Split the subsets by their top bits so that each worker keeps its own memo.
    let split = n.min(6);
    let low_bits = n - split;
    Ok((0u64..1 << split)
        .into_par_iter()
        .map(|high| {
            let mut ind = IndHomology { adj: g.adjacency(), field, memo: HashMap::new() };
            let mut t = BettiTable::new(n);
            for low in 0u64..1 << low_bits {
                let sigma = high << low_bits | low;
                let size = sigma.count_ones() as usize;
                for (face_size, &h) in ind.dims(sigma).by_face_size().iter().enumerate() {
                    t.add(hochster_index(size, face_size), size, h as u64);
                }
            }
            t
        })
        .reduce(|| BettiTable::new(n), BettiTable::merge))
}
