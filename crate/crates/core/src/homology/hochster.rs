//! Hochster's formula: `β_{i,σ}(S/I_Δ) = dim H̃_{|σ|-i-1}(Δ|σ)`.

use std::collections::HashSet;

use rayon::prelude::*;

use super::complex::{restricted_homology, SimplicialComplex};
use super::BettiTable;
use crate::error::{input_err, Error, Result};
use crate::graph::Graph;
use crate::ideal::{MonomialIdeal, Var};
use crate::linalg::Field;

/// Homological degree `i` fed by reduced homology of `Δ|σ` in degree
/// `face_size - 1` (faces of size `face_size` carry degree `face_size - 1`).
pub(crate) const fn hochster_index(sigma_size: usize, face_size: usize) -> usize {
    sigma_size - face_size
}

pub fn stanley_reisner_complex(i: &MonomialIdeal) -> Result<SimplicialComplex> {
    if i.is_unit() {
        return Err(input_err!("the unit ideal has no Stanley-Reisner complex"));
    }
    let masks = i.squarefree_supports()?;
    SimplicialComplex::from_minimal_nonfaces(i.space().vars().to_vec(), masks)
}

pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    let nonfaces = g.edges().into_iter().map(|(u, v)| 1u64 << (u - 1) | 1u64 << (v - 1)).collect();
    SimplicialComplex::from_minimal_nonfaces((1..=g.num_vertices()).map(Var::Simple).collect(), nonfaces)
        .expect("graphs have at most 64 vertices")
}

/// All unions of subsets of `gens`, including the empty union.
fn lcm_lattice(gens: &[u64]) -> Vec<u64> {
    let mut seen: HashSet<u64> = HashSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x | g;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Betti table of `S/I` for squarefree generator supports in `num_vars` variables.
///
/// Only `σ` in the lcm lattice can contribute: otherwise some vertex of `σ`
/// lies in no non-face of `Δ|σ` and `Δ|σ` is a cone.
pub(crate) fn betti_from_supports(num_vars: usize, gens: &[u64], field: Field) -> BettiTable {
    lcm_lattice(gens)
        .into_par_iter()
        .map(|sigma| {
            let inside: Vec<u64> = gens.iter().copied().filter(|&g| g & sigma == g).collect();
            let dims = restricted_homology(&inside, sigma, field);
            let size = sigma.count_ones() as usize;
            let mut t = BettiTable::new(num_vars);
            for (face_size, &h) in dims.by_face_size().iter().enumerate() {
                t.add(hochster_index(size, face_size), size, h as u64);
            }
            t
        })
        .reduce(|| BettiTable::new(num_vars), BettiTable::merge)
}

/// Graded Betti numbers of `S/I` for a squarefree ideal, by Hochster's formula.
pub fn betti_table_squarefree(i: &MonomialIdeal, field: Field, guard: usize) -> Result<BettiTable> {
    if i.is_unit() {
        return Err(input_err!("the quotient by the unit ideal is zero"));
    }
    if i.num_vars() > guard {
        return Err(Error::Resource(format!("{} variables exceeds the Hochster guard of {guard}", i.num_vars())));
    }
    let gens = i.squarefree_supports()?;
    Ok(betti_from_supports(i.num_vars(), &gens, field))
}
