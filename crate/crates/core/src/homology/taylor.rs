//! Betti numbers from the Taylor complex.
//!
//! After tensoring the Taylor resolution with the residue field, a basis
//! element `e_S` maps to `±e_{S \ j}` exactly when removing generator `j`
//! keeps the lcm; all other coefficients are positive-degree monomials and
//! vanish. The complex therefore splits by lcm, and each strand's homology
//! is `Tor_i(S/I, K)` in that multidegree.

use std::collections::{BTreeMap, HashMap};

use super::BettiTable;
use crate::error::{input_err, Error, Result};
use crate::ideal::{Monomial, MonomialIdeal};
use crate::linalg::{rank, Field, SparseRow};

pub fn taylor_betti_oracle(i: &MonomialIdeal, field: Field, guard: usize) -> Result<BettiTable> {
    if i.is_unit() {
        return Err(input_err!("the quotient by the unit ideal is zero"));
    }
    let gens = i.generators();
    let r = gens.len();
    if r > guard {
        return Err(Error::Resource(format!("{r} generators exceeds the Taylor guard of {guard}")));
    }
    // subsets grouped by lcm, then by size
    let mut strands: BTreeMap<Monomial, Vec<Vec<u32>>> = BTreeMap::new();
    for subset in 0u32..(1 << r) {
        let lcm = (0..r).filter(|j| subset >> j & 1 == 1).fold(Monomial::one(i.num_vars()), |acc, j| acc.lcm(&gens[j]));
        let sizes = strands.entry(lcm).or_insert_with(|| vec![Vec::new(); r + 1]);
        sizes[subset.count_ones() as usize].push(subset);
    }
    let mut table = BettiTable::new(i.num_vars());
    for (lcm, by_size) in strands {
        let index: Vec<HashMap<u32, usize>> =
            by_size.iter().map(|v| v.iter().enumerate().map(|(k, &s)| (s, k)).collect()).collect();
        let mut ranks = vec![0usize; r + 2];
        for size in 1..=r {
            let rows: Vec<SparseRow> = by_size[size]
                .iter()
                .map(|&s| {
                    let mut row: SparseRow = (0..r)
                        .filter(|j| s >> j & 1 == 1)
                        .enumerate()
                        .filter_map(|(pos, j)| {
                            let col = *index[size - 1].get(&(s & !(1 << j)))?;
                            Some((col, if pos % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect();
                    row.sort_unstable_by_key(|e| e.0);
                    row
                })
                .collect();
            ranks[size] = rank(&rows, field);
        }
        let degree = lcm.degree() as usize;
        for size in 0..=r {
            let beta = by_size[size].len() - ranks[size] - ranks[size + 1];
            table.add(size, degree, beta as u64);
        }
    }
    Ok(table)
}
