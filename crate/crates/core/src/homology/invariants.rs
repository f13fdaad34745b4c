use serde::Serialize;

use super::hochster::betti_table_squarefree;
use super::independence::edge_ideal_betti_table;
use crate::error::{input_err, Error, Result};
use crate::graph::Graph;
use crate::ideal::{polarize, symbolic_power_cover, MonomialIdeal};
use crate::layered::build_gk;
use crate::linalg::Field;

/// `pd`, `reg` and `depth` of a quotient `S/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientInvariants {
    pub num_vars: usize,
    pub pd: usize,
    pub reg: usize,
    pub depth: usize,
}

/// Invariants of `S/I`, polarizing first when `I` is not squarefree.
/// `depth` uses the variable count of the original ring.
pub fn pd_reg_depth(i: &MonomialIdeal, field: Field, guard: usize) -> Result<QuotientInvariants> {
    let table = if i.is_squarefree() {
        betti_table_squarefree(i, field, guard)?
    } else {
        betti_table_squarefree(&polarize(i)?, field, guard)?
    };
    let pd = table.pd();
    let depth = i
        .num_vars()
        .checked_sub(pd)
        .ok_or_else(|| Error::Internal(format!("pd {pd} exceeds the {} variables", i.num_vars())))?;
    Ok(QuotientInvariants { num_vars: i.num_vars(), pd, reg: table.reg(), depth })
}

/// `depth S/J(G)^(k)` together with the two quantities it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    /// `pd` of the quotient by the polarized symbolic power.
    pub pd_polarized: usize,
    /// `reg I(G_k)`, which equals that `pd` by Terai's theorem.
    pub reg_layered_edge_ideal: usize,
}

/// `depth S/J(G)^(k)`, computed once from the polarized symbolic power and
/// once from the edge ideal of `G_k`; the two must agree.
pub fn depth_symbolic_cover(g: &Graph, k: usize, field: Field, guard: usize) -> Result<DepthReport> {
    if g.num_edges() == 0 {
        return Err(input_err!("the graph needs at least one edge"));
    }
    if k == 0 {
        return Err(input_err!("k must be at least 1"));
    }
    let n = g.num_vertices();
    let size = n.saturating_mul(k);
    if size > guard {
        return Err(Error::Resource(format!("n*k = {size} exceeds the Hochster guard of {guard}")));
    }
    let pol = polarize(&symbolic_power_cover(g, k)?)?;
    let pd_polarized = betti_table_squarefree(&pol, field, guard)?.pd();
    let reg_layered_edge_ideal = reg_edge_ideal(&build_gk(g, k)?.as_graph(), field, guard)?;
    if pd_polarized != reg_layered_edge_ideal {
        return Err(Error::Internal(format!(
            "depth routes disagree for k={k}: pd of the polarization is {pd_polarized}, reg I(G_k) is {reg_layered_edge_ideal}"
        )));
    }
    let depth = n
        .checked_sub(pd_polarized)
        .ok_or_else(|| Error::Internal(format!("pd {pd_polarized} exceeds the {n} variables")))?;
    Ok(DepthReport { depth, pd_polarized, reg_layered_edge_ideal })
}

/// `reg I(G)`, one more than the regularity of the quotient.
pub fn reg_edge_ideal(g: &Graph, field: Field, guard: usize) -> Result<usize> {
    if g.num_edges() == 0 {
        return Err(input_err!("the edge ideal of an edgeless graph is zero"));
    }
    Ok(edge_ideal_betti_table(g, field, guard)?.reg() + 1)
}
