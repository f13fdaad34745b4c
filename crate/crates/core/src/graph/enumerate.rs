use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub connected: bool,
    pub no_isolated: bool,
}

impl EnumerateOptions {
    fn accepts(&self, g: &Graph) -> bool {
        !(self.no_isolated && g.has_isolated_vertex()) && !(self.connected && !g.is_connected())
    }
}

fn check_guard(n: usize, guard: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("graphs need at least one vertex".into()));
    }
    if n > guard {
        return Err(Error::Resource(format!("enumeration of {n}-vertex graphs exceeds the guard of {guard}")));
    }
    Ok(())
}

/// Every labelled graph on `n` vertices, each exactly once, ordered by the
/// bitmask of its edge set over the slots `(1,2), (1,3), ..., (n-1,n)`.
pub fn enumerate_graphs(n: usize, options: EnumerateOptions, guard: usize) -> Result<impl Iterator<Item = Graph>> {
    check_guard(n, guard)?;
    let slots: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let total = 1u64 << slots.len();
    Ok((0..total).filter_map(move |bits| {
        let mut g = Graph::new(n).expect("n checked above");
        for (idx, &(u, v)) in slots.iter().enumerate() {
            if bits >> idx & 1 == 1 {
                g.add_edge(u, v).expect("slot vertices are in range");
            }
        }
        options.accepts(&g).then_some(g)
    }))
}

/// Upper-triangle adjacency bits of `g` under the vertex order `order`.
fn code_under(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.adjacency()[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// A complete isomorphism invariant: the minimum adjacency code over all
/// vertex orders that list vertices by non-increasing degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.num_vertices();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v + 1)));
    // Blocks of equal degree are permuted independently.
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &by_degree {
        match blocks.last_mut() {
            Some(b) if g.degree(b[0] + 1) == g.degree(v + 1) => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_blocks(g, &mut blocks, 0, &mut order, &mut best);
    best
}

fn permute_blocks(g: &Graph, blocks: &mut [Vec<usize>], idx: usize, order: &mut Vec<usize>, best: &mut u64) {
    if idx == blocks.len() {
        *best = (*best).min(code_under(g, order));
        return;
    }
    let mut block = blocks[idx].clone();
    heap_permutations(&mut block, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_blocks(g, blocks, idx + 1, order, best);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            rec(k - 1, items, visit);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        rec(k - 1, items, visit);
    }
    let len = items.len();
    rec(len, items, visit);
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::new(n).expect("positive vertex count");
    let mut bit = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if code >> bit & 1 == 1 {
                g.add_edge(i, j).expect("in range");
            }
            bit += 1;
        }
    }
    g
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// sorted by canonical code. Each representative is the graph whose
/// adjacency code is its canonical code.
pub fn enumerate_unlabeled(n: usize, options: EnumerateOptions, guard: usize) -> Result<Vec<Graph>> {
    check_guard(n, guard)?;
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &classes {
            let base = graph_from_code(size - 1, code);
            for nbrs in 0..1u64 << (size - 1) {
                let mut g = Graph::new(size).expect("positive");
                for (u, v) in base.edges() {
                    g.add_edge(u, v).expect("in range");
                }
                for v in 0..size - 1 {
                    if nbrs >> v & 1 == 1 {
                        g.add_edge(v + 1, size).expect("in range");
                    }
                }
                next.insert(canonical_code(&g));
            }
        }
        classes = next;
    }
    Ok(classes.into_iter().map(|code| graph_from_code(n, code)).filter(|g| options.accepts(g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NO_ISO: EnumerateOptions = EnumerateOptions { connected: false, no_isolated: true };

    #[test]
    fn labelled_counts() {
        let k2: Vec<Graph> = enumerate_graphs(2, NO_ISO, 7).unwrap().collect();
        assert_eq!(k2, vec![Graph::complete(2).unwrap()]);
        assert_eq!(enumerate_graphs(3, NO_ISO, 7).unwrap().count(), 4);
        let one: Vec<Graph> = enumerate_graphs(1, EnumerateOptions::default(), 7).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].num_edges(), 0);
        assert_eq!(enumerate_graphs(4, EnumerateOptions::default(), 7).unwrap().count(), 64);
        let connected = EnumerateOptions { connected: true, no_isolated: false };
        assert_eq!(enumerate_graphs(4, connected, 7).unwrap().count(), 38);
        assert!(matches!(enumerate_graphs(8, NO_ISO, 7), Err(Error::Resource(_))));
    }

    #[test]
    fn unlabeled_counts() {
        // OEIS A000088: 1, 2, 4, 11, 34, 156, 1044
        let all = EnumerateOptions::default();
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_unlabeled(n, all, 7).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        // connected graphs, A001349: 1, 1, 2, 6, 21, 112
        let connected = EnumerateOptions { connected: true, no_isolated: false };
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_unlabeled(n, connected, 7).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let g = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        let h = g.relabel(&[3, 5, 1, 2, 4]).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&h));
        let p5 = Graph::path(5).unwrap();
        assert_ne!(canonical_code(&g), canonical_code(&p5));
    }
}
