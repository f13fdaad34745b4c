use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{input_err, Error, Result};

/// A partition of the vertex set into cliques `W_1, ..., W_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliquePartition {
    blocks: Vec<Vec<usize>>,
}

impl CliquePartition {
    pub fn new(g: &Graph, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = 0u64;
        for block in &blocks {
            if block.is_empty() {
                return Err(input_err!("clique partition has an empty block"));
            }
            for (idx, &u) in block.iter().enumerate() {
                let bit = g.mask_of(&[u])?;
                if seen & bit != 0 {
                    return Err(input_err!("vertex {u} appears in more than one block"));
                }
                seen |= bit;
                for &v in &block[idx + 1..] {
                    if !g.has_edge(u, v) {
                        return Err(input_err!("block {block:?} is not a clique: {u} and {v} are not adjacent"));
                    }
                }
            }
        }
        if seen != g.vertex_mask() {
            return Err(input_err!("blocks do not cover every vertex"));
        }
        Ok(CliquePartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
    }

    /// Parses one block per line; validated against `g`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let raw: RawPartition = text.parse()?;
        CliquePartition::new(g, raw.0)
    }
}

impl fmt::Display for CliquePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

struct RawPartition(Vec<Vec<usize>>);

impl FromStr for RawPartition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let block = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: bad vertex `{tok}`", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        Ok(RawPartition(blocks))
    }
}

/// The fully clique-whiskered graph: vertex `n + i` is attached to every
/// vertex of block `i`.
pub fn whisker(g: &Graph, pi: &CliquePartition) -> Result<Graph> {
    // Revalidate: the partition may have been built for another graph.
    let pi = CliquePartition::new(g, pi.blocks.clone())?;
    let n = g.num_vertices();
    let mut out = Graph::new(n + pi.len())?;
    for (u, v) in g.edges() {
        out.add_edge(u, v)?;
    }
    for (i, block) in pi.blocks.iter().enumerate() {
        for &x in block {
            out.add_edge(x, n + i + 1)?;
        }
    }
    Ok(out)
}

/// All clique vertex-partitions of `g`, in a deterministic order. Blocks are
/// sorted and listed by their smallest vertex.
pub fn clique_partitions(g: &Graph) -> Vec<CliquePartition> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    assign(g, 1, &mut blocks, &mut out);
    out
}

fn assign(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<CliquePartition>) {
    if v > g.num_vertices() {
        out.push(CliquePartition { blocks: blocks.clone() });
        return;
    }
    for i in 0..blocks.len() {
        if blocks[i].iter().all(|&u| g.has_edge(u, v)) {
            blocks[i].push(v);
            assign(g, v + 1, blocks, out);
            blocks[i].pop();
        }
    }
    blocks.push(vec![v]);
    assign(g, v + 1, blocks, out);
    blocks.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whisker_examples() {
        let k2 = Graph::complete(2).unwrap();
        let one = CliquePartition::new(&k2, vec![vec![1, 2]]).unwrap();
        assert_eq!(whisker(&k2, &one).unwrap(), Graph::complete(3).unwrap());

        let two = CliquePartition::new(&k2, vec![vec![1], vec![2]]).unwrap();
        let w = whisker(&k2, &two).unwrap();
        // path 3-1-2-4
        assert_eq!(w, Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4)]).unwrap());

        let k1 = Graph::new(1).unwrap();
        let single = CliquePartition::new(&k1, vec![vec![1]]).unwrap();
        assert_eq!(whisker(&k1, &single).unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn whisker_counts() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        for pi in clique_partitions(&g) {
            let w = whisker(&g, &pi).unwrap();
            assert_eq!(w.num_vertices(), 4 + pi.len());
            let sum: usize = pi.blocks().iter().map(Vec::len).sum();
            assert_eq!(w.num_edges(), g.num_edges() + sum);
        }
    }

    #[test]
    fn partition_validation() {
        let p3 = Graph::path(3).unwrap();
        assert!(CliquePartition::new(&p3, vec![vec![1, 3], vec![2]]).is_err());
        assert!(CliquePartition::new(&p3, vec![vec![1, 2]]).is_err());
        assert!(CliquePartition::new(&p3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(CliquePartition::new(&p3, vec![vec![1, 2], vec![], vec![3]]).is_err());
        assert!(CliquePartition::new(&p3, vec![vec![1, 2], vec![3]]).is_ok());
    }

    #[test]
    fn partition_enumeration() {
        // Bell number 15 for the complete graph on 4 vertices.
        assert_eq!(clique_partitions(&Graph::complete(4).unwrap()).len(), 15);
        assert_eq!(clique_partitions(&Graph::new(3).unwrap()).len(), 1);
        // P3: {1}{2}{3}, {1,2}{3}, {1}{2,3}
        assert_eq!(clique_partitions(&Graph::path(3).unwrap()).len(), 3);
    }

    #[test]
    fn partition_text_round_trip() {
        let k3 = Graph::complete(3).unwrap();
        let pi = CliquePartition::new(&k3, vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(pi.to_text(), "1 3\n2\n");
        assert_eq!(CliquePartition::parse(&k3, &pi.to_text()).unwrap(), pi);
        assert!(matches!(CliquePartition::parse(&k3, "1 x\n"), Err(Error::Parse(_))));
    }
}
