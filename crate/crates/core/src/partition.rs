//! Set partitions of a small vertex set, quotients, and the partition-lattice
//! Möbius function.

use crate::error::{Error, Result};
use crate::graph::{BitIter, SmallGraph};

/// Largest ground set for which [`partitions_with_moebius`] enumerates
/// (Bell(10) = 115975 partitions).
pub const MAX_PARTITION_N: usize = 10;

/// A partition of `{0, .., n-1}` into blocks stored as bit masks, ordered by
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    n: usize,
    blocks: Vec<u16>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        let mut seen = 0u32;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            let mut m = 0u16;
            for &v in b {
                if v >= n || v >= 16 {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if seen >> v & 1 == 1 {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                seen |= 1 << v;
                m |= 1 << v;
            }
            masks.push(m);
        }
        if seen != (1u32 << n) - 1 {
            return Err(Error::InvalidPartition("blocks do not cover every vertex".into()));
        }
        masks.sort_by_key(|m| m.trailing_zeros());
        Ok(VertexPartition { n, blocks: masks })
    }

    pub fn discrete(n: usize) -> Self {
        VertexPartition {
            n,
            blocks: (0..n).map(|v| 1u16 << v).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_masks(&self) -> &[u16] {
        &self.blocks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&m| BitIter(m).collect()).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    /// `μ(0̂, ρ) = Π_B (-1)^{|B|-1} (|B|-1)!` in the partition lattice.
    pub fn moebius(&self) -> i64 {
        self.blocks
            .iter()
            .map(|b| {
                let s = b.count_ones() as i64;
                let fact: i64 = (1..s).product();
                if s % 2 == 0 {
                    -fact
                } else {
                    fact
                }
            })
            .product()
    }

    fn from_growth(rgs: &[u8]) -> Self {
        let k = rgs.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut blocks = vec![0u16; k];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b as usize] |= 1 << v;
        }
        VertexPartition {
            n: rgs.len(),
            blocks,
        }
    }
}

/// Every partition of `{0, .., n-1}` exactly once, paired with
/// `μ(discrete, ρ)`.
pub fn partitions_with_moebius(n: usize) -> Result<Vec<(VertexPartition, i64)>> {
    if n > MAX_PARTITION_N {
        return Err(Error::too_large("partition ground set", n, MAX_PARTITION_N));
    }
    let mut out = Vec::new();
    set_partitions(n, |rgs| {
        let p = VertexPartition::from_growth(rgs);
        let mu = p.moebius();
        out.push((p, mu));
    });
    Ok(out)
}

/// Visits the restricted growth strings of length `n`.
fn set_partitions<F: FnMut(&[u8])>(n: usize, mut visit: F) {
    fn rec<F: FnMut(&[u8])>(rgs: &mut Vec<u8>, n: usize, max: u8, visit: &mut F) {
        if rgs.len() == n {
            visit(rgs);
            return;
        }
        let limit = if rgs.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            rec(rgs, n, max.max(b), visit);
            rgs.pop();
        }
    }
    let mut rgs = Vec::with_capacity(n);
    rec(&mut rgs, n, 0, &mut visit);
}

/// Identifies the vertices of each block of `rho`. Block `i` becomes vertex
/// `i`; two blocks are adjacent when some edge crosses between them, and a
/// block carries a loop when it contains an edge or a looped vertex.
pub fn quotient(g: &SmallGraph, rho: &VertexPartition) -> Result<SmallGraph> {
    if rho.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} vertices applied to graph on {}",
            rho.n(),
            g.n()
        )));
    }
    let blocks = rho.block_masks();
    let mut block_of = [0usize; 16];
    for (i, &b) in blocks.iter().enumerate() {
        for v in BitIter(b) {
            block_of[v] = i;
        }
    }
    let mut q = SmallGraph::empty(blocks.len())?;
    for v in 0..g.n() {
        if g.has_loop(v) {
            q.set_loop(block_of[v]);
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (block_of[u], block_of[v]);
        if a == b {
            q.set_loop(a);
        } else {
            q.add_edge(a, b);
        }
    }
    Ok(q)
}
