//! Exact treewidth by dynamic programming over vertex subsets, and tree
//! decompositions read off an optimal elimination ordering.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BitIter, SmallGraph};

pub const MAX_TREEWIDTH_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    /// Each bag is a sorted list of pattern vertices.
    pub bags: Vec<Vec<usize>>,
    /// Undirected tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one (0 for a decomposition of the empty graph).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the three decomposition axioms for `h` and that the bag graph is
    /// a tree.
    pub fn validate(&self, h: &SmallGraph) -> Result<()> {
        let bad = |m: String| Err(Error::Consistency(format!("tree decomposition: {m}")));
        let nb = self.bags.len();
        if nb == 0 {
            return bad("no bags".into());
        }
        if self.edges.len() != nb - 1 {
            return bad(format!("{} tree edges for {nb} bags", self.edges.len()));
        }
        let mut adj = vec![Vec::new(); nb];
        for &(a, b) in &self.edges {
            if a >= nb || b >= nb || a == b {
                return bad(format!("bad tree edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // connected with nb-1 edges means a tree
        if reach(&adj, 0, |_| true).len() != nb {
            return bad("bag graph is not connected".into());
        }
        let masks: Vec<u16> = self
            .bags
            .iter()
            .map(|b| b.iter().fold(0u16, |m, &v| m | 1 << v))
            .collect();
        for v in 0..h.n() {
            let holders: Vec<usize> = (0..nb).filter(|&i| masks[i] >> v & 1 == 1).collect();
            let Some(&first) = holders.first() else {
                return bad(format!("vertex {v} in no bag"));
            };
            if reach(&adj, first, |i| masks[i] >> v & 1 == 1).len() != holders.len() {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        for (u, v) in h.edges() {
            let both = (1u16 << u) | (1 << v);
            if !masks.iter().any(|&m| m & both == both) {
                return bad(format!("edge {{{u}, {v}}} in no bag"));
            }
        }
        Ok(())
    }
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    let mut out = Vec::new();
    seen[start] = true;
    while let Some(a) = stack.pop() {
        out.push(a);
        for &b in &adj[a] {
            if !seen[b] && allowed(b) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    out
}

/// Vertices outside `s ∪ {v}` reachable from `v` through `s`: the
/// neighbourhood of `v` once every vertex of `s` has been eliminated.
fn q_set(h: &SmallGraph, s: u16, v: usize) -> u16 {
    let mut seen = 1u16 << v;
    let mut frontier = seen;
    let mut out = 0u16;
    while frontier != 0 {
        let mut next = 0u16;
        for x in BitIter(frontier) {
            next |= h.neighbors(x);
        }
        next &= !seen;
        seen |= next;
        out |= next & !s;
        frontier = next & s;
    }
    out
}

/// Optimal width and an elimination ordering achieving it.
pub fn optimal_elimination(h: &SmallGraph) -> Result<(usize, Vec<usize>)> {
    let n = h.n();
    if n > MAX_TREEWIDTH_N {
        return Err(Error::too_large("treewidth pattern size", n, MAX_TREEWIDTH_N));
    }
    let full = h.vertex_mask() as usize;
    // tw[s]: best width over orderings that eliminate exactly s first;
    // i32::MIN marks the empty prefix.
    let mut tw = vec![i32::MAX; full + 1];
    let mut choice = vec![0u8; full + 1];
    tw[0] = i32::MIN;
    for s in 1..=full {
        for v in BitIter(s as u16) {
            let rest = s & !(1 << v);
            let q = q_set(h, rest as u16, v).count_ones() as i32;
            let cand = tw[rest].max(q);
            if cand < tw[s] {
                tw[s] = cand;
                choice[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let width = if n == 0 { 0 } else { tw[full] as usize };
    Ok((width, order))
}

/// Tree decomposition induced by eliminating vertices in `order`.
pub fn decomposition_from_order(h: &SmallGraph, order: &[usize]) -> TreeDecomposition {
    let n = h.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut pos = [0usize; 16];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut eliminated = 0u16;
    let mut later: Vec<u16> = Vec::with_capacity(n);
    for &v in order {
        later.push(q_set(h, eliminated, v));
        eliminated |= 1 << v;
    }
    let bags: Vec<Vec<usize>> = order
        .iter()
        .zip(&later)
        .map(|(&v, &q)| {
            let mut b: Vec<usize> = BitIter(q | 1 << v).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for i in 0..n {
        let parent = BitIter(later[i]).map(|u| pos[u]).min();
        match parent {
            Some(p) => edges.push((i, p)),
            // a component's last vertex: chain it to the next root
            None if i + 1 < n => edges.push((i, i + 1)),
            None => {}
        }
    }
    TreeDecomposition { bags, edges }
}

/// Exact treewidth of `h` with an optimal decomposition.
pub fn exact_treewidth(h: &SmallGraph) -> Result<(usize, TreeDecomposition)> {
    let (width, order) = optimal_elimination(h)?;
    let td = decomposition_from_order(h, &order);
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}
