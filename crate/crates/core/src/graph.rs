//! Pattern graphs on at most 16 vertices and adjacency-list host graphs.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest vertex count a [`SmallGraph`] can hold.
pub const MAX_SMALL: usize = 16;

/// Number of unordered pairs on `n` vertices.
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i, j}` (`i < j`) in the lexicographic pair order
/// `(0,1), (0,2), .., (0,n-1), (1,2), ..` on `n` vertices.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)`, `i < j < n`, in lexicographic order.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pairs(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// A graph on at most 16 vertices stored as adjacency bit rows.
///
/// Loop marks are only ever set on quotient graphs; every other constructor
/// produces a simple graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: u8,
    adj: [u16; MAX_SMALL],
    loops: u16,
}

impl SmallGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_SMALL {
            return Err(Error::too_large("vertex count", n, MAX_SMALL));
        }
        Ok(SmallGraph {
            n: n as u8,
            adj: [0; MAX_SMALL],
            loops: 0,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds `K_n[A]` where bit `p` of `bits` selects the `p`-th pair in
    /// lexicographic order.
    pub fn from_edge_bits(n: usize, bits: u128) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let mut p = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> p & 1 == 1 {
                    g.add_edge(i, j);
                }
                p += 1;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for i in 0..n {
            g.adj[i] = full_mask(n) & !(1 << i);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Self::from_edges(a + b, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertex_mask(&self) -> u16 {
        full_mask(self.n())
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n() && v < self.n());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask (a loop is not part of it).
    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| {
            let row = self.adj[i] >> (i + 1) << (i + 1);
            BitIter(row).map(move |j| (i, j))
        })
    }

    /// Edge set in lexicographic pair order.
    pub fn edge_bits(&self) -> u128 {
        let n = self.n();
        let mut bits = 0u128;
        let mut p = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    bits |= 1 << p;
                }
                p += 1;
            }
        }
        bits
    }

    #[inline]
    pub fn loops(&self) -> u16 {
        self.loops
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    #[inline]
    pub fn has_loops(&self) -> bool {
        self.loops != 0
    }

    pub(crate) fn set_loop(&mut self, v: usize) {
        self.loops |= 1 << v;
    }

    pub fn complement(&self) -> Result<Self> {
        if self.has_loops() {
            return Err(Error::LoopMarked(format!("{self:?}")));
        }
        let mut g = *self;
        let full = self.vertex_mask();
        for v in 0..self.n() {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        Ok(g)
    }

    /// Subgraph induced by the vertices in `mask`, relabelled in increasing
    /// order.
    pub fn induced(&self, mask: u16) -> SmallGraph {
        let verts: Vec<usize> = BitIter(mask & self.vertex_mask()).collect();
        let mut g = SmallGraph {
            n: verts.len() as u8,
            adj: [0; MAX_SMALL],
            loops: 0,
        };
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
            if self.has_loop(u) {
                g.set_loop(a);
            }
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> SmallGraph {
        self.induced(self.vertex_mask() & !(1 << v))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[u8]) -> SmallGraph {
        let mut g = SmallGraph {
            n: self.n,
            adj: [0; MAX_SMALL],
            loops: 0,
        };
        for u in 0..self.n() {
            let pu = perm[u] as usize;
            let mut row = 0u16;
            for w in BitIter(self.adj[u]) {
                row |= 1 << perm[w];
            }
            g.adj[pu] = row;
            if self.has_loop(u) {
                g.loops |= 1 << pu;
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<SmallGraph> {
        let n = self.n() + other.n();
        let mut g = SmallGraph::empty(n)?;
        let off = self.n();
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g.loops = self.loops | (other.loops << off);
        Ok(g)
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u16> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let comp = self.reach(start, self.vertex_mask());
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u16) -> u16 {
        let mut seen = 1u16 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u16;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Degrees in vertex order.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, edges=[", self.n)?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")?;
        if self.loops != 0 {
            write!(f, ", loops={:#b}", self.loops)?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// Iterates over the set bit positions of a mask.
#[derive(Clone, Copy)]
pub struct BitIter(pub u16);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// A simple host graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct HostGraph {
    adj: Vec<Vec<u32>>,
}

impl HostGraph {
    pub fn empty(n: usize) -> Self {
        HostGraph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Duplicate edges are merged; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(HostGraph { adj })
    }

    pub fn from_small(g: &SmallGraph) -> Self {
        let edges: Vec<_> = g.edges().collect();
        Self::from_edges(g.n(), &edges).expect("small graphs are simple")
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(n, &edges).expect("generated edges are in range")
    }

    /// Random bipartite graph with parts `0..a` and `a..a+b`.
    pub fn random_bipartite<R: Rng + ?Sized>(a: usize, b: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if rng.gen_bool(p) {
                    edges.push((i, a + j));
                }
            }
        }
        Self::from_edges(a + b, &edges).expect("generated edges are in range")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn complement(&self) -> HostGraph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for (u, row) in adj.iter_mut().enumerate() {
            let mut it = self.adj[u].iter().peekable();
            for v in 0..n as u32 {
                if it.peek() == Some(&&v) {
                    it.next();
                    continue;
                }
                if v as usize != u {
                    row.push(v);
                }
            }
        }
        HostGraph { adj }
    }

    /// Subgraph induced by `verts` (at most 16 of them), vertex `i` of the
    /// result being `verts[i]`.
    pub fn induced_small(&self, verts: &[usize]) -> Result<SmallGraph> {
        let mut g = SmallGraph::empty(verts.len())?;
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                if self.adjacent(verts[a], verts[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Host with the listed vertices deleted; survivors keep their relative
    /// order.
    pub fn remove_vertices(&self, removed: &[usize]) -> HostGraph {
        let n = self.n();
        let mut keep = vec![true; n];
        for &v in removed {
            keep[v] = false;
        }
        let mut new_id = vec![u32::MAX; n];
        let mut next = 0u32;
        for v in 0..n {
            if keep[v] {
                new_id[v] = next;
                next += 1;
            }
        }
        let adj = (0..n)
            .filter(|&v| keep[v])
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| keep[w as usize])
                    .map(|&w| new_id[w as usize])
                    .collect()
            })
            .collect();
        HostGraph { adj }
    }

    /// Two-colouring by BFS; `None` if the graph has an odd cycle. Each
    /// component's smallest vertex gets side 0.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    let w = w as usize;
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}

impl fmt::Debug for HostGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HostGraph(n={}, m={})", self.n(), self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_lexicographic() {
        for n in 2..=MAX_SMALL {
            for (p, (i, j)) in pair_list(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, i, j), p);
            }
        }
    }

    #[test]
    fn edge_bits_round_trip() {
        let g = SmallGraph::from_edges(5, &[(0, 1), (1, 4), (2, 3)]).unwrap();
        assert_eq!(SmallGraph::from_edge_bits(5, g.edge_bits()).unwrap(), g);
        assert_eq!(SmallGraph::complete(16).unwrap().edge_count(), 120);
    }

    #[test]
    fn rejects_oversized_and_loops() {
        assert!(SmallGraph::empty(17).is_err());
        assert!(SmallGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(HostGraph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn complement_is_involution_and_rejects_loops() {
        let g = SmallGraph::cycle(5).unwrap();
        let c = g.complement().unwrap();
        assert_eq!(c.edge_count(), 5);
        assert_eq!(c.complement().unwrap(), g);
        assert_eq!(SmallGraph::complete(4).unwrap().complement().unwrap().edge_count(), 0);
        let mut l = g;
        l.set_loop(2);
        assert!(l.complement().is_err());
    }

    #[test]
    fn host_helpers() {
        let c6 = HostGraph::from_small(&SmallGraph::cycle(6).unwrap());
        assert_eq!(c6.edge_count(), 6);
        assert!(c6.adjacent(0, 5) && !c6.adjacent(0, 3));
        assert_eq!(c6.complement().edge_count(), 9);
        let side = c6.bipartition().unwrap();
        assert_ne!(side[0], side[1]);
        assert!(HostGraph::from_small(&SmallGraph::cycle(5).unwrap())
            .bipartition()
            .is_none());
        let r = c6.remove_vertices(&[0]);
        assert_eq!(r.n(), 5);
        assert_eq!(r.edge_count(), 4);
        let small = c6.induced_small(&[0, 1, 2]).unwrap();
        assert_eq!(small, SmallGraph::path(3).unwrap());
    }

    #[test]
    fn components_and_reach() {
        let g = SmallGraph::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0b11, 0b11100, 0b100000]);
        assert!(!g.is_connected());
        assert!(SmallGraph::path(4).unwrap().is_connected());
    }
}
