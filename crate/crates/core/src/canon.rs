//! Canonical labelling and automorphism counting for [`SmallGraph`]s.
//!
//! Both routines run individualisation–refinement: an ordered vertex
//! partition is refined to an equitable one, a vertex of the first non-trivial
//! cell is split off, and the process recurses until the partition is
//! discrete. A discrete partition is a labelling; the canonical form is the
//! lexicographically largest relabelled graph over all leaves. Leaves that
//! reproduce the current best graph yield automorphisms, which prune sibling
//! branches (orbit pruning) and entire subtrees (jump back to the common
//! ancestor).
//!
//! Automorphism counts use the orbit–stabiliser decomposition along one path:
//! `|Aut(G, π)| = |v^{Aut(G, π)}| · |Aut(G, π·v)|`, where orbit membership of
//! each candidate is decided by an exact coloured-isomorphism search.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BitIter, SmallGraph, MAX_SMALL};

/// Isomorphism-invariant key of a graph: its canonically relabelled edge and
/// loop sets. Equal keys hold exactly for isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonKey {
    n: u8,
    edges: u128,
    loops: u16,
}

impl CanonKey {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// The canonical representative.
    pub fn graph(&self) -> SmallGraph {
        let mut g = SmallGraph::from_edge_bits(self.n(), self.edges)
            .expect("keys only come from valid graphs");
        for v in BitIter(self.loops) {
            g.set_loop(v);
        }
        g
    }

    fn of(g: &SmallGraph) -> Self {
        CanonKey {
            n: g.n() as u8,
            edges: g.edge_bits(),
            loops: g.loops(),
        }
    }
}

impl Ord for CanonKey {
    /// Orders by vertex count, edge count, then the canonical encoding.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.edge_count(), self.edges, self.loops).cmp(&(
            other.n,
            other.edge_count(),
            other.edges,
            other.loops,
        ))
    }
}

impl PartialOrd for CanonKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonKey({:?})", self.graph())
    }
}

/// A canonical form: the relabelled graph plus the relabelling that produced
/// it (`labeling[v]` is the new label of vertex `v`).
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub graph: SmallGraph,
    pub labeling: Vec<u8>,
}

impl CanonicalForm {
    pub fn key(&self) -> CanonKey {
        CanonKey::of(&self.graph)
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for CanonicalForm {}

fn check_size(g: &SmallGraph) -> Result<()> {
    if g.n() > MAX_SMALL {
        return Err(Error::too_large("vertex count", g.n(), MAX_SMALL));
    }
    Ok(())
}

pub fn canonical_form(g: &SmallGraph) -> Result<CanonicalForm> {
    check_size(g)?;
    Ok(canonize(g))
}

/// Shorthand for `canonical_form(g).key()`.
pub fn canon_key(g: &SmallGraph) -> CanonKey {
    canonize(g).key()
}

pub fn are_isomorphic(a: &SmallGraph, b: &SmallGraph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && a.loops().count_ones() == b.loops().count_ones()
        && canon_key(a) == canon_key(b)
}

pub fn automorphism_count(g: &SmallGraph) -> Result<u64> {
    check_size(g)?;
    let (cells, _) = initial_partition(g);
    Ok(aut_rec(g, &cells))
}

// ---------------------------------------------------------------------------
// Partition refinement

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Refines `cells` in place until equitable, starting from `splitters`.
/// Returns a hash of the refinement trace, which is invariant under
/// isomorphisms of (graph, ordered partition).
fn refine(g: &SmallGraph, cells: &mut Vec<u16>, mut splitters: Vec<u16>) -> u64 {
    let mut trace = 0u64;
    let mut head = 0;
    let mut buckets: [(u32, u16); MAX_SMALL] = [(0, 0); MAX_SMALL];
    while head < splitters.len() {
        let s = splitters[head];
        head += 1;
        let mut ci = 0;
        while ci < cells.len() {
            let c = cells[ci];
            if c.count_ones() == 1 {
                ci += 1;
                continue;
            }
            let mut nb = 0usize;
            for v in BitIter(c) {
                let cnt = (g.neighbors(v) & s).count_ones();
                match buckets[..nb].iter_mut().find(|b| b.0 == cnt) {
                    Some(b) => b.1 |= 1 << v,
                    None => {
                        buckets[nb] = (cnt, 1 << v);
                        nb += 1;
                    }
                }
            }
            if nb == 1 {
                ci += 1;
                continue;
            }
            buckets[..nb].sort_unstable_by_key(|b| b.0);
            cells.splice(ci..=ci, buckets[..nb].iter().map(|b| b.1));
            for b in &buckets[..nb] {
                trace = mix(trace, ((ci as u64) << 40) | ((b.0 as u64) << 20) | b.1.count_ones() as u64);
                splitters.push(b.1);
            }
            ci += nb;
        }
    }
    trace
}

fn initial_partition(g: &SmallGraph) -> (Vec<u16>, u64) {
    let all = g.vertex_mask();
    let looped = g.loops() & all;
    let mut cells: Vec<u16> = [all & !looped, looped]
        .into_iter()
        .filter(|&c| c != 0)
        .collect();
    let splitters = cells.clone();
    let trace = refine(g, &mut cells, splitters);
    (cells, trace)
}

fn individualize(g: &SmallGraph, cells: &[u16], ci: usize, v: usize) -> (Vec<u16>, u64) {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..ci]);
    out.push(1 << v);
    out.push(cells[ci] & !(1 << v));
    out.extend_from_slice(&cells[ci + 1..]);
    let trace = refine(g, &mut out, vec![1 << v]);
    (out, trace)
}

fn target_cell(cells: &[u16]) -> Option<usize> {
    cells.iter().position(|c| c.count_ones() > 1)
}

fn leaf_labeling(cells: &[u16]) -> [u8; MAX_SMALL] {
    let mut lab = [0u8; MAX_SMALL];
    for (pos, &c) in cells.iter().enumerate() {
        lab[c.trailing_zeros() as usize] = pos as u8;
    }
    lab
}

// ---------------------------------------------------------------------------
// Canonical search

struct Leaf {
    graph: SmallGraph,
    code: (u128, u16),
    labeling: [u8; MAX_SMALL],
    path: Vec<u8>,
}

struct Canonizer<'a> {
    g: &'a SmallGraph,
    best: Option<Leaf>,
    gens: Vec<[u8; MAX_SMALL]>,
}

impl Canonizer<'_> {
    /// Returns `Some(level)` when the caller should abandon every node deeper
    /// than `level`.
    fn search(&mut self, cells: Vec<u16>, path: &mut Vec<u8>) -> Option<usize> {
        let Some(ti) = target_cell(&cells) else {
            return self.visit_leaf(&cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for w in BitIter(cells[ti]) {
            if !explored.is_empty() && self.equivalent_to_explored(w, &explored, path) {
                continue;
            }
            let (child, _) = individualize(self.g, &cells, ti, w);
            path.push(w as u8);
            let jump = self.search(child, path);
            path.pop();
            explored.push(w);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &[u16], path: &[u8]) -> Option<usize> {
        let labeling = leaf_labeling(cells);
        let graph = self.g.permute(&labeling[..self.g.n()]);
        let code = (graph.edge_bits(), graph.loops());
        let Some(best) = &self.best else {
            self.best = Some(Leaf {
                graph,
                code,
                labeling,
                path: path.to_vec(),
            });
            return None;
        };
        match code.cmp(&best.code) {
            Ordering::Greater => {
                self.best = Some(Leaf {
                    graph,
                    code,
                    labeling,
                    path: path.to_vec(),
                });
                None
            }
            Ordering::Less => None,
            Ordering::Equal => {
                let n = self.g.n();
                let mut inv = [0u8; MAX_SMALL];
                for v in 0..n {
                    inv[best.labeling[v] as usize] = v as u8;
                }
                let mut gamma = [0u8; MAX_SMALL];
                for v in 0..n {
                    gamma[v] = inv[labeling[v] as usize];
                }
                if (0..n).any(|v| gamma[v] as usize != v) {
                    self.gens.push(gamma);
                }
                let common = path
                    .iter()
                    .zip(&best.path)
                    .take_while(|(a, b)| a == b)
                    .count();
                Some(common)
            }
        }
    }

    /// Whether `w` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `path` pointwise.
    fn equivalent_to_explored(&self, w: usize, explored: &[usize], path: &[u8]) -> bool {
        let n = self.g.n();
        let mut parent: [u8; MAX_SMALL] = std::array::from_fn(|i| i as u8);
        fn find(p: &mut [u8; MAX_SMALL], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        let mut any = false;
        for gamma in &self.gens {
            if path.iter().all(|&p| gamma[p as usize] == p) {
                any = true;
                for v in 0..n {
                    let a = find(&mut parent, v);
                    let b = find(&mut parent, gamma[v] as usize);
                    if a != b {
                        parent[a] = b as u8;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn canonize(g: &SmallGraph) -> CanonicalForm {
    let n = g.n();
    if n <= 1 {
        return CanonicalForm {
            graph: *g,
            labeling: (0..n as u8).collect(),
        };
    }
    let (cells, _) = initial_partition(g);
    let mut c = Canonizer {
        g,
        best: None,
        gens: Vec::new(),
    };
    c.search(cells, &mut Vec::new());
    let best = c.best.expect("search visits at least one leaf");
    CanonicalForm {
        graph: best.graph,
        labeling: best.labeling[..n].to_vec(),
    }
}

// ---------------------------------------------------------------------------
// Automorphism counting

/// `u` and `w` have the same neighbourhood apart from each other and the same
/// loop mark, so swapping them is an automorphism.
fn twins(g: &SmallGraph, u: usize, w: usize) -> bool {
    let mask = !((1u16 << u) | (1u16 << w));
    g.neighbors(u) & mask == g.neighbors(w) & mask && g.has_loop(u) == g.has_loop(w)
}

fn aut_rec(g: &SmallGraph, cells: &[u16]) -> u64 {
    let Some(ti) = target_cell(cells) else {
        return 1;
    };
    let cell = cells[ti];
    let v = cell.trailing_zeros() as usize;
    let (child_v, trace_v) = individualize(g, cells, ti, v);
    let target = FirstPath::new(g, &child_v, trace_v);
    let mut orbit = 1u64;
    for w in BitIter(cell & !(1 << v)) {
        if twins(g, v, w) {
            orbit += 1;
            continue;
        }
        let (child_w, trace_w) = individualize(g, cells, ti, w);
        if target.matches(g, child_w, trace_w) {
            orbit += 1;
        }
    }
    orbit * aut_rec(g, &child_v)
}

/// The leftmost root-to-leaf path below a node, with the invariants needed to
/// recognise an isomorphic copy of it.
struct FirstPath {
    invariants: Vec<(u64, Vec<u8>)>,
    leaf: SmallGraph,
}

fn shape(cells: &[u16]) -> Vec<u8> {
    cells.iter().map(|c| c.count_ones() as u8).collect()
}

impl FirstPath {
    fn new(g: &SmallGraph, start: &[u16], trace: u64) -> Self {
        let mut invariants = vec![(trace, shape(start))];
        let mut cells = start.to_vec();
        while let Some(ti) = target_cell(&cells) {
            let v = cells[ti].trailing_zeros() as usize;
            let (next, t) = individualize(g, &cells, ti, v);
            invariants.push((t, shape(&next)));
            cells = next;
        }
        let lab = leaf_labeling(&cells);
        FirstPath {
            invariants,
            leaf: g.permute(&lab[..g.n()]),
        }
    }

    /// Whether some leaf below `cells` relabels `g` to the stored leaf graph.
    fn matches(&self, g: &SmallGraph, cells: Vec<u16>, trace: u64) -> bool {
        self.descend(g, cells, trace, 0)
    }

    fn descend(&self, g: &SmallGraph, cells: Vec<u16>, trace: u64, depth: usize) -> bool {
        let (t, ref s) = self.invariants[depth];
        if t != trace || *s != shape(&cells) {
            return false;
        }
        match target_cell(&cells) {
            None => {
                let lab = leaf_labeling(&cells);
                g.permute(&lab[..g.n()]) == self.leaf
            }
            Some(ti) => BitIter(cells[ti]).any(|w| {
                let (next, t) = individualize(g, &cells, ti, w);
                self.descend(g, next, t, depth + 1)
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel_all(g: &SmallGraph, perm: &[u8]) -> SmallGraph {
        g.permute(perm)
    }

    #[test]
    fn path_labelings_agree() {
        let a = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = SmallGraph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let k3 = SmallGraph::complete(3).unwrap();
        assert_ne!(canon_key(&k3), canon_key(&a));
    }

    #[test]
    fn labeling_maps_graph_to_form() {
        let g = SmallGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        let cf = canonical_form(&g).unwrap();
        assert_eq!(relabel_all(&g, &cf.labeling), cf.graph);
    }

    #[test]
    fn small_automorphism_counts() {
        assert_eq!(automorphism_count(&SmallGraph::complete(3).unwrap()).unwrap(), 6);
        assert_eq!(automorphism_count(&SmallGraph::path(3).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&SmallGraph::cycle(5).unwrap()).unwrap(), 10);
        assert_eq!(automorphism_count(&SmallGraph::empty(0).unwrap()).unwrap(), 1);
        assert_eq!(
            automorphism_count(&SmallGraph::complete_bipartite(2, 3).unwrap()).unwrap(),
            12
        );
    }

    #[test]
    fn large_symmetric_graphs() {
        let e16 = SmallGraph::empty(16).unwrap();
        assert_eq!(automorphism_count(&e16).unwrap(), 20_922_789_888_000);
        assert_eq!(canonical_form(&e16).unwrap().graph, e16);
        let k16 = SmallGraph::complete(16).unwrap();
        assert_eq!(automorphism_count(&k16).unwrap(), 20_922_789_888_000);
        // 8 disjoint edges: 2^8 * 8!
        let m8 = SmallGraph::from_edges(16, &(0..8).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(automorphism_count(&m8).unwrap(), 256 * 40320);
        let c16 = SmallGraph::cycle(16).unwrap();
        assert_eq!(automorphism_count(&c16).unwrap(), 32);
        let shifted: Vec<u8> = (0..16).map(|i| ((i * 5 + 3) % 16) as u8).collect();
        assert_eq!(canon_key(&c16), canon_key(&c16.permute(&shifted)));
    }

    #[test]
    fn petersen_graph() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        let p = SmallGraph::from_edges(10, &e).unwrap();
        assert_eq!(automorphism_count(&p).unwrap(), 120);
        let perm: Vec<u8> = vec![3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert!(are_isomorphic(&p, &p.permute(&perm)));
    }

    #[test]
    fn loops_are_part_of_the_key() {
        let mut a = SmallGraph::path(3).unwrap();
        let mut b = a;
        a.set_loop(0);
        b.set_loop(1);
        assert_ne!(canon_key(&a), canon_key(&b));
        let mut c = SmallGraph::path(3).unwrap();
        c.set_loop(2);
        assert_eq!(canon_key(&a), canon_key(&c));
        assert_eq!(automorphism_count(&a).unwrap(), 1);
    }
}
