//! Homomorphism counts `#Hom(H, G)` for small patterns by dynamic
//! programming over a nice tree decomposition.

pub mod treewidth;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use treewidth::{exact_treewidth, TreeDecomposition, MAX_TREEWIDTH_N};

use crate::error::{Error, Result};
use crate::graph::{BitIter, HostGraph, SmallGraph};

/// `d(h)/2 = |E|/|V|`, a lower bound on the treewidth.
pub fn avg_degree_tw_bound(h: &SmallGraph) -> BigRational {
    if h.n() == 0 {
        return BigRational::zero();
    }
    BigRational::new(h.edge_count().into(), h.n().into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

/// A rooted decomposition in which every node is a leaf with an empty bag,
/// introduces or forgets a single vertex, or joins two children with equal
/// bags. Nodes are stored children-first; the last node is the root and has
/// an empty bag.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub bags: Vec<Vec<usize>>,
}

impl NiceDecomposition {
    pub fn from_decomposition(td: &TreeDecomposition) -> Self {
        let nb = td.bags.len();
        let mut adj = vec![Vec::new(); nb];
        for &(a, b) in &td.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut nice = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
        };
        let top = nice.build(td, &adj, 0, usize::MAX);
        let mut cur = top;
        for &v in td.bags[0].iter().rev() {
            cur = nice.forget(cur, v);
        }
        debug_assert!(nice.bags[cur].is_empty());
        nice
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    fn introduce(&mut self, child: usize, vertex: usize) -> usize {
        let mut bag = self.bags[child].clone();
        let at = bag.binary_search(&vertex).unwrap_err();
        bag.insert(at, vertex);
        self.push(NiceNode::Introduce { vertex, child }, bag)
    }

    fn forget(&mut self, child: usize, vertex: usize) -> usize {
        let mut bag = self.bags[child].clone();
        bag.retain(|&v| v != vertex);
        self.push(NiceNode::Forget { vertex, child }, bag)
    }

    /// Builds the subtree at bag `t` and returns a node whose bag equals
    /// `td.bags[t]`.
    fn build(&mut self, td: &TreeDecomposition, adj: &[Vec<usize>], t: usize, parent: usize) -> usize {
        let target = &td.bags[t];
        let mut branches = Vec::new();
        for &c in &adj[t] {
            if c == parent {
                continue;
            }
            let mut cur = self.build(td, adj, c, t);
            for &v in &td.bags[c] {
                if target.binary_search(&v).is_err() {
                    cur = self.forget(cur, v);
                }
            }
            for &v in target {
                if td.bags[c].binary_search(&v).is_err() {
                    cur = self.introduce(cur, v);
                }
            }
            branches.push(cur);
        }
        if branches.is_empty() {
            let mut cur = self.push(NiceNode::Leaf, Vec::new());
            for &v in target {
                cur = self.introduce(cur, v);
            }
            return cur;
        }
        let mut acc = branches[0];
        for &b in &branches[1..] {
            let bag = self.bags[acc].clone();
            acc = self.push(NiceNode::Join { left: acc, right: b }, bag);
        }
        acc
    }
}

/// Arithmetic the DP runs over: machine integers that report overflow, or
/// big integers that never do.
trait Count: Clone + Send {
    fn one() -> Self;
    fn from_usize(n: usize) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Count for u128 {
    fn one() -> Self {
        1
    }
    fn from_usize(n: usize) -> Self {
        n as u128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Count for BigUint {
    fn one() -> Self {
        One::one()
    }
    fn from_usize(n: usize) -> Self {
        BigUint::from(n)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

type Table<T> = HashMap<Vec<u32>, T>;

fn run_dp<T: Count>(h: &SmallGraph, nice: &NiceDecomposition, g: &HostGraph) -> Option<T> {
    let n = g.n() as u32;
    let mut tables: Vec<Option<Table<T>>> = vec![None; nice.nodes.len()];
    for (i, node) in nice.nodes.iter().enumerate() {
        let table = match *node {
            NiceNode::Leaf => {
                let mut t = Table::new();
                t.insert(Vec::new(), T::one());
                t
            }
            NiceNode::Introduce { vertex, child } => {
                let child_bag = &nice.bags[child];
                let at = nice.bags[i].binary_search(&vertex).unwrap();
                let nbrs: Vec<usize> = child_bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| h.has_edge(u, vertex))
                    .map(|(j, _)| j)
                    .collect();
                let src = tables[child].take().unwrap();
                let mut t = Table::with_capacity(src.len());
                for (key, val) in src {
                    let mut extend = |x: u32| {
                        let mut k = key.clone();
                        k.insert(at, x);
                        t.insert(k, val.clone());
                    };
                    match nbrs.first() {
                        None => (0..n).for_each(&mut extend),
                        Some(&j0) => {
                            for &x in g.neighbors(key[j0] as usize) {
                                if nbrs[1..].iter().all(|&j| g.adjacent(key[j] as usize, x as usize)) {
                                    extend(x);
                                }
                            }
                        }
                    }
                }
                t
            }
            NiceNode::Forget { vertex, child } => {
                let at = nice.bags[child].binary_search(&vertex).unwrap();
                let src = tables[child].take().unwrap();
                let mut t: Table<T> = Table::with_capacity(src.len());
                for (mut key, val) in src {
                    key.remove(at);
                    match t.get_mut(&key) {
                        Some(acc) => *acc = acc.add(&val)?,
                        None => {
                            t.insert(key, val);
                        }
                    }
                }
                t
            }
            NiceNode::Join { left, right } => {
                let a = tables[left].take().unwrap();
                let b = tables[right].take().unwrap();
                let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                let mut t = Table::with_capacity(small.len());
                for (key, val) in small {
                    if let Some(other) = large.get(&key) {
                        t.insert(key, val.mul(other)?);
                    }
                }
                t
            }
        };
        tables[i] = Some(table);
    }
    let root = tables.pop().flatten().unwrap();
    Some(root.get(&Vec::new()).cloned().unwrap_or_else(|| T::from_usize(0)))
}

fn count_component<T: Count>(h: &SmallGraph, g: &HostGraph) -> Result<Option<T>> {
    let (_, td) = exact_treewidth(h)?;
    let nice = NiceDecomposition::from_decomposition(&td);
    Ok(run_dp(h, &nice, g))
}

fn count_with<T: Count>(h: &SmallGraph, g: &HostGraph) -> Result<Option<T>> {
    let mut acc = T::one();
    let mut isolated = 0;
    for comp in h.components() {
        if comp.count_ones() == 1 {
            isolated += 1;
            continue;
        }
        let part = h.induced(comp);
        let Some(c) = count_component::<T>(&part, g)? else {
            return Ok(None);
        };
        match acc.mul(&c) {
            Some(a) => acc = a,
            None => return Ok(None),
        }
    }
    let n = T::from_usize(g.n());
    for _ in 0..isolated {
        match acc.mul(&n) {
            Some(a) => acc = a,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Number of edge-preserving maps `V(h) → V(g)`. Loop-marked patterns have
/// no homomorphism into a simple host and count 0.
pub fn count_hom(h: &SmallGraph, g: &HostGraph) -> Result<BigUint> {
    if h.has_loops() {
        return Ok(BigUint::zero());
    }
    if h.n() > MAX_TREEWIDTH_N {
        return Err(Error::too_large("hom-count pattern size", h.n(), MAX_TREEWIDTH_N));
    }
    if let Some(c) = count_with::<u128>(h, g)? {
        return Ok(BigUint::from(c));
    }
    Ok(count_with::<BigUint>(h, g)?.expect("big integers do not overflow"))
}

/// Hom count by enumerating all `|V(g)|^|V(h)|` maps; a test oracle.
pub fn count_hom_brute(h: &SmallGraph, g: &HostGraph) -> u128 {
    if h.has_loops() {
        return 0;
    }
    fn rec(h: &SmallGraph, g: &HostGraph, v: usize, image: &mut Vec<usize>) -> u128 {
        if v == h.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if BitIter(h.neighbors(v) & ((1 << v) - 1)).all(|u| g.adjacent(image[u], x)) {
                image.push(x);
                total += rec(h, g, v + 1, image);
                image.pop();
            }
        }
        total
    }
    rec(h, g, 0, &mut Vec::with_capacity(h.n()))
}
