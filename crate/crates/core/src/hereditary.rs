//! Edge explosions, false-twin partitions, critical edges, and the
//! inclusion-exclusion reduction from counting independent sets in
//! bipartite graphs to `#IndSub(Φ)` for a critical hereditary `Φ`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::canon::are_isomorphic;
use crate::count::{count_brute, BasisCache};
use crate::error::{Error, Result};
use crate::graph::{BitIter, HostGraph, SmallGraph, MAX_SMALL};
use crate::par;
use crate::properties::PropertySpec;
use crate::spectrum::binomial;

/// Default clone-count bound for [`bounded_critical_check`].
pub const DEFAULT_BOUND: usize = 4;

/// A base graph, two distinct vertices `u`, `v`, and their copy counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplosionSpec {
    pub base: SmallGraph,
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
}

impl ExplosionSpec {
    pub fn new(base: SmallGraph, (u, v): (usize, usize), x: usize, y: usize) -> Self {
        ExplosionSpec { base, u, v, x, y }
    }

    pub fn result_size(&self) -> usize {
        self.base.n() + self.x + self.y - 2
    }

    fn check(&self) -> Result<()> {
        let n = self.base.n();
        if self.u >= n || self.v >= n || self.u == self.v {
            return Err(Error::InvalidGraph(format!(
                "explosion needs two distinct vertices of a {n}-vertex graph, got {} and {}",
                self.u, self.v
            )));
        }
        if self.result_size() > MAX_SMALL {
            return Err(Error::too_large("exploded graph size", self.result_size(), MAX_SMALL));
        }
        Ok(())
    }
}

/// Vertices of `H` other than `u`, `v`, in increasing order.
fn rest(h: &SmallGraph, u: usize, v: usize) -> Vec<usize> {
    (0..h.n()).filter(|&w| w != u && w != v).collect()
}

/// `H(u, v, x, y)`: `x` copies of `u` and `y` copies of `v`, edges included.
/// The result lists the other vertices first (in order), then the copies of
/// `u`, then the copies of `v`.
pub fn explode_pair(spec: &ExplosionSpec) -> Result<SmallGraph> {
    spec.check()?;
    let h = &spec.base;
    let r = rest(h, spec.u, spec.v);
    let mut origin = r.clone();
    origin.extend(std::iter::repeat_n(spec.u, spec.x));
    origin.extend(std::iter::repeat_n(spec.v, spec.y));
    let mut g = SmallGraph::empty(origin.len())?;
    for a in 0..origin.len() {
        for b in a + 1..origin.len() {
            if h.has_edge(origin[a], origin[b]) {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// The edge explosion `H_{u,v}^{x,y}`: `H(u, v, x, y)` after deleting the
/// edge `{u, v}`.
pub fn explode(spec: &ExplosionSpec) -> Result<SmallGraph> {
    if spec.u >= spec.base.n() || spec.v >= spec.base.n() || !spec.base.has_edge(spec.u, spec.v) {
        return Err(Error::NotAnEdge(spec.u, spec.v));
    }
    let mut base = spec.base;
    base.remove_edge(spec.u, spec.v);
    explode_pair(&ExplosionSpec { base, ..*spec })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    /// Blocks of false twins, each sorted, ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
    /// `block_of[w]` indexes the block containing `w`.
    pub block_of: Vec<usize>,
    /// `H↓`: one vertex per block, adjacent iff some cross pair is.
    pub collapsed: SmallGraph,
}

impl TwinPartition {
    pub fn is_singleton(&self, w: usize) -> bool {
        self.blocks[self.block_of[w]].len() == 1
    }
}

/// Groups vertices with identical neighbourhoods.
pub fn twin_partition(h: &SmallGraph) -> TwinPartition {
    let n = h.n();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0; n];
    for w in 0..n {
        match blocks.iter().position(|b| h.neighbors(b[0]) == h.neighbors(w)) {
            Some(i) => {
                blocks[i].push(w);
                block_of[w] = i;
            }
            None => {
                block_of[w] = blocks.len();
                blocks.push(vec![w]);
            }
        }
    }
    let mut collapsed = SmallGraph::empty(blocks.len()).expect("no more blocks than vertices");
    for (a, b) in h.edges() {
        collapsed.add_edge(block_of[a], block_of[b]);
    }
    TwinPartition {
        blocks,
        block_of,
        collapsed,
    }
}

/// An edge whose endpoints are both singleton twin classes, in `h` or in
/// its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriticalEdge {
    /// The graph carrying the edge: `h` itself, or its complement.
    pub graph: SmallGraph,
    pub edge: (usize, usize),
    pub in_complement: bool,
}

fn singleton_edge(g: &SmallGraph) -> Option<(usize, usize)> {
    let tp = twin_partition(g);
    g.edges().find(|&(a, b)| tp.is_singleton(a) && tp.is_singleton(b))
}

/// Searches `h`, then its complement, for an edge between two singleton
/// twin classes. Such an edge is critical for the `h`-free property (or its
/// inverse), and one always exists once `h` has two vertices.
pub fn singleton_critical_edge(h: &SmallGraph) -> Result<Option<CriticalEdge>> {
    if h.n() < 2 {
        return Err(Error::Precondition(format!(
            "critical edges need at least 2 vertices, got {}",
            h.n()
        )));
    }
    if let Some(edge) = singleton_edge(h) {
        return Ok(Some(CriticalEdge {
            graph: *h,
            edge,
            in_complement: false,
        }));
    }
    let c = h.complement()?;
    Ok(singleton_edge(&c).map(|edge| CriticalEdge {
        graph: c,
        edge,
        in_complement: true,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Confidence {
    /// Both endpoints are singleton twin classes and `h` is the only
    /// forbidden graph.
    #[serde(rename = "PROVEN")]
    Proven,
    /// One of the published examples: perfect with `C_5`, chordal with `C_4`,
    /// split with `2K_2`.
    #[serde(rename = "PAPER-CITED")]
    PaperCited,
    /// Only the finite grid was checked.
    #[serde(rename = "BOUNDED")]
    Bounded,
}

impl Confidence {
    pub fn label(self) -> &'static str {
        match self {
            Confidence::Proven => "PROVEN",
            Confidence::PaperCited => "PAPER-CITED",
            Confidence::Bounded => "BOUNDED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CriticalOutcome {
    ConsistentUpTo { bound: usize, confidence: Confidence },
    Refuted { x: usize, y: usize, graph6: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub property: String,
    pub graph6: String,
    pub edge: (usize, usize),
    #[serde(flatten)]
    pub outcome: CriticalOutcome,
}

impl CriticalReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self.outcome, CriticalOutcome::ConsistentUpTo { .. })
    }
}

fn confidence(phi: &PropertySpec, h: &SmallGraph, (u, v): (usize, usize)) -> Confidence {
    if let Some(family) = phi.exact_forbidden() {
        if family.len() == 1 && are_isomorphic(&family[0], h) {
            let tp = twin_partition(h);
            if tp.is_singleton(u) && tp.is_singleton(v) {
                return Confidence::Proven;
            }
        }
    }
    let cited = match phi.name() {
        "perfect" => Some(SmallGraph::cycle(5)),
        "chordal" => Some(SmallGraph::cycle(4)),
        "split" => Some(SmallGraph::from_edges(4, &[(0, 1), (2, 3)])),
        _ => None,
    };
    // every edge of each cited graph is equivalent under automorphisms
    match cited {
        Some(Ok(c)) if are_isomorphic(&c, h) => Confidence::PaperCited,
        _ => Confidence::Bounded,
    }
}

/// Evaluates `Φ` on `H_{u,v}^{x,y}` for every `0 ≤ x, y ≤ bound`.
pub fn bounded_critical_check(phi: &PropertySpec, h: &SmallGraph, edge: (usize, usize), bound: usize) -> Result<CriticalReport> {
    let (u, v) = edge;
    let grid: Vec<(usize, usize)> = (0..=bound).flat_map(|x| (0..=bound).map(move |y| (x, y))).collect();
    let results = par::map(&grid, |&(x, y)| -> Result<Option<SmallGraph>> {
        let g = explode(&ExplosionSpec::new(*h, edge, x, y))?;
        Ok((!phi.evaluate(&g)?).then_some(g))
    });
    let mut refuted = None;
    for (&(x, y), r) in grid.iter().zip(results) {
        if let Some(g) = r? {
            refuted.get_or_insert((x, y, g));
        }
    }
    let outcome = match refuted {
        Some((x, y, g)) => CriticalOutcome::Refuted {
            x,
            y,
            graph6: g.to_graph6(),
        },
        None => CriticalOutcome::ConsistentUpTo {
            bound,
            confidence: confidence(phi, h, (u, v)),
        },
    };
    Ok(CriticalReport {
        property: phi.name().to_string(),
        graph6: h.to_graph6(),
        edge,
        outcome,
    })
}

/// `Ĝ` with vertices laid out as `R`, then `U`, then `V`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub graph: HostGraph,
    pub r: usize,
    /// Original host vertex behind each `U` position.
    pub u_side: Vec<usize>,
    /// Original host vertex behind each `V` position.
    pub v_side: Vec<usize>,
}

/// The two colour classes of a bipartite host, as vertex lists.
pub fn sides(g: &HostGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let colour = g
        .bipartition()
        .ok_or_else(|| Error::InvalidGraph("host graph is not bipartite".into()))?;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (w, c) in colour.into_iter().enumerate() {
        if c {
            b.push(w)
        } else {
            a.push(w)
        }
    }
    Ok((a, b))
}

/// Replaces `u` by the vertices of `U` and `v` by those of `V` in
/// `H − {u, v}`, then adds the host edges between `U` and `V`.
pub fn build_reduction_instance(g: &HostGraph, (us, vs): (&[usize], &[usize]), h: &SmallGraph, edge: (usize, usize)) -> Result<ReductionInstance> {
    let (u, v) = edge;
    if us.is_empty() || vs.is_empty() {
        return Err(Error::Precondition("both sides of the bipartite host must be non-empty".into()));
    }
    if u >= h.n() || v >= h.n() || !h.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let rv = rest(h, u, v);
    let r = rv.len();
    let n = r + us.len() + vs.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &w) in us.iter().chain(vs).enumerate() {
        pos[w] = r + i;
    }
    let mut edges = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            if h.has_edge(rv[a], rv[b]) {
                edges.push((a, b));
            }
        }
        for i in 0..us.len() {
            if h.has_edge(rv[a], u) {
                edges.push((a, r + i));
            }
        }
        for j in 0..vs.len() {
            if h.has_edge(rv[a], v) {
                edges.push((a, r + us.len() + j));
            }
        }
    }
    for (a, b) in g.edges() {
        if pos[a] == usize::MAX || pos[b] == usize::MAX {
            return Err(Error::InvalidGraph(format!("host vertex of edge {{{a}, {b}}} is on neither side")));
        }
        edges.push((pos[a], pos[b]));
    }
    Ok(ReductionInstance {
        graph: HostGraph::from_edges(n, &edges)?,
        r,
        u_side: us.to_vec(),
        v_side: vs.to_vec(),
    })
}

/// Serves the `#IndSub(Φ, k, ·)` queries of the reduction.
pub enum Oracle<'a> {
    Brute { budget: u64 },
    Basis(&'a BasisCache),
}

impl Oracle<'_> {
    fn count(&self, phi: &PropertySpec, k: usize, g: &HostGraph) -> Result<BigUint> {
        match self {
            Oracle::Brute { budget } => count_brute(phi, k, g, *budget),
            Oracle::Basis(cache) => cache.count(phi, k, g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTerm {
    /// Indices into `R` of the deleted vertices.
    pub deleted: Vec<usize>,
    #[serde(with = "crate::json::big")]
    pub count: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub k: usize,
    pub r: usize,
    pub instance_vertices: usize,
    /// Whether the queries went to `Φ` on complemented hosts.
    pub complemented: bool,
    pub terms: Vec<ReductionTerm>,
    #[serde(with = "crate::json::big")]
    pub independent_sets: BigInt,
}

/// `#IS_k(G) = Σ_{J ⊆ R} (−1)^{|J|} · #IndSub(Φ, k + r, Ĝ ∖ J)`, where the
/// critical edge lies in `h ∈ Γ(Φ)`; for an edge of the complement, `Φ̅` is
/// queried through `Φ` on complemented hosts.
pub fn count_independent_sets_via_reduction(g: &HostGraph, k: usize, phi: &PropertySpec, critical: &CriticalEdge, oracle: &Oracle) -> Result<ReductionResult> {
    let (us, vs) = sides(g)?;
    if us.is_empty() || vs.is_empty() {
        return Ok(ReductionResult {
            k,
            r: 0,
            instance_vertices: g.n(),
            complemented: critical.in_complement,
            terms: Vec::new(),
            independent_sets: binomial(g.n(), k),
        });
    }
    let inst = build_reduction_instance(g, (&us, &vs), &critical.graph, critical.edge)?;
    let r = inst.r;
    let subsets: Vec<u64> = (0..1u64 << r).collect();
    let counts = par::map(&subsets, |&j| -> Result<BigUint> {
        let deleted: Vec<usize> = BitIter(j as u16).collect();
        let host = inst.graph.remove_vertices(&deleted);
        if critical.in_complement {
            oracle.count(phi, k + r, &host.complement())
        } else {
            oracle.count(phi, k + r, &host)
        }
    });
    let mut total = BigInt::zero();
    let mut terms = Vec::with_capacity(subsets.len());
    for (&j, c) in subsets.iter().zip(counts) {
        let c = BigInt::from(c?);
        if j.count_ones() % 2 == 0 {
            total += &c;
        } else {
            total -= &c;
        }
        terms.push(ReductionTerm {
            deleted: BitIter(j as u16).collect(),
            count: c,
        });
    }
    Ok(ReductionResult {
        k,
        r,
        instance_vertices: inst.graph.n(),
        complemented: critical.in_complement,
        terms,
        independent_sets: total,
    })
}
