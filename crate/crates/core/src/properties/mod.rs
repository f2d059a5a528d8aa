//! Graph properties as isomorphism-invariant predicates with declared
//! structural flags, plus the built-in property zoo.

pub mod predicates;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::canon::{canon_key, CanonKey};
use crate::catalog::{self, GraphCatalog};
use crate::error::{Error, Result};
use crate::graph::SmallGraph;

/// Largest `k_max` accepted by [`PropertySpec::verify_flags`].
pub const MAX_VERIFY_K: usize = 6;

/// Structural flags a property can declare.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyFlags {
    /// Closed under taking subgraphs.
    pub monotone: bool,
    /// Closed under taking induced subgraphs.
    pub hereditary: bool,
    /// The value depends only on vertex and edge counts.
    pub edge_count_only: bool,
    /// Every satisfying graph has at most `s·|V|` edges.
    pub sparse: Option<u32>,
}

type CustomFn = Arc<dyn Fn(&SmallGraph) -> bool + Send + Sync>;

#[derive(Clone)]
enum Predicate {
    True,
    False,
    NoEdges,
    Connected,
    Bipartite,
    TriangleFree,
    Planar,
    EdgeCountEven,
    EdgeCountIn(BTreeSet<usize>),
    Chordal,
    Split,
    Perfect,
    InducedFree(Vec<(SmallGraph, CanonKey)>),
    SubgraphFree(Vec<SmallGraph>),
    TruthTable { k: usize, table: Arc<HashMap<CanonKey, bool>> },
    Not(Box<Predicate>),
    Inverse(Box<Predicate>),
    Custom(CustomFn),
}

impl Predicate {
    fn eval(&self, g: &SmallGraph) -> std::result::Result<bool, String> {
        use predicates::*;
        Ok(match self {
            Predicate::True => true,
            Predicate::False => false,
            Predicate::NoEdges => g.edge_count() == 0,
            Predicate::Connected => g.is_connected(),
            Predicate::Bipartite => is_bipartite(g),
            Predicate::TriangleFree => is_triangle_free(g),
            Predicate::Planar => is_planar(g),
            Predicate::EdgeCountEven => g.edge_count().is_multiple_of(2),
            Predicate::EdgeCountIn(s) => s.contains(&g.edge_count()),
            Predicate::Chordal => is_chordal(g),
            Predicate::Split => is_split(g),
            Predicate::Perfect => is_perfect(g),
            Predicate::InducedFree(list) => !list.iter().any(|(f, key)| contains_induced(g, f, key)),
            Predicate::SubgraphFree(list) => !list.iter().any(|f| contains_subgraph(g, f)),
            Predicate::TruthTable { k, table } => {
                if g.n() != *k {
                    return Err(format!("truth table covers {k}-vertex graphs only, got {} vertices", g.n()));
                }
                *table.get(&canon_key(g)).ok_or("graph missing from truth table")?
            }
            Predicate::Not(p) => !p.eval(g)?,
            Predicate::Inverse(p) => p.eval(&g.complement().map_err(|e| e.to_string())?)?,
            Predicate::Custom(f) => f(g),
        })
    }
}

/// A named graph property `Φ`.
#[derive(Clone)]
pub struct PropertySpec {
    name: String,
    predicate: Predicate,
    flags: PropertyFlags,
    forbidden: Vec<SmallGraph>,
    obstruction: Option<SmallGraph>,
}

impl fmt::Debug for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropertySpec")
            .field("name", &self.name)
            .field("flags", &self.flags)
            .finish_non_exhaustive()
    }
}

fn complete(n: usize) -> SmallGraph {
    SmallGraph::complete(n).expect("small clique")
}

fn cycle(n: usize) -> SmallGraph {
    SmallGraph::cycle(n).expect("small cycle")
}

impl PropertySpec {
    fn new(name: &str, predicate: Predicate, flags: PropertyFlags) -> Self {
        PropertySpec {
            name: name.to_string(),
            predicate,
            flags,
            forbidden: Vec::new(),
            obstruction: None,
        }
    }

    fn monotone_flags() -> PropertyFlags {
        PropertyFlags {
            monotone: true,
            hereditary: true,
            ..Default::default()
        }
    }

    fn hereditary_flags() -> PropertyFlags {
        PropertyFlags {
            hereditary: true,
            ..Default::default()
        }
    }

    fn counting_flags() -> PropertyFlags {
        PropertyFlags {
            edge_count_only: true,
            ..Default::default()
        }
    }

    pub fn always_true() -> Self {
        let flags = PropertyFlags {
            edge_count_only: true,
            ..Self::monotone_flags()
        };
        Self::new("true", Predicate::True, flags)
    }

    pub fn always_false() -> Self {
        let flags = PropertyFlags {
            edge_count_only: true,
            sparse: Some(0),
            ..Self::monotone_flags()
        };
        Self::new("false", Predicate::False, flags)
    }

    /// Independent sets.
    pub fn no_edges() -> Self {
        let flags = PropertyFlags {
            edge_count_only: true,
            sparse: Some(0),
            ..Self::monotone_flags()
        };
        let mut p = Self::new("no-edges", Predicate::NoEdges, flags);
        p.forbidden = vec![complete(2)];
        p.obstruction = Some(complete(2));
        p
    }

    pub fn connected() -> Self {
        Self::new("connected", Predicate::Connected, PropertyFlags::default())
    }

    pub fn bipartite() -> Self {
        let mut p = Self::new("bipartite", Predicate::Bipartite, Self::monotone_flags());
        p.forbidden = vec![complete(3), cycle(5), cycle(7)];
        p.obstruction = Some(complete(3));
        p
    }

    pub fn triangle_free() -> Self {
        let mut p = Self::new("triangle-free", Predicate::TriangleFree, Self::monotone_flags());
        p.forbidden = vec![complete(3)];
        p.obstruction = Some(complete(3));
        p
    }

    pub fn planar() -> Self {
        let flags = PropertyFlags {
            sparse: Some(3),
            ..Self::monotone_flags()
        };
        let mut p = Self::new("planar", Predicate::Planar, flags);
        p.obstruction = Some(complete(5));
        p
    }

    pub fn edge_count_even() -> Self {
        Self::new("edge-count-even", Predicate::EdgeCountEven, Self::counting_flags())
    }

    pub fn edge_count_in(set: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = set.into_iter().collect();
        let name = format!(
            "edge-count-in:{}",
            set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        );
        let flags = PropertyFlags {
            sparse: set.is_empty().then_some(0),
            ..Self::counting_flags()
        };
        Self::new(&name, Predicate::EdgeCountIn(set), flags)
    }

    pub fn chordal() -> Self {
        let mut p = Self::new("chordal", Predicate::Chordal, Self::hereditary_flags());
        p.forbidden = (4..=7).map(cycle).collect();
        p
    }

    pub fn split() -> Self {
        let mut p = Self::new("split", Predicate::Split, Self::hereditary_flags());
        let two_k2 = SmallGraph::from_edges(4, &[(0, 1), (2, 3)]).expect("2K2");
        p.forbidden = vec![two_k2, cycle(4), cycle(5)];
        p
    }

    pub fn perfect() -> Self {
        let mut p = Self::new("perfect", Predicate::Perfect, Self::hereditary_flags());
        let c7 = cycle(7);
        p.forbidden = vec![cycle(5), c7, c7.complement().expect("simple")];
        p
    }

    /// Graphs containing none of `list` as an induced subgraph.
    pub fn induced_free(list: Vec<SmallGraph>) -> Result<Self> {
        check_simple(&list)?;
        let name = format!("h-free:{}", graph6_list(&list));
        let all_cliques = !list.is_empty()
            && list.iter().all(|f| f.edge_count() == crate::graph::pairs(f.n()));
        let flags = PropertyFlags {
            monotone: all_cliques,
            ..Self::hereditary_flags()
        };
        let keyed = list.iter().map(|f| (*f, canon_key(f))).collect();
        let mut p = Self::new(&name, Predicate::InducedFree(keyed), flags);
        if all_cliques {
            p.obstruction = list.iter().min_by_key(|f| f.n()).copied();
        }
        p.forbidden = list;
        Ok(p)
    }

    /// Graphs containing none of `list` as a subgraph.
    pub fn subgraph_free(list: Vec<SmallGraph>) -> Result<Self> {
        check_simple(&list)?;
        let name = format!("subgraph-free:{}", graph6_list(&list));
        let mut p = Self::new(&name, Predicate::SubgraphFree(list.clone()), Self::monotone_flags());
        p.obstruction = list.iter().min_by_key(|f| f.n()).copied();
        Ok(p)
    }

    /// Property given by an explicit value on each class of a `k`-vertex
    /// catalog. Evaluating it on other vertex counts is an error.
    pub fn truth_table(name: &str, catalog: &GraphCatalog, values: &[bool]) -> Result<Self> {
        if values.len() != catalog.len() {
            return Err(Error::Parse(format!(
                "truth table has {} entries, the k={} catalog has {} classes",
                values.len(),
                catalog.k(),
                catalog.len()
            )));
        }
        let table = catalog
            .entries()
            .iter()
            .zip(values)
            .map(|(e, &v)| (e.key, v))
            .collect();
        let predicate = Predicate::TruthTable {
            k: catalog.k(),
            table: Arc::new(table),
        };
        Ok(Self::new(name, predicate, PropertyFlags::default()))
    }

    /// Parses the truth-table file format: a header line `k K` followed by a
    /// string of `0`/`1` characters, one per class in catalog order
    /// (whitespace ignored, `#` lines skipped).
    pub fn from_truth_table_text(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("truth table: missing `k K` header".into()))?;
        let k: usize = header
            .strip_prefix('k')
            .map(|r| r.trim_start_matches([' ', '=', '\t']))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("truth table: bad header `{header}`")))?;
        let mut values = Vec::new();
        for c in lines.flat_map(str::chars).filter(|c| !c.is_whitespace()) {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                _ => return Err(Error::Parse(format!("truth table: unexpected character `{c}`"))),
            }
        }
        let cat = catalog::shared(k)?;
        Self::truth_table(name, &cat, &values)
    }

    /// Renders `self` on the `k`-vertex catalog in the truth-table file format.
    pub fn to_truth_table_text(&self, k: usize) -> Result<String> {
        let cat = catalog::shared(k)?;
        let mut bits = String::with_capacity(cat.len());
        for e in cat.entries() {
            bits.push(if self.evaluate(&e.graph)? { '1' } else { '0' });
        }
        Ok(format!("k {k}\n{bits}\n"))
    }

    /// Wraps an arbitrary isomorphism-invariant closure.
    pub fn custom<F>(name: &str, flags: PropertyFlags, f: F) -> Self
    where
        F: Fn(&SmallGraph) -> bool + Send + Sync + 'static,
    {
        Self::new(name, Predicate::Custom(Arc::new(f)), flags)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flags(&self) -> PropertyFlags {
        self.flags
    }

    /// Replaces the declared flags, e.g. to test declarations with
    /// [`verify_flags`](Self::verify_flags).
    pub fn with_flags(mut self, flags: PropertyFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Known members of the forbidden-induced-subgraph family (possibly a
    /// finite part of an infinite family).
    pub fn forbidden(&self) -> &[SmallGraph] {
        &self.forbidden
    }

    /// The complete forbidden-induced-subgraph family, when it is finite and
    /// known exactly.
    pub fn exact_forbidden(&self) -> Option<Vec<SmallGraph>> {
        fn family(p: &Predicate) -> Option<Vec<SmallGraph>> {
            match p {
                Predicate::NoEdges => Some(vec![complete(2)]),
                Predicate::TriangleFree => Some(vec![complete(3)]),
                Predicate::InducedFree(list) => Some(list.iter().map(|(f, _)| *f).collect()),
                Predicate::Inverse(inner) => family(inner)
                    .map(|l| l.iter().map(|f| f.complement().expect("forbidden graphs are simple")).collect()),
                _ => None,
            }
        }
        family(&self.predicate)
    }

    /// For monotone properties: a graph `F` such that every graph containing
    /// `F` as a subgraph violates the property.
    pub fn obstruction(&self) -> Option<&SmallGraph> {
        self.obstruction.as_ref()
    }

    pub fn evaluate(&self, g: &SmallGraph) -> Result<bool> {
        if g.has_loops() {
            return Err(Error::LoopMarked(format!("{g:?}")));
        }
        self.predicate.eval(g).map_err(|reason| Error::Evaluation {
            property: self.name.clone(),
            graph6: g.to_graph6(),
            reason,
        })
    }

    /// `¬Φ`.
    pub fn negate(&self) -> Self {
        let predicate = match &self.predicate {
            Predicate::Not(inner) => (**inner).clone(),
            p => Predicate::Not(Box::new(p.clone())),
        };
        PropertySpec {
            name: format!("not:{}", self.name),
            predicate,
            flags: PropertyFlags {
                edge_count_only: self.flags.edge_count_only,
                ..Default::default()
            },
            forbidden: Vec::new(),
            obstruction: None,
        }
    }

    /// `Φ̅`, true on `H` iff `Φ` holds on the complement of `H`.
    pub fn invert(&self) -> Self {
        let predicate = match &self.predicate {
            Predicate::Inverse(inner) => (**inner).clone(),
            p => Predicate::Inverse(Box::new(p.clone())),
        };
        let forbidden = self
            .forbidden
            .iter()
            .map(|f| f.complement().expect("forbidden graphs are simple"))
            .collect();
        PropertySpec {
            name: format!("inv:{}", self.name),
            predicate,
            flags: PropertyFlags {
                hereditary: self.flags.hereditary,
                edge_count_only: self.flags.edge_count_only,
                ..Default::default()
            },
            forbidden,
            obstruction: None,
        }
    }

    /// Exhaustively checks every declared flag on all graphs with at most
    /// `k_max` vertices.
    pub fn verify_flags(&self, k_max: usize) -> Result<FlagReport> {
        if k_max > MAX_VERIFY_K {
            return Err(Error::too_large("flag verification k_max", k_max, MAX_VERIFY_K));
        }
        let mut checks = Vec::new();
        if self.flags.monotone {
            checks.push(self.check_closure(k_max, "monotone", true)?);
        }
        if self.flags.hereditary {
            checks.push(self.check_closure(k_max, "hereditary", false)?);
        }
        if self.flags.edge_count_only {
            checks.push(self.check_edge_count_only(k_max)?);
        }
        if let Some(s) = self.flags.sparse {
            checks.push(self.check_sparse(k_max, s)?);
        }
        Ok(FlagReport {
            property: self.name.clone(),
            k_max,
            checks,
        })
    }

    fn check_closure(&self, k_max: usize, flag: &str, edges_too: bool) -> Result<FlagCheck> {
        for k in 1..=k_max {
            let cat = catalog::shared(k)?;
            for e in cat.entries() {
                let g = &e.graph;
                if !self.evaluate(g)? {
                    continue;
                }
                if edges_too {
                    for (u, v) in g.edges() {
                        let mut h = *g;
                        h.remove_edge(u, v);
                        if !self.evaluate(&h)? {
                            return Ok(FlagCheck::violated(flag, g, &h, format!("deleting edge {{{u}, {v}}}")));
                        }
                    }
                }
                if g.n() > 1 {
                    for v in 0..g.n() {
                        let h = g.remove_vertex(v);
                        if !self.evaluate(&h)? {
                            return Ok(FlagCheck::violated(flag, g, &h, format!("deleting vertex {v}")));
                        }
                    }
                }
            }
        }
        Ok(FlagCheck::verified(flag))
    }

    fn check_edge_count_only(&self, k_max: usize) -> Result<FlagCheck> {
        for k in 1..=k_max {
            let cat = catalog::shared(k)?;
            let mut seen: HashMap<usize, (bool, SmallGraph)> = HashMap::new();
            for e in cat.entries() {
                let val = self.evaluate(&e.graph)?;
                match seen.get(&e.edge_count()) {
                    Some(&(prev, ref other)) if prev != val => {
                        return Ok(FlagCheck::violated(
                            "edge-count-only",
                            &e.graph,
                            other,
                            format!("same ({k}, {}) counts, different values", e.edge_count()),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(e.edge_count(), (val, e.graph));
                    }
                }
            }
        }
        Ok(FlagCheck::verified("edge-count-only"))
    }

    fn check_sparse(&self, k_max: usize, s: u32) -> Result<FlagCheck> {
        let flag = format!("sparse({s})");
        for k in 1..=k_max {
            let cat = catalog::shared(k)?;
            for e in cat.entries() {
                if e.edge_count() > s as usize * k && self.evaluate(&e.graph)? {
                    let mut c = FlagCheck::verified(&flag);
                    c.holds = false;
                    c.witness = Some(e.graph.to_graph6());
                    c.detail = format!("{} edges on {k} vertices", e.edge_count());
                    return Ok(c);
                }
            }
        }
        Ok(FlagCheck::verified(&flag))
    }
}

fn check_simple(list: &[SmallGraph]) -> Result<()> {
    if let Some(f) = list.iter().find(|f| f.has_loops()) {
        return Err(Error::LoopMarked(format!("{f:?}")));
    }
    Ok(())
}

fn graph6_list(list: &[SmallGraph]) -> String {
    list.iter().map(SmallGraph::to_graph6).collect::<Vec<_>>().join(",")
}

/// Result of [`PropertySpec::verify_flags`].
#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub property: String,
    pub k_max: usize,
    pub checks: Vec<FlagCheck>,
}

impl FlagReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Outcome for the named flag, if it was declared.
    pub fn get(&self, flag: &str) -> Option<&FlagCheck> {
        self.checks.iter().find(|c| c.flag == flag || c.flag.starts_with(&format!("{flag}(")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagCheck {
    pub flag: String,
    pub holds: bool,
    /// graph6 of a satisfying graph that breaks the flag.
    pub witness: Option<String>,
    /// graph6 of the derived graph that violates the property.
    pub violating: Option<String>,
    pub detail: String,
}

impl FlagCheck {
    fn verified(flag: &str) -> Self {
        FlagCheck {
            flag: flag.to_string(),
            holds: true,
            witness: None,
            violating: None,
            detail: String::new(),
        }
    }

    fn violated(flag: &str, g: &SmallGraph, h: &SmallGraph, detail: String) -> Self {
        FlagCheck {
            flag: flag.to_string(),
            holds: false,
            witness: Some(g.to_graph6()),
            violating: Some(h.to_graph6()),
            detail,
        }
    }
}

/// The built-in properties every suite iterates over.
pub fn builtin_zoo() -> Vec<PropertySpec> {
    vec![
        PropertySpec::always_true(),
        PropertySpec::always_false(),
        PropertySpec::no_edges(),
        PropertySpec::connected(),
        PropertySpec::bipartite(),
        PropertySpec::triangle_free(),
        PropertySpec::edge_count_even(),
        PropertySpec::chordal(),
        PropertySpec::split(),
        PropertySpec::perfect(),
    ]
}

/// Names accepted by [`parse_property`] without parameters.
pub const BUILTIN_NAMES: &[&str] = &[
    "true",
    "false",
    "no-edges",
    "connected",
    "bipartite",
    "triangle-free",
    "planar",
    "edge-count-even",
    "chordal",
    "split",
    "perfect",
];

fn parse_graph_list(s: &str) -> Result<Vec<SmallGraph>> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(SmallGraph::from_graph6)
        .collect()
}

/// Looks up a property by name. Besides [`BUILTIN_NAMES`] this accepts
/// `h-free:<g6>[,<g6>..]` (alias `induced-free:`), `subgraph-free:<g6>[,..]`,
/// `edge-count-in:<n>[,<n>..]`, and the prefixes `not:` and `inv:`.
pub fn parse_property(spec: &str) -> Result<PropertySpec> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("not:") {
        return Ok(parse_property(rest)?.negate());
    }
    if let Some(rest) = spec.strip_prefix("inv:") {
        return Ok(parse_property(rest)?.invert());
    }
    if let Some(rest) = spec.strip_prefix("h-free:").or_else(|| spec.strip_prefix("induced-free:")) {
        return PropertySpec::induced_free(parse_graph_list(rest)?);
    }
    if let Some(rest) = spec.strip_prefix("subgraph-free:") {
        return PropertySpec::subgraph_free(parse_graph_list(rest)?);
    }
    if let Some(rest) = spec.strip_prefix("edge-count-in:") {
        let set = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::UnknownProperty(format!("{spec} (bad edge count `{p}`)")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(PropertySpec::edge_count_in(set));
    }
    Ok(match spec {
        "true" => PropertySpec::always_true(),
        "false" => PropertySpec::always_false(),
        "no-edges" | "independent-set" => PropertySpec::no_edges(),
        "connected" => PropertySpec::connected(),
        "bipartite" => PropertySpec::bipartite(),
        "triangle-free" => PropertySpec::triangle_free(),
        "planar" => PropertySpec::planar(),
        "edge-count-even" => PropertySpec::edge_count_even(),
        "chordal" => PropertySpec::chordal(),
        "split" => PropertySpec::split(),
        "perfect" => PropertySpec::perfect(),
        other => return Err(Error::UnknownProperty(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_evaluations() {
        let c = PropertySpec::connected();
        assert!(c.evaluate(&SmallGraph::path(3).unwrap()).unwrap());
        assert!(!c.evaluate(&SmallGraph::empty(3).unwrap()).unwrap());
        assert!(PropertySpec::triangle_free().evaluate(&SmallGraph::cycle(5).unwrap()).unwrap());
        let mut looped = SmallGraph::path(2).unwrap();
        looped.set_loop(0);
        assert!(matches!(c.evaluate(&looped), Err(Error::LoopMarked(_))));
    }

    #[test]
    fn zoo_flags_verify() {
        let mut all = builtin_zoo();
        all.push(PropertySpec::planar());
        for p in all {
            let r = p.verify_flags(5).unwrap();
            assert!(r.all_hold(), "{}: {:?}", p.name(), r);
        }
    }

    #[test]
    fn wrong_monotone_declaration_is_caught() {
        let flags = PropertyFlags {
            monotone: true,
            ..Default::default()
        };
        let p = PropertySpec::connected().with_flags(flags);
        let r = p.verify_flags(5).unwrap();
        let c = r.get("monotone").unwrap();
        assert!(!c.holds);
        // the first connected graph with an edge is K_2; deleting it disconnects
        assert_eq!(c.witness.as_deref(), Some("A_"));
        assert_eq!(c.violating.as_deref(), Some("A?"));
    }

    #[test]
    fn negation_and_inversion() {
        let p = PropertySpec::connected();
        let n = p.negate();
        let i = p.invert();
        assert!(!i.flags().monotone);
        assert!(PropertySpec::chordal().invert().flags().hereditary);
        for bits in 0u128..1 << 10 {
            let g = SmallGraph::from_edge_bits(5, bits).unwrap();
            assert_eq!(n.evaluate(&g).unwrap(), !p.evaluate(&g).unwrap());
            assert_eq!(i.evaluate(&g).unwrap(), p.evaluate(&g.complement().unwrap()).unwrap());
            assert_eq!(i.invert().evaluate(&g).unwrap(), p.evaluate(&g).unwrap());
        }
    }

    #[test]
    fn registry() {
        for name in BUILTIN_NAMES {
            assert_eq!(parse_property(name).unwrap().name(), *name);
        }
        assert!(matches!(parse_property("wobbly"), Err(Error::UnknownProperty(_))));
        let p = parse_property("h-free:Bw").unwrap();
        assert!(p.flags().monotone);
        assert!(!p.evaluate(&SmallGraph::complete(4).unwrap()).unwrap());
        let p = parse_property("not:edge-count-in:1,3").unwrap();
        assert!(p.evaluate(&SmallGraph::empty(3).unwrap()).unwrap());
        assert!(!p.evaluate(&SmallGraph::path(2).unwrap()).unwrap());
        assert!(parse_property("edge-count-in:x").is_err());
    }

    #[test]
    fn truth_table_round_trip() {
        let p = PropertySpec::chordal();
        let text = p.to_truth_table_text(4).unwrap();
        let t = PropertySpec::from_truth_table_text("chordal-table", &text).unwrap();
        for bits in 0u128..1 << 6 {
            let g = SmallGraph::from_edge_bits(4, bits).unwrap();
            assert_eq!(t.evaluate(&g).unwrap(), p.evaluate(&g).unwrap());
        }
        assert!(matches!(
            t.evaluate(&SmallGraph::empty(3).unwrap()),
            Err(Error::Evaluation { .. })
        ));
        assert!(PropertySpec::from_truth_table_text("x", "k 3\n01\n").is_err());
    }
}
