//! Isomorphism classes of `k`-vertex graphs with automorphism counts, plus
//! edge-extension counting.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{automorphism_count, canon_key, CanonKey};
use crate::error::{Error, Result};
use crate::graph::{pair_list, pairs, SmallGraph};
use crate::par;

pub const MAX_CATALOG_K: usize = 8;

/// Largest `k` built by filtering all `2^C(k,2)` labelled graphs.
pub const MAX_EXHAUSTIVE_K: usize = 6;

/// Environment variable naming the catalog cache directory.
pub const CACHE_ENV: &str = "INDSUB_CACHE_DIR";

const CACHE_VERSION: &str = "indsub-catalog v1";

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: CanonKey,
    pub graph: SmallGraph,
    pub automorphisms: u64,
}

impl CatalogEntry {
    fn new(key: CanonKey) -> Self {
        let graph = key.graph();
        let automorphisms = automorphism_count(&graph).expect("catalog graphs are small");
        CatalogEntry {
            key,
            graph,
            automorphisms,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.key.edge_count()
    }

    /// Number of edge subsets `A` of the labelled `K_k` with `K_k[A]` in this
    /// class, `k! / #Aut`.
    pub fn labeled_copies(&self) -> u64 {
        factorial(self.graph.n()) / self.automorphisms
    }
}

/// All graphs on `k` vertices up to isomorphism, sorted by [`CanonKey`]
/// order (edge count first).
#[derive(Clone, Debug)]
pub struct GraphCatalog {
    k: usize,
    entries: Vec<CatalogEntry>,
    by_edges: Vec<Vec<usize>>,
    index: HashMap<CanonKey, usize>,
}

impl GraphCatalog {
    fn from_keys(k: usize, keys: impl IntoIterator<Item = CanonKey>) -> Self {
        let mut keys: Vec<CanonKey> = keys.into_iter().collect();
        keys.sort();
        keys.dedup();
        let entries = par::map(&keys, |&key| CatalogEntry::new(key));
        Self::from_entries(k, entries)
    }

    fn from_entries(k: usize, entries: Vec<CatalogEntry>) -> Self {
        let d = pairs(k);
        let mut by_edges = vec![Vec::new(); d + 1];
        let mut index = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            by_edges[e.edge_count()].push(i);
            index.insert(e.key, i);
        }
        GraphCatalog {
            k,
            entries,
            by_edges,
            index,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices of the classes with `i` edges (the set `𝓗_i`).
    pub fn with_edges(&self, i: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.by_edges
            .get(i)
            .into_iter()
            .flatten()
            .map(move |&j| &self.entries[j])
    }

    pub fn position(&self, key: &CanonKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// `Σ k!/#Aut` over all classes; equals `2^C(k,2)` for a complete
    /// catalog.
    pub fn labeled_total(&self) -> u128 {
        self.entries.iter().map(|e| e.labeled_copies() as u128).sum()
    }

    pub fn to_cache_string(&self) -> String {
        let mut out = format!(
            "# {CACHE_VERSION}\nk {}\nclasses {}\n",
            self.k,
            self.entries.len()
        );
        for e in &self.entries {
            out.push_str(&format!("{} {}\n", e.graph.to_graph6(), e.automorphisms));
        }
        out
    }

    pub fn from_cache_string(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Cache(m);
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(&format!("# {CACHE_VERSION}")) {
            return Err(bad("missing or unsupported version header".into()));
        }
        let field = |line: Option<&str>, name: &str| -> Result<usize> {
            line.and_then(|l| l.trim().strip_prefix(name))
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| bad(format!("missing `{name}` line")))
        };
        let k = field(lines.next(), "k")?;
        let classes = field(lines.next(), "classes")?;
        if k > MAX_CATALOG_K {
            return Err(Error::too_large("catalog k", k, MAX_CATALOG_K));
        }
        let mut entries = Vec::with_capacity(classes);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let (Some(g6), Some(aut), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("bad entry `{line}`")));
            };
            let g = SmallGraph::from_graph6(g6)?;
            if g.n() != k {
                return Err(bad(format!("entry `{g6}` has {} vertices, expected {k}", g.n())));
            }
            let automorphisms: u64 = aut
                .parse()
                .map_err(|_| bad(format!("bad automorphism count `{aut}`")))?;
            let key = canon_key(&g);
            entries.push(CatalogEntry {
                key,
                graph: key.graph(),
                automorphisms,
            });
        }
        if entries.len() != classes {
            return Err(bad(format!(
                "header announces {classes} classes, found {}",
                entries.len()
            )));
        }
        entries.sort_by_key(|a| a.key);
        let cat = Self::from_entries(k, entries);
        if cat.labeled_total() != 1u128 << pairs(k) {
            return Err(bad("labelled-copy total does not equal 2^C(k,2)".into()));
        }
        Ok(cat)
    }
}

fn check_k(k: usize, max: usize) -> Result<()> {
    if k > max {
        return Err(Error::too_large("catalog k", k, max));
    }
    Ok(())
}

/// Builds the catalog: exhaustive filtering for `k ≤ 6`, vertex-by-vertex
/// extension for `k ∈ {7, 8}`.
pub fn build_catalog(k: usize) -> Result<GraphCatalog> {
    check_k(k, MAX_CATALOG_K)?;
    if k <= MAX_EXHAUSTIVE_K {
        build_exhaustive(k)
    } else {
        build_orderly(k)
    }
}

/// Canonical forms of all `2^C(k,2)` edge subsets of `K_k`, deduplicated.
pub fn build_exhaustive(k: usize) -> Result<GraphCatalog> {
    check_k(k, MAX_EXHAUSTIVE_K)?;
    let d = pairs(k);
    let keys = par::fold_range(
        0..1u64 << d,
        HashSet::new,
        |set, bits| {
            let g = SmallGraph::from_edge_bits(k, bits as u128).expect("k <= 6");
            set.insert(canon_key(&g));
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(GraphCatalog::from_keys(k, keys))
}

/// Extends every class on `k-1` vertices by one vertex in all `2^(k-1)`
/// ways and keeps each child whose canonical form has not been produced
/// before.
pub fn build_orderly(k: usize) -> Result<GraphCatalog> {
    check_k(k, MAX_CATALOG_K)?;
    let mut keys = vec![canon_key(&SmallGraph::empty(k.min(1))?)];
    for m in 1..k {
        let parents: Vec<SmallGraph> = keys.iter().map(CanonKey::graph).collect();
        let children = par::map(&parents, extend_by_vertex);
        let mut seen: HashSet<CanonKey> = HashSet::new();
        let mut next = Vec::new();
        for batch in children {
            for key in batch {
                if seen.insert(key) {
                    next.push(key);
                }
            }
        }
        debug_assert!(next.iter().all(|c| c.n() == m + 1));
        keys = next;
    }
    Ok(GraphCatalog::from_keys(k, keys))
}

fn extend_by_vertex(parent: &SmallGraph) -> Vec<CanonKey> {
    let m = parent.n();
    let mut out = Vec::with_capacity(1 << m);
    for nbrs in 0u32..1 << m {
        let mut child = SmallGraph::empty(m + 1).expect("child fits");
        for (u, v) in parent.edges() {
            child.add_edge(u, v);
        }
        for u in 0..m {
            if nbrs >> u & 1 == 1 {
                child.add_edge(u, m);
            }
        }
        out.push(canon_key(&child));
    }
    out.sort();
    out.dedup();
    out
}

/// Cache file path for `k` inside `dir`.
pub fn cache_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("catalog-k{k}.txt"))
}

/// Loads the catalog for `k` from `dir`, building and writing it on a miss.
pub fn load_or_build(k: usize, dir: Option<&Path>) -> Result<GraphCatalog> {
    let Some(dir) = dir else {
        return build_catalog(k);
    };
    let path = cache_path(dir, k);
    if let Ok(text) = fs::read_to_string(&path) {
        return GraphCatalog::from_cache_string(&text);
    }
    let cat = build_catalog(k)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, cat.to_cache_string())?;
    Ok(cat)
}

/// Catalog for `k`, built once per process. Honours the cache directory named
/// by [`CACHE_ENV`] when set.
pub fn shared(k: usize) -> Result<Arc<GraphCatalog>> {
    static CATALOGS: OnceLock<Mutex<HashMap<usize, Arc<GraphCatalog>>>> = OnceLock::new();
    check_k(k, MAX_CATALOG_K)?;
    let map = CATALOGS.get_or_init(Default::default);
    if let Some(c) = map.lock().unwrap().get(&k) {
        return Ok(Arc::clone(c));
    }
    let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let cat = Arc::new(load_or_build(k, dir.as_deref())?);
    Ok(Arc::clone(map.lock().unwrap().entry(k).or_insert(cat)))
}

/// Visits every edge superset of `h` inside `K_n` with exactly `extra`
/// additional edges.
fn for_each_extension<F: FnMut(&SmallGraph)>(h: &SmallGraph, extra: usize, mut visit: F) {
    let free: Vec<(usize, usize)> = pair_list(h.n())
        .into_iter()
        .filter(|&(i, j)| !h.has_edge(i, j))
        .collect();
    if extra > free.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..extra).collect();
    loop {
        let mut g = *h;
        for &i in &idx {
            g.add_edge(free[i].0, free[i].1);
        }
        visit(&g);
        // next combination in lexicographic order
        let mut i = extra;
        let pivot = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if idx[i] < i + free.len() - extra {
                break Some(i);
            }
        };
        let Some(i) = pivot else { return };
        idx[i] += 1;
        for j in i + 1..extra {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_pattern(h: &SmallGraph, k: usize) -> Result<()> {
    if h.n() != k {
        return Err(Error::InvalidGraph(format!(
            "pattern has {} vertices, expected {k}",
            h.n()
        )));
    }
    if h.has_loops() {
        return Err(Error::LoopMarked(format!("{h:?}")));
    }
    Ok(())
}

/// `#{K ⊇ H}` for every class `K` with `ℓ` edges: how many ways edges can be
/// added to the labelled graph `h` to obtain a copy of `K`.
pub fn extension_classes(h: &SmallGraph, k: usize, edges: usize) -> Result<Vec<(CanonKey, u64)>> {
    check_pattern(h, k)?;
    let e = h.edge_count();
    if e > edges || edges > pairs(k) {
        return Ok(Vec::new());
    }
    let mut counts: HashMap<CanonKey, u64> = HashMap::new();
    for_each_extension(h, edges - e, |g| *counts.entry(canon_key(g)).or_default() += 1);
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort();
    Ok(out)
}

/// `Σ_{K ∈ 𝓗_ℓ} #{K ⊇ h}`, aggregated class by class. Zero when `h` has
/// more than `ℓ` edges.
pub fn extension_count(h: &SmallGraph, k: usize, edges: usize) -> Result<u64> {
    Ok(extension_classes(h, k, edges)?.iter().map(|(_, c)| c).sum())
}

/// `#{K ⊇ H}` for one target class.
pub fn superset_multiplicity(h: &SmallGraph, target: &SmallGraph) -> Result<u64> {
    check_pattern(h, target.n())?;
    let e = h.edge_count();
    let t = target.edge_count();
    if e > t {
        return Ok(0);
    }
    let key = canon_key(target);
    let mut count = 0;
    for_each_extension(h, t - e, |g| {
        if canon_key(g) == key {
            count += 1;
        }
    });
    Ok(count)
}
