use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use indsub_core::catalog::{load_or_build, CACHE_ENV};
use indsub_core::count::{self as counting, count_independent_sets, BasisCache, Method};
use indsub_core::hardness::diagnose as diagnose_report;
use indsub_core::hereditary::{
    bounded_critical_check, count_independent_sets_via_reduction, singleton_critical_edge, CriticalEdge, CriticalOutcome,
    CriticalReport, Oracle, ReductionResult,
};
use indsub_core::hombasis::{hom_vector, HomVectorRow};
use indsub_core::io::{parse_host, parse_small_list};
use indsub_core::properties::{parse_property, PropertySpec};
use indsub_core::spectrum::{spectrum_report, BirkhoffMatrix, Spectrum};
use indsub_core::{Error, HostGraph, Result, SmallGraph};

use crate::{MethodArg, OracleArg, PropertyK};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: u8,
}

impl Output {
    fn new<T: Serialize>(report: &T, text: String) -> Result<Self> {
        let json = serde_json::to_value(report).map_err(|e| Error::Consistency(format!("serializing report: {e}")))?;
        Ok(Output { json, text, status: 0 })
    }
}

pub fn set_threads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Resolves a property argument, including `truth-table:PATH`.
pub fn resolve_property(arg: &str) -> Result<PropertySpec> {
    match arg.strip_prefix("truth-table:") {
        Some(path) => PropertySpec::from_truth_table_text(arg, &read(Path::new(path))?),
        None => parse_property(arg),
    }
}

#[derive(Serialize, Deserialize)]
pub struct CatalogReport {
    pub k: usize,
    pub classes: usize,
    /// `Σ k!/|Aut|` as a decimal string.
    pub labeled_total: String,
    pub entries: Vec<CatalogRow>,
}

#[derive(Serialize, Deserialize)]
pub struct CatalogRow {
    pub graph6: String,
    pub edges: usize,
    pub automorphisms: u64,
}

pub fn catalog(k: usize, cache_dir: Option<PathBuf>) -> Result<Output> {
    let dir = cache_dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let cat = load_or_build(k, dir.as_deref())?;
    let report = CatalogReport {
        k,
        classes: cat.len(),
        labeled_total: cat.labeled_total().to_string(),
        entries: cat
            .entries()
            .iter()
            .map(|e| CatalogRow {
                graph6: e.graph.to_graph6(),
                edges: e.edge_count(),
                automorphisms: e.automorphisms,
            })
            .collect(),
    };
    let mut text = format!("k = {k}: {} classes, {} labeled graphs\n", report.classes, report.labeled_total);
    for r in &report.entries {
        let _ = writeln!(text, "{:<10} edges {:>2}  aut {}", r.graph6, r.edges, r.automorphisms);
    }
    Output::new(&report, text)
}

#[derive(Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub property: String,
    #[serde(flatten)]
    pub spectrum: Spectrum,
    /// Whether the vanishing-condition matrix is poised (absent when Φ_k is empty).
    pub poised: Option<bool>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn spectrum(pk: &PropertyK) -> Result<Output> {
    let phi = resolve_property(&pk.property)?;
    let s = spectrum_report(&phi, pk.k)?;
    let poised = if s.trivially_false() {
        None
    } else {
        Some(BirkhoffMatrix::from_vanishing(&s.f)?.polya_poised()?)
    };
    let text = format!(
        "property {} k = {} d = {}\nf = ({})\nh = ({})\nhw = {} beta = {} poised = {}\n",
        phi.name(),
        s.k,
        s.d,
        join(&s.f),
        join(&s.h),
        s.hw,
        s.beta,
        poised.map_or("n/a".to_string(), |p| p.to_string())
    );
    Output::new(
        &SpectrumOutput {
            property: phi.name().to_string(),
            spectrum: s,
            poised,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct HomVectorOutput {
    pub property: String,
    pub k: usize,
    pub support: usize,
    pub rows: Vec<HomVectorRow>,
}

pub fn homvector(pk: &PropertyK) -> Result<Output> {
    let phi = resolve_property(&pk.property)?;
    let hv = hom_vector(&phi, pk.k)?;
    let rows = hv.rows();
    let mut text = format!("property {} k = {}: {} support graphs\n", phi.name(), pk.k, rows.len());
    for r in &rows {
        let _ = writeln!(text, "{:<10} {}/{}", r.graph6, r.numerator, r.denominator);
    }
    Output::new(
        &HomVectorOutput {
            property: phi.name().to_string(),
            k: pk.k,
            support: rows.len(),
            rows,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct CountOutput {
    pub property: String,
    pub k: usize,
    pub n: usize,
    pub basis: Option<String>,
    pub brute: Option<String>,
}

pub fn count_cmd(pk: &PropertyK, g: &HostGraph, method: MethodArg, budget: u64) -> Result<CountOutput> {
    let phi = resolve_property(&pk.property)?;
    let method = match method {
        MethodArg::Basis => Method::Basis,
        MethodArg::Brute => Method::Brute,
        MethodArg::Both => Method::Both,
    };
    let (basis, brute) = counting::count(&phi, pk.k, g, method, budget)?;
    Ok(CountOutput {
        property: phi.name().to_string(),
        k: pk.k,
        n: g.n(),
        basis: basis.map(|b| b.to_string()),
        brute: brute.map(|b| b.to_string()),
    })
}

pub fn count(pk: &PropertyK, graph: &Path, method: MethodArg, budget: u64) -> Result<Output> {
    let g = parse_host(&read(graph)?)?;
    let out = count_cmd(pk, &g, method, budget)?;
    let mut text = format!("#IndSub({}, {}) on {} vertices:", out.property, out.k, out.n);
    if let Some(b) = &out.basis {
        let _ = write!(text, " basis {b}");
    }
    if let Some(b) = &out.brute {
        let _ = write!(text, " brute {b}");
    }
    text.push('\n');
    Output::new(&out, text)
}

pub fn diagnose(property: &str, kmax: usize) -> Result<Output> {
    let phi = resolve_property(property)?;
    let report = diagnose_report(&phi, kmax)?;
    let text = report.to_text();
    Output::new(&report, text)
}

#[derive(Serialize, Deserialize)]
pub struct SingletonOutput {
    pub in_complement: bool,
    pub graph6: String,
    pub edge: (usize, usize),
    pub report: CriticalReport,
}

#[derive(Serialize, Deserialize)]
pub struct CriticalOutput {
    pub forbidden: String,
    pub property: String,
    pub bound: usize,
    pub singleton: Option<SingletonOutput>,
    pub edges: Vec<CriticalReport>,
}

fn forbidden_and_property(forbidden: &Path, property: Option<&str>) -> Result<(SmallGraph, PropertySpec)> {
    let list = parse_small_list(&read(forbidden)?)?;
    let h = list[0];
    let phi = match property {
        Some(p) => resolve_property(p)?,
        None => PropertySpec::induced_free(list)?,
    };
    Ok((h, phi))
}

fn outcome_text(r: &CriticalReport) -> String {
    match &r.outcome {
        CriticalOutcome::ConsistentUpTo { bound, confidence } => {
            format!("consistent up to {bound} [{}]", confidence.label())
        }
        CriticalOutcome::Refuted { x, y, graph6 } => format!("refuted at x={x} y={y} ({graph6})"),
    }
}

fn is_sole_forbidden(phi: &PropertySpec, g: &SmallGraph) -> bool {
    phi.exact_forbidden()
        .is_some_and(|f| f.len() == 1 && indsub_core::canon::are_isomorphic(&f[0], g))
}

pub fn critical(forbidden: &Path, property: Option<&str>, bound: usize) -> Result<Output> {
    let (h, phi) = forbidden_and_property(forbidden, property)?;
    let singleton = match singleton_critical_edge(&h)? {
        Some(e) => {
            let target = if e.in_complement { phi.invert() } else { phi.clone() };
            let report = bounded_critical_check(&target, &e.graph, e.edge, bound)?;
            if !report.is_consistent() && is_sole_forbidden(&target, &e.graph) {
                return Err(Error::Consistency(format!(
                    "singleton edge {:?} of {} refuted: {}",
                    e.edge,
                    e.graph.to_graph6(),
                    outcome_text(&report)
                )));
            }
            Some(SingletonOutput {
                in_complement: e.in_complement,
                graph6: e.graph.to_graph6(),
                edge: e.edge,
                report,
            })
        }
        None => None,
    };
    let edges = h
        .edges()
        .map(|e| bounded_critical_check(&phi, &h, e, bound))
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!("H = {} property {} bound {bound}\n", h.to_graph6(), phi.name());
    if let Some(s) = &singleton {
        let _ = writeln!(
            text,
            "singleton edge {:?} in {}{}: {}",
            s.edge,
            s.graph6,
            if s.in_complement { " (complement)" } else { "" },
            outcome_text(&s.report)
        );
    }
    for r in &edges {
        let _ = writeln!(text, "edge {:?}: {}", r.edge, outcome_text(r));
    }
    Output::new(
        &CriticalOutput {
            forbidden: h.to_graph6(),
            property: phi.name().to_string(),
            bound,
            singleton,
            edges,
        },
        text,
    )
}

#[derive(Serialize, Deserialize)]
pub struct ReduceOutput {
    pub property: String,
    pub forbidden: String,
    pub edge: (usize, usize),
    pub in_complement: bool,
    pub reduction: ReductionResult,
    /// Independent sets counted directly.
    pub direct: String,
}

/// An edge of `h` (or, failing that, of its complement under `Φ̅`) that
/// survives the bounded criticality check.
fn choose_edge(phi: &PropertySpec, h: &SmallGraph, bound: usize) -> Result<CriticalEdge> {
    let c = h.complement()?;
    for (g, target, in_complement) in [(*h, phi.clone(), false), (c, phi.invert(), true)] {
        for e in g.edges() {
            if bounded_critical_check(&target, &g, e, bound)?.is_consistent() {
                return Ok(CriticalEdge {
                    graph: g,
                    edge: e,
                    in_complement,
                });
            }
        }
    }
    Err(Error::Precondition(format!(
        "no edge of {} or its complement passes the bounded criticality check for {}",
        h.to_graph6(),
        phi.name()
    )))
}

pub fn reduce_demo(bipartite: &Path, k: usize, forbidden: &Path, property: Option<&str>, bound: usize, oracle: OracleArg, budget: u64) -> Result<Output> {
    let g = parse_host(&read(bipartite)?)?;
    let (h, phi) = forbidden_and_property(forbidden, property)?;
    let crit = if is_sole_forbidden(&phi, &h) {
        singleton_critical_edge(&h)?.ok_or_else(|| Error::Precondition("forbidden graph needs at least 2 vertices".into()))?
    } else {
        choose_edge(&phi, &h, bound)?
    };
    let cache = BasisCache::new();
    let oracle = match oracle {
        OracleArg::Brute => Oracle::Brute { budget },
        OracleArg::Basis => Oracle::Basis(&cache),
    };
    let reduction = count_independent_sets_via_reduction(&g, k, &phi, &crit, &oracle)?;
    let direct = count_independent_sets(&g, k, budget)?;
    if reduction.independent_sets != direct.clone().into() {
        return Err(Error::Consistency(format!(
            "reduction gives {} independent sets of size {k}, direct count gives {direct}",
            reduction.independent_sets
        )));
    }
    let out = ReduceOutput {
        property: phi.name().to_string(),
        forbidden: h.to_graph6(),
        edge: crit.edge,
        in_complement: crit.in_complement,
        direct: direct.to_string(),
        reduction,
    };
    let text = format!(
        "{} with edge {:?}{}: r = {}, {} oracle calls on {} vertices\nindependent sets of size {k}: {} (direct {})\n",
        out.property,
        out.edge,
        if out.in_complement { " of the complement" } else { "" },
        out.reduction.r,
        out.reduction.terms.len(),
        out.reduction.instance_vertices,
        out.reduction.independent_sets,
        out.direct
    );
    Output::new(&out, text)
}
