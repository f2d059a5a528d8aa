//! Per-`k` hardness evidence for a property: f/h-vector data, a dense
//! support witness with its treewidth and largest clique minor, Turán
//! vanishing for monotone properties, and the prefix of `K(Φ)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::canon::{canon_key, CanonKey};
use crate::catalog::MAX_CATALOG_K;
use crate::error::{Error, Result};
use crate::graph::{BitIter, SmallGraph};
use crate::hombasis::{hom_vector, witness_dense_graph, MAX_HOM_K};
use crate::homcount::{avg_degree_tw_bound, exact_treewidth};
use crate::par;
use crate::properties::{FlagReport, PropertyFlags, PropertySpec, MAX_VERIFY_K};
use crate::spectrum::{f_vector, spectrum_report, Spectrum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranCheck {
    pub k: usize,
    pub r: usize,
    /// `(1 - 1/r)·k²/2` as an exact fraction.
    pub threshold: String,
    pub holds: bool,
    /// Smallest edge count above the threshold with `f_i ≠ 0`.
    pub violation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRecord {
    pub k: usize,
    pub d: usize,
    pub hw: usize,
    pub beta: i64,
    pub max_nonzero_h_index: Option<usize>,
    pub witness_graph6: String,
    pub witness_edges: usize,
    pub witness_treewidth: usize,
    /// `d(witness)/2`, the average-degree lower bound on treewidth.
    pub witness_tw_lower_bound: String,
    /// `β(k)/k`.
    pub beta_over_k: String,
    pub largest_clique_minor: usize,
    pub turan: Option<TuranCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityPrefix {
    pub k_max: usize,
    /// Members of `K(Φ) ∩ [k_max]`.
    pub members: Vec<usize>,
    /// Largest ratio `k_{i+1}/k_i` between consecutive members, as a fraction.
    pub max_gap_ratio: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HardnessReport {
    pub property: String,
    pub k_max: usize,
    pub flags: ReportedFlags,
    pub flag_verification: Option<FlagReportSummary>,
    pub density: DensityPrefix,
    /// `|V(F)|` of the monotone obstruction used for Turán checks.
    pub turan_r: Option<usize>,
    pub records: Vec<KRecord>,
    pub classification: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportedFlags {
    pub monotone: bool,
    pub hereditary: bool,
    pub edge_count_only: bool,
    pub sparse: Option<u32>,
}

impl From<PropertyFlags> for ReportedFlags {
    fn from(f: PropertyFlags) -> Self {
        ReportedFlags {
            monotone: f.monotone,
            hereditary: f.hereditary,
            edge_count_only: f.edge_count_only,
            sparse: f.sparse,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReportSummary {
    pub k_max: usize,
    /// `(flag, holds, witness graph6)`.
    pub checks: Vec<(String, bool, Option<String>)>,
}

impl From<&FlagReport> for FlagReportSummary {
    fn from(r: &FlagReport) -> Self {
        FlagReportSummary {
            k_max: r.k_max,
            checks: r
                .checks
                .iter()
                .map(|c| (c.flag.clone(), c.holds, c.witness.clone()))
                .collect(),
        }
    }
}

fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Checks `f_i = 0` for every `i > (1 - 1/r)·k²/2`, with `r = |V(F)|` for the
/// property's monotone obstruction `F`.
pub fn turan_check(phi: &PropertySpec, k: usize) -> Result<TuranCheck> {
    let f = f_vector(phi, k)?;
    turan_check_with(phi, k, &f)
}

fn turan_check_with(phi: &PropertySpec, k: usize, f: &[BigInt]) -> Result<TuranCheck> {
    let obstruction = phi.obstruction().ok_or_else(|| {
        Error::Precondition(format!("{} declares no monotone obstruction", phi.name()))
    })?;
    let r = obstruction.n();
    // i > (r-1) k² / (2r)  ⇔  2 r i > (r-1) k²
    let violation = (0..f.len()).find(|&i| 2 * r * i > (r - 1) * k * k && f[i] != BigInt::default());
    let threshold = BigRational::new(BigInt::from((r - 1) * k * k), BigInt::from(2 * r));
    Ok(TuranCheck {
        k,
        r,
        threshold: ratio_string(&threshold),
        holds: violation.is_none(),
        violation,
    })
}

/// `K(Φ) ∩ [k_max]`, the vertex counts with at least one satisfying graph.
pub fn density_prefix(phi: &PropertySpec, k_max: usize) -> Result<DensityPrefix> {
    if k_max > MAX_CATALOG_K {
        return Err(Error::too_large("density prefix k_max", k_max, MAX_CATALOG_K));
    }
    let ks: Vec<usize> = (1..=k_max).collect();
    let present = par::map(&ks, |&k| f_vector(phi, k).map(|f| f.iter().any(|x| *x != BigInt::default())));
    let mut members = Vec::new();
    for (k, p) in ks.into_iter().zip(present) {
        if p? {
            members.push(k);
        }
    }
    let max_gap_ratio = members
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[1]), BigInt::from(w[0])))
        .max()
        .map(|r| ratio_string(&r));
    Ok(DensityPrefix {
        k_max,
        members,
        max_gap_ratio,
    })
}

fn clique_number(g: &SmallGraph) -> usize {
    fn grow(g: &SmallGraph, cand: u16, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow(g, cand & g.neighbors(v), size + 1, best);
        grow(g, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    grow(g, g.vertex_mask(), 0, &mut best);
    best
}

fn contract(g: &SmallGraph, u: usize, v: usize) -> SmallGraph {
    let mut h = *g;
    for w in BitIter(g.neighbors(v)) {
        if w != u {
            h.add_edge(u, w);
        }
    }
    h.remove_vertex(v)
}

/// Largest `t` such that `K_t` is a minor of `g`: the largest clique reachable
/// by edge contractions, since deletions never create cliques.
pub fn largest_clique_minor(g: &SmallGraph) -> usize {
    fn rec(g: SmallGraph, memo: &mut HashMap<CanonKey, usize>) -> usize {
        let key = canon_key(&g);
        if let Some(&t) = memo.get(&key) {
            return t;
        }
        let mut best = clique_number(&g);
        for (u, v) in g.edges() {
            // a contraction loses a vertex, so cannot beat a clique on all of them
            if best >= g.n() - 1 {
                break;
            }
            best = best.max(rec(contract(&g, u, v), memo));
        }
        memo.insert(key, best);
        best
    }
    rec(*g, &mut HashMap::new())
}

fn record(phi: &PropertySpec, k: usize, spectrum: Spectrum, turan: bool) -> Result<KRecord> {
    let hv = hom_vector(phi, k)?;
    let w = witness_dense_graph(&hv, &spectrum)?;
    let (tw, _) = exact_treewidth(&w)?;
    let bound = avg_degree_tw_bound(&w);
    if BigRational::from_integer(BigInt::from(tw)) < bound {
        return Err(Error::Consistency(format!(
            "witness {} has treewidth {tw} below its average-degree bound",
            w.to_graph6()
        )));
    }
    let beta_over_k = BigRational::new(BigInt::from(spectrum.beta), BigInt::from(k));
    if spectrum.beta > 0 && BigRational::from_integer(BigInt::from(tw)) < beta_over_k {
        return Err(Error::Consistency(format!(
            "witness {} has treewidth {tw} below β(k)/k = {}",
            w.to_graph6(),
            ratio_string(&beta_over_k)
        )));
    }
    let turan = if turan {
        Some(turan_check_with(phi, k, &spectrum.f)?)
    } else {
        None
    };
    Ok(KRecord {
        k,
        d: spectrum.d,
        hw: spectrum.hw,
        beta: spectrum.beta,
        max_nonzero_h_index: spectrum.max_nonzero_h_index,
        witness_graph6: w.to_graph6(),
        witness_edges: w.edge_count(),
        witness_treewidth: tw,
        witness_tw_lower_bound: ratio_string(&bound),
        beta_over_k: ratio_string(&beta_over_k),
        largest_clique_minor: largest_clique_minor(&w),
        turan,
    })
}

const MONOTONE_TEXT: &str = "monotone properties: if Φ is non-trivial and K(Φ) is infinite, \
#IndSub(Φ) is #W[1]-complete and cannot be solved in time g(k)·|V(G)|^o(k/√log k) for any \
function g unless ETH fails; the same holds for the inverse and the negation";

const EDGE_COUNT_TEXT: &str = "properties depending only on vertex and edge counts: if Φ_k is \
non-trivial for infinitely many k, #IndSub(Φ) is #W[1]-complete and cannot be solved in time \
g(k)·|V(G)|^o(k/log k) unless ETH fails; with a dense set of such k the bound improves to \
g(k)·|V(G)|^o(k/√log k)";

const SPARSE_TEXT: &str = "sparse properties: if K(Φ) is dense, #IndSub(Φ) cannot be solved in \
time g(k)·|V(G)|^o(k) for any function g unless ETH fails";

const GENERIC_TEXT: &str = "general properties: if K(Φ) is infinite and β(k) ∈ ω(k), #IndSub(Φ) \
is #W[1]-complete and cannot be solved in time g(k)·|V(G)|^o((β(k)/k)/log(β(k)/k)) unless ETH \
fails; the same holds for the inverse and the negation";

fn classify(report: &HardnessReport, verified: &PropertyFlags) -> String {
    let prefix = &report.density.members;
    let positive: Vec<&KRecord> = report.records.iter().filter(|r| r.beta > 0).collect();
    if positive.is_empty() {
        return format!(
            "meta-theorem inapplicable (β ≤ 0): no k in K(Φ) ∩ [{}] = {:?} has a vanishing f-vector entry",
            report.k_max, prefix
        );
    }
    let mut applicable = Vec::new();
    if verified.monotone {
        applicable.push(MONOTONE_TEXT);
    }
    if verified.edge_count_only {
        applicable.push(EDGE_COUNT_TEXT);
    }
    if verified.sparse.is_some() {
        applicable.push(SPARSE_TEXT);
    }
    if applicable.is_empty() {
        applicable.push(GENERIC_TEXT);
    }
    let betas: Vec<String> = report
        .records
        .iter()
        .map(|r| format!("β({})={}", r.k, r.beta))
        .collect();
    let mut text = format!(
        "Finite-prefix evidence over K(Φ) ∩ [{}] = {:?}: {}. Each such k has a support graph with a \
non-zero coefficient and at least C(k,2) − hw + 1 edges. This is consistent with the known \
classification for ",
        report.k_max,
        prefix,
        betas.join(", ")
    );
    text.push_str(&applicable.join("; and for "));
    text.push_str(". Asymptotic statements are not checked at finite scale.");
    text
}

/// Hardness evidence for every `k ∈ K(Φ)` up to `k_max`.
pub fn diagnose(phi: &PropertySpec, k_max: usize) -> Result<HardnessReport> {
    if k_max == 0 || k_max > MAX_HOM_K {
        return Err(Error::too_large("diagnose k_max", k_max, MAX_HOM_K));
    }
    let declared = phi.flags();
    let verification = if declared == PropertyFlags::default() {
        None
    } else {
        Some(phi.verify_flags(k_max.min(MAX_VERIFY_K))?)
    };
    let holds = |name: &str| verification.as_ref().and_then(|v| v.get(name)).is_some_and(|c| c.holds);
    let verified = PropertyFlags {
        monotone: declared.monotone && holds("monotone"),
        hereditary: declared.hereditary && holds("hereditary"),
        edge_count_only: declared.edge_count_only && holds("edge-count-only"),
        sparse: declared.sparse.filter(|_| holds("sparse")),
    };
    let turan_r = match phi.obstruction() {
        Some(f) if verified.monotone => Some(f.n()),
        _ => None,
    };
    let ks: Vec<usize> = (1..=k_max).collect();
    let spectra = par::map(&ks, |&k| spectrum_report(phi, k));
    let mut present = Vec::new();
    for s in spectra {
        let s = s?;
        if !s.trivially_false() {
            present.push(s);
        }
    }
    let members: Vec<usize> = present.iter().map(|s| s.k).collect();
    let records = par::map(&present, |s| record(phi, s.k, s.clone(), turan_r.is_some()));
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let max_gap_ratio = members
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[1]), BigInt::from(w[0])))
        .max()
        .map(|r| ratio_string(&r));
    let mut report = HardnessReport {
        property: phi.name().to_string(),
        k_max,
        flags: declared.into(),
        flag_verification: verification.as_ref().map(FlagReportSummary::from),
        density: DensityPrefix {
            k_max,
            members,
            max_gap_ratio,
        },
        turan_r,
        records,
        classification: String::new(),
    };
    report.classification = classify(&report, &verified);
    Ok(report)
}

impl HardnessReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("property: {}\nk_max: {}\n", self.property, self.k_max);
        let f = &self.flags;
        out.push_str(&format!(
            "declared flags: monotone={} hereditary={} edge-count-only={} sparse={}\n",
            f.monotone,
            f.hereditary,
            f.edge_count_only,
            f.sparse.map_or("no".to_string(), |s| s.to_string())
        ));
        if let Some(v) = &self.flag_verification {
            for (flag, holds, witness) in &v.checks {
                let w = witness.as_deref().map(|w| format!(" (witness {w})")).unwrap_or_default();
                out.push_str(&format!(
                    "  {flag}: {} up to {} vertices{w}\n",
                    if *holds { "verified" } else { "violated" },
                    v.k_max
                ));
            }
        }
        out.push_str(&format!("K(Φ) prefix: {:?}", self.density.members));
        if let Some(g) = &self.density.max_gap_ratio {
            out.push_str(&format!(" (max consecutive ratio {g})"));
        }
        out.push('\n');
        out.push_str("  k   d  hw  beta  max_h  witness      edges  tw  minor\n");
        for r in &self.records {
            out.push_str(&format!(
                "{:>3} {:>3} {:>3} {:>5} {:>6}  {:<12} {:>5} {:>3} {:>6}\n",
                r.k,
                r.d,
                r.hw,
                r.beta,
                r.max_nonzero_h_index.map_or("-".into(), |i| i.to_string()),
                r.witness_graph6,
                r.witness_edges,
                r.witness_treewidth,
                r.largest_clique_minor
            ));
            if let Some(t) = &r.turan {
                out.push_str(&format!(
                    "      turan r={} threshold={} {}\n",
                    t.r,
                    t.threshold,
                    if t.holds { "holds" } else { "VIOLATED" }
                ));
            }
        }
        out.push_str(&self.classification);
        out.push('\n');
        out
    }
}
