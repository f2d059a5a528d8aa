use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use indsub_core::catalog::{build_exhaustive, load_or_build};
use indsub_core::count::{count, count_independent_sets, Method, DEFAULT_BUDGET};
use indsub_core::hardness::{diagnose, turan_check};
use indsub_core::hereditary::{bounded_critical_check, count_independent_sets_via_reduction, CriticalEdge, Oracle};
use indsub_core::hombasis::{hom_vector, scaled_coefficient_sums};
use indsub_core::homcount::{count_hom, count_hom_brute};
use indsub_core::properties::{builtin_zoo, PropertySpec};
use indsub_core::spectrum::spectrum_report;
use indsub_core::{Error, HostGraph, Result, SmallGraph};

use crate::commands::Output;

#[derive(Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn fail(msg: String) -> Result<()> {
    Err(Error::Consistency(msg))
}

fn basis_vs_brute(rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..3 {
        let g = HostGraph::random_gnp(rng.gen_range(7..=9), 0.5, rng);
        for phi in builtin_zoo() {
            for k in 2..=4 {
                count(&phi, k, &g, Method::Both, DEFAULT_BUDGET)?;
            }
        }
    }
    Ok(())
}

fn spectra_and_sums() -> Result<()> {
    for phi in builtin_zoo() {
        for k in 1..=4 {
            let s = spectrum_report(&phi, k)?;
            let scaled = scaled_coefficient_sums(&hom_vector(&phi, k)?);
            let integral: Vec<Option<BigInt>> = scaled.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
            if integral.iter().zip(&s.h).any(|(a, b)| a.as_ref() != Some(b)) || integral.len() != s.h.len() {
                return fail(format!("{} at k = {k}: k!·h̃ differs from h", phi.name()));
            }
        }
    }
    Ok(())
}

fn witnesses() -> Result<()> {
    for phi in builtin_zoo() {
        diagnose(&phi, 4)?;
    }
    for phi in [PropertySpec::triangle_free(), PropertySpec::planar()] {
        if !turan_check(&phi, 5)?.holds {
            return fail(format!("Turán vanishing fails for {}", phi.name()));
        }
    }
    Ok(())
}

fn hom_counts(rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let bits = rng.gen_range(0..1u128 << (n * (n - 1) / 2).max(1));
        let h = SmallGraph::from_edge_bits(n, bits)?;
        let g = HostGraph::random_gnp(rng.gen_range(1..=7), 0.5, rng);
        if count_hom(&h, &g)? != count_hom_brute(&h, &g).into() {
            return fail(format!("hom count of {} into {} differs", h.to_graph6(), g.to_graph6()));
        }
    }
    Ok(())
}

fn catalogs() -> Result<()> {
    for k in 1..=6 {
        let a = load_or_build(k, None)?;
        let b = build_exhaustive(k)?;
        if a.len() != b.len() || a.labeled_total() != 1u128 << (k * (k - 1) / 2) {
            return fail(format!("catalog mismatch at k = {k}"));
        }
    }
    Ok(())
}

fn hereditary(rng: &mut ChaCha8Rng) -> Result<()> {
    let two_k2 = SmallGraph::from_edges(4, &[(0, 1), (2, 3)])?;
    let cases = [
        (PropertySpec::perfect(), SmallGraph::cycle(5)?),
        (PropertySpec::chordal(), SmallGraph::cycle(4)?),
        (PropertySpec::split(), two_k2),
    ];
    let oracle = Oracle::Brute { budget: DEFAULT_BUDGET };
    for (phi, h) in &cases {
        let edge = h.edges().next().expect("cited graphs have edges");
        if !bounded_critical_check(phi, h, edge, 4)?.is_consistent() {
            return fail(format!("bounded check refutes the cited edge for {}", phi.name()));
        }
        let g = HostGraph::random_bipartite(rng.gen_range(1..=4), rng.gen_range(1..=4), 0.4, rng);
        let crit = CriticalEdge {
            graph: *h,
            edge,
            in_complement: false,
        };
        let got = count_independent_sets_via_reduction(&g, 2, phi, &crit, &oracle)?.independent_sets;
        let want = BigInt::from(count_independent_sets(&g, 2, DEFAULT_BUDGET)?);
        if got != want {
            return fail(format!("reduction for {} gives {got}, expected {want}", phi.name()));
        }
    }
    Ok(())
}

pub fn run() -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d5b);
    let mut checks = Vec::new();
    let mut record = |name: &str, r: Result<()>| {
        checks.push(Check {
            name: name.to_string(),
            passed: r.is_ok(),
            detail: r.err().map(|e| e.to_string()),
        })
    };
    record("catalog cardinalities", catalogs());
    record("basis equals brute force", basis_vs_brute(&mut rng));
    record("spectra and coefficient sums", spectra_and_sums());
    record("dense witnesses and vanishing", witnesses());
    record("homomorphism counts", hom_counts(&mut rng));
    record("critical edges and reduction", hereditary(&mut rng));
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        let _ = write!(text, "{} {}", if c.passed { "pass" } else { "FAIL" }, c.name);
        if let Some(d) = &c.detail {
            let _ = write!(text, ": {d}");
        }
        text.push('\n');
    }
    let report = SelftestReport { passed, checks };
    let json = serde_json::to_value(&report).map_err(|e| Error::Consistency(e.to_string()))?;
    Ok(Output {
        json,
        text,
        status: if passed { 0 } else { 2 },
    })
}
