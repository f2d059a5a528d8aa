use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use indsub_core::hardness::HardnessReport;
use indsub_core::hereditary::ReductionResult;
use indsub_core::hombasis::{HomVector, HomVectorRow};
use indsub_core::spectrum::Spectrum;
use serde_json::Value;

fn indsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indsub"))
        .args(args)
        .env_remove("INDSUB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn cycle_edge_list(n: usize) -> String {
    let mut s = format!("{n} {n}\n");
    for i in 0..n {
        s.push_str(&format!("{i} {}\n", (i + 1) % n));
    }
    s
}

/// Runs of `k` consecutive vertices are the only connected `k`-subsets of a
/// long cycle.
fn connected_subsets_of_cycle(n: usize, k: usize) -> usize {
    let mut total = 0;
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut next = seen;
            for i in 0..n {
                if seen >> i & 1 == 1 {
                    next |= 1 << ((i + 1) % n) | 1 << ((i + n - 1) % n);
                }
            }
            next &= mask;
            if next == seen {
                break;
            }
            seen = next;
        }
        if seen == mask {
            total += 1;
        }
    }
    total
}

#[test]
fn spectrum_of_independent_sets() {
    let out = indsub(&["spectrum", "--property", "no-edges", "--k", "4"]);
    let v = json(&out);
    let f: Vec<&str> = v["f"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(f, ["1", "0", "0", "0", "0", "0", "0"]);
    assert_eq!(v["hw"], 1);
    assert_eq!(v["poised"], true);
    let s: Spectrum = serde_json::from_value(v.clone()).unwrap();
    let mut again = serde_json::to_value(&s).unwrap();
    again["property"] = v["property"].clone();
    again["poised"] = v["poised"].clone();
    assert_eq!(again, v);
}

#[test]
fn count_both_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c9.txt", &cycle_edge_list(9));
    let v = json(&indsub(&["count", "--graph", &g, "--property", "connected", "--k", "3", "--method", "both"]));
    let want = connected_subsets_of_cycle(9, 3).to_string();
    assert_eq!(v["basis"], want.as_str());
    assert_eq!(v["brute"], want.as_str());
    let v = json(&indsub(&["--threads", "1", "count", "--graph", &g, "--property", "connected", "--k", "4"]));
    assert_eq!(v["basis"], connected_subsets_of_cycle(9, 4).to_string().as_str());
    assert!(v["brute"].is_null());
}

#[test]
fn homvector_round_trips() {
    let v = json(&indsub(&["homvector", "--property", "connected", "--k", "3"]));
    let rows: Vec<HomVectorRow> = serde_json::from_value(v["rows"].clone()).unwrap();
    let hv = HomVector::from_rows(3, &rows).unwrap();
    assert_eq!(hv.rows(), rows);
    assert_eq!(v["support"], rows.len());
}

#[test]
fn diagnose_round_trips() {
    let v = json(&indsub(&["diagnose", "--property", "no-edges", "--kmax", "4"]));
    let report: HardnessReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
    let last = report.records.last().unwrap();
    assert_eq!((last.k, last.hw, last.beta, last.witness_treewidth), (4, 1, 5, 3));
    let text = indsub(&["diagnose", "--property", "true", "--kmax", "3", "--text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("meta-theorem inapplicable (β ≤ 0)"));
}

#[test]
fn reduce_demo_matches_direct_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c6.txt", &cycle_edge_list(6));
    let h = write(dir.path(), "c4.g6", "Cr\n");
    let v = json(&indsub(&["reduce-demo", "--bipartite", &g, "--k", "2", "--forbidden", &h, "--property", "chordal"]));
    let r: ReductionResult = serde_json::from_value(v["reduction"].clone()).unwrap();
    assert_eq!(r.independent_sets, 9.into());
    assert_eq!(v["direct"], "9");
    assert_eq!(r.terms.len(), 4);
    let v = json(&indsub(&["reduce-demo", "--bipartite", &g, "--k", "2", "--forbidden", &h, "--oracle", "basis"]));
    assert_eq!(v["direct"], "9");
    assert_eq!(v["in_complement"], true);
}

#[test]
fn critical_reports_each_edge() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "c5.g6", "Dhc\n");
    let v = json(&indsub(&["critical", "--forbidden", &h, "--property", "perfect"]));
    let edges = v["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 5);
    for e in edges {
        assert_eq!(e["outcome"], "consistent-up-to");
        assert_eq!(e["confidence"], "PAPER-CITED");
    }
}

#[test]
fn catalog_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let v = json(&indsub(&["catalog", "--k", "4", "--cache-dir", d]));
    assert_eq!(v["classes"], 11);
    assert_eq!(v["labeled_total"], "64");
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
    let again = json(&indsub(&["catalog", "--k", "4", "--cache-dir", d]));
    assert_eq!(again, v);
}

#[test]
fn truth_table_properties_load() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "all.txt", "k 3\n1111\n");
    let v = json(&indsub(&["spectrum", "--property", &format!("truth-table:{t}"), "--k", "3"]));
    let f: Vec<&str> = v["f"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(f, ["1", "3", "3", "1"]);
}

#[test]
fn usage_errors_exit_one() {
    let out = indsub(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = indsub(&["spectrum", "--property", "no-such-property", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: unknown property"));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.g6", "~~~~\n");
    let out = indsub(&["count", "--graph", &bad, "--property", "true", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: malformed graph"), "{}", stderr(&out));
    let big = write(dir.path(), "e.txt", "60 0\n");
    let out = indsub(&["count", "--graph", &big, "--property", "true", "--k", "6", "--method", "brute", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: budget exceeded"));
}

#[test]
fn selftest_passes() {
    let out = indsub(&["selftest"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(out.status.code(), Some(0));
}
