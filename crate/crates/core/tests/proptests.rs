mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::G;
use indsub_core::canon::{are_isomorphic, canon_key};
use indsub_core::catalog::build_catalog;
use indsub_core::count::{count_brute, count_inverse_check, count_negation_check, BasisCache};
use indsub_core::graph::pairs;
use indsub_core::hardness::diagnose;
use indsub_core::hereditary::{
    bounded_critical_check, count_independent_sets_via_reduction, explode, singleton_critical_edge, twin_partition,
    CriticalEdge, ExplosionSpec, Oracle,
};
use indsub_core::hombasis::{hom_vector, witness_dense_graph};
use indsub_core::homcount::{avg_degree_tw_bound, count_hom, exact_treewidth};
use indsub_core::properties::{builtin_zoo, PropertySpec};
use indsub_core::spectrum::{f_from_h, h_vector, spectrum_report, BirkhoffMatrix, Spectrum};
use indsub_core::{HostGraph, SmallGraph};

fn small_graph(lo: usize, hi: usize) -> impl Strategy<Value = SmallGraph> {
    (lo..=hi, any::<u128>()).prop_map(|(n, bits)| {
        let mask = if pairs(n) == 0 { 0 } else { u128::MAX >> (128 - pairs(n)) };
        SmallGraph::from_edge_bits(n, bits & mask).unwrap()
    })
}

fn host(lo: usize, hi: usize) -> impl Strategy<Value = HostGraph> {
    (lo..=hi, 0.1f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| HostGraph::random_gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn bipartite_host() -> impl Strategy<Value = HostGraph> {
    (1usize..=5, 1usize..=5, 0.1f64..0.8, any::<u64>())
        .prop_map(|(a, b, p, seed)| HostGraph::random_bipartite(a, b, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((0..n as u8).collect::<Vec<_>>()).prop_shuffle()
}

fn zoo_property() -> impl Strategy<Value = PropertySpec> {
    let zoo = builtin_zoo();
    (0..zoo.len()).prop_map(move |i| zoo[i].clone())
}

fn cited() -> Vec<(PropertySpec, SmallGraph)> {
    vec![
        (PropertySpec::perfect(), SmallGraph::cycle(5).unwrap()),
        (PropertySpec::chordal(), SmallGraph::cycle(4).unwrap()),
        (PropertySpec::split(), SmallGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in small_graph(0, 12)) {
        prop_assert_eq!(SmallGraph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn host_graph6_round_trip(g in host(0, 40)) {
        let back = HostGraph::from_graph6(&g.to_graph6()).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in small_graph(1, 9).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let p = g.permute(&perm);
        prop_assert_eq!(canon_key(&g), canon_key(&p));
        prop_assert!(are_isomorphic(&g, &p));
    }

    #[test]
    fn canonical_key_separates(a in small_graph(1, 5), b in small_graph(1, 5)) {
        let same = a.n() == b.n() && common::permutations(a.n()).iter().any(|p| {
            G::from_small(&a).permuted(p) == G::from_small(&b)
        });
        prop_assert_eq!(canon_key(&a) == canon_key(&b), same);
    }

    #[test]
    fn h_vector_inverts(f in prop::collection::vec(-50i64..50, 1..12)) {
        let f: Vec<BigInt> = f.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(f_from_h(&h_vector(&f)), f.clone());
        prop_assert_eq!(h_vector(&f), common::h_vector(&f));
    }

    #[test]
    fn polya_matches_determinant(d in 0usize..6, bits in any::<u32>()) {
        let width = d + 1;
        let mut rows = [vec![false; width], vec![false; width]];
        let mut set = 0;
        for i in 0..2 * width {
            if bits >> i & 1 == 1 && set < d + 1 {
                rows[i / width][i % width] = true;
                set += 1;
            }
        }
        for i in 0..2 * width {
            if set < d + 1 && !rows[i / width][i % width] {
                rows[i / width][i % width] = true;
                set += 1;
            }
        }
        let m = BirkhoffMatrix::new(rows[0].clone(), rows[1].clone()).unwrap();
        prop_assert_eq!(m.polya_poised().unwrap(), common::birkhoff_determinant_nonzero(&rows));
    }

    #[test]
    fn hom_counts_match_enumeration(h in small_graph(1, 5), g in host(1, 7)) {
        let want = common::hom_count(&G::from_small(&h), &G::from_host(&g));
        prop_assert_eq!(count_hom(&h, &g).unwrap(), want.into());
    }

    #[test]
    fn tree_decompositions_are_valid(h in small_graph(1, 9)) {
        let (tw, td) = exact_treewidth(&h).unwrap();
        td.validate(&h).unwrap();
        prop_assert_eq!(td.width(), tw);
        let lower = avg_degree_tw_bound(&h);
        prop_assert!(lower <= num_rational::BigRational::from_integer(tw.into()));
    }

    #[test]
    fn twin_blocks_are_false_twins(h in small_graph(1, 8)) {
        let tp = twin_partition(&h);
        let g = G::from_small(&h);
        for u in 0..h.n() {
            for v in 0..h.n() {
                let twins = u == v || common::false_twins(&g, u, v);
                prop_assert_eq!(tp.block_of[u] == tp.block_of[v], twins);
            }
        }
        prop_assert_eq!(tp.collapsed.n(), tp.blocks.len());
        for (i, a) in tp.blocks.iter().enumerate() {
            for (j, b) in tp.blocks.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(tp.collapsed.has_edge(i, j), h.has_edge(a[0], b[0]));
                }
            }
        }
    }

    #[test]
    fn explosion_matches_oracle(
        (h, e) in small_graph(2, 6).prop_filter("has an edge", |h| h.edge_count() > 0).prop_flat_map(|h| {
            let edges: Vec<_> = h.edges().collect();
            (Just(h), prop::sample::select(edges))
        }),
        x in 0usize..4,
        y in 0usize..4,
    ) {
        let spec = ExplosionSpec::new(h, e, x, y);
        let got = explode(&spec).unwrap();
        prop_assert_eq!(got.n(), h.n() - 2 + x + y);
        prop_assert_eq!(got.n(), spec.result_size());
        prop_assert_eq!(G::from_small(&got), common::explosion(&G::from_small(&h), e.0, e.1, x, y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_matches_brute(phi in zoo_property(), k in 1usize..=4, g in host(0, 10)) {
        let cache = BasisCache::new();
        let basis = cache.count(&phi, k, &g).unwrap();
        prop_assert_eq!(&basis, &count_brute(&phi, k, &g, u64::MAX).unwrap());
        let want = common::indsub(common::oracle_property(phi.name()), k, &G::from_host(&g));
        prop_assert_eq!(basis, want.into());
    }

    #[test]
    fn negation_and_inversion(phi in zoo_property(), k in 1usize..=4, g in host(0, 10)) {
        count_negation_check(&phi, k, &g, u64::MAX).unwrap();
        count_inverse_check(&phi, k, &g, u64::MAX).unwrap();
        let inv = count_brute(&phi.invert(), k, &g, u64::MAX).unwrap();
        let want = common::indsub(common::oracle_property(phi.name()), k, &G::from_host(&g).complement());
        prop_assert_eq!(inv, want.into());
    }

    #[test]
    fn singleton_edges_survive_explosion(h in small_graph(2, 5), bound in 1usize..=3) {
        if let Some(e) = singleton_critical_edge(&h).unwrap() {
            let phi = PropertySpec::induced_free(vec![e.graph]).unwrap();
            let r = bounded_critical_check(&phi, &e.graph, e.edge, bound).unwrap();
            prop_assert!(r.is_consistent(), "{:?}", r.outcome);
        }
    }

    #[test]
    fn reduction_counts_independent_sets(g in bipartite_host(), k in 0usize..=3, which in 0usize..3) {
        let (phi, h) = cited().swap_remove(which);
        let crit = CriticalEdge { graph: h, edge: h.edges().next().unwrap(), in_complement: false };
        let got = count_independent_sets_via_reduction(&g, k, &phi, &crit, &Oracle::Brute { budget: u64::MAX }).unwrap();
        prop_assert_eq!(got.independent_sets, common::independent_sets(&G::from_host(&g), k).into());
    }

    #[test]
    fn truth_table_spectra(k in 3usize..=5, seed in any::<u64>()) {
        let cat = build_catalog(k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<bool> = (0..cat.len()).map(|_| rand::Rng::gen_bool(&mut rng, 0.3)).collect();
        let phi = PropertySpec::truth_table("random", &cat, &values).unwrap();
        let s = spectrum_report(&phi, k).unwrap();
        let oracle = common::f_vector(|g: &G| phi.evaluate(&g.to_small()).unwrap(), k);
        prop_assert_eq!(&s.f, &oracle);
        s.check_derivative_identities().unwrap();
        if s.hw > 0 {
            let w = witness_dense_graph(&hom_vector(&phi, k).unwrap(), &s).unwrap();
            prop_assert!(w.edge_count() + s.hw > pairs(k));
            prop_assert_eq!(w.n(), k);
        }
    }

    #[test]
    fn spectrum_json_round_trip(phi in zoo_property(), k in 1usize..=5) {
        let s = spectrum_report(&phi, k).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hardness_records_are_coherent(phi in zoo_property()) {
        let report = diagnose(&phi, 4).unwrap();
        for r in &report.records {
            prop_assert_eq!(r.d, pairs(r.k));
            prop_assert_eq!(r.beta, r.d as i64 - r.hw as i64);
            if r.hw > 0 {
                prop_assert!(r.witness_edges + r.hw > r.d);
                prop_assert!(r.witness_treewidth * r.k >= r.witness_edges);
                let w = SmallGraph::from_graph6(&r.witness_graph6).unwrap();
                prop_assert_eq!(w.edge_count(), r.witness_edges);
            }
        }
    }
}
