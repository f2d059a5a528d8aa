//! The homomorphism vector of `(Φ, k)`: rationals `a(H)` with
//! `#IndSub(Φ, k, G) = Σ_H a(H)·#Hom(H, G)` for every graph `G`.
//!
//! Induced copies of each `k`-vertex class are strong embeddings divided by
//! automorphisms; strong embeddings expand into embeddings of edge supersets
//! with alternating signs; embeddings expand into homomorphisms from
//! quotients weighted by the partition-lattice Möbius function.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::canon::{canon_key, CanonKey};
use crate::catalog::{self, superset_multiplicity};
use crate::error::{Error, Result};
use crate::graph::{pairs, BitIter, HostGraph, SmallGraph};
use crate::homcount::count_hom;
use crate::par;
use crate::partition::{partitions_with_moebius, quotient};
use crate::properties::PropertySpec;
use crate::spectrum::Spectrum;

/// Largest `k` for which [`hom_vector`] runs (Bell(7) = 877 partitions per
/// class).
pub const MAX_HOM_K: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVector {
    k: usize,
    entries: BTreeMap<CanonKey, BigRational>,
}

/// One support entry in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomVectorRow {
    pub graph6: String,
    pub numerator: String,
    pub denominator: String,
}

impl HomVector {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Non-zero coefficients in canonical-key order.
    pub fn entries(&self) -> impl Iterator<Item = (&CanonKey, &BigRational)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `a(H)` for any graph `H` (zero off the support).
    pub fn get(&self, h: &SmallGraph) -> BigRational {
        self.entries
            .get(&canon_key(h))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `h̃_i = Σ_{K on k vertices, i edges} a(K)` for `i = 0..=d`.
    pub fn coefficient_sums(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); pairs(self.k) + 1];
        for (key, a) in &self.entries {
            if key.n() == self.k {
                out[key.edge_count()] += a;
            }
        }
        out
    }

    /// `Σ_H a(H)·#Hom(H, g)` as an exact rational.
    pub fn evaluate(&self, g: &HostGraph) -> Result<BigRational> {
        let support: Vec<(&CanonKey, &BigRational)> = self.entries.iter().collect();
        let terms = par::map(&support, |(key, a)| {
            count_hom(&key.graph(), g).map(|c| BigRational::from_integer(BigInt::from(c)) * *a)
        });
        terms.into_iter().sum()
    }

    /// Report rows sorted by edge count, then graph6.
    pub fn rows(&self) -> Vec<HomVectorRow> {
        let mut rows: Vec<(usize, HomVectorRow)> = self
            .entries
            .iter()
            .map(|(key, a)| {
                (
                    key.edge_count(),
                    HomVectorRow {
                        graph6: key.graph().to_graph6(),
                        numerator: a.numer().to_string(),
                        denominator: a.denom().to_string(),
                    },
                )
            })
            .collect();
        rows.sort_by(|a, b| (a.0, &a.1.graph6).cmp(&(b.0, &b.1.graph6)));
        rows.into_iter().map(|(_, r)| r).collect()
    }

    /// Rebuilds a vector from report rows.
    pub fn from_rows(k: usize, rows: &[HomVectorRow]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for r in rows {
            let g = SmallGraph::from_graph6(&r.graph6)?;
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
            };
            let den = parse(&r.denominator)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            entries.insert(canon_key(&g), BigRational::new(parse(&r.numerator)?, den));
        }
        Ok(HomVector { k, entries })
    }
}

/// `Σ_{A ⊆ E(K)} (-1)^{|E(K)|-|A|} Φ(K[A])`: the signed count of spanning
/// subgraphs of `K` satisfying `Φ`.
fn signed_subgraph_sum(phi: &PropertySpec, k: &SmallGraph) -> Result<i64> {
    let edges: Vec<(usize, usize)> = k.edges().collect();
    let m = edges.len();
    let mut total = 0i64;
    for sub in 0u64..1 << m {
        let mut g = SmallGraph::empty(k.n())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if sub >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if phi.evaluate(&g)? {
            total += if (m - sub.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// The homomorphism vector of `(Φ, k)`.
pub fn hom_vector(phi: &PropertySpec, k: usize) -> Result<HomVector> {
    if k == 0 || k > MAX_HOM_K {
        return Err(Error::too_large("hom-vector k", k, MAX_HOM_K));
    }
    let cat = catalog::shared(k)?;
    // coefficient of #Emb(K, ·) for each k-vertex class K
    let emb = par::map(cat.entries(), |e| {
        signed_subgraph_sum(phi, &e.graph)
            .map(|s| BigRational::new(BigInt::from(s), BigInt::from(e.automorphisms)))
    });
    let emb: Vec<(SmallGraph, BigRational)> = cat
        .entries()
        .iter()
        .zip(emb)
        .map(|(e, c)| c.map(|c| (e.graph, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let partitions = partitions_with_moebius(k)?;
    let partials = par::map(&emb, |(g, c)| {
        let mut acc: HashMap<CanonKey, BigRational> = HashMap::new();
        for (rho, mu) in &partitions {
            // a block containing an edge gives a looped quotient, which has no
            // homomorphism into a simple host
            if rho.block_masks().iter().any(|&b| BitIter(b).any(|v| g.neighbors(v) & b != 0)) {
                continue;
            }
            let q = quotient(g, rho).expect("partition matches graph");
            let w = c * BigRational::from_integer(BigInt::from(*mu));
            *acc.entry(canon_key(&q)).or_insert_with(BigRational::zero) += w;
        }
        acc
    });
    let mut entries: BTreeMap<CanonKey, BigRational> = BTreeMap::new();
    for part in partials {
        for (key, v) in part {
            *entries.entry(key).or_insert_with(BigRational::zero) += v;
        }
    }
    entries.retain(|_, v| !v.is_zero());
    Ok(HomVector { k, entries })
}

/// `a(K) = Σ_{H ∈ Φ_k} #Aut(H)^{-1}·(-1)^{|E(K)|-|E(H)|}·#{K ⊇ H}` for a
/// `k`-vertex graph `K`, computed directly from edge-superset counts.
pub fn k_vertex_coefficient(phi: &PropertySpec, k: usize, target: &SmallGraph) -> Result<BigRational> {
    if target.n() != k {
        return Err(Error::InvalidGraph(format!(
            "expected a {k}-vertex graph, got {} vertices",
            target.n()
        )));
    }
    let cat = catalog::shared(k)?;
    let e_k = target.edge_count();
    let mut total = BigRational::zero();
    for e in cat.entries() {
        if e.edge_count() > e_k || !phi.evaluate(&e.graph)? {
            continue;
        }
        let mult = superset_multiplicity(&e.graph, target)?;
        if mult == 0 {
            continue;
        }
        let sign = if (e_k - e.edge_count()).is_multiple_of(2) { 1 } else { -1 };
        total += BigRational::new(BigInt::from(sign * mult as i64), BigInt::from(e.automorphisms));
    }
    Ok(total)
}

/// A `k`-vertex support graph with at least `d - hw + 1` edges, choosing the
/// densest one (ties broken by canonical order).
pub fn witness_dense_graph(hv: &HomVector, spectrum: &Spectrum) -> Result<SmallGraph> {
    if spectrum.trivially_false() {
        return Err(Error::Precondition(format!(
            "property is false on every {}-vertex graph",
            spectrum.k
        )));
    }
    let bound = spectrum.d + 1 - spectrum.hw;
    hv.entries
        .keys()
        .filter(|key| key.n() == hv.k && key.edge_count() >= bound)
        .max_by(|a, b| a.edge_count().cmp(&b.edge_count()).then(b.cmp(a)))
        .map(CanonKey::graph)
        .ok_or_else(|| {
            Error::Consistency(format!(
                "no {}-vertex support graph with at least {bound} edges",
                hv.k
            ))
        })
}

/// `k!·h̃`, to be compared with the h-vector.
pub fn scaled_coefficient_sums(hv: &HomVector) -> Vec<BigRational> {
    let fact = BigRational::from_integer(BigInt::from(catalog::factorial(hv.k)));
    hv.coefficient_sums().into_iter().map(|x| x * &fact).collect()
}

/// Whether every coefficient is an integer multiple of `1/k!`.
pub fn denominators_divide_factorial(hv: &HomVector) -> bool {
    let fact = BigInt::from(catalog::factorial(hv.k));
    hv.entries.values().all(|a| (&fact % a.denom()).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn edge_indicator_and_independent_pairs() {
        let edge = PropertySpec::custom("is-an-edge", Default::default(), |g| g.edge_count() == 1 && g.n() == 2);
        let hv = hom_vector(&edge, 2).unwrap();
        assert_eq!(hv.support_len(), 1);
        assert_eq!(hv.get(&SmallGraph::complete(2).unwrap()), q(1, 2));

        let hv = hom_vector(&PropertySpec::no_edges(), 2).unwrap();
        assert_eq!(hv.get(&SmallGraph::empty(2).unwrap()), q(1, 2));
        assert_eq!(hv.get(&SmallGraph::empty(1).unwrap()), q(-1, 2));
        assert_eq!(hv.get(&SmallGraph::complete(2).unwrap()), q(-1, 2));
    }

    #[test]
    fn false_has_empty_support() {
        assert!(hom_vector(&PropertySpec::always_false(), 4).unwrap().is_empty());
        let k4 = SmallGraph::complete(4).unwrap();
        assert!(k_vertex_coefficient(&PropertySpec::always_false(), 4, &k4).unwrap().is_zero());
    }

    #[test]
    fn independent_set_top_coefficient() {
        for k in 1..=4 {
            let kk = SmallGraph::complete(k).unwrap();
            let a = k_vertex_coefficient(&PropertySpec::no_edges(), k, &kk).unwrap();
            let d = pairs(k);
            let want = q(if d.is_multiple_of(2) { 1 } else { -1 }, catalog::factorial(k) as i64);
            assert_eq!(a, want);
        }
    }

    #[test]
    fn closed_form_matches_pipeline_at_four() {
        let cat = catalog::shared(4).unwrap();
        for phi in crate::properties::builtin_zoo() {
            let hv = hom_vector(&phi, 4).unwrap();
            for e in cat.entries() {
                assert_eq!(
                    k_vertex_coefficient(&phi, 4, &e.graph).unwrap(),
                    hv.get(&e.graph),
                    "{} on {:?}",
                    phi.name(),
                    e.graph
                );
            }
        }
    }

    #[test]
    fn rows_round_trip() {
        let hv = hom_vector(&PropertySpec::connected(), 4).unwrap();
        let rows = hv.rows();
        assert_eq!(HomVector::from_rows(4, &rows).unwrap(), hv);
        let edges: Vec<usize> = rows
            .iter()
            .map(|r| SmallGraph::from_graph6(&r.graph6).unwrap().edge_count())
            .collect();
        assert!(edges.windows(2).all(|w| w[0] <= w[1]));
        assert!(denominators_divide_factorial(&hv));
    }
}
