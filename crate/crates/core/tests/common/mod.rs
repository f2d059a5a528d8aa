//! Brute-force oracles written directly from the definitions, sharing no
//! code with the library beyond reading adjacency.
#![allow(dead_code)]

use std::collections::HashSet;

use indsub_core::{HostGraph, SmallGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Adjacency as bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl G {
    pub fn empty(n: usize) -> G {
        G { n, adj: vec![0; n] }
    }

    pub fn from_small(g: &SmallGraph) -> G {
        let mut o = G::empty(g.n());
        for i in 0..g.n() {
            for j in 0..g.n() {
                if i != j && g.has_edge(i, j) {
                    o.adj[i] |= 1 << j;
                }
            }
        }
        o
    }

    pub fn from_host(g: &HostGraph) -> G {
        let mut o = G::empty(g.n());
        for i in 0..g.n() {
            for j in 0..g.n() {
                if i != j && g.adjacent(i, j) {
                    o.adj[i] |= 1 << j;
                }
            }
        }
        o
    }

    /// Labelled graph on `n` vertices whose edge `{i, j}` (i < j, row-major
    /// order) is present iff the corresponding bit of `bits` is set.
    pub fn from_bits(n: usize, bits: u64) -> G {
        let mut o = G::empty(n);
        let mut p = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> p & 1 == 1 {
                    o.add(i, j);
                }
                p += 1;
            }
        }
        o
    }

    pub fn to_small(&self) -> SmallGraph {
        SmallGraph::from_edges(self.n, &self.edges()).unwrap()
    }

    pub fn add(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.edges().len()
    }

    pub fn induced(&self, verts: &[usize]) -> G {
        let mut o = G::empty(verts.len());
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                if self.has(verts[a], verts[b]) {
                    o.add(a, b);
                }
            }
        }
        o
    }

    pub fn complement(&self) -> G {
        let mut o = G::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has(i, j) {
                    o.add(i, j);
                }
            }
        }
        o
    }

    pub fn bits(&self) -> u64 {
        let mut b = 0u64;
        let mut p = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has(i, j) {
                    b |= 1 << p;
                }
                p += 1;
            }
        }
        b
    }

    pub fn permuted(&self, perm: &[usize]) -> G {
        let mut o = G::empty(self.n);
        for (i, j) in self.edges() {
            o.add(perm[i], perm[j]);
        }
        o
    }
}

pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn is_connected(g: &G) -> bool {
    if g.n == 0 {
        return true;
    }
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        for v in 0..g.n {
            if seen >> v & 1 == 1 {
                next |= g.adj[v];
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == g.n
}

/// Tries every 2-colouring.
pub fn is_bipartite(g: &G) -> bool {
    (0u32..1 << g.n).any(|c| g.edges().iter().all(|&(i, j)| (c >> i & 1) != (c >> j & 1)))
}

pub fn is_triangle_free(g: &G) -> bool {
    for a in 0..g.n {
        for b in a + 1..g.n {
            for c in b + 1..g.n {
                if g.has(a, b) && g.has(b, c) && g.has(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `g` itself is a cycle through all its vertices.
pub fn is_cycle(g: &G) -> bool {
    g.n >= 3 && g.adj.iter().all(|a| a.count_ones() == 2) && is_connected(g)
}

fn vertex_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Induced cycle lengths present in `g`.
pub fn induced_cycle_lengths(g: &G) -> HashSet<usize> {
    vertex_subsets(g.n)
        .filter(|s| is_cycle(&g.induced(s)))
        .map(|s| s.len())
        .collect()
}

pub fn is_chordal(g: &G) -> bool {
    induced_cycle_lengths(g).iter().all(|&l| l == 3)
}

/// Tries every vertex subset as the clique side.
pub fn is_split(g: &G) -> bool {
    vertex_subsets(g.n).any(|c| {
        let inside: Vec<usize> = c.clone();
        let outside: Vec<usize> = (0..g.n).filter(|v| !c.contains(v)).collect();
        g.induced(&inside).m() == inside.len() * inside.len().saturating_sub(1) / 2 && g.induced(&outside).m() == 0
    })
}

pub fn clique_number(g: &G) -> usize {
    vertex_subsets(g.n)
        .filter(|s| g.induced(s).m() == s.len() * s.len().saturating_sub(1) / 2)
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Smallest `c` admitting a proper colouring, by backtracking.
pub fn chromatic_number(g: &G) -> usize {
    fn colour(g: &G, v: usize, c: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n {
            return true;
        }
        for x in 0..c {
            if (0..v).all(|u| !g.has(u, v) || col[u] != x) {
                col[v] = x;
                if colour(g, v + 1, c, col) {
                    return true;
                }
            }
        }
        false
    }
    (0..=g.n).find(|&c| colour(g, 0, c, &mut vec![0; g.n])).unwrap()
}

/// Clique number equals chromatic number on every induced subgraph.
pub fn is_perfect(g: &G) -> bool {
    vertex_subsets(g.n).all(|s| {
        let h = g.induced(&s);
        clique_number(&h) == chromatic_number(&h)
    })
}

/// Planarity for at most 5 vertices, where `K_5` is the only obstruction.
pub fn is_planar_small(g: &G) -> bool {
    assert!(g.n <= 5, "planarity oracle covers at most 5 vertices");
    !(g.n == 5 && g.m() == 10)
}

/// Oracle predicate for a built-in property name.
pub fn oracle_property(name: &str) -> fn(&G) -> bool {
    match name {
        "true" => |_| true,
        "false" => |_| false,
        "no-edges" => |g| g.m() == 0,
        "connected" => is_connected,
        "bipartite" => is_bipartite,
        "triangle-free" => is_triangle_free,
        "edge-count-even" => |g| g.m() % 2 == 0,
        "chordal" => is_chordal,
        "split" => is_split,
        "perfect" => is_perfect,
        "planar" => is_planar_small,
        other => panic!("no oracle for {other}"),
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Labelled graphs on `[k]` with `i` edges satisfying `phi`, for each `i`.
pub fn f_vector(phi: impl Fn(&G) -> bool, k: usize) -> Vec<BigInt> {
    let d = k * k.saturating_sub(1) / 2;
    let mut f = vec![BigInt::zero(); d + 1];
    for bits in 0u64..1 << d {
        let g = G::from_bits(k, bits);
        if phi(&g) {
            f[bits.count_ones() as usize] += 1;
        }
    }
    f
}

pub fn h_vector(f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    (0..=d)
        .map(|l| {
            (0..=l)
                .map(|i| {
                    let t = binomial(d - i, l - i) * &f[i];
                    if (l - i) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}

/// `D^j 𝔣` at `x` for `𝔣(x) = Σ f_i x^{d-i}`.
pub fn f_poly_derivative(f: &[BigInt], j: usize, x: &BigRational) -> BigRational {
    let d = f.len() - 1;
    let mut total = BigRational::zero();
    for (i, fi) in f.iter().enumerate() {
        let p = d - i;
        if p < j {
            continue;
        }
        let mut falling = BigInt::one();
        for t in 0..j {
            falling *= p - t;
        }
        let mut pow = BigRational::one();
        for _ in 0..p - j {
            pow *= x;
        }
        total += BigRational::from_integer(falling * fi) * pow;
    }
    total
}

/// Determinant by fraction-free elimination.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let factor = &a[r][c] / &a[c][c];
            for cc in c..n {
                let t = &factor * &a[c][cc];
                a[r][cc] -= t;
            }
        }
    }
    det
}

/// Unique solvability of the Hermite-Birkhoff problem with conditions
/// `rows[0]` at `-1` and `rows[1]` at `0`, by the interpolation
/// determinant over the monomial basis.
pub fn birkhoff_determinant_nonzero(rows: &[Vec<bool>; 2]) -> bool {
    let d = rows[0].len() - 1;
    let nodes = [-BigRational::one(), BigRational::zero()];
    let mut m = Vec::new();
    for (node, row) in nodes.iter().zip(rows) {
        for (j, &on) in row.iter().enumerate() {
            if !on {
                continue;
            }
            let line = (0..=d)
                .map(|p| {
                    if p < j {
                        return BigRational::zero();
                    }
                    let mut falling = BigInt::one();
                    for t in 0..j {
                        falling *= p - t;
                    }
                    let mut pow = BigRational::one();
                    for _ in 0..p - j {
                        pow *= node;
                    }
                    BigRational::from_integer(falling) * pow
                })
                .collect();
            m.push(line);
        }
    }
    assert_eq!(m.len(), d + 1);
    !determinant(m).is_zero()
}

/// Number of edge-preserving maps `V(h) → V(g)`.
pub fn hom_count(h: &G, g: &G) -> u128 {
    let mut total = 0u128;
    let mut image = vec![0usize; h.n];
    let maps = (g.n as u128).pow(h.n as u32);
    for code in 0..maps {
        let mut c = code;
        for v in image.iter_mut() {
            *v = (c % g.n as u128) as usize;
            c /= g.n as u128;
        }
        if h.edges().iter().all(|&(a, b)| g.has(image[a], image[b])) {
            total += 1;
        }
    }
    if h.n == 0 {
        1
    } else {
        total
    }
}

/// Independent `k`-subsets.
pub fn independent_sets(g: &G, k: usize) -> u64 {
    subsets_of_size(g.n, k).iter().filter(|s| g.induced(s).m() == 0).count() as u64
}

/// `#IndSub(phi, k, g)` by enumeration.
pub fn indsub(phi: fn(&G) -> bool, k: usize, g: &G) -> u64 {
    subsets_of_size(g.n, k).iter().filter(|s| phi(&g.induced(s))).count() as u64
}

/// Number of unlabelled graphs on `k` vertices, by marking whole orbits.
pub fn class_count(k: usize) -> usize {
    let d = k * k.saturating_sub(1) / 2;
    let perms = permutations(k);
    let mut seen = vec![false; 1 << d];
    let mut classes = 0;
    for bits in 0u64..1 << d {
        if seen[bits as usize] {
            continue;
        }
        classes += 1;
        let g = G::from_bits(k, bits);
        for p in &perms {
            seen[g.permuted(p).bits() as usize] = true;
        }
    }
    classes
}

/// Whether `u` and `v` have identical neighbourhoods.
pub fn false_twins(g: &G, u: usize, v: usize) -> bool {
    g.adj[u] == g.adj[v]
}

/// `H_{u,v}^{x,y}` built vertex by vertex: the other vertices, then `x`
/// copies of `u`, then `y` copies of `v`, without the edge `{u, v}`.
pub fn explosion(h: &G, u: usize, v: usize, x: usize, y: usize) -> G {
    let mut origin: Vec<usize> = (0..h.n).filter(|&w| w != u && w != v).collect();
    origin.extend(std::iter::repeat_n(u, x));
    origin.extend(std::iter::repeat_n(v, y));
    let mut g = G::empty(origin.len());
    for a in 0..origin.len() {
        for b in a + 1..origin.len() {
            let (p, q) = (origin[a], origin[b]);
            let uv = (p == u && q == v) || (p == v && q == u);
            if p != q && !uv && h.has(p, q) {
                g.add(a, b);
            }
        }
    }
    g
}
