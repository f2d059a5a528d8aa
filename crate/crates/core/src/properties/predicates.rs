//! Structural predicates on small graphs.

use std::collections::HashMap;

use crate::canon::{canon_key, CanonKey};
use crate::graph::{BitIter, SmallGraph};

pub fn is_bipartite(g: &SmallGraph) -> bool {
    let all = g.vertex_mask();
    let mut done = 0u16;
    while done != all {
        let s = (all & !done).trailing_zeros() as usize;
        let mut side = [1u16 << s, 0];
        let mut frontier = 1u16 << s;
        let mut layer = 0;
        while frontier != 0 {
            let mut next = 0u16;
            for v in BitIter(frontier) {
                next |= g.neighbors(v);
            }
            if next & side[layer] != 0 {
                return false;
            }
            layer ^= 1;
            next &= !side[layer];
            side[layer] |= next;
            frontier = next;
        }
        done |= side[0] | side[1];
    }
    true
}

pub fn is_triangle_free(g: &SmallGraph) -> bool {
    g.edges().all(|(u, v)| g.neighbors(u) & g.neighbors(v) == 0)
}

/// Repeatedly deletes simplicial vertices; the graph is chordal iff this
/// empties it.
pub fn is_chordal(g: &SmallGraph) -> bool {
    let mut alive = g.vertex_mask();
    'outer: while alive != 0 {
        for v in BitIter(alive) {
            let nb = g.neighbors(v) & alive;
            if BitIter(nb).all(|u| nb & !(1 << u) & !g.neighbors(u) == 0) {
                alive &= !(1 << v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Hammer–Simeone degree-sequence test.
pub fn is_split(g: &SmallGraph) -> bool {
    let mut deg = g.degrees();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = deg.iter().enumerate().take_while(|&(i, &d)| d >= i).count();
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

/// Whether `g` has an induced cycle of odd length at least 5.
pub fn has_odd_hole(g: &SmallGraph) -> bool {
    fn extend(g: &SmallGraph, start: usize, path: &mut Vec<usize>, used: u16, banned: u16) -> bool {
        let last = *path.last().unwrap();
        let len = path.len();
        let mut inner = 0u16;
        for &p in &path[1..len - 1] {
            inner |= g.neighbors(p);
        }
        // w must not see any path vertex other than `last` and possibly `start`
        for w in BitIter(g.neighbors(last) & !used & !banned & !inner) {
            if g.has_edge(w, start) {
                // closes the induced cycle start .. last, w
                if (len + 1) % 2 == 1 && len + 1 >= 5 {
                    return true;
                }
                continue;
            }
            path.push(w);
            if extend(g, start, path, used | (1 << w), banned) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in 0..g.n() {
        let below = (1u16 << s) - 1;
        for v1 in BitIter(g.neighbors(s) & !below) {
            let mut path = vec![s, v1];
            if extend(g, s, &mut path, (1 << s) | (1 << v1), below) {
                return true;
            }
        }
    }
    false
}

/// Perfect iff there is no odd hole and no odd antihole.
pub fn is_perfect(g: &SmallGraph) -> bool {
    if has_odd_hole(g) {
        return false;
    }
    let c = g.complement().expect("predicates only see simple graphs");
    !has_odd_hole(&c)
}

/// Whether some vertex subset of `g` induces a copy of `f`.
pub fn contains_induced(g: &SmallGraph, f: &SmallGraph, f_key: &CanonKey) -> bool {
    let k = f.n();
    if k > g.n() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let m = f.edge_count();
    let all = g.vertex_mask() as u32;
    let mut sub: u32 = (1 << k) - 1;
    while sub <= all {
        if sub & !all == 0 {
            let h = g.induced(sub as u16);
            if h.edge_count() == m && canon_key(&h) == *f_key {
                return true;
            }
        }
        // Gosper's hack: next mask with the same popcount
        let c = sub & sub.wrapping_neg();
        let r = sub + c;
        sub = (((r ^ sub) >> 2) / c) | r;
    }
    false
}

/// Whether `g` contains `f` as a (not necessarily induced) subgraph.
pub fn contains_subgraph(g: &SmallGraph, f: &SmallGraph) -> bool {
    if f.n() > g.n() || f.edge_count() > g.edge_count() {
        return false;
    }
    // map the pattern's vertices in descending-degree order
    let mut order: Vec<usize> = (0..f.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));
    let mut image = [usize::MAX; 16];
    fn rec(g: &SmallGraph, f: &SmallGraph, order: &[usize], i: usize, image: &mut [usize; 16], used: u16) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut cand = g.vertex_mask() & !used;
        for &u in &order[..i] {
            if f.has_edge(u, v) {
                cand &= g.neighbors(image[u]);
            }
        }
        for w in BitIter(cand) {
            if g.degree(w) < f.degree(v) {
                continue;
            }
            image[v] = w;
            if rec(g, f, order, i + 1, image, used | (1 << w)) {
                return true;
            }
        }
        image[v] = usize::MAX;
        false
    }
    rec(g, f, &order, 0, &mut image, 0)
}

/// Deletes vertices of degree at most one and suppresses vertices of degree
/// two; neither changes planarity.
fn reduce_for_planarity(mut g: SmallGraph) -> SmallGraph {
    loop {
        let Some(v) = (0..g.n()).find(|&v| g.degree(v) <= 2) else {
            return g;
        };
        if g.degree(v) == 2 {
            let mut it = BitIter(g.neighbors(v));
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            g.add_edge(a, b);
        }
        g = g.remove_vertex(v);
    }
}

/// Planarity by Kuratowski–Wagner: a reduced graph (minimum degree three) is
/// non-planar iff it is `K_5` or `K_{3,3}`, or stays non-planar after deleting
/// some edge. Intended for the small graphs this crate evaluates; cost grows
/// quickly beyond ~10 vertices.
pub fn is_planar(g: &SmallGraph) -> bool {
    let k5 = canon_key(&SmallGraph::complete(5).unwrap());
    let k33 = canon_key(&SmallGraph::complete_bipartite(3, 3).unwrap());
    fn nonplanar(g: SmallGraph, k5: &CanonKey, k33: &CanonKey, memo: &mut HashMap<CanonKey, bool>) -> bool {
        let g = reduce_for_planarity(g);
        let n = g.n();
        let m = g.edge_count();
        if n < 5 {
            return false;
        }
        if m > 3 * n - 6 {
            return true;
        }
        if is_triangle_free(&g) && m > 2 * n - 4 {
            return true;
        }
        let key = canon_key(&g);
        if key == *k5 || key == *k33 {
            return true;
        }
        if let Some(&ans) = memo.get(&key) {
            return ans;
        }
        let edges: Vec<_> = g.edges().collect();
        let ans = edges.into_iter().any(|(u, v)| {
            let mut h = g;
            h.remove_edge(u, v);
            nonplanar(h, k5, k33, memo)
        });
        memo.insert(key, ans);
        ans
    }
    !nonplanar(*g, &k5, &k33, &mut HashMap::new())
}
