//! Brute-force oracles shared by the integration tests. They use only the
//! graph's edge list and plain enumeration, never the library's algorithms.
#![allow(dead_code)]

use itertools::Itertools;
use num_rational::Ratio;
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uppertail::{Graph, VertexSet};

pub type Q = Ratio<i64>;

pub fn q(a: i64, b: i64) -> Q {
    Ratio::new(a, b)
}

pub fn set(labels: &str) -> VertexSet {
    VertexSet::parse_labels(labels).unwrap()
}

pub fn graph(order: usize, one_based: &[(usize, usize)]) -> Graph {
    let e: Vec<_> = one_based.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edges(order, &e).unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.order()]; g.order()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Injective maps V(pattern) → V(host) sending edges to edges.
pub fn injections(pattern: &Graph, host: &Graph) -> u64 {
    fn go(i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, pa: &[Vec<bool>], ha: &[Vec<bool>]) -> u64 {
        if i == pa.len() {
            return 1;
        }
        let mut total = 0;
        for h in 0..ha.len() {
            if used[h] || (0..i).any(|j| pa[i][j] && !ha[h][map[j]]) {
                continue;
            }
            used[h] = true;
            map.push(h);
            total += go(i + 1, map, used, pa, ha);
            map.pop();
            used[h] = false;
        }
        total
    }
    if pattern.order() > host.order() {
        return 0;
    }
    go(0, &mut Vec::new(), &mut vec![false; host.order()], &adjacency(pattern), &adjacency(host))
}

pub fn aut(g: &Graph) -> u64 {
    injections(g, g)
}

/// max Σf over f ∈ {0, ½, 1}^V with f(u) + f(v) ≤ 1 on every edge.
pub fn alpha_brute(g: &Graph) -> Q {
    let n = g.order();
    let edges = g.edges();
    let mut best = 0i64;
    for code in 0..3u32.pow(n as u32) {
        let mut f = vec![0i64; n];
        let mut c = code;
        for x in f.iter_mut() {
            *x = (c % 3) as i64;
            c /= 3;
        }
        if edges.iter().all(|&(u, v)| f[u] + f[v] <= 2) {
            best = best.max(f.iter().sum());
        }
    }
    q(best, 2)
}

pub fn subgraph_on_edges(chosen: &[(usize, usize)]) -> Graph {
    let verts: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).sorted().dedup().collect();
    let pos = |x: usize| verts.iter().position(|&y| y == x).unwrap();
    Graph::from_edges(verts.len(), &chosen.iter().map(|&(u, v)| (pos(u), pos(v))).collect::<Vec<_>>()).unwrap()
}

pub fn mu_ln(n: u64, v: usize, e: usize, aut: u64, p: f64) -> f64 {
    let falling: f64 = (0..v as u64).map(|i| ((n - i) as f64).ln()).sum();
    falling - (aut as f64).ln() + e as f64 * p.ln()
}

/// Every subgraph without isolated vertices, as (order, edges, aut, α*).
pub fn edge_subgraphs(g: &Graph) -> Vec<(usize, usize, u64, Q)> {
    let edges = g.edges();
    (1..=edges.len())
        .flat_map(|k| edges.iter().copied().combinations(k))
        .map(|chosen| {
            let s = subgraph_on_edges(&chosen);
            (s.order(), s.edge_count(), aut(&s), alpha_brute(&s))
        })
        .collect()
}

pub fn phi_brute(subs: &[(usize, usize, u64, Q)], n: u64, p: f64) -> f64 {
    subs.iter().map(|&(v, e, a, _)| mu_ln(n, v, e, a, p)).fold(f64::INFINITY, f64::min)
}

/// ln of M(n, p): the small-p minimum of μ^{1/α*} or ln(n²p^Δ).
pub fn m_brute(g: &Graph, subs: &[(usize, usize, u64, Q)], n: u64, p: f64) -> f64 {
    let delta = g.max_degree() as f64;
    if p < (n as f64).powf(-1.0 / delta) {
        subs.iter()
            .map(|&(v, e, a, al)| mu_ln(n, v, e, a, p) * *al.denom() as f64 / *al.numer() as f64)
            .fold(f64::INFINITY, f64::min)
    } else {
        2.0 * (n as f64).ln() + delta * p.ln()
    }
}

pub fn induced_edges(g: &Graph, s: u32) -> usize {
    g.edges().iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count()
}

/// Vertex subsets of maximum density.
pub fn primal_brute(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let dens: Vec<(u32, Q)> =
        (1u32..1 << n).map(|s| (s, q(induced_edges(g, s) as i64, s.count_ones() as i64))).collect();
    let m = dens.iter().map(|d| d.1).max().unwrap();
    dens.into_iter().filter(|d| d.1 == m).map(|d| d.0).collect()
}

pub fn covers_brute(members: &[u32], lower: u32) -> Vec<u32> {
    let above: Vec<u32> = members.iter().copied().filter(|&b| b != lower && b & lower == lower).collect();
    above.iter().copied().filter(|&b| !above.iter().any(|&c| c != b && c & b == c)).collect()
}

/// min over primal G and all non-empty subsets S of its covers of |∪S| / |S|.
pub fn zeta_brute(g: &Graph) -> Option<Q> {
    let members = primal_brute(g);
    let mut best: Option<Q> = None;
    for &lower in &members {
        let covers = covers_brute(&members, lower);
        for k in 1..=covers.len() {
            for subset in covers.iter().combinations(k) {
                let union = subset.iter().fold(lower, |a, &&b| a | b);
                let val = q(union.count_ones() as i64, k as i64);
                best = Some(best.map_or(val, |b: Q| b.min(val)));
            }
        }
    }
    best
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = 1u32;
    loop {
        let next = edges.iter().fold(seen, |s, &(u, v)| {
            if s >> u & 1 == 1 || s >> v & 1 == 1 {
                s | 1 << u | 1 << v
            } else {
                s
            }
        });
        if next == seen {
            return seen.count_ones() as usize == n;
        }
        seen = next;
    }
}

/// Every labeled connected graph on `n` vertices.
pub fn all_connected(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            connected(n, &e).then(|| Graph::from_edges(n, &e).unwrap())
        })
        .collect()
}

/// Connected graphs with 2..=max_order vertices: a random spanning tree plus random extra edges.
pub fn random_connected(count: usize, max_order: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = 2 + (rng.next_u32() as usize % (max_order - 1));
            let mut e: Vec<(usize, usize)> = (1..n).map(|v| (rng.next_u32() as usize % v, v)).collect();
            let density = rng.next_u32() % 100;
            for (u, v) in (0..n).tuple_combinations() {
                if !e.contains(&(u, v)) && rng.next_u32() % 100 < density {
                    e.push((u, v));
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
        .collect()
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e).unwrap()
}

/// Exact Var X_H in G(n, p): a sum over every partial identification of a
/// second labelled copy with the first.
pub fn exact_variance(h: &Graph, n: u64, p: f64) -> f64 {
    let v = h.order();
    let adj = adjacency(h);
    let edges = h.edges();
    let e = edges.len() as i32;
    let mut total = 0.0;
    // image[b] = Some(a) when vertex b of the second copy sits on vertex a of the first
    for image in (0..v).map(|_| 0..=v).multi_cartesian_product() {
        let used: Vec<usize> = image.iter().copied().filter(|&a| a < v).collect();
        if used.iter().duplicates().next().is_some() {
            continue;
        }
        let shared = edges
            .iter()
            .filter(|&&(x, y)| image[x] < v && image[y] < v && adj[image[x]][image[y]])
            .count() as i32;
        if shared == 0 {
            continue;
        }
        let placements: f64 = (0..(2 * v - used.len()) as u64).map(|i| (n - i) as f64).product();
        total += placements * (p.powi(2 * e - shared) - p.powi(2 * e));
    }
    total / (aut(h) as f64).powi(2)
}
