use std::cmp::Ordering;

use num_rational::Ratio;
use serde::Serialize;

use super::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, Rational};

/// An edge/vertex ratio compared by exact value.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Density {
    pub edges: usize,
    pub vertices: usize,
    #[serde(serialize_with = "rational::serialize", rename = "value")]
    value: Rational,
}

impl Density {
    /// Panics when `vertices` is zero.
    pub fn new(edges: usize, vertices: usize) -> Self {
        assert!(vertices >= 1, "density of an empty vertex set");
        Density { edges, vertices, value: Ratio::new(edges as i64, vertices as i64) }
    }

    pub fn of(g: &Graph, s: VertexSet) -> Self {
        Density::new(g.induced_edge_count(s), s.len())
    }

    pub fn value(&self) -> Rational {
        self.value
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

/// Maximum induced density together with a vertex set attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaxDensity {
    pub density: Density,
    pub witness: VertexSet,
}

/// m(g): the maximum of e(F)/v(F) over non-empty subgraphs F.
pub fn m_density(g: &Graph) -> MaxDensity {
    max_density_within(g, g.vertex_set()).expect("graphs have at least one vertex")
}

/// Maximum induced density over non-empty subsets of `s`, or `None` for empty `s`.
///
/// Dinkelbach iteration: with the current ratio a/b, a maximum-weight closure
/// (edges weigh b, vertices cost a) finds the set maximizing b·e(S) − a·|S|.
/// A positive optimum yields a strictly denser set; zero certifies optimality.
pub fn max_density_within(g: &Graph, s: VertexSet) -> Option<MaxDensity> {
    if s.is_empty() {
        return None;
    }
    let verts: Vec<usize> = s.iter().collect();
    let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(u, v)| s.contains(u) && s.contains(v)).collect();
    let mut best = MaxDensity { density: Density::new(edges.len(), verts.len()), witness: s };
    if edges.is_empty() {
        return Some(best);
    }
    let mut slot = [usize::MAX; crate::graph::MAX_ORDER];
    for (i, &v) in verts.iter().enumerate() {
        slot[v] = i;
    }
    loop {
        let (a, b) = (best.density.edges as i64, best.density.vertices as i64);
        let source = 0;
        let sink = 1;
        let edge_node = |k: usize| 2 + k;
        let vertex_node = |i: usize| 2 + edges.len() + i;
        let mut net = FlowNetwork::new(2 + edges.len() + verts.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            net.add_edge(source, edge_node(k), b);
            net.add_edge(edge_node(k), vertex_node(slot[u]), i64::MAX / 4);
            net.add_edge(edge_node(k), vertex_node(slot[v]), i64::MAX / 4);
        }
        for i in 0..verts.len() {
            net.add_edge(vertex_node(i), sink, a);
        }
        let cut = net.max_flow(source, sink);
        if edges.len() as i64 * b - cut <= 0 {
            return Some(best);
        }
        let side = net.source_side(source);
        let chosen = verts.iter().enumerate().filter(|&(i, _)| side[vertex_node(i)]).fold(0u32, |m, (_, &v)| m | 1 << v);
        let witness = VertexSet::from_mask(chosen);
        let density = Density::of(g, witness);
        debug_assert!(density > best.density);
        best = MaxDensity { density, witness };
    }
}

/// e(g)/v(g) = m(g).
pub fn is_balanced(g: &Graph) -> bool {
    Density::new(g.edge_count(), g.order()) == m_density(g).density
}

/// Balanced, and every proper non-empty subgraph is strictly sparser.
pub fn is_strictly_balanced(g: &Graph) -> bool {
    let m = m_density(g).density;
    if Density::new(g.edge_count(), g.order()) != m {
        return false;
    }
    let all = g.vertex_set();
    all.iter().all(|w| match max_density_within(g, all.difference(VertexSet::from_mask(1 << w))) {
        Some(sub) => sub.density < m,
        None => true,
    })
}
