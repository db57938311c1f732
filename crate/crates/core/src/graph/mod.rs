//! Small simple graphs stored as one adjacency bit mask per vertex.
//!
//! External vertex labels are 1-based (as in edge-list files and reports);
//! everything inside the crate indexes vertices from 0.

mod automorphism;
mod embed;
mod parse;
mod refine;
mod scan;

use std::fmt;

use crate::error::{Error, Result};

pub use automorphism::{
    automorphism_count, automorphism_count_exhaustive, count_copies, self_embedding_count, EXHAUSTIVE_MAX_ORDER,
};
pub(crate) use automorphism::count_copies_limited;
pub use embed::{count_embeddings, find_embedding, Host, SearchLimits, SearchPlan, TreeVolume};
pub use parse::graph_from_edge_list;
pub(crate) use refine::refine_colors;
pub(crate) use scan::scan_induced;

/// Hard cap on the number of vertices so that an adjacency row fits in a `u32`.
pub const MAX_ORDER: usize = 32;

/// Iterates the indices of the set bits of `mask`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u32);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// A set of vertices of some host graph, as a bit mask over 0-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        VertexSet(mask)
    }

    /// All of `0..order`.
    pub fn full(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        if order == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << order) - 1)
        }
    }

    /// Builds a set from 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &l in labels {
            if l == 0 || l > MAX_ORDER {
                return Err(Error::invalid(format!("vertex label {l} outside 1..={MAX_ORDER}")));
            }
            mask |= 1 << (l - 1);
        }
        Ok(VertexSet(mask))
    }

    /// Parses `"1234"` (single-digit labels) or `"1,2,10"` (comma separated).
    pub fn parse_labels(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::invalid("empty vertex list"));
        }
        let labels: Vec<usize> = if text.contains(',') || text.contains(' ') {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad vertex label {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::invalid(format!("bad vertex label {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_labels(&labels)
    }

    #[inline]
    pub const fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset_of(self, other: VertexSet) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// 0-based indices in ascending order.
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    /// 1-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Concatenated labels when all are single digits (`"1234"`), comma
    /// separated otherwise (`"1,2,10"`).
    pub fn label_string(self) -> String {
        let labels = self.labels();
        if labels.iter().all(|&l| l <= 9) {
            labels.iter().map(|l| l.to_string()).collect()
        } else {
            labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label_string())
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label_string())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({})", self.label_string())
    }
}

/// Small labeled simple graph with at most [`MAX_ORDER`] vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u32>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        if order > MAX_ORDER {
            return Err(Error::TooManyVertices(order));
        }
        Ok(Graph { adj: vec![0; order], edges: 0 })
    }

    /// Builds a graph from 0-based edges; duplicates collapse.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `{u, v}`; returns whether the edge was new.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("edge {{{u}, {v}}} outside 0..{n}")));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {}", u + 1)));
        }
        if self.adj[u] & (1 << v) != 0 {
            return Ok(false);
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.edges += 1;
        Ok(true)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Adjacency row of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.order() {
            for v in Bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Number of edges with both ends in `s`.
    #[inline]
    pub fn induced_edge_count(&self, s: VertexSet) -> usize {
        let m = s.mask();
        let twice: u32 = s.iter().map(|v| (self.adj[v] & m).count_ones()).sum();
        (twice / 2) as usize
    }

    /// `g[s]`, relabeled to `0..|s|` preserving the order of the original indices.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::invalid("induced subgraph of an empty vertex set"));
        }
        if !s.is_subset_of(self.vertex_set()) {
            return Err(Error::invalid(format!("vertex set {s} is not inside the graph")));
        }
        let index: Vec<usize> = s.iter().collect();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in index.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![0u32; index.len()];
        let mut twice = 0;
        for (i, &v) in index.iter().enumerate() {
            for w in Bits(self.adj[v] & s.mask()) {
                adj[i] |= 1 << pos[w];
                twice += 1;
            }
        }
        Ok(Graph { adj, edges: twice / 2 })
    }

    /// True iff the graph has exactly one component.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_set())
    }

    /// True iff `g[s]` is connected; the empty set counts as disconnected.
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        let m = s.mask();
        if m == 0 {
            return false;
        }
        let mut seen = m & m.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v] & m;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == m
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::invalid("permutation length differs from graph order"));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen & (1 << p) != 0 {
                return Err(Error::invalid("not a permutation"));
            }
            seen |= 1 << p;
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(n, &edges)
    }

    /// Edge-list text with 1-based labels, one edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> =
            self.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
        write!(f, "Graph(order={}, edges=[{}])", self.order(), edges.join(" "))
    }
}
