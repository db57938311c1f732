//! Named graph constructions with fixed, documented labelings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::m_density;
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::primal::{primal_family, MAX_PRIMAL_ORDER};

fn from_labels(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let zero: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(order, &zero)
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::TooManyVertices(order))
    } else {
        Ok(())
    }
}

pub fn edge() -> Graph {
    complete(2).expect("K2")
}

pub fn triangle() -> Graph {
    complete(3).expect("K3")
}

/// K_k on vertices 1..k.
pub fn complete(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::invalid("a complete graph needs at least 2 vertices"));
    }
    check_order(k)?;
    let mut e = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            e.push((u, v));
        }
    }
    Graph::from_edges(k, &e)
}

/// The cycle 1 − 2 − ⋯ − l − 1.
pub fn cycle(l: usize) -> Result<Graph> {
    cycle_pendant(l, 0)
}

/// An l-cycle on 1..l with r pendant vertices l+1..l+r attached to vertex 1.
pub fn cycle_pendant(l: usize, r: usize) -> Result<Graph> {
    if l < 3 {
        return Err(Error::invalid(format!("a cycle needs at least 3 vertices, got {l}")));
    }
    check_order(l + r)?;
    let mut e: Vec<(usize, usize)> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    e.extend((l..l + r).map(|w| (0, w)));
    Graph::from_edges(l + r, &e)
}

/// The 7-vertex snail: edges 12, 23, 13, 14, 45, 46, 27.
pub fn snail() -> Graph {
    from_labels(7, &[(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (4, 6), (2, 7)]).expect("fixed graph")
}

/// H_r: hexagon 1..6 with chords 14 and 25; for k = 0..r−2 an apex 7+3k
/// joined to 1 and forming a triangle with 8+3k and 9+3k; and the path
/// 3 − (3r+4) − (3r+5) − (3r+6) − 4.
pub fn badnews(r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::invalid(format!("badnews needs r ≥ 2, got {r}")));
    }
    let order = 3 * r + 6;
    check_order(order)?;
    let mut e = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4), (2, 5)];
    for k in 0..r - 1 {
        let a = 7 + 3 * k;
        e.extend([(1, a), (a, a + 1), (a, a + 2), (a + 1, a + 2)]);
    }
    let p = 3 * r + 4;
    e.extend([(3, p), (p, p + 1), (p + 1, p + 2), (p + 2, 4)]);
    from_labels(order, &e)
}

/// K5 on 1..5; 6, 7, 8 each joined to 1 and 2; 9 joined to 6 and 10; 10 joined to 3.
pub fn fig2_example() -> Graph {
    let mut e = Vec::new();
    for u in 1..=5 {
        for v in u + 1..=5 {
            e.push((u, v));
        }
    }
    for w in 6..=8 {
        e.extend([(1, w), (2, w)]);
    }
    e.extend([(9, 6), (9, 10), (10, 3)]);
    from_labels(10, &e).expect("fixed graph")
}

/// Glue `copies` copies of `j` along the common primal subgraph induced on `g`.
#[derive(Clone, Debug, Serialize)]
pub struct GlueSpec {
    #[serde(skip)]
    pub j: Graph,
    pub g_vertices: VertexSet,
    pub copies: usize,
}

impl GlueSpec {
    /// Rejects g unless J[g] is a primal of J that J covers.
    pub fn new(j: Graph, g_vertices: VertexSet, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::invalid("glue needs at least one copy"));
        }
        if !g_vertices.is_proper_subset_of(j.vertex_set()) || g_vertices.is_empty() {
            return Err(Error::invalid("G must be a non-empty proper vertex subset of J"));
        }
        let order = g_vertices.len() + copies * (j.order() - g_vertices.len());
        check_order(order)?;
        let family = primal_family(&j)?;
        if !family.contains(g_vertices) {
            return Err(Error::invalid(format!("J[{}] is not primal in J", g_vertices.label_string())));
        }
        if !family.contains(j.vertex_set()) || !family.covers(g_vertices, j.vertex_set())? {
            return Err(Error::invalid(format!("J does not cover J[{}]", g_vertices.label_string())));
        }
        Ok(GlueSpec { j, g_vertices, copies })
    }
}

/// K: the vertices of G first (ascending), then the remaining vertices of
/// each copy of J in ascending order, copy by copy. The density of K and its
/// smallest primal size are verified against J.
pub fn glue(spec: &GlueSpec) -> Result<Graph> {
    let j = &spec.j;
    let g = spec.g_vertices;
    let rest: Vec<usize> = j.vertex_set().difference(g).iter().collect();
    let vg = g.len();
    let order = vg + spec.copies * rest.len();
    check_order(order)?;
    let mut map = vec![vec![0usize; j.order()]; spec.copies];
    for (copy, row) in map.iter_mut().enumerate() {
        for (i, v) in g.iter().enumerate() {
            row[v] = i;
        }
        for (i, &w) in rest.iter().enumerate() {
            row[w] = vg + copy * rest.len() + i;
        }
    }
    let mut k = Graph::empty(order)?;
    for (u, v) in j.edges() {
        for row in &map {
            k.insert_edge(row[u], row[v])?;
        }
    }
    verify_glue(spec, &k)?;
    Ok(k)
}

fn verify_glue(spec: &GlueSpec, k: &Graph) -> Result<()> {
    let mj = m_density(&spec.j).density;
    let mk = m_density(k).density;
    if mk != mj {
        return Err(Error::internal(format!("glued graph has density {:?}, expected {:?}", mk.value(), mj.value())));
    }
    if crate::exponents::Density::new(k.edge_count(), k.order()) != mk {
        return Err(Error::internal("glued graph is not balanced"));
    }
    if k.order() <= MAX_PRIMAL_ORDER {
        let pj = primal_family(&spec.j)?.min_vertex_count;
        let pk = primal_family(k)?.min_vertex_count;
        if pj != pk {
            return Err(Error::internal(format!("glued graph has a primal on {pk} vertices, J's smallest has {pj}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn sizes() {
        let c = cycle_pendant(3, 2).unwrap();
        assert_eq!((c.order(), c.edge_count(), c.max_degree()), (5, 5, 4));
        let c = cycle_pendant(6, 3).unwrap();
        assert_eq!((c.order(), c.edge_count()), (9, 9));
        let h = badnews(7).unwrap();
        assert_eq!((h.order(), h.edge_count()), (27, 36));
        assert!(badnews(9).is_err());
        let f = fig2_example();
        assert_eq!((f.order(), f.edge_count()), (10, 19));
        assert_eq!(snail().degree(0), 3);
        assert_eq!(snail().degree(3), 3);
    }

    #[test]
    fn badnews_hexagon_has_eight_edges() {
        let h = badnews(4).unwrap();
        assert_eq!(h.induced_edge_count(VertexSet::from_mask(0b111111)), 8);
        assert_eq!(m_density(&h).density.value(), Ratio::new(4, 3));
    }

    #[test]
    fn glue_with_one_copy_is_j() {
        let mut j = complete(5).unwrap();
        j = Graph::from_edges(6, &{
            let mut e = j.edges();
            e.extend([(0, 5), (1, 5)]);
            e
        })
        .unwrap();
        let spec = GlueSpec::new(j.clone(), VertexSet::from_mask(0b11111), 1).unwrap();
        assert_eq!(glue(&spec).unwrap(), j);
        let spec = GlueSpec::new(j, VertexSet::from_mask(0b11111), 3).unwrap();
        let k = glue(&spec).unwrap();
        assert_eq!((k.order(), k.edge_count()), (8, 16));
    }

    #[test]
    fn glue_rejects_non_cover() {
        let j = cycle_pendant(3, 2).unwrap();
        // the triangle is primal but J (two pendants) does not cover it
        assert!(GlueSpec::new(j, VertexSet::from_mask(0b111), 2).is_err());
    }
}
