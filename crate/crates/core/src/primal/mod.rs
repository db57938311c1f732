//! The family of densest ("primal") vertex subsets, its cover relation, the
//! grading chain and the locally-disjoint exponent ζ.

mod claims;
mod zeta;

use std::collections::HashSet;

use serde::Serialize;

pub use claims::{claim_suite, ClaimCheck, ClaimReport};
pub use zeta::{counterexample_check, zeta, CounterexampleWitness, Verdict, ZetaEntry, ZetaResult};

use crate::error::{Error, Result};
use crate::exponents::m_density;
use crate::graph::{scan_induced, Graph, VertexSet};
use crate::rational::{self, Rational};

/// Largest order for which the subset scan is attempted.
pub const MAX_PRIMAL_ORDER: usize = 28;

/// All vertex subsets whose induced density equals m(H), with their Hasse diagram.
#[derive(Clone, Debug, Serialize)]
pub struct PrimalFamily {
    #[serde(skip)]
    host: Graph,
    #[serde(serialize_with = "rational::serialize")]
    pub m: Rational,
    /// Sorted by (size, mask).
    pub members: Vec<VertexSet>,
    /// (lower, upper) member indices.
    pub cover_edges: Vec<(usize, usize)>,
    pub min_vertex_count: usize,
    #[serde(skip)]
    upper_covers: Vec<Vec<usize>>,
    #[serde(skip)]
    lookup: HashSet<u32>,
}

/// Builds the primal family of `h`.
pub fn primal_family(h: &Graph) -> Result<PrimalFamily> {
    if h.edge_count() == 0 {
        return Err(Error::invalid("the primal family needs at least one edge"));
    }
    if h.order() > MAX_PRIMAL_ORDER {
        return Err(Error::Limit(format!(
            "primal family scan supports at most {MAX_PRIMAL_ORDER} vertices, got {}",
            h.order()
        )));
    }
    let m = m_density(h).density.value();
    let (a, b) = (*m.numer() as usize, *m.denom() as usize);
    let mut members: Vec<VertexSet> = scan_induced(
        h,
        Vec::new,
        |acc: &mut Vec<VertexSet>, s| {
            if s.edges * b == a * s.mask.count_ones() as usize {
                acc.push(VertexSet::from_mask(s.mask));
            }
        },
        |mut x, y| {
            x.extend(y);
            x
        },
    );
    members.sort_by_key(|s| (s.len(), s.mask()));
    let k = members.len();
    let mut upper_covers = vec![Vec::new(); k];
    let mut cover_edges = Vec::new();
    for (i, &lo) in members.iter().enumerate() {
        let above: Vec<usize> = (i + 1..k).filter(|&j| lo.is_proper_subset_of(members[j])).collect();
        for &j in &above {
            let hi = members[j];
            let blocked = above.iter().any(|&c| c != j && members[c].is_proper_subset_of(hi));
            if !blocked {
                upper_covers[i].push(j);
                cover_edges.push((i, j));
            }
        }
    }
    let min_vertex_count = members.first().map(|s| s.len()).unwrap_or(0);
    let lookup = members.iter().map(|s| s.mask()).collect();
    Ok(PrimalFamily { host: h.clone(), m, members, cover_edges, min_vertex_count, upper_covers, lookup })
}

impl PrimalFamily {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.lookup.contains(&s.mask())
    }

    pub fn index_of(&self, s: VertexSet) -> Result<usize> {
        self.members
            .binary_search_by_key(&(s.len(), s.mask()), |m| (m.len(), m.mask()))
            .map_err(|_| Error::invalid(format!("{} is not a primal set", s.label_string())))
    }

    /// Whether `upper` covers `lower`; both must be members.
    pub fn covers(&self, lower: VertexSet, upper: VertexSet) -> Result<bool> {
        let i = self.index_of(lower)?;
        let j = self.index_of(upper)?;
        Ok(self.upper_covers[i].contains(&j))
    }

    /// Members covering `g`, by increasing size then mask.
    pub fn covering_primals(&self, g: VertexSet) -> Result<Vec<VertexSet>> {
        let i = self.index_of(g)?;
        Ok(self.cover_indices(i).iter().map(|&j| self.members[j]).collect())
    }

    pub(crate) fn cover_indices(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Members containing no other member.
    pub fn minimal_members(&self) -> Vec<VertexSet> {
        self.members
            .iter()
            .copied()
            .filter(|&s| !self.members.iter().any(|&t| t.is_proper_subset_of(s)))
            .collect()
    }

    /// G₀ = union of the minimal members, then G_{i+1} = union of the members
    /// covering G_i, until the whole vertex set is reached.
    pub fn grading(&self) -> Result<Vec<VertexSet>> {
        let all = self.host.vertex_set();
        if !self.contains(all) {
            return Err(Error::invalid("the grading chain is defined for balanced graphs only"));
        }
        let mut current = self.minimal_members().into_iter().fold(VertexSet::EMPTY, VertexSet::union);
        let mut chain = Vec::new();
        loop {
            if !self.contains(current) {
                return Err(Error::internal(format!("grading element {} is not primal", current.label_string())));
            }
            chain.push(current);
            if current == all {
                return Ok(chain);
            }
            let next = self.covering_primals(current)?.into_iter().fold(VertexSet::EMPTY, VertexSet::union);
            if !current.is_proper_subset_of(next) {
                return Err(Error::internal(format!("grading stalls at {}", current.label_string())));
            }
            current = next;
        }
    }
}

/// Grading chain of a balanced graph.
pub fn grading(h: &Graph) -> Result<Vec<VertexSet>> {
    primal_family(h)?.grading()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snail() -> Graph {
        Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (3, 5), (1, 6)]).unwrap()
    }

    fn set(s: &str) -> VertexSet {
        VertexSet::parse_labels(s).unwrap()
    }

    #[test]
    fn snail_family() {
        let f = primal_family(&snail()).unwrap();
        let got: Vec<String> = f.members.iter().map(|s| s.label_string()).collect();
        assert_eq!(
            got,
            ["123", "1234", "1237", "12345", "12346", "12347", "123456", "123457", "123467", "1234567"]
        );
        assert_eq!(f.min_vertex_count, 3);
        assert_eq!(f.covering_primals(set("1234")).unwrap(), vec![set("12345"), set("12346"), set("12347")]);
        assert!(!f.covers(set("123"), set("12347")).unwrap());
        assert!(f.covers(set("123"), set("1237")).unwrap());
        assert!(f.covering_primals(set("12")).is_err());
        assert_eq!(f.grading().unwrap(), vec![set("123"), set("12347"), set("1234567")]);
    }

    #[test]
    fn strictly_balanced_has_one_member() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = primal_family(&c4).unwrap();
        assert_eq!(f.members, vec![c4.vertex_set()]);
        assert!(f.covering_primals(c4.vertex_set()).unwrap().is_empty());
        assert_eq!(f.grading().unwrap(), vec![c4.vertex_set()]);
    }

    #[test]
    fn unbalanced_grading_errors() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert!(grading(&g).is_err());
    }
}
