use num_rational::Ratio;
use serde::Serialize;

use super::{primal_family, PrimalFamily};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, Rational};

/// ζ(G) for one member G with at least one cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaEntry {
    pub g: VertexSet,
    #[serde(serialize_with = "rational::serialize")]
    pub zeta: Rational,
    /// Length of the shortest optimal prefix of the ordered covers.
    pub prefix: usize,
    pub covers: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaResult {
    #[serde(serialize_with = "rational::serialize")]
    pub zeta: Rational,
    pub witness_g: VertexSet,
    pub witness_covers: Vec<VertexSet>,
    pub per_g: Vec<ZetaEntry>,
}

impl ZetaResult {
    pub fn value_at(&self, g: VertexSet) -> Option<Rational> {
        self.per_g.iter().find(|e| e.g == g).map(|e| e.zeta)
    }
}

/// min over prefixes r of (v_G + Σ_{i ≤ r} (v_{J_i} − v_G)) / r, covers ordered
/// by size; ties keep the shorter prefix.
fn zeta_of(g: VertexSet, covers: &[VertexSet]) -> (Rational, usize) {
    let vg = g.len() as i64;
    let mut total = vg;
    let mut best: Option<(Rational, usize)> = None;
    for (i, j) in covers.iter().enumerate() {
        total += j.len() as i64 - vg;
        let r = i as i64 + 1;
        let value = Ratio::new(total, r);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, i + 1));
        }
    }
    best.expect("at least one cover")
}

impl PrimalFamily {
    /// ζ over all members with a cover, or `None` when no member has one.
    pub fn zeta(&self) -> Option<ZetaResult> {
        let per_g: Vec<ZetaEntry> = (0..self.members.len())
            .filter(|&i| !self.cover_indices(i).is_empty())
            .map(|i| {
                let g = self.members[i];
                let covers: Vec<VertexSet> = self.cover_indices(i).iter().map(|&j| self.members[j]).collect();
                let (zeta, prefix) = zeta_of(g, &covers);
                ZetaEntry { g, zeta, prefix, covers }
            })
            .collect();
        let best = per_g.iter().fold(None::<&ZetaEntry>, |acc, e| match acc {
            Some(b) if b.zeta <= e.zeta => Some(b),
            _ => Some(e),
        })?;
        Some(ZetaResult {
            zeta: best.zeta,
            witness_g: best.g,
            witness_covers: best.covers[..best.prefix].to_vec(),
            per_g: per_g.clone(),
        })
    }

    pub fn counterexample_check(&self) -> Verdict {
        let v0 = self.min_vertex_count;
        match self.zeta() {
            None => Verdict { is_counterexample: false, zeta: None, v0, witness: None },
            Some(z) => {
                let is = z.zeta < Ratio::from_integer(v0 as i64);
                let k = z.witness_covers.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b));
                let witness = is.then(|| CounterexampleWitness {
                    g: z.witness_g,
                    covers: z.witness_covers.clone(),
                    k,
                    r: z.witness_covers.len(),
                });
                Verdict { is_counterexample: is, zeta: Some(z.zeta), v0, witness }
            }
        }
    }
}

/// ζ of `h`; errors when no primal set has a cover (strictly balanced graphs).
pub fn zeta(h: &Graph) -> Result<ZetaResult> {
    primal_family(h)?
        .zeta()
        .ok_or_else(|| Error::invalid("no primal set has a cover (the graph is strictly balanced)"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleWitness {
    pub g: VertexSet,
    pub covers: Vec<VertexSet>,
    /// Union of the covers.
    pub k: VertexSet,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub is_counterexample: bool,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub zeta: Option<Rational>,
    pub v0: usize,
    pub witness: Option<CounterexampleWitness>,
}

/// Whether some primal G and r of its covers give v_K / r below the smallest
/// primal size, with K the union of the covers.
pub fn counterexample_check(h: &Graph) -> Result<Verdict> {
    Ok(primal_family(h)?.counterexample_check())
}
