//! Minimization of μ-type objectives over the subgraphs of a fixed graph.
//!
//! Candidates are grouped into classes by (vertex count, edge count). Inside a
//! class the only varying ingredients are |Aut| and α*, so class-level bounds
//! (1 ≤ |Aut| ≤ v!, v/2 ≤ α* ≤ v) discard most classes at once. Survivors get
//! a sharper automorphism bound from colour refinement, and only candidates
//! whose bound still competes pay for an exact automorphism count.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use super::alpha::fractional_independence;
use super::mu::{check_probability, mu_ln};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, refine_colors, scan_induced, Graph, VertexSet};
use crate::logmath::ln_factorial;
use crate::rational::{self, Rational};

/// Largest edge count for which every edge subset is enumerated.
pub const EXACT_EDGE_LIMIT: usize = 22;

const STORED_PER_CLASS: usize = 1 << 16;
const MAX_CANDIDATES: usize = 8_000_000;

/// What is minimized over subgraphs G with at least one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// ln μ_G
    Mu,
    /// ln μ_G / α*_G
    MuRoot,
    /// ln μ_G · v_G / α*_G
    MuRootScaled,
}

impl Objective {
    /// Objective value from the log expectation and the exact α*.
    pub fn value(self, mu_ln: f64, v: usize, alpha: &Rational) -> f64 {
        let a = rational::to_f64(alpha);
        match self {
            Objective::Mu => mu_ln,
            Objective::MuRoot => mu_ln / a,
            Objective::MuRootScaled => mu_ln * v as f64 / a,
        }
    }

    fn weight_range(self, v: usize) -> (f64, f64) {
        let v = v as f64;
        match self {
            Objective::Mu => (1.0, 1.0),
            Objective::MuRoot => (1.0 / v, 2.0 / v),
            Objective::MuRootScaled => (1.0, 2.0),
        }
    }

    fn needs_alpha(self) -> bool {
        self != Objective::Mu
    }
}

fn product_range((a, b): (f64, f64), (w1, w2): (f64, f64)) -> (f64, f64) {
    ((a * w1).min(a * w2), (b * w1).max(b * w2))
}

/// The minimizing subgraph and the objective value it attains.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubgraphMin {
    pub value_ln: f64,
    pub vertices: VertexSet,
    /// 1-based endpoint labels.
    pub edges: Vec<[usize; 2]>,
    pub automorphisms: u128,
    #[serde(serialize_with = "rational::serialize")]
    pub alpha_star: Rational,
    /// False when only induced subgraphs were searched.
    pub exact: bool,
}

#[derive(Clone, Copy)]
enum Mode {
    EdgeSubsets,
    Induced,
}

struct Class {
    v: usize,
    e: usize,
    members: Vec<u32>,
    overflow: bool,
}

#[derive(Clone)]
struct Info {
    color_bound_ln: f64,
    alpha: Rational,
    aut: Option<u128>,
}

/// Precomputed subgraph classes of one graph, reusable across (n, p).
pub struct SubgraphIndex {
    host: Graph,
    edges: Vec<(usize, usize)>,
    mode: Mode,
    classes: Vec<Class>,
    cache: Mutex<HashMap<u32, Info>>,
    /// Full member lists of overflowing classes, filled on first use.
    rescanned: Mutex<HashMap<usize, Vec<u32>>>,
}

impl SubgraphIndex {
    pub fn build(host: &Graph) -> Result<Self> {
        let edges = host.edges();
        if edges.is_empty() {
            return Err(Error::invalid("the graph has no edges"));
        }
        let stride = edges.len() + 1;
        let slot = |v: usize, e: usize| v * stride + e;
        let (mode, buckets) = if edges.len() <= EXACT_EDGE_LIMIT {
            let mut buckets: Vec<(Vec<u32>, bool)> = vec![(Vec::new(), false); (host.order() + 1) * stride];
            for key in 1u32..(1u32 << edges.len()) {
                let support = support_of(&edges, key);
                buckets[slot(support.count_ones() as usize, key.count_ones() as usize)].0.push(key);
            }
            (Mode::EdgeSubsets, buckets)
        } else {
            let buckets = scan_induced(
                host,
                || vec![(Vec::new(), false); (host.order() + 1) * stride],
                |acc: &mut Vec<(Vec<u32>, bool)>, s| {
                    if s.edges == 0 || s.has_isolated() {
                        return;
                    }
                    let b = &mut acc[slot(s.mask.count_ones() as usize, s.edges)];
                    if b.0.len() < STORED_PER_CLASS {
                        b.0.push(s.mask);
                    } else {
                        b.1 = true;
                    }
                },
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        x.1 |= y.1;
                        for m in y.0 {
                            if x.0.len() < STORED_PER_CLASS {
                                x.0.push(m);
                            } else {
                                x.1 = true;
                            }
                        }
                    }
                    a
                },
            );
            (Mode::Induced, buckets)
        };
        let classes = buckets
            .into_iter()
            .enumerate()
            .filter(|(_, (m, o))| !m.is_empty() || *o)
            .map(|(i, (members, overflow))| Class { v: i / stride, e: i % stride, members, overflow })
            .collect();
        Ok(SubgraphIndex { host: host.clone(), edges, mode, classes, cache: Mutex::new(HashMap::new()), rescanned: Mutex::new(HashMap::new()) })
    }

    /// Whether every (not necessarily induced) subgraph is searched.
    pub fn is_exact(&self) -> bool {
        matches!(self.mode, Mode::EdgeSubsets)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    fn candidate(&self, key: u32) -> (VertexSet, Vec<(usize, usize)>) {
        match self.mode {
            Mode::EdgeSubsets => {
                let chosen: Vec<(usize, usize)> =
                    self.edges.iter().enumerate().filter(|(i, _)| key >> i & 1 == 1).map(|(_, &e)| e).collect();
                (VertexSet::from_mask(support_of(&self.edges, key)), chosen)
            }
            Mode::Induced => {
                let s = VertexSet::from_mask(key);
                let chosen = self.edges.iter().copied().filter(|&(u, v)| s.contains(u) && s.contains(v)).collect();
                (s, chosen)
            }
        }
    }

    fn subgraph(&self, key: u32) -> Graph {
        let (s, chosen) = self.candidate(key);
        let mut pos = [0usize; crate::graph::MAX_ORDER];
        for (i, v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let relabeled: Vec<(usize, usize)> = chosen.iter().map(|&(u, v)| (pos[u], pos[v])).collect();
        Graph::from_edges(s.len(), &relabeled).expect("subgraph of a valid graph")
    }

    fn info(&self, key: u32, need_aut: bool) -> Info {
        if let Some(info) = self.cache.lock().unwrap().get(&key) {
            if info.aut.is_some() || !need_aut {
                return info.clone();
            }
        }
        let g = self.subgraph(key);
        let colors = refine_colors(&g, &[]);
        let mut sizes = vec![0u64; g.order()];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let info = Info {
            color_bound_ln: sizes.iter().map(|&s| ln_factorial(s)).sum(),
            alpha: fractional_independence(&g),
            aut: need_aut.then(|| automorphism_count(&g)),
        };
        self.cache.lock().unwrap().insert(key, info.clone());
        info
    }

    fn members_of_overflowing(&self, wanted: &[usize]) -> HashMap<usize, Vec<u32>> {
        let index: HashMap<(usize, usize), usize> =
            wanted.iter().map(|&c| ((self.classes[c].v, self.classes[c].e), c)).collect();
        scan_induced(
            &self.host,
            HashMap::<usize, Vec<u32>>::new,
            |acc, s| {
                if s.edges == 0 || s.has_isolated() {
                    return;
                }
                if let Some(&c) = index.get(&(s.mask.count_ones() as usize, s.edges)) {
                    acc.entry(c).or_default().push(s.mask);
                }
            },
            |mut a, b| {
                for (k, v) in b {
                    a.entry(k).or_default().extend(v);
                }
                a
            },
        )
    }

    /// Minimum of `objective` over subgraphs with at least one edge.
    pub fn minimize(&self, n: u64, p: f64, objective: Objective) -> Result<SubgraphMin> {
        check_probability(p)?;
        if (n as u128) < self.host.order() as u128 {
            return Err(Error::invalid(format!("n = {n} is smaller than the graph order {}", self.host.order())));
        }
        let bounds: Vec<(f64, f64)> = self
            .classes
            .iter()
            .map(|c| {
                let base = mu_ln(n, c.v, c.e, 1, p);
                product_range((base - ln_factorial(c.v as u64), base), objective.weight_range(c.v))
            })
            .collect();
        let incumbent = bounds.iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
        let surviving: Vec<usize> = (0..self.classes.len()).filter(|&i| bounds[i].0 <= incumbent).collect();
        let mut rescanned = self.rescanned.lock().unwrap();
        let missing: Vec<usize> =
            surviving.iter().copied().filter(|&i| self.classes[i].overflow && !rescanned.contains_key(&i)).collect();
        if !missing.is_empty() {
            let mut found = self.members_of_overflowing(&missing);
            for c in missing {
                rescanned.insert(c, found.remove(&c).unwrap_or_default());
            }
        }

        let mut order = surviving;
        order.sort_by(|&a, &b| bounds[a].0.total_cmp(&bounds[b].0).then(a.cmp(&b)));
        let mut seen = 0usize;
        let mut best: Option<(f64, u32, u128, Rational)> = None;
        for ci in order {
            if best.as_ref().is_some_and(|b| bounds[ci].0 > b.0) {
                break;
            }
            let class = &self.classes[ci];
            let members = rescanned.get(&ci).unwrap_or(&class.members);
            seen += members.len();
            if seen > MAX_CANDIDATES {
                return Err(Error::Limit(format!(
                    "more than {MAX_CANDIDATES} competing subgraphs; the minimization is not tractable here"
                )));
            }
            let base = mu_ln(n, class.v, class.e, 1, p);
            let mut candidates: Vec<(f64, u32)> = Vec::with_capacity(members.len());
            for &key in members {
                let info = self.info(key, false);
                let w = if objective.needs_alpha() {
                    let exact = objective.value(1.0, class.v, &info.alpha);
                    (exact, exact)
                } else {
                    (1.0, 1.0)
                };
                let (lo, _) = product_range((base - info.color_bound_ln, base), w);
                if best.as_ref().is_none_or(|b| lo <= b.0) {
                    candidates.push((lo, key));
                }
            }
            candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for (lo, key) in candidates {
                if best.as_ref().is_some_and(|b| lo > b.0) {
                    break;
                }
                let info = self.info(key, true);
                let aut = info.aut.expect("requested");
                let val = objective.value(mu_ln(n, class.v, class.e, aut, p), class.v, &info.alpha);
                if best.as_ref().is_none_or(|b| val < b.0 || (val == b.0 && key < b.1)) {
                    best = Some((val, key, aut, info.alpha));
                }
            }
        }
        drop(rescanned);
        let (value_ln, key, automorphisms, alpha_star) =
            best.ok_or_else(|| Error::internal("no candidate subgraph survived the bounds"))?;
        let (vertices, edges) = self.candidate(key);
        Ok(SubgraphMin {
            value_ln,
            vertices,
            edges: edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
            automorphisms,
            alpha_star,
            exact: self.is_exact(),
        })
    }
}

fn support_of(edges: &[(usize, usize)], key: u32) -> u32 {
    edges.iter().enumerate().filter(|(i, _)| key >> i & 1 == 1).fold(0, |m, (_, &(u, v))| m | 1 << u | 1 << v)
}
