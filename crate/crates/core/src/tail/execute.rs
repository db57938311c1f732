use num_bigint::BigUint;
use serde::Serialize;

use super::count::count_in_host;
use super::host::{sample_gnp_stream, SparseHost, MAX_HOST_ORDER};
use super::plan::{split_sizes, PlanDetail, PlantPlan};
use crate::error::{Error, Result};
use crate::families::cycle;
use crate::graph::{count_embeddings, find_embedding, Graph, SearchLimits, SearchPlan, VertexSet};

/// Node budget for locating the seed copy in round 1.
const FIND_BUDGET: u64 = 2_000_000_000;

fn host_order(n: u64) -> Result<usize> {
    if n > MAX_HOST_ORDER as u64 {
        return Err(Error::Limit(format!("execution needs n ≤ {MAX_HOST_ORDER}, got {n}")));
    }
    Ok(n as usize)
}

fn need(plan: &PlantPlan) -> Result<u64> {
    u64::try_from(&plan.target_copies).map_err(|_| Error::Limit("threshold exceeds 64 bits".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PendantOutcome {
    pub seed: u64,
    pub cycle_found: bool,
    pub planted: bool,
    /// Host vertex (1-based) carrying the planted pendant edges.
    pub root: Option<usize>,
    pub planted_edges: u64,
    pub x: u64,
    pub threshold: u64,
    pub hit: bool,
}

/// Round 1 at p₁ on stream 0, round 2 at p₂ on stream 1. When round 1 holds
/// an ℓ-cycle, the image of cycle vertex 1 gets z pendant edges to the
/// lowest-index vertices outside the cycle.
pub fn execute_pendant(plan: &PlantPlan, seed: u64) -> Result<PendantOutcome> {
    let PlanDetail::Pendant(d) = &plan.detail else {
        return Err(Error::invalid("execute_pendant needs a pendant plan"));
    };
    let n = host_order(plan.n)?;
    let round1 = sample_gnp_stream(n, d.p1, seed, 0)?;
    let round2 = sample_gnp_stream(n, d.p2, seed, 1)?;
    let c = cycle(d.l)?;
    let found = find_embedding(&SearchPlan::new(&c), &round1, SearchLimits { max_nodes: Some(FIND_BUDGET) })?;
    let mut union = round1.clone();
    union.union_with(&round2);
    let mut root = None;
    if let Some(map) = &found {
        let r = map[0];
        let on_cycle: Vec<usize> = map.clone();
        let leaves = (0..n).filter(|v| !on_cycle.contains(v)).take(plan.z as usize);
        let mut planted = 0u64;
        for w in leaves {
            union.add_edge(r, w);
            planted += 1;
        }
        if planted != plan.z {
            return Err(Error::internal(format!("planted {planted} of {} pendant edges", plan.z)));
        }
        root = Some(r);
    }
    let x = count_in_host(&union, &plan.pattern)?;
    let threshold = need(plan)?;
    let hit = x >= threshold;
    if found.is_some() && !hit {
        return Err(Error::internal(format!("planted host has {x} copies, below the certified {threshold}")));
    }
    Ok(PendantOutcome {
        seed,
        cycle_found: found.is_some(),
        planted: found.is_some(),
        root: root.map(|r| r + 1),
        planted_edges: if found.is_some() { plan.z } else { 0 },
        x,
        threshold,
        hit,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralOutcome {
    pub seed: u64,
    pub g_found: bool,
    pub planted: bool,
    /// Host vertices (1-based) of the ordered G-copy, in the order of G's vertices.
    pub g_image: Option<Vec<usize>>,
    pub planted_edges: u64,
    /// Distinct extensions found per cover, recounted in the planted edges.
    pub extensions_per_cover: Vec<u64>,
    /// Product of `extensions_per_cover`; equals the certificate when planted.
    #[serde(serialize_with = "ser_big")]
    pub k_copies: BigUint,
    pub x: u64,
    pub threshold: u64,
    pub hit: bool,
    /// Round-3 copies with no vertex on the G-copy.
    pub y: Option<u64>,
    pub expected_y: f64,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Position of each vertex of `outer` inside `sub`'s ascending order.
fn positions(sub: VertexSet, of: VertexSet) -> Vec<usize> {
    let inner: Vec<usize> = sub.iter().collect();
    of.iter().map(|v| inner.iter().position(|&w| w == v).expect("subset")).collect()
}

/// Three rounds on streams 0, 1, 2. Round 1 supplies an ordered copy G′ of
/// G; the rest of the host is split into r consecutive parts and part i
/// receives z vertex-disjoint copies of J_i ∖ G attached to G′; round 3 is
/// added last. The pattern is counted in the union.
pub fn execute_general(plan: &PlantPlan, seed: u64) -> Result<GeneralOutcome> {
    let PlanDetail::General(d) = &plan.detail else {
        return Err(Error::invalid("execute_general needs a general plan"));
    };
    let n = host_order(plan.n)?;
    let h = &plan.pattern;
    let round1 = sample_gnp_stream(n, d.p1, seed, 0)?;
    let round2 = sample_gnp_stream(n, d.p2, seed, 1)?;
    let round3 = sample_gnp_stream(n, d.p3, seed, 2)?;
    let g_graph = h.induced_subgraph(d.g)?;
    let found = find_embedding(&SearchPlan::new(&g_graph), &round1, SearchLimits { max_nodes: Some(FIND_BUDGET) })?;
    let mut union = round1.clone();
    union.union_with(&round2);
    let expected_y = d.expected_y_ln.exp();
    let threshold = need(plan)?;
    let Some(g_map) = found else {
        union.union_with(&round3);
        let x = count_in_host(&union, h)?;
        return Ok(GeneralOutcome {
            seed,
            g_found: false,
            planted: false,
            g_image: None,
            planted_edges: 0,
            extensions_per_cover: vec![0; d.covers.len()],
            k_copies: BigUint::ZERO,
            x,
            threshold,
            hit: x >= threshold,
            y: None,
            expected_y,
        });
    };
    let g_vertices: Vec<usize> = d.g.iter().collect();
    let image_of = |v: usize| g_map[g_vertices.iter().position(|&w| w == v).expect("vertex of G")];
    let on_g: Vec<bool> = (0..n).map(|v| g_map.contains(&v)).collect();
    let outside: Vec<usize> = (0..n).filter(|&v| !on_g[v]).collect();
    let sizes = split_sizes(outside.len() as u64, d.covers.len());
    let mut start = 0usize;
    let mut planted_edges = 0u64;
    let mut per_cover = Vec::with_capacity(d.covers.len());
    for (i, &j) in d.covers.iter().enumerate() {
        let part = &outside[start..start + sizes[i] as usize];
        start += sizes[i] as usize;
        let fresh: Vec<usize> = j.difference(d.g).iter().collect();
        if fresh.len() as u64 * plan.z > part.len() as u64 {
            return Err(Error::Infeasible(format!("part {} has {} vertices, needs {}", i + 1, part.len(), fresh.len() as u64 * plan.z)));
        }
        // the part's planted edges plus G′ alone, for the bookkeeping recount
        let mut local = SparseHost::empty(n)?;
        for (a, b) in g_graph.edges() {
            local.add_edge(g_map[a], g_map[b]);
        }
        for copy in 0..plan.z as usize {
            let slot = &part[copy * fresh.len()..(copy + 1) * fresh.len()];
            let place = |v: usize| match fresh.iter().position(|&w| w == v) {
                Some(k) => slot[k],
                None => image_of(v),
            };
            for (a, b) in h.induced_subgraph(j)?.edges() {
                let (ua, ub) = (j.iter().nth(a).expect("vertex"), j.iter().nth(b).expect("vertex"));
                if d.g.contains(ua) && d.g.contains(ub) {
                    continue;
                }
                local.add_edge(place(ua), place(ub));
                if union.add_edge(place(ua), place(ub)) {
                    planted_edges += 1;
                }
            }
        }
        per_cover.push(count_extensions(h, d.g, j, &g_map, &local)?);
    }
    let k_copies = per_cover.iter().fold(BigUint::from(1u32), |a, &c| a * c);
    if k_copies != plan.certificate_copies {
        return Err(Error::internal(format!("planted {k_copies} copies of K, certificate says {}", plan.certificate_copies)));
    }
    let mut outside_round3 = SparseHost::empty(n)?;
    for (a, b) in round3.edges() {
        if !on_g[a] && !on_g[b] {
            outside_round3.add_edge(a, b);
        }
    }
    union.union_with(&round3);
    let x = count_in_host(&union, h)?;
    let y = count_in_host(&outside_round3, h)?;
    Ok(GeneralOutcome {
        seed,
        g_found: true,
        planted: true,
        g_image: Some(g_map.iter().map(|v| v + 1).collect()),
        planted_edges,
        extensions_per_cover: per_cover,
        k_copies,
        x,
        threshold,
        hit: x >= threshold,
        y: Some(y),
        expected_y,
    })
}

/// Number of distinct copies of J ⊇ G in `host` that agree with the ordered
/// G-copy: embeddings fixing G′ divided by the self-embeddings of J fixing G.
fn count_extensions(h: &Graph, g: VertexSet, j: VertexSet, g_map: &[usize], host: &SparseHost) -> Result<u64> {
    let jg = h.induced_subgraph(j)?;
    let pos = positions(j, g);
    let fixed_host: Vec<(usize, usize)> = pos.iter().zip(g_map).map(|(&a, &b)| (a, b)).collect();
    let fixed_self: Vec<(usize, usize)> = pos.iter().map(|&a| (a, a)).collect();
    let maps = count_embeddings(&SearchPlan::with_fixed(&jg, &fixed_host), host, SearchLimits::default())?;
    let stab = count_embeddings(&SearchPlan::with_fixed(&jg, &fixed_self), &jg, SearchLimits::default())?;
    if stab == 0 || maps % stab != 0 {
        return Err(Error::internal(format!("{maps} extensions not divisible by {stab}")));
    }
    Ok(maps / stab)
}
