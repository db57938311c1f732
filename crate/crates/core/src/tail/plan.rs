use num_bigint::BigUint;
use num_traits::{FromPrimitive, One};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponents::mu_ln;
use crate::families::{badnews, cycle_pendant};
use crate::graph::{automorphism_count, Graph, VertexSet};
use crate::logmath::{ln_1m, ln_binomial, ln_factorial};
use crate::primal::primal_family;

fn serialize_big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// C(n, k) exactly.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// ⌈(1+ε)μ⌉ for μ = e^{mu_ln}.
fn target_copies(mu_ln: f64, eps: f64) -> Result<BigUint> {
    let x = ((1.0 + eps).ln() + mu_ln).exp().ceil();
    BigUint::from_f64(x.max(0.0))
        .ok_or_else(|| Error::Limit(format!("target count e^{:.1} is not representable", (1.0 + eps).ln() + mu_ln)))
}

/// ln C(N, k) for a possibly astronomically large real N ≥ k.
fn ln_binomial_real(big_n: f64, k: u64) -> f64 {
    if big_n < 9.0e15 {
        return ln_binomial(big_n.round() as u64, k);
    }
    let k_f = k as f64;
    k_f * big_n.ln() - k_f * (k_f - 1.0) / (2.0 * big_n) - ln_factorial(k)
}

fn to_u64(x: f64, what: &str) -> Result<u64> {
    if (0.0..1.8e19).contains(&x) {
        Ok(x as u64)
    } else {
        Err(Error::Limit(format!("{what} = {x:.3e} does not fit a 64-bit integer")))
    }
}

fn check_common(n: u64, p: f64, eps: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("plans need 0 < p < 1, got {p}")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(())
}

fn graph_mu_ln(g: &Graph, n: u64, p: f64) -> f64 {
    mu_ln(n, g.order(), g.edge_count(), automorphism_count(g), p)
}

/// Two rounds with p₂ = p/2 and (1 − p₁)(1 − p₂) = 1 − p.
pub fn split_half(p: f64) -> (f64, f64) {
    let p2 = p / 2.0;
    (p2 / (1.0 - p2), p2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PendantDetail {
    pub l: usize,
    pub r: usize,
    /// Smallest z with C(z, r) ≥ ⌈(1+ε)μ⌉; the plan uses this value.
    pub z_min: u64,
    /// ⌈r((1+ε)μ)^{1/r}⌉.
    pub root_z: u64,
    pub p1: f64,
    pub p2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralDetail {
    pub g: VertexSet,
    /// Covers kept after the reduction, in input order.
    pub covers: Vec<VertexSet>,
    pub dropped: Vec<VertexSet>,
    pub k: VertexSet,
    pub r: usize,
    #[serde(rename = "C_H")]
    pub c_big: f64,
    #[serde(rename = "c_H")]
    pub c_small: f64,
    pub delta: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub mu_k_ln: f64,
    pub part_sizes: Vec<u64>,
    /// v_{J_i} − v_G per kept cover.
    pub extension_vertices: Vec<usize>,
    /// e_{J_i} − e_G per kept cover.
    pub extension_edges: Vec<usize>,
    /// ln E[Y], Y the round-3 copies avoiding the planted G-copy.
    pub expected_y_ln: f64,
    /// E[Y] / μ.
    pub expected_y_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedDetail {
    pub r: usize,
    pub gamma: f64,
    #[serde(rename = "c_H")]
    pub c_h: f64,
    #[serde(rename = "d_H")]
    pub d_h: f64,
    pub omega_ln: f64,
    /// ln ω / ln ln n.
    pub window_exponent: f64,
    pub in_window: bool,
    pub z_star: u64,
    pub u_size: u64,
    pub v1_size: u64,
    pub v2_size: u64,
    pub p1: f64,
    pub p2: f64,
    pub disjoint_log_cost: f64,
    pub clustered_log_cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanDetail {
    Pendant(PendantDetail),
    General(GeneralDetail),
    Mixed(MixedDetail),
}

/// A planted construction and its deterministic copy certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlantPlan {
    #[serde(flatten)]
    pub detail: PlanDetail,
    pub n: u64,
    pub p: f64,
    pub eps: f64,
    pub mu_ln: f64,
    /// ⌈(1+ε)μ⌉.
    #[serde(serialize_with = "serialize_big")]
    pub target_copies: BigUint,
    pub z: u64,
    pub round_probabilities: Vec<f64>,
    /// Copies of the pattern (pendant, mixed) or of K (general) forced by the plant.
    #[serde(serialize_with = "serialize_big")]
    pub certificate_copies: BigUint,
    pub certificate_meets_target: bool,
    /// ln of the probability bound of the plant.
    pub log_cost: f64,
    #[serde(skip)]
    pub pattern: Graph,
}

impl PlantPlan {
    /// ln(−log_cost): the plan's exponent on the same scale as the `_ln` report fields.
    pub fn cost_exponent_ln(&self) -> f64 {
        (-self.log_cost).ln()
    }
}

/// Plan for C_ℓ^{+r}: find an ℓ-cycle at p₁, then plant z pendant edges at
/// one of its vertices with probability bound C(n−ℓ, z)·p₂^z·(1−p₂)^{n−ℓ−z}.
pub fn plan_pendant(l: usize, r: usize, n: u64, p: f64, eps: f64) -> Result<PlantPlan> {
    check_common(n, p, eps)?;
    if r == 0 {
        return Err(Error::invalid("the pendant plan needs r ≥ 1"));
    }
    let h = cycle_pendant(l, r)?;
    if n < h.order() as u64 {
        return Err(Error::invalid(format!("n = {n} is smaller than the graph order {}", h.order())));
    }
    let mu = graph_mu_ln(&h, n, p);
    let target = target_copies(mu, eps)?;
    let rr = r as u64;
    let root_z = to_u64((rr as f64 * (((1.0 + eps).ln() + mu) / r as f64).exp()).ceil(), "z")?;
    let (mut lo, mut hi) = (rr, root_z.max(rr));
    while binomial_big(hi, rr) < target {
        hi = hi.checked_mul(2).ok_or_else(|| Error::Limit("z overflows".into()))?;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if binomial_big(mid, rr) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let z = lo.max(1);
    let free = n - l as u64;
    if z > free {
        return Err(Error::Infeasible(format!("z = {z} pendant vertices do not fit next to the cycle at n = {n}")));
    }
    let (p1, p2) = split_half(p);
    let log_cost = ln_binomial(free, z) + z as f64 * p2.ln() + (free - z) as f64 * ln_1m(p2);
    let certificate = binomial_big(z, rr);
    Ok(PlantPlan {
        detail: PlanDetail::Pendant(PendantDetail { l, r, z_min: z, root_z, p1, p2 }),
        n,
        p,
        eps,
        mu_ln: mu,
        certificate_meets_target: certificate >= target,
        target_copies: target,
        z,
        round_probabilities: vec![p1, p2],
        certificate_copies: certificate,
        log_cost,
        pattern: h,
    })
}

/// Constants of the general plan that the asymptotic argument leaves free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeneralConstants {
    #[serde(rename = "C_H")]
    pub c_big: f64,
    #[serde(rename = "c_H")]
    pub c_small: f64,
}

impl Default for GeneralConstants {
    fn default() -> Self {
        GeneralConstants { c_big: 4.0, c_small: 0.25 }
    }
}

/// Sizes of an (almost) equal split of `total` into `parts`, larger parts first.
pub fn split_sizes(total: u64, parts: usize) -> Vec<u64> {
    let k = parts as u64;
    (0..k).map(|i| total / k + u64::from(i < total % k)).collect()
}

/// Plan planting z disjoint extensions of a G-copy to each cover J_i.
///
/// Covers with μ_J/μ_G > (εμ_K)^{1/r} are dropped one at a time, largest
/// ratio first, never the last one.
pub fn plan_general(
    h: &Graph,
    g: VertexSet,
    covers: &[VertexSet],
    n: u64,
    p: f64,
    eps: f64,
    constants: GeneralConstants,
) -> Result<PlantPlan> {
    check_common(n, p, eps)?;
    if !(constants.c_big > 0.0 && constants.c_small > 0.0 && constants.c_small <= 1.0) {
        return Err(Error::invalid("constants need C_H > 0 and 0 < c_H ≤ 1"));
    }
    if covers.is_empty() {
        return Err(Error::invalid("the general plan needs at least one cover"));
    }
    if n < h.order() as u64 {
        return Err(Error::invalid(format!("n = {n} is smaller than the graph order {}", h.order())));
    }
    let family = primal_family(h)?;
    for (i, &j) in covers.iter().enumerate() {
        if covers[..i].contains(&j) {
            return Err(Error::invalid(format!("cover {} listed twice", j.label_string())));
        }
        if !family.contains(j) || !family.contains(g) || !family.covers(g, j)? {
            return Err(Error::invalid(format!("{} is not a primal cover of {}", j.label_string(), g.label_string())));
        }
    }
    let mu_of = |s: VertexSet| -> Result<f64> { Ok(graph_mu_ln(&h.induced_subgraph(s)?, n, p)) };
    let union = |c: &[VertexSet]| c.iter().fold(g, |a, &b| a.union(b));
    let mu_g = mu_of(g)?;
    let mut kept = covers.to_vec();
    let mut dropped = Vec::new();
    while kept.len() > 1 {
        let bound = (eps.ln() + mu_of(union(&kept))?) / kept.len() as f64;
        let mut worst: Option<(usize, f64)> = None;
        for (i, &j) in kept.iter().enumerate() {
            let ratio = mu_of(j)? - mu_g;
            if ratio > bound && worst.is_none_or(|(_, w)| ratio > w) {
                worst = Some((i, ratio));
            }
        }
        match worst {
            Some((i, _)) => dropped.push(kept.remove(i)),
            None => break,
        }
    }
    let r = kept.len();
    let k = union(&kept);
    let mu_k = mu_of(k)?;
    let z = to_u64(((constants.c_big.ln() + eps.ln() + mu_k) / r as f64).exp().ceil().max(1.0), "z")?;
    let delta = constants.c_small * eps.min(1.0);
    let (p1, p2) = (delta * p, delta * p);
    let p3 = 1.0 - (1.0 - p) / ((1.0 - p1) * (1.0 - p2));
    if !(0.0..=1.0).contains(&p3) {
        return Err(Error::invalid(format!("δ = {delta} leaves no probability for the third round")));
    }
    let vg = g.len();
    let parts = split_sizes(n - vg as u64, r);
    let eg = h.induced_edge_count(g);
    let ext_v: Vec<usize> = kept.iter().map(|j| j.len() - vg).collect();
    let ext_e: Vec<usize> = kept.iter().map(|&j| h.induced_edge_count(j) - eg).collect();
    let mut log_cost = 0.0;
    for i in 0..r {
        let need = z.checked_mul(ext_v[i] as u64);
        if need.is_none_or(|x| x > parts[i]) {
            return Err(Error::Infeasible(format!(
                "{z} disjoint extensions of {} vertices do not fit into a part of {} vertices",
                ext_v[i], parts[i]
            )));
        }
        let shapes = ln_binomial(parts[i], ext_v[i] as u64).exp();
        log_cost += ln_binomial_real(shapes, z) + (ext_e[i] as f64) * z as f64 * p2.ln();
    }
    let mu_h = graph_mu_ln(h, n, p);
    let expected_y = graph_mu_ln(h, n - vg as u64, p3);
    let target = target_copies(mu_h, eps)?;
    let certificate = BigUint::from(z).pow(r as u32);
    Ok(PlantPlan {
        detail: PlanDetail::General(GeneralDetail {
            g,
            covers: kept,
            dropped,
            k,
            r,
            c_big: constants.c_big,
            c_small: constants.c_small,
            delta,
            p1,
            p2,
            p3,
            mu_k_ln: mu_k,
            part_sizes: parts,
            extension_vertices: ext_v,
            extension_edges: ext_e,
            expected_y_ln: expected_y,
            expected_y_ratio: (expected_y - mu_h).exp(),
        }),
        n,
        p,
        eps,
        mu_ln: mu_h,
        certificate_meets_target: certificate >= target,
        target_copies: target,
        z,
        round_probabilities: vec![p1, p2, p3],
        certificate_copies: certificate,
        log_cost,
        pattern: h.clone(),
    })
}

/// Largest z for which the disjoint-triangle cost is summed term by term.
const MIXED_MAX_Z: u64 = 100_000_000;

/// Analytic plan for H_r (r ≥ 7): z disjoint triangles on vertex 1 and
/// ⌈2√z*⌉ clustered path midpoints joined to vertices 3, 4 and one extra vertex.
pub fn plan_mixed(r: usize, n: u64, p: f64, eps: f64) -> Result<PlantPlan> {
    check_common(n, p, eps)?;
    if r < 7 {
        return Err(Error::invalid(format!("the mixed plan needs r ≥ 7, got {r}")));
    }
    let h = badnews(r)?;
    if n < h.order() as u64 {
        return Err(Error::invalid(format!("n = {n} is smaller than the graph order {}", h.order())));
    }
    let v_h = h.order() as f64;
    let rf = r as f64;
    let mu = graph_mu_ln(&h, n, p);
    let target = target_copies(mu, eps)?;
    let omega_ln = (n as f64).ln() + 4.0 / 3.0 * p.ln();
    let gamma = 1.0 / (rf * rf * rf);
    let c_h = 2.0 / (v_h / rf - (rf - 1.0) * gamma);
    let d_h = 1.0 / (v_h / rf - 2.0 + gamma / 2.0);
    let root = ((1.0 + eps).ln() + mu) / rf;
    let z = to_u64((rf * (root - gamma * omega_ln).exp()).ceil().max(1.0), "z")?;
    let z_star = to_u64((root + (rf - 1.0) * gamma * omega_ln).exp().ceil().max(1.0), "z*")?;
    let u_size = (2.0 * (z_star as f64).sqrt()).ceil() as u64;
    let rest = n - 6;
    let v1 = rest / 2;
    let v2 = rest - v1;
    if z > MIXED_MAX_Z {
        return Err(Error::Limit(format!("z = {z} exceeds the evaluation cap {MIXED_MAX_Z}")));
    }
    if 3 * z > v1 || u_size + 1 > v2 {
        return Err(Error::Infeasible(format!("the mixed plant does not fit at n = {n} (z = {z}, |U| = {u_size})")));
    }
    let (p1, p2) = split_half(p);
    let mut disjoint = -ln_factorial(z);
    for j in 0..z {
        disjoint += ln_binomial(v1 - 3 * j, 3) + 4.0 * p2.ln();
    }
    let clustered = 3.0 * u_size as f64 * p2.ln();
    let certificate = binomial_big(z, r as u64 - 1) * binomial_big(u_size, 2);
    let window_exponent = omega_ln / (n as f64).ln().ln();
    Ok(PlantPlan {
        detail: PlanDetail::Mixed(MixedDetail {
            r,
            gamma,
            c_h,
            d_h,
            omega_ln,
            window_exponent,
            in_window: c_h < window_exponent && window_exponent < d_h,
            z_star,
            u_size,
            v1_size: v1,
            v2_size: v2,
            p1,
            p2,
            disjoint_log_cost: disjoint,
            clustered_log_cost: clustered,
        }),
        n,
        p,
        eps,
        mu_ln: mu,
        certificate_meets_target: certificate >= target,
        target_copies: target,
        z,
        round_probabilities: vec![p1, p2],
        certificate_copies: certificate,
        log_cost: disjoint + clustered,
        pattern: h,
    })
}
