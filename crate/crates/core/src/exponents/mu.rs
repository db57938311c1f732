use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{automorphism_count, Graph};
use crate::logmath::ln_falling_factorial;

/// ln of the expected number of unlabeled copies of a graph with `v`
/// vertices, `e` edges and `aut` automorphisms in G(n, p):
/// ln[(n)_v / aut] + e·ln p. Returns `-inf` when p = 0 and e ≥ 1.
pub fn mu_ln(n: u64, v: usize, e: usize, aut: u128, p: f64) -> f64 {
    let edge_term = if e == 0 { 0.0 } else { e as f64 * p.ln() };
    ln_falling_factorial(n, v as u64) - (aut as f64).ln() + edge_term
}

/// Expected copy count on both scales.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mu {
    /// Natural log; `-inf` encodes zero.
    pub ln: f64,
    /// Linear value when it is a finite `f64`.
    pub value: Option<f64>,
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("probability {p} outside [0, 1]")))
    }
}

/// E[number of copies of g in G(n, p)].
pub fn mu(g: &Graph, n: u64, p: f64) -> Result<Mu> {
    check_probability(p)?;
    let v = g.order();
    if (n as u128) < v as u128 {
        return Err(Error::invalid(format!("n = {n} is smaller than the graph order {v}")));
    }
    let aut = automorphism_count(g);
    let ln = mu_ln(n, v, g.edge_count(), aut, p);
    let mut linear = 1.0f64;
    for i in 0..v as u64 {
        linear *= (n - i) as f64;
    }
    linear = linear / aut as f64 * p.powi(g.edge_count() as i32);
    Ok(Mu { ln, value: linear.is_finite().then_some(linear) })
}
