//! Densities and the exponent quantities built from expected subgraph counts.

mod alpha;
mod density;
mod flow;
mod mu;
mod report;
mod subgraphs;

use serde::Serialize;

pub use alpha::fractional_independence;
pub use density::{is_balanced, is_strictly_balanced, m_density, max_density_within, Density, MaxDensity};
pub use mu::{mu, mu_ln, Mu};
pub(crate) use mu::check_probability;
pub use report::{conjecture_report, ExponentContext, ExponentReport, Mechanism};
pub use subgraphs::{Objective, SubgraphIndex, SubgraphMin, EXACT_EDGE_LIMIT};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Φ(n, p): the smallest expected count over subgraphs with at least one edge.
pub fn phi(h: &Graph, n: u64, p: f64) -> Result<SubgraphMin> {
    SubgraphIndex::build(h)?.minimize(n, p, Objective::Mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MBranch {
    /// p < n^{−1/Δ}: minimum of μ_G^{1/α*_G}.
    SmallP,
    /// Otherwise n²·p^Δ.
    LargeP,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MParameter {
    pub ln: f64,
    pub branch: MBranch,
    pub witness: Option<SubgraphMin>,
}

/// M(n, p), using an index built for `h`.
pub fn m_parameter_with(index: &SubgraphIndex, n: u64, p: f64) -> Result<MParameter> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("M needs 0 < p < 1, got {p}")));
    }
    let delta = index.host().max_degree();
    let threshold = (n as f64).powf(-1.0 / delta as f64);
    if p < threshold {
        let w = index.minimize(n, p, Objective::MuRoot)?;
        Ok(MParameter { ln: w.value_ln, branch: MBranch::SmallP, witness: Some(w) })
    } else {
        Ok(MParameter { ln: 2.0 * (n as f64).ln() + delta as f64 * p.ln(), branch: MBranch::LargeP, witness: None })
    }
}

pub fn m_parameter(h: &Graph, n: u64, p: f64) -> Result<MParameter> {
    m_parameter_with(&SubgraphIndex::build(h)?, n, p)
}
