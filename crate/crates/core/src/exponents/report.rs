use serde::Serialize;

use super::density::{is_strictly_balanced, m_density};
use super::mu::mu_ln;
use super::subgraphs::{Objective, SubgraphIndex, SubgraphMin};
use super::{m_parameter_with, MBranch};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, Graph};
use crate::primal::primal_family;
use crate::rational::{self, to_f64, Rational};

/// Which lower-bound mechanism attains the predicted minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    Disjoint,
    Clustered,
    LocallyDisjoint,
}

impl Mechanism {
    pub fn as_str(self) -> &'static str {
        match self {
            Mechanism::Disjoint => "disjoint",
            Mechanism::Clustered => "clustered",
            Mechanism::LocallyDisjoint => "locally_disjoint",
        }
    }
}

/// Every exponent term at one (n, p, ε); `_ln` fields are natural logs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    pub n: u64,
    pub p: f64,
    pub eps: f64,
    pub mu_ln: f64,
    pub phi_ln: f64,
    pub phi_witness: SubgraphMin,
    #[serde(rename = "M_ln")]
    pub m_ln: f64,
    #[serde(rename = "M_branch")]
    pub m_branch: MBranch,
    #[serde(rename = "M_witness")]
    pub m_witness: Option<SubgraphMin>,
    #[serde(rename = "M_log_term_ln")]
    pub m_log_term_ln: f64,
    /// min over G of μ_G^{v_G/α*_G}, the variant with exponent v/α*.
    #[serde(rename = "M_vertex_scaled_ln")]
    pub m_vertex_scaled_ln: f64,
    /// ln(n·p^m).
    pub omega_ln: f64,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub zeta: Option<Rational>,
    /// ln(ω^ζ · ln ω); absent for strictly balanced graphs or when ω ≤ 1.
    pub zeta_term_ln: Option<f64>,
    pub conjectured_min_ln: f64,
    pub mechanism: Mechanism,
    /// ln(μ² / Φ).
    pub variance_estimate_ln: f64,
    /// False when Φ and M were minimized over induced subgraphs only.
    pub exact: bool,
}

/// Per-graph data reused across many (n, p, ε) evaluations.
pub struct ExponentContext {
    graph: Graph,
    index: SubgraphIndex,
    aut: u128,
    m: Rational,
    zeta: Option<Rational>,
}

impl ExponentContext {
    pub fn new(h: &Graph) -> Result<Self> {
        let index = SubgraphIndex::build(h)?;
        let m = m_density(h).density.value();
        let zeta = if is_strictly_balanced(h) {
            None
        } else {
            primal_family(h)?.zeta().map(|z| z.zeta)
        };
        Ok(ExponentContext { graph: h.clone(), index, aut: automorphism_count(h), m, zeta })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn m(&self) -> Rational {
        self.m
    }

    pub fn zeta(&self) -> Option<Rational> {
        self.zeta
    }

    pub fn index(&self) -> &SubgraphIndex {
        &self.index
    }

    pub fn mu_ln(&self, n: u64, p: f64) -> f64 {
        mu_ln(n, self.graph.order(), self.graph.edge_count(), self.aut, p)
    }

    pub fn report(&self, n: u64, p: f64, eps: f64) -> Result<ExponentReport> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::invalid(format!("the exponent report needs 0 < p < 1, got {p}")));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid(format!("eps must be positive, got {eps}")));
        }
        let phi = self.index.minimize(n, p, Objective::Mu)?;
        let m = m_parameter_with(&self.index, n, p)?;
        let scaled = self.index.minimize(n, p, Objective::MuRootScaled)?;
        let m_log_term_ln = m.ln + (-p.ln()).ln();
        let omega_ln = (n as f64).ln() + to_f64(&self.m) * p.ln();
        let zeta_term_ln = match self.zeta {
            Some(z) if omega_ln > 0.0 => Some(to_f64(&z) * omega_ln + omega_ln.ln()),
            _ => None,
        };
        let mut terms = vec![(phi.value_ln, Mechanism::Disjoint), (m_log_term_ln, Mechanism::Clustered)];
        if let Some(t) = zeta_term_ln {
            terms.push((t, Mechanism::LocallyDisjoint));
        }
        // strict comparison keeps the earlier mechanism on ties
        let (min, mechanism) = terms.iter().skip(1).fold(terms[0], |best, &t| if t.0 < best.0 { t } else { best });
        let mu = self.mu_ln(n, p);
        let phi_ln = phi.value_ln;
        Ok(ExponentReport {
            n,
            p,
            eps,
            mu_ln: mu,
            phi_ln: phi.value_ln,
            exact: phi.exact,
            phi_witness: phi,
            m_ln: m.ln,
            m_branch: m.branch,
            m_witness: m.witness,
            m_log_term_ln,
            m_vertex_scaled_ln: scaled.value_ln,
            omega_ln,
            zeta: self.zeta,
            zeta_term_ln,
            conjectured_min_ln: min,
            mechanism,
            variance_estimate_ln: 2.0 * mu - phi_ln,
        })
    }
}

/// Exponent report for `h` at (n, p, ε).
pub fn conjecture_report(h: &Graph, n: u64, p: f64, eps: f64) -> Result<ExponentReport> {
    ExponentContext::new(h)?.report(n, p, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strictly_balanced_has_no_zeta_term() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = conjecture_report(&c4, 1000, 0.01, 1.0).unwrap();
        assert!(r.zeta_term_ln.is_none());
        assert_eq!(r.conjectured_min_ln, r.phi_ln.min(r.m_log_term_ln));
    }

    #[test]
    fn variance_estimate() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = conjecture_report(&tri, 100, 0.1, 1.0).unwrap();
        assert!((r.variance_estimate_ln - (2.0 * r.mu_ln - r.phi_ln)).abs() < 1e-12);
    }
}
