//! Machine-readable reports shared by the command line and the C interface.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exponents::{
    fractional_independence, is_balanced, is_strictly_balanced, m_density, ExponentContext, ExponentReport, Mechanism,
};
use crate::graph::{Graph, VertexSet};
use crate::primal::{primal_family, ClaimReport, PrimalFamily, Verdict, ZetaResult, MAX_PRIMAL_ORDER};
use crate::rational::{self, Rational};
use crate::tail::{plan_mixed, plan_pendant, with_pool};

/// Version of every JSON document written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub order: usize,
    pub edges: usize,
    pub max_degree: usize,
    /// Edges as 1-based label pairs.
    pub edge_list: Vec<[usize; 2]>,
    #[serde(serialize_with = "rational::serialize")]
    pub density: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub m: Rational,
    pub densest: VertexSet,
    pub balanced: bool,
    pub strictly_balanced: bool,
}

impl GraphSummary {
    pub fn of(h: &Graph) -> Self {
        let md = m_density(h);
        GraphSummary {
            order: h.order(),
            edges: h.edge_count(),
            max_degree: h.max_degree(),
            edge_list: h.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
            density: Rational::new(h.edge_count() as i64, h.order() as i64),
            m: md.density.value(),
            densest: md.witness,
            balanced: h.edge_count() > 0 && is_balanced(h),
            strictly_balanced: h.edge_count() > 0 && is_strictly_balanced(h),
        }
    }
}

/// One element of the grading chain with its own ζ value, when it has covers.
#[derive(Clone, Debug, Serialize)]
pub struct GradingEntry {
    pub set: VertexSet,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub zeta: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub graph: GraphSummary,
    #[serde(serialize_with = "rational::serialize")]
    pub alpha_star: Rational,
    pub primal: Option<PrimalFamily>,
    pub grading: Option<Vec<GradingEntry>>,
    pub zeta: Option<ZetaResult>,
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<ClaimReport>,
    pub exponents: Vec<ExponentReport>,
    /// Parts of the analysis that were skipped, with the reason.
    pub notes: Vec<String>,
}

/// A point (n, p, ε) at which exponent terms are evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub n: u64,
    pub p: f64,
    pub eps: f64,
}

/// Full structural analysis of `h`, plus exponent reports at `points`.
pub fn analyze(h: &Graph, points: &[EvalPoint], with_claims: bool) -> Result<AnalysisReport> {
    let mut notes = Vec::new();
    let graph = GraphSummary::of(h);
    let alpha_star = fractional_independence(h);
    let (mut primal, mut grading, mut zeta, mut verdict, mut claims) = (None, None, None, None, None);
    if h.edge_count() == 0 {
        notes.push("the graph has no edges: primal family and exponents are undefined".into());
    } else if h.order() > MAX_PRIMAL_ORDER {
        notes.push(format!("primal family skipped: order {} exceeds {MAX_PRIMAL_ORDER}", h.order()));
    } else {
        let family = primal_family(h)?;
        let z = family.zeta();
        grading = match family.grading() {
            Ok(chain) => Some(
                chain
                    .into_iter()
                    .map(|set| GradingEntry { set, zeta: z.as_ref().and_then(|z| z.value_at(set)) })
                    .collect(),
            ),
            Err(e) => {
                notes.push(format!("grading skipped: {e}"));
                None
            }
        };
        verdict = Some(family.counterexample_check());
        if with_claims {
            claims = Some(family.claim_suite());
        }
        zeta = z;
        primal = Some(family);
    }
    let mut exponents = Vec::new();
    if !points.is_empty() && h.edge_count() > 0 {
        let ctx = ExponentContext::new(h)?;
        for pt in points {
            exponents.push(ctx.report(pt.n, pt.p, pt.eps)?);
        }
    }
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        graph,
        alpha_star,
        primal,
        grading,
        zeta,
        verdict,
        claims,
        exponents,
        notes,
    })
}

/// Planted constructions whose cost is added to sweep rows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepPlans {
    /// (ℓ, r) of a cycle with pendant edges.
    pub pendant: Option<(usize, usize)>,
    /// r of the H_r family.
    pub mixed: Option<usize>,
}

/// One grid point of a sweep; costs are ln of the exponent (ln of −ln probability bound).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub p: f64,
    pub np: f64,
    pub phi_ln: f64,
    #[serde(rename = "M_log_term_ln")]
    pub m_log_term_ln: f64,
    pub zeta_term_ln: Option<f64>,
    pub pendant_cost_ln: Option<f64>,
    pub mixed_cost_ln: Option<f64>,
    pub mechanism: Mechanism,
}

/// Evaluates the exponent terms at every `np` value; rows keep the grid order.
pub fn sweep(ctx: &ExponentContext, n: u64, nps: &[f64], eps: f64, plans: SweepPlans) -> Result<Vec<SweepRow>> {
    let row = |&np: &f64| -> Result<SweepRow> {
        let p = np / n as f64;
        let r = ctx.report(n, p, eps)?;
        let pendant_cost_ln = match plans.pendant {
            Some((l, rr)) => plan_pendant(l, rr, n, p, eps).ok().map(|plan| plan.cost_exponent_ln()),
            None => None,
        };
        let mixed_cost_ln = match plans.mixed {
            Some(rr) => plan_mixed(rr, n, p, eps).ok().map(|plan| plan.cost_exponent_ln()),
            None => None,
        };
        Ok(SweepRow {
            n,
            p,
            np,
            phi_ln: r.phi_ln,
            m_log_term_ln: r.m_log_term_ln,
            zeta_term_ln: r.zeta_term_ln,
            pendant_cost_ln,
            mixed_cost_ln,
            mechanism: r.mechanism,
        })
    };
    with_pool(|| nps.par_iter().map(row).collect::<Result<Vec<_>>>())?
}

/// CSV rendering of sweep rows; absent values are empty cells.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| crate::Error::internal(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| crate::Error::internal(format!("csv: {e}")))
}

/// `count` log-spaced values from `start` to `stop` inclusive.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) || count == 0 {
        return Err(crate::Error::invalid("a grid needs positive finite endpoints and at least one point"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    if start == stop {
        return Err(crate::Error::invalid("a grid with several points needs distinct endpoints"));
    }
    let (a, b) = (start.ln(), stop.ln());
    Ok((0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect())
}
