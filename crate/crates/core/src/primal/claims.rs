use serde::Serialize;

use super::{primal_family, PrimalFamily};
use crate::error::Result;
use crate::graph::Graph;

/// Outcome of one structural check; `counterexample` describes the first violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl ClaimCheck {
    fn from(first_failure: Option<String>) -> Self {
        ClaimCheck { passed: first_failure.is_none(), counterexample: first_failure }
    }
}

/// Structural facts every primal family satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    /// The union of any two members is a member.
    pub union_closed: ClaimCheck,
    /// For every cover pair (G, J), the graph induced on V(J) ∖ V(G) is connected.
    pub cover_differences_connected: ClaimCheck,
    /// For every G, the sets V(J) ∖ V(G) over its covers J are pairwise disjoint.
    pub cover_differences_disjoint: ClaimCheck,
    pub passed: bool,
}

pub fn claim_suite(h: &Graph) -> Result<ClaimReport> {
    Ok(primal_family(h)?.claim_suite())
}

impl PrimalFamily {
    pub fn claim_suite(&self) -> ClaimReport {
        let members = &self.members;
        let union_closed = ClaimCheck::from(members.iter().enumerate().find_map(|(i, &a)| {
            members[i + 1..].iter().find_map(|&b| {
                (!self.contains(a.union(b))).then(|| format!("{} ∪ {} is not primal", a.label_string(), b.label_string()))
            })
        }));
        let connected = ClaimCheck::from(self.cover_edges.iter().find_map(|&(i, j)| {
            let diff = members[j].difference(members[i]);
            (!self.host.is_connected_within(diff))
                .then(|| format!("{} ∖ {} is disconnected", members[j].label_string(), members[i].label_string()))
        }));
        let disjoint = ClaimCheck::from((0..members.len()).find_map(|i| {
            let g = members[i];
            let covers = self.cover_indices(i);
            covers.iter().enumerate().find_map(|(x, &a)| {
                covers[x + 1..].iter().find_map(|&b| {
                    let da = members[a].difference(g);
                    let db = members[b].difference(g);
                    (!da.is_disjoint(db)).then(|| {
                        format!(
                            "covers {} and {} of {} overlap outside it",
                            members[a].label_string(),
                            members[b].label_string(),
                            g.label_string()
                        )
                    })
                })
            })
        }));
        let passed = union_closed.passed && connected.passed && disjoint.passed;
        ClaimReport { union_closed, cover_differences_connected: connected, cover_differences_disjoint: disjoint, passed }
    }
}
