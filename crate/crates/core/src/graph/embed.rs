//! Backtracking search for injective edge-preserving maps (embeddings) of a
//! small pattern graph into a host graph.
//!
//! Pattern vertices are placed one at a time. Each vertex after the first of
//! its component has an *anchor*, an already placed neighbour, and its
//! candidates are the host neighbours of the anchor's image, filtered by
//! injectivity, degree, optional colour classes and adjacency to the images
//! of the remaining placed neighbours.

use super::{Bits, Graph};
use crate::error::{Error, Result};

/// Read access to a host graph for the embedding search.
pub trait Host {
    type Neighbors<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    fn order(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;
    fn neighbors(&self, v: usize) -> Self::Neighbors<'_>;
}

impl Host for Graph {
    type Neighbors<'a> = Bits;

    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }

    fn neighbors(&self, v: usize) -> Bits {
        Bits(Graph::neighbors(self, v))
    }
}

/// Placement order and consistency checks for one pattern.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    checks: Vec<Vec<usize>>,
    degree: Vec<usize>,
    fixed: Vec<Option<usize>>,
}

impl SearchPlan {
    pub fn new(pattern: &Graph) -> Self {
        Self::with_fixed(pattern, &[])
    }

    /// Plan whose first steps place `fixed[i].0` exactly onto `fixed[i].1`.
    pub fn with_fixed(pattern: &Graph, fixed: &[(usize, usize)]) -> Self {
        let n = pattern.order();
        let mut position = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut forced = Vec::with_capacity(n);
        for &(p, h) in fixed {
            if position[p] == usize::MAX {
                position[p] = order.len();
                order.push(p);
                forced.push(Some(h));
            }
        }
        while order.len() < n {
            let placed: u32 = order.iter().fold(0, |m, &v| m | 1 << v);
            let next = (0..n)
                .filter(|&v| position[v] == usize::MAX)
                .max_by_key(|&v| {
                    let back = (pattern.neighbors(v) & placed).count_ones();
                    (back, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            position[next] = order.len();
            order.push(next);
            forced.push(None);
        }
        let mut anchor = Vec::with_capacity(n);
        let mut checks = Vec::with_capacity(n);
        let mut degree = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let mut back: Vec<usize> = Bits(pattern.neighbors(v))
                .map(|w| position[w])
                .filter(|&j| j < i)
                .collect();
            back.sort_unstable();
            anchor.push(back.first().copied());
            checks.push(back.into_iter().skip(1).collect());
            degree.push(pattern.degree(v));
        }
        SearchPlan { order, anchor, checks, degree, fixed: forced }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Upper bound on the number of complete placements the search can visit.
    ///
    /// Counts homomorphisms of the anchor forest (respecting the degree
    /// filter) into the host by dynamic programming; the search only ever
    /// extends along anchor edges, so this bounds its leaves.
    pub fn tree_volume<H: Host>(&self, host: &H) -> TreeVolume {
        let k = self.order.len();
        let hn = host.order();
        let mut weight: Vec<Vec<f64>> = vec![vec![1.0; hn]; k];
        for (i, w) in weight.iter_mut().enumerate() {
            for (h, x) in w.iter_mut().enumerate() {
                if host.degree(h) < self.degree[i] {
                    *x = 0.0;
                }
            }
        }
        let mut total = 1.0f64;
        for i in (0..k).rev() {
            match self.anchor[i] {
                Some(a) => {
                    let child = std::mem::take(&mut weight[i]);
                    let parent = &mut weight[a];
                    for (h, x) in parent.iter_mut().enumerate() {
                        if *x != 0.0 {
                            let s: f64 = host.neighbors(h).map(|w| child[w]).sum();
                            *x *= s;
                        }
                    }
                }
                None => total *= weight[i].iter().sum::<f64>(),
            }
        }
        TreeVolume(total)
    }
}

/// Estimated (upper-bounded) search volume of a plan on a host.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct TreeVolume(pub f64);

/// Optional node budget for a search; `None` means unbounded.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
}

struct Search<'c> {
    colors: Option<(&'c [u32], &'c [u32])>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    fn run<H: Host>(
        &mut self,
        plan: &SearchPlan,
        host: &H,
        depth: usize,
        leaf: &mut dyn FnMut(&[usize]) -> Flow,
    ) -> Result<Flow> {
        if depth == plan.order.len() {
            return Ok(leaf(&self.image));
        }
        let pv = plan.order[depth];
        let want_deg = plan.degree[depth];
        let accept = |s: &Self, h: usize| -> bool {
            if s.used[h] || host.degree(h) < want_deg {
                return false;
            }
            if let Some((pc, hc)) = s.colors {
                if pc[pv] != hc[h] {
                    return false;
                }
            }
            plan.checks[depth].iter().all(|&j| host.adjacent(s.image[j], h))
        };
        let mut visit = |s: &mut Self, h: usize| -> Result<Flow> {
            s.nodes += 1;
            if s.nodes > s.max_nodes {
                return Err(Error::SearchVolume { estimate: s.nodes as f64, limit: s.max_nodes as f64 });
            }
            s.image[depth] = h;
            s.used[h] = true;
            let flow = s.run(plan, host, depth + 1, leaf);
            s.used[h] = false;
            flow
        };
        if let Some(h) = plan.fixed[depth] {
            if h < host.order() && accept(self, h) {
                return visit(self, h);
            }
            return Ok(Flow::Continue);
        }
        match plan.anchor[depth] {
            Some(a) => {
                for h in host.neighbors(self.image[a]) {
                    if accept(self, h) {
                        if let Flow::Stop = visit(self, h)? {
                            return Ok(Flow::Stop);
                        }
                    }
                }
            }
            None => {
                for h in 0..host.order() {
                    if accept(self, h) {
                        if let Flow::Stop = visit(self, h)? {
                            return Ok(Flow::Stop);
                        }
                    }
                }
            }
        }
        Ok(Flow::Continue)
    }
}

fn new_search<'c>(plan: &SearchPlan, host_order: usize, colors: Option<(&'c [u32], &'c [u32])>, limits: SearchLimits) -> Search<'c> {
    Search {
        colors,
        image: vec![usize::MAX; plan.len()],
        used: vec![false; host_order],
        nodes: 0,
        max_nodes: limits.max_nodes.unwrap_or(u64::MAX),
    }
}

/// Number of injective edge-preserving maps from the plan's pattern into `host`.
pub fn count_embeddings<H: Host>(plan: &SearchPlan, host: &H, limits: SearchLimits) -> Result<u64> {
    count_embeddings_colored(plan, host, None, limits)
}

pub(crate) fn count_embeddings_colored<H: Host>(
    plan: &SearchPlan,
    host: &H,
    colors: Option<(&[u32], &[u32])>,
    limits: SearchLimits,
) -> Result<u64> {
    if plan.len() > host.order() {
        return Ok(0);
    }
    let mut search = new_search(plan, host.order(), colors, limits);
    let mut count = 0u64;
    search.run(plan, host, 0, &mut |_| {
        count += 1;
        Flow::Continue
    })?;
    Ok(count)
}

/// First embedding found, as `pattern vertex -> host vertex`.
pub fn find_embedding<H: Host>(plan: &SearchPlan, host: &H, limits: SearchLimits) -> Result<Option<Vec<usize>>> {
    find_embedding_colored(plan, host, None, limits)
}

pub(crate) fn find_embedding_colored<H: Host>(
    plan: &SearchPlan,
    host: &H,
    colors: Option<(&[u32], &[u32])>,
    limits: SearchLimits,
) -> Result<Option<Vec<usize>>> {
    if plan.len() > host.order() {
        return Ok(None);
    }
    let mut search = new_search(plan, host.order(), colors, limits);
    let mut found = None;
    search.run(plan, host, 0, &mut |image| {
        let mut map = vec![0; image.len()];
        for (i, &h) in image.iter().enumerate() {
            map[plan.order[i]] = h;
        }
        found = Some(map);
        Flow::Stop
    })?;
    Ok(found)
}
