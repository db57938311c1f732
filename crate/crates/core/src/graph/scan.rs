use rayon::prelude::*;

use super::Graph;

/// State handed to the visitor for one vertex subset.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SubsetInfo {
    pub mask: u32,
    pub edges: usize,
    /// Union of the neighbourhoods of the members.
    pub reach: u32,
}

impl SubsetInfo {
    pub fn has_isolated(&self) -> bool {
        self.mask & !self.reach != 0
    }
}

/// Visits every non-empty vertex subset of `g` together with its induced
/// edge count.
///
/// The top vertices are split off as independent rayon tasks; the rest are
/// explored depth-first with incremental edge counts. Per-task accumulators
/// are merged in mask order, so the result does not depend on scheduling.
pub(crate) fn scan_induced<T, I, V, M>(g: &Graph, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, SubsetInfo) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let n = g.order();
    let split = n.min(6);
    let low = n - split;
    (0u32..1 << split)
        .into_par_iter()
        .map(|top| {
            let mut acc = init();
            let mut start = SubsetInfo { mask: 0, edges: 0, reach: 0 };
            for b in 0..split {
                if top >> b & 1 == 1 {
                    let v = low + b;
                    start.edges += (g.neighbors(v) & start.mask).count_ones() as usize;
                    start.mask |= 1 << v;
                    start.reach |= g.neighbors(v);
                }
            }
            descend(g, low, start, &mut acc, &visit);
            acc
        })
        .reduce_with(&merge)
        .unwrap_or_else(init)
}

fn descend<T, V: Fn(&mut T, SubsetInfo)>(g: &Graph, remaining: usize, s: SubsetInfo, acc: &mut T, visit: &V) {
    if remaining == 0 {
        if s.mask != 0 {
            visit(acc, s);
        }
        return;
    }
    let v = remaining - 1;
    descend(g, v, s, acc, visit);
    let with = SubsetInfo {
        mask: s.mask | 1 << v,
        edges: s.edges + (g.neighbors(v) & s.mask).count_ones() as usize,
        reach: s.reach | g.neighbors(v),
    };
    descend(g, v, with, acc, visit);
}
