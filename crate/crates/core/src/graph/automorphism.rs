use super::embed::{count_embeddings, find_embedding_colored, Host, SearchLimits, SearchPlan};
use super::{refine_colors, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`automorphism_count_exhaustive`].
pub const EXHAUSTIVE_MAX_ORDER: usize = 12;

/// |Aut(g)| computed along a stabilizer chain.
///
/// At each level the base vertex is taken from the smallest non-trivial cell
/// of the refined colouring, and its orbit under the current pointwise
/// stabilizer is found by asking the embedding engine, one candidate at a
/// time, for an automorphism extending the fixed base. The group order is
/// the product of the orbit lengths.
pub fn automorphism_count(g: &Graph) -> u128 {
    let n = g.order();
    let mut base: Vec<usize> = Vec::new();
    let mut total: u128 = 1;
    loop {
        let colors = refine_colors(g, &base);
        let Some(b) = smallest_cell_rep(&colors) else {
            return total;
        };
        let mut individualized = base.clone();
        individualized.push(b);
        let pattern_colors = refine_colors(g, &individualized);
        let mut fixed: Vec<(usize, usize)> = base.iter().map(|&x| (x, x)).collect();
        fixed.push((b, b));
        let mut orbit = 1u128;
        for w in (0..n).filter(|&w| w != b && colors[w] == colors[b]) {
            individualized.pop();
            individualized.push(w);
            let host_colors = refine_colors(g, &individualized);
            if !same_cell_sizes(&pattern_colors, &host_colors) {
                continue;
            }
            *fixed.last_mut().unwrap() = (b, w);
            let plan = SearchPlan::with_fixed(g, &fixed);
            let found = find_embedding_colored(&plan, g, Some((&pattern_colors, &host_colors)), SearchLimits::default())
                .expect("unbounded search cannot trip a budget");
            if found.is_some() {
                orbit += 1;
            }
        }
        total *= orbit;
        base.push(b);
    }
}

fn smallest_cell_rep(colors: &[u32]) -> Option<usize> {
    let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut size = vec![0usize; k];
    for &c in colors {
        size[c as usize] += 1;
    }
    let cell = (0..k).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c))?;
    colors.iter().position(|&c| c as usize == cell)
}

fn same_cell_sizes(a: &[u32], b: &[u32]) -> bool {
    let hist = |c: &[u32]| {
        let mut h = vec![0usize; c.len()];
        for &x in c {
            h[x as usize] += 1;
        }
        h
    };
    hist(a) == hist(b)
}

/// |Aut(g)| by enumerating every permutation of the vertex set.
pub fn automorphism_count_exhaustive(g: &Graph) -> Result<u128> {
    let n = g.order();
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::Limit(format!(
            "exhaustive automorphism enumeration is capped at order {EXHAUSTIVE_MAX_ORDER}, got {n}"
        )));
    }
    let edges = g.edges();
    let preserves = |perm: &[usize]| edges.iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]));
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = u128::from(preserves(&perm));
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            count += u128::from(preserves(&perm));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

/// Number of injective edge-preserving maps of `g` into itself.
pub fn self_embedding_count(g: &Graph) -> u64 {
    count_embeddings(&SearchPlan::new(g), g, SearchLimits::default()).expect("unbounded search cannot trip a budget")
}

/// Number of unlabeled copies of `pattern` in `host`.
pub fn count_copies<H: Host>(host: &H, pattern: &Graph) -> u64 {
    count_copies_limited(host, pattern, SearchLimits::default()).expect("unbounded search cannot trip a budget")
}

pub(crate) fn count_copies_limited<H: Host>(host: &H, pattern: &Graph, limits: SearchLimits) -> Result<u64> {
    let maps = count_embeddings(&SearchPlan::new(pattern), host, limits)?;
    let aut = automorphism_count(pattern);
    if !(maps as u128).is_multiple_of(aut) {
        return Err(Error::internal(format!("{maps} embeddings not divisible by |Aut| = {aut}")));
    }
    Ok((maps as u128 / aut) as u64)
}
