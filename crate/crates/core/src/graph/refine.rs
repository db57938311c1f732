use super::{Bits, Graph};

/// Colour refinement (1-dimensional Weisfeiler–Leman) with the listed
/// vertices individualized, in that order.
///
/// Colours are ranks of sorted signatures, so any automorphism fixing the
/// individualized vertices pointwise preserves the returned colouring.
pub(crate) fn refine_colors(g: &Graph, individualized: &[usize]) -> Vec<u32> {
    let n = g.order();
    let mut key: Vec<(u32, u32)> = (0..n).map(|v| (1, g.degree(v) as u32)).collect();
    for (k, &v) in individualized.iter().enumerate() {
        key[v] = (0, k as u32);
    }
    let mut colors = ranks(&key);
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = Bits(g.neighbors(v)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}
