use num_rational::Ratio;

use crate::graph::{Bits, Graph};
use crate::rational::Rational;

/// Fractional independence number α*(g): the maximum of Σ f(v) over
/// f: V → [0, 1] with f(u) + f(v) ≤ 1 on every edge.
///
/// Equals v − ν/2, where ν is the maximum matching size of the bipartite
/// double cover (the complementary fractional vertex cover has value ν/2).
pub fn fractional_independence(g: &Graph) -> Rational {
    let n = g.order();
    let nu = double_cover_matching(g);
    Ratio::new(2 * n as i64 - nu as i64, 2)
}

fn double_cover_matching(g: &Graph) -> usize {
    let n = g.order();
    let mut right_match = vec![usize::MAX; n];
    let mut size = 0;
    for u in 0..n {
        let mut seen = 0u32;
        if try_augment(g, u, &mut seen, &mut right_match) {
            size += 1;
        }
    }
    size
}

fn try_augment(g: &Graph, u: usize, seen: &mut u32, right_match: &mut [usize]) -> bool {
    for w in Bits(g.neighbors(u) & !*seen) {
        *seen |= 1 << w;
        if right_match[w] == usize::MAX || try_augment(g, right_match[w], seen, right_match) {
            right_match[w] = u;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(fractional_independence(&k2), Ratio::from_integer(1));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(fractional_independence(&star), Ratio::from_integer(3));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(fractional_independence(&c5), Ratio::new(5, 2));
        assert_eq!(fractional_independence(&Graph::empty(4).unwrap()), Ratio::from_integer(4));
    }
}
