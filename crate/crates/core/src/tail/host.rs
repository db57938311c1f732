use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Host;

/// Largest number of vertices of a sampled host.
pub const MAX_HOST_ORDER: usize = 512;

/// Host graph with sorted adjacency lists plus an adjacency bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseHost {
    adj: Vec<Vec<u32>>,
    bits: Vec<u64>,
    words: usize,
    edges: usize,
}

impl SparseHost {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_HOST_ORDER {
            return Err(Error::Limit(format!("host order {n} exceeds {MAX_HOST_ORDER}")));
        }
        let words = n.div_ceil(64).max(1);
        Ok(SparseHost { adj: vec![Vec::new(); n], bits: vec![0; n * words], words, edges: 0 })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Inserts `{u, v}`; returns whether it was new. Panics on out-of-range or loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.order() && v < self.order(), "invalid host edge {{{u}, {v}}}");
        if self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            self.bits[a * self.words + b / 64] |= 1 << (b % 64);
            let list = &mut self.adj[a];
            let at = list.partition_point(|&x| (x as usize) < b);
            list.insert(at, b as u32);
        }
        self.edges += 1;
        true
    }

    /// Adds every edge of `other` (same order).
    pub fn union_with(&mut self, other: &SparseHost) {
        for (u, v) in other.edges() {
            self.add_edge(u, v);
        }
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().map(|&v| v as usize).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }
}

impl Host for SparseHost {
    type Neighbors<'a> = std::iter::Map<std::iter::Copied<std::slice::Iter<'a, u32>>, fn(u32) -> usize>;

    fn order(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }

    fn neighbors(&self, v: usize) -> Self::Neighbors<'_> {
        self.adj[v].iter().copied().map(|x| x as usize)
    }
}

/// Generator for stream `stream` of `seed`: ChaCha8 seeded with the 64-bit
/// seed, stream selected with `set_stream`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform in [0, 1) with 53 random bits.
pub fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// G(n, p) on stream 0 of `seed`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<SparseHost> {
    sample_gnp_stream(n, p, seed, 0)
}

/// G(n, p): pairs {i, j}, i < j, visited lexicographically; each is kept when
/// the next uniform draw is below p.
pub fn sample_gnp_stream(n: usize, p: f64, seed: u64, stream: u64) -> Result<SparseHost> {
    crate::exponents::check_probability(p)?;
    let mut host = SparseHost::empty(n)?;
    let mut rng = stream_rng(seed, stream);
    for i in 0..n {
        for j in i + 1..n {
            if unit(&mut rng) < p {
                host.add_edge(i, j);
            }
        }
    }
    Ok(host)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(sample_gnp(30, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp(30, 1.0, 1).unwrap().edge_count(), 435);
        assert!(sample_gnp(513, 0.5, 1).is_err());
        assert!(sample_gnp(10, 1.5, 1).is_err());
    }

    #[test]
    fn reproducible_and_stream_dependent() {
        let a = sample_gnp_stream(80, 0.3, 9, 4).unwrap();
        let b = sample_gnp_stream(80, 0.3, 9, 4).unwrap();
        let c = sample_gnp_stream(80, 0.3, 9, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn adjacency_is_consistent() {
        let h = sample_gnp(100, 0.2, 3).unwrap();
        for (u, v) in h.edges() {
            assert!(h.has_edge(v, u));
        }
        let total: usize = (0..100).map(|v| Host::degree(&h, v)).sum();
        assert_eq!(total, 2 * h.edge_count());
    }
}
