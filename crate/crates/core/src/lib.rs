//! Exact and Monte Carlo tools for upper tails of subgraph counts in the
//! binomial random graph G(n, p).
//!
//! The crate is organised bottom-up: [`graph`] holds small graphs and the
//! embedding engine, [`exponents`] the density and exponent quantities,
//! [`primal`] the lattice of densest subsets, [`families`] the named graph
//! constructions, and [`tail`] sampling plus planted constructions.

pub mod error;
pub mod exponents;
pub mod families;
pub mod graph;
pub mod logmath;
pub mod primal;
pub mod rational;
pub mod report;
pub mod tail;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
