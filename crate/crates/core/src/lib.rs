//! Permanental polynomials, permanental roots and permanental energy of
//! simple graphs.
//!
//! The permanental polynomial of a graph `G` with adjacency matrix `A` is
//! `π(G,x) = per(xI − A)`. Its roots `μ_1..μ_n` are generally complex, and
//! the permanental energy is `E_per(G) = Σ |μ_i|`.
//!
//! The crate computes `π(G,x)` exactly (two independent engines), finds its
//! roots numerically, and checks a catalogue of bounds and closed forms for
//! `E_per` on individual graphs and on whole graph corpora.

pub mod bounds;
pub mod charpoly;
pub mod closed_forms;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod orientation;
pub mod permanent;
pub mod poly;
pub mod spectral;

pub use error::{Error, ParseError, Result};
pub use format::{parse_edge_list, parse_graph6, to_graph6, GraphFormat};
pub use graph::{Family, Graph, GraphMetrics};
pub use permanent::{derangement_count, perm_poly_minors, perm_poly_ryser, permanent, Engine, EngineCaps};
pub use poly::IntPolynomial;
pub use spectral::{adjacency_energy, adjacency_spectrum, perm_roots, permanental_energy, RootMultiset, Spectrum};
