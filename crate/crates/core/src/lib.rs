//! Maximum-clique heuristics driven by continuous-time quantum walks.
//!
//! A walk started at a vertex of a graph evolves under `exp(iAt)`; its
//! amplitude at every vertex is a sum of oscillations at the adjacency
//! eigenvalues. On center graphs, the weight each vertex carries at the
//! largest eigenvalue singles out members of the maximum clique. The
//! [`solver`] module turns that observation into greedy and recursive
//! search procedures; [`ideal`] builds the graph families where the
//! relationship is exact and checks the walk-count identities behind it.
//!
//! [`oracle`] supplies exact clique numbers for verification at desk scale.

pub mod graph;
pub mod ideal;
pub mod io;
pub mod oracle;
pub mod random;
pub mod solver;
pub mod spectral;

pub use graph::{Clique, Graph, GraphError, Label, Procedure};
pub use spectral::{EigenSystem, IntensityVector, WalkTable};
