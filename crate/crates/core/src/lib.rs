//! Total mutual-visibility in Hamming graphs.
//!
//! A set `X` of vertices of a graph is a total mutual-visibility set when
//! every pair of vertices has a shortest path whose internal vertices avoid
//! `X`. In a Hamming graph `K_{n1} □ ... □ K_{nr}` this happens exactly
//! when no two members of `X` are at distance 2, which turns the largest
//! such set, `mu_t`, into a maximum independent set problem.
//!
//! - [`hamming`]: shapes, vertices, distances, intervals, Cartesian squares
//! - [`visibility`]: the definition-level checker and the Hamming fast paths
//! - [`solver`]: conflict graph, exact branch and bound, brute-force oracle, DIMACS
//! - [`constructions`]: closed-form values, bounds and optimal sets
//! - [`random`]: randomized construction with bad-pair deletion
//! - [`bridge`]: the clique-family view and `ex(K^(r), F_r)`
//! - [`format`]: the `key value` file formats
//! - [`cli`]: the `tmv` command line

pub mod bridge;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod hamming;
pub mod random;
pub mod solver;
pub mod vertex_set;
pub mod visibility;

pub use error::{Error, Result};
pub use graph::GeneralGraph;
pub use hamming::{CartesianSquare, HVertex, HammingShape, VertexIndex};
pub use solver::{mut_exact, ConflictGraph, SolveCertificate, SolveOptions};
pub use vertex_set::VertexSet;
