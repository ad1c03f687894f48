//! Exact computation of the total mutual-visibility number.
//!
//! A set is total mutual-visibility in a Hamming graph iff it has no pair
//! at distance 2, so `mu_t` is the independence number of the distance-2
//! [`ConflictGraph`]. [`mut_exact`] runs the branch and bound of
//! [`max_independent_set`]; [`brute_force_mut`] is an independent oracle
//! that never touches the conflict graph.

mod bits;
mod brute;
mod conflict;
mod mis;

use std::fmt;
use std::str::FromStr;

pub use brute::{brute_force_mut, BRUTE_FORCE_CAP, EXHAUSTIVE_CAP};
pub use conflict::{
    build_conflict_graph, build_conflict_graph_with_cap, conflict_edge_count, export_dimacs, ConflictGraph, DEFAULT_CAP,
};
pub use mis::{max_independent_set, SolveOptions};

use crate::error::{Error, Result};
use crate::hamming::HammingShape;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BranchAndBound,
    BruteForce,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::BranchAndBound => "bb",
            Method::BruteForce => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bb" => Ok(Method::BranchAndBound),
            "brute" => Ok(Method::BruteForce),
            _ => Err(Error::InvalidParameter(format!("unknown solve method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub millis: u64,
    pub method: Method,
}

/// Result of an exact solve: the value, a witness achieving it, and
/// whether the search finished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveCertificate {
    pub shape: HammingShape,
    pub value: usize,
    /// `false` only when the search hit its time limit; `value` is then
    /// the best set found, not a proven optimum.
    pub optimal: bool,
    pub witness: VertexSet,
    pub stats: SolveStats,
}

/// `mu_t` of the Hamming graph with the given shape, with a witness.
pub fn mut_exact(shape: &HammingShape) -> Result<SolveCertificate> {
    mut_exact_with(shape, &SolveOptions::default(), DEFAULT_CAP)
}

pub fn mut_exact_with(shape: &HammingShape, opts: &SolveOptions, cap: u64) -> Result<SolveCertificate> {
    let graph = build_conflict_graph_with_cap(shape, cap)?;
    max_independent_set(&graph, opts)
}
