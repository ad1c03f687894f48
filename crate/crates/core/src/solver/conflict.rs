use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hamming::HammingShape;

use super::bits::Bits;

/// Default vertex cap for conflict graphs and exact solving.
pub const DEFAULT_CAP: u64 = 5000;

/// The graph on `V(K_{n1} □ ... □ K_{nr})` joining exactly the pairs at
/// distance 2. Its independent sets are the total mutual-visibility sets.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    shape: HammingShape,
    rows: Vec<Bits>,
    degrees: Vec<usize>,
}

/// Number of distance-2 pairs: `V * sum_{i<j} (n_i - 1)(n_j - 1) / 2`.
pub fn conflict_edge_count(shape: &HammingShape) -> Result<u128> {
    let mut per_vertex: u128 = 0;
    let sizes = shape.sizes();
    for (i, &a) in sizes.iter().enumerate() {
        for &b in &sizes[i + 1..] {
            let term = u128::from(a - 1) * u128::from(b - 1);
            per_vertex = per_vertex
                .checked_add(term)
                .ok_or(Error::Overflow("conflict edge count"))?;
        }
    }
    let total = u128::from(shape.vertex_count())
        .checked_mul(per_vertex)
        .ok_or(Error::Overflow("conflict edge count"))?;
    Ok(total / 2)
}

pub fn build_conflict_graph(shape: &HammingShape) -> Result<ConflictGraph> {
    build_conflict_graph_with_cap(shape, DEFAULT_CAP)
}

pub fn build_conflict_graph_with_cap(shape: &HammingShape, cap: u64) -> Result<ConflictGraph> {
    if shape.vertex_count() > cap {
        return Err(Error::CapExceeded {
            what: "conflict graph",
            size: shape.vertex_count(),
            cap,
        });
    }
    let n = shape.len();
    let mut rows = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for v in 0..n {
        let mut row = Bits::empty(n);
        let mut deg = 0;
        shape.for_each_distance_two(v, |w| {
            row.insert(w);
            deg += 1;
        });
        rows.push(row);
        degrees.push(deg);
    }
    Ok(ConflictGraph {
        shape: shape.clone(),
        rows,
        degrees,
    })
}

impl ConflictGraph {
    pub fn shape(&self) -> &HammingShape {
        &self.shape
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// DIMACS `p edge` document, vertices 1-indexed in mixed-radix order.
    /// With `complement`, the complement graph is written so that a
    /// maximum-clique solver returns a maximum independent set.
    pub fn to_dimacs(&self, complement: bool) -> String {
        let n = self.vertex_count();
        let m = if complement {
            n * n.saturating_sub(1) / 2 - self.edge_count()
        } else {
            self.edge_count()
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "c {} of the distance-2 graph of K({})",
            if complement { "complement" } else { "edges" },
            self.shape
        );
        let _ = writeln!(out, "p edge {n} {m}");
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) != complement {
                    let _ = writeln!(out, "e {} {}", u + 1, v + 1);
                }
            }
        }
        out
    }
}

pub fn export_dimacs(graph: &ConflictGraph, complement: bool) -> String {
    graph.to_dimacs(complement)
}
