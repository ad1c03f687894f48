//! Explicit undirected graphs, used by the definition-level visibility
//! checker and by tests that compare against the coordinate model.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hamming::HammingShape;

/// Largest Hamming graph that [`GeneralGraph::hamming`] will materialize.
pub const MATERIALIZE_CAP: u64 = 5000;

/// A simple connected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralGraph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl GeneralGraph {
    /// Builds a graph from 0-based edges. Rejects self-loops, out-of-range
    /// endpoints and disconnected graphs; repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {} {} outside 1..={n}", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {}", u + 1)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
            nb.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let g = GeneralGraph { adjacency, edge_count };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Materializes `K_{n1} □ ... □ K_{nr}`: vertices are mixed-radix
    /// indices, adjacency is "differ in exactly one coordinate".
    pub fn hamming(shape: &HammingShape) -> Result<Self> {
        if shape.vertex_count() > MATERIALIZE_CAP {
            return Err(Error::CapExceeded {
                what: "materialized Hamming graph",
                size: shape.vertex_count(),
                cap: MATERIALIZE_CAP,
            });
        }
        let n = shape.len();
        let mut adjacency = vec![Vec::new(); n];
        for (v, nb) in adjacency.iter_mut().enumerate() {
            for (pos, &size) in shape.sizes().iter().enumerate() {
                let stride = shape.stride(pos) as usize;
                let digit = shape.digit(v, pos);
                let base = v - digit * stride;
                nb.extend((0..size as usize).filter(|&d| d != digit).map(|d| base + d * stride));
            }
            nb.sort_unstable();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(GeneralGraph { adjacency, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS order and distances from `source`.
    pub(crate) fn bfs_order(&self, source: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        dist[source] = 0;
        order.push(source);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                }
            }
        }
        (order, dist)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`
    /// with 1-based endpoints. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u == 0 || v == 0 {
                return Err(Error::parse(line, "vertices are 1-indexed"));
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(Error::parse(
                hline,
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        GeneralGraph::from_edges(n, edges)
    }

    /// Renders the edge-list format (each edge once, `u < v`).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count);
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                out.push_str(&format!("{} {}\n", u + 1, v + 1));
            }
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::parse(line, format!("expected two integers, got {text:?}"))),
    }
}
