//! X-visibility and (total) mutual-visibility.
//!
//! Two routes are provided. The generic checker works on any connected
//! [`GeneralGraph`] straight from the definition: for each source it walks
//! the BFS layer DAG and marks the targets reachable through internal
//! vertices outside `X`. The Hamming route uses the characterization that
//! `X` is a total mutual-visibility set iff no two members are at
//! distance 2, or equivalently iff every Cartesian square is X-suitable.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::GeneralGraph;
use crate::hamming::{CartesianSquare, HammingShape};
use crate::vertex_set::VertexSet;

/// For every vertex `y`, whether some shortest `source,y`-path has all
/// internal vertices outside `blockers`.
fn visible_from(graph: &GeneralGraph, blockers: &VertexSet, source: usize) -> Vec<bool> {
    let (order, dist) = graph.bfs_order(source);
    let mut visible = vec![false; graph.vertex_count()];
    visible[source] = true;
    for &w in &order[1..] {
        visible[w] = graph
            .neighbors(w)
            .iter()
            .any(|&u| dist[u] + 1 == dist[w] && visible[u] && (u == source || !blockers.contains(u)));
    }
    visible
}

fn check_vertex(graph: &GeneralGraph, v: usize) -> Result<()> {
    if v >= graph.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: v as u64,
            len: graph.vertex_count() as u64,
        });
    }
    Ok(())
}

/// Whether `x` and `y` admit a shortest path with no internal vertex in `blockers`.
pub fn is_x_visible(graph: &GeneralGraph, blockers: &VertexSet, x: usize, y: usize) -> Result<bool> {
    check_vertex(graph, x)?;
    check_vertex(graph, y)?;
    blockers.check_universe(graph.vertex_count())?;
    Ok(visible_from(graph, blockers, x)[y])
}

/// Every pair of vertices of the graph is X-visible.
pub fn is_total_mv_set(graph: &GeneralGraph, set: &VertexSet) -> Result<bool> {
    set.check_universe(graph.vertex_count())?;
    let n = graph.vertex_count();
    Ok((0..n).into_par_iter().all(|x| {
        let visible = visible_from(graph, set, x);
        visible[x + 1..].iter().all(|&v| v)
    }))
}

/// Every pair of members of `set` is X-visible.
pub fn is_mv_set(graph: &GeneralGraph, set: &VertexSet) -> Result<bool> {
    set.check_universe(graph.vertex_count())?;
    let members = set.indices();
    Ok(members.par_iter().enumerate().all(|(k, &x)| {
        let visible = visible_from(graph, set, x);
        members[k + 1..].iter().all(|&y| visible[y])
    }))
}

/// Pairs `(a, b)`, `a < b`, of members at Hamming distance 2, in
/// lexicographic order. Stops after `limit` pairs.
pub(crate) fn distance_two_pairs_limited(shape: &HammingShape, set: &VertexSet, limit: usize) -> Vec<(usize, usize)> {
    let members = set.indices();
    let k = members.len() as u64;
    let pairwise_cost = k * k.saturating_sub(1) / 2;
    let mut pairs = Vec::new();
    if pairwise_cost <= k.saturating_mul(shape.distance_two_degree()) {
        'outer: for (p, &a) in members.iter().enumerate() {
            for &b in &members[p + 1..] {
                if shape.index_distance(a, b) == 2 {
                    pairs.push((a, b));
                    if pairs.len() >= limit {
                        break 'outer;
                    }
                }
            }
        }
    } else {
        for &a in &members {
            let start = pairs.len();
            shape.for_each_distance_two(a, |b| {
                if b > a && set.contains(b) {
                    pairs.push((a, b));
                }
            });
            pairs[start..].sort_unstable();
            if pairs.len() >= limit {
                pairs.truncate(limit);
                break;
            }
        }
    }
    pairs
}

/// All member pairs at distance 2, lexicographically ordered.
pub fn distance_two_pairs(shape: &HammingShape, set: &VertexSet) -> Result<Vec<(usize, usize)>> {
    set.check_shape(shape)?;
    Ok(distance_two_pairs_limited(shape, set, usize::MAX))
}

/// Fast Hamming check: no two members at distance exactly 2.
pub fn is_tmv_hamming(shape: &HammingShape, set: &VertexSet) -> Result<bool> {
    set.check_shape(shape)?;
    Ok(distance_two_pairs_limited(shape, set, 1).is_empty())
}

/// The square is X-suitable: `set` contains neither diametral pair.
pub fn is_square_suitable(shape: &HammingShape, square: &CartesianSquare, set: &VertexSet) -> Result<bool> {
    set.check_shape(shape)?;
    for pair in square.diametral_pairs() {
        let a = shape.encode(pair.0)?.0;
        let b = shape.encode(pair.1)?.0;
        if set.contains(a) && set.contains(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every Cartesian square is X-suitable. Only squares with a corner in
/// `set` can fail, so those are the ones enumerated.
pub fn all_squares_suitable(shape: &HammingShape, set: &VertexSet) -> Result<bool> {
    set.check_shape(shape)?;
    for x in set.iter() {
        let vx = shape.decode_unchecked(x);
        for square in shape.squares_at(&vx) {
            if !is_square_suitable(shape, &square, set)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> GeneralGraph {
        GeneralGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn shape(s: &str) -> HammingShape {
        s.parse().unwrap()
    }

    fn set_of(sh: &HammingShape, vs: &[&[u32]]) -> VertexSet {
        let vs: Vec<_> = vs.iter().map(|c| sh.vertex(c).unwrap()).collect();
        VertexSet::from_vertices(sh, &vs).unwrap()
    }

    #[test]
    fn trivial_visibility() {
        let g = path3();
        let all = VertexSet::from_indices(3, 0..3).unwrap();
        assert!(is_x_visible(&g, &all, 0, 0).unwrap());
        assert!(is_x_visible(&g, &all, 0, 1).unwrap());
    }

    #[test]
    fn blocked_path() {
        let g = path3();
        let mid = VertexSet::from_indices(3, [1]).unwrap();
        assert!(!is_x_visible(&g, &mid, 0, 2).unwrap());
        assert!(!is_total_mv_set(&g, &mid).unwrap());
        assert!(is_x_visible(&g, &mid, 0, 3).is_err());
    }

    #[test]
    fn four_cycle_diametral_pair() {
        let sh = shape("2,2");
        let g = GeneralGraph::hamming(&sh).unwrap();
        let x = set_of(&sh, &[&[1, 1], &[2, 2]]);
        let u = sh.encode(&sh.vertex(&[1, 2]).unwrap()).unwrap().0;
        let w = sh.encode(&sh.vertex(&[2, 1]).unwrap()).unwrap().0;
        assert!(!is_x_visible(&g, &x, u, w).unwrap());
        assert!(!is_total_mv_set(&g, &x).unwrap());
        assert!(!is_tmv_hamming(&sh, &x).unwrap());
    }

    #[test]
    fn empty_set_is_total() {
        let g = path3();
        assert!(is_total_mv_set(&g, &VertexSet::new(3)).unwrap());
        let sh = shape("2,2,2");
        assert!(all_squares_suitable(&sh, &VertexSet::for_shape(&sh)).unwrap());
    }

    #[test]
    fn whole_four_cycle_is_not_mv_set() {
        // Adjacent pairs see each other trivially; a diametral pair has
        // both shortest paths blocked by members.
        let sh = shape("2,2");
        let g = GeneralGraph::hamming(&sh).unwrap();
        let all = VertexSet::from_indices(4, 0..4).unwrap();
        assert!(!is_mv_set(&g, &all).unwrap());
        let small = VertexSet::from_indices(4, [2]).unwrap();
        assert!(is_mv_set(&g, &small).unwrap());
    }

    #[test]
    fn five_vertex_set_two_routes() {
        let sh = shape("2,3,4");
        let x = set_of(&sh, &[&[1, 1, 1], &[1, 2, 1], &[2, 3, 2], &[2, 3, 3], &[2, 3, 4]]);
        let g = GeneralGraph::hamming(&sh).unwrap();
        assert!(is_total_mv_set(&g, &x).unwrap());
        assert!(is_tmv_hamming(&sh, &x).unwrap());
        assert!(all_squares_suitable(&sh, &x).unwrap());
    }

    #[test]
    fn distance_two_pair_rejected() {
        let sh = shape("2,2,2");
        let x = set_of(&sh, &[&[1, 1, 1], &[2, 2, 1]]);
        assert!(!is_tmv_hamming(&sh, &x).unwrap());
        assert_eq!(distance_two_pairs(&sh, &x).unwrap(), vec![(0, 3)]);
    }

    #[test]
    fn square_suitability_cases() {
        let sh = shape("3,3");
        let u = sh.vertex(&[1, 1]).unwrap();
        let v = sh.vertex(&[2, 2]).unwrap();
        let sq = sh.cartesian_squares_through(&u, &v).unwrap().remove(0);
        assert!(is_square_suitable(&sh, &sq, &set_of(&sh, &[&[3, 3]])).unwrap());
        assert!(!is_square_suitable(&sh, &sq, &set_of(&sh, &[&[1, 1], &[2, 2]])).unwrap());
        assert!(is_square_suitable(&sh, &sq, &set_of(&sh, &[&[1, 1], &[1, 2]])).unwrap());
    }

    #[test]
    fn enumeration_route_matches_pairwise() {
        // A dense set forces the neighbor-enumeration branch.
        let sh = shape("2,2,2,2,2");
        let x = VertexSet::from_indices(32, (0..32).filter(|i| i % 4 != 0)).unwrap();
        let mut brute = Vec::new();
        let m = x.indices();
        for (p, &a) in m.iter().enumerate() {
            for &b in &m[p + 1..] {
                if sh.index_distance(a, b) == 2 {
                    brute.push((a, b));
                }
            }
        }
        assert_eq!(distance_two_pairs(&sh, &x).unwrap(), brute);
    }

    #[test]
    fn universe_mismatch() {
        let sh = shape("2,2");
        assert!(is_tmv_hamming(&sh, &VertexSet::new(5)).is_err());
    }
}
