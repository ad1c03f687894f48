//! Brute-force oracle for `mu_t`. Conflicts are computed from coordinate
//! distances directly, independent of [`super::ConflictGraph`].

use crate::error::{Error, Result};
use crate::hamming::{HammingShape, VertexIndex};
use crate::vertex_set::VertexSet;

/// Up to this many vertices every subset is enumerated.
pub const EXHAUSTIVE_CAP: u64 = 20;
/// Up to this many vertices a plain include/exclude DFS is used.
pub const BRUTE_FORCE_CAP: u64 = 64;

/// Largest distance-2-free subset, by exhaustive search. Returns the
/// value and the first maximum found.
pub fn brute_force_mut(shape: &HammingShape) -> Result<(usize, VertexSet)> {
    let v = shape.vertex_count();
    if v > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force oracle",
            size: v,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let n = v as usize;
    let vertices: Vec<_> = (0..n).map(|i| shape.decode(VertexIndex(i))).collect::<Result<_>>()?;
    let mut clash = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            if shape.distance(&vertices[a], &vertices[b])? == 2 {
                clash[a] |= 1 << b;
            }
        }
    }
    let best = if v <= EXHAUSTIVE_CAP {
        exhaustive(&clash)
    } else {
        let mut best = 0u64;
        dfs(&clash, 0, 0, &mut best);
        best
    };
    let set = VertexSet::from_indices(n, (0..n).filter(|&i| best >> i & 1 == 1))?;
    Ok((set.len(), set))
}

fn exhaustive(clash: &[u64]) -> u64 {
    let n = clash.len();
    let mut best = 0u64;
    for mask in 0..1u64 << n {
        if mask.count_ones() <= best.count_ones() {
            continue;
        }
        let independent = (0..n).all(|i| mask >> i & 1 == 0 || clash[i] & mask == 0);
        if independent {
            best = mask;
        }
    }
    best
}

fn dfs(clash: &[u64], next: usize, chosen: u64, best: &mut u64) {
    let n = clash.len();
    if chosen.count_ones() + (n - next) as u32 <= best.count_ones() {
        return;
    }
    if next == n {
        *best = chosen;
        return;
    }
    if clash[next] & chosen == 0 {
        dfs(clash, next + 1, chosen | 1 << next, best);
    }
    dfs(clash, next + 1, chosen, best);
}
