//! Exact maximum independent set by branch and bound.
//!
//! The search is a bitset maximum-clique search on the complement of the
//! conflict graph. At every node the candidate set is greedily covered by
//! cliques of the conflict graph (each clique holds at most one member of
//! an independent set), and the cover size bounds what the node can still
//! add. Vertices are branched on in reverse cover order: include the
//! vertex, then exclude it and move on.
//!
//! The root's branches are independent subproblems and may run on a
//! worker pool. The incumbent is ranked by `(value, -subproblem)`, so the
//! reported witness is the first optimum of the sequential search order no
//! matter how many workers run or how they interleave.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

use super::bits::Bits;
use super::conflict::ConflictGraph;
use super::{Method, SolveCertificate, SolveStats};

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
    /// Wall-clock budget. On expiry the incumbent is returned with
    /// `optimal = false`.
    pub timeout: Option<Duration>,
    /// Fix vertex `(1,...,1)` in the solution. Sound because Hamming
    /// graphs, and hence their conflict graphs, are vertex-transitive.
    pub symmetry: bool,
}

const SENTINEL: u32 = u32::MAX;
const CLOCK_EVERY: u64 = 1024;

#[inline]
fn key(value: usize, subproblem: u32) -> u64 {
    ((value as u64) << 32) | u64::from(SENTINEL - subproblem)
}

struct Search {
    /// Compatibility (non-conflict) rows, in search order.
    compat: Vec<Bits>,
    /// Conflict rows, in search order.
    conflict: Vec<Bits>,
    /// Search position -> original vertex.
    original: Vec<usize>,
    n: usize,
    best_key: AtomicU64,
    best: Mutex<(u64, Vec<usize>)>,
    abort: AtomicBool,
    deadline: Option<Instant>,
}

impl Search {
    fn new(graph: &ConflictGraph, deadline: Option<Instant>) -> Self {
        let n = graph.vertex_count();
        let mut original: Vec<usize> = (0..n).collect();
        original.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let mut position = vec![0; n];
        for (p, &v) in original.iter().enumerate() {
            position[v] = p;
        }
        let mut conflict = Vec::with_capacity(n);
        let mut compat = Vec::with_capacity(n);
        for &v in &original {
            let mut row = Bits::empty(n);
            for w in graph.neighbors(v) {
                row.insert(position[w]);
            }
            let mut free = Bits::full(n);
            for w in row.iter() {
                free.remove(w);
            }
            free.remove(position[v]);
            conflict.push(row);
            compat.push(free);
        }
        Search {
            compat,
            conflict,
            original,
            n,
            best_key: AtomicU64::new(0),
            best: Mutex::new((0, Vec::new())),
            abort: AtomicBool::new(false),
            deadline,
        }
    }

    fn position_of(&self, v: usize) -> usize {
        self.original.iter().position(|&o| o == v).expect("vertex in range")
    }

    #[inline]
    fn can_improve(&self, bound: usize, subproblem: u32) -> bool {
        key(bound, subproblem) > self.best_key.load(Ordering::Acquire)
    }

    fn offer(&self, current: &[usize], subproblem: u32) {
        let k = key(current.len(), subproblem);
        if self.best_key.fetch_max(k, Ordering::AcqRel) >= k {
            return;
        }
        let mut best = self.best.lock().expect("incumbent lock");
        if k > best.0 {
            *best = (k, current.to_vec());
        }
    }

    /// Greedy clique cover of `candidates`: vertices with their cover
    /// index, in increasing cover order.
    fn cover(&self, candidates: &Bits) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut class = Bits::empty(self.n);
        let mut out = Vec::with_capacity(candidates.count());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            class.clone_from(&uncolored);
            while let Some(v) = class.first() {
                class.remove(v);
                uncolored.remove(v);
                class.intersect_with(&self.conflict[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn tick(&self, nodes: &mut u64) -> bool {
        *nodes += 1;
        if nodes.is_multiple_of(CLOCK_EVERY) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.abort.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn expand(&self, current: &mut Vec<usize>, mut candidates: Bits, subproblem: u32, nodes: &mut u64) {
        if !self.tick(nodes) {
            return;
        }
        let order = self.cover(&candidates);
        let mut next = Bits::empty(self.n);
        for &(v, color) in order.iter().rev() {
            if !self.can_improve(current.len() + color, subproblem) || self.abort.load(Ordering::Relaxed) {
                return;
            }
            current.push(v);
            candidates.and_into(&self.compat[v], &mut next);
            if next.is_empty() {
                self.offer(current, subproblem);
            } else {
                self.expand(current, next.clone(), subproblem, nodes);
            }
            current.pop();
            candidates.remove(v);
        }
    }

    fn greedy_seed(&self, fixed: &[usize], candidates: &Bits) {
        let mut chosen = fixed.to_vec();
        let mut free = candidates.clone();
        while let Some(v) = free.first() {
            chosen.push(v);
            free.remove(v);
            free.intersect_with(&self.compat[v]);
        }
        self.offer(&chosen, SENTINEL);
    }
}

/// Exact maximum independent set of the conflict graph.
pub fn max_independent_set(graph: &ConflictGraph, opts: &SolveOptions) -> Result<SolveCertificate> {
    let started = Instant::now();
    let n = graph.vertex_count();
    let search = Search::new(graph, opts.timeout.map(|t| started + t));

    let (fixed, root) = if opts.symmetry && n > 0 {
        let v = search.position_of(0);
        (vec![v], search.compat[v].clone())
    } else {
        (Vec::new(), Bits::full(n))
    };
    search.greedy_seed(&fixed, &root);

    // Root branches: include `v`, with every earlier root vertex excluded.
    let order = search.cover(&root);
    let branches: Vec<(usize, usize)> = order.iter().rev().copied().collect();
    let mut rank = vec![usize::MAX; n];
    for (k, &(v, _)) in branches.iter().enumerate() {
        rank[v] = k;
    }
    if branches.len() >= SENTINEL as usize {
        return Err(Error::CapExceeded {
            what: "root branch list",
            size: branches.len() as u64,
            cap: u64::from(SENTINEL) - 1,
        });
    }

    let run_branch = |k: usize| -> u64 {
        let (v, color) = branches[k];
        let sub = k as u32;
        if search.deadline.is_some_and(|d| Instant::now() >= d) {
            search.abort.store(true, Ordering::Relaxed);
        }
        if !search.can_improve(fixed.len() + color, sub) || search.abort.load(Ordering::Relaxed) {
            return 0;
        }
        let mut candidates = Bits::empty(n);
        for w in search.compat[v]
            .iter()
            .filter(|&w| rank[w] > k && rank[w] != usize::MAX)
        {
            candidates.insert(w);
        }
        let mut current = fixed.clone();
        current.push(v);
        let mut nodes = 1;
        if candidates.is_empty() {
            search.offer(&current, sub);
        } else {
            search.expand(&mut current, candidates, sub, &mut nodes);
        }
        nodes
    };

    let threads = if opts.threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        opts.threads
    };
    let nodes: u64 = if threads <= 1 {
        (0..branches.len()).map(run_branch).sum()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| (0..branches.len()).into_par_iter().map(run_branch).sum())
    };

    let timed_out = search.abort.load(Ordering::Relaxed);
    let (_, best) = search.best.into_inner().expect("incumbent lock");
    let witness = VertexSet::from_indices(n, best.iter().map(|&p| search.original[p]))?;
    Ok(SolveCertificate {
        shape: graph.shape().clone(),
        value: witness.len(),
        optimal: !timed_out,
        witness,
        stats: SolveStats {
            nodes: nodes + 1,
            millis: started.elapsed().as_millis() as u64,
            method: Method::BranchAndBound,
        },
    })
}
