//! Brute-force all-pairs reference implementation.
//!
//! Distances and exact integer path counts come from one BFS per node; the
//! number of `s`-`t` shortest paths through `u` is `sigma_su * sigma_ut`
//! when `d(s,u) + d(u,t) = d(s,t)` and zero otherwise. Pair dependencies are
//! summed directly from that identity, with no back-propagation, so the
//! results are independent of the Brandes code path. Cost is cubic in `n`.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;

use crate::exact::{normalize, Algorithm, BcResult};
use crate::graph::Graph;
use crate::sssp::UNREACHABLE;

/// Node count above which the oracle logs a warning.
pub const ORACLE_WARN_N: usize = 500;

/// Dense all-pairs hop distances and shortest-path counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCounts {
    n: usize,
    dist: Vec<u32>,
    sigma: Vec<u64>,
}

impl PathCounts {
    /// All pairs unreachable, except `sigma_ss = 1` on the diagonal.
    pub(crate) fn disconnected(n: usize) -> Self {
        let mut pc = PathCounts {
            n,
            dist: vec![UNREACHABLE; n * n],
            sigma: vec![0; n * n],
        };
        for s in 0..n {
            pc.set(s, s, 0, 1);
        }
        pc
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, s: usize, t: usize) -> Option<u32> {
        let d = self.dist[s * self.n + t];
        (d != UNREACHABLE).then_some(d)
    }

    pub fn sigma(&self, s: usize, t: usize) -> u64 {
        self.sigma[s * self.n + t]
    }

    pub(crate) fn set(&mut self, s: usize, t: usize, dist: u32, sigma: u64) {
        self.dist[s * self.n + t] = dist;
        self.sigma[s * self.n + t] = sigma;
    }

    /// Number of `s`-`t` shortest paths passing through `u`.
    pub fn through(&self, s: usize, t: usize, u: usize) -> u64 {
        match (self.dist(s, u), self.dist(u, t), self.dist(s, t)) {
            (Some(a), Some(b), Some(d)) if a + b == d => self.sigma(s, u) * self.sigma(u, t),
            _ => 0,
        }
    }

    /// Pair dependency `sigma_st(u) / sigma_st`; zero for unreachable pairs.
    pub fn ratio(&self, s: usize, t: usize, u: usize) -> f64 {
        match (self.dist(s, u), self.dist(u, t), self.dist(s, t)) {
            (Some(a), Some(b), Some(d)) if a + b == d => {
                self.sigma(s, u) as f64 * self.sigma(u, t) as f64 / self.sigma(s, t) as f64
            }
            _ => 0.0,
        }
    }
}

fn warn_if_large(g: &Graph) {
    if g.n() > ORACLE_WARN_N {
        log::warn!(
            "brute-force oracle on {} nodes (intended for at most {ORACLE_WARN_N})",
            g.n()
        );
    }
}

/// Distance and path-count matrices from one BFS per node.
///
/// # Panics
/// If a path count overflows `u64`.
pub fn oracle_sigma(g: &Graph) -> PathCounts {
    warn_if_large(g);
    let n = g.n();
    let rows: Vec<(Vec<u32>, Vec<u64>)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![UNREACHABLE; n];
            let mut sigma = vec![0u64; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            sigma[s] = 1;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                    if dist[w] == dist[v] + 1 {
                        sigma[w] = sigma[w]
                            .checked_add(sigma[v])
                            .expect("shortest-path count overflows u64");
                    }
                }
            }
            (dist, sigma)
        })
        .collect();
    let mut pc = PathCounts {
        n,
        dist: Vec::with_capacity(n * n),
        sigma: Vec::with_capacity(n * n),
    };
    for (d, s) in rows {
        pc.dist.extend(d);
        pc.sigma.extend(s);
    }
    pc
}

/// `delta_s(u) = sum_{t != s,u} sigma_st(u) / sigma_st` for every source.
/// Row `s` is indexed by `u`.
pub fn oracle_source_dependencies(g: &Graph) -> Vec<Vec<f64>> {
    let pc = oracle_sigma(g);
    source_rows(&pc)
}

pub(crate) fn source_rows(pc: &PathCounts) -> Vec<Vec<f64>> {
    let n = pc.n();
    (0..n)
        .into_par_iter()
        .map(|s| {
            let mut row = vec![0.0; n];
            for t in (0..n).filter(|&t| t != s) {
                if pc.dist(s, t).is_none() {
                    continue;
                }
                for (u, slot) in row.iter_mut().enumerate() {
                    if u != s && u != t {
                        *slot += pc.ratio(s, t, u);
                    }
                }
            }
            row
        })
        .collect()
}

/// Unnormalized sums `sum_{s != t != u} sigma_st(u) / sigma_st`.
pub(crate) fn raw_from_counts(pc: &PathCounts) -> Vec<f64> {
    let mut raw = vec![0.0; pc.n()];
    for row in source_rows(pc) {
        for (r, x) in raw.iter_mut().zip(row) {
            *r += x;
        }
    }
    raw
}

/// Betweenness straight from the definition.
pub fn oracle_bc(g: &Graph) -> BcResult {
    let started = Instant::now();
    let raw = raw_from_counts(&oracle_sigma(g));
    BcResult::exact(normalize(raw, g.n()), Algorithm::Oracle, started)
}
