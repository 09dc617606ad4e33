//! Exact betweenness through every peeling round, rebuilt from the 2-core.
//!
//! Let `G_i` be the graph before round `i` and `G_{i*}` what is left after
//! the last round. Path counts on `G_{i*}` come from the oracle. Going from
//! `G_{i+1}` back to `G_i`, every node removed in round `i` hangs off an
//! anchor in `G_{i+1}` (or forms an isolated edge with another removed
//! node), so distances and path counts extend without a new search. The
//! unnormalized sums `B_i(u) = sum_{s != t != u} sigma_st(u) / sigma_st`
//! then follow from `B_{i+1}` plus the pairs that gained a removed endpoint.
//!
//! Dense `n x n` matrices are kept per round; this is a reference
//! implementation for small graphs.

use std::time::Instant;

use rayon::prelude::*;

use crate::exact::{normalize, Algorithm, BcResult};
use crate::graph::Graph;
use crate::oracle::{oracle_sigma, raw_from_counts, PathCounts};
use crate::peel::{peel, PeelDecomposition};

/// State of the recurrence for one graph `G_i`.
#[derive(Debug, Clone)]
pub struct RecurrenceLevel {
    pub level: usize,
    /// Nodes of `G_i`, ascending, as ids of the input graph.
    pub nodes: Vec<usize>,
    /// Distances and path counts of `G_i`, indexed by ids of the input
    /// graph. Entries involving nodes outside `G_i` are meaningless.
    pub counts: PathCounts,
    /// Unnormalized betweenness `B_i`; zero outside `G_i`.
    pub raw: Vec<f64>,
}

/// Every intermediate level, indexed by `i` from `0` (the input graph) to
/// `i*` (the 2-core).
#[derive(Debug, Clone)]
pub struct RecurrenceTrace {
    pub levels: Vec<RecurrenceLevel>,
}

/// Exact betweenness by the 2-core recurrence.
pub fn bc_via_2core_recurrence(g: &Graph) -> BcResult {
    let started = Instant::now();
    let raw = run(g, |_| {});
    BcResult::exact(normalize(raw, g.n()), Algorithm::TwoCoreRecurrence, started)
}

/// Runs the recurrence and keeps the path counts and partial sums of every
/// level.
pub fn two_core_recurrence_trace(g: &Graph) -> RecurrenceTrace {
    let mut levels = Vec::new();
    run(g, |lvl| levels.push(lvl.clone()));
    levels.reverse();
    RecurrenceTrace { levels }
}

fn run(g: &Graph, mut on_level: impl FnMut(&RecurrenceLevel)) -> Vec<f64> {
    let n = g.n();
    let p = peel(g, None);
    let istar = p.istar();

    let (core, map) = g.induced_subgraph(&p.level_mask(istar));
    let core_counts = oracle_sigma(&core);
    let mut counts = PathCounts::disconnected(n);
    for a in 0..core.n() {
        for b in 0..core.n() {
            if let Some(d) = core_counts.dist(a, b) {
                counts.set(map[a], map[b], d, core_counts.sigma(a, b));
            }
        }
    }
    let mut raw = vec![0.0; n];
    for (a, x) in raw_from_counts(&core_counts).into_iter().enumerate() {
        raw[map[a]] = x;
    }
    let mut state = RecurrenceLevel {
        level: istar,
        nodes: map,
        counts,
        raw,
    };
    on_level(&state);

    for i in (0..istar).rev() {
        state = step(&p, i, state);
        on_level(&state);
    }
    state.raw
}

/// Anchor of a node removed in round `i` if that anchor survives the round.
fn entry(p: &PeelDecomposition, x: usize, i: usize) -> Option<usize> {
    p.pendant_anchor(x).filter(|&a| p.round_of(a) != Some(i))
}

/// From level `i + 1` to level `i`.
fn step(p: &PeelDecomposition, i: usize, prev: RecurrenceLevel) -> RecurrenceLevel {
    let removed = &p.rounds()[i];
    let deg = p.round_deg1(i);
    let old = &prev.counts;
    let mut counts = old.clone();

    for &x in removed {
        match entry(p, x, i) {
            Some(y) => {
                for &t in &prev.nodes {
                    if let Some(d) = old.dist(y, t) {
                        counts.set(x, t, d + 1, old.sigma(y, t));
                        counts.set(t, x, d + 1, old.sigma(y, t));
                    }
                }
            }
            None => {
                if let Some(a) = p.pendant_anchor(x) {
                    counts.set(x, a, 1, 1);
                }
            }
        }
    }
    for &x in removed {
        let Some(y) = entry(p, x, i) else { continue };
        for &x2 in removed {
            if x2 == x {
                continue;
            }
            if let Some(y2) = entry(p, x2, i) {
                if let Some(d) = old.dist(y, y2) {
                    counts.set(x, x2, d + 2, old.sigma(y, y2));
                }
            }
        }
    }

    let nodes: Vec<usize> = (0..p.n()).filter(|&u| p.alive_at(u, i)).collect();
    let y_nodes: Vec<usize> = prev.nodes.iter().copied().filter(|&u| deg[u] > 0).collect();

    let updates: Vec<(usize, f64)> = prev
        .nodes
        .par_iter()
        .map(|&u| {
            let d = deg[u] as f64;
            let comp = nodes.iter().filter(|&&t| counts.dist(u, t).is_some()).count() as f64;
            let mut b = prev.raw[u] + d * (d - 1.0) + 2.0 * d * (comp - d - 1.0);

            let mut one_removed = 0.0;
            for &s in prev.nodes.iter().filter(|&&s| s != u) {
                for &y2 in y_nodes.iter().filter(|&&y2| y2 != s && y2 != u) {
                    one_removed += deg[y2] as f64 * old.ratio(s, y2, u);
                }
            }
            let mut both_removed = 0.0;
            for &y in y_nodes.iter().filter(|&&y| y != u) {
                for &y2 in y_nodes.iter().filter(|&&y2| y2 != y && y2 != u) {
                    both_removed += (deg[y] * deg[y2]) as f64 * old.ratio(y, y2, u);
                }
            }
            b += 2.0 * one_removed + both_removed;
            (u, b)
        })
        .collect();

    let mut raw = vec![0.0; p.n()];
    for (u, b) in updates {
        raw[u] = b;
    }
    RecurrenceLevel {
        level: i,
        nodes,
        counts,
        raw,
    }
}
