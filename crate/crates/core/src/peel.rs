//! Iterated removal of degree-1 nodes.
//!
//! Round `i` removes, all at once, every node whose degree is exactly 1 in
//! the graph left after rounds `0..i`. Peeling stops when no degree-1 node is
//! left (the remainder is the maximal 2-core plus any isolated nodes) or when
//! a round limit is hit. Degree-0 nodes are never removed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;

/// Result of peeling a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelDecomposition {
    n: usize,
    rounds: Vec<Vec<usize>>,
    round_of: Vec<Option<usize>>,
    anchor: Vec<Option<usize>>,
    core_nodes: Vec<usize>,
    deg1: Vec<usize>,
    y: Vec<usize>,
}

impl PeelDecomposition {
    /// Nodes removed in each round, ascending within a round.
    pub fn rounds(&self) -> &[Vec<usize>] {
        &self.rounds
    }

    /// Number of rounds performed.
    pub fn istar(&self) -> usize {
        self.rounds.len()
    }

    /// Nodes that survived every round.
    pub fn core_nodes(&self) -> &[usize] {
        &self.core_nodes
    }

    /// Round in which `u` was removed, `None` for surviving nodes.
    pub fn round_of(&self, u: usize) -> Option<usize> {
        self.round_of[u]
    }

    /// The unique neighbor `u` had when it was removed. For the two ends of
    /// an isolated edge each one is the other's anchor.
    pub fn pendant_anchor(&self, u: usize) -> Option<usize> {
        self.anchor[u]
    }

    /// Number of degree-1 neighbors of each node in the input graph.
    pub fn deg1(&self) -> &[usize] {
        &self.deg1
    }

    /// Nodes outside the first removed set that have at least one degree-1
    /// neighbor. Ends of isolated edges are never included.
    pub fn y(&self) -> &[usize] {
        &self.y
    }

    /// `max_u deg1(u)` over the nodes of `Y`.
    pub fn delta1(&self) -> usize {
        self.y.iter().map(|&u| self.deg1[u]).max().unwrap_or(0)
    }

    /// Whether `u` is still present in `G_i`, the graph before round `i`.
    pub fn alive_at(&self, u: usize, level: usize) -> bool {
        self.round_of[u].is_none_or(|r| r >= level)
    }

    /// Node mask of `G_i`.
    pub fn level_mask(&self, level: usize) -> Vec<bool> {
        (0..self.n).map(|u| self.alive_at(u, level)).collect()
    }

    /// Degree-1 neighbor count of each node with respect to round `level`:
    /// how many nodes removed in that round have it as anchor. Nodes removed
    /// in the same round (isolated edges) are not counted.
    pub fn round_deg1(&self, level: usize) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        if let Some(removed) = self.rounds.get(level) {
            for &x in removed {
                if let Some(a) = self.anchor[x] {
                    if self.round_of[a] != Some(level) {
                        counts[a] += 1;
                    }
                }
            }
        }
        counts
    }

    /// Number of nodes in the graph that was peeled.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// Peels `g` until no degree-1 node remains, or for at most `max_rounds`.
pub fn peel(g: &Graph, max_rounds: Option<usize>) -> PeelDecomposition {
    let n = g.n();
    let limit = max_rounds.unwrap_or(usize::MAX);
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut round_of = vec![None; n];
    let mut anchor = vec![None; n];
    let mut rounds: Vec<Vec<usize>> = Vec::new();

    let mut frontier: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    while !frontier.is_empty() && rounds.len() < limit {
        let r = rounds.len();
        frontier.sort_unstable();
        frontier.dedup();
        frontier.retain(|&u| round_of[u].is_none() && degree[u] == 1);
        if frontier.is_empty() {
            break;
        }
        for &x in &frontier {
            round_of[x] = Some(r);
        }
        // Anchors are resolved against the graph at the start of the round,
        // so both ends of an isolated edge see each other.
        for &x in &frontier {
            anchor[x] = g
                .neighbors(x)
                .iter()
                .copied()
                .find(|&v| round_of[v].is_none_or(|rv| rv == r));
        }
        let mut next = Vec::new();
        for &x in &frontier {
            if let Some(a) = anchor[x].filter(|&a| round_of[a].is_none()) {
                degree[a] -= 1;
                if round_of[a].is_none() && degree[a] == 1 {
                    next.push(a);
                }
            }
            degree[x] = 0;
        }
        rounds.push(std::mem::take(&mut frontier));
        frontier = next;
    }

    let core_nodes = (0..n).filter(|&u| round_of[u].is_none()).collect();
    let deg1: Vec<usize> = (0..n)
        .map(|u| g.neighbors(u).iter().filter(|&&v| g.degree(v) == 1).count())
        .collect();
    let y = (0..n)
        .filter(|&u| g.degree(u) != 1 && deg1[u] > 0)
        .collect();

    PeelDecomposition {
        n,
        rounds,
        round_of,
        anchor,
        core_nodes,
        deg1,
        y,
    }
}

/// Summary statistics of the peeling of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelReport {
    pub n: usize,
    pub m: usize,
    /// Nodes left after one round (`n - |V_1|`).
    pub n_tilde: usize,
    /// Edges left after one round.
    pub m_tilde: usize,
    pub v1_count: usize,
    pub y_count: usize,
    pub delta1: usize,
    /// Count of nodes outside the first removed set by degree-1 neighbor count.
    pub deg1_histogram: BTreeMap<usize, usize>,
    /// `|V_1^(i)| / n` for each round.
    pub round_fractions: Vec<f64>,
    pub istar: usize,
    /// `1 - |V_1^(0)| / n`.
    pub survivor_fraction: f64,
    /// Size of the 2-core over `n`. Nodes left isolated by peeling (and
    /// isolated input nodes) are not part of it.
    pub core_fraction: f64,
}

pub fn peel_diagnostics(g: &Graph) -> PeelReport {
    let p = peel(g, None);
    let n = g.n();
    let v1_count = p.rounds.first().map_or(0, Vec::len);
    let in_v1 = |u: usize| p.round_of[u] == Some(0);
    let m_tilde = g.edges().filter(|&(u, v)| !in_v1(u) && !in_v1(v)).count();
    let frac = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };

    let survives = |u: usize| p.round_of[u].is_none();
    let two_core = p
        .core_nodes
        .iter()
        .filter(|&&u| g.neighbors(u).iter().any(|&v| survives(v)))
        .count();

    let mut deg1_histogram = BTreeMap::new();
    for u in (0..n).filter(|&u| !in_v1(u)) {
        *deg1_histogram.entry(p.deg1[u]).or_insert(0) += 1;
    }

    PeelReport {
        n,
        m: g.m(),
        n_tilde: n - v1_count,
        m_tilde,
        v1_count,
        y_count: p.y.len(),
        delta1: p.delta1(),
        deg1_histogram,
        round_fractions: p.rounds.iter().map(|r| frac(r.len())).collect(),
        istar: p.istar(),
        survivor_fraction: frac(n - v1_count),
        core_fraction: frac(two_core),
    }
}
