//! Brandes' exact betweenness centrality and the shared result type.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::accumulate::{sum_over_sources, Workspace};
use crate::error::Result;
use crate::graph::Graph;

/// Which routine produced a [`BcResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Brandes,
    Oracle,
    #[serde(rename = "peel1-full")]
    OneRoundFull,
    #[serde(rename = "peel1")]
    OneRoundMem,
    #[serde(rename = "2core-recurrence")]
    TwoCoreRecurrence,
    SampleBaseline,
    SamplePeeled,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brandes => "brandes",
            Algorithm::Oracle => "oracle",
            Algorithm::OneRoundFull => "peel1-full",
            Algorithm::OneRoundMem => "peel1",
            Algorithm::TwoCoreRecurrence => "2core-recurrence",
            Algorithm::SampleBaseline => "sample-baseline",
            Algorithm::SamplePeeled => "sample-peeled",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node betweenness scores, normalized by `(n-1)(n-2)` over ordered
/// pairs, plus run metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct BcResult {
    pub scores: Vec<f64>,
    pub algorithm: Algorithm,
    /// Pivots used; `None` for exact runs.
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

impl BcResult {
    pub(crate) fn exact(scores: Vec<f64>, algorithm: Algorithm, started: Instant) -> Self {
        BcResult {
            scores,
            algorithm,
            k: None,
            seed: None,
            elapsed: started.elapsed(),
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Largest per-node absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &BcResult) -> f64 {
        self.scores
            .iter()
            .zip(&other.scores)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `(n-1)(n-2)`, or `None` when no node can lie strictly between two
/// others.
pub(crate) fn pair_normalizer(n: usize) -> Option<f64> {
    (n > 2).then(|| (n - 1) as f64 * (n - 2) as f64)
}

/// Divides raw ordered-pair dependency sums by `(n-1)(n-2)`; all zero for
/// `n <= 2`.
pub(crate) fn normalize(mut raw: Vec<f64>, n: usize) -> Vec<f64> {
    match pair_normalizer(n) {
        Some(norm) => raw.iter_mut().for_each(|x| *x /= norm),
        None => raw.iter_mut().for_each(|x| *x = 0.0),
    }
    raw
}

/// Unnormalized `sum_{s != v} delta_s(v)` over the given sources.
pub(crate) fn brandes_raw(g: &Graph, sources: &[usize]) -> Vec<f64> {
    sum_over_sources(g, sources, g.n(), |ws: &mut Workspace<'_>, s, acc| {
        ws.brandes(s, |w, d| acc[w] += d);
    })
}

/// Exact betweenness by Brandes' algorithm, BFS from every node.
pub fn brandes_exact(g: &Graph) -> BcResult {
    let started = Instant::now();
    let sources: Vec<usize> = (0..g.n()).collect();
    let raw = brandes_raw(g, &sources);
    BcResult::exact(normalize(raw, g.n()), Algorithm::Brandes, started)
}

/// The source dependency row `delta_s(.)` as accumulated by Brandes'
/// back-propagation.
pub fn source_dependencies(g: &Graph, s: usize) -> Result<Vec<f64>> {
    g.check_node(s)?;
    let mut ws = Workspace::new(g);
    let mut row = vec![0.0; g.n()];
    ws.brandes(s, |w, d| row[w] = d);
    Ok(row)
}
