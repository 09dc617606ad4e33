//! Bottom-up dependency accumulation over a shortest-path DAG, and the
//! fixed-order parallel reduction shared by every all-sources kernel.

use rayon::prelude::*;

use crate::graph::Graph;
use crate::sssp::SsspTree;

/// Sources are split into at most this many contiguous chunks. The count
/// does not depend on the thread pool, so sums are reproducible.
const REDUCE_CHUNKS: usize = 64;

/// Per-worker buffers: one BFS tree plus zeroed dependency arrays.
pub(crate) struct Workspace<'g> {
    pub tree: SsspTree<'g>,
    delta: Vec<f64>,
    zeta: Vec<f64>,
}

impl<'g> Workspace<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Workspace {
            tree: SsspTree::new(g),
            delta: vec![0.0; g.n()],
            zeta: vec![0.0; g.n()],
        }
    }

    /// BFS from `s`, then Brandes back-propagation. `visit(w, delta_s(w))`
    /// is called for every reached `w != s` in nonincreasing distance.
    pub fn brandes(&mut self, s: usize, mut visit: impl FnMut(usize, f64)) {
        self.tree.compute(s);
        let tree = &self.tree;
        let delta = &mut self.delta;
        for &w in tree.order().iter().rev() {
            let coeff = (1.0 + delta[w]) / tree.sigma(w);
            for v in tree.preds(w) {
                if v != s {
                    delta[v] += tree.sigma(v) * coeff;
                }
            }
            if w != s {
                visit(w, delta[w]);
            }
            delta[w] = 0.0;
        }
    }

    /// BFS from `s`, then joint accumulation of `delta_s` and the
    /// deg1-weighted dependency `zeta_s`. `visit(w, delta_s(w), zeta_s(w))`
    /// is called for every reached `w != s`.
    pub fn delta_zeta(&mut self, s: usize, deg1: &[usize], mut visit: impl FnMut(usize, f64, f64)) {
        self.tree.compute(s);
        let tree = &self.tree;
        let delta = &mut self.delta;
        let zeta = &mut self.zeta;
        for &w in tree.order().iter().rev() {
            let sigma_w = tree.sigma(w);
            let coeff = (1.0 + delta[w]) / sigma_w;
            let coeff_zeta = (deg1[w] as f64 + zeta[w]) / sigma_w;
            for v in tree.preds(w) {
                if v != s {
                    let sigma_v = tree.sigma(v);
                    delta[v] += sigma_v * coeff;
                    zeta[v] += sigma_v * coeff_zeta;
                }
            }
            if w != s {
                visit(w, delta[w], zeta[w]);
            }
            delta[w] = 0.0;
            zeta[w] = 0.0;
        }
    }
}

/// Returns the `delta_s(.)` and `zeta_s(.)` rows of an already computed tree,
/// indexed by node of the tree's graph. `deg1` is indexed the same way.
pub fn accumulate_delta_zeta(tree: &SsspTree<'_>, deg1: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let n = tree.graph().n();
    assert_eq!(deg1.len(), n, "deg1 must have one entry per node");
    let s = tree.source();
    let mut delta = vec![0.0; n];
    let mut zeta = vec![0.0; n];
    for &w in tree.order().iter().rev() {
        let sigma_w = tree.sigma(w);
        let coeff = (1.0 + delta[w]) / sigma_w;
        let coeff_zeta = (deg1[w] as f64 + zeta[w]) / sigma_w;
        for v in tree.preds(w) {
            if v != s {
                delta[v] += tree.sigma(v) * coeff;
                zeta[v] += tree.sigma(v) * coeff_zeta;
            }
        }
    }
    (delta, zeta)
}

/// Runs `per_source` for every source and sums what it adds into an
/// `out_len` accumulator.
///
/// Sources are processed in contiguous chunks in parallel; within a chunk
/// they run in the given order and chunk totals are added in chunk order.
pub(crate) fn sum_over_sources<F>(g: &Graph, sources: &[usize], out_len: usize, per_source: F) -> Vec<f64>
where
    F: Fn(&mut Workspace<'_>, usize, &mut [f64]) + Sync,
{
    if sources.is_empty() {
        return vec![0.0; out_len];
    }
    let chunk_len = sources.len().div_ceil(REDUCE_CHUNKS);
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk_len)
        .map(|chunk| {
            let mut ws = Workspace::new(g);
            let mut acc = vec![0.0; out_len];
            for &s in chunk {
                per_source(&mut ws, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut parts = partials.into_iter();
    let mut total = parts.next().expect("at least one chunk");
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}
