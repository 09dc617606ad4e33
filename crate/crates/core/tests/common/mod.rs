#![allow(dead_code)]

use bcpeel::{random_pendant_graph, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 200;

/// Random graph `i` of the test corpus: G(n, p) with n in [5, 60] and
/// p in [0.05, 0.3], plus 0 to 3 pendants per node.
pub fn corpus_graph(i: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + i as u64);
    let n = rng.gen_range(5..=60);
    let p = rng.gen_range(0.05..=0.3);
    random_pendant_graph(n, p, 3, rng.gen()).unwrap()
}

pub fn corpus() -> impl Iterator<Item = Graph> {
    (0..CORPUS_SIZE).map(corpus_graph)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// a-b, b-c, c-e, e-f, e-g
pub fn asymmetric_pendant_graph() -> Graph {
    let labels = ["a", "b", "c", "e", "f", "g"].map(String::from).to_vec();
    Graph::with_labels(labels, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap()
}

/// Fixed 200-node graph for the estimator checks: G(100, 0.05) plus 100
/// pendants attached to uniformly chosen core nodes.
pub fn unbiasedness_fixture() -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut edges = Vec::new();
    for u in 0..100 {
        for v in u + 1..100 {
            if rng.gen_bool(0.05) {
                edges.push((u, v));
            }
        }
    }
    for x in 100..200 {
        edges.push((rng.gen_range(0..100), x));
    }
    Graph::from_edges(200, edges).unwrap()
}

/// Per-node mean and standard error over repeated estimates.
pub fn mean_and_se(runs: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let r = runs.len() as f64;
    let n = runs[0].len();
    let mut mean = vec![0.0; n];
    for run in runs {
        for (m, x) in mean.iter_mut().zip(run) {
            *m += x / r;
        }
    }
    let mut var = vec![0.0; n];
    for run in runs {
        for ((v, x), m) in var.iter_mut().zip(run).zip(&mean) {
            *v += (x - m) * (x - m) / (r - 1.0);
        }
    }
    let se = var.iter().map(|v| (v / r).sqrt()).collect();
    (mean, se)
}
