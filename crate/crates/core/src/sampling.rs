//! Pivot-sampling estimators and sample-size helpers.
//!
//! Both estimators draw `k` distinct pivots uniformly without replacement.
//! The RNG is consumed once up front and the pivots are sorted, so the
//! parallel accumulation that follows does not affect the result.

use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{BcError, Result};
use crate::exact::{brandes_raw, normalize, Algorithm, BcResult};
use crate::graph::Graph;
use crate::peel_bc::OneRound;

/// Pivot count and the accuracy targets used by the recommenders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleConfig {
    pub k: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub delta_conf: f64,
    /// Accumulate every source in `Y` exactly (weighted by its pendant
    /// count) and sample only the unit-weight part.
    pub exact_y_sources: bool,
}

impl SampleConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        SampleConfig {
            k,
            seed,
            epsilon: 0.1,
            delta_conf: 0.1,
            exact_y_sources: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(BcError::arg("number of pivots must be positive"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(BcError::arg(format!("epsilon must be in (0, 1), got {}", self.epsilon)));
        }
        if !(self.delta_conf > 0.0 && self.delta_conf < 1.0) {
            return Err(BcError::arg(format!(
                "delta_conf must be in (0, 1), got {}",
                self.delta_conf
            )));
        }
        Ok(())
    }
}

/// `k` distinct values from `0..len`, ascending. Requires `k <= len`.
pub(crate) fn sample_sorted(len: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, len, k).into_vec();
    picked.sort_unstable();
    picked
}

/// Brandes-Pich estimate on `G`: `(n / k) sum_{pivots} delta_s(v)`,
/// normalized like the exact scores.
pub fn sample_bc_baseline(g: &Graph, cfg: &SampleConfig) -> Result<BcResult> {
    cfg.validate()?;
    let n = g.n();
    if cfg.k > n {
        return Err(BcError::arg(format!("k = {} exceeds node count {n}", cfg.k)));
    }
    let started = Instant::now();
    let pivots = sample_sorted(n, cfg.k, cfg.seed);
    let mut raw = brandes_raw(g, &pivots);
    let scale = n as f64 / cfg.k as f64;
    raw.iter_mut().for_each(|x| *x *= scale);
    Ok(BcResult {
        scores: normalize(raw, n),
        algorithm: Algorithm::SampleBaseline,
        k: Some(cfg.k),
        seed: Some(cfg.seed),
        elapsed: started.elapsed(),
    })
}

/// Estimate after one peeling round: pivots are drawn from the core only,
/// the weighted core sums are rescaled by `n~ / k`, and the pendant terms
/// are added exactly. Falls back to the exact computation when `k >= n~`.
pub fn sample_bc_peeled(g: &Graph, cfg: &SampleConfig) -> Result<BcResult> {
    cfg.validate()?;
    let started = Instant::now();
    let one = OneRound::new(g);
    let nt = one.n_tilde();
    let deg1 = &one.core_deg1;

    let core_raw = if cfg.k >= nt {
        let all: Vec<usize> = (0..nt).collect();
        one.core_sums(&all, |s| 1.0 + deg1[s] as f64)
    } else {
        let pivots = sample_sorted(nt, cfg.k, cfg.seed);
        let scale = nt as f64 / cfg.k as f64;
        if cfg.exact_y_sources {
            let y: Vec<usize> = (0..nt).filter(|&s| deg1[s] > 0).collect();
            let exact = one.core_sums(&y, |s| deg1[s] as f64);
            let sampled = one.core_sums(&pivots, |_| 1.0);
            exact.iter().zip(&sampled).map(|(e, s)| e + scale * s).collect()
        } else {
            let mut sampled = one.core_sums(&pivots, |s| 1.0 + deg1[s] as f64);
            sampled.iter_mut().for_each(|x| *x *= scale);
            sampled
        }
    };
    Ok(BcResult {
        scores: one.finish(&core_raw),
        algorithm: Algorithm::SamplePeeled,
        k: Some(cfg.k),
        seed: Some(cfg.seed),
        elapsed: started.elapsed(),
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(BcError::arg(format!("epsilon must be in (0, 1), got {epsilon}")))
    }
}

/// `ceil(ln(n~) / epsilon^2)` pivots drawn from the core.
///
/// When the sources in `Y` are accumulated exactly, this many uniform
/// pivots give additive error `epsilon (n~ - 1) / (n - 1)` with probability
/// at least `1 - 1/n~`.
pub fn recommended_pivots(n_tilde: usize, epsilon: f64) -> Result<usize> {
    if n_tilde < 2 {
        return Err(BcError::arg(format!("n_tilde must be at least 2, got {n_tilde}")));
    }
    check_epsilon(epsilon)?;
    Ok(((n_tilde as f64).ln() / (epsilon * epsilon)).ceil() as usize)
}

/// Coarse worst-case pivot count from Bernstein's inequality.
///
/// For a node `u`, the per-pivot contributions `val_i` are bounded by
/// `(1 + delta1) n`, so `sum val_i^2 <= n~ (1 + delta1)^2 n^2` and
///
/// `k = ceil((ln n~ / eps^2) n~ (n~ (1 + delta1)^2 n^2 + (1 + delta1) eps n^3 / 3) / n^4)`.
///
/// The true `sum val_i^2` is only known after a run, so this is an upper
/// bound and usually loose.
pub fn bernstein_pivot_bound(n: usize, n_tilde: usize, delta1: usize, epsilon: f64) -> Result<usize> {
    if n_tilde < 2 || n_tilde > n {
        return Err(BcError::arg(format!(
            "need 2 <= n_tilde <= n, got n_tilde = {n_tilde}, n = {n}"
        )));
    }
    if delta1 >= n {
        return Err(BcError::arg(format!("delta1 = {delta1} must be below n = {n}")));
    }
    check_epsilon(epsilon)?;
    let (n, nt, w) = (n as f64, n_tilde as f64, 1.0 + delta1 as f64);
    let var = nt * w * w * n * n;
    let range = w * epsilon * n.powi(3) / 3.0;
    let k = (nt.ln() / (epsilon * epsilon)) * nt * (var + range) / n.powi(4);
    Ok(k.ceil() as usize)
}

/// Accuracy of an estimate against exact scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    /// `sum |est - truth| / sum truth`; infinite when the truth sums to
    /// zero but the estimate differs.
    pub rel_l1: f64,
    pub max_abs: f64,
    /// `est - truth` per node.
    pub per_node: Option<Vec<f64>>,
}

/// Relative l1 error of `est` against `truth`.
pub fn relative_l1_error(est: &BcResult, truth: &BcResult) -> Result<ErrorReport> {
    if est.len() != truth.len() {
        return Err(BcError::arg(format!(
            "score vectors differ in length: {} vs {}",
            est.len(),
            truth.len()
        )));
    }
    let diffs: Vec<f64> = est.scores.iter().zip(&truth.scores).map(|(e, t)| e - t).collect();
    let num: f64 = diffs.iter().map(|d| d.abs()).sum();
    let den: f64 = truth.scores.iter().sum();
    let rel_l1 = if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let max_abs = diffs.iter().map(|d| d.abs()).fold(0.0, f64::max);
    Ok(ErrorReport {
        rel_l1,
        max_abs,
        per_node: Some(diffs),
    })
}
