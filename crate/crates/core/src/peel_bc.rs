//! Exact and pivot-sampled betweenness after removing one round of
//! degree-1 nodes.
//!
//! With `V1` the degree-1 nodes of `G` and `G~ = G - V1`, every shortest path
//! from a pendant `s` enters the core through its anchor, so the pendants
//! can be folded into their anchors. Each core source `s` is weighted by
//! `1 + deg1(s)` and carries a second dependency `zeta_s(u)`, the share of
//! shortest paths from `s` to pendant targets. Paths that start or end at
//! pendants of `u` itself are added in closed form:
//! `deg1(u) * (2 c(u) - 3 - deg1(u))`, where `c(u)` is the size of the
//! connected component of `u`.

use std::time::Instant;

use rayon::prelude::*;

use crate::accumulate::{sum_over_sources, Workspace};
use crate::error::{BcError, Result};
use crate::exact::{normalize, Algorithm, BcResult};
use crate::graph::Graph;
use crate::sampling::sample_sorted;

/// Default cap on the number of `f64` entries the full-information variant
/// may allocate (512 MiB).
pub const DEFAULT_FULL_INFO_CAP: usize = 1 << 26;

/// `G` split into pendants and the core `G~`.
pub(crate) struct OneRound {
    pub n: usize,
    pub in_v1: Vec<bool>,
    /// Degree-1 neighbor count, indexed by node of `G`.
    pub deg1: Vec<usize>,
    pub core: Graph,
    /// Core id to id in `G`.
    pub core_ids: Vec<usize>,
    /// Id in `G` to core id.
    pub core_index: Vec<Option<usize>>,
    /// `deg1` indexed by core id.
    pub core_deg1: Vec<usize>,
    pub comp_id: Vec<usize>,
    pub comp_size: Vec<usize>,
}

impl OneRound {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let in_v1: Vec<bool> = (0..n).map(|u| g.degree(u) == 1).collect();
        let deg1: Vec<usize> = (0..n)
            .map(|u| g.neighbors(u).iter().filter(|&&v| in_v1[v]).count())
            .collect();
        let keep: Vec<bool> = in_v1.iter().map(|&x| !x).collect();
        let (core, core_ids) = g.induced_subgraph(&keep);
        let mut core_index = vec![None; n];
        for (i, &u) in core_ids.iter().enumerate() {
            core_index[u] = Some(i);
        }
        let core_deg1 = core_ids.iter().map(|&u| deg1[u]).collect();
        let (comp_id, sizes) = g.components();
        let comp_size = comp_id.iter().map(|&c| sizes[c]).collect();
        OneRound {
            n,
            in_v1,
            deg1,
            core,
            core_ids,
            core_index,
            core_deg1,
            comp_id,
            comp_size,
        }
    }

    pub fn n_tilde(&self) -> usize {
        self.core_ids.len()
    }

    /// Anchor of a pendant, `None` for core nodes.
    pub fn anchor(&self, g: &Graph, s: usize) -> Option<usize> {
        self.in_v1[s].then(|| g.neighbors(s)[0])
    }

    /// `deg1(u) (2 c(u) - 3 - deg1(u))`: ordered pairs with a pendant of `u`
    /// at one end and `u` strictly inside.
    pub fn closed_form(&self, u: usize) -> f64 {
        let d = self.deg1[u] as f64;
        d * (2.0 * self.comp_size[u] as f64 - 3.0 - d)
    }

    /// Core sources in ascending order: all of them, or `k` drawn uniformly.
    /// Returns the sources and the rescaling factor `n~ / k`.
    pub fn sources(&self, k: Option<usize>, seed: u64) -> Result<(Vec<usize>, Option<f64>)> {
        let nt = self.n_tilde();
        match k {
            Some(0) => Err(BcError::arg("number of pivots must be positive")),
            Some(k) if k < nt => Ok((sample_sorted(nt, k, seed), Some(nt as f64 / k as f64))),
            _ => Ok(((0..nt).collect(), None)),
        }
    }

    /// Weighted `delta + zeta` sums over core sources, indexed by core id.
    pub fn core_sums(&self, sources: &[usize], weight: impl Fn(usize) -> f64 + Sync) -> Vec<f64> {
        let deg1 = &self.core_deg1;
        sum_over_sources(&self.core, sources, self.n_tilde(), |ws: &mut Workspace<'_>, s, acc| {
            let w_s = weight(s);
            ws.delta_zeta(s, deg1, |w, d, z| acc[w] += w_s * (d + z));
        })
    }

    /// Lifts core sums to `G`, adds the closed-form pendant term and
    /// normalizes.
    pub fn finish(&self, core_raw: &[f64]) -> Vec<f64> {
        let mut raw = vec![0.0; self.n];
        for (i, &u) in self.core_ids.iter().enumerate() {
            raw[u] = core_raw[i] + self.closed_form(u);
        }
        normalize(raw, self.n)
    }
}

/// Memory-efficient exact betweenness after one peeling round, or its
/// pivot-sampled estimate when `k` is given and smaller than the core.
pub fn bc_one_round_mem(g: &Graph, k: Option<usize>, seed: u64) -> Result<BcResult> {
    let started = Instant::now();
    let one = OneRound::new(g);
    let (sources, scale) = one.sources(k, seed)?;
    let deg1 = &one.core_deg1;
    let mut core_raw = one.core_sums(&sources, |s| 1.0 + deg1[s] as f64);
    if let Some(f) = scale {
        core_raw.iter_mut().for_each(|x| *x *= f);
    }
    let mut res = BcResult::exact(one.finish(&core_raw), Algorithm::OneRoundMem, started);
    if scale.is_some() {
        res.k = k;
        res.seed = Some(seed);
    }
    Ok(res)
}

/// Per-source tables kept by [`bc_one_round_full`].
///
/// `delta_tilde` and `zeta` are indexed by pairs of core nodes; `delta` has
/// one row per node of `G` and one column per core node. All accessors take
/// ids of `G` and return `None` when a column (or core row) is not a core
/// node.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaZetaTable {
    n: usize,
    core_index: Vec<Option<usize>>,
    n_tilde: usize,
    delta_tilde: Vec<f64>,
    zeta: Vec<f64>,
    delta: Vec<f64>,
}

impl DeltaZetaTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_tilde(&self) -> usize {
        self.n_tilde
    }

    /// `delta_s(u)` in `G` for any source `s` and core node `u`.
    pub fn delta(&self, s: usize, u: usize) -> Option<f64> {
        let j = self.core_index[u]?;
        Some(self.delta[s * self.n_tilde + j])
    }

    /// `delta_s(u)` in the core `G~`.
    pub fn delta_tilde(&self, s: usize, u: usize) -> Option<f64> {
        let i = self.core_index[s]?;
        let j = self.core_index[u]?;
        Some(self.delta_tilde[i * self.n_tilde + j])
    }

    /// Pendant-weighted dependency `zeta_s(u)` in the core.
    pub fn zeta(&self, s: usize, u: usize) -> Option<f64> {
        let i = self.core_index[s]?;
        let j = self.core_index[u]?;
        Some(self.zeta[i * self.n_tilde + j])
    }
}

/// Full-information variant of [`bc_one_round_mem`]: materializes every
/// source dependency `delta_s(u)` of `G` for core nodes `u`.
///
/// Needs `n n~ + 2 n~^2` floats; fails with [`BcError::MemoryCap`] when that
/// exceeds `cap` entries. With `k` pivots only the sampled core rows are
/// filled, rescaled by `n~ / k`, and the scores are the same estimate as
/// [`bc_one_round_mem`] gives.
pub fn bc_one_round_full(
    g: &Graph,
    k: Option<usize>,
    seed: u64,
    cap: usize,
) -> Result<(BcResult, DeltaZetaTable)> {
    let started = Instant::now();
    let one = OneRound::new(g);
    let n = one.n;
    let nt = one.n_tilde();
    let required = n
        .checked_mul(nt)
        .and_then(|a| nt.checked_mul(nt).and_then(|b| b.checked_mul(2)).and_then(|b| a.checked_add(b)))
        .unwrap_or(usize::MAX);
    if required > cap {
        return Err(BcError::MemoryCap { required, cap });
    }
    let (sources, scale) = one.sources(k, seed)?;

    let mut delta_tilde = vec![0.0; nt * nt];
    let mut zeta = vec![0.0; nt * nt];
    let rows: Vec<(usize, Vec<f64>, Vec<f64>)> = sources
        .par_iter()
        .map_init(
            || Workspace::new(&one.core),
            |ws, &s| {
                let mut d_row = vec![0.0; nt];
                let mut z_row = vec![0.0; nt];
                ws.delta_zeta(s, &one.core_deg1, |w, d, z| {
                    d_row[w] = d;
                    z_row[w] = z;
                });
                (s, d_row, z_row)
            },
        )
        .collect();
    let f = scale.unwrap_or(1.0);
    for (s, d_row, z_row) in rows {
        for j in 0..nt {
            delta_tilde[s * nt + j] = d_row[j] * f;
            zeta[s * nt + j] = z_row[j] * f;
        }
    }

    let mut delta = vec![0.0; n * nt];
    for s in 0..n {
        let row = &mut delta[s * nt..(s + 1) * nt];
        let anchor = one.anchor(g, s);
        // Row of G~ that s borrows: its own, or its anchor's.
        let base = match anchor {
            Some(y) => one.core_index[y],
            None => one.core_index[s],
        };
        for (j, slot) in row.iter_mut().enumerate() {
            let u = one.core_ids[j];
            let mut d = if anchor == Some(u) {
                one.comp_size[u] as f64 - 2.0
            } else if let Some(b) = base {
                delta_tilde[b * nt + j] + zeta[b * nt + j]
            } else {
                0.0
            };
            let d1 = one.deg1[u];
            if d1 > 0 && s != u && anchor != Some(u) && one.comp_id[s] == one.comp_id[u] {
                d += d1 as f64;
            }
            *slot = d;
        }
    }

    let scores = if scale.is_some() {
        // Rows of unsampled sources are empty, so column sums are not an
        // estimate; weight the sampled core rows instead.
        let mut core_raw = vec![0.0; nt];
        for &s in &sources {
            let w_s = 1.0 + one.core_deg1[s] as f64;
            for (j, acc) in core_raw.iter_mut().enumerate() {
                *acc += w_s * (delta_tilde[s * nt + j] + zeta[s * nt + j]);
            }
        }
        one.finish(&core_raw)
    } else {
        let mut raw = vec![0.0; n];
        for s in 0..n {
            let row = &delta[s * nt..(s + 1) * nt];
            for (j, &x) in row.iter().enumerate() {
                raw[one.core_ids[j]] += x;
            }
        }
        normalize(raw, n)
    };
    let mut res = BcResult::exact(scores, Algorithm::OneRoundFull, started);
    if scale.is_some() {
        res.k = k;
        res.seed = Some(seed);
    }
    let table = DeltaZetaTable {
        n,
        core_index: one.core_index,
        n_tilde: nt,
        delta_tilde,
        zeta,
        delta,
    };
    Ok((res, table))
}
