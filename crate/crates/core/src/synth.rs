//! Seeded graph generators: the core-periphery testbed and a small
//! Erdos-Renyi sampler with random pendants.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{BcError, Result};
use crate::graph::Graph;

/// How periphery nodes are spread over the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attachment {
    /// Core node `j` gets a share proportional to `core - j`.
    LinearSkew,
    /// Core node `i` gets `floor(v1 / 2^(i+1))` until the schedule runs out.
    GeometricHalving,
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Attachment::LinearSkew => "linear-skew",
            Attachment::GeometricHalving => "geometric-halving",
        })
    }
}

impl FromStr for Attachment {
    type Err = BcError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "linear-skew" | "linear" => Ok(Attachment::LinearSkew),
            "geometric-halving" | "geometric" => Ok(Attachment::GeometricHalving),
            _ => Err(BcError::arg(format!("unknown attachment '{s}'"))),
        }
    }
}

/// Parameters of [`generate_core_periphery`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorePeripherySpec {
    pub core_size: usize,
    pub v1_count: usize,
    pub attachment: Attachment,
    pub seed: u64,
}

impl CorePeripherySpec {
    pub fn validate(&self) -> Result<()> {
        if self.core_size < 3 {
            return Err(BcError::arg(format!(
                "core size must be at least 3, got {}",
                self.core_size
            )));
        }
        Ok(())
    }
}

/// Pendants per core node (index 0 is the central node, which gets none).
pub fn pendant_counts(spec: &CorePeripherySpec) -> Result<Vec<usize>> {
    spec.validate()?;
    let core = spec.core_size;
    let v1 = spec.v1_count;
    let mut counts = vec![0; core];
    match spec.attachment {
        Attachment::LinearSkew => {
            let total: usize = (1..core).map(|j| core - j).sum();
            let mut given = 0;
            for (j, c) in counts.iter_mut().enumerate().skip(1) {
                *c = v1 * (core - j) / total;
                given += *c;
            }
            for j in (1..core).cycle().take(v1 - given) {
                counts[j] += 1;
            }
        }
        Attachment::GeometricHalving => {
            let mut left = v1;
            let mut next = 1;
            while next < core && left > 0 {
                let share = v1 >> (next + 1).min(63);
                if share == 0 || share > left {
                    break;
                }
                counts[next] = share;
                left -= share;
                next += 1;
            }
            if left > 0 {
                let target = if next < core { next } else { 1 };
                counts[target] += left;
            }
        }
    }
    Ok(counts)
}

/// Two cliques on the non-central core nodes, a central node adjacent to
/// all of them, and `v1_count` degree-1 periphery nodes.
///
/// Core nodes are `0..core_size` with `0` central; the first clique is
/// `1..=core_size/2`. Periphery nodes follow, and the seed decides which
/// periphery id goes to which core node.
pub fn generate_core_periphery(spec: &CorePeripherySpec) -> Result<Graph> {
    let counts = pendant_counts(spec)?;
    let core = spec.core_size;
    let split = core / 2;
    let mut edges = Vec::new();
    for u in 1..core {
        edges.push((0, u));
    }
    for (lo, hi) in [(1, split + 1), (split + 1, core)] {
        for u in lo..hi {
            for v in u + 1..hi {
                edges.push((u, v));
            }
        }
    }
    let mut anchors: Vec<usize> = counts
        .iter()
        .enumerate()
        .flat_map(|(u, &c)| std::iter::repeat_n(u, c))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    anchors.shuffle(&mut rng);
    for (i, &a) in anchors.iter().enumerate() {
        edges.push((a, core + i));
    }
    Graph::from_edges(core + spec.v1_count, edges)
}

/// Erdos-Renyi `G(n, p)` plus `0..=max_pendants` pendants per node, drawn
/// uniformly and independently.
pub fn random_pendant_graph(n: usize, p: f64, max_pendants: usize, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(BcError::arg(format!("edge probability must be in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut next = n;
    for u in 0..n {
        for _ in 0..rng.gen_range(0..=max_pendants) {
            edges.push((u, next));
            next += 1;
        }
    }
    Graph::from_edges(next, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brandes_exact;
    use crate::peel::peel;

    fn spec(core: usize, v1: usize, attachment: Attachment) -> CorePeripherySpec {
        CorePeripherySpec {
            core_size: core,
            v1_count: v1,
            attachment,
            seed: 1,
        }
    }

    #[test]
    fn geometric_schedule() {
        let c = pendant_counts(&spec(50, 100, Attachment::GeometricHalving)).unwrap();
        assert_eq!(&c[..8], &[0, 25, 12, 6, 3, 1, 53, 0]);
        assert_eq!(c.iter().sum::<usize>(), 100);
        let c = pendant_counts(&spec(3, 100, Attachment::GeometricHalving)).unwrap();
        assert_eq!(c, vec![0, 25 + 63, 12]);
    }

    #[test]
    fn linear_schedule() {
        let c = pendant_counts(&spec(5, 10, Attachment::LinearSkew)).unwrap();
        assert_eq!(c, vec![0, 4, 3, 2, 1]);
        let c = pendant_counts(&spec(50, 3000, Attachment::LinearSkew)).unwrap();
        assert_eq!(c.iter().sum::<usize>(), 3000);
        assert_eq!(c[0], 0);
        assert!(c[1..].windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn shape_and_peeling() {
        for att in [Attachment::LinearSkew, Attachment::GeometricHalving] {
            let s = spec(50, 1000, att);
            let g = generate_core_periphery(&s).unwrap();
            assert_eq!(g.n(), 1050);
            assert!((50..1050).all(|u| g.degree(u) == 1));
            let p = peel(&g, None);
            assert_eq!(p.istar(), 1);
            assert_eq!(p.rounds()[0], (50..1050).collect::<Vec<_>>());
            assert_eq!(generate_core_periphery(&s).unwrap(), g);
        }
    }

    #[test]
    fn empty_periphery_center_is_max() {
        let g = generate_core_periphery(&spec(50, 0, Attachment::LinearSkew)).unwrap();
        assert_eq!(g.n(), 50);
        assert_eq!(g.m(), 49 + 25 * 24 / 2 + 24 * 23 / 2);
        let bc = brandes_exact(&g).scores;
        assert!(bc[1..].iter().all(|&x| x < bc[0]));
    }

    #[test]
    fn rejects_tiny_core() {
        assert!(generate_core_periphery(&spec(2, 10, Attachment::LinearSkew)).is_err());
    }

    #[test]
    fn random_graph_is_seeded() {
        let a = random_pendant_graph(30, 0.2, 3, 4).unwrap();
        assert_eq!(a, random_pendant_graph(30, 0.2, 3, 4).unwrap());
        assert!(a.n() >= 30 && a.n() <= 120);
        assert!((30..a.n()).all(|u| a.degree(u) == 1));
    }
}
