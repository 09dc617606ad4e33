//! Run records, score files and the benchmark suites.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{BcError, Result};
use crate::exact::{brandes_exact, BcResult};
use crate::graph::Graph;
use crate::peel::PeelReport;
use crate::peel_bc::bc_one_round_mem;
use crate::sampling::{relative_l1_error, sample_bc_baseline, sample_bc_peeled, SampleConfig};
use crate::synth::{generate_core_periphery, Attachment, CorePeripherySpec};

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// removed, exponent form outside `[1e-4, 1e12)`.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Metadata of one computation, written next to its scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub dataset: String,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub n_tilde: usize,
    pub m_tilde: usize,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub elapsed_ms: Option<f64>,
    pub rel_l1: Option<f64>,
    pub round_fractions: Vec<f64>,
}

impl RunRecord {
    pub const CSV_HEADER: [&'static str; 11] = [
        "dataset",
        "algorithm",
        "n",
        "m",
        "n_tilde",
        "m_tilde",
        "k",
        "seed",
        "elapsed_ms",
        "rel_l1",
        "round_fractions",
    ];

    /// Record without timing; see [`RunRecord::with_elapsed`].
    pub fn new(dataset: &str, res: &BcResult, report: &PeelReport) -> Self {
        RunRecord {
            dataset: dataset.to_string(),
            algorithm: res.algorithm.name().to_string(),
            n: report.n,
            m: report.m,
            n_tilde: report.n_tilde,
            m_tilde: report.m_tilde,
            k: res.k,
            seed: res.seed,
            elapsed_ms: None,
            rel_l1: None,
            round_fractions: report.round_fractions.clone(),
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed_ms = Some(elapsed.as_secs_f64() * 1e3);
        self
    }

    /// One CSV row; absent values are empty and round fractions are joined
    /// with `;`.
    pub fn csv_fields(&self) -> Vec<String> {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        vec![
            self.dataset.clone(),
            self.algorithm.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.n_tilde.to_string(),
            self.m_tilde.to_string(),
            opt(self.k),
            opt(self.seed),
            opt(self.elapsed_ms),
            opt(self.rel_l1),
            self.round_fractions
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
        ]
    }

    pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for r in records {
            w.write_record(r.csv_fields())?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `node,bc` rows in label order with 12 significant digits.
pub fn write_scores_csv<W: Write>(g: &Graph, scores: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node", "bc"])?;
    for u in g.label_order() {
        w.write_record([g.label(u), &fmt_sig(scores[u])])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ScoreEntry<'a> {
    node: &'a str,
    bc: f64,
}

#[derive(Serialize)]
struct ScoreFile<'a> {
    run: &'a RunRecord,
    scores: Vec<ScoreEntry<'a>>,
}

/// One JSON object holding the run record and the scores in label order.
pub fn write_scores_json<W: Write>(g: &Graph, scores: &[f64], record: &RunRecord, mut out: W) -> Result<()> {
    let file = ScoreFile {
        run: record,
        scores: g
            .label_order()
            .into_iter()
            .map(|u| ScoreEntry {
                node: g.label(u),
                bc: scores[u],
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut out, &file)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Reads a `node,bc` file and returns scores aligned with the nodes of `g`.
pub fn read_scores_for<R: Read>(g: &Graph, source: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(source);
    let mut by_label = HashMap::new();
    for (i, row) in r.records().enumerate() {
        let row = row?;
        let line = i + 2;
        if row.len() != 2 {
            return Err(BcError::parse(line, "expected two columns: node,bc"));
        }
        let v: f64 = row[1]
            .trim()
            .parse()
            .map_err(|_| BcError::parse(line, format!("bad score '{}'", &row[1])))?;
        by_label.insert(row[0].to_string(), v);
    }
    g.labels()
        .iter()
        .map(|l| {
            by_label
                .get(l)
                .copied()
                .ok_or_else(|| BcError::arg(format!("no score for node '{l}'")))
        })
        .collect()
}

/// Writes plain rows with a header derived from the field names.
pub fn write_rows<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `(v1_count, seed, method)` error row of the synth-growth suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub v1_count: usize,
    pub seed: u64,
    pub method: &'static str,
    pub k: usize,
    pub rel_l1: f64,
}

/// Mean errors per periphery size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthSummary {
    pub v1_count: usize,
    pub baseline_mean: f64,
    pub peeled_mean: f64,
}

pub const GROWTH_SIZES: [usize; 4] = [100, 500, 1000, 3000];
pub const GROWTH_CORE: usize = 50;
pub const GROWTH_K: usize = 10;

/// Error of both estimators on the geometric core-periphery graph as the
/// periphery grows. Seeds `0..seeds` fix both the graph and the pivots.
pub fn synth_growth(sizes: &[usize], seeds: u64, k: usize) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for &v1 in sizes {
        for seed in 0..seeds {
            let g = generate_core_periphery(&CorePeripherySpec {
                core_size: GROWTH_CORE,
                v1_count: v1,
                attachment: Attachment::GeometricHalving,
                seed,
            })?;
            let truth = brandes_exact(&g);
            let cfg = SampleConfig::new(k, seed);
            for (method, est) in [
                ("baseline", sample_bc_baseline(&g, &cfg)?),
                ("peeled", sample_bc_peeled(&g, &cfg)?),
            ] {
                rows.push(GrowthRow {
                    v1_count: v1,
                    seed,
                    method,
                    k,
                    rel_l1: relative_l1_error(&est, &truth)?.rel_l1,
                });
            }
        }
    }
    Ok(rows)
}

pub fn growth_summary(rows: &[GrowthRow]) -> Vec<GrowthSummary> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.v1_count).collect();
    sizes.dedup();
    let mean = |v1: usize, method: &str| {
        let xs: Vec<f64> = rows
            .iter()
            .filter(|r| r.v1_count == v1 && r.method == method)
            .map(|r| r.rel_l1)
            .collect();
        xs.iter().sum::<f64>() / xs.len() as f64
    };
    sizes
        .into_iter()
        .map(|v1| GrowthSummary {
            v1_count: v1,
            baseline_mean: mean(v1, "baseline"),
            peeled_mean: mean(v1, "peeled"),
        })
        .collect()
}

/// `(dataset, k, seed, method)` error row of the pivot-sweep suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub dataset: String,
    pub k: usize,
    pub seed: u64,
    pub method: &'static str,
    pub rel_l1: f64,
}

pub const SWEEP_K: [usize; 11] = [5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100];

/// Error of both estimators against exact scores for each pivot count.
/// Pivot counts above `n` are skipped.
pub fn pivot_sweep(datasets: &[(String, Graph)], ks: &[usize], seeds: u64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for (name, g) in datasets {
        let truth = brandes_exact(g);
        for &k in ks.iter().filter(|&&k| k <= g.n()) {
            for seed in 0..seeds {
                let cfg = SampleConfig::new(k, seed);
                for (method, est) in [
                    ("baseline", sample_bc_baseline(g, &cfg)?),
                    ("peeled", sample_bc_peeled(g, &cfg)?),
                ] {
                    rows.push(SweepRow {
                        dataset: name.clone(),
                        k,
                        seed,
                        method,
                        rel_l1: relative_l1_error(&est, &truth)?.rel_l1,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Median wall times of exact Brandes, exact one-round peeling and the
/// peeled estimator with `k = 10`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedupRow {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub survivor_fraction: f64,
    pub brandes_ms: f64,
    pub peel1_ms: f64,
    pub sampled_ms: f64,
    pub ratio: f64,
}

/// Median of `reps` timings of `f`.
pub fn median_time<T>(reps: usize, mut f: impl FnMut() -> Result<T>) -> Result<Duration> {
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        std::hint::black_box(f()?);
        times.push(t.elapsed());
    }
    times.sort();
    Ok(times[times.len() / 2])
}

pub fn speedup(datasets: &[(String, Graph)], reps: usize) -> Result<Vec<SpeedupRow>> {
    let mut rows = Vec::new();
    for (name, g) in datasets {
        let report = crate::peel::peel_diagnostics(g);
        let brandes = median_time(reps, || Ok(brandes_exact(g)))?;
        let peel1 = median_time(reps, || bc_one_round_mem(g, None, 0))?;
        let k = GROWTH_K.min(g.n().max(1));
        let sampled = median_time(reps, || sample_bc_peeled(g, &SampleConfig::new(k, 0)))?;
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        rows.push(SpeedupRow {
            dataset: name.clone(),
            n: g.n(),
            m: g.m(),
            survivor_fraction: report.survivor_fraction,
            brandes_ms: ms(brandes),
            peel1_ms: ms(peel1),
            sampled_ms: ms(sampled),
            ratio: brandes.as_secs_f64() / peel1.as_secs_f64().max(1e-9),
        });
    }
    Ok(rows)
}

/// The periphery-heavy synthetic graph used by the speedup suite.
pub fn synthetic_speedup_graph() -> Result<Graph> {
    generate_core_periphery(&CorePeripherySpec {
        core_size: GROWTH_CORE,
        v1_count: 3000,
        attachment: Attachment::GeometricHalving,
        seed: 0,
    })
}
