//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

mod common;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bcpeel::bench::median_time;
use bcpeel::peel::peel;
use bcpeel::{
    accumulate_delta_zeta, bc_one_round_full, bc_one_round_mem, bc_via_2core_recurrence,
    brandes_exact, oracle_bc, oracle_sigma, sample_bc_baseline, sample_bc_peeled, sssp_bfs,
    two_core_recurrence_trace, Graph, SampleConfig, DEFAULT_FULL_INFO_CAP,
};
use common::{corpus, max_abs_diff, mean_and_se, unbiasedness_fixture};

const EXACT_TOL: f64 = 1e-9;
const FAMILY_TOL: f64 = 1e-12;
const CORPUS_BUDGET: Duration = Duration::from_secs(120);
const GROWTH_BUDGET: Duration = Duration::from_secs(300);
const UNBIASED_SEEDS: u64 = 1000;
const UNBIASED_K: usize = 10;
const UNBIASED_SE: f64 = 3.0;
const TABLE_DECIMALS_TOL: f64 = 0.005;
/// Standard errors at or below this are rounding noise of an estimate that
/// does not depend on the pivots; such nodes must match the truth to
/// `FAMILY_TOL` instead.
const SE_FLOOR: f64 = 1e-12;

type Outcome = Result<String, String>;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_bcpeel")
}

fn run_cli(args: &[&str]) -> Result<std::process::Output, String> {
    let out = Command::new(bin()).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "bcpeel {} failed: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok(out)
}

fn exact_algorithms(g: &Graph) -> Vec<(&'static str, Vec<f64>)> {
    vec![
        ("brandes", brandes_exact(g).scores),
        ("peel1", bc_one_round_mem(g, None, 0).unwrap().scores),
        ("peel1-full", bc_one_round_full(g, None, 0, DEFAULT_FULL_INFO_CAP).unwrap().0.scores),
        ("2core-recurrence", bc_via_2core_recurrence(g).scores),
        ("oracle", oracle_bc(g).scores),
    ]
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for (i, g) in corpus().enumerate() {
        let truth = oracle_bc(&g).scores;
        let (full, _) = bc_one_round_full(&g, None, 0, DEFAULT_FULL_INFO_CAP).map_err(|e| e.to_string())?;
        let checks = [
            ("peel1-full", full.scores),
            ("peel1", bc_one_round_mem(&g, None, 0).map_err(|e| e.to_string())?.scores),
            ("2core-recurrence", bc_via_2core_recurrence(&g).scores),
        ];
        for (name, scores) in checks {
            let d = max_abs_diff(&scores, &truth);
            if d > EXACT_TOL {
                return Err(format!("graph {i}: {name} differs from oracle by {d:e}"));
            }
            worst = worst.max(d);
        }
    }
    let elapsed = started.elapsed();
    if elapsed > CORPUS_BUDGET {
        return Err(format!("took {elapsed:?}, budget {CORPUS_BUDGET:?}"));
    }
    Ok(format!("200 graphs, max diff {worst:.2e}, {:.1}s", elapsed.as_secs_f64()))
}

fn recurrence_fidelity() -> Outcome {
    let mut levels = 0;
    for (i, g) in corpus().enumerate() {
        let trace = two_core_recurrence_trace(&g);
        let p = peel(&g, None);
        for lvl in &trace.levels {
            let (gi, map) = g.induced_subgraph(&p.level_mask(lvl.level));
            let direct = oracle_sigma(&gi);
            for a in 0..gi.n() {
                for b in 0..gi.n() {
                    let got = lvl.counts.dist(map[a], map[b]).map(|d| (d, lvl.counts.sigma(map[a], map[b])));
                    let want = direct.dist(a, b).map(|d| (d, direct.sigma(a, b)));
                    if got != want {
                        return Err(format!(
                            "graph {i} level {}: pair ({}, {}) has {got:?}, direct {want:?}",
                            lvl.level, map[a], map[b]
                        ));
                    }
                }
            }
            levels += 1;
        }
    }
    let g = common::asymmetric_pendant_graph();
    let c = bc_via_2core_recurrence(&g).scores[2];
    if (c - 0.6).abs() > FAMILY_TOL {
        return Err(format!("fixture bc(c) = {c}, expected 0.6"));
    }
    Ok(format!("{levels} levels equal entrywise, fixture bc(c) = {c}"))
}

fn closed_form_families() -> Outcome {
    let check = |what: &str, g: &Graph, want: &[f64]| -> Result<(), String> {
        for (name, scores) in exact_algorithms(g) {
            let d = max_abs_diff(&scores, want);
            if d > FAMILY_TOL {
                return Err(format!("{what}: {name} off by {d:e}"));
            }
        }
        Ok(())
    };
    for q in 2..=50 {
        let g = Graph::from_edges(q + 1, (1..=q).map(|i| (0, i))).unwrap();
        let mut want = vec![0.0; q + 1];
        want[0] = 1.0;
        check(&format!("star q={q}"), &g, &want)?;
    }
    let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    check("P4", &p4, &[0.0, 2.0 / 3.0, 2.0 / 3.0, 0.0])?;
    let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    check("C4", &c4, &[1.0 / 6.0; 4])?;
    Ok("stars q=2..50, P4, C4 on all exact algorithms".into())
}

fn zeta_correctness() -> Outcome {
    let mut worst = 0.0f64;
    for (i, g) in corpus().enumerate() {
        let in_v1: Vec<bool> = (0..g.n()).map(|u| g.degree(u) == 1).collect();
        let keep: Vec<bool> = in_v1.iter().map(|&x| !x).collect();
        let (core, map) = g.induced_subgraph(&keep);
        let deg1: Vec<usize> = map
            .iter()
            .map(|&u| g.neighbors(u).iter().filter(|&&v| in_v1[v]).count())
            .collect();
        let pc = oracle_sigma(&core);
        for s in 0..core.n() {
            let tree = sssp_bfs(&core, s).map_err(|e| e.to_string())?;
            let (_, zeta) = accumulate_delta_zeta(&tree, &deg1);
            for u in (0..core.n()).filter(|&u| u != s) {
                let want: f64 = (0..core.n())
                    .filter(|&t| t != s && t != u)
                    .map(|t| deg1[t] as f64 * pc.ratio(s, t, u))
                    .sum();
                let d = (zeta[u] - want).abs();
                if d > EXACT_TOL {
                    return Err(format!("graph {i}: zeta_{s}({u}) = {}, brute force {want}", zeta[u]));
                }
                worst = worst.max(d);
            }
        }
    }
    Ok(format!("200 graphs, max diff {worst:.2e}"))
}

fn fixtures_dir() -> PathBuf {
    std::env::var_os("BCPEEL_FIXTURES_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

const GRAPH_EXTENSIONS: [&str; 5] = ["mtx", "edges", "txt", "el", "tsv"];

/// Fixture files by dataset name (file stem).
fn fixture_files() -> HashMap<String, PathBuf> {
    let mut found = HashMap::new();
    if let Ok(entries) = std::fs::read_dir(fixtures_dir()) {
        for e in entries.flatten() {
            let p = e.path();
            let graph_file = p
                .extension()
                .and_then(|x| x.to_str())
                .is_some_and(|x| GRAPH_EXTENSIONS.contains(&x));
            if p.is_file() && graph_file {
                if let Some(stem) = p.file_stem() {
                    found.insert(stem.to_string_lossy().into_owned(), p);
                }
            }
        }
    }
    found
}

/// Dataset, n, m, one-round survivor fraction, 2-core fraction.
const TABLE: [(&str, usize, usize, f64, f64); 13] = [
    ("soc-dolphins", 62, 159, 0.85, 0.85),
    ("ca-CSphd", 1882, 1740, 0.3, 0.08),
    ("rt_obama", 3212, 3423, 0.2, 0.11),
    ("soc-hamsterster", 2426, 16630, 0.87, 0.86),
    ("rt_occupywallstnyc", 3609, 3833, 0.11, 0.08),
    ("soc-wiki-Vote", 889, 2914, 0.78, 0.76),
    ("inf-power", 4941, 6594, 0.75, 0.67),
    ("email-univ", 1133, 5451, 0.86, 0.86),
    ("fb-pages-food", 620, 2102, 0.8, 0.77),
    ("ca-Erdos992", 5094, 7515, 0.29, 0.28),
    ("inf-euroroad", 1174, 1417, 0.83, 0.64),
    ("email-dnc-corecipient", 906, 10429, 0.62, 0.61),
    ("email-EuAll", 265214, 365570, 0.148, 0.145),
];
const REQUIRED_FIXTURES: [&str; 3] = ["soc-dolphins", "ca-CSphd", "rt_obama"];

fn table_stats() -> Outcome {
    let files = fixture_files();
    let missing: Vec<&str> = REQUIRED_FIXTURES
        .iter()
        .copied()
        .filter(|name| !files.contains_key(*name))
        .collect();
    let mut checked = Vec::new();
    for (name, n, m, survivor, core) in TABLE {
        let Some(path) = files.get(name) else { continue };
        let out = run_cli(&["stats", path.to_str().unwrap(), "--format", "json", "--ignore-extra-columns"])?;
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let got_n = v["n"].as_u64().unwrap_or(0) as usize;
        let got_m = v["m"].as_u64().unwrap_or(0) as usize;
        let got_s = v["survivor_fraction"].as_f64().unwrap_or(f64::NAN);
        let got_c = v["core_fraction"].as_f64().unwrap_or(f64::NAN);
        if got_n != n
            || got_m != m
            || !((got_s - survivor).abs() <= TABLE_DECIMALS_TOL)
            || !((got_c - core).abs() <= TABLE_DECIMALS_TOL)
        {
            return Err(format!(
                "{name}: got n={got_n} m={got_m} survivor={got_s:.3} core={got_c:.3}, \
                 expected {n} {m} {survivor} {core}"
            ));
        }
        checked.push(name);
    }
    if !missing.is_empty() {
        return Err(format!(
            "required fixtures missing from {}: {}",
            fixtures_dir().display(),
            missing.join(", ")
        ));
    }
    Ok(format!("matched {}", checked.join(", ")))
}

fn sampling_contract() -> Outcome {
    let g = unbiasedness_fixture();
    let nt = (0..g.n()).filter(|&u| g.degree(u) != 1).count();
    let exact = bc_one_round_mem(&g, None, 0).map_err(|e| e.to_string())?;
    for k in [nt, nt + 1, 10 * nt] {
        let est = sample_bc_peeled(&g, &SampleConfig::new(k, 3)).map_err(|e| e.to_string())?;
        if est.scores != exact.scores {
            return Err(format!("k = {k} >= n~ = {nt} is not bit-identical to the exact run"));
        }
    }

    let truth = brandes_exact(&g).scores;
    let mut report = Vec::new();
    for (name, peeled) in [("peeled", true), ("baseline", false)] {
        let runs: Vec<Vec<f64>> = (0..UNBIASED_SEEDS)
            .map(|seed| {
                let cfg = SampleConfig::new(UNBIASED_K, seed);
                let r = if peeled {
                    sample_bc_peeled(&g, &cfg)
                } else {
                    sample_bc_baseline(&g, &cfg)
                };
                r.unwrap().scores
            })
            .collect();
        let (mean, se) = mean_and_se(&runs);
        let mut worst_z = 0.0f64;
        for u in 0..g.n() {
            let d = (mean[u] - truth[u]).abs();
            if se[u] <= SE_FLOOR {
                if d > FAMILY_TOL {
                    return Err(format!("{name}: node {u} is constant {} but truth is {}", mean[u], truth[u]));
                }
                continue;
            }
            let z = d / se[u];
            if z > UNBIASED_SE {
                return Err(format!(
                    "{name}: node {u} mean {:.6} vs truth {:.6} is {z:.2} standard errors off",
                    mean[u], truth[u]
                ));
            }
            worst_z = worst_z.max(z);
        }
        report.push(format!("{name} max |z| {worst_z:.2}"));
    }
    Ok(format!("k >= n~ bit-identical; {} over {UNBIASED_SEEDS} seeds", report.join(", ")))
}

fn synth_growth_trend() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let started = Instant::now();
    run_cli(&["bench", "--suite", "synth-growth", "--seeds", "5", "--out", dir.path().to_str().unwrap()])?;
    let elapsed = started.elapsed();
    let text = std::fs::read_to_string(dir.path().join("synth_growth_summary.csv")).map_err(|e| e.to_string())?;
    let mut rows = HashMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let v1: usize = f[0].parse().map_err(|_| format!("bad row {line}"))?;
        let b: f64 = f[1].parse().map_err(|_| format!("bad row {line}"))?;
        let p: f64 = f[2].parse().map_err(|_| format!("bad row {line}"))?;
        rows.insert(v1, (b, p));
    }
    let (&(b3000, p3000), &(_, p100)) = (
        rows.get(&3000).ok_or("no row for 3000")?,
        rows.get(&100).ok_or("no row for 100")?,
    );
    if elapsed > GROWTH_BUDGET {
        return Err(format!("took {elapsed:?}, budget {GROWTH_BUDGET:?}"));
    }
    if !(p3000 < b3000) {
        return Err(format!("at 3000: peeled {p3000} not below baseline {b3000}"));
    }
    if !(p3000 <= p100) {
        return Err(format!("peeled error grew: {p100} at 100, {p3000} at 3000"));
    }
    Ok(format!(
        "at 3000 peeled {p3000:.4} < baseline {b3000:.4}; peeled {p100:.4} at 100, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn speedup_property() -> Outcome {
    let mut graphs = vec![("synthetic core 50, |V1| 3000".to_string(), bcpeel::bench::synthetic_speedup_graph().unwrap())];
    for (name, path) in fixture_files() {
        let opts = bcpeel::io::EdgeListOptions {
            ignore_extra_columns: true,
        };
        let g = bcpeel::io::load_path(&path, None, opts).map_err(|e| format!("{name}: {e}"))?;
        if bcpeel::peel_diagnostics(&g).survivor_fraction <= 0.5 {
            graphs.push((name, g));
        }
    }
    let mut report = Vec::new();
    for (name, g) in &graphs {
        let brandes = median_time(3, || Ok(brandes_exact(g))).unwrap();
        let peel1 = median_time(3, || bc_one_round_mem(g, None, 0)).unwrap();
        let ratio = brandes.as_secs_f64() / peel1.as_secs_f64();
        if !(peel1 < brandes) {
            return Err(format!("{name}: peel1 {peel1:?} not faster than brandes {brandes:?}"));
        }
        report.push(format!("{name}: {ratio:.1}x"));
    }
    Ok(report.join(", "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let p = |name: &str| d.join(name).to_str().unwrap().to_string();

    run_cli(&["synth", "--core", "20", "--v1", "200", "--attachment", "geometric-halving", "--seed", "4", "--out", &p("g.txt")])?;
    let g = p("g.txt");
    run_cli(&["exact", &g, "--algorithm", "brandes", "--out", &p("truth.csv")])?;
    let truth = p("truth.csv");

    let commands: Vec<(String, Vec<String>)> = vec![
        ("synth".into(), vec!["synth", "--core", "20", "--v1", "200", "--seed", "4", "--out", "{out}"].into_iter().map(String::from).collect()),
        ("exact csv".into(), vec!["exact", &g, "--algorithm", "peel1", "--out", "{out}"].into_iter().map(String::from).collect()),
        ("exact json".into(), vec!["exact", &g, "--algorithm", "2core-recurrence", "--format", "json", "--out", "{out}"].into_iter().map(String::from).collect()),
        ("sample peeled".into(), vec!["sample", &g, "--k", "10", "--seed", "7", "--truth", &truth, "--format", "json", "--out", "{out}"].into_iter().map(String::from).collect()),
        ("sample baseline".into(), vec!["sample", &g, "--k", "10", "--seed", "7", "--method", "baseline", "--out", "{out}"].into_iter().map(String::from).collect()),
        ("stats".into(), vec!["stats", &g, "--out", "{out}"].into_iter().map(String::from).collect()),
    ];
    for (what, args) in &commands {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = p(&format!("{}-{rep}", what.replace(' ', "_")));
            let a: Vec<String> = args.iter().map(|x| x.replace("{out}", &out)).collect();
            let refs: Vec<&str> = a.iter().map(String::as_str).collect();
            run_cli(&refs)?;
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{what}: reruns differ"));
        }
    }

    let suites = [
        ("synth-growth", vec!["synth_growth.csv", "synth_growth_summary.csv"]),
        ("pivot-sweep", vec!["pivot_sweep.csv"]),
    ];
    for (suite, files) in suites {
        let a = p(&format!("{suite}-a"));
        let b = p(&format!("{suite}-b"));
        for out in [&a, &b] {
            run_cli(&["bench", "--suite", suite, "--seeds", "2", "--input", &g, "--out", out])?;
        }
        for f in files {
            let x = std::fs::read(Path::new(&a).join(f)).map_err(|e| e.to_string())?;
            let y = std::fs::read(Path::new(&b).join(f)).map_err(|e| e.to_string())?;
            if x != y {
                return Err(format!("bench {suite}: {f} differs between reruns"));
            }
        }
    }
    Ok(format!("{} commands and 2 bench suites byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("recurrence fidelity", recurrence_fidelity),
        ("closed-form families", closed_form_families),
        ("zeta correctness", zeta_correctness),
        ("fixture statistics", table_stats),
        ("sampling estimator contract", sampling_contract),
        ("error trend with growing periphery", synth_growth_trend),
        ("one-round speedup", speedup_property),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
