use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bcpeel::bench::{self, RunRecord};
use bcpeel::io::{load_path, write_edge_list, EdgeListOptions, InputFormat};
use bcpeel::oracle::ORACLE_WARN_N;
use bcpeel::{
    bc_one_round_full, bc_one_round_mem, bc_via_2core_recurrence, brandes_exact, oracle_bc,
    peel_diagnostics, relative_l1_error, sample_bc_baseline, sample_bc_peeled, Attachment,
    BcError, BcResult, CorePeripherySpec, Graph, SampleConfig, DEFAULT_FULL_INFO_CAP,
};

#[derive(Parser)]
#[command(name = "bcpeel", version, about = "Betweenness centrality with degree-1 peeling")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact scores
    Exact(ExactArgs),
    /// Pivot-sampled estimates
    Sample(SampleArgs),
    /// Peeling statistics
    Stats(StatsArgs),
    /// Write a core-periphery graph as an edge list
    Synth(SynthArgs),
    /// Run a benchmark suite
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    input: PathBuf,

    /// Override the format sniffed from the file extension
    #[arg(long, value_enum)]
    input_format: Option<FormatArg>,

    /// Ignore columns after the first two in edge lists
    #[arg(long)]
    ignore_extra_columns: bool,
}

impl InputArgs {
    fn load(&self) -> Result<Graph, BcError> {
        let fmt = self.input_format.map(|f| match f {
            FormatArg::Edgelist => InputFormat::EdgeList,
            FormatArg::Mtx => InputFormat::MatrixMarket,
        });
        let opts = EdgeListOptions {
            ignore_extra_columns: self.ignore_extra_columns,
        };
        load_path(&self.input, fmt, opts).map_err(|e| with_path(&self.input, e))
    }

    fn dataset(&self) -> String {
        dataset_name(&self.input)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Mtx,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactAlg {
    Brandes,
    Peel1,
    #[value(name = "peel1-full")]
    Peel1Full,
    #[value(name = "2core-recurrence")]
    TwoCoreRecurrence,
    Oracle,
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, value_enum, default_value = "peel1")]
    algorithm: ExactAlg,

    /// Also run this algorithm and report the largest per-node difference
    #[arg(long, value_enum)]
    compare: Option<ExactAlg>,

    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,

    /// Allow the oracle and the recurrence above their size limit
    #[arg(long)]
    force: bool,

    /// Include wall time in the JSON record
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Baseline,
    Peeled,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long)]
    k: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value = "peeled")]
    method: Method,

    /// Accumulate sources with pendant neighbors exactly (peeled only)
    #[arg(long)]
    exact_y: bool,

    /// Exact scores (`node,bc` CSV) to measure the error against
    #[arg(long)]
    truth: Option<PathBuf>,

    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,

    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 50)]
    core: usize,

    #[arg(long)]
    v1: usize,

    #[arg(long, default_value = "linear-skew")]
    attachment: Attachment,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "synth-growth")]
    SynthGrowth,
    #[value(name = "pivot-sweep")]
    PivotSweep,
    Speedup,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,

    #[arg(long, default_value_t = 5)]
    seeds: u64,

    /// Output directory
    #[arg(long)]
    out: PathBuf,

    /// Dataset files for pivot-sweep and speedup
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,

    /// Pivot counts for pivot-sweep
    #[arg(long, value_delimiter = ',')]
    k_values: Option<Vec<usize>>,

    /// Repetitions per timing (median is reported)
    #[arg(long, default_value_t = 3)]
    reps: usize,

    #[arg(long)]
    ignore_extra_columns: bool,
}

fn with_path(path: &Path, e: BcError) -> BcError {
    match e {
        BcError::Io(io) => BcError::Io(io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        BcError::Parse { line, message } => BcError::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, BcError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_exact(alg: ExactAlg, g: &Graph, force: bool) -> Result<BcResult, BcError> {
    let guarded = matches!(alg, ExactAlg::Oracle | ExactAlg::TwoCoreRecurrence);
    if guarded && g.n() > ORACLE_WARN_N && !force {
        return Err(BcError::InvalidArgument(format!(
            "graph has {} nodes; this algorithm is limited to {ORACLE_WARN_N} without --force",
            g.n()
        )));
    }
    Ok(match alg {
        ExactAlg::Brandes => brandes_exact(g),
        ExactAlg::Peel1 => bc_one_round_mem(g, None, 0)?,
        ExactAlg::Peel1Full => bc_one_round_full(g, None, 0, DEFAULT_FULL_INFO_CAP)?.0,
        ExactAlg::TwoCoreRecurrence => bc_via_2core_recurrence(g),
        ExactAlg::Oracle => oracle_bc(g),
    })
}

fn write_scores(
    g: &Graph,
    res: &BcResult,
    record: &RunRecord,
    format: OutFormat,
    out: Option<&Path>,
) -> Result<(), BcError> {
    let w = open_out(out)?;
    match format {
        OutFormat::Csv => bench::write_scores_csv(g, &res.scores, w),
        OutFormat::Json => bench::write_scores_json(g, &res.scores, record, w),
    }
}

fn cmd_exact(a: &ExactArgs) -> Result<(), BcError> {
    let g = a.input.load()?;
    let res = run_exact(a.algorithm, &g, a.force)?;
    let mut record = RunRecord::new(&a.input.dataset(), &res, &peel_diagnostics(&g));
    if a.timing {
        record = record.with_elapsed(res.elapsed);
    }
    write_scores(&g, &res, &record, a.format, a.out.as_deref())?;
    if let Some(other) = a.compare {
        let res2 = run_exact(other, &g, a.force)?;
        let diff = res.max_abs_diff(&res2);
        let msg = format!(
            "max_abs_diff {} vs {}: {}",
            res.algorithm,
            res2.algorithm,
            bench::fmt_sig(diff)
        );
        if a.out.is_some() {
            println!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    }
    Ok(())
}

fn cmd_sample(a: &SampleArgs) -> Result<(), BcError> {
    let g = a.input.load()?;
    let mut cfg = SampleConfig::new(a.k, a.seed);
    cfg.exact_y_sources = a.exact_y;
    let res = match a.method {
        Method::Baseline => sample_bc_baseline(&g, &cfg)?,
        Method::Peeled => sample_bc_peeled(&g, &cfg)?,
    };
    let mut record = RunRecord::new(&a.input.dataset(), &res, &peel_diagnostics(&g));
    if a.timing {
        record = record.with_elapsed(res.elapsed);
    }
    if let Some(path) = &a.truth {
        let scores = bench::read_scores_for(&g, File::open(path)?)?;
        let truth = BcResult {
            scores,
            ..res.clone()
        };
        let rel = relative_l1_error(&res, &truth)?.rel_l1;
        record.rel_l1 = Some(rel);
        let msg = format!("rel_l1: {}", bench::fmt_sig(rel));
        if a.out.is_some() {
            println!("{msg}");
        } else {
            eprintln!("{msg}");
        }
    }
    write_scores(&g, &res, &record, a.format, a.out.as_deref())
}

#[derive(serde::Serialize)]
struct StatsRow {
    dataset: String,
    n: usize,
    m: usize,
    n_tilde: usize,
    m_tilde: usize,
    survivor_fraction: f64,
    core_fraction: f64,
    istar: usize,
    v1_count: usize,
    y_count: usize,
    delta1: usize,
    round_fractions: String,
}

fn cmd_stats(a: &StatsArgs) -> Result<(), BcError> {
    let g = a.input.load()?;
    let r = peel_diagnostics(&g);
    let mut out = open_out(a.out.as_deref())?;
    match a.format {
        OutFormat::Json => {
            let mut v = serde_json::to_value(&r)?;
            v["dataset"] = serde_json::Value::String(a.input.dataset());
            serde_json::to_writer_pretty(&mut out, &v)?;
            writeln!(out)?;
            out.flush()?;
        }
        OutFormat::Csv => {
            let row = StatsRow {
                dataset: a.input.dataset(),
                n: r.n,
                m: r.m,
                n_tilde: r.n_tilde,
                m_tilde: r.m_tilde,
                survivor_fraction: r.survivor_fraction,
                core_fraction: r.core_fraction,
                istar: r.istar,
                v1_count: r.v1_count,
                y_count: r.y_count,
                delta1: r.delta1,
                round_fractions: r
                    .round_fractions
                    .iter()
                    .map(f64::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
            };
            bench::write_rows(&[row], out)?;
        }
    }
    Ok(())
}

fn cmd_synth(a: &SynthArgs) -> Result<(), BcError> {
    let g = bcpeel::generate_core_periphery(&CorePeripherySpec {
        core_size: a.core,
        v1_count: a.v1,
        attachment: a.attachment,
        seed: a.seed,
    })?;
    write_edge_list(&g, open_out(a.out.as_deref())?)
}

fn load_datasets(a: &BenchArgs) -> Result<Vec<(String, Graph)>, BcError> {
    let opts = EdgeListOptions {
        ignore_extra_columns: a.ignore_extra_columns,
    };
    a.inputs
        .iter()
        .map(|p| Ok((dataset_name(p), load_path(p, None, opts).map_err(|e| with_path(p, e))?)))
        .collect()
}

fn cmd_bench(a: &BenchArgs) -> Result<(), BcError> {
    fs::create_dir_all(&a.out)?;
    match a.suite {
        Suite::SynthGrowth => {
            let rows = bench::synth_growth(&bench::GROWTH_SIZES, a.seeds, bench::GROWTH_K)?;
            bench::write_rows(&rows, File::create(a.out.join("synth_growth.csv"))?)?;
            let summary = bench::growth_summary(&rows);
            bench::write_rows(&summary, File::create(a.out.join("synth_growth_summary.csv"))?)?;
        }
        Suite::PivotSweep => {
            let data = load_datasets(a)?;
            if data.is_empty() {
                return Err(BcError::InvalidArgument(
                    "pivot-sweep needs at least one --input dataset".into(),
                ));
            }
            let ks = a.k_values.clone().unwrap_or_else(|| bench::SWEEP_K.to_vec());
            let rows = bench::pivot_sweep(&data, &ks, a.seeds)?;
            bench::write_rows(&rows, File::create(a.out.join("pivot_sweep.csv"))?)?;
        }
        Suite::Speedup => {
            let mut data = vec![("synthetic-core50-v3000".to_string(), bench::synthetic_speedup_graph()?)];
            data.extend(load_datasets(a)?);
            let rows = bench::speedup(&data, a.reps)?;
            bench::write_rows(&rows, File::create(a.out.join("speedup.csv"))?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = match &cli.command {
        Command::Exact(a) => cmd_exact(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Synth(a) => cmd_synth(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
