//! Multi-instance, multi-run benchmark harness with CSV reporting.
//!
//! Runs are seeded `base, base+1, ...` per instance and are independent, so
//! they parallelize freely; results are collected in run order and the
//! emitted CSV is identical for any `--jobs` value.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::graph::Graph;
use crate::reduce::{apply_reductions, ReductionOutcome};
use crate::search::{solve_reduced, RunReport, SearchConfig};

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub search: SearchConfig,
    /// Runs per instance; run `i` uses seed `search.seed + i`.
    pub runs: u32,
    /// Worker threads for runs; 0 picks the rayon default.
    pub jobs: usize,
    pub one_indexed: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            search: SearchConfig::default(),
            runs: 10,
            jobs: 1,
            one_indexed: false,
        }
    }
}

/// All runs of one instance plus summary statistics.
#[derive(Clone, Debug)]
pub struct AggregateReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub runs: Vec<RunReport>,
    pub min_size: usize,
    pub avg_size: f64,
    pub mean_time_to_best: f64,
    /// Seconds spent reading and parsing, excluded from run timing.
    pub parse_seconds: f64,
}

/// Failure on one instance; other instances still run.
#[derive(Clone, Debug)]
pub struct InstanceError {
    pub instance: String,
    pub message: String,
}

pub type InstanceResult = Result<AggregateReport, InstanceError>;

/// Name an instance is reported under: its file stem.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

/// Solves every instance `runs` times. Results keep the input order; a
/// per-instance failure is recorded and the remaining instances proceed.
pub fn run_benchmark(paths: &[PathBuf], opts: &BenchOptions) -> Vec<InstanceResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("failed to build the worker pool");

    paths
        .iter()
        .map(|path| run_instance(path, opts, &pool))
        .collect()
}

fn run_instance(path: &Path, opts: &BenchOptions, pool: &rayon::ThreadPool) -> InstanceResult {
    let name = instance_name(path);
    let fail = |message: String| InstanceError {
        instance: name.clone(),
        message,
    };

    let parse_start = Instant::now();
    let text = fs::read_to_string(path).map_err(|e| fail(format!("{}: {}", path.display(), e)))?;
    let graph = Graph::parse_edge_list(&text, opts.one_indexed).map_err(|e| fail(e.to_string()))?;
    let red = apply_reductions(&graph);
    let parse_seconds = parse_start.elapsed().as_secs_f64();

    let runs = pool.install(|| {
        (0..opts.runs)
            .into_par_iter()
            .map(|i| {
                let cfg = SearchConfig {
                    seed: opts.search.seed + i as u64,
                    ..opts.search.clone()
                };
                solve_reduced(&graph, &red, &cfg)
            })
            .collect::<Vec<RunReport>>()
    });

    Ok(aggregate(name, &graph, runs, parse_seconds))
}

fn aggregate(instance: String, graph: &Graph, runs: Vec<RunReport>, parse_seconds: f64) -> AggregateReport {
    let count = runs.len().max(1) as f64;
    let min_size = runs.iter().map(|r| r.best_size).min().unwrap_or(0);
    let avg_size = runs.iter().map(|r| r.best_size as f64).sum::<f64>() / count;
    let mean_time_to_best = runs.iter().map(|r| r.time_to_best).sum::<f64>() / count;
    AggregateReport {
        instance,
        n: graph.vertex_count(),
        m: graph.edge_count(),
        runs,
        min_size,
        avg_size,
        mean_time_to_best,
        parse_seconds,
    }
}

/// One row per run, instances in input order, times to the millisecond.
pub fn emit_csv(results: &[InstanceResult]) -> String {
    let mut out = String::from("instance,n,m,run,seed,best_size,time_to_best_s,iterations,feasible\n");
    for report in results.iter().flatten() {
        for (i, run) in report.runs.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{},{:.3},{},{}",
                report.instance,
                report.n,
                report.m,
                i + 1,
                run.seed,
                run.best_size,
                run.time_to_best,
                run.iterations,
                run.feasible_verified
            )
            .unwrap();
        }
    }
    out
}

/// Best solution of every run, one line each: instance, run, seed, size,
/// then the sorted vertex ids.
pub fn format_solutions(results: &[InstanceResult]) -> String {
    let mut out = String::new();
    for report in results.iter().flatten() {
        for (i, run) in report.runs.iter().enumerate() {
            let ids: Vec<String> = run
                .best_solution
                .sorted()
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(
                out,
                "{} run={} seed={} size={} : {}",
                report.instance,
                i + 1,
                run.seed,
                run.best_size,
                ids.join(" ")
            )
            .unwrap();
        }
    }
    out
}

/// Construction-only report used by `--init-only`.
pub struct InitReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub greedy_size: usize,
    pub perturbation_size: usize,
    pub chosen: &'static str,
    pub chosen_size: usize,
    pub construct_seconds: f64,
}

pub fn init_report(path: &Path, one_indexed: bool) -> Result<InitReport, InstanceError> {
    let name = instance_name(path);
    let fail = |message: String| InstanceError {
        instance: name.clone(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(format!("{}: {}", path.display(), e)))?;
    let graph = Graph::parse_edge_list(&text, one_indexed).map_err(|e| fail(e.to_string()))?;
    let red = apply_reductions(&graph);

    let start = Instant::now();
    let mut greedy = crate::state::SolverState::new(&graph, &red);
    crate::construct::greedy_construct(&mut greedy);
    let mut perturbed = crate::state::SolverState::new(&graph, &red);
    crate::construct::perturbation_construct(&mut perturbed);
    let construct_seconds = start.elapsed().as_secs_f64();

    let (greedy_size, perturbation_size) = (greedy.solution().len(), perturbed.solution().len());
    let chosen = if perturbation_size < greedy_size {
        "perturbation"
    } else {
        "greedy"
    };
    Ok(InitReport {
        instance: name,
        n: graph.vertex_count(),
        m: graph.edge_count(),
        greedy_size,
        perturbation_size,
        chosen,
        chosen_size: greedy_size.min(perturbation_size),
        construct_seconds,
    })
}

/// Reduction summary used by `--reductions-report`.
pub struct ReductionReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub fixed: usize,
    pub excluded: usize,
    pub residual: usize,
}

pub fn reduction_report(path: &Path, one_indexed: bool) -> Result<ReductionReport, InstanceError> {
    let name = instance_name(path);
    let fail = |message: String| InstanceError {
        instance: name.clone(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(format!("{}: {}", path.display(), e)))?;
    let graph = Graph::parse_edge_list(&text, one_indexed).map_err(|e| fail(e.to_string()))?;
    let red: ReductionOutcome = apply_reductions(&graph);
    Ok(ReductionReport {
        instance: name,
        n: graph.vertex_count(),
        m: graph.edge_count(),
        fixed: red.fixed.len(),
        excluded: red.excluded.len(),
        residual: graph.vertex_count() - red.fixed.len() - red.excluded.len(),
    })
}
