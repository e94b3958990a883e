//! Command line interface for the solver binary.
//!
//! Exit codes: 0 on success, 1 when any instance fails to load or solve,
//! 2 on usage errors (clap reports its own parse failures the same way).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{
    emit_csv, format_solutions, init_report, instance_name, reduction_report, run_benchmark,
    BenchOptions,
};
use crate::exact::minimum_dominating_set;
use crate::graph::{Graph, VertexSet};
use crate::search::SearchConfig;

#[derive(Parser, Debug)]
#[command(name = "dmds", version, about = "Dual-mode local search for minimum dominating sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the local search on one or more edge-list instances.
    Solve(SolveArgs),
    /// Solve small instances exactly by branch and bound.
    Exact(ExactArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Instance files in edge-list format.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,

    /// Wall-clock budget per run in seconds; zero or negative disables the
    /// clock so only --max-iters limits the run.
    #[arg(long, default_value_t = 1000.0)]
    pub cutoff: f64,

    /// Independent runs per instance, seeded seed, seed+1, ...
    #[arg(long, default_value_t = 10)]
    pub runs: u32,

    /// Base random seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Probability of widening a pass to a three-for-two swap.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,

    /// Smallest per-pass sample count for best-from-multiple selection.
    #[arg(long, default_value_t = 45)]
    pub bms_min: u32,

    /// Largest per-pass sample count for best-from-multiple selection.
    #[arg(long, default_value_t = 55)]
    pub bms_max: u32,

    /// Iteration budget per run; zero means unlimited.
    #[arg(long, default_value_t = 0)]
    pub max_iters: u64,

    /// Treat vertex ids in the input as starting from one.
    #[arg(long)]
    pub one_indexed: bool,

    /// Write one CSV row per run to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Write the best solution of every run to this file.
    #[arg(long)]
    pub print_solution: Option<PathBuf>,

    /// Report both initial constructions and exit without searching.
    #[arg(long)]
    pub init_only: bool,

    /// Report reduction-rule effects and exit without searching.
    #[arg(long)]
    pub reductions_report: bool,

    /// Solve exactly instead of searching (small instances only).
    #[arg(long)]
    pub exact: bool,

    /// Worker threads for runs; zero picks one per core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Branch-and-bound node budget for --exact.
    #[arg(long, default_value_t = 50_000_000)]
    pub node_limit: u64,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    /// Instance files in edge-list format.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,

    /// Treat vertex ids in the input as starting from one.
    #[arg(long)]
    pub one_indexed: bool,

    /// Branch-and-bound node budget.
    #[arg(long, default_value_t = 50_000_000)]
    pub node_limit: u64,
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Solve(args) => run_solve(&args),
        Command::Exact(args) => run_exact(&args.files, args.one_indexed, args.node_limit),
    }
}

fn run_solve(args: &SolveArgs) -> i32 {
    let search = SearchConfig {
        alpha: args.alpha,
        bms_t_min: args.bms_min,
        bms_t_max: args.bms_max,
        cutoff_seconds: args.cutoff,
        max_iters: args.max_iters,
        seed: args.seed,
    };
    if let Err(e) = search.validate() {
        eprintln!("error: {e}");
        return 2;
    }
    if args.runs == 0 {
        eprintln!("error: --runs must be at least 1");
        return 2;
    }

    if args.reductions_report {
        return run_reductions_report(args);
    }
    if args.init_only {
        return run_init_only(args);
    }
    if args.exact {
        return run_exact(&args.files, args.one_indexed, args.node_limit);
    }

    let opts = BenchOptions {
        search,
        runs: args.runs,
        jobs: args.jobs,
        one_indexed: args.one_indexed,
    };
    let results = run_benchmark(&args.files, &opts);

    let mut failed = false;
    for result in &results {
        match result {
            Ok(report) => {
                println!(
                    "{}: n={} m={} runs={} min={} avg={:.3} mean_ttb_s={:.3} parse_s={:.3}",
                    report.instance,
                    report.n,
                    report.m,
                    report.runs.len(),
                    report.min_size,
                    report.avg_size,
                    report.mean_time_to_best,
                    report.parse_seconds
                );
                for run in &report.runs {
                    if !run.feasible_verified {
                        eprintln!(
                            "{}: seed {} produced a non-dominating solution",
                            report.instance, run.seed
                        );
                        failed = true;
                    }
                }
            }
            Err(e) => {
                eprintln!("{}: error: {}", e.instance, e.message);
                failed = true;
            }
        }
    }

    if let Some(path) = &args.csv {
        if let Err(e) = fs::write(path, emit_csv(&results)) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            failed = true;
        }
    }
    if let Some(path) = &args.print_solution {
        if let Err(e) = fs::write(path, format_solutions(&results)) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            failed = true;
        }
    }

    if failed {
        1
    } else {
        0
    }
}

fn run_reductions_report(args: &SolveArgs) -> i32 {
    let mut failed = false;
    for path in &args.files {
        match reduction_report(path, args.one_indexed) {
            Ok(r) => println!(
                "{}: n={} m={} fixed={} excluded={} residual={}",
                r.instance, r.n, r.m, r.fixed, r.excluded, r.residual
            ),
            Err(e) => {
                eprintln!("{}: error: {}", e.instance, e.message);
                failed = true;
            }
        }
    }
    if failed {
        1
    } else {
        0
    }
}

fn run_init_only(args: &SolveArgs) -> i32 {
    let mut failed = false;
    for path in &args.files {
        match init_report(path, args.one_indexed) {
            Ok(r) => println!(
                "{}: n={} m={} greedy={} perturbation={} chosen={} size={} construct_s={:.3}",
                r.instance,
                r.n,
                r.m,
                r.greedy_size,
                r.perturbation_size,
                r.chosen,
                r.chosen_size,
                r.construct_seconds
            ),
            Err(e) => {
                eprintln!("{}: error: {}", e.instance, e.message);
                failed = true;
            }
        }
    }
    if failed {
        1
    } else {
        0
    }
}

fn run_exact(files: &[PathBuf], one_indexed: bool, node_limit: u64) -> i32 {
    let mut failed = false;
    for path in files {
        match exact_instance(path, one_indexed, node_limit) {
            Ok((name, solution)) => {
                let ids: Vec<String> = solution.sorted().iter().map(|v| v.to_string()).collect();
                println!("{}: optimum={} set={}", name, solution.len(), ids.join(" "));
            }
            Err((name, message)) => {
                eprintln!("{name}: error: {message}");
                failed = true;
            }
        }
    }
    if failed {
        1
    } else {
        0
    }
}

fn exact_instance(
    path: &Path,
    one_indexed: bool,
    node_limit: u64,
) -> Result<(String, VertexSet), (String, String)> {
    let name = instance_name(path);
    let text = fs::read_to_string(path)
        .map_err(|e| (name.clone(), format!("{}: {}", path.display(), e)))?;
    let graph = Graph::parse_edge_list(&text, one_indexed)
        .map_err(|e| (name.clone(), e.to_string()))?;
    let n = graph.vertex_count();
    let empty = VertexSet::new(n);
    let solution = minimum_dominating_set(&graph, &empty, &empty, node_limit)
        .map_err(|e| (name.clone(), e.to_string()))?;
    Ok((name, solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn solve_defaults_match_the_benchmark_protocol() {
        let cli = Cli::try_parse_from(["dmds", "solve", "g.txt"]).unwrap();
        let Command::Solve(args) = cli.command else {
            panic!("expected the solve subcommand");
        };
        assert_eq!(args.cutoff, 1000.0);
        assert_eq!(args.runs, 10);
        assert_eq!(args.seed, 1);
        assert_eq!(args.alpha, 0.5);
        assert_eq!(args.bms_min, 45);
        assert_eq!(args.bms_max, 55);
        assert_eq!(args.max_iters, 0);
        assert_eq!(args.jobs, 1);
        assert!(!args.one_indexed);
        assert!(!args.init_only);
        assert!(!args.exact);
    }

    #[test]
    fn missing_files_are_a_usage_error() {
        let err = Cli::try_parse_from(["dmds", "solve"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn invalid_alpha_is_a_usage_error() {
        let cli = Cli::try_parse_from(["dmds", "solve", "--alpha", "1.5", "nosuch.txt"]).unwrap();
        assert_eq!(run(cli), 2);
    }
}
