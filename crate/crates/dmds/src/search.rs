//! Dual-mode stochastic local search.
//!
//! Each pass from a feasible solution strips redundant members, snapshots
//! the best, and removes the minimum-loss member. One further member is
//! removed uniformly at random and, with probability `alpha`, another by
//! best-of-t sampling, turning the pass into a (3,2)-swap instead of a
//! (2,1)-swap. Additions always take a maximum-gain vertex adjacent to the
//! uncovered region. Ties prefer vertices untouched for longer (larger
//! age); removals then prefer frequently re-added vertices, additions
//! rarely re-added ones; smaller ids settle what remains.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::construct::initialize;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::reduce::{apply_reductions, ReductionOutcome};
use crate::state::SolverState;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Probability that a pass removes a third vertex by best-of-t sampling.
    pub alpha: f64,
    /// Sample count bounds for that removal; `t` is redrawn from
    /// `[bms_t_min, bms_t_max]` on every invocation.
    pub bms_t_min: u32,
    pub bms_t_max: u32,
    /// Wall-clock budget in seconds; non-positive disables the clock.
    pub cutoff_seconds: f64,
    /// Pass budget; 0 means unlimited.
    pub max_iters: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            alpha: 0.5,
            bms_t_min: 45,
            bms_t_max: 55,
            cutoff_seconds: 1000.0,
            max_iters: 0,
            seed: 1,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("alpha must lie in [0, 1]")]
    AlphaOutOfRange,
    #[error("sample bounds must satisfy 1 <= bms-min <= bms-max")]
    BadSampleBounds,
    #[error("either a positive cutoff or a positive iteration budget is required")]
    NoBudget,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(ConfigError::AlphaOutOfRange);
        }
        if self.bms_t_min < 1 || self.bms_t_min > self.bms_t_max {
            return Err(ConfigError::BadSampleBounds);
        }
        if self.cutoff_seconds <= 0.0 && self.max_iters == 0 {
            return Err(ConfigError::NoBudget);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub best_solution: VertexSet,
    pub best_size: usize,
    /// Wall-clock seconds from search start to the last improvement.
    pub time_to_best: f64,
    /// Passes executed.
    pub iterations: u64,
    pub seed: u64,
    /// Final independent feasibility check of `best_solution`.
    pub feasible_verified: bool,
}

/// Best feasible solution seen so far and when it was found.
pub struct BestSnapshot {
    pub solution: VertexSet,
    pub found_at: Duration,
}

/// Reduces the graph, builds both initial constructions, then improves the
/// better one until the budget runs out.
pub fn solve(graph: &Graph, cfg: &SearchConfig) -> RunReport {
    let red = apply_reductions(graph);
    solve_reduced(graph, &red, cfg)
}

/// [`solve`] with reductions precomputed, so benchmark runs share them.
pub fn solve_reduced(graph: &Graph, red: &ReductionOutcome, cfg: &SearchConfig) -> RunReport {
    cfg.validate().expect("invalid search configuration");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut s = initialize(graph, red);
    let mut best = BestSnapshot {
        solution: s.solution().clone(),
        found_at: start.elapsed(),
    };

    while !budget_exhausted(cfg, &s, start) {
        if s.is_feasible() && s.removable().is_empty() {
            // Locked vertices alone dominate; nothing can improve.
            break;
        }
        step(&mut s, cfg, &mut rng, start, &mut best);
    }

    let feasible_verified = graph.is_dominating_set(&best.solution);
    RunReport {
        best_size: best.solution.len(),
        best_solution: best.solution,
        time_to_best: best.found_at.as_secs_f64(),
        iterations: s.iterations(),
        seed: cfg.seed,
        feasible_verified,
    }
}

fn budget_exhausted(cfg: &SearchConfig, s: &SolverState, start: Instant) -> bool {
    if cfg.max_iters > 0 && s.iterations() >= cfg.max_iters {
        return true;
    }
    cfg.cutoff_seconds > 0.0 && start.elapsed().as_secs_f64() >= cfg.cutoff_seconds
}

/// One search pass. Skips any removal whose candidate pool is empty and any
/// addition once nothing is uncovered.
pub fn step<R: Rng + ?Sized>(
    s: &mut SolverState,
    cfg: &SearchConfig,
    rng: &mut R,
    start: Instant,
    best: &mut BestSnapshot,
) {
    if s.is_feasible() {
        s.strip_redundant();
        if s.solution().len() < best.solution.len() {
            best.solution = s.solution().clone();
            best.found_at = start.elapsed();
        }
        if let Some(v) = min_loss_candidate(s) {
            s.remove_vertex(v);
        }
    }

    if !s.removable().is_empty() {
        let u1 = s.removable().get(rng.gen_range(0..s.removable().len()));
        s.remove_vertex(u1);
    }

    let mut swap_out = 2;
    if rng.gen_bool(cfg.alpha) && !s.removable().is_empty() {
        let t = rng.gen_range(cfg.bms_t_min..=cfg.bms_t_max);
        let u2 = bms_select_removal(s, rng, t);
        s.remove_vertex(u2);
        swap_out = 3;
    }

    if let Some(w1) = max_gain_candidate(s) {
        s.add_vertex(w1);
    }
    if swap_out == 3 {
        if let Some(w2) = max_gain_candidate(s) {
            s.add_vertex(w2);
        }
    }

    s.advance_iteration();
}

/// Removal preference: minimum loss, then larger age, larger freq, smaller
/// id. Smaller keys win.
fn removal_key(s: &SolverState, v: VertexId) -> (u32, Reverse<u64>, Reverse<u32>, VertexId) {
    (s.loss(v), Reverse(s.age(v)), Reverse(s.freq(v)), v)
}

/// Addition preference: maximum gain, then larger age, smaller freq,
/// smaller id. Larger keys win.
fn addition_key(s: &SolverState, v: VertexId) -> (u32, u64, Reverse<u32>, Reverse<VertexId>) {
    (s.gain(v), s.age(v), Reverse(s.freq(v)), Reverse(v))
}

fn min_loss_candidate(s: &SolverState) -> Option<VertexId> {
    s.removable()
        .iter()
        .min_by_key(|&v| removal_key(s, v))
}

/// Best removable vertex among `t` uniform samples drawn with replacement.
/// `t` is not clamped to the pool size, so small pools simply see repeats.
pub fn bms_select_removal<R: Rng + ?Sized>(s: &SolverState, rng: &mut R, t: u32) -> VertexId {
    let pool = s.removable();
    assert!(!pool.is_empty(), "sampling from an empty pool");
    let mut best = pool.get(rng.gen_range(0..pool.len()));
    for _ in 1..t {
        let v = pool.get(rng.gen_range(0..pool.len()));
        if removal_key(s, v) < removal_key(s, best) {
            best = v;
        }
    }
    best
}

fn max_gain_candidate(s: &SolverState) -> Option<VertexId> {
    let g = s.graph();
    let mut best: Option<VertexId> = None;
    for x in s.undominated().iter() {
        for y in g.closed_neighbors(x) {
            if s.is_in_solution(y) || s.is_barred(y) {
                continue;
            }
            if best.is_none_or(|b| addition_key(s, y) > addition_key(s, b)) {
                best = Some(y);
            }
        }
    }
    best
}

/// Closed neighborhood of the uncovered region minus solution and excluded
/// vertices: exactly the vertices [`step`] considers adding.
pub fn candidate_pool(s: &SolverState) -> VertexSet {
    let g = s.graph();
    let mut pool = VertexSet::new(g.vertex_count());
    for x in s.undominated().iter() {
        for y in g.closed_neighbors(x) {
            if !s.is_in_solution(y) && !s.is_barred(y) {
                pool.insert(y);
            }
        }
    }
    pool
}
