//! Exact minimum dominating set search for small instances, used as a test
//! oracle and behind the `exact` CLI mode.
//!
//! Branch and bound over bitmask-encoded closed neighborhoods: branch on an
//! undominated vertex with the fewest allowed dominators (fail-first), prune
//! once the incumbent cannot be beaten.

use crate::graph::{Graph, VertexId, VertexSet};
use crate::reduce::ReductionOutcome;
use thiserror::Error;

/// Largest instance the branch and bound accepts.
pub const MAX_VERTICES: usize = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {n} vertices, exact search handles at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("search aborted after {limit} nodes")]
    NodeLimitExceeded { limit: u64 },
    #[error("vertex {vertex} cannot be dominated: every allowed dominator is barred")]
    Undominatable { vertex: VertexId },
}

struct Searcher<'g> {
    g: &'g Graph,
    closed: Vec<u32>,
    allowed: u32,
    full: u32,
    best: u32,
    best_count: u32,
    nodes: u64,
    node_limit: u64,
}

/// Returns a minimum-cardinality dominating set that contains every vertex
/// of `fixed` and avoids every vertex of `barred`. `fixed` and `barred`
/// must be disjoint.
pub fn minimum_dominating_set(
    g: &Graph,
    fixed: &VertexSet,
    barred: &VertexSet,
    node_limit: u64,
) -> Result<VertexSet, ExactError> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(ExactError::TooLarge {
            n,
            max: MAX_VERTICES,
        });
    }
    assert!(fixed.iter().all(|v| !barred.contains(v)));

    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let closed: Vec<u32> = (0..n as VertexId)
        .map(|v| g.closed_neighbors(v).fold(0u32, |m, x| m | 1 << x))
        .collect();
    let barred_mask = barred.iter().fold(0u32, |m, v| m | 1 << v);
    let allowed = full & !barred_mask;
    for v in 0..n as VertexId {
        if closed[v as usize] & allowed == 0 {
            return Err(ExactError::Undominatable { vertex: v });
        }
    }

    let mut chosen = 0u32;
    let mut covered = 0u32;
    for v in fixed.iter() {
        chosen |= 1 << v;
        covered |= closed[v as usize];
    }

    let mut s = Searcher {
        g,
        closed,
        allowed,
        full,
        best: allowed,
        best_count: allowed.count_ones(),
        nodes: 0,
        node_limit,
    };
    s.recurse(chosen, covered, chosen.count_ones())?;
    Ok(VertexSet::from_members(
        n,
        (0..n as VertexId).filter(|&v| s.best & 1 << v != 0),
    ))
}

impl Searcher<'_> {
    fn recurse(&mut self, chosen: u32, covered: u32, count: u32) -> Result<(), ExactError> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(ExactError::NodeLimitExceeded {
                limit: self.node_limit,
            });
        }
        if covered == self.full {
            if count < self.best_count {
                self.best = chosen;
                self.best_count = count;
            }
            return Ok(());
        }
        if count + 1 >= self.best_count {
            return Ok(());
        }
        // Branch on the uncovered vertex with the fewest allowed dominators.
        let mut branch = ABSENT_BRANCH;
        let mut branch_options = u32::MAX;
        for v in 0..self.g.vertex_count() as VertexId {
            if covered & 1 << v != 0 {
                continue;
            }
            let options = (self.closed[v as usize] & self.allowed).count_ones();
            if options < branch_options {
                branch = v;
                branch_options = options;
            }
        }
        debug_assert_ne!(branch, ABSENT_BRANCH);
        let candidates = self.closed[branch as usize] & self.allowed;
        for c in 0..self.g.vertex_count() as VertexId {
            if candidates & 1 << c == 0 {
                continue;
            }
            debug_assert!(chosen & 1 << c == 0, "dominators of an uncovered vertex are unused");
            self.recurse(
                chosen | 1 << c,
                covered | self.closed[c as usize],
                count + 1,
            )?;
        }
        Ok(())
    }
}

const ABSENT_BRANCH: VertexId = VertexId::MAX;

/// Checks that `d` dominates `g`, contains all fixed vertices and avoids all
/// excluded vertices of `red` (when given).
pub fn verify_solution(g: &Graph, d: &VertexSet, red: Option<&ReductionOutcome>) -> bool {
    if !g.is_dominating_set(d) {
        return false;
    }
    match red {
        Some(red) => {
            red.fixed.iter().all(|v| d.contains(v))
                && d.iter().all(|v| !red.excluded.contains(v))
        }
        None => true,
    }
}
