//! Exact preprocessing rules that fix vertices into every solution we build
//! and exclude vertices no solution of ours needs.
//!
//! Three patterns, checked in a single ascending-id pass over the original
//! graph:
//! * an isolated vertex must dominate itself;
//! * a pendant vertex is dominated best by its neighbor;
//! * a triangle with two degree-2 corners is dominated best by its third
//!   corner.
//!
//! A pattern only fires while its target is still undominated by the fixed
//! set accumulated so far, so the excluded set never loses coverage.

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    /// Vertices placed in every solution; the search never removes them.
    pub fixed: VertexSet,
    /// Vertices barred from every solution; each one is dominated by `fixed`.
    pub excluded: VertexSet,
}

impl ReductionOutcome {
    /// Outcome with nothing fixed or excluded, for running the solver on an
    /// unreduced graph.
    pub fn empty(n: usize) -> Self {
        ReductionOutcome {
            fixed: VertexSet::new(n),
            excluded: VertexSet::new(n),
        }
    }
}

pub fn apply_reductions(g: &Graph) -> ReductionOutcome {
    let n = g.vertex_count();
    let mut fixed = VertexSet::new(n);
    let mut excluded = VertexSet::new(n);
    let mut dominated = vec![false; n];

    let fix = |v: VertexId, dominated: &mut Vec<bool>, fixed: &mut VertexSet| {
        fixed.insert(v);
        dominated[v as usize] = true;
        for &u in g.neighbors(v) {
            dominated[u as usize] = true;
        }
    };

    for v in 0..n as VertexId {
        match g.degree(v) {
            0 => {
                if !dominated[v as usize] {
                    fix(v, &mut dominated, &mut fixed);
                }
            }
            1 => {
                let u = g.neighbors(v)[0];
                if !dominated[u as usize] {
                    fix(u, &mut dominated, &mut fixed);
                    excluded.insert(v);
                }
            }
            2 => {
                let b = g.neighbors(v)[0];
                let c = g.neighbors(v)[1];
                if !g.has_edge(b, c) {
                    continue;
                }
                // Third corner: prefer larger degree, then smaller id. The
                // remaining corner must share v's degree for the rule to be
                // exact.
                let (w, partner) = match g.degree(b).cmp(&g.degree(c)) {
                    std::cmp::Ordering::Greater => (b, c),
                    std::cmp::Ordering::Less => (c, b),
                    std::cmp::Ordering::Equal => (b.min(c), b.max(c)),
                };
                if g.degree(partner) == 2 && !dominated[w as usize] {
                    fix(w, &mut dominated, &mut fixed);
                    excluded.insert(v);
                    excluded.insert(partner);
                }
            }
            _ => {}
        }
    }

    debug_assert!(fixed.iter().all(|v| !excluded.contains(v)));
    debug_assert!(excluded
        .iter()
        .all(|v| g.closed_neighbors(v).any(|x| fixed.contains(x))));
    ReductionOutcome { fixed, excluded }
}
