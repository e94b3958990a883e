//! Mutable search state over a fixed graph: the current solution, per-vertex
//! cover counts, and incrementally maintained loss/gain scores.
//!
//! For a solution D, `cover_count[x]` is `|N[x] ∩ D|`. A member's loss is
//! the number of vertices only it covers; a non-member's gain is the number
//! of uncovered vertices it would cover. Both are kept exact under
//! `add_vertex`/`remove_vertex` by touching only the closed neighborhoods
//! whose cover count crossed 0<->1 or 1<->2.

use crate::graph::{Graph, VertexId, VertexSet};
use crate::reduce::ReductionOutcome;

pub struct SolverState<'g> {
    graph: &'g Graph,
    locked: Vec<bool>,
    barred: Vec<bool>,
    in_solution: Vec<bool>,
    solution: VertexSet,
    /// Solution members that are not locked; the only removal candidates.
    removable: VertexSet,
    cover_count: Vec<u32>,
    /// Valid while the vertex is in the solution.
    loss: Vec<u32>,
    /// Valid while the vertex is outside the solution.
    gain: Vec<u32>,
    /// Undominated vertices (cover count zero).
    ud: VertexSet,
    last_change: Vec<u64>,
    freq: Vec<u32>,
    iterations: u64,
}

/// Scores recomputed from scratch; ground truth for consistency checks.
#[derive(Debug, PartialEq, Eq)]
pub struct Scores {
    pub cover_count: Vec<u32>,
    /// Zero for non-members.
    pub loss: Vec<u32>,
    /// Zero for members.
    pub gain: Vec<u32>,
    /// Ascending.
    pub ud: Vec<VertexId>,
}

impl<'g> SolverState<'g> {
    /// State whose solution is exactly the fixed set of `red`. Fixed
    /// vertices start with `freq` 1, everything else 0.
    pub fn new(graph: &'g Graph, red: &ReductionOutcome) -> Self {
        let n = graph.vertex_count();
        assert_eq!(red.fixed.domain_size(), n);
        assert_eq!(red.excluded.domain_size(), n);
        let mut locked = vec![false; n];
        let mut barred = vec![false; n];
        let mut in_solution = vec![false; n];
        let mut freq = vec![0u32; n];
        for v in red.fixed.iter() {
            locked[v as usize] = true;
            in_solution[v as usize] = true;
            freq[v as usize] = 1;
        }
        for v in red.excluded.iter() {
            assert!(!locked[v as usize], "fixed and excluded must be disjoint");
            barred[v as usize] = true;
        }

        let scores = compute_scores(graph, &in_solution);
        let mut ud = VertexSet::new(n);
        for &v in &scores.ud {
            ud.insert(v);
        }
        SolverState {
            graph,
            locked,
            barred,
            in_solution,
            solution: red.fixed.clone(),
            removable: VertexSet::new(n),
            cover_count: scores.cover_count,
            loss: scores.loss,
            gain: scores.gain,
            ud,
            last_change: vec![0; n],
            freq,
            iterations: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn is_in_solution(&self, v: VertexId) -> bool {
        self.in_solution[v as usize]
    }

    pub fn is_locked(&self, v: VertexId) -> bool {
        self.locked[v as usize]
    }

    pub fn is_barred(&self, v: VertexId) -> bool {
        self.barred[v as usize]
    }

    /// Current solution, locked members included.
    pub fn solution(&self) -> &VertexSet {
        &self.solution
    }

    /// Solution members that may be removed.
    pub fn removable(&self) -> &VertexSet {
        &self.removable
    }

    /// Vertices with cover count zero.
    pub fn undominated(&self) -> &VertexSet {
        &self.ud
    }

    pub fn is_feasible(&self) -> bool {
        self.ud.is_empty()
    }

    pub fn cover_count(&self, v: VertexId) -> u32 {
        self.cover_count[v as usize]
    }

    /// Number of vertices only `v` covers. `v` must be in the solution.
    pub fn loss(&self, v: VertexId) -> u32 {
        debug_assert!(self.in_solution[v as usize]);
        self.loss[v as usize]
    }

    /// Number of uncovered vertices `v` would cover. `v` must be outside
    /// the solution.
    pub fn gain(&self, v: VertexId) -> u32 {
        debug_assert!(!self.in_solution[v as usize]);
        self.gain[v as usize]
    }

    pub fn freq(&self, v: VertexId) -> u32 {
        self.freq[v as usize]
    }

    /// Iterations since `v` last changed sides.
    pub fn age(&self, v: VertexId) -> u64 {
        self.iterations - self.last_change[v as usize]
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    /// Marks the end of one search pass.
    pub fn advance_iteration(&mut self) {
        self.iterations += 1;
    }

    /// Adds `w` to the solution and updates every affected score.
    pub fn add_vertex(&mut self, w: VertexId) {
        assert!(!self.in_solution[w as usize], "vertex {} already in solution", w);
        assert!(!self.barred[w as usize], "vertex {} is excluded", w);
        self.in_solution[w as usize] = true;
        self.solution.insert(w);
        if !self.locked[w as usize] {
            self.removable.insert(w);
        }

        let mut new_loss = 0;
        for x in self.graph.closed_neighbors(w) {
            let c = self.cover_count[x as usize];
            self.cover_count[x as usize] = c + 1;
            if c == 0 {
                // x is newly covered, and only by w.
                self.ud.remove(x);
                new_loss += 1;
                for y in self.graph.closed_neighbors(x) {
                    if !self.in_solution[y as usize] {
                        self.gain[y as usize] -= 1;
                    }
                }
            } else if c == 1 {
                // x had a sole dominator; it no longer covers x alone.
                let d = self.sole_dominator(x, Some(w));
                self.loss[d as usize] -= 1;
            }
        }
        self.loss[w as usize] = new_loss;
        self.freq[w as usize] += 1;
        self.last_change[w as usize] = self.iterations;
    }

    /// Removes `u` from the solution and updates every affected score.
    pub fn remove_vertex(&mut self, u: VertexId) {
        assert!(self.in_solution[u as usize], "vertex {} not in solution", u);
        assert!(!self.locked[u as usize], "vertex {} is locked", u);
        self.in_solution[u as usize] = false;
        self.solution.remove(u);
        self.removable.remove(u);
        self.gain[u as usize] = 0;

        for x in self.graph.closed_neighbors(u) {
            let c = self.cover_count[x as usize];
            self.cover_count[x as usize] = c - 1;
            if c == 1 {
                // x lost its only dominator; everyone around it gains,
                // including u itself.
                self.ud.insert(x);
                for y in self.graph.closed_neighbors(x) {
                    if !self.in_solution[y as usize] {
                        self.gain[y as usize] += 1;
                    }
                }
            } else if c == 2 {
                // x is now covered by exactly one remaining member.
                let d = self.sole_dominator(x, None);
                self.loss[d as usize] += 1;
            }
        }
        self.last_change[u as usize] = self.iterations;
    }

    /// Removes every removable member whose loss is zero, ascending by id.
    ///
    /// One pass suffices: removing a zero-loss vertex never lowers another
    /// member's loss, so no new candidates appear mid-pass.
    pub fn strip_redundant(&mut self) {
        let mut candidates: Vec<VertexId> = self
            .removable
            .iter()
            .filter(|&v| self.loss[v as usize] == 0)
            .collect();
        candidates.sort_unstable();
        for v in candidates {
            if self.loss[v as usize] == 0 {
                self.remove_vertex(v);
            }
        }
    }

    /// The unique solution member covering `x`, skipping `except` (used
    /// while that member is being added and is not yet the "previous"
    /// dominator). Scans `N[x]`, so costs O(deg(x)).
    fn sole_dominator(&self, x: VertexId, except: Option<VertexId>) -> VertexId {
        self.graph
            .closed_neighbors(x)
            .find(|&y| self.in_solution[y as usize] && Some(y) != except)
            .expect("cover count said a dominator exists")
    }

    /// Ground-truth scores computed from scratch.
    pub fn recompute_scores(&self) -> Scores {
        compute_scores(self.graph, &self.in_solution)
    }

    /// Compares live scores against [`recompute_scores`], reporting the
    /// first mismatch. Only the valid side of loss/gain is compared.
    pub fn check_consistency(&self) -> Result<(), String> {
        let truth = self.recompute_scores();
        for v in 0..self.graph.vertex_count() as VertexId {
            let i = v as usize;
            if self.cover_count[i] != truth.cover_count[i] {
                return Err(format!(
                    "cover_count[{}]: live {} recomputed {}",
                    v, self.cover_count[i], truth.cover_count[i]
                ));
            }
            if self.in_solution[i] && self.loss[i] != truth.loss[i] {
                return Err(format!(
                    "loss[{}]: live {} recomputed {}",
                    v, self.loss[i], truth.loss[i]
                ));
            }
            if !self.in_solution[i] && self.gain[i] != truth.gain[i] {
                return Err(format!(
                    "gain[{}]: live {} recomputed {}",
                    v, self.gain[i], truth.gain[i]
                ));
            }
        }
        if self.ud.sorted() != truth.ud {
            return Err(format!(
                "undominated set: live {:?} recomputed {:?}",
                self.ud.sorted(),
                truth.ud
            ));
        }
        Ok(())
    }
}

fn compute_scores(graph: &Graph, in_solution: &[bool]) -> Scores {
    let n = graph.vertex_count();
    let mut cover_count = vec![0u32; n];
    for v in 0..n as VertexId {
        if in_solution[v as usize] {
            for x in graph.closed_neighbors(v) {
                cover_count[x as usize] += 1;
            }
        }
    }
    let mut loss = vec![0u32; n];
    let mut gain = vec![0u32; n];
    let mut ud = Vec::new();
    for v in 0..n as VertexId {
        let i = v as usize;
        if cover_count[i] == 0 {
            ud.push(v);
        }
        if in_solution[i] {
            loss[i] = graph
                .closed_neighbors(v)
                .filter(|&x| cover_count[x as usize] == 1)
                .count() as u32;
        } else {
            gain[i] = graph
                .closed_neighbors(v)
                .filter(|&x| cover_count[x as usize] == 0)
                .count() as u32;
        }
    }
    Scores {
        cover_count,
        loss,
        gain,
        ud,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, star, Graph};
    use crate::reduce::{apply_reductions, ReductionOutcome};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c4() -> Graph {
        cycle(4)
    }

    #[test]
    fn init_from_star_reductions() {
        let g = star(5);
        let red = apply_reductions(&g);
        let s = SolverState::new(&g, &red);
        assert!(s.is_feasible());
        assert_eq!(s.loss(0), 6);
        assert_eq!(s.solution().sorted(), vec![0]);
        assert!(s.removable().is_empty());
        assert_eq!(s.freq(0), 1);
        assert_eq!(s.freq(1), 0);
    }

    #[test]
    fn init_with_empty_fixed_set() {
        let g = c4();
        let s = SolverState::new(&g, &ReductionOutcome::empty(4));
        assert_eq!(s.undominated().sorted(), vec![0, 1, 2, 3]);
        for v in 0..4 {
            assert_eq!(s.gain(v), 3);
            assert_eq!(s.freq(v), 0);
        }
        // On an empty solution every gain equals degree + 1.
        let edgeless = Graph::from_edges(3, vec![]).unwrap();
        let s = SolverState::new(&edgeless, &ReductionOutcome::empty(3));
        for v in 0..3 {
            assert_eq!(s.gain(v), 1);
        }
    }

    #[test]
    fn add_vertex_traces_on_c4() {
        let g = c4();
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(4));

        s.add_vertex(0);
        assert_eq!(s.cover_count, vec![1, 1, 0, 1]);
        assert_eq!(s.undominated().sorted(), vec![2]);
        assert_eq!(s.loss(0), 3);
        assert_eq!(s.gain(1), 1);
        assert_eq!(s.gain(2), 1);
        assert_eq!(s.gain(3), 1);
        assert_eq!(s.freq(0), 1);

        s.add_vertex(2);
        assert_eq!(s.cover_count, vec![1, 2, 1, 2]);
        assert!(s.is_feasible());
        assert_eq!(s.loss(0), 1);
        assert_eq!(s.loss(2), 1);
        s.check_consistency().unwrap();
    }

    #[test]
    fn remove_vertex_inverts_add() {
        let g = c4();
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(4));
        s.add_vertex(0);
        let cover_before = s.cover_count.clone();

        s.add_vertex(2);
        s.remove_vertex(2);

        assert_eq!(s.cover_count, cover_before);
        assert_eq!(s.undominated().sorted(), vec![2]);
        assert_eq!(s.loss(0), 3);
        assert_eq!(s.gain(1), 1);
        assert_eq!(s.gain(2), 1);
        assert_eq!(s.gain(3), 1);
        s.check_consistency().unwrap();
    }

    #[test]
    fn remove_sole_center_uncovers_star() {
        let g = star(5);
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(6));
        s.add_vertex(0);
        assert!(s.is_feasible());
        s.remove_vertex(0);
        assert_eq!(s.undominated().sorted(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(s.gain(0), 6);
        s.check_consistency().unwrap();
    }

    #[test]
    #[should_panic(expected = "already in solution")]
    fn double_add_panics() {
        let g = c4();
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(4));
        s.add_vertex(0);
        s.add_vertex(0);
    }

    #[test]
    #[should_panic(expected = "is locked")]
    fn removing_locked_vertex_panics() {
        let g = star(5);
        let red = apply_reductions(&g);
        let mut s = SolverState::new(&g, &red);
        s.remove_vertex(0);
    }

    #[test]
    #[should_panic(expected = "is excluded")]
    fn adding_barred_vertex_panics() {
        let g = star(5);
        let red = apply_reductions(&g);
        let mut s = SolverState::new(&g, &red);
        s.add_vertex(1);
    }

    #[test]
    fn age_tracks_last_flip() {
        let g = c4();
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(4));
        s.add_vertex(0);
        s.advance_iteration();
        s.advance_iteration();
        assert_eq!(s.age(0), 2);
        s.advance_iteration();
        s.add_vertex(2);
        assert_eq!(s.age(0), 3);
        assert_eq!(s.age(2), 0);
    }

    #[test]
    fn strip_redundant_removes_zero_loss_members() {
        // On C4 every member of {0, 1, 2} starts at loss zero.
        let g = c4();
        let mut s = SolverState::new(&g, &ReductionOutcome::empty(4));
        s.add_vertex(0);
        s.add_vertex(1);
        s.add_vertex(2);
        assert_eq!(s.loss(0), 0);
        assert_eq!(s.loss(1), 0);
        assert_eq!(s.loss(2), 0);
        let ud_before = s.undominated().sorted();
        s.strip_redundant();
        assert_eq!(s.undominated().sorted(), ud_before);
        assert!(s.is_feasible());
        // 0 is stripped first; the live re-check then keeps 1 and 2, which
        // became the sole dominators of 0 and 3.
        assert_eq!(s.solution().sorted(), vec![1, 2]);
        s.check_consistency().unwrap();
    }

    #[test]
    fn random_walk_stays_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x57a7e);
        for _ in 0..30 {
            let n = rng.gen_range(2..40usize);
            let mut edges = Vec::new();
            for u in 0..n as VertexId {
                for v in (u + 1)..n as VertexId {
                    if rng.gen_bool(0.15) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let mut s = SolverState::new(&g, &ReductionOutcome::empty(n));
            for step in 0..400 {
                let remove = !s.removable().is_empty()
                    && (s.solution().len() == n || rng.gen_bool(0.5));
                if remove {
                    let i = rng.gen_range(0..s.removable().len());
                    s.remove_vertex(s.removable().get(i));
                } else {
                    let v = loop {
                        let v = rng.gen_range(0..n as VertexId);
                        if !s.is_in_solution(v) {
                            break v;
                        }
                    };
                    s.add_vertex(v);
                }
                if step % 97 == 0 {
                    s.check_consistency().unwrap();
                }
            }
            s.check_consistency().unwrap();
            // Loss total never exceeds the vertex count.
            let loss_sum: u32 = s.solution().iter().map(|v| s.loss(v)).sum();
            assert!(loss_sum as usize <= n);
        }
    }
}
