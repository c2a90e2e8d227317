//! Mutable candidate solution for the local search.
//!
//! Every move repairs coverage counts and the cached frequency-score
//! numerators incrementally. Only vertices within distance 2 of the moved
//! vertex are touched, and only on the coverage transitions 0 <-> 1
//! (a vertex becomes covered or uncovered) and 1 <-> 2 (a vertex gains or
//! loses its unique dominator).
//!
//! For `u` outside S the cached numerator is the sum of `freq` over the
//! uncovered vertices of N[u]; for `u` in S it is minus the sum of `freq`
//! over the vertices of N[u] that `u` dominates alone.

use std::cmp::Ordering;

use crate::cc::{CcStrategy, ConfChange};
use crate::error::{Error, Result};
use crate::graph::{TwoHopScratch, WeightedGraph};

/// Exact rational score `num / den` with `den >= 1`.
///
/// Comparison cross-multiplies in 128-bit integers; no floating point.
#[derive(Clone, Copy, Debug)]
pub struct Score {
    pub num: i64,
    pub den: i64,
}

impl Score {
    pub fn new(num: i64, den: i64) -> Self {
        debug_assert!(den >= 1);
        Self { num, den }
    }

    pub fn integer(num: i64) -> Self {
        Self { num, den: 1 }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Score {}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl std::fmt::Display for Score {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Set over `0..n` with O(1) insert, remove and membership, iterable as a slice.
#[derive(Clone, Debug)]
pub(crate) struct SparseSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl SparseSet {
    fn new(n: usize) -> Self {
        Self {
            items: Vec::new(),
            pos: vec![ABSENT; n],
        }
    }

    fn full(n: usize) -> Self {
        Self {
            items: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
        }
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        debug_assert_eq!(self.pos[v], ABSENT);
        self.pos[v] = self.items.len() as u32;
        self.items.push(v as u32);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        let p = self.pos[v] as usize;
        debug_assert_ne!(self.pos[v], ABSENT);
        let last = *self.items.last().unwrap();
        self.items[p] = last;
        self.pos[last as usize] = p as u32;
        self.items.pop();
        self.pos[v] = ABSENT;
    }

    fn as_slice(&self) -> &[u32] {
        &self.items
    }
}

/// Candidate solution S plus all bookkeeping the selection rules read.
#[derive(Clone, Debug)]
pub struct SearchState<'g> {
    wg: &'g WeightedGraph,
    in_solution: Vec<bool>,
    solution: SparseSet,
    /// |N[v] ∩ S|
    cover_count: Vec<u32>,
    /// Sum of the ids of N[v] ∩ S; names the unique dominator when cover_count is 1.
    dominator_sum: Vec<u64>,
    uncovered: SparseSet,
    freq: Vec<i64>,
    conf: ConfChange,
    forbidden: Vec<bool>,
    forbid_list: Vec<u32>,
    last_flip_step: Vec<u64>,
    step: u64,
    score_num: Vec<i64>,
    solution_weight: i64,
    scratch: TwoHopScratch,
}

impl<'g> SearchState<'g> {
    /// Empty solution, every vertex uncovered, all `freq` 1, all ConfChange flags set.
    pub fn new(wg: &'g WeightedGraph, strategy: CcStrategy) -> Self {
        let g = wg.graph();
        let n = g.n();
        Self {
            wg,
            in_solution: vec![false; n],
            solution: SparseSet::new(n),
            cover_count: vec![0; n],
            dominator_sum: vec![0; n],
            uncovered: SparseSet::full(n),
            freq: vec![1; n],
            conf: ConfChange::new(strategy, n),
            forbidden: vec![false; n],
            forbid_list: Vec::new(),
            last_flip_step: vec![0; n],
            step: 0,
            score_num: (0..n).map(|v| g.degree(v) as i64 + 1).collect(),
            solution_weight: 0,
            scratch: TwoHopScratch::new(n),
        }
    }

    pub fn weighted_graph(&self) -> &'g WeightedGraph {
        self.wg
    }

    pub fn n(&self) -> usize {
        self.in_solution.len()
    }

    /// Adds `v` to S and applies the addition rule of the CC strategy.
    pub fn add_vertex(&mut self, v: usize) -> Result<()> {
        if self.in_solution[v] {
            return Err(Error::Precondition(format!("vertex {} already in S", v + 1)));
        }
        self.apply_add(v);
        Ok(())
    }

    /// Removes `v` from S and applies the removal rule of the CC strategy.
    pub fn remove_vertex(&mut self, v: usize) -> Result<()> {
        if !self.in_solution[v] {
            return Err(Error::Precondition(format!("vertex {} not in S", v + 1)));
        }
        self.apply_remove(v);
        Ok(())
    }

    pub(crate) fn apply_add(&mut self, v: usize) {
        debug_assert!(!self.in_solution[v]);
        let g = self.wg.graph();
        self.in_solution[v] = true;
        self.solution.insert(v);
        self.solution_weight += self.wg.weight(v);
        self.step += 1;
        self.last_flip_step[v] = self.step;
        self.score_num[v] = 0;

        for w in g.closed_neighbors(v) {
            self.cover_count[w] += 1;
            self.dominator_sum[w] += v as u64;
            match self.cover_count[w] {
                1 => {
                    self.uncovered.remove(w);
                    let f = self.freq[w];
                    for x in g.closed_neighbors(w) {
                        if x != v {
                            self.score_num[x] -= f;
                        }
                    }
                    self.score_num[v] -= f;
                }
                2 => {
                    let other = (self.dominator_sum[w] - v as u64) as usize;
                    self.score_num[other] += self.freq[w];
                }
                _ => {}
            }
        }
        self.conf.on_add(g, &mut self.scratch, v);
    }

    pub(crate) fn apply_remove(&mut self, v: usize) {
        debug_assert!(self.in_solution[v]);
        let g = self.wg.graph();
        self.in_solution[v] = false;
        self.solution.remove(v);
        self.solution_weight -= self.wg.weight(v);
        self.step += 1;
        self.last_flip_step[v] = self.step;
        self.score_num[v] = 0;

        for w in g.closed_neighbors(v) {
            self.cover_count[w] -= 1;
            self.dominator_sum[w] -= v as u64;
            match self.cover_count[w] {
                0 => {
                    self.uncovered.insert(w);
                    let f = self.freq[w];
                    for x in g.closed_neighbors(w) {
                        self.score_num[x] += f;
                    }
                }
                1 => {
                    let sole = self.dominator_sum[w] as usize;
                    self.score_num[sole] -= self.freq[w];
                }
                _ => {}
            }
        }
        self.conf.on_remove(g, &mut self.scratch, v);
    }

    /// Increments `freq` of every uncovered vertex and repairs the affected scores.
    pub fn bump_uncovered_freq(&mut self) {
        let g = self.wg.graph();
        for &w in self.uncovered.as_slice() {
            let w = w as usize;
            self.freq[w] = self.freq[w].saturating_add(1);
            for x in g.closed_neighbors(w) {
                self.score_num[x] += 1;
            }
        }
    }

    /// Frequency-based score of `u`: cached numerator over w(u).
    #[inline]
    pub fn score_f(&self, u: usize) -> Score {
        Score::new(self.score_num[u], self.wg.weight(u))
    }

    #[inline]
    pub fn score_num(&self, u: usize) -> i64 {
        self.score_num[u]
    }

    pub fn is_dominating(&self) -> bool {
        self.uncovered.as_slice().is_empty()
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered.as_slice().len()
    }

    /// Currently uncovered vertices, in no particular order.
    pub fn uncovered(&self) -> &[u32] {
        self.uncovered.as_slice()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.in_solution[v]
    }

    /// Members of S, in no particular order.
    pub fn solution(&self) -> &[u32] {
        self.solution.as_slice()
    }

    /// Members of S as sorted 0-based ids.
    pub fn solution_sorted(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.solution.as_slice().iter().map(|&v| v as usize).collect();
        s.sort_unstable();
        s
    }

    pub fn solution_len(&self) -> usize {
        self.solution.as_slice().len()
    }

    pub fn solution_weight(&self) -> i64 {
        self.solution_weight
    }

    #[inline]
    pub fn cover_count(&self, v: usize) -> u32 {
        self.cover_count[v]
    }

    #[inline]
    pub fn freq(&self, v: usize) -> i64 {
        self.freq[v]
    }

    pub fn conf(&self) -> &ConfChange {
        &self.conf
    }

    /// Raw ConfChange flag of `v`.
    pub fn conf_change(&self, v: usize) -> bool {
        self.conf.flag(v)
    }

    /// CCV: vertices outside S whose configuration changed (lazy).
    pub fn allowed_add_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| !self.in_solution[v] && self.conf.is_changed(v))
    }

    #[inline]
    pub fn is_allowed_add(&self, v: usize) -> bool {
        !self.in_solution[v] && self.conf.is_changed(v)
    }

    pub fn forbid(&mut self, v: usize) {
        if !self.forbidden[v] {
            self.forbidden[v] = true;
            self.forbid_list.push(v as u32);
        }
    }

    #[inline]
    pub fn is_forbidden(&self, v: usize) -> bool {
        self.forbidden[v]
    }

    pub fn forbid_list(&self) -> &[u32] {
        &self.forbid_list
    }

    pub fn clear_forbid(&mut self) {
        for &v in &self.forbid_list {
            self.forbidden[v as usize] = false;
        }
        self.forbid_list.clear();
    }

    /// Number of add/remove moves applied so far.
    pub fn step(&self) -> u64 {
        self.step
    }

    #[inline]
    pub fn last_flip_step(&self, v: usize) -> u64 {
        self.last_flip_step[v]
    }

    /// Steps elapsed since `v` last changed state.
    pub fn age(&self, v: usize) -> u64 {
        self.step - self.last_flip_step[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn unit(g: Graph) -> WeightedGraph {
        let n = g.n();
        WeightedGraph::new(g, vec![1; n]).unwrap()
    }

    fn star() -> WeightedGraph {
        unit(Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]))
    }

    fn p3() -> WeightedGraph {
        unit(Graph::from_edges(3, [(0, 1), (1, 2)]))
    }

    #[test]
    fn score_ordering_is_exact() {
        assert!(Score::new(2, 1) > Score::new(3, 2));
        assert_eq!(Score::new(2, 4), Score::new(1, 2));
        assert!(Score::new(-4, 1) < Score::new(0, 7));
        assert!(Score::new(i64::MAX, 1) > Score::new(i64::MAX - 1, 1));
    }

    #[test]
    fn fresh_triangle() {
        let wg = WeightedGraph::new(Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]), vec![1, 2, 3]).unwrap();
        let st = SearchState::new(&wg, CcStrategy::TwoLevel);
        assert_eq!(st.uncovered_count(), 3);
        for v in 0..3 {
            assert_eq!(st.score_num(v), 3);
            assert_eq!(st.score_f(v), Score::new(3, wg.weight(v)));
            assert!(st.conf_change(v));
        }
        assert_eq!(st.allowed_add_set().count(), 3);
    }

    #[test]
    fn isolated_vertex_score() {
        let wg = unit(Graph::from_edges(1, []));
        let st = SearchState::new(&wg, CcStrategy::TwoLevel);
        assert_eq!(st.score_num(0), 1);
    }

    #[test]
    fn add_center_of_star() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        assert_eq!(st.uncovered_count(), 0);
        assert!(st.is_dominating());
        assert_eq!(st.score_f(0), Score::new(-4, 1));
        for leaf in 1..4 {
            assert_eq!(st.score_num(leaf), 0);
        }
        assert!(matches!(st.add_vertex(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn p3_add_then_remove() {
        let wg = p3();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        assert_eq!(
            (st.cover_count(0), st.cover_count(1), st.cover_count(2)),
            (1, 1, 0)
        );
        st.remove_vertex(0).unwrap();
        assert_eq!(
            (st.cover_count(0), st.cover_count(1), st.cover_count(2)),
            (0, 0, 0)
        );
        assert_eq!(st.uncovered_count(), 3);
        assert!(matches!(st.remove_vertex(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn remove_keeps_coverage_from_other_dominator() {
        let wg = p3();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        st.add_vertex(1).unwrap();
        let before = st.solution_weight();
        st.remove_vertex(0).unwrap();
        assert_eq!(st.cover_count(0), 1);
        assert_eq!(st.uncovered_count(), 0);
        assert_eq!(st.solution_weight(), before - wg.weight(0));
    }

    #[test]
    fn star_remove_center_uncovers_all() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        st.remove_vertex(0).unwrap();
        assert_eq!(st.uncovered_count(), 4);
        assert!(!st.conf_change(0));
    }

    #[test]
    fn covered_outsider_has_zero_score() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        assert_eq!(st.score_num(2), 0);
    }

    #[test]
    fn isolated_with_raised_freq() {
        let wg = WeightedGraph::new(Graph::from_edges(1, []), vec![2]).unwrap();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        for _ in 0..6 {
            st.bump_uncovered_freq();
        }
        assert_eq!(st.freq(0), 7);
        assert_eq!(st.score_f(0), Score::new(7, 2));
    }

    #[test]
    fn bump_examples() {
        let wg = p3();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.bump_uncovered_freq();
        assert!((0..3).all(|v| st.freq(v) == 2));
        assert_eq!(st.score_num(1), 6);
        st.bump_uncovered_freq();
        assert_eq!(st.freq(0), 3);

        st.add_vertex(1).unwrap();
        let snapshot: Vec<i64> = (0..3).map(|v| st.freq(v)).collect();
        st.bump_uncovered_freq();
        assert_eq!((0..3).map(|v| st.freq(v)).collect::<Vec<_>>(), snapshot);
    }

    #[test]
    fn domination_queries() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        assert!(!st.is_dominating());
        st.add_vertex(1).unwrap();
        assert!(!st.is_dominating());
        for v in [0, 2, 3] {
            st.add_vertex(v).unwrap();
        }
        assert!(st.is_dominating());
    }

    #[test]
    fn forbid_list_bookkeeping() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.forbid(1);
        st.forbid(1);
        st.forbid(3);
        assert_eq!(st.forbid_list().len(), 2);
        assert!(st.is_forbidden(3));
        st.clear_forbid();
        assert!(st.forbid_list().is_empty());
        assert!(!st.is_forbidden(1));
    }

    #[test]
    fn ages_track_flips() {
        let wg = p3();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(2).unwrap();
        st.add_vertex(0).unwrap();
        assert_eq!(st.step(), 2);
        assert_eq!(st.age(2), 1);
        assert_eq!(st.age(0), 0);
        assert_eq!(st.age(1), 2);
    }

    #[test]
    fn allowed_set_after_removal() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        st.add_vertex(1).unwrap();
        st.remove_vertex(1).unwrap();
        let allowed: Vec<usize> = st.allowed_add_set().collect();
        assert_eq!(allowed, vec![2, 3]);
        let wg2 = star();
        let mut off = SearchState::new(&wg2, CcStrategy::Disabled);
        off.add_vertex(0).unwrap();
        off.add_vertex(1).unwrap();
        off.remove_vertex(1).unwrap();
        assert_eq!(off.allowed_add_set().collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
