//! The local search proper: greedy construction, the remove/add selection
//! rules, and the main loop in its plain and early-break forms.
//!
//! Each iteration either (a) finds S dominating, records it, and removes the
//! best-scored vertex of S, or (b) swaps: removes the best-scored vertex not
//! on the forbid list, clears the list, then adds configuration-changed
//! vertices until S dominates again. Every added vertex joins the forbid list
//! and raises the frequency of whatever is still uncovered.
//!
//! Ties on score fall to vertex age and then to a seeded uniform choice, so a
//! fixed seed and step budget reproduce a run exactly.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cc::CcStrategy;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::oracle;
use crate::scoring::{self, ScoreKind};
use crate::state::{Score, SearchState};

/// Which end of the age ordering wins a score tie.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreakAge {
    /// Prefer the vertex whose last state change is furthest in the past.
    #[default]
    MaxElapsed,
    /// Prefer the most recently flipped vertex.
    MinElapsed,
}

impl FromStr for TieBreakAge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-elapsed" => Ok(TieBreakAge::MaxElapsed),
            "min-elapsed" => Ok(TieBreakAge::MinElapsed),
            _ => Err(Error::Config(format!("unknown age tie-break {s:?}"))),
        }
    }
}

/// The (cc, score, break) triple distinguishing the algorithm variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Variant {
    pub cc: CcStrategy,
    pub score: ScoreKind,
    pub break_on_worse: bool,
}

impl Variant {
    pub const CC2FS: Variant = Variant {
        cc: CcStrategy::TwoLevel,
        score: ScoreKind::Freq,
        break_on_worse: false,
    };
    pub const CCFS: Variant = Variant {
        cc: CcStrategy::OneLevel,
        score: ScoreKind::Freq,
        break_on_worse: false,
    };
    pub const CC2FS_BREAK: Variant = Variant {
        cc: CcStrategy::TwoLevel,
        score: ScoreKind::Freq,
        break_on_worse: true,
    };

    /// Two-level CC driven by a legacy score.
    pub fn cc2_legacy(kind: scoring::LegacyScoreKind) -> Variant {
        Variant {
            cc: CcStrategy::TwoLevel,
            score: ScoreKind::Legacy(kind),
            break_on_worse: false,
        }
    }

    pub fn label(&self) -> String {
        match (self.cc, self.score, self.break_on_worse) {
            (CcStrategy::TwoLevel, ScoreKind::Freq, false) => "cc2fs".into(),
            (CcStrategy::TwoLevel, ScoreKind::Freq, true) => "cc2fs-break".into(),
            (CcStrategy::OneLevel, ScoreKind::Freq, false) => "ccfs".into(),
            (CcStrategy::TwoLevel, ScoreKind::Legacy(k), false) => format!("cc2+{}", k.label()),
            (cc, score, brk) => format!(
                "{}/{}{}",
                cc.label(),
                score.label(),
                if brk { "/break" } else { "" }
            ),
        }
    }
}

/// Named algorithm presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Cc2fs,
    Ccfs,
    Cc2fsBreak,
}

impl Algo {
    pub fn variant(self) -> Variant {
        match self {
            Algo::Cc2fs => Variant::CC2FS,
            Algo::Ccfs => Variant::CCFS,
            Algo::Cc2fsBreak => Variant::CC2FS_BREAK,
        }
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc2fs" => Ok(Algo::Cc2fs),
            "ccfs" => Ok(Algo::Ccfs),
            "cc2fs-break" => Ok(Algo::Cc2fsBreak),
            _ => Err(Error::Config(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Wall-clock budget in seconds.
    pub cutoff: f64,
    pub seed: u64,
    pub cc: CcStrategy,
    pub score: ScoreKind,
    pub break_on_worse: bool,
    pub tie_break_age: TieBreakAge,
    /// Outer iterations between clock reads.
    pub clock_check_interval: u64,
    /// Optional cap on outer iterations; with it a run is reproducible bit for bit.
    pub step_limit: Option<u64>,
    /// Legacy scores over N(u) instead of N[u].
    pub legacy_open_neighborhood: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            cutoff: 10.0,
            seed: 1,
            cc: CcStrategy::TwoLevel,
            score: ScoreKind::Freq,
            break_on_worse: false,
            tie_break_age: TieBreakAge::MaxElapsed,
            clock_check_interval: 256,
            step_limit: None,
            legacy_open_neighborhood: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.cutoff.is_finite() || self.cutoff <= 0.0 {
            return Err(Error::Config(format!("cutoff must be positive, got {}", self.cutoff)));
        }
        if self.clock_check_interval == 0 {
            return Err(Error::Config("clock_check_interval must be at least 1".into()));
        }
        Ok(())
    }

    pub fn variant(&self) -> Variant {
        Variant {
            cc: self.cc,
            score: self.score,
            break_on_worse: self.break_on_worse,
        }
    }

    pub fn with_variant(&self, v: Variant) -> Self {
        Self {
            cc: v.cc,
            score: v.score,
            break_on_worse: v.break_on_worse,
            ..self.clone()
        }
    }
}

/// How often each documented fallback fired during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValveCounters {
    /// Every member of S was forbidden; removal fell back to the unrestricted rule.
    pub remove_fallback: u64,
    /// No configuration-changed vertex could cover anything; CC was ignored for one add.
    pub add_fallback: u64,
    /// S was empty when a swap wanted to remove; the removal was skipped.
    pub empty_solution: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    /// Sorted 0-based ids of the best dominating set found.
    pub best_set: Vec<usize>,
    pub best_weight: i64,
    /// Seconds from the start of the call until the best weight was first reached.
    pub time_to_best: f64,
    /// Outer iterations completed when the best weight was first reached.
    pub steps_to_best: u64,
    /// Outer iterations.
    pub steps: u64,
    /// Individual add/remove moves, greedy construction included.
    pub moves: u64,
    /// Strict improvements over the greedy start.
    pub improvements: u64,
    pub elapsed: f64,
    pub seed: u64,
    pub valves: ValveCounters,
}

/// Adds, one at a time, the vertex covering the most uncovered vertices
/// (ties: lighter, then smaller id) until S dominates.
pub fn greedy_construct(st: &mut SearchState<'_>) {
    let wg = st.weighted_graph();
    let g = wg.graph();
    let n = g.n();
    let mut gain: Vec<usize> = (0..n)
        .map(|v| g.closed_neighbors(v).filter(|&x| st.cover_count(x) == 0).count())
        .collect();
    let mut heap: BinaryHeap<(usize, Reverse<i64>, Reverse<usize>)> = (0..n)
        .filter(|&v| !st.contains(v))
        .map(|v| (gain[v], Reverse(wg.weight(v)), Reverse(v)))
        .collect();
    // gains only shrink, so a stale entry is re-queued with its current gain
    // and the first fresh entry popped is the true maximum
    while !st.is_dominating() {
        let (g_top, w, Reverse(v)) = heap.pop().expect("uncovered vertices remain, so candidates remain");
        if st.contains(v) {
            continue;
        }
        if g_top != gain[v] {
            heap.push((gain[v], w, Reverse(v)));
            continue;
        }
        for w in g.closed_neighbors(v) {
            if st.cover_count(w) == 0 {
                for x in g.closed_neighbors(w) {
                    gain[x] -= 1;
                }
            }
        }
        st.apply_add(v);
    }
}

struct Pick {
    vertex: usize,
    score: Score,
    flip: u64,
    ties: u32,
}

/// Vertex selection under a fixed config, with its own seeded RNG.
pub struct Selector {
    score: ScoreKind,
    tie_break_age: TieBreakAge,
    legacy_open: bool,
    rng: ChaCha8Rng,
    stamp: Vec<u32>,
    epoch: u32,
    pub valves: ValveCounters,
}

impl Selector {
    pub fn new(cfg: &SolverConfig, n: usize) -> Self {
        Self {
            score: cfg.score,
            tie_break_age: cfg.tie_break_age,
            legacy_open: cfg.legacy_open_neighborhood,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            stamp: vec![0; n],
            epoch: 0,
            valves: ValveCounters::default(),
        }
    }

    fn add_score(&self, st: &SearchState<'_>, v: usize) -> Score {
        match self.score {
            ScoreKind::Freq => st.score_f(v),
            ScoreKind::Legacy(k) => scoring::add_score(k, st, v, self.legacy_open),
        }
    }

    fn remove_score(&self, st: &SearchState<'_>, v: usize) -> Score {
        match self.score {
            ScoreKind::Freq => st.score_f(v),
            ScoreKind::Legacy(k) => scoring::removal_score(k, st, v, self.legacy_open),
        }
    }

    /// Keeps the running best: higher score, then the preferred age, then a
    /// uniform choice among exact ties (reservoir sampling).
    fn offer(&mut self, best: &mut Option<Pick>, vertex: usize, score: Score, flip: u64) {
        let Some(cur) = best else {
            *best = Some(Pick { vertex, score, flip, ties: 1 });
            return;
        };
        let by_age = match self.tie_break_age {
            TieBreakAge::MaxElapsed => cur.flip.cmp(&flip),
            TieBreakAge::MinElapsed => flip.cmp(&cur.flip),
        };
        match score.cmp(&cur.score).then(by_age) {
            Ordering::Greater => *best = Some(Pick { vertex, score, flip, ties: 1 }),
            Ordering::Equal => {
                cur.ties += 1;
                if self.rng.random_range(0..cur.ties) == 0 {
                    cur.vertex = vertex;
                }
            }
            Ordering::Less => {}
        }
    }

    fn best_in_solution(&mut self, st: &SearchState<'_>, skip_forbidden: bool) -> Option<usize> {
        let mut best = None;
        for &v in st.solution() {
            let v = v as usize;
            if skip_forbidden && st.is_forbidden(v) {
                continue;
            }
            let s = self.remove_score(st, v);
            self.offer(&mut best, v, s, st.last_flip_step(v));
        }
        best.map(|p| p.vertex)
    }

    /// Highest removal score over all of S.
    pub fn select_remove_rule1(&mut self, st: &SearchState<'_>) -> Result<usize> {
        self.best_in_solution(st, false)
            .ok_or_else(|| Error::Precondition("removal requested from an empty solution".into()))
    }

    /// Highest removal score over S minus the forbid list; falls back to
    /// [`Self::select_remove_rule1`] when every member is forbidden.
    pub fn select_remove_rule2(&mut self, st: &SearchState<'_>) -> Result<usize> {
        if st.solution_len() == 0 {
            return Err(Error::Precondition("removal requested from an empty solution".into()));
        }
        match self.best_in_solution(st, true) {
            Some(v) => Ok(v),
            None => {
                self.valves.remove_fallback += 1;
                self.select_remove_rule1(st)
            }
        }
    }

    /// Highest add score among configuration-changed vertices that cover at
    /// least one uncovered vertex. If none exists the CC filter is dropped.
    pub fn select_add(&mut self, st: &SearchState<'_>) -> Result<usize> {
        if st.is_dominating() {
            return Err(Error::Precondition("add requested with no uncovered vertices".into()));
        }
        if let Some(v) = self.best_addition(st, true) {
            return Ok(v);
        }
        self.valves.add_fallback += 1;
        Ok(self
            .best_addition(st, false)
            .expect("an uncovered vertex always covers itself"))
    }

    fn best_addition(&mut self, st: &SearchState<'_>, respect_cc: bool) -> Option<usize> {
        let g = st.weighted_graph().graph();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let mut best = None;
        // every vertex of N[uncovered] lies outside S
        for &w in st.uncovered() {
            for x in g.closed_neighbors(w as usize) {
                if self.stamp[x] == self.epoch {
                    continue;
                }
                self.stamp[x] = self.epoch;
                if respect_cc && !st.is_allowed_add(x) {
                    continue;
                }
                let s = self.add_score(st, x);
                self.offer(&mut best, x, s, st.last_flip_step(x));
            }
        }
        best.map(|p| p.vertex)
    }
}

/// Milestones of a run, reported to the observer of [`solve_observed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchEvent {
    Constructed { weight: i64 },
    /// S dominated at the top of an iteration and was recorded as the best solution.
    Recorded { weight: i64, improved: bool },
    RemovedRule1 { vertex: usize },
    RemovedRule2 { vertex: usize },
    ForbidCleared,
    Added { vertex: usize },
    /// The early-break variant stopped an add loop.
    Broke,
}

/// Runs the configured variant until the cutoff (or step limit) and returns
/// the best dominating set seen, verified independently before returning.
pub fn solve(wg: &WeightedGraph, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_observed(wg, cfg, |_, _| {})
}

/// [`solve`] with a callback invoked after every milestone.
pub fn solve_observed<F>(wg: &WeightedGraph, cfg: &SolverConfig, mut observe: F) -> Result<SolveResult>
where
    F: FnMut(SearchEvent, &SearchState<'_>),
{
    cfg.validate()?;
    if wg.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let start = Instant::now();
    let mut st = SearchState::new(wg, cfg.cc);
    let mut sel = Selector::new(cfg, wg.n());

    greedy_construct(&mut st);
    observe(SearchEvent::Constructed { weight: st.solution_weight() }, &st);
    let mut best_set = st.solution_sorted();
    let mut best_weight = st.solution_weight();
    let mut time_to_best = start.elapsed().as_secs_f64();
    let mut steps_to_best = 0u64;
    let mut improvements = 0u64;

    let mut steps = 0u64;
    loop {
        if steps.is_multiple_of(cfg.clock_check_interval) && start.elapsed().as_secs_f64() >= cfg.cutoff {
            break;
        }
        if cfg.step_limit.is_some_and(|limit| steps >= limit) {
            break;
        }
        steps += 1;

        if st.is_dominating() {
            let w = st.solution_weight();
            debug_assert!(!cfg.break_on_worse || w <= best_weight);
            let improved = w < best_weight;
            if improved || cfg.break_on_worse {
                if improved {
                    best_weight = w;
                    time_to_best = start.elapsed().as_secs_f64();
                    steps_to_best = steps;
                    improvements += 1;
                }
                best_set = st.solution_sorted();
                debug_assert!(oracle::validate(wg, &best_set).unwrap());
                observe(SearchEvent::Recorded { weight: w, improved }, &st);
            }
            let v = sel.select_remove_rule1(&st)?;
            st.apply_remove(v);
            observe(SearchEvent::RemovedRule1 { vertex: v }, &st);
            continue;
        }

        if st.solution_len() > 0 {
            let v = sel.select_remove_rule2(&st)?;
            st.apply_remove(v);
            observe(SearchEvent::RemovedRule2 { vertex: v }, &st);
        } else {
            sel.valves.empty_solution += 1;
        }
        st.clear_forbid();
        observe(SearchEvent::ForbidCleared, &st);

        while !st.is_dominating() {
            let v = sel.select_add(&st)?;
            if cfg.break_on_worse && st.solution_weight() + wg.weight(v) >= best_weight {
                observe(SearchEvent::Broke, &st);
                break;
            }
            st.apply_add(v);
            st.forbid(v);
            st.bump_uncovered_freq();
            observe(SearchEvent::Added { vertex: v }, &st);
        }
    }

    assert!(
        oracle::validate(wg, &best_set)?,
        "best solution failed the independent domination check"
    );
    assert_eq!(wg.total_weight(&best_set), best_weight);
    Ok(SolveResult {
        best_set,
        best_weight,
        time_to_best,
        steps_to_best,
        steps,
        moves: st.step(),
        improvements,
        elapsed: start.elapsed().as_secs_f64(),
        seed: cfg.seed,
        valves: sel.valves,
    })
}

/// Runs every variant on one instance with the base config's seed and budget.
pub fn solve_variant_matrix(
    wg: &WeightedGraph,
    base: &SolverConfig,
    variants: &[Variant],
) -> Result<Vec<SolveResult>> {
    variants.iter().map(|v| solve(wg, &base.with_variant(*v))).collect()
}
