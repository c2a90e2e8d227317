//! Ground truth for small instances: a direct domination check and two
//! exact solvers (plain enumeration and branch-and-bound).
//!
//! Nothing here shares code with the local search.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Certified optimum of a small instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub opt_weight: i64,
    /// Sorted 0-based ids of one optimal dominating set.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

/// Number of vertices neither in `set` nor adjacent to a member.
pub fn count_undominated(wg: &WeightedGraph, set: &[usize]) -> Result<usize> {
    let g = wg.graph();
    let n = g.n();
    let mut member = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::Validation(format!(
                "vertex id {} outside [1, {n}]",
                v + 1
            )));
        }
        member[v] = true;
    }
    Ok((0..n)
        .filter(|&v| !member[v] && !g.neighbors(v).iter().any(|&u| member[u as usize]))
        .count())
}

/// True iff every vertex is in `set` or adjacent to a member of it.
pub fn validate(wg: &WeightedGraph, set: &[usize]) -> Result<bool> {
    Ok(count_undominated(wg, set)? == 0)
}

/// Tries all 2^n subsets. Limited to n <= 24.
pub fn brute_force_mwds(wg: &WeightedGraph) -> Result<ExactResult> {
    let g = wg.graph();
    let n = g.n();
    if n > 24 {
        return Err(Error::Config(format!("enumeration refused for n = {n} > 24")));
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u32 << v, |acc, &u| acc | (1u32 << u))
        })
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut best = (i64::MAX, 0u32);
    for mask in 0..=full {
        let mut covered = 0u32;
        let mut weight = 0i64;
        for (v, nb) in closed.iter().enumerate() {
            if mask >> v & 1 == 1 {
                covered |= nb;
                weight += wg.weight(v);
            }
        }
        if covered == full && weight < best.0 {
            best = (weight, mask);
        }
    }
    Ok(ExactResult {
        opt_weight: best.0,
        witness: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(),
        nodes_explored: full as u64 + 1,
    })
}

struct Bnb<'a> {
    wg: &'a WeightedGraph,
    in_set: Vec<bool>,
    excluded: Vec<bool>,
    cover: Vec<u32>,
    weight: i64,
    best_weight: i64,
    best_set: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Bnb<'_> {
    fn set(&mut self, v: usize, on: bool) {
        self.in_set[v] = on;
        if on {
            self.weight += self.wg.weight(v);
        } else {
            self.weight -= self.wg.weight(v);
        }
        for x in self.wg.graph().closed_neighbors(v) {
            if on {
                self.cover[x] += 1;
            } else {
                self.cover[x] -= 1;
            }
        }
    }

    fn search(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                explored: self.nodes - 1,
            });
        }
        let g = self.wg.graph();
        // branch on the uncovered vertex with fewest open dominators; bound by
        // the heaviest "cheapest dominator" over all uncovered vertices
        let mut pick: Option<(usize, usize)> = None;
        let mut bound = 0i64;
        for u in 0..g.n() {
            if self.cover[u] > 0 {
                continue;
            }
            let mut options = 0;
            let mut cheapest = i64::MAX;
            for x in g.closed_neighbors(u) {
                if !self.excluded[x] {
                    options += 1;
                    cheapest = cheapest.min(self.wg.weight(x));
                }
            }
            if options == 0 {
                return Ok(());
            }
            bound = bound.max(cheapest);
            if pick.is_none_or(|(_, o)| options < o) {
                pick = Some((u, options));
            }
        }
        let Some((u, _)) = pick else {
            if self.weight < self.best_weight {
                self.best_weight = self.weight;
                self.best_set = (0..g.n()).filter(|&v| self.in_set[v]).collect();
            }
            return Ok(());
        };
        if self.weight + bound >= self.best_weight {
            return Ok(());
        }
        let mut options: Vec<usize> = g.closed_neighbors(u).filter(|&x| !self.excluded[x]).collect();
        options.sort_by_key(|&x| (self.wg.weight(x), x));
        let mut result = Ok(());
        for &x in &options {
            self.set(x, true);
            result = self.search();
            self.set(x, false);
            if result.is_err() {
                break;
            }
            self.excluded[x] = true;
        }
        for &x in &options {
            self.excluded[x] = false;
        }
        result
    }
}

/// Branch-and-bound over "which vertex dominates this uncovered vertex".
///
/// Fails with [`Error::BudgetExceeded`] rather than return an uncertified answer.
pub fn exact_mwds(wg: &WeightedGraph, node_budget: u64) -> Result<ExactResult> {
    let n = wg.n();
    let mut bnb = Bnb {
        wg,
        in_set: vec![false; n],
        excluded: vec![false; n],
        cover: vec![0; n],
        weight: 0,
        best_weight: wg.weights().iter().sum::<i64>() + 1,
        best_set: (0..n).collect(),
        nodes: 0,
        budget: node_budget,
    };
    bnb.search()?;
    debug_assert!(validate(wg, &bnb.best_set).unwrap());
    Ok(ExactResult {
        opt_weight: bnb.best_weight,
        witness: bnb.best_set,
        nodes_explored: bnb.nodes,
    })
}
