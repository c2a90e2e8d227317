#![allow(dead_code)]

use domlite::generator::{generate, Family, GenSpec};
use domlite::{Graph, SearchState, WeightedGraph};
use rand::Rng;

/// Everything the incremental state caches, rebuilt from definitions.
#[derive(Debug, PartialEq, Eq)]
pub struct Recomputed {
    pub cover_count: Vec<u32>,
    pub uncovered_count: usize,
    pub solution_weight: i64,
    pub score_num: Vec<i64>,
}

/// Recomputes coverage and score numerators from S and freq alone.
pub fn recompute(wg: &WeightedGraph, in_s: &[bool], freq: &[i64]) -> Recomputed {
    let g = wg.graph();
    let n = g.n();
    let closed = |v: usize| -> Vec<usize> {
        let mut c = vec![v];
        c.extend(g.neighbors(v).iter().map(|&u| u as usize));
        c
    };
    let dominated_by = |v: usize, s: &dyn Fn(usize) -> bool| closed(v).into_iter().any(s);
    let cover_count: Vec<u32> = (0..n)
        .map(|v| closed(v).into_iter().filter(|&x| in_s[x]).count() as u32)
        .collect();
    let score_num = (0..n)
        .map(|u| {
            if !in_s[u] {
                // C1 = N[u] \ N[S]
                closed(u)
                    .into_iter()
                    .filter(|&v| !dominated_by(v, &|x| in_s[x]))
                    .map(|v| freq[v])
                    .sum()
            } else {
                // C2 = N[u] \ N[S \ {u}]
                -closed(u)
                    .into_iter()
                    .filter(|&v| !dominated_by(v, &|x| in_s[x] && x != u))
                    .map(|v| freq[v])
                    .sum::<i64>()
            }
        })
        .collect();
    Recomputed {
        uncovered_count: cover_count.iter().filter(|&&c| c == 0).count(),
        cover_count,
        solution_weight: (0..n).filter(|&v| in_s[v]).map(|v| wg.weight(v)).sum(),
        score_num,
    }
}

pub fn cached(st: &SearchState<'_>) -> Recomputed {
    let n = st.n();
    Recomputed {
        cover_count: (0..n).map(|v| st.cover_count(v)).collect(),
        uncovered_count: st.uncovered_count(),
        solution_weight: st.solution_weight(),
        score_num: (0..n).map(|v| st.score_num(v)).collect(),
    }
}

pub fn membership(st: &SearchState<'_>) -> Vec<bool> {
    (0..st.n()).map(|v| st.contains(v)).collect()
}

pub fn freqs(st: &SearchState<'_>) -> Vec<i64> {
    (0..st.n()).map(|v| st.freq(v)).collect()
}

/// Random graph (not necessarily connected) with weights in [1, 50].
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, avg_degree: f64) -> WeightedGraph {
    let m = ((n as f64) * avg_degree / 2.0) as usize;
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    let g = Graph::from_edges(n, edges);
    let w = (0..n).map(|_| rng.random_range(1..=50)).collect();
    WeightedGraph::new(g, w).unwrap()
}

/// Random connected instance with at most 12 vertices; odd indices get unit weights.
pub fn small_connected(i: u64, rng: &mut impl Rng) -> WeightedGraph {
    let n = rng.random_range(1..=12usize);
    let max = n * (n - 1) / 2;
    let m = rng.random_range((n - 1)..=max.max(n - 1));
    let wg = generate(&GenSpec { n, m, family: Family::T1, seed: 1000 + i }).unwrap();
    if i % 2 == 1 {
        WeightedGraph::new(wg.graph().clone(), vec![1; n]).unwrap()
    } else {
        wg
    }
}

/// Vertices within distance 2 of v, v included.
pub fn closed_two_hop(g: &Graph, v: usize) -> Vec<bool> {
    let mut mark = vec![false; g.n()];
    mark[v] = true;
    for &u in g.neighbors(v) {
        mark[u as usize] = true;
        for &x in g.neighbors(u as usize) {
            mark[x as usize] = true;
        }
    }
    mark
}
