//! Seeded random connected instances with T1 or T2 style weights.
//!
//! The structure is a uniformly random labelled spanning tree (decoded from a
//! random Prüfer sequence) plus distinct random extra edges. Weights are
//! drawn afterwards from the same stream, so T2 sees final degrees.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{draw_degree_squared_weights, draw_uniform_weights, Graph, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Weights uniform in [20, 70].
    T1,
    /// Weights uniform in [1, d(v)²].
    T2,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(Family::T1),
            "t2" => Ok(Family::T2),
            _ => Err(Error::Config(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn check(&self) -> Result<()> {
        let GenSpec { n, m, .. } = *self;
        if n == 0 {
            return Err(Error::Spec("n must be at least 1".into()));
        }
        if m < n - 1 {
            return Err(Error::Spec(format!("m = {m} < n - 1 = {} cannot be connected", n - 1)));
        }
        let max = n * (n - 1) / 2;
        if m > max {
            return Err(Error::Spec(format!("m = {m} exceeds n(n-1)/2 = {max}")));
        }
        Ok(())
    }
}

fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Builds the instance described by `spec`; identical specs give identical graphs.
pub fn generate(spec: &GenSpec) -> Result<WeightedGraph> {
    spec.check()?;
    let GenSpec { n, m, family, seed } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut edges = random_tree(n, &mut rng);
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| key(u, v)).collect();
    let extra = m - edges.len();
    let max = n * (n - 1) / 2;
    if extra > 0 && 2 * m > max {
        // dense: sample from the explicit complement
        let mut pool: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        for i in 0..extra {
            let j = rng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        edges.extend_from_slice(&pool[..extra]);
    } else {
        while edges.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && present.insert(key(u, v)) {
                edges.push((u, v));
            }
        }
    }

    let graph = Graph::from_edges(n, edges);
    let weights = match family {
        Family::T1 => draw_uniform_weights(n, 20, 70, &mut rng),
        Family::T2 => draw_degree_squared_weights(&graph, &mut rng),
    };
    WeightedGraph::new(graph, weights)
}
