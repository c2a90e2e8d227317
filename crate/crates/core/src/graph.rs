//! Immutable undirected graphs with positive integer vertex weights.
//!
//! Vertices are 0-based internally and 1-based in every file format.
//! Adjacency is stored in compressed rows; each row is sorted and free of
//! self-loops and duplicates.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Undirected simple graph in compressed adjacency form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

/// Counters of input irregularities silently repaired while building a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub self_loops: usize,
    pub duplicates: usize,
    /// Edge count announced by the file header, if any. Advisory only.
    pub header_edges: Option<usize>,
}

impl ParseReport {
    pub fn warnings(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from 0-based endpoint pairs.
    /// Self-loops are dropped and duplicate or reversed pairs collapse into one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges).0
    }

    fn build<I>(n: usize, edges: I) -> (Self, ParseReport)
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        let mut report = ParseReport::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                report.self_loops += 1;
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        report.duplicates = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Lexicographic pair order leaves every row sorted: for row x, all
        // smaller neighbours arrive (as second endpoints) before any larger one.
        for &(a, b) in &pairs {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        (Self { offsets, targets }, report)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    /// Sorted open neighbourhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Closed neighbourhood N[v]: v itself followed by N(v).
    pub fn closed_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(v).chain(self.neighbors(v).iter().map(|&u| u as usize))
    }

    /// Each edge once, as a 0-based pair with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// N²(v) = every vertex other than v at distance 1 or 2, computed on the fly.
    ///
    /// Direct neighbours come first, then second-level vertices in discovery order.
    pub fn two_level_neighbors<'s>(&self, v: usize, scratch: &'s mut TwoHopScratch) -> &'s [u32] {
        scratch.begin(self.n());
        scratch.mark(v as u32);
        for &u in self.neighbors(v) {
            if scratch.mark(u) {
                scratch.buf.push(u);
            }
        }
        for &u in self.neighbors(v) {
            for &x in self.neighbors(u as usize) {
                if scratch.mark(x) {
                    scratch.buf.push(x);
                }
            }
        }
        &scratch.buf
    }

    /// Whether every vertex is reachable from vertex 0. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                let u = u as usize;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// DIMACS ascii rendering (`p edge N M` followed by `e u v` lines, 1-based).
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p edge {} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    /// Plain edge list with an MTX-style size header so isolated tail vertices survive.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "% domlite edge list").unwrap();
        writeln!(out, "{} {} {}", self.n(), self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// Generation-stamped scratch buffer for [`Graph::two_level_neighbors`].
///
/// One per caller; reuse across queries makes each query cost O(|N²(v)| + Σ d(u)).
#[derive(Clone, Debug, Default)]
pub struct TwoHopScratch {
    stamp: Vec<u32>,
    epoch: u32,
    buf: Vec<u32>,
}

impl TwoHopScratch {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            epoch: 0,
            buf: Vec::new(),
        }
    }

    fn begin(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.buf.clear();
    }

    #[inline]
    fn mark(&mut self, v: u32) -> bool {
        let slot = &mut self.stamp[v as usize];
        if *slot == self.epoch {
            false
        } else {
            *slot = self.epoch;
            true
        }
    }
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<u64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing vertex id".into(),
    })?;
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found {tok:?}"),
    })
}

/// Parses DIMACS ascii clq text. Header edge counts are advisory.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    parse_dimacs_with_report(text).map(|(g, _)| g)
}

pub fn parse_dimacs_with_report(text: &str) -> Result<(Graph, ParseReport)> {
    let mut n: Option<usize> = None;
    let mut header_edges = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "second problem line".into(),
                    });
                }
                let _format = toks.next().ok_or_else(|| Error::Parse {
                    line,
                    msg: "problem line lacks a format field".into(),
                })?;
                n = Some(parse_id(toks.next(), line)? as usize);
                header_edges = Some(parse_id(toks.next(), line)? as usize);
            }
            "e" => {
                let Some(nv) = n else {
                    return Err(Error::Format(format!(
                        "edge on line {line} precedes the `p edge N M` line"
                    )));
                };
                let u = parse_id(toks.next(), line)?;
                let v = parse_id(toks.next(), line)?;
                for id in [u, v] {
                    if id == 0 || id > nv as u64 {
                        return Err(Error::VertexRange { line, id, n: nv });
                    }
                }
                edges.push((u as usize - 1, v as usize - 1));
            }
            other if other.starts_with('c') => {}
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    let n = n.ok_or_else(|| Error::Format("missing `p edge N M` line".into()))?;
    let (g, mut report) = Graph::build(n, edges);
    report.header_edges = header_edges;
    Ok((g, report))
}

/// Parses a whitespace-separated 1-based edge list. `%` and `#` lines are
/// comments; a leading three-integer MTX size line is skipped (its dimension
/// still counts toward n). Tokens past the second on a line are ignored.
pub fn parse_edge_list(text: &str, n_hint: Option<usize>) -> Result<Graph> {
    parse_edge_list_with_report(text, n_hint).map(|(g, _)| g)
}

pub fn parse_edge_list_with_report(
    text: &str,
    n_hint: Option<usize>,
) -> Result<(Graph, ParseReport)> {
    let mut edges = Vec::new();
    let mut max_id = 0u64;
    let mut header_n = 0usize;
    let mut header_edges = None;
    let mut data_lines = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        data_lines += 1;
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if data_lines == 1 && toks.len() == 3 && toks.iter().all(|t| t.parse::<u64>().is_ok()) {
            let rows: usize = toks[0].parse().unwrap();
            let cols: usize = toks[1].parse().unwrap();
            header_n = rows.max(cols);
            header_edges = Some(toks[2].parse().unwrap());
            continue;
        }
        let u = parse_id(toks.first().copied(), line)?;
        let v = parse_id(toks.get(1).copied(), line)?;
        for id in [u, v] {
            if id == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "vertex ids are 1-based; found 0".into(),
                });
            }
        }
        max_id = max_id.max(u).max(v);
        edges.push((u as usize - 1, v as usize - 1));
    }
    if data_lines == 0 {
        return Err(Error::Format("edge list contains no data lines".into()));
    }
    let n = (max_id as usize).max(header_n).max(n_hint.unwrap_or(0));
    let (g, mut report) = Graph::build(n, edges);
    report.header_edges = header_edges;
    Ok((g, report))
}

/// File layout of a graph instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    EdgeList,
}

impl GraphFormat {
    /// Guesses the layout from the first meaningful line: a `p` line means DIMACS.
    pub fn sniff(text: &str) -> Self {
        for raw in text.lines() {
            let t = raw.trim_start();
            if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
                continue;
            }
            if t.starts_with("p ") || t.starts_with("c ") || t == "c" || t.starts_with("e ") {
                return GraphFormat::Dimacs;
            }
            return GraphFormat::EdgeList;
        }
        GraphFormat::EdgeList
    }
}

/// Reads and parses a graph file, sniffing the format when none is given.
pub fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<(Graph, ParseReport)> {
    let text = std::fs::read_to_string(path)?;
    match format.unwrap_or_else(|| GraphFormat::sniff(&text)) {
        GraphFormat::Dimacs => parse_dimacs_with_report(&text),
        GraphFormat::EdgeList => parse_edge_list_with_report(&text, None),
    }
}

/// A graph plus one positive integer weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<i64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::Validation(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.n()
            )));
        }
        if let Some(v) = weights.iter().position(|&w| w < 1) {
            return Err(Error::Validation(format!(
                "vertex {} has non-positive weight {}",
                v + 1,
                weights[v]
            )));
        }
        Ok(Self { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn total_weight(&self, set: &[usize]) -> i64 {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    /// Weight file text: one `<1-based id> <weight>` line per vertex.
    pub fn weights_to_text(&self) -> String {
        let mut out = String::new();
        for (v, w) in self.weights.iter().enumerate() {
            writeln!(out, "{} {}", v + 1, w).unwrap();
        }
        out
    }
}

/// How vertex weights are assigned to a bare graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightScheme {
    /// w(v_i) = (i mod 200) + 1 with i the 1-based id.
    Mod200,
    Unit,
    /// Uniform integers in `[lo, hi]`; the T1 family uses `[20, 70]`.
    UniformRange { lo: i64, hi: i64, seed: u64 },
    /// Uniform integers in `[1, max(1, d(v)²)]` (the T2 family).
    DegreeSquared { seed: u64 },
    FromFile(PathBuf),
}

impl WeightScheme {
    pub fn t1(seed: u64) -> Self {
        WeightScheme::UniformRange { lo: 20, hi: 70, seed }
    }

    pub fn t2(seed: u64) -> Self {
        WeightScheme::DegreeSquared { seed }
    }
}

impl std::str::FromStr for WeightScheme {
    type Err = Error;

    /// Accepts `mod200`, `unit`, `file:PATH`, `t1:SEED`, `t2:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        let seed_of = |rest: &str| {
            rest.parse::<u64>()
                .map_err(|_| Error::Config(format!("bad weight seed {rest:?}")))
        };
        match s {
            "mod200" => Ok(WeightScheme::Mod200),
            "unit" => Ok(WeightScheme::Unit),
            _ => {
                if let Some(p) = s.strip_prefix("file:") {
                    Ok(WeightScheme::FromFile(PathBuf::from(p)))
                } else if let Some(r) = s.strip_prefix("t1:") {
                    Ok(WeightScheme::t1(seed_of(r)?))
                } else if let Some(r) = s.strip_prefix("t2:") {
                    Ok(WeightScheme::t2(seed_of(r)?))
                } else {
                    Err(Error::Config(format!("unknown weight scheme {s:?}")))
                }
            }
        }
    }
}

pub(crate) fn draw_uniform_weights<R: Rng>(n: usize, lo: i64, hi: i64, rng: &mut R) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

pub(crate) fn draw_degree_squared_weights<R: Rng>(g: &Graph, rng: &mut R) -> Vec<i64> {
    (0..g.n())
        .map(|v| {
            let d = g.degree(v) as i64;
            rng.random_range(1..=(d * d).max(1))
        })
        .collect()
}

/// Assigns vertex weights according to `scheme`.
pub fn apply_weighting(g: Graph, scheme: &WeightScheme) -> Result<WeightedGraph> {
    let n = g.n();
    let weights = match scheme {
        WeightScheme::Mod200 => (1..=n as i64).map(|i| i % 200 + 1).collect(),
        WeightScheme::Unit => vec![1; n],
        WeightScheme::UniformRange { lo, hi, seed } => {
            if *lo < 1 || lo > hi {
                return Err(Error::Config(format!("bad weight range [{lo}, {hi}]")));
            }
            draw_uniform_weights(n, *lo, *hi, &mut ChaCha8Rng::seed_from_u64(*seed))
        }
        WeightScheme::DegreeSquared { seed } => {
            draw_degree_squared_weights(&g, &mut ChaCha8Rng::seed_from_u64(*seed))
        }
        WeightScheme::FromFile(path) => parse_weights(&std::fs::read_to_string(path)?, n)?,
    };
    WeightedGraph::new(g, weights)
}

/// Parses `<1-based id> <weight>` lines; every vertex must appear exactly once.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<i64>> {
    let mut weights: Vec<Option<i64>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') || t.starts_with('c') {
            continue;
        }
        let mut toks = t.split_whitespace();
        let id = parse_id(toks.next(), line)?;
        let wtok = toks.next().ok_or_else(|| Error::Parse {
            line,
            msg: "missing weight".into(),
        })?;
        let w: i64 = wtok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad weight {wtok:?}"),
        })?;
        if id == 0 || id > n as u64 {
            return Err(Error::VertexRange { line, id, n });
        }
        if w <= 0 {
            return Err(Error::Validation(format!(
                "line {line}: weight {w} of vertex {id} is not positive"
            )));
        }
        let slot = &mut weights[id as usize - 1];
        if slot.is_some() {
            return Err(Error::Validation(format!(
                "line {line}: vertex {id} given a second weight"
            )));
        }
        *slot = Some(w);
    }
    let missing = weights.iter().filter(|w| w.is_none()).count();
    if missing > 0 {
        return Err(Error::Validation(format!(
            "weight file covers {} of {n} vertices",
            n - missing
        )));
    }
    Ok(weights.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, VecDeque};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn dimacs_basic() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn dimacs_reversed_duplicate() {
        let (g, rep) = parse_dimacs_with_report("p edge 2 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(rep.duplicates, 1);
        assert_eq!(rep.header_edges, Some(2));
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(Error::Format(_))
        ));
        assert!(matches!(parse_dimacs("c nothing\n"), Err(Error::Format(_))));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(Error::VertexRange { line: 2, id: 4, n: 3 })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\nq 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn dimacs_self_loop_dropped() {
        let (g, rep) = parse_dimacs_with_report("c hi\np edge 2 2\ne 1 1\ne 1 2\n").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(rep.self_loops, 1);
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("1 2\n2 3\n3 1", None).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));

        let g = parse_edge_list("% comment\n5 1", Some(6)).unwrap();
        assert_eq!((g.n(), g.m()), (6, 1));
        for v in [1, 2, 3, 5] {
            assert_eq!(g.degree(v), 0);
        }

        let g = parse_edge_list("1 1\n1 2", None).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list("", None), Err(Error::Format(_))));
        assert!(matches!(
            parse_edge_list("% only comments\n", None),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            parse_edge_list("1 2\n2 b\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list_mtx_header_skipped() {
        let g = parse_edge_list("%%MatrixMarket matrix coordinate pattern symmetric\n4 4 2\n1 2\n2 3\n", None)
            .unwrap();
        assert_eq!((g.n(), g.m()), (4, 2));
    }

    #[test]
    fn sniffing() {
        assert_eq!(GraphFormat::sniff("c x\np edge 1 0\n"), GraphFormat::Dimacs);
        assert_eq!(GraphFormat::sniff("% x\n1 2\n"), GraphFormat::EdgeList);
    }

    #[test]
    fn mod200_weights() {
        let g = Graph::from_edges(201, []);
        let wg = apply_weighting(g, &WeightScheme::Mod200).unwrap();
        assert_eq!(wg.weight(0), 2);
        assert_eq!(wg.weight(199), 1);
        assert_eq!(wg.weight(200), 2);
    }

    #[test]
    fn unit_and_degree_squared() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let wg = apply_weighting(g.clone(), &WeightScheme::Unit).unwrap();
        assert!(wg.weights().iter().all(|&w| w == 1));
        let wg = apply_weighting(g, &WeightScheme::t2(9)).unwrap();
        // isolated vertex: interval [1, 1]
        assert_eq!(wg.weight(2), 1);
        assert_eq!(wg.weight(0), 1);
    }

    #[test]
    fn uniform_range_is_seeded() {
        let g = path(500);
        let a = apply_weighting(g.clone(), &WeightScheme::t1(7)).unwrap();
        let b = apply_weighting(g.clone(), &WeightScheme::t1(7)).unwrap();
        let c = apply_weighting(g, &WeightScheme::t1(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.weights().iter().all(|&w| (20..=70).contains(&w)));
    }

    #[test]
    fn weight_file_validation() {
        assert_eq!(parse_weights("1 5\n2 7\n", 2).unwrap(), vec![5, 7]);
        assert!(matches!(parse_weights("1 5\n", 2), Err(Error::Validation(_))));
        assert!(matches!(parse_weights("1 5\n2 0\n", 2), Err(Error::Validation(_))));
        assert!(matches!(parse_weights("1 5\n2 -3\n", 2), Err(Error::Validation(_))));
        assert!(matches!(parse_weights("1 5\n1 6\n2 1\n", 2), Err(Error::Validation(_))));
        assert!(matches!(parse_weights("3 5\n", 2), Err(Error::VertexRange { .. })));
    }

    #[test]
    fn scheme_from_str() {
        assert_eq!("mod200".parse::<WeightScheme>().unwrap(), WeightScheme::Mod200);
        assert_eq!("t1:4".parse::<WeightScheme>().unwrap(), WeightScheme::t1(4));
        assert_eq!("t2:4".parse::<WeightScheme>().unwrap(), WeightScheme::t2(4));
        assert_eq!(
            "file:w.txt".parse::<WeightScheme>().unwrap(),
            WeightScheme::FromFile("w.txt".into())
        );
        assert!("t1:x".parse::<WeightScheme>().is_err());
        assert!("heavy".parse::<WeightScheme>().is_err());
    }

    #[test]
    fn two_level_examples() {
        let mut scratch = TwoHopScratch::new(0);
        let p5 = path(5);
        assert_eq!(set(p5.two_level_neighbors(2, &mut scratch)), set(&[0, 1, 3, 4]));

        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(set(tri.two_level_neighbors(1, &mut scratch)), set(&[0, 2]));

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(set(star.two_level_neighbors(2, &mut scratch)), set(&[0, 1, 3]));
    }

    fn bfs_depth2(g: &Graph, v: usize) -> BTreeSet<u32> {
        let mut dist = vec![usize::MAX; g.n()];
        dist[v] = 0;
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            if dist[x] == 2 {
                continue;
            }
            for &y in g.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x] + 1;
                    q.push_back(y as usize);
                }
            }
        }
        (0..g.n())
            .filter(|&u| u != v && dist[u] <= 2)
            .map(|u| u as u32)
            .collect()
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..50).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |es| Graph::from_edges(n, es))
            })
        }

        proptest! {
            #[test]
            fn two_level_matches_bfs(g in arb_graph()) {
                let mut scratch = TwoHopScratch::new(g.n());
                for v in 0..g.n() {
                    let got = g.two_level_neighbors(v, &mut scratch);
                    let uniq: BTreeSet<u32> = got.iter().copied().collect();
                    prop_assert_eq!(uniq.len(), got.len());
                    prop_assert_eq!(uniq, bfs_depth2(&g, v));
                }
            }

            #[test]
            fn structure_invariants(g in arb_graph()) {
                let mut total = 0;
                for v in 0..g.n() {
                    let row = g.neighbors(v);
                    prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
                    prop_assert!(!row.contains(&(v as u32)));
                    for &u in row {
                        prop_assert!(g.has_edge(u as usize, v));
                    }
                    total += row.len();
                }
                prop_assert_eq!(total, 2 * g.m());
            }

            #[test]
            fn serialization_round_trip(g in arb_graph()) {
                prop_assert_eq!(parse_dimacs(&g.to_dimacs()).unwrap(), g.clone());
                prop_assert_eq!(parse_edge_list(&g.to_edge_list(), None).unwrap(), g);
            }
        }
    }
}
