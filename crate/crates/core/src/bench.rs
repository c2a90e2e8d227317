//! Multi-seed benchmark harness and its report formats.
//!
//! Run `i` of an instance uses seed `seed0 + i`. Work units are
//! (instance, run) pairs pulled by a fixed pool of worker threads; results
//! are reduced in unit order, so output does not depend on the worker count.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{apply_weighting, read_graph, GraphFormat, WeightScheme, WeightedGraph};
use crate::oracle;
use crate::solver::{solve, SolveResult, SolverConfig};

/// Aggregate over the runs of one (instance, algorithm) pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub instance: String,
    pub algo: String,
    pub runs: usize,
    pub min_weight: Option<i64>,
    pub avg_weight: Option<f64>,
    /// Population standard deviation of the best weights.
    pub sd: Option<f64>,
    /// Time-to-best of the first run that reached `min_weight`; `None` when untimed.
    pub rtime_best: Option<f64>,
    /// Mean time-to-best over all runs; `None` when untimed.
    pub rtime_avg: Option<f64>,
    pub cutoff: f64,
    pub seed0: u64,
    pub error: Option<String>,
}

/// One solver run inside a benchmark.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub algo: String,
    pub run: usize,
    pub seed: u64,
    pub weight: i64,
    pub time_to_best: Option<f64>,
    pub steps_to_best: u64,
    pub steps: u64,
    pub valid: bool,
    /// 1-based ids.
    pub solution: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub stats: Vec<RunStats>,
    pub runs: Vec<RunRecord>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solver: SolverConfig,
    pub runs: usize,
    pub workers: usize,
}

impl BenchConfig {
    /// Wall-clock times are reported only when no step limit makes runs reproducible.
    pub fn timed(&self) -> bool {
        self.solver.step_limit.is_none()
    }
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .or_else(|| path.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load_instance(path: &Path, format: Option<GraphFormat>, weights: &WeightScheme) -> Result<WeightedGraph> {
    let (g, _) = read_graph(path, format)?;
    apply_weighting(g, weights)
}

/// Loads every instance file and benchmarks it; unreadable files become failed rows.
pub fn run_bench(
    instances: &[PathBuf],
    format: Option<GraphFormat>,
    weights: &WeightScheme,
    cfg: &BenchConfig,
) -> Result<BenchReport> {
    let loaded: Vec<(String, Result<WeightedGraph>)> = instances
        .iter()
        .map(|p| (instance_name(p), load_instance(p, format, weights)))
        .collect();
    bench_graphs(loaded, cfg)
}

/// Benchmarks already-built instances.
pub fn bench_graphs(instances: Vec<(String, Result<WeightedGraph>)>, cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.solver.validate()?;
    if cfg.runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    let algo = cfg.solver.variant().label();
    let units: Vec<(usize, usize)> = instances
        .iter()
        .enumerate()
        .filter(|(_, (_, g))| g.is_ok())
        .flat_map(|(i, _)| (0..cfg.runs).map(move |r| (i, r)))
        .collect();

    let results: Vec<Mutex<Option<Result<SolveResult>>>> = units.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.workers.clamp(1, units.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, r)) = units.get(k) else { break };
                let wg = instances[i].1.as_ref().expect("only loaded instances are scheduled");
                let run_cfg = SolverConfig {
                    seed: cfg.solver.seed.wrapping_add(r as u64),
                    ..cfg.solver.clone()
                };
                *results[k].lock().unwrap() = Some(solve(wg, &run_cfg));
            });
        }
    });

    let timed = cfg.timed();
    let mut report = BenchReport::default();
    let mut results = results.into_iter().map(|m| m.into_inner().unwrap().expect("every unit ran"));
    for (name, loaded) in &instances {
        let failed = |error: String| RunStats {
            instance: name.clone(),
            algo: algo.clone(),
            runs: 0,
            min_weight: None,
            avg_weight: None,
            sd: None,
            rtime_best: None,
            rtime_avg: None,
            cutoff: cfg.solver.cutoff,
            seed0: cfg.solver.seed,
            error: Some(error),
        };
        let wg = match loaded {
            Ok(wg) => wg,
            Err(e) => {
                report.stats.push(failed(e.to_string()));
                continue;
            }
        };
        let mut records = Vec::with_capacity(cfg.runs);
        let mut first_error = None;
        for r in 0..cfg.runs {
            match results.next().unwrap() {
                Ok(res) => records.push(RunRecord {
                    instance: name.clone(),
                    algo: algo.clone(),
                    run: r,
                    seed: res.seed,
                    weight: res.best_weight,
                    time_to_best: timed.then_some(res.time_to_best),
                    steps_to_best: res.steps_to_best,
                    steps: res.steps,
                    valid: oracle::validate(wg, &res.best_set)?,
                    solution: res.best_set.iter().map(|v| v + 1).collect(),
                }),
                Err(e) => {
                    first_error.get_or_insert_with(|| e.to_string());
                }
            }
        }
        match first_error {
            Some(e) => report.stats.push(failed(e)),
            None => report.stats.push(aggregate(name, &algo, &records, cfg)),
        }
        report.runs.extend(records);
    }
    Ok(report)
}

fn aggregate(name: &str, algo: &str, records: &[RunRecord], cfg: &BenchConfig) -> RunStats {
    let k = records.len() as f64;
    let min = records.iter().map(|r| r.weight).min().expect("runs >= 1");
    let avg = records.iter().map(|r| r.weight as f64).sum::<f64>() / k;
    let var = records.iter().map(|r| (r.weight as f64 - avg).powi(2)).sum::<f64>() / k;
    let best_run = records.iter().find(|r| r.weight == min).unwrap();
    let rtime_avg = if cfg.timed() {
        Some(records.iter().filter_map(|r| r.time_to_best).sum::<f64>() / k)
    } else {
        None
    };
    RunStats {
        instance: name.to_string(),
        algo: algo.to_string(),
        runs: records.len(),
        min_weight: Some(min),
        avg_weight: Some(avg),
        sd: Some(var.sqrt()),
        rtime_best: best_run.time_to_best,
        rtime_avg,
        cutoff: cfg.solver.cutoff,
        seed0: cfg.solver.seed,
        error: None,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fixed2(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.2}"))
}

pub const CSV_HEADER: &str = "instance,algo,runs,min,avg,sd,rtime_best,cutoff,seed0";

/// Writes the aggregate table: header plus one row per [`RunStats`].
pub fn emit_csv<W: Write>(stats: &[RunStats], sink: &mut W) -> std::io::Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for s in stats {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{:.2},{}",
            csv_field(&s.instance),
            csv_field(&s.algo),
            s.runs,
            s.min_weight.map_or_else(|| "n/a".to_string(), |w| w.to_string()),
            fixed2(s.avg_weight),
            fixed2(s.sd),
            fixed2(s.rtime_best),
            s.cutoff,
            s.seed0
        )?;
    }
    Ok(())
}

/// Writes one row per individual run.
pub fn emit_runs_csv<W: Write>(runs: &[RunRecord], sink: &mut W) -> std::io::Result<()> {
    writeln!(sink, "instance,algo,run,seed,weight,time_to_best,steps_to_best,steps,valid")?;
    for r in runs {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{},{}",
            csv_field(&r.instance),
            csv_field(&r.algo),
            r.run,
            r.seed,
            r.weight,
            fixed2(r.time_to_best),
            r.steps_to_best,
            r.steps,
            r.valid
        )?;
    }
    Ok(())
}

pub fn emit_json<W: Write>(report: &BenchReport, sink: &mut W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, report)?;
    writeln!(sink)
}

/// Outcome of checking a proposed solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid { weight: i64 },
    Invalid { uncovered: usize },
}

/// Parses whitespace-separated 1-based ids; repeated ids count once.
pub fn parse_solution(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let t = line.trim();
        if t.starts_with('#') || t.starts_with('%') || t.starts_with('c') {
            continue;
        }
        for tok in t.split_whitespace() {
            let id: u64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad vertex id {tok:?}"),
            })?;
            if id == 0 || id > n as u64 {
                return Err(Error::VertexRange { line: line_no, id, n });
            }
            ids.push(id as usize - 1);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

pub fn judge(wg: &WeightedGraph, set: &[usize]) -> Result<Verdict> {
    let uncovered = oracle::count_undominated(wg, set)?;
    Ok(if uncovered == 0 {
        Verdict::Valid {
            weight: wg.total_weight(set),
        }
    } else {
        Verdict::Invalid { uncovered }
    })
}
