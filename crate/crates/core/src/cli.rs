//! Command-line front end: `solve`, `bench`, `exact`, `validate`, `gen`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{self, BenchConfig, Verdict};
use crate::cc::CcStrategy;
use crate::error::{Error, Result};
use crate::generator::{self, Family, GenSpec};
use crate::graph::{GraphFormat, WeightScheme};
use crate::oracle;
use crate::scoring::ScoreKind;
use crate::solver::{self, Algo, SolverConfig, TieBreakAge};

#[derive(Parser, Debug)]
#[command(name = "domlite", version, about = "Minimum weight dominating set local search")]
pub struct Cli {
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Vertex weights: mod200 | unit | file:PATH | t1:SEED | t2:SEED.
    #[arg(long, global = true, default_value = "mod200", value_parser = parse_from_str::<WeightScheme>)]
    pub weights: WeightScheme,

    /// Worker threads for `bench`.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    /// Instance file layout; sniffed from the content by default.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Auto)]
    pub graph_format: FormatArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    Dimacs,
    Edges,
}

impl FormatArg {
    fn resolve(self) -> Option<GraphFormat> {
        match self {
            FormatArg::Auto => None,
            FormatArg::Dimacs => Some(GraphFormat::Dimacs),
            FormatArg::Edges => Some(GraphFormat::EdgeList),
        }
    }
}

fn parse_from_str<T>(s: &str) -> std::result::Result<T, String>
where
    T: std::str::FromStr<Err = Error>,
{
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// cc2fs | ccfs | cc2fs-break
    #[arg(long, default_value = "cc2fs", value_parser = parse_from_str::<Algo>)]
    pub algo: Algo,

    /// freq | s1 | s2 | s3 | s4 (overrides the algorithm's scoring)
    #[arg(long, value_parser = parse_from_str::<ScoreKind>)]
    pub score: Option<ScoreKind>,

    /// two-level | one-level | off (overrides the algorithm's strategy)
    #[arg(long, value_parser = parse_from_str::<CcStrategy>)]
    pub cc: Option<CcStrategy>,

    /// Wall-clock budget per run, in seconds.
    #[arg(long, env = "DOMLITE_CUTOFF", default_value_t = 10.0)]
    pub cutoff: f64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// max-elapsed | min-elapsed
    #[arg(long, default_value = "max-elapsed", value_parser = parse_from_str::<TieBreakAge>)]
    pub tie_break_age: TieBreakAge,

    #[arg(long, default_value_t = 256)]
    pub clock_check_interval: u64,

    /// Stop after this many iterations; makes runs reproducible and suppresses wall-clock columns.
    #[arg(long)]
    pub max_steps: Option<u64>,

    /// Evaluate s1..s4 over open neighbourhoods.
    #[arg(long)]
    pub legacy_open_neighborhood: bool,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        let base = self.algo.variant();
        SolverConfig {
            cutoff: self.cutoff,
            seed: self.seed,
            cc: self.cc.unwrap_or(base.cc),
            score: self.score.unwrap_or(base.score),
            break_on_worse: base.break_on_worse,
            tie_break_age: self.tie_break_age,
            clock_check_interval: self.clock_check_interval,
            step_limit: self.max_steps,
            legacy_open_neighborhood: self.legacy_open_neighborhood,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one search on one instance.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the best solution (1-based ids) here.
        #[arg(long)]
        solution_out: Option<PathBuf>,
    },
    /// Run seeded repetitions over instance files and aggregate MIN/AVG/SD/RTime.
    Bench {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Write the aggregate table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one CSV row per run here.
        #[arg(long)]
        runs_out: Option<PathBuf>,
    },
    /// Certified optimum by branch-and-bound (small graphs only).
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
    },
    /// Check that a solution file dominates the graph.
    Validate { graph: PathBuf, solution: PathBuf },
    /// Generate a random connected instance: PATH (edge list) and PATH.weights.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_from_str::<Family>)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn ids_line(set: &[usize]) -> String {
    one_based(set).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SolveJson<'a> {
    instance: String,
    algo: String,
    weight: i64,
    solution: Vec<usize>,
    result: &'a solver::SolveResult,
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(Error::from)
}

/// Runs a parsed command line. Returns the process exit code.
pub fn execute<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    let format = cli.graph_format.resolve();
    match cli.command {
        Command::Solve {
            graph,
            solver,
            solution_out,
        } => {
            let cfg = solver.config();
            let wg = bench::load_instance(&graph, format, &cli.weights)?;
            let res = solver::solve(&wg, &cfg)?;
            let name = bench::instance_name(&graph);
            let algo = cfg.variant().label();
            if let Some(p) = solution_out {
                write_file(&p, &format!("{}\n", ids_line(&res.best_set)))?;
            }
            match cli.format {
                OutputFormat::Json => {
                    let doc = SolveJson {
                        instance: name,
                        algo,
                        weight: res.best_weight,
                        solution: one_based(&res.best_set),
                        result: &res,
                    };
                    serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from)?;
                    writeln!(out)?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "instance,algo,seed,weight,time_to_best,steps,moves")?;
                    let t = if cfg.step_limit.is_some() {
                        "n/a".to_string()
                    } else {
                        format!("{:.2}", res.time_to_best)
                    };
                    writeln!(
                        out,
                        "{name},{algo},{},{},{t},{},{}",
                        res.seed, res.best_weight, res.steps, res.moves
                    )?;
                }
            }
            Ok(0)
        }
        Command::Bench {
            instances,
            solver,
            runs,
            out: out_path,
            runs_out,
        } => {
            let cfg = BenchConfig {
                solver: solver.config(),
                runs,
                workers: cli.workers,
            };
            let report = bench::run_bench(&instances, format, &cli.weights, &cfg)?;
            let mut body = Vec::new();
            match cli.format {
                OutputFormat::Csv => bench::emit_csv(&report.stats, &mut body)?,
                OutputFormat::Json => bench::emit_json(&report, &mut body)?,
            }
            match out_path {
                Some(p) => std::fs::write(p, &body)?,
                None => out.write_all(&body)?,
            }
            if let Some(p) = runs_out {
                let mut rows = Vec::new();
                bench::emit_runs_csv(&report.runs, &mut rows)?;
                std::fs::write(p, rows)?;
            }
            Ok(0)
        }
        Command::Exact { graph, node_budget } => {
            let wg = bench::load_instance(&graph, format, &cli.weights)?;
            let res = oracle::exact_mwds(&wg, node_budget)?;
            match cli.format {
                OutputFormat::Json => {
                    let doc = serde_json::json!({
                        "opt_weight": res.opt_weight,
                        "witness": one_based(&res.witness),
                        "nodes_explored": res.nodes_explored,
                    });
                    writeln!(out, "{doc}")?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "OPT weight={} nodes={}", res.opt_weight, res.nodes_explored)?;
                    writeln!(out, "{}", ids_line(&res.witness))?;
                }
            }
            Ok(0)
        }
        Command::Validate { graph, solution } => {
            let wg = bench::load_instance(&graph, format, &cli.weights)?;
            let set = bench::parse_solution(&std::fs::read_to_string(&solution)?, wg.n())?;
            match bench::judge(&wg, &set)? {
                Verdict::Valid { weight } => {
                    writeln!(out, "VALID weight={weight}")?;
                    Ok(0)
                }
                Verdict::Invalid { uncovered } => {
                    writeln!(out, "INVALID uncovered={uncovered}")?;
                    Ok(1)
                }
            }
        }
        Command::Gen {
            n,
            m,
            family,
            seed,
            out: path,
        } => {
            let wg = generator::generate(&GenSpec { n, m, family, seed })?;
            write_file(&path, &wg.graph().to_edge_list())?;
            let mut wpath = path.clone().into_os_string();
            wpath.push(".weights");
            write_file(Path::new(&wpath), &wg.weights_to_text())?;
            writeln!(out, "wrote {} and {}", path.display(), Path::new(&wpath).display())?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("domlite").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solver_args_compose() {
        let cli = Cli::try_parse_from([
            "domlite", "solve", "g.clq", "--algo", "ccfs", "--score", "s2", "--cutoff", "3",
        ])
        .unwrap();
        let Command::Solve { solver, .. } = cli.command else { panic!() };
        let cfg = solver.config();
        assert_eq!(cfg.cc, CcStrategy::OneLevel);
        assert_eq!(cfg.score.label(), "s2");
        assert_eq!(cfg.cutoff, 3.0);
    }

    #[test]
    fn bad_flags_exit_2() {
        let (code, _, err) = run_capture(&["solve", "g.clq", "--cc", "sideways"]);
        assert_eq!(code, 2);
        assert!(err.contains("sideways"));
        let (code, _, _) = run_capture(&["bench", "--weights", "heavy", "x"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn missing_file_exit_2() {
        let (code, _, err) = run_capture(&["validate", "/nonexistent/g.clq", "/nonexistent/s.txt"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }
}
