//! `intgraph`: execution, measurement, orthogonality and proof
//! interpretation on the command line.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 bad input,
//! 3 divergent execution.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use intgraph_core::cat::dsl::parse_proof_file;
use intgraph_core::cat::figure1::{figure1_experiment, Figure1Input};
use intgraph_core::cat::interpret::{certify, check_behaviours, reduction_equiv};
use intgraph_core::cat::Valuation;
use intgraph_core::graph::{execute, Plugging};
use intgraph_core::json;
use intgraph_core::matrix::{execute_aggregated, JunctionSystem};
use intgraph_core::measure::measure_graphs;
use intgraph_core::project::{pairing, tensor};
use intgraph_core::suites::{run_suite, SuiteConfig};
use intgraph_core::{CircuitMap, Error, MeasureParam, Project, WeightedGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "intgraph", version, about = "Interaction graphs for MALL")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Circuit measure: `logdet`, `inf` or `trunc:L`.
    #[arg(long, global = true, default_value = "logdet")]
    measure: String,
    /// JSON table `{"n/d": value, "*": default}` used with `trunc:L`
    /// instead of `-log(1 - w)`.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    /// Print the junction system of each plugging to stderr.
    #[arg(long, global = true)]
    explain: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Execute two graphs.
    Exec {
        f: PathBuf,
        g: PathBuf,
        /// Sum the alternating paths in closed form and print the matrix.
        #[arg(long)]
        aggregated: bool,
        /// Also write the result as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Measure the circuits between two graphs.
    Measure { f: PathBuf, g: PathBuf },
    /// Orthogonality of two projects; exits 1 when they are not orthogonal.
    Orth { a: PathBuf, b: PathBuf },
    /// Pairing of two projects.
    Pair { a: PathBuf, b: PathBuf },
    /// Tensor product of two projects with disjoint carriers.
    Tensor { a: PathBuf, b: PathBuf },
    /// Interpret a proof and certify it against its conclusion.
    Interpret {
        /// Proof in the s-expression syntax; omit with `--figure1`.
        proof: Option<PathBuf>,
        /// JSON object from atom names to single-vertex behaviours.
        #[arg(long)]
        valuation: Option<PathBuf>,
        /// Reduce one cut and compare the two interpretations.
        #[arg(long)]
        reduce: bool,
        /// Reject the multiplicative units.
        #[arg(long)]
        behaviours: bool,
        /// Run the additive cut experiment on the atom `X` of the valuation.
        #[arg(long)]
        figure1: bool,
    },
    /// Run a randomized property suite.
    Check { suite: String },
    /// Print a graph as DOT.
    ExportDot {
        graph: PathBuf,
        #[arg(long, default_value = "G")]
        name: String,
    },
}

enum Failure {
    Property(String),
    Input(anyhow::Error),
    Divergent(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Divergent) => Failure::Divergent(format!("{e:#}")),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Divergent(msg)) => {
            eprintln!("divergent: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    json::parse_value(&src).with_context(|| path.display().to_string())
}

fn read_graph(path: &Path) -> anyhow::Result<WeightedGraph> {
    json::graph_from_json(&read_json(path)?).with_context(|| path.display().to_string())
}

fn read_project(path: &Path) -> anyhow::Result<Project> {
    json::project_from_json(&read_json(path)?).with_context(|| path.display().to_string())
}

fn measure_param(g: &Global) -> anyhow::Result<MeasureParam> {
    let table = g
        .table
        .as_deref()
        .map(|p| json::table_from_json(&read_json(p)?).with_context(|| p.display().to_string()))
        .transpose()?;
    let param = match g.measure.as_str() {
        "logdet" => MeasureParam::LogDet,
        "inf" => MeasureParam::AlwaysInfinite,
        s => {
            let len = s
                .strip_prefix("trunc:")
                .and_then(|l| l.parse::<usize>().ok())
                .ok_or_else(|| anyhow!("--measure must be logdet, inf or trunc:L, got {s:?}"))?;
            MeasureParam::Truncated {
                map: table.clone().map_or(CircuitMap::NegLogOneMinus, CircuitMap::Table),
                max_len: len,
            }
        }
    };
    if table.is_some() && !matches!(param, MeasureParam::Truncated { .. }) {
        return Err(anyhow!("--table needs --measure trunc:L"));
    }
    Ok(param)
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn explain(global: &Global, f: &WeightedGraph, g: &WeightedGraph) {
    if global.explain {
        eprint!("{}", JunctionSystem::build(f, g).explain());
    }
}

fn diagnose_divergence(f: &WeightedGraph, g: &WeightedGraph) -> Failure {
    let plug = Plugging::new(f, g);
    let cycle = plug.divergence_witness().unwrap_or_default();
    let steps: Vec<String> = cycle
        .iter()
        .map(|&e| {
            let edge = plug.edge(e);
            format!("{e}: {} -> {} ({})", edge.src, edge.tgt, edge.weight)
        })
        .collect();
    Failure::Divergent(format!(
        "infinitely many alternating paths through the cycle [{}]",
        steps.join(", ")
    ))
}

fn run(cli: &Cli) -> Outcome {
    let global = &cli.global;
    match &cli.command {
        Command::Exec { f, g, aggregated, dot } => {
            let (f, g) = (read_graph(f)?, read_graph(g)?);
            explain(global, &f, &g);
            if *aggregated {
                let m = execute_aggregated(&f, &g).map_err(|_| diagnose_divergence(&f, &g))?;
                print(&json::matrix_to_json(&m));
                return Ok(());
            }
            let h = match execute(&f, &g) {
                Err(Error::Divergent) => return Err(diagnose_divergence(&f, &g)),
                r => r?,
            };
            if let Some(path) = dot {
                fs::write(path, h.to_dot("F_G")).with_context(|| format!("writing {}", path.display()))?;
            }
            print(&json::graph_to_json(&h));
            Ok(())
        }
        Command::Measure { f, g } => {
            let (f, g) = (read_graph(f)?, read_graph(g)?);
            explain(global, &f, &g);
            let m = measure_graphs(&f, &g, &measure_param(global)?)?;
            print(&json!({
                "value": json::ext_to_json(&m.value),
                "display": m.value.to_string(),
                "approx": m.value.to_f64(),
                "exact": m.exact,
            }));
            Ok(())
        }
        Command::Orth { a, b } | Command::Pair { a, b } => {
            let (a, b) = (read_project(a)?, read_project(b)?);
            let v = pairing(&a, &b, &measure_param(global)?)?;
            let orthogonal = v.is_finite_nonzero();
            print(&json!({
                "pairing": json::ext_to_json(&v),
                "display": v.to_string(),
                "orthogonal": orthogonal,
            }));
            if matches!(cli.command, Command::Orth { .. }) && !orthogonal {
                return Err(Failure::Property(format!("not orthogonal: pairing is {v}")));
            }
            Ok(())
        }
        Command::Tensor { a, b } => {
            let (a, b) = (read_project(a)?, read_project(b)?);
            print(&json::project_to_json(&tensor(&a, &b)?));
            Ok(())
        }
        Command::Interpret {
            proof,
            valuation,
            reduce,
            behaviours,
            figure1,
        } => {
            let p = measure_param(global)?;
            let val = match valuation {
                Some(path) => json::valuation_from_json(&read_json(path)?).with_context(|| path.display().to_string())?,
                None => Valuation::default(),
            };
            if *figure1 {
                let report = figure1_experiment(&Figure1Input::identities(val.template("X")?), &p)?;
                println!("{report}");
                return if report.ok() {
                    Ok(())
                } else {
                    Err(Failure::Property("additive cut experiment failed".into()))
                };
            }
            let path = proof.as_deref().ok_or_else(|| anyhow!("a proof file is required unless --figure1 is given"))?;
            let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (proof, expected) = parse_proof_file(&src).with_context(|| path.display().to_string())?;
            if *behaviours {
                check_behaviours(&proof)?;
            }
            let report = certify(&proof, &val, &p)?;
            let mut out = json!({
                "conclusion": report.conclusion.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "project": json::project_to_json(&report.project),
                "pairings": report.pairings.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "certified": report.certified(),
                "failure": report.failure,
            });
            let mut ok = report.certified();
            if *reduce {
                let reduct = proof.reduce_step()?;
                let equiv = reduction_equiv(&proof, &reduct, &val, &p)?;
                let matches_expected = expected.as_ref().map(|e| *e == reduct);
                ok &= equiv && matches_expected != Some(false);
                out["reduction"] = json!({
                    "reduct": reduct.to_string(),
                    "equiv": equiv,
                    "matches_expected": matches_expected,
                });
            }
            print(&out);
            if ok {
                Ok(())
            } else {
                Err(Failure::Property("interpretation not certified or reduction not equivalent".into()))
            }
        }
        Command::Check { suite } => {
            let mut cfg = SuiteConfig::new(global.seed, global.trials);
            cfg.tolerance = global.tolerance;
            let report = run_suite(suite, &cfg)?;
            print(&report.to_json());
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Property(format!("{} of {} trials failed", report.failed, report.trials)))
            }
        }
        Command::ExportDot { graph, name } => {
            print!("{}", read_graph(graph)?.to_dot(name));
            Ok(())
        }
    }
}
