//! `basisgraph`: generate set systems and graphs, check local conditions,
//! build universal covers, reconstruct matroids.
//!
//! Reports go to stdout as JSON, a short summary goes to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use basis_core::conditions::{
    check_link_condition, check_positioning, check_square_pyramid, check_triangle_condition, ConditionReport,
};
use basis_core::cover::{build_universal_cover_checked, default_budget, verdict, verify_cover, write_cover};
use basis_core::graph::{read_graph, write_graph, ParseError};
use basis_core::matroid::{
    antipodal_action, complete_matroid, even_delta_free, graphic_matroid, quotient, read_bases, uniform_matroid,
    verify_matroid, write_bases, DEFAULT_BASES_BUDGET, DEFAULT_EDGE_BUDGET,
};
use basis_core::reconstruct::{ReconstructOptions, DEFAULT_NODE_BUDGET};
use basis_core::{
    basis_graph, build_universal_cover, maurer_check, reconstruct_matroid, CheckOptions, CoverError, Coverage, Graph,
    Mode, WideSetSystem,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "basisgraph", version, about = "Basis graphs, their local conditions and universal covers")]
struct Cli {
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock milliseconds to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a bases file, or a graph file for `hn`.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output path; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the condition battery on a graph (or on the basis graph of a bases file).
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = CliMode::Matroid)]
        mode: CliMode,
        /// Also check the conditions anchored at this vertex.
        #[arg(long)]
        basepoint: Option<usize>,
        /// Sample this many instances per condition instead of scanning all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the universal cover of the triangle-square complex.
    Cover {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        /// Vertex budget; defaults to 64 times the vertex count.
        #[arg(long)]
        budget: Option<usize>,
        /// Verify the finished cover property by property.
        #[arg(long)]
        verify: bool,
        /// Verify every level while building.
        #[arg(long)]
        checked: bool,
        /// Write the cover graph, its map and its levels here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Recover a matroid whose basis graph is the input.
    Reconstruct {
        graph: PathBuf,
        /// Write the bases here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// All k-subsets of an m-set.
    Uniform { m: usize, k: usize },
    /// All n-subsets of a 2n-set.
    Complete { n: usize },
    /// Spanning trees of a graph file; element i is the i-th edge.
    Graphic { graph: PathBuf },
    /// Basis graph of the complete matroid on 2n elements modulo complementation.
    Hn { n: usize },
    /// All even subsets of an m-set.
    EvenDeltaFree { m: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Matroid,
    EvenDelta,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Resource(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Resource(_) => "resource",
            Failure::Input(_) => "input",
        }
    }
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

/// Everything a command contributes to the report.
struct Outcome {
    pass: bool,
    seed: u64,
    result: Value,
    summary: String,
}

struct Session {
    inputs: Vec<InputDigest>,
}

impl Session {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))
    }

    /// A graph file, or a bases file standing for its basis graph.
    fn read_graph(&mut self, path: &Path) -> Result<Graph, Failure> {
        let text = self.read(path)?;
        let parse = |e: ParseError| Failure::Input(format!("{}: {e}", path.display()));
        let header = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        if header.is_some_and(|h| h.starts_with("ground")) {
            let ss: WideSetSystem = read_bases(&text).map_err(parse)?;
            Ok(basis_graph(&ss).graph)
        } else {
            read_graph(&text).map_err(parse)
        }
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(s: &mut Session, kind: &GenKind, out: Option<&Path>) -> Result<Outcome, Failure> {
    let budget = |e: basis_core::SetSystemError| Failure::Resource(e.to_string());
    let (text, result, summary) = match kind {
        GenKind::Hn { n } => {
            if *n < 2 {
                return Err(Failure::Input("hn needs n >= 2".into()));
            }
            let (_, action) = antipodal_action::<u128>(*n, DEFAULT_BASES_BUDGET).map_err(budget)?;
            let q = quotient(&action).map_err(|e| Failure::Input(e.to_string()))?;
            let g = q.graph;
            let result = json!({"kind": "graph", "vertices": g.n(), "edges": g.edge_count()});
            let summary = format!("H_{n}: {} vertices, {} edges", g.n(), g.edge_count());
            (write_graph(&g), result, summary)
        }
        _ => {
            let ss: WideSetSystem = match kind {
                GenKind::Uniform { m, k } => {
                    if k > m {
                        return Err(Failure::Input(format!("k = {k} exceeds m = {m}")));
                    }
                    uniform_matroid(*m, *k, DEFAULT_BASES_BUDGET).map_err(budget)?
                }
                GenKind::Complete { n } => complete_matroid(*n, DEFAULT_BASES_BUDGET).map_err(budget)?,
                GenKind::EvenDeltaFree { m } => even_delta_free(*m, DEFAULT_BASES_BUDGET).map_err(budget)?,
                GenKind::Graphic { graph } => {
                    let g = s.read_graph(graph)?;
                    let edges: Vec<_> = g.edges().collect();
                    graphic_matroid(g.n(), &edges, DEFAULT_EDGE_BUDGET).map_err(|e| match e {
                        basis_core::matroid::GraphicError::Disconnected => Failure::Input(e.to_string()),
                        _ => Failure::Resource(e.to_string()),
                    })?
                }
                GenKind::Hn { .. } => unreachable!(),
            };
            let result = json!({"kind": "bases", "ground": ss.ground(), "bases": ss.len()});
            let summary = format!("{} bases over ground {}", ss.len(), ss.ground());
            (write_bases(&ss), result, summary)
        }
    };
    write_out(out, &text)?;
    Ok(Outcome { pass: true, seed: 0, result, summary })
}

fn check(
    s: &mut Session,
    path: &Path,
    mode: CliMode,
    basepoint: Option<usize>,
    sample: Option<usize>,
    seed: u64,
) -> Result<Outcome, Failure> {
    let g = s.read_graph(path)?;
    if let Some(v) = basepoint.filter(|&v| v >= g.n()) {
        return Err(Failure::Input(format!("basepoint {v} is not a vertex of a graph with {} vertices", g.n())));
    }
    let coverage = match sample {
        Some(samples) => Coverage::Sampled { samples, seed },
        None => Coverage::auto(g.n(), seed),
    };
    let opts = CheckOptions { coverage, ..CheckOptions::default() };
    let mode = match mode {
        CliMode::Matroid => Mode::Matroid,
        CliMode::EvenDelta => Mode::EvenDelta,
    };
    let Ok(mut report) = maurer_check(&g, mode, &opts) else {
        let result = json!({"mode": mode, "pass": false, "disconnected": true});
        return Ok(Outcome { pass: false, seed, result, summary: "disconnected graph".into() });
    };
    if let Some(v) = basepoint {
        let connected = "checked above";
        let mut extra: Vec<ConditionReport> = vec![check_positioning(&g, Some(v), &opts).expect(connected)];
        if mode == Mode::Matroid {
            extra.push(check_triangle_condition(&g, v, &opts).expect(connected));
            extra.push(check_square_pyramid(&g, v, &opts).expect(connected));
            extra.push(check_link_condition(&g, Some(v), &opts).0);
        }
        report.pass &= extra.iter().all(|r| r.pass);
        report.reports.extend(extra);
    }
    let summary = report
        .reports
        .iter()
        .map(|r| format!("{} {}", r.condition, if r.pass { "pass" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome {
        pass: report.pass,
        seed,
        result: serde_json::to_value(&report).expect("reports serialize"),
        summary,
    })
}

fn cover(
    s: &mut Session,
    path: &Path,
    basepoint: usize,
    budget: Option<usize>,
    verify: bool,
    checked: bool,
    export: Option<&Path>,
) -> Result<Outcome, Failure> {
    let g = s.read_graph(path)?;
    let budget = budget.unwrap_or_else(|| default_budget(&g));
    let built = if checked {
        build_universal_cover_checked(&g, basepoint, budget)
    } else {
        build_universal_cover(&g, basepoint, budget)
    };
    let state = match built {
        Ok(state) => state,
        Err(e @ CoverError::BudgetExceeded { .. }) => return Err(Failure::Resource(e.to_string())),
        Err(CoverError::HypothesisViolation { level, failure }) => {
            let summary = format!("level {level} breaks property {}", failure.property);
            let result = json!({"pass": false, "hypothesis_violation": {"level": level, "failure": failure}});
            return Ok(Outcome { pass: false, seed: 0, result, summary });
        }
        Err(e) => return Err(Failure::Input(e.to_string())),
    };
    let v = verdict(&state).map_err(|e| Failure::Input(e.to_string()))?;
    let mut pass = true;
    let mut result = json!({ "verdict": v });
    if verify {
        let report = verify_cover(&state);
        pass = report.pass;
        result["verification"] = serde_json::to_value(&report).expect("reports serialize");
    }
    result["pass"] = pass.into();
    if let Some(p) = export {
        write_out(Some(p), &write_cover(&state))?;
    }
    let summary = format!(
        "{} sheets, cover of {} vertices over {} levels{}",
        v.sheets,
        v.cover.vertices,
        v.level_sizes.len(),
        if verify { if pass { ", verified" } else { ", verification FAILED" } } else { "" }
    );
    Ok(Outcome { pass, seed: 0, result, summary })
}

fn reconstruct(s: &mut Session, path: &Path, out: Option<&Path>) -> Result<Outcome, Failure> {
    let g = s.read_graph(path)?;
    if g.n() == 0 {
        return Err(Failure::Input("empty graph".into()));
    }
    let seed = 0;
    let opts = ReconstructOptions {
        basepoint: 0,
        check: CheckOptions { coverage: Coverage::auto(g.n(), seed), ..CheckOptions::default() },
        node_budget: DEFAULT_NODE_BUDGET,
    };
    match reconstruct_matroid::<u128>(&g, &opts) {
        Ok(r) => {
            let ss = r.matroid.sorted();
            let exchange = verify_matroid(&ss).holds();
            if let Some(p) = out {
                write_out(Some(p), &write_bases(&ss))?;
            }
            let result = json!({
                "pass": true,
                "ground": ss.ground(),
                "bases": ss.len(),
                "exchange_axiom": exchange,
            });
            let summary = format!("{} bases over ground {}", ss.len(), ss.ground());
            Ok(Outcome { pass: true, seed, result, summary })
        }
        Err(e) => {
            let summary = format!("not a basis graph (stage {:?})", e.stage);
            let result = json!({"pass": false, "not_a_basis_graph": e});
            Ok(Outcome { pass: false, seed, result, summary })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Check { .. } => "check",
        Command::Cover { .. } => "cover",
        Command::Reconstruct { .. } => "reconstruct",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let start = Instant::now();
    let mut session = Session { inputs: Vec::new() };
    let outcome = match &cli.command {
        Command::Gen { kind, out } => gen(&mut session, kind, out.as_deref()),
        Command::Check { graph, mode, basepoint, sample, seed } => {
            check(&mut session, graph, *mode, *basepoint, *sample, *seed)
        }
        Command::Cover { graph, basepoint, budget, verify, checked, export } => {
            cover(&mut session, graph, *basepoint, *budget, *verify, *checked, export.as_deref())
        }
        Command::Reconstruct { graph, out } => reconstruct(&mut session, graph, out.as_deref()),
    };
    let mut report = json!({
        "schema": SCHEMA,
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "inputs": session.inputs,
        "seed": match &cli.command {
            Command::Check { seed, .. } => *seed,
            _ => 0,
        },
    });
    let (code, summary) = match outcome {
        Ok(o) => {
            report["pass"] = o.pass.into();
            report["seed"] = o.seed.into();
            report["result"] = o.result;
            (u8::from(!o.pass), o.summary)
        }
        Err(f) => {
            report["pass"] = false.into();
            report["error"] = json!({"kind": f.kind(), "message": f.to_string()});
            (f.code(), format!("error: {f}"))
        }
    };
    if cli.timing {
        report["timing_ms"] = (start.elapsed().as_millis() as u64).into();
    }
    // `gen` without --out owns stdout for the file itself.
    let file_on_stdout = matches!(&cli.command, Command::Gen { out: None, .. }) && code == 0;
    if !file_on_stdout {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    }
    eprintln!("{summary}");
    ExitCode::from(code)
}
