use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twovc_core::bounds::{verify_lemma107, BoundReport};
use twovc_core::heuristic::HeuristicConfig;
use twovc_core::instances::InstanceSpec;
use twovc_core::io::{parse_edge_list, write_classes, write_edge_list, write_edges};
use twovc_core::oracle::opt_exact_with_limit;
use twovc_core::phi::DEFAULT_EXHAUSTIVE_LIMIT;
use twovc_core::restructure::PipelineOptions;
use twovc_core::solve::solve;
use twovc_core::verify::{verify_decomposition, verify_subgraph};
use twovc_core::{Backend, EarDecomposition, Edge, Error, Graph};

mod bench;

#[derive(Parser)]
#[command(name = "twovc", version, about = "Sparse 2-connected spanning subgraphs via ear-decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// How the starting decomposition is found.
    #[arg(long, default_value = "exact")]
    backend: Backend,
    /// Largest vertex count for exhaustive searches.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    oracle_limit: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn pipeline(&self) -> PipelineOptions {
        PipelineOptions {
            backend: self.backend,
            exhaustive_limit: self.oracle_limit,
            heuristic: HeuristicConfig {
                seed: self.seed,
                ..HeuristicConfig::default()
            },
            ..PipelineOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a 2-connected spanning subgraph and its certificate (JSON).
    Solve {
        input: PathBuf,
        /// Start from this decomposition instead of searching for one.
        #[arg(long)]
        initial: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a subgraph, decomposition or solve report against a graph.
    Verify {
        graph: PathBuf,
        /// Edge-list file with the candidate subgraph.
        #[arg(long)]
        subgraph: Option<PathBuf>,
        /// Decomposition file.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// JSON report written by `solve`.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the lower bounds for a graph.
    Bound {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Exact optimum by exhaustive search.
    Opt {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generate an instance: tight:K, vv:K, fig1, fig8 or random:N:EXTRA:SEED.
    Gen {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Benchmark table (CSV) over a family.
    Bench(bench::BenchArgs),
    /// Exact and sampled checks of the ratio lemma.
    Lemma107 {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Command failure with its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } => 4,
            _ => 3,
        };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Fail {
    Fail { code: 3, message }
}

type CmdResult = Result<ExitCode, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Fail> {
    parse_edge_list(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Solve {
            input,
            initial,
            common,
        } => {
            let g = read_graph(&input)?;
            let mut opts = common.pipeline();
            if let Some(p) = initial {
                opts.initial = Some(EarDecomposition::parse(&read(&p)?)?);
            }
            let report = solve(&g, &opts)?;
            emit(common.out.as_deref(), &format!("{}\n", report.to_json()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            subgraph,
            decomposition,
            report,
            common,
        } => verify(&graph, subgraph, decomposition, report, &common),
        Command::Bound { input, common } => {
            let g = read_graph(&input)?;
            let r = solve(&g, &common.pipeline())?;
            let bounds = BoundReport::compute(&r.decomposition, &r.reduced, r.bounds.phi_exact)?;
            emit(common.out.as_deref(), &bounds.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Opt { input, common } => {
            let g = read_graph(&input)?;
            let r = opt_exact_with_limit(&g, common.oracle_limit)?;
            let mut text = format!("c opt {}\n", r.value);
            text.push_str(&write_edges(g.n(), r.witness.members.iter().copied()));
            emit(common.out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { spec, common } => {
            let spec: InstanceSpec = spec.parse()?;
            let inst = spec.generate()?;
            let text = write_edge_list(&inst.graph);
            emit(common.out.as_deref(), &text)?;
            if let Some(out) = &common.out {
                if !inst.classes.is_empty() {
                    emit(Some(&out.with_extension("classes")), &write_classes(&inst.classes))?;
                }
                if let Some(ed) = &inst.reference {
                    emit(Some(&out.with_extension("ed")), &ed.to_text())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench(args) => bench::run(&args),
        Command::Lemma107 { samples, common } => {
            let r = verify_lemma107(samples, common.seed)?;
            emit(common.out.as_deref(), &r.to_string())?;
            Ok(if r.ok() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn verify(
    graph: &Path,
    subgraph: Option<PathBuf>,
    decomposition: Option<PathBuf>,
    report: Option<PathBuf>,
    common: &Common,
) -> CmdResult {
    let g = read_graph(graph)?;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut any = false;
    let check_edges = |edges: Vec<Edge>, what: &str, lines: &mut Vec<String>| -> Result<bool, Fail> {
        let r = verify_subgraph(&g, &edges)?;
        lines.push(format!(
            "{what}: {} edges, 2vc {}, 2ec {}",
            r.edges,
            if r.two_connected { "ok" } else { "fail" },
            if r.two_edge_connected { "ok" } else { "fail" }
        ));
        if let Some(p) = &r.problem {
            lines.push(format!("{what}: {p}"));
        }
        Ok(r.ok())
    };
    if let Some(p) = subgraph {
        any = true;
        let h = parse_edge_list(&read(&p)?).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        if h.n() != g.n() {
            return Err(input_error("subgraph has a different vertex count".into()));
        }
        ok &= check_edges(h.edge_vec(), "subgraph", &mut lines)?;
    }
    if let Some(p) = report {
        any = true;
        let v: serde_json::Value =
            serde_json::from_str(&read(&p)?).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        let edges: Vec<Edge> = serde_json::from_value(v["edges"].clone())
            .map_err(|e| input_error(format!("{}: edges: {e}", p.display())))?;
        ok &= check_edges(edges, "report", &mut lines)?;
    }
    if let Some(p) = decomposition {
        any = true;
        let ed = EarDecomposition::parse(&read(&p)?)?;
        let r = verify_decomposition(&g, &ed, common.oracle_limit)?;
        if !r.e1_checked {
            lines.push("decomposition: (E1) not checked, graph above the oracle limit".into());
        }
        for p in &r.problems {
            lines.push(format!("decomposition: {p}"));
        }
        lines.push(format!("decomposition: {}", if r.ok() { "ok" } else { "fail" }));
        ok &= r.ok();
    }
    if !any {
        return Err(input_error("give --subgraph, --decomposition or --report".into()));
    }
    lines.push(if ok { "ok".into() } else { "violation".into() });
    emit(common.out.as_deref(), &(lines.join("\n") + "\n"))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}
