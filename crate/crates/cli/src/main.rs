//! Command-line front end: solve, check, construct and verify.
//!
//! Exit codes: 0 on success, 1 when a check or verification suite fails,
//! 2 on usage or input errors.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use metricdim::chain::ChainLayout;
use metricdim::dsl::{eval_spec, parse_spec, EvalOutput};
use metricdim::graph::Graph;
use metricdim::resolver::{
    certify_no_generator_of_size, check_generator, exact_dimension, Certificate, CertifyOutcome,
    Kind, LandmarkSet, SolveOptions,
};
use metricdim::run_suite;

#[derive(Parser)]
#[command(
    name = "metricdim",
    about = "Exact certified metric and edge metric dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the (edge) metric dimension of a graph.
    Dim(DimArgs),
    /// Check whether a vertex set resolves all vertices (or edges).
    Check {
        /// Construction expression, or path to an edge-list file.
        input: String,
        /// Comma-separated vertex ids.
        #[arg(long, value_name = "a,b,c")]
        set: String,
        #[command(flatten)]
        kind: KindFlag,
    },
    /// Evaluate a construction expression and print its edge list.
    Construct {
        /// Construction expression.
        spec: String,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: prop1, thm4, lemma3, bounds, star, torus, all.
        suite: String,
        /// Include the larger instances.
        #[arg(long)]
        extended: bool,
        /// Emit reports as JSON.
        #[arg(long)]
        json: bool,
        /// Seed for the randomized suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct DimArgs {
    /// Construction expression, or path to an edge-list file.
    input: String,
    #[command(flatten)]
    kind: KindFlag,
    /// Additionally refute the size below the computed dimension by
    /// exhaustive enumeration and report the number of sets checked.
    #[arg(long)]
    certify: bool,
    /// Emit the result as a single JSON object.
    #[arg(long)]
    json: bool,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Force the single-threaded, reproducible search order even when
    /// --threads is given.
    #[arg(long)]
    deterministic: bool,
    /// Search node budget; on exhaustion only an upper bound is
    /// reported.
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
    /// Decomposition lower bound: "auto" derives pieces from chain
    /// constructions, "none" disables them.
    #[arg(long, default_value = "auto", value_parser = ["auto", "none"])]
    pieces: String,
}

#[derive(Args)]
struct KindFlag {
    /// Use the edge metric dimension instead of the metric dimension.
    #[arg(long)]
    edge: bool,
}

impl KindFlag {
    fn kind(&self) -> Kind {
        if self.edge {
            Kind::EdgeMetric
        } else {
            Kind::VertexMetric
        }
    }
}

/// Files win over expressions: an existing path is read as an edge list,
/// anything else is parsed as a construction expression.
fn load_input(input: &str) -> Result<EvalOutput, String> {
    if Path::new(input).is_file() {
        let text =
            fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?;
        let g = Graph::parse_edge_list(&text).map_err(|e| format!("{input}: {e}"))?;
        return Ok(EvalOutput::Plain(g));
    }
    let spec = parse_spec(input).map_err(|e| e.to_string())?;
    eval_spec(&spec).map_err(|e| e.to_string())
}

fn parse_set(text: &str) -> Result<LandmarkSet, String> {
    let mut ids = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        ids.push(
            part.parse::<u32>()
                .map_err(|_| format!("invalid vertex id '{part}'"))?,
        );
    }
    Ok(LandmarkSet::new(ids))
}

fn chain_pieces(
    layout: &ChainLayout,
    kind: Kind,
    opts: &SolveOptions,
) -> Result<Vec<metricdim::resolver::BoundaryPiece>, String> {
    let mut dims = Vec::with_capacity(layout.k());
    let mut cache: Vec<(usize, u32)> = Vec::new();
    for copy in layout.copies() {
        let dim = match cache.iter().find(|(n, _)| *n == copy.base_n) {
            Some(&(_, d)) => d,
            None => {
                let base = metricdim::complete(copy.base_n).map_err(|e| e.to_string())?;
                let (sg, _) = metricdim::subdivide(&base);
                let result = exact_dimension(&sg, kind, opts).map_err(|e| e.to_string())?;
                if result.certificate != Certificate::Certified {
                    return Err("piece dimension not certified within budget".into());
                }
                cache.push((copy.base_n, result.dimension));
                result.dimension
            }
        };
        dims.push(dim);
    }
    Ok(layout.boundary_pieces(kind, &dims))
}

fn cmd_dim(args: &DimArgs) -> Result<ExitCode, String> {
    let kind = args.kind.kind();
    let output = load_input(&args.input)?;
    let mut opts = SolveOptions {
        threads: args.threads.max(1),
        deterministic: args.deterministic || args.threads <= 1,
        ..SolveOptions::default()
    };
    if let Some(b) = args.budget {
        opts.node_budget = b;
    }
    if args.pieces == "auto" {
        if let EvalOutput::Chain(layout) = &output {
            opts.pieces = chain_pieces(layout, kind, &opts)?;
        }
    }
    let g = output.graph();
    let mut result = exact_dimension(g, kind, &opts).map_err(|e| e.to_string())?;
    if args.certify && result.certificate == Certificate::Certified && result.dimension > 0 {
        let outcome = certify_no_generator_of_size(
            g,
            kind,
            result.dimension as usize - 1,
            opts.node_budget,
        )
        .map_err(|e| e.to_string())?;
        match outcome {
            CertifyOutcome::Refuted { sets_checked } => {
                result.stats.sets_checked += sets_checked;
            }
            CertifyOutcome::Counterexample { witness, .. } => {
                return Err(format!(
                    "internal inconsistency: {witness} resolves with fewer landmarks"
                ));
            }
        }
    }
    if args.json {
        println!("{}", result.to_json());
    } else {
        let what = match kind {
            Kind::VertexMetric => "metric dimension",
            Kind::EdgeMetric => "edge metric dimension",
        };
        let cert = match result.certificate {
            Certificate::Certified => "certified",
            Certificate::UpperBoundOnly => "upper bound only (budget exhausted)",
        };
        println!("{what}: {} ({cert})", result.dimension);
        println!("witness: {}", result.witness);
        println!(
            "nodes: {}, sets checked: {}, time: {} ms",
            result.stats.nodes, result.stats.sets_checked, result.stats.millis
        );
    }
    // Budget exhaustion yields only an upper bound; report it as a
    // computational failure.
    Ok(if result.certificate == Certificate::Certified {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_check(input: &str, set: &str, kind: Kind) -> Result<ExitCode, String> {
    let output = load_input(input)?;
    let g = output.graph();
    let set = parse_set(set)?;
    if let Some(&v) = set.ids().iter().find(|&&v| v as usize >= g.n()) {
        return Err(format!("vertex {v} out of range (graph has {} vertices)", g.n()));
    }
    let d = g.distances();
    match check_generator(g, &d, &set, kind).map_err(|e| e.to_string())? {
        None => {
            println!("{set} resolves all {}", kind_objects(kind));
            Ok(ExitCode::SUCCESS)
        }
        Some(pair) => {
            println!(
                "{set} does not resolve all {}: {pair} share a signature",
                kind_objects(kind)
            );
            Ok(ExitCode::FAILURE)
        }
    }
}

fn kind_objects(kind: Kind) -> &'static str {
    match kind {
        Kind::VertexMetric => "vertices",
        Kind::EdgeMetric => "edges",
    }
}

fn cmd_construct(spec: &str, output: Option<&str>) -> Result<ExitCode, String> {
    let parsed = parse_spec(spec).map_err(|e| e.to_string())?;
    let result = eval_spec(&parsed).map_err(|e| e.to_string())?;
    let text = result.graph().to_edge_list();
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str, extended: bool, json: bool, seed: u64) -> Result<ExitCode, String> {
    let opts = SolveOptions::default();
    let reports =
        run_suite(suite, extended, seed, &opts).ok_or_else(|| format!("unknown suite '{suite}'"))?;
    let all_pass = reports.iter().all(|r| r.pass);
    if json {
        let items: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| serde_json::from_str(&r.to_json()).expect("valid report JSON"))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&items).expect("reports serialize")
        );
    } else {
        for report in &reports {
            print!("{}", report.table());
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dim(args) => cmd_dim(args),
        Command::Check { input, set, kind } => cmd_check(input, set, kind.kind()),
        Command::Construct { spec, output } => cmd_construct(spec, output.as_deref()),
        Command::Verify {
            suite,
            extended,
            json,
            seed,
        } => cmd_verify(suite, *extended, *json, *seed),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
