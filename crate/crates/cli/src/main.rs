//! Command-line front end for multilayer core decompositions and the
//! FirmCore-based densest-subgraph approximations.
//!
//! Exit codes: 1 for input parse failures, 2 for invalid flag combinations,
//! 3 for budget/resource refusals. Diagnostics go to standard error; results
//! go to `--output` or standard output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use firmcore::density;
use firmcore::firmcore as fc;
use firmcore::firmdcore as fdc;
use firmcore::mlgraph::{load_edge_list, DirectedMultilayerGraph, LoadedGraph, MultilayerGraph};
use firmcore::GraphError;

#[derive(Parser)]
#[command(name = "firmcore", about = "FirmCore decompositions of multilayer graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Edge-list file: one `layer src dst` triple per line.
    #[arg(long)]
    input: PathBuf,
    /// Treat edges as directed.
    #[arg(long)]
    directed: bool,
    /// Worker threads (defaults to FIRMCORE_THREADS, then 1).
    #[arg(long)]
    threads: Option<usize>,
    /// Write results here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// FirmCore index table of an undirected multilayer graph.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Restrict output to one λ row.
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// FirmD-Core index table of a directed multilayer graph.
    Ddecompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Approximate multilayer densest subgraph.
    Densest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Approximate directed multilayer densest subgraph.
    Ddensest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Exact best-friends-forever (max-min-degree) subgraph.
    Bff {
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-clique candidate pruning.
    Prune {
        #[command(flatten)]
        common: Common,
        /// Per-layer density thresholds Γ(ℓ), comma-separated.
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<f64>,
        #[arg(long = "min-sup")]
        min_sup: Option<f64>,
        #[arg(long = "min-size")]
        min_size: Option<usize>,
    },
    /// Graph summary: sizes, per-layer densities, Top-λ degree histograms.
    Stats {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Runtime/memory of FirmCore decomposition across layer prefixes.
    Bench {
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn flags(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(err: GraphError) -> Self {
        let code = match err {
            GraphError::Parse { .. } | GraphError::EmptyInput | GraphError::Io(_) => 1,
            GraphError::InvalidArgument(_) => 2,
            GraphError::BudgetExceeded(_) => 3,
        };
        Failure { code, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn threads_from(common: &Common) -> Result<usize, Failure> {
    let threads = match common.threads {
        Some(t) => t,
        None => match std::env::var("FIRMCORE_THREADS") {
            Ok(raw) => raw
                .parse::<usize>()
                .map_err(|_| Failure::flags(format!("FIRMCORE_THREADS is not a count: {raw:?}")))?,
            Err(_) => 1,
        },
    };
    if threads == 0 {
        return Err(Failure::flags("--threads must be at least 1"));
    }
    Ok(threads)
}

fn load_undirected(common: &Common) -> Result<MultilayerGraph, Failure> {
    if common.directed {
        return Err(Failure::flags("this command requires an undirected graph"));
    }
    match load_edge_list(&common.input, false)? {
        LoadedGraph::Undirected(g, _) => Ok(g),
        LoadedGraph::Directed(..) => unreachable!(),
    }
}

fn load_directed(common: &Common) -> Result<DirectedMultilayerGraph, Failure> {
    match load_edge_list(&common.input, true)? {
        LoadedGraph::Directed(g, _) => Ok(g),
        LoadedGraph::Undirected(..) => unreachable!(),
    }
}

fn emit(common: &Common, body: String) -> Result<(), Failure> {
    match &common.output {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn format_of(common: &Common, default: Format) -> Format {
    common.format.unwrap_or(default)
}

fn json_body(value: &serde_json::Value) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("report serialization");
    body.push('\n');
    body
}

fn check_lambda_flag(lambda: Option<usize>, num_layers: usize) -> Result<(), Failure> {
    if let Some(l) = lambda {
        if l < 1 || l > num_layers {
            return Err(Failure::flags(format!(
                "--lambda {l} out of range for {num_layers} layer(s)"
            )));
        }
    }
    Ok(())
}

fn require_beta(beta: Option<f64>) -> Result<f64, Failure> {
    match beta {
        Some(b) if b > 0.0 => Ok(b),
        Some(b) => Err(Failure::flags(format!("--beta {b} must be positive"))),
        None => Err(Failure::flags("--beta is required for this command")),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Decompose { common, lambda } => {
            let threads = threads_from(&common)?;
            let g = load_undirected(&common)?;
            check_lambda_flag(lambda, g.num_layers)?;
            let table = fc::firmcore_decomposition(&g, threads);
            let body = match format_of(&common, Format::Tsv) {
                Format::Tsv => core_table_tsv(&table, &g.node_labels, lambda),
                Format::Json => json_body(&core_table_json(&table, &g.node_labels, lambda)),
            };
            emit(&common, body)
        }
        Command::Ddecompose { common, lambda } => {
            let threads = threads_from(&common)?;
            let g = load_directed(&common)?;
            check_lambda_flag(lambda, g.num_layers)?;
            let table = fdc::full_firmdcore(&g, threads);
            let body = match format_of(&common, Format::Tsv) {
                Format::Tsv => dcore_table_tsv(&table, &g.node_labels, lambda),
                Format::Json => json_body(&dcore_table_json(&table, &g.node_labels, lambda)),
            };
            emit(&common, body)
        }
        Command::Densest { common, beta } => {
            let threads = threads_from(&common)?;
            let beta = require_beta(beta)?;
            let g = load_undirected(&common)?;
            let report = density::fc_approx(&g, beta, threads)?;
            let value = report.to_json(&g.node_labels, &g.layer_labels);
            let body = match format_of(&common, Format::Json) {
                Format::Json => json_body(&value),
                Format::Tsv => report_tsv(&value),
            };
            emit(&common, body)
        }
        Command::Ddensest { common, beta } => {
            let threads = threads_from(&common)?;
            let beta = require_beta(beta)?;
            let g = load_directed(&common)?;
            let report = density::fdc_approx(&g, beta, threads)?;
            let value = report.to_json(&g.node_labels, &g.layer_labels);
            let body = match format_of(&common, Format::Json) {
                Format::Json => json_body(&value),
                Format::Tsv => report_tsv(&value),
            };
            emit(&common, body)
        }
        Command::Bff { common } => {
            let _ = threads_from(&common)?;
            let g = load_undirected(&common)?;
            let (nodes, k_max) = density::bff_mm(&g)?;
            let mut external: Vec<u64> = nodes.iter().map(|v| g.node_labels[v as usize]).collect();
            external.sort_unstable();
            let value = serde_json::json!({ "k_max": k_max, "nodes": external });
            let body = match format_of(&common, Format::Json) {
                Format::Json => json_body(&value),
                Format::Tsv => report_tsv(&value),
            };
            emit(&common, body)
        }
        Command::Prune { common, gamma, min_sup, min_size } => {
            let _ = threads_from(&common)?;
            let min_sup =
                min_sup.ok_or_else(|| Failure::flags("--min-sup is required for prune"))?;
            let min_size =
                min_size.ok_or_else(|| Failure::flags("--min-size is required for prune"))?;
            if gamma.is_empty() {
                return Err(Failure::flags("--gamma is required for prune"));
            }
            let g = load_undirected(&common)?;
            let pruned = density::quasiclique_prune(&g, &gamma, min_sup, min_size)?;
            let mut external: Vec<u64> = pruned.iter().map(|v| g.node_labels[v as usize]).collect();
            external.sort_unstable();
            let body = match format_of(&common, Format::Json) {
                Format::Json => json_body(&serde_json::json!({
                    "nodes": external,
                    "total_nodes": g.num_nodes,
                })),
                Format::Tsv => {
                    let mut out = String::from("node\n");
                    for id in &external {
                        let _ = writeln!(out, "{id}");
                    }
                    out
                }
            };
            emit(&common, body)
        }
        Command::Stats { common, lambda } => {
            let _ = threads_from(&common)?;
            let value = if common.directed {
                let g = load_directed(&common)?;
                check_lambda_flag(lambda, g.num_layers)?;
                let degs: Vec<Vec<u32>> = (0..g.num_nodes as u32)
                    .map(|v| (0..g.num_layers).map(|l| g.out_degree(l, v)).collect())
                    .collect();
                let per_layer: Vec<f64> = (0..g.num_layers)
                    .map(|l| g.edges_in_layer(l) as f64 / g.num_nodes.max(1) as f64)
                    .collect();
                stats_json(g.num_nodes, g.num_layers, g.num_edges(), &per_layer, &degs, lambda)
            } else {
                let g = load_undirected(&common)?;
                check_lambda_flag(lambda, g.num_layers)?;
                let degs = g.degree_vectors();
                let per_layer: Vec<f64> = (0..g.num_layers)
                    .map(|l| g.edges_in_layer(l) as f64 / g.num_nodes.max(1) as f64)
                    .collect();
                stats_json(g.num_nodes, g.num_layers, g.num_edges(), &per_layer, &degs, lambda)
            };
            let body = match format_of(&common, Format::Json) {
                Format::Json => json_body(&value),
                Format::Tsv => report_tsv(&value),
            };
            emit(&common, body)
        }
        Command::Bench { common } => {
            let threads = threads_from(&common)?;
            let g = load_undirected(&common)?;
            let mut series = Vec::new();
            for layers in 1..=g.num_layers {
                let prefix = g.layer_prefix(layers);
                let start = Instant::now();
                let table = fc::firmcore_decomposition(&prefix, threads);
                let elapsed = start.elapsed().as_secs_f64();
                let max_core = (1..=layers).map(|l| table.max_core(l)).max().unwrap_or(0);
                series.push(serde_json::json!({
                    "layers": layers,
                    "seconds": elapsed,
                    "max_core": max_core,
                }));
            }
            let value = serde_json::json!({
                "nodes": g.num_nodes,
                "edges": g.num_edges(),
                "threads": threads,
                "series": series,
                "peak_memory_kb": peak_memory_kb(),
            });
            emit(&common, json_body(&value))
        }
    }
}

fn core_table_tsv(table: &fc::CoreIndexTable, labels: &[u64], lambda: Option<usize>) -> String {
    match lambda {
        None => table.to_tsv(labels),
        Some(l) => {
            let mut order: Vec<usize> = (0..labels.len()).collect();
            order.sort_by_key(|&v| labels[v]);
            let mut out = String::from("node\tlambda\tcore\n");
            let row = table.row(l);
            for &v in &order {
                let _ = writeln!(out, "{}\t{}\t{}", labels[v], l, row[v]);
            }
            out
        }
    }
}

fn core_table_json(
    table: &fc::CoreIndexTable,
    labels: &[u64],
    lambda: Option<usize>,
) -> serde_json::Value {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&v| labels[v]);
    let lambdas: Vec<usize> = match lambda {
        Some(l) => vec![l],
        None => (1..=table.num_layers).collect(),
    };
    let mut entries = Vec::new();
    for l in lambdas {
        let row = table.row(l);
        for &v in &order {
            entries.push(serde_json::json!({
                "node": labels[v],
                "lambda": l,
                "core": row[v],
            }));
        }
    }
    serde_json::json!({ "num_layers": table.num_layers, "cores": entries })
}

fn dcore_table_tsv(table: &fdc::DCoreIndexTable, labels: &[u64], lambda: Option<usize>) -> String {
    match lambda {
        None => table.to_tsv(labels),
        Some(keep) => {
            // Filter the full serialization down to one λ column value.
            let full = table.to_tsv(labels);
            let mut out = String::new();
            for (i, line) in full.lines().enumerate() {
                if i == 0 {
                    out.push_str(line);
                    out.push('\n');
                    continue;
                }
                let mut fields = line.split('\t');
                let _node = fields.next();
                if fields.next() == Some(keep.to_string().as_str()) {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn dcore_table_json(
    table: &fdc::DCoreIndexTable,
    labels: &[u64],
    lambda: Option<usize>,
) -> serde_json::Value {
    let full = dcore_table_tsv(table, labels, lambda);
    let mut entries = Vec::new();
    for line in full.lines().skip(1) {
        let fields: Vec<&str> = line.split('\t').collect();
        entries.push(serde_json::json!({
            "node": fields[0].parse::<u64>().unwrap(),
            "lambda": fields[1].parse::<usize>().unwrap(),
            "k": fields[2].parse::<u32>().unwrap(),
            "t_index": fields[3].parse::<u32>().unwrap(),
            "s_index": fields[4].parse::<u32>().unwrap(),
        }));
    }
    serde_json::json!({ "num_layers": table.num_layers, "cores": entries })
}

fn stats_json(
    num_nodes: usize,
    num_layers: usize,
    num_edges: usize,
    per_layer: &[f64],
    degs: &[Vec<u32>],
    lambda: Option<usize>,
) -> serde_json::Value {
    let lambdas: Vec<usize> = match lambda {
        Some(l) => vec![l],
        None => (1..=num_layers).collect(),
    };
    let mut histograms = Vec::new();
    for l in &lambdas {
        // Histogram of Top-λ degrees: λ-th largest entry of each node's
        // per-layer degree vector.
        let mut counts: std::collections::BTreeMap<u32, usize> = Default::default();
        let mut scratch = Vec::with_capacity(num_layers);
        for v in 0..num_nodes {
            scratch.clear();
            scratch.extend_from_slice(&degs[v]);
            scratch.sort_unstable_by(|a, b| b.cmp(a));
            *counts.entry(scratch[*l - 1]).or_default() += 1;
        }
        histograms.push(serde_json::json!({
            "lambda": l,
            "histogram": counts
                .iter()
                .map(|(d, c)| serde_json::json!({ "top_degree": d, "count": c }))
                .collect::<Vec<_>>(),
        }));
    }
    serde_json::json!({
        "nodes": num_nodes,
        "layers": num_layers,
        "edges": num_edges,
        "per_layer_density": per_layer,
        "top_degree_histograms": histograms,
    })
}

/// Flattens a JSON report into `key<TAB>value` lines for the TSV format.
fn report_tsv(value: &serde_json::Value) -> String {
    let mut out = String::new();
    flatten_into(&mut out, "", value);
    out
}

fn flatten_into(out: &mut String, prefix: &str, value: &serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, sub) in map {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten_into(out, &path, sub);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, sub) in items.iter().enumerate() {
                flatten_into(out, &format!("{prefix}[{i}]"), sub);
            }
        }
        other => {
            let _ = writeln!(out, "{prefix}\t{other}");
        }
    }
}

/// Peak resident set size in kB, from the kernel's per-process accounting.
fn peak_memory_kb() -> u64 {
    std::fs::read_to_string("/proc/self/status")
        .ok()
        .and_then(|status| {
            status.lines().find(|l| l.starts_with("VmHWM:")).and_then(|line| {
                line.split_whitespace().nth(1).and_then(|kb| kb.parse().ok())
            })
        })
        .unwrap_or(0)
}
