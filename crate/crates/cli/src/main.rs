use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bonsai_core::bonsai::{bonsai, GrowthConfig, Labelling, RootPolicy};
use bonsai_core::classic::{classic_tree, fixture, Fixture, FixtureKind, MappingKind};
use bonsai_core::export::{
    mapping_from_json, mapping_to_dot, mapping_to_json, render_csv, render_table, TableStyle,
};
use bonsai_core::metrics::{report, ReportOptions};
use bonsai_core::topology::{excitation_cost, GraphDescription, HardwareGraph, TopologyKind};
use bonsai_core::verify::{check_mapping, oracle_check, DenseOracle};
use bonsai_core::{pair_modes, MajoranaMapping, PairingOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bonsai", version, about = "Ternary-tree fermion-to-qubit mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Device topologies
    Topo {
        #[command(subcommand)]
        command: TopoCommand,
    },
    /// Build, check and export mappings
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Routing cost estimates
    Cost {
        #[command(subcommand)]
        command: CostCommand,
    },
}

#[derive(Subcommand)]
enum TopoCommand {
    /// Write a generated coupling graph as JSON
    Gen {
        #[arg(long, value_enum)]
        kind: TopoKind,
        /// Qubit count for linear, star and complete graphs
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        rings: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Grow a tree on a device graph and pair it into a mapping
    Grow {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Homogeneous)]
        strategy: Strategy,
        #[arg(long, env = "BONSAI_SEED")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = RootArg::Center)]
        root_policy: RootArg,
        /// Explicit root qubit, overriding the policy
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One of the textbook tree mappings
    Classic {
        #[arg(long, value_enum)]
        kind: ClassicKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A built-in reference mapping
    Fixture {
        #[arg(long, value_enum)]
        kind: FixtureArg,
        /// Labelling of the heavy-hexagon tree
        #[arg(long, value_enum, default_value_t = Strategy::Homogeneous)]
        strategy: Strategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the mapping criteria; exits 1 if any fails
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Weights, delocalisation and optional routing summary
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, env = "BONSAI_SEED", default_value_t = 0)]
        seed: u64,
        /// Enumerate every double excitation instead of sampling
        #[arg(long)]
        exhaustive: bool,
    },
    /// Convert a mapping to another format
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Table)]
        format: ExportFormat,
        /// Use ½, ∓ and ± in tables
        #[arg(long)]
        utf8: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CostCommand {
    /// Steiner overhead of a single or double excitation
    Excitation {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Two or four mode indices
        #[arg(long, value_delimiter = ',', required = true)]
        modes: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TopoKind {
    HeavyHexagon,
    Linear,
    Star,
    Grid,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Homogeneous,
    Heterogeneous,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootArg {
    Center,
    DiameterEnd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
    Jkmn,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureArg {
    Fig1Tree,
    #[value(name = "heavy-hex-37")]
    HeavyHex37,
    #[value(name = "exotic-3nto")]
    Exotic3nto,
    #[value(name = "exotic-1nto-non-tree")]
    Exotic1ntoNonTree,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
    Table,
    Csv,
}

impl From<Strategy> for Labelling {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Homogeneous => Labelling::Homogeneous,
            Strategy::Heterogeneous => Labelling::Heterogeneous,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] bonsai_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    /// Already reported on stdout.
    #[error("validation failed")]
    Failed,
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            let res = stdout
                .write_all(text.as_bytes())
                .and_then(|_| if text.ends_with('\n') { Ok(()) } else { stdout.write_all(b"\n") });
            match res {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Io { path: "<stdout>".into(), source: e })
                }
                _ => Ok(()),
            }
        }
    }
}

fn load_graph(path: &Path) -> Result<HardwareGraph> {
    let desc: GraphDescription = serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse {
        path: path.into(),
        message: e.to_string(),
    })?;
    Ok(HardwareGraph::from_description(&desc)?)
}

fn load_mapping(path: &Path) -> Result<MajoranaMapping> {
    mapping_from_json(&read(path)?).map_err(|e| match e {
        bonsai_core::Error::Malformed(message) => CliError::Parse { path: path.into(), message },
        other => other.into(),
    })
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this kind")))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Topo { command: TopoCommand::Gen { kind, n, rings, rows, cols, out } } => {
            let kind = match kind {
                TopoKind::HeavyHexagon => TopologyKind::HeavyHexagon { rings },
                TopoKind::Linear => TopologyKind::Linear { n: need(n, "n")? },
                TopoKind::Star => TopologyKind::Star { n: need(n, "n")? },
                TopoKind::Complete => TopologyKind::Complete { n: need(n, "n")? },
                TopoKind::Grid => TopologyKind::Grid { rows: need(rows, "rows")?, cols: need(cols, "cols")? },
            };
            let g = HardwareGraph::generate(kind)?;
            emit(out.as_deref(), &pretty(&g.to_description()))
        }
        Command::Map { command } => run_map(command),
        Command::Cost { command: CostCommand::Excitation { map, graph, modes } } => {
            let m = load_mapping(&map)?;
            let g = load_graph(&graph)?;
            let cost = excitation_cost(&m, &g, &modes)?;
            let strings: Vec<_> = cost
                .per_string
                .iter()
                .map(|c| json!({"support": c.support, "steiner_nodes": c.steiner_nodes, "overhead": c.overhead}))
                .collect();
            let v = json!({
                "modes": modes,
                "max_overhead": cost.max_overhead,
                "total_overhead": cost.total_overhead,
                "strings": strings,
            });
            emit(None, &pretty(&v))
        }
    }
}

fn run_map(command: MapCommand) -> Result<()> {
    match command {
        MapCommand::Grow { graph, strategy, seed, root_policy, root, out } => {
            let g = load_graph(&graph)?;
            let cfg = GrowthConfig {
                root,
                root_policy: match root_policy {
                    RootArg::Center => RootPolicy::Center,
                    RootArg::DiameterEnd => RootPolicy::DiameterEnd,
                },
                seed,
                labelling: strategy.into(),
            };
            let b = bonsai(&g, &cfg)?;
            if !b.virtual_edges.is_empty() {
                eprintln!("warning: {} tree edges are not device couplings: {:?}", b.virtual_edges.len(), b.virtual_edges);
            }
            emit(out.as_deref(), &mapping_to_json(&b.mapping))
        }
        MapCommand::Classic { kind, n, out } => {
            let kind = match kind {
                ClassicKind::JordanWigner => MappingKind::JordanWigner,
                ClassicKind::Parity => MappingKind::Parity,
                ClassicKind::BravyiKitaev => MappingKind::BravyiKitaev,
                ClassicKind::Jkmn => MappingKind::Jkmn,
            };
            let m = pair_modes(&classic_tree(kind, n)?, None, PairingOptions::default())?;
            emit(out.as_deref(), &mapping_to_json(&m))
        }
        MapCommand::Fixture { kind, strategy, out } => {
            let m = match kind {
                FixtureArg::HeavyHex37 => {
                    let t = bonsai_core::classic::heavy_hex37_tree(strategy.into());
                    pair_modes(&t, None, PairingOptions::default())?
                }
                other => {
                    let kind = match other {
                        FixtureArg::Fig1Tree => FixtureKind::Fig1Tree,
                        FixtureArg::Exotic3nto => FixtureKind::Exotic3Nto,
                        _ => FixtureKind::Exotic1NtoNonTree,
                    };
                    match fixture(kind) {
                        Fixture::Tree(t) => pair_modes(&t, None, PairingOptions::default())?,
                        Fixture::Mapping(m) => m,
                    }
                }
            };
            emit(out.as_deref(), &mapping_to_json(&m))
        }
        MapCommand::Verify { input } => {
            let m = load_mapping(&input)?;
            let criteria = check_mapping(&m);
            let small = m.n_qubits() <= DenseOracle::MAX_CAR_MODES;
            let oracle = if small { Some(oracle_check(&m)?) } else { None };
            let oracle_ok = oracle
                .as_ref()
                .is_none_or(|r| r.max_residual() <= 1e-12 && r.fock_matches != Some(false));
            let ok = criteria.all_ok() && oracle_ok;
            let v = json!({"valid": ok, "criteria": criteria, "oracle": oracle});
            emit(None, &pretty(&v))?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        MapCommand::Report { input, graph, format, samples, seed, exhaustive } => {
            let m = load_mapping(&input)?;
            let g = graph.as_deref().map(load_graph).transpose()?;
            let opts = ReportOptions { double_samples: samples, seed, exhaustive_doubles: exhaustive };
            let r = report(&m, g.as_ref(), &opts)?;
            match format {
                ReportFormat::Json => emit(None, &pretty(&r)),
                ReportFormat::Text => emit(None, &r.to_text()),
            }
        }
        MapCommand::Export { input, format, utf8, out } => {
            let m = load_mapping(&input)?;
            let style = TableStyle { utf8 };
            let text = match format {
                ExportFormat::Json => mapping_to_json(&m),
                ExportFormat::Dot => mapping_to_dot(&m)?,
                ExportFormat::Table => render_table(&m, style),
                ExportFormat::Csv => render_csv(&m, style),
            };
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
