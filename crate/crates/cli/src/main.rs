use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coverdepth::graph::{clique_partitions, InvariantReport};
use coverdepth::homology::{betti_table_squarefree, depth_symbolic_cover, pd_reg_depth};
use coverdepth::ideal::{alexander_dual, cover_ideal, edge_ideal, intersect, polarize, power, symbolic_power_cover};
use coverdepth::lab::{
    render_csv, render_json, render_text, run_corpus, Lab, LabConfig, Status, TheoremId, VerificationOutcome,
};
use coverdepth::layered::build_gk;
use coverdepth::{CliquePartition, Error, Field, Graph, Guards, MonomialIdeal, Result};

#[derive(Parser)]
#[command(name = "coverdepth", version, about = "Depth of symbolic powers of cover ideals of graphs")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Coefficient field: `q` (rationals) or `f2`.
    #[arg(long, global = true, default_value = "q")]
    field: Field,
    /// Largest power checked by windowed verifiers.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_k: u64,
    /// Largest graph size swept by `verify`.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: u64,
    /// Most variables allowed in a Hochster computation.
    #[arg(long, global = true, default_value_t = 18, value_parser = clap::value_parser!(u64).range(1..))]
    hochster_guard: u64,
    /// Most generators allowed in a Taylor complex.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    taylor_guard: u64,
    /// Worker threads for corpus sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// α, ind-match, ord-match, s-ord-match and the largest stable s, with certificates.
    Invariants { graph: PathBuf },
    /// Monomial ideal constructions.
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// The layered graph G_k.
    Gk { graph: PathBuf, k: usize },
    /// depth S/J(G)^(k), confirmed by two independent routes.
    Depth { graph: PathBuf, k: usize },
    /// Graded Betti numbers of S/I.
    Betti { ideal: PathBuf },
    /// Check a statement on one graph or on the whole corpus.
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Selection,
        /// Check this graph only instead of sweeping the corpus.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Clique partition for `whisker` with `--graph`, one block per line.
        #[arg(long, requires = "graph")]
        partition: Option<PathBuf>,
        /// Sweep every labelled graph instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IdealCommand {
    /// J(G), the cover ideal.
    Cover {
        graph: PathBuf,
    },
    /// I(G), the edge ideal.
    Edge {
        graph: PathBuf,
    },
    /// J(G)^(k).
    Sympow {
        graph: PathBuf,
        k: usize,
    },
    /// I^k.
    Pow {
        ideal: PathBuf,
        k: usize,
    },
    Polarize {
        ideal: PathBuf,
    },
    /// Alexander dual of a squarefree ideal.
    Dual {
        ideal: PathBuf,
    },
    Intersect {
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Clone)]
enum Selection {
    All,
    One(TheoremId),
}

impl Selection {
    fn theorems(&self) -> Vec<TheoremId> {
        match self {
            Selection::All => TheoremId::ALL.to_vec(),
            Selection::One(t) => vec![*t],
        }
    }
}

fn parse_theorem(s: &str) -> std::result::Result<Selection, String> {
    if s == "all" {
        return Ok(Selection::All);
    }
    s.parse().map(Selection::One).map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph> {
    read(path)?.parse()
}

fn read_ideal(path: &Path) -> Result<MonomialIdeal> {
    read(path)?.parse()
}

/// A well-formed input that the operation cannot accept.
fn precondition(e: Error) -> Error {
    match e {
        Error::Input(msg) => Error::Precondition(msg),
        other => other,
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn render_ideal(i: &MonomialIdeal, format: Format) -> String {
    match format {
        Format::Json => pretty(&i.to_json()),
        _ => i.to_text(),
    }
}

fn guards(opts: &Opts) -> Result<Guards> {
    Guards { hochster: opts.hochster_guard as usize, taylor: opts.taylor_guard as usize, ..Guards::default() }
        .from_env()
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let opts = &cli.opts;
    let guards = guards(opts)?;
    let out = match cli.command {
        Command::Invariants { graph } => {
            let report = InvariantReport::compute(&read_graph(&graph)?);
            match opts.format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
                _ => report.to_text(),
            }
        }
        Command::Ideal(cmd) => {
            let ideal = match cmd {
                IdealCommand::Cover { graph } => cover_ideal(&read_graph(&graph)?).map_err(precondition)?,
                IdealCommand::Edge { graph } => edge_ideal(&read_graph(&graph)?),
                IdealCommand::Sympow { graph, k } => {
                    symbolic_power_cover(&read_graph(&graph)?, k).map_err(precondition)?
                }
                IdealCommand::Pow { ideal, k } => power(&read_ideal(&ideal)?, k).map_err(precondition)?,
                IdealCommand::Polarize { ideal } => polarize(&read_ideal(&ideal)?).map_err(precondition)?,
                IdealCommand::Dual { ideal } => alexander_dual(&read_ideal(&ideal)?).map_err(precondition)?,
                IdealCommand::Intersect { a, b } => {
                    intersect(&read_ideal(&a)?, &read_ideal(&b)?).map_err(precondition)?
                }
            };
            render_ideal(&ideal, opts.format)
        }
        Command::Gk { graph, k } => {
            let lg = build_gk(&read_graph(&graph)?, k).map_err(precondition)?;
            match opts.format {
                Format::Json => {
                    let edges: Vec<Value> = lg
                        .edges()
                        .into_iter()
                        .map(|((i, p), (j, q))| json!([format!("{i}_{p}"), format!("{j}_{q}")]))
                        .collect();
                    pretty(&json!({ "n": lg.base_n(), "k": lg.level(), "edges": edges }))
                }
                _ => lg.to_text(),
            }
        }
        Command::Depth { graph, k } => {
            let g = read_graph(&graph)?;
            let r = depth_symbolic_cover(&g, k, opts.field, guards.hochster)?;
            match opts.format {
                Format::Json => pretty(&json!({
                    "n": g.num_vertices(),
                    "k": k,
                    "field": opts.field.to_string(),
                    "depth": r.depth,
                    "pd_polarized": r.pd_polarized,
                    "reg_layered_edge_ideal": r.reg_layered_edge_ideal,
                })),
                _ => format!(
                    "depth {}\n# confirmed: pd of the polarized symbolic power = {} = reg I(G_{k}), over {}\n",
                    r.depth, r.pd_polarized, opts.field
                ),
            }
        }
        Command::Betti { ideal } => {
            let i = read_ideal(&ideal)?;
            // Polarization preserves graded Betti numbers.
            let squarefree = if i.is_squarefree() { i.clone() } else { polarize(&i)? };
            let table = betti_table_squarefree(&squarefree, opts.field, guards.hochster)?;
            let inv = pd_reg_depth(&i, opts.field, guards.hochster)?;
            match opts.format {
                Format::Json => {
                    let mut v = table.to_json();
                    v["pd"] = json!(inv.pd);
                    v["reg"] = json!(inv.reg);
                    v["depth"] = json!(inv.depth);
                    pretty(&v)
                }
                _ => format!("{table}pd {}\nreg {}\ndepth {}\n", inv.pd, inv.reg, inv.depth),
            }
        }
        Command::Verify { theorem, graph, partition, labeled, output } => {
            let config = LabConfig {
                max_vertices: opts.max_vertices as usize,
                k_max: opts.max_k as usize,
                field: opts.field,
                guards,
                jobs: opts.jobs as usize,
                labeled,
                ..LabConfig::default()
            };
            let outcomes = match graph {
                Some(path) => verify_one(&config, &theorem, &read_graph(&path)?, partition.as_deref())?,
                None => run_corpus(&config, &theorem.theorems())?,
            };
            let failed = outcomes.iter().any(|o| o.status == Status::Failed);
            let report = match opts.format {
                Format::Text => render_text(&outcomes),
                Format::Json => render_json(&outcomes),
                Format::Csv => render_csv(&outcomes),
            };
            let out = match output {
                Some(path) => {
                    fs::write(&path, report)
                        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
                    let summary = render_text(&outcomes);
                    summary.lines().filter(|l| l.starts_with("summary ")).map(|l| format!("{l}\n")).collect()
                }
                None => report,
            };
            return Ok((out, !failed));
        }
    };
    Ok((out, true))
}

/// Runs the selected verifiers on one graph. Input errors are returned for a
/// single theorem; with `all`, statements whose hypotheses fail are left out.
fn verify_one(
    config: &LabConfig,
    selection: &Selection,
    g: &Graph,
    partition: Option<&Path>,
) -> Result<Vec<VerificationOutcome>> {
    let lab = Lab::new(config.field, config.guards);
    let partitions = match partition {
        Some(p) => vec![CliquePartition::parse(g, &read(p)?)?],
        None => clique_partitions(g),
    };
    let mut out = Vec::new();
    for theorem in selection.theorems() {
        let result: Result<Vec<VerificationOutcome>> = match theorem {
            TheoremId::Main => lab.verify_main(g, config.k_extra).map(|o| vec![o]),
            TheoremId::Whisker => partitions.iter().map(|pi| lab.verify_whisker(g, pi, config.k_max)).collect(),
            TheoremId::Regind => lab.verify_regind(g).map(|o| vec![o]),
            TheoremId::RegUpper => lab.verify_reg_upper(g).map(|o| vec![o]),
            TheoremId::Bipartite => lab.verify_bipartite(g, config.k_max).map(|o| vec![o]),
            TheoremId::ProofMatch => lab.verify_proof_matchings(g).map(|o| o.into_iter().collect()),
            TheoremId::Polarization => lab.verify_polarization(g, config.k_max).map(|o| vec![o]),
            TheoremId::Katzman => lab.verify_katzman(g).map(|o| vec![o]),
            TheoremId::Oracle => lab.verify_oracle(g, config.k_max, config.oracle_generators).map(|o| vec![o]),
        };
        match (result, selection) {
            (Ok(v), _) => out.extend(v),
            (Err(Error::Input(_) | Error::Precondition(_)), Selection::All) => {}
            (Err(e), _) => return Err(e),
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
