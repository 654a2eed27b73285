mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cliquecolor::bounds::verify_inequality_chain;
use cliquecolor::cliques::maximal_cliques;
use cliquecolor::coloring::{clique_chromatic_number, construct_tower_coloring, verify_clique_coloring, CliqueChromatic, CliqueColoring};
use cliquecolor::expansion::{
    build_tower, expand_at_clique, universal_expansion, BijectionSelection, CliqueSelection, CustomTowerSpec,
    ExpandOptions, ExpansionSpec, Limits, PetalPolicy, SubsetBijection, TowerRequest,
};
use cliquecolor::generators;
use cliquecolor::lemma6::{
    check_property1, check_property2, estimate_failure_probability, sample_bijection, CheckMode, InstanceJson,
    Lemma6Instance,
};
use cliquecolor::perfection::{find_clique_cutset, is_perfect, Method, DEFAULT_DEFINITIONAL_CAP};
use cliquecolor::rng::{stream_rng, streams};
use cliquecolor::{Error, Graph};

use output::Output;

#[derive(Parser)]
#[command(name = "cliquecolor", version, about = "Clique-colorings, expansion towers and perfection checks")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for generated artifacts; stdout when absent.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Master seed for every randomized step.
    #[arg(long, global = true, env = "CLIQUECOLOR_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, env = "CLIQUECOLOR_MAX_VERTICES", default_value_t = 1_000_000)]
    max_vertices: usize,

    #[arg(long, global = true, env = "CLIQUECOLOR_MAX_PETALS", default_value_t = 100_000)]
    max_petals: usize,

    #[arg(long, global = true, env = "CLIQUECOLOR_MAX_BIJECTIONS", default_value_t = 40_320)]
    max_bijections: u64,

    /// Largest exhaustive enumeration (containment lookups) allowed.
    #[arg(long, global = true, env = "CLIQUECOLOR_MAX_EXHAUSTIVE", default_value_t = 50_000_000)]
    max_exhaustive: u64,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            max_bijections: self.max_bijections,
            max_petals: self.max_petals,
            max_vertices: self.max_vertices,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named graph.
    Gen(GenArgs),
    /// Expand a graph at one clique, or at every clique of the right size.
    Expand(ExpandArgs),
    Tower {
        #[command(subcommand)]
        command: TowerCommand,
    },
    Cliques {
        #[command(subcommand)]
        command: CliquesCommand,
    },
    /// Clique-coloring checks.
    Cc {
        #[command(subcommand)]
        command: CcCommand,
    },
    Perfect {
        #[command(subcommand)]
        command: PerfectCommand,
    },
    Cutset {
        #[command(subcommand)]
        command: CutsetCommand,
    },
    Lemma6 {
        #[command(subcommand)]
        command: Lemma6Command,
    },
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Complete,
    Cycle,
    Path,
    Edgeless,
    C9triangle,
    CobipartiteRandom,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: GraphKind,
    /// Vertex count (complete, cycle, path, edgeless).
    #[arg(long)]
    n: Option<usize>,
    /// Clique sizes and edge probability for cobipartite-random.
    #[arg(long, default_value_t = 4)]
    a: usize,
    #[arg(long, default_value_t = 4)]
    b: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated labels of the attachment clique, in bijection order.
    /// Without it every clique of size C(n,k) is expanded.
    #[arg(long, value_delimiter = ',')]
    clique: Option<Vec<String>>,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// all | file:PATH | random:COUNT:SEED
    #[arg(long, default_value = "all")]
    bijections: String,
}

#[derive(Subcommand)]
enum TowerCommand {
    Build {
        #[arg(long, value_enum)]
        mode: TowerMode,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerMode {
    Paper,
    Custom,
}

#[derive(Subcommand)]
enum CliquesCommand {
    /// One maximal clique per line, as sorted comma-separated labels.
    List {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
    },
}

#[derive(Subcommand)]
enum CcCommand {
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
    },
    Chromatic {
        graph: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_colors: usize,
    },
    /// Build a custom tower and color it with the level-by-level recipe.
    TowerColor {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum PerfectCommand {
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "spgt")]
        method: PerfectMethod,
        #[arg(long, default_value_t = DEFAULT_DEFINITIONAL_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PerfectMethod {
    Spgt,
    Definitional,
}

#[derive(Subcommand)]
enum CutsetCommand {
    Find { graph: PathBuf },
}

#[derive(Subcommand)]
enum Lemma6Command {
    Sample {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
    },
    Check {
        /// Instance file; when absent one is sampled from --m --k --i.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        property: u8,
        /// exhaustive | sampled:TRIALS
        #[arg(long, default_value = "exhaustive")]
        mode: String,
    },
    Estimate {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        trials: u64,
        /// Sampled sets per trial and property; exhaustive when absent.
        #[arg(long)]
        inner: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    Eval {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        i: u64,
    },
}

/// Result of a command that ran to completion.
enum Outcome {
    Ok,
    /// The computation answered "no"; exit status 1.
    CheckFailed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            let budget = e.downcast_ref::<Error>().is_some_and(Error::is_budget);
            let prefix = if budget { "error[budget]" } else { "error[input]" };
            eprintln!("{prefix}: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::from_json_str(&text)?)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    let out = Output::new(g.json, g.out_dir.clone())?;
    match &cli.command {
        Command::Gen(a) => gen(a, g, &out),
        Command::Expand(a) => expand(a, g, &out),
        Command::Tower { command: TowerCommand::Build { mode, k, spec } } => tower(*mode, *k, spec.as_ref(), g, &out),
        Command::Cliques { command: CliquesCommand::List { graph, min_size } } => {
            let graph = read_graph(graph)?;
            let cliques: Vec<Vec<String>> = maximal_cliques(&graph, *min_size)
                .iter()
                .map(|c| graph.labels_of(c))
                .collect();
            let text: String = cliques.iter().map(|c| c.join(",") + "\n").collect();
            out.report(&serde_json::json!({ "cliques": cliques }), text.trim_end())?;
            Ok(Outcome::Ok)
        }
        Command::Cc { command } => cc(command, g, &out),
        Command::Perfect { command: PerfectCommand::Check { graph, method, cap } } => {
            let graph = read_graph(graph)?;
            let m = match method {
                PerfectMethod::Spgt => Method::Spgt,
                PerfectMethod::Definitional => Method::Definitional { cap: *cap },
            };
            let v = is_perfect(&graph, m)?;
            let witness = v.witness.as_ref().map(|w| {
                serde_json::json!({ "kind": w.kind, "vertices": graph.labels_of(&w.vertices) })
            });
            let text = match &v.witness {
                None => "perfect".to_string(),
                Some(w) => format!("not perfect: {:?} {}", w.kind, graph.labels_of(&w.vertices).join(",")),
            };
            out.report(&serde_json::json!({ "perfect": v.perfect, "witness": witness }), &text)?;
            Ok(if v.perfect { Outcome::Ok } else { Outcome::CheckFailed("graph is not perfect".into()) })
        }
        Command::Cutset { command: CutsetCommand::Find { graph } } => {
            let graph = read_graph(graph)?;
            let cut = find_clique_cutset(&graph);
            let labels = cut.as_ref().map(|c| graph.labels_of(c));
            let text = match &labels {
                None => "no clique cutset".to_string(),
                Some(l) if l.is_empty() => "empty cutset (graph is disconnected)".to_string(),
                Some(l) => l.join(","),
            };
            out.report(&serde_json::json!({ "cutset": labels }), &text)?;
            Ok(Outcome::Ok)
        }
        Command::Lemma6 { command } => lemma6(command, g, &out),
        Command::Bounds { command: BoundsCommand::Eval { n, i } } => {
            let r = verify_inequality_chain(*n, *i)?;
            out.report(&r.to_json(), &r.to_string())?;
            Ok(if r.overall {
                Outcome::Ok
            } else {
                Outcome::CheckFailed(format!("inequality chain fails for n={n}, i={i}"))
            })
        }
    }
}

fn gen(a: &GenArgs, g: &Global, out: &Output) -> anyhow::Result<Outcome> {
    let need_n = || match a.n {
        None => bail!("--n is required for this graph type"),
        Some(0) => bail!("--n must be at least 1"),
        Some(n) if n < 3 && matches!(a.kind, GraphKind::Cycle) => bail!("cycles need --n at least 3"),
        Some(n) => Ok(n),
    };
    let (name, graph) = match a.kind {
        GraphKind::Complete => ("complete", generators::complete(need_n()?)),
        GraphKind::Cycle => ("cycle", generators::cycle(need_n()?)),
        GraphKind::Path => ("path", generators::path(need_n()?)),
        GraphKind::Edgeless => ("edgeless", generators::edgeless(need_n()?)),
        GraphKind::C9triangle => ("c9triangle", generators::c9_triangle()),
        GraphKind::CobipartiteRandom => {
            if !(0.0..=1.0).contains(&a.p) {
                bail!("--p must lie in [0, 1]");
            }
            if a.a + a.b == 0 {
                bail!("--a + --b must be at least 1");
            }
            let mut rng = stream_rng(g.seed, streams::GENERATOR);
            ("cobipartite", generators::cobipartite_random(a.a, a.b, a.p, &mut rng))
        }
    };
    match a.format {
        GraphFormat::Json => out.graph(name, &graph)?,
        GraphFormat::Dot => out.artifact(&format!("{name}.dot"), &graph.to_dot())?,
    }
    Ok(Outcome::Ok)
}

fn parse_bijections(s: &str, spec: &ExpansionSpec) -> anyhow::Result<BijectionSelection> {
    let parts: Vec<&str> = s.splitn(3, ':').collect();
    match parts.as_slice() {
        ["all"] => Ok(BijectionSelection::All),
        ["random", count, seed] => Ok(BijectionSelection::Random {
            count: count.parse().context("random:COUNT:SEED count")?,
            seed: seed.parse().context("random:COUNT:SEED seed")?,
        }),
        ["file", path] => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let lists: Vec<Vec<Vec<u32>>> = serde_json::from_str(&text).map_err(Error::from)?;
            let bij = lists
                .iter()
                .map(|b| SubsetBijection::from_elements(spec, b))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(BijectionSelection::Explicit(bij))
        }
        _ => bail!("--bijections must be all, file:PATH or random:COUNT:SEED, got `{s}`"),
    }
}

fn expand(a: &ExpandArgs, g: &Global, out: &Output) -> anyhow::Result<Outcome> {
    let graph = read_graph(&a.graph)?;
    let spec = ExpansionSpec::new(a.n, a.k)?;
    let selection = parse_bijections(&a.bijections, &spec)?;
    let opts = ExpandOptions {
        limits: g.limits(),
        ..ExpandOptions::default()
    };
    let e = match &a.clique {
        Some(labels) => expand_at_clique(&graph, &graph.resolve(labels)?, &spec, &selection, &opts)?,
        None => {
            let policy = PetalPolicy {
                cliques: CliqueSelection::All,
                bijections: selection,
            };
            universal_expansion(&graph, &spec, &policy, &opts)?
        }
    };
    let petals: Vec<_> = e
        .petals
        .iter()
        .map(|p| {
            serde_json::json!({
                "attachment": e.graph.labels_of(&p.attachment),
                "petal_vertices": e.graph.labels_of(&p.petal_vertices),
                "bijection": p.bijection.to_elements(),
            })
        })
        .collect();
    out.graph("expanded", &e.graph)?;
    if out.has_dir() {
        out.artifact("petals.json", &(serde_json::to_string_pretty(&petals)? + "\n"))?;
        out.report(
            &serde_json::json!({ "vertices": e.graph.order(), "edges": e.graph.edge_count(), "petals": petals.len() }),
            &format!("{} vertices, {} edges, {} petals", e.graph.order(), e.graph.edge_count(), petals.len()),
        )?;
    }
    Ok(Outcome::Ok)
}

fn read_tower_spec(path: &PathBuf) -> anyhow::Result<CustomTowerSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn tower(
    mode: TowerMode,
    k: Option<usize>,
    spec: Option<&PathBuf>,
    g: &Global,
    out: &Output,
) -> anyhow::Result<Outcome> {
    let request = match mode {
        TowerMode::Paper => TowerRequest::Paper {
            k: k.ok_or_else(|| anyhow!("--k is required in paper mode"))?,
        },
        TowerMode::Custom => TowerRequest::Custom(read_tower_spec(
            spec.ok_or_else(|| anyhow!("--spec is required in custom mode"))?,
        )?),
    };
    let trace = match build_tower(&request, &g.limits()) {
        Ok(t) => t,
        Err(Error::InfeasibleTower(report)) => {
            // the error message already carries the text report
            if g.json {
                out.report(&report.to_json(), "")?;
            }
            return Err(Error::InfeasibleTower(report).into());
        }
        Err(e) => return Err(e.into()),
    };
    let mut files = Vec::new();
    for (l, h) in trace.graphs.iter().enumerate() {
        let name = format!("H{l}");
        if out.has_dir() {
            out.graph(&name, h)?;
            files.push(format!("{name}.json"));
        }
    }
    let manifest = trace.manifest(&files);
    if out.has_dir() {
        out.artifact("trace.json", &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    }
    let h = trace.final_graph();
    let mut text = format!(
        "{} levels, final graph {} vertices, {} edges",
        trace.levels.len(),
        h.order(),
        h.edge_count()
    );
    for n in &trace.notes {
        text.push_str(&format!("\nnote: {n}"));
    }
    out.report(&manifest, &text)?;
    Ok(Outcome::Ok)
}

fn cc(command: &CcCommand, g: &Global, out: &Output) -> anyhow::Result<Outcome> {
    match command {
        CcCommand::Verify { graph, coloring } => {
            let graph = read_graph(graph)?;
            let text = std::fs::read_to_string(coloring).with_context(|| format!("reading {}", coloring.display()))?;
            let col = CliqueColoring::from_json_str(&graph, &text)?;
            let v = verify_clique_coloring(&graph, &col)?;
            let witness = v.witness.as_ref().map(|w| graph.labels_of(w));
            let msg = match &witness {
                None => "valid clique-coloring".to_string(),
                Some(w) => format!("monochromatic maximal clique {}", w.join(",")),
            };
            out.report(&serde_json::json!({ "valid": v.valid, "witness": witness }), &msg)?;
            Ok(if v.valid { Outcome::Ok } else { Outcome::CheckFailed(msg) })
        }
        CcCommand::Chromatic { graph, max_colors } => {
            let graph = read_graph(graph)?;
            match clique_chromatic_number(&graph, *max_colors) {
                CliqueChromatic::Exact { value, witness } => {
                    out.report(
                        &serde_json::json!({ "value": value, "witness": witness.to_json(&graph).colors }),
                        &value.to_string(),
                    )?;
                    Ok(Outcome::Ok)
                }
                CliqueChromatic::ExceedsMax { max_colors } => {
                    out.report(
                        &serde_json::json!({ "value": null, "exceeds": max_colors }),
                        &format!("> {max_colors}"),
                    )?;
                    Ok(Outcome::CheckFailed(format!("no clique-coloring with at most {max_colors} colors")))
                }
            }
        }
        CcCommand::TowerColor { spec } => {
            let trace = build_tower(&TowerRequest::Custom(read_tower_spec(spec)?), &g.limits())?;
            let h = trace.final_graph();
            let col = construct_tower_coloring(&trace)?;
            let v = verify_clique_coloring(h, &col)?;
            if out.has_dir() {
                out.artifact("coloring.json", &(serde_json::to_string_pretty(&col.to_json(h))? + "\n"))?;
            }
            let witness = v.witness.as_ref().map(|w| h.labels_of(w));
            let text = match &witness {
                None => format!("valid clique-coloring of {} vertices with {} colors", h.order(), col.num_colors()),
                Some(w) => format!("recipe coloring is invalid: monochromatic maximal clique {}", w.join(",")),
            };
            out.report(
                &serde_json::json!({
                    "vertices": h.order(),
                    "colors_used": col.num_colors(),
                    "valid": v.valid,
                    "witness": witness,
                    "coloring": col.to_json(h).colors,
                }),
                &text,
            )?;
            Ok(if v.valid { Outcome::Ok } else { Outcome::CheckFailed(text) })
        }
    }
}

fn parse_mode(s: &str, seed: u64) -> anyhow::Result<CheckMode> {
    match s.split_once(':') {
        None if s == "exhaustive" => Ok(CheckMode::Exhaustive),
        Some(("sampled", n)) => Ok(CheckMode::Sampled {
            samples: n.parse().context("sampled:TRIALS")?,
            seed,
        }),
        _ => bail!("--mode must be exhaustive or sampled:TRIALS, got `{s}`"),
    }
}

fn lemma6(command: &Lemma6Command, g: &Global, out: &Output) -> anyhow::Result<Outcome> {
    match command {
        Lemma6Command::Sample { m, k, i } => {
            let inst = sample_bijection(*m, *k, *i, g.seed)?;
            let text = serde_json::to_string(&inst.to_json())? + "\n";
            out.artifact("instance.json", &text)?;
            Ok(Outcome::Ok)
        }
        Lemma6Command::Check { instance, m, k, i, property, mode } => {
            let inst = match instance {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let json: InstanceJson = serde_json::from_str(&text).map_err(Error::from)?;
                    Lemma6Instance::from_json(json)?
                }
                None => {
                    let (Some(m), Some(k), Some(i)) = (m, k, i) else {
                        bail!("give --instance or all of --m --k --i");
                    };
                    sample_bijection(*m, *k, *i, g.seed)?
                }
            };
            let mode = parse_mode(mode, g.seed)?;
            let r = if *property == 1 {
                check_property1(&inst, mode, g.max_exhaustive)?
            } else {
                check_property2(&inst, mode, g.max_exhaustive)?
            };
            let mut text = format!(
                "property {}: {} failures over {} sets ({})",
                r.property, r.failures, r.checked, r.note
            );
            for w in &r.witnesses {
                text.push_str(&format!("\n  part {} set {:?}", w.part, w.elements));
            }
            out.report(&serde_json::to_value(&r)?, &text)?;
            Ok(if r.holds() {
                Outcome::Ok
            } else {
                Outcome::CheckFailed(format!("property {} fails {} times", r.property, r.failures))
            })
        }
        Lemma6Command::Estimate { m, k, i, trials, inner } => {
            let e = estimate_failure_probability(*m, *k, *i, *trials, *inner, g.seed)?;
            let line = |name: &str, r: &Option<cliquecolor::lemma6::RateEstimate>| match r {
                None => format!("{name}: not applicable"),
                Some(r) => format!(
                    "{name}: {}/{} failing bijections, estimate {:.4}, 95% interval [{:.4}, {:.4}]",
                    r.failures, r.trials, r.p_hat, r.wilson_low, r.wilson_high
                ),
            };
            let text = format!("{}\n{}", line("p1", &e.p1), line("p2", &e.p2));
            out.report(&serde_json::to_value(&e)?, &text)?;
            Ok(Outcome::Ok)
        }
    }
}
