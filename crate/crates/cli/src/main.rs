mod record;
mod run;
mod suite;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use lipp::formulation::{build, to_lp_format};
use lipp::graph::transform;
use lipp::polylab::{check_clique_point, check_membership, compare_root_bounds, witnesses, Relaxation};
use lipp::{CliqueMode, CutVariant, FormulationKind, Graph, Point};
use serde_json::json;

use record::{OutputFormat, RecordWriter};
use run::{Family, GenParams, RunSettings};

#[derive(Parser)]
#[command(name = "lipp", version, about = "Longest induced path by branch and cut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve instance files or a generated graph; one record per instance.
    Solve(SolveArgs),
    /// Run the configurations of a TOML manifest and print a summary CSV.
    Suite {
        manifest: PathBuf,
        /// Worker threads; each solve stays single threaded.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write every run record to this CSV file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Report root bounds of the three relaxations, or membership of a
    /// built-in witness point, as JSON.
    Polylab {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, conflicts_with_all = ["instances", "generate"])]
        witness: Option<WitnessName>,
    },
    /// Print the static model of an instance in LP format.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "cut")]
        formulation: FormulationKind,
        /// Use subtour rows as the connectivity family of `cut`.
        #[arg(long)]
        subtour: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Edge list or DIMACS files.
    instances: Vec<PathBuf>,
    #[arg(long, value_enum)]
    generate: Option<Family>,
    /// Vertices of a Barabási-Albert graph.
    #[arg(long)]
    n: Option<usize>,
    /// Edges attached per new Barabási-Albert vertex.
    #[arg(long)]
    d: Option<usize>,
    /// Hypercube dimension.
    #[arg(long)]
    k: Option<u32>,
    /// Torus side length.
    #[arg(long)]
    side: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InputArgs {
    fn graphs(&self) -> anyhow::Result<Vec<(String, Graph)>> {
        let mut out = Vec::new();
        if let Some(f) = self.generate {
            let p = GenParams { n: self.n, d: self.d, k: self.k, side: self.side };
            out.push(run::generate(f, &p, self.seed)?);
        }
        for path in &self.instances {
            out.push(run::load(path)?);
        }
        if out.is_empty() {
            bail!("no instance given; pass files or --generate");
        }
        Ok(out)
    }

    fn single(&self) -> anyhow::Result<(String, Graph)> {
        let mut gs = self.graphs()?;
        if gs.len() != 1 {
            bail!("expected exactly one instance, got {}", gs.len());
        }
        Ok(gs.remove(0))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "cut")]
    formulation: FormulationKind,
    #[arg(long, default_value = "apriori")]
    cliques: CliqueMode,
    #[arg(long, default_value_t = 500)]
    maxcl: usize,
    #[arg(long, default_value = "cutset")]
    cut_variant: CutVariant,
    /// Seconds for the whole run, heuristic included.
    #[arg(long, default_value_t = 1200.0)]
    time_limit: f64,
    /// Seed the search with the heuristic path.
    #[arg(long)]
    warm_start: bool,
    /// Seconds for the heuristic; a tenth of the time limit by default.
    #[arg(long)]
    heuristic_time: Option<f64>,
    #[arg(long, default_value_t = 5000)]
    maxpaths: usize,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum WitnessName {
    TriangleBridge,
    CliqueEdgeExcess,
    CliqueVertexExcess,
    CutOutsideCycle,
    DummyEdgeExcess,
}

fn seconds(s: f64, flag: &str) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("--{flag} {s} is not a valid duration"))
}

fn cmd_solve(a: &SolveArgs) -> anyhow::Result<()> {
    let settings = RunSettings {
        formulation: a.formulation,
        cliques: a.cliques,
        max_cl: a.maxcl,
        cut_variant: a.cut_variant,
        time_limit: seconds(a.time_limit, "time-limit")?,
        warm_start: a.warm_start,
        heuristic_time: a.heuristic_time.map(|h| seconds(h, "heuristic-time")).transpose()?,
        maxpaths: a.maxpaths,
        seed: a.input.seed,
    };
    let graphs = a.input.graphs()?;
    let stdout = std::io::stdout();
    let mut w = RecordWriter::new(stdout.lock(), a.output)?;
    for (name, g) in &graphs {
        let rec = run::run_one(name, g, &settings)?;
        w.write(&rec)?;
        w.flush()?;
    }
    Ok(())
}

fn cmd_suite(manifest: &Path, jobs: usize, records: Option<&Path>) -> anyhow::Result<()> {
    let m = suite::read_manifest(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let out = suite::run_suite(&m, base, jobs)?;
    if let Some(path) = records {
        let file = std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = RecordWriter::new(file, OutputFormat::Csv)?;
        for r in &out.records {
            w.write(r)?;
        }
        w.flush()?;
    }
    suite::write_summary(&out.summary, std::io::stdout().lock())
}

fn membership_json(p: &Point, g: &Graph) -> anyhow::Result<serde_json::Value> {
    let mut map = serde_json::Map::new();
    for which in [Relaxation::Qcec, Relaxation::Qcut, Relaxation::Qbcwwy] {
        let v = check_membership(p, g, which)?;
        let violated: Vec<_> = v
            .violated
            .iter()
            .map(|x| json!({"family": format!("{:?}", x.family), "witness": format!("{:?}", x.witness), "amount": x.amount}))
            .collect();
        map.insert(which.name().into(), json!({"feasible": v.feasible, "violated": violated}));
    }
    Ok(map.into())
}

fn cmd_polylab(input: &InputArgs, witness: Option<WitnessName>) -> anyhow::Result<()> {
    let report = match witness {
        Some(w) => {
            let (g, p) = match w {
                WitnessName::TriangleBridge => witnesses::disconnected_triangle(),
                WitnessName::CliqueEdgeExcess => witnesses::clique_edge_excess(),
                WitnessName::CliqueVertexExcess => witnesses::clique_vertex_excess(),
                WitnessName::CutOutsideCycle => witnesses::cut_outside_cycle_relaxation(),
                WitnessName::DummyEdgeExcess => witnesses::dummy_edge_excess(),
            };
            let mut r = json!({
                "witness": format!("{w:?}"),
                "n": g.n(),
                "m": g.m(),
                "y": p.y,
                "x": p.x,
                "membership": membership_json(&p, &g)?,
            });
            if matches!(w, WitnessName::CliqueEdgeExcess | WitnessName::CliqueVertexExcess) {
                let c = check_clique_point(&p, &g, &[2, 3, 4])?;
                r["clique"] = json!({
                    "vertices": [2, 3, 4],
                    "edgeSum": c.edge_sum,
                    "vertexSum": c.vertex_sum,
                    "satisfiesX": c.satisfies_x,
                    "satisfiesY": c.satisfies_y,
                });
            }
            r
        }
        None => {
            let (name, g) = input.single()?;
            let b = compare_root_bounds(&g)?;
            json!({
                "instance": name,
                "n": g.n(),
                "m": g.m(),
                "rootBounds": {"cec": b.cec, "cut": b.cut, "bcwwy": b.bcwwy},
                "cutWithinCec": b.cut <= b.cec + 1e-6,
                "cutEqualsBcwwy": (b.cut - b.bcwwy).abs() <= 1e-6,
                "identityResidual": b.identity_residual,
            })
        }
    };
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_export(input: &InputArgs, kind: FormulationKind, subtour: bool) -> anyhow::Result<()> {
    let (_, g) = input.single()?;
    let gs = transform(&g);
    let model = build(kind, &gs, subtour);
    std::io::stdout().lock().write_all(to_lp_format(&model, &gs).as_bytes())?;
    Ok(())
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Suite { manifest, jobs, records } => cmd_suite(manifest, *jobs, records.as_deref()),
        Command::Polylab { input, witness } => cmd_polylab(input, *witness),
        Command::Export { input, formulation, subtour } => cmd_export(input, *formulation, *subtour),
    }
}
