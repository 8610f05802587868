//! Batch runs described by a TOML manifest.
//!
//! ```toml
//! instances = ["graphs/karate.txt"]   # relative to the manifest
//!
//! [[generate]]
//! family = "ba"
//! n = 20
//! d = 3
//! count = 30        # seeds first_seed .. first_seed + count
//! first_seed = 1
//!
//! [[config]]
//! name = "cut"
//! formulation = "cut"
//! cliques = "apriori"
//! time_limit = 60
//! warm_start = true
//! ```
//!
//! Without any `[[config]]` table the default configuration is run.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use anyhow::Context;
use lipp::{CliqueMode, CutVariant, FormulationKind, Graph};
use serde::{Deserialize, Serialize};

use crate::record::RunRecord;
use crate::run::{generate, load, run_one, Family, GenParams, RunSettings};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub instances: Vec<PathBuf>,
    #[serde(default)]
    pub generate: Vec<GenSpec>,
    #[serde(default)]
    pub config: Vec<ConfigSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub family: Family,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub k: Option<u32>,
    pub side: Option<usize>,
    #[serde(default = "one")]
    pub count: u64,
    #[serde(default = "one")]
    pub first_seed: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub name: Option<String>,
    pub formulation: Option<String>,
    pub cliques: Option<String>,
    pub maxcl: Option<usize>,
    pub cut_variant: Option<String>,
    pub time_limit: Option<f64>,
    #[serde(default)]
    pub warm_start: bool,
    pub heuristic_time: Option<f64>,
    pub maxpaths: Option<usize>,
    pub seed: Option<u64>,
}

fn seconds(s: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("invalid duration {s}"))
}

impl ConfigSpec {
    fn settings(&self) -> anyhow::Result<(String, RunSettings)> {
        let d = RunSettings::default();
        let formulation: FormulationKind = self.formulation.as_deref().map_or(Ok(d.formulation), str::parse)?;
        let cliques: CliqueMode = self.cliques.as_deref().map_or(Ok(d.cliques), str::parse)?;
        let s = RunSettings {
            formulation,
            cliques,
            max_cl: self.maxcl.unwrap_or(d.max_cl),
            cut_variant: self.cut_variant.as_deref().map_or(Ok(d.cut_variant), str::parse::<CutVariant>)?,
            time_limit: self.time_limit.map_or(Ok(d.time_limit), seconds)?,
            warm_start: self.warm_start,
            heuristic_time: self.heuristic_time.map(seconds).transpose()?,
            maxpaths: self.maxpaths.unwrap_or(d.maxpaths),
            seed: self.seed.unwrap_or(d.seed),
        };
        let name = self.name.clone().unwrap_or_else(|| format!("{}-{}", formulation.name(), cliques.name()));
        Ok((name, s))
    }
}

/// One line of the summary table: either the totals of a configuration or
/// an instance or run that failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SummaryRow {
    pub kind: String,
    pub config: Option<String>,
    pub instance: Option<String>,
    pub runs: usize,
    pub solved: usize,
    pub timeouts: usize,
    pub errors: usize,
    pub median_seconds: Option<f64>,
    pub message: Option<String>,
}

impl SummaryRow {
    fn error(config: Option<&str>, instance: &str, err: &anyhow::Error) -> Self {
        SummaryRow {
            kind: "error".into(),
            config: config.map(str::to_string),
            instance: Some(instance.to_string()),
            runs: 0,
            solved: 0,
            timeouts: 0,
            errors: 1,
            median_seconds: None,
            message: Some(format!("{err:#}")),
        }
    }
}

#[derive(Debug, Default)]
pub struct SuiteOutcome {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let k = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[k] } else { (xs[k - 1] + xs[k]) / 2.0 })
}

pub fn read_manifest(path: &Path) -> anyhow::Result<Manifest> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("invalid manifest {}", path.display()))
}

/// Runs every configuration on every instance using `jobs` worker threads.
/// Instances that cannot be loaded and runs that fail become error rows.
pub fn run_suite(manifest: &Manifest, base: &Path, jobs: usize) -> anyhow::Result<SuiteOutcome> {
    let mut configs = Vec::new();
    for c in &manifest.config {
        configs.push(c.settings()?);
    }
    if configs.is_empty() {
        configs.push(ConfigSpec::default().settings()?);
    }
    let mut out = SuiteOutcome::default();
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for p in &manifest.instances {
        let full = base.join(p);
        match load(&full) {
            Ok(x) => graphs.push(x),
            Err(e) => out.summary.push(SummaryRow::error(None, &p.display().to_string(), &e)),
        }
    }
    for spec in &manifest.generate {
        let params = GenParams { n: spec.n, d: spec.d, k: spec.k, side: spec.side };
        for seed in spec.first_seed..spec.first_seed + spec.count {
            graphs.push(generate(spec.family, &params, seed)?);
        }
    }

    let tasks: Vec<(usize, usize)> = (0..configs.len()).flat_map(|c| (0..graphs.len()).map(move |i| (c, i))).collect();
    let results: Mutex<Vec<Option<anyhow::Result<RunRecord>>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(tasks.len().max(1)) {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(c, i)) = tasks.get(t) else { break };
                let (name, g) = &graphs[i];
                let r = run_one(name, g, &configs[c].1);
                results.lock().expect("worker panicked")[t] = Some(r);
            });
        }
    });

    let results = results.into_inner().expect("worker panicked");
    for (c, (cname, s)) in configs.iter().enumerate() {
        let mut row = SummaryRow {
            kind: "config".into(),
            config: Some(cname.clone()),
            instance: None,
            runs: 0,
            solved: 0,
            timeouts: 0,
            errors: 0,
            median_seconds: None,
            message: Some(format!("{} {}", s.formulation.name(), s.cliques.name())),
        };
        let mut times = Vec::new();
        let mut errors = Vec::new();
        for (t, r) in tasks.iter().zip(&results) {
            if t.0 != c {
                continue;
            }
            row.runs += 1;
            match r.as_ref().expect("every task ran") {
                Ok(rec) => {
                    match rec.status.as_str() {
                        "Optimal" => row.solved += 1,
                        "TimeLimit" => row.timeouts += 1,
                        _ => {}
                    }
                    times.push(rec.time_seconds);
                    out.records.push(rec.clone());
                }
                Err(e) => {
                    row.errors += 1;
                    errors.push(SummaryRow::error(Some(cname), &graphs[t.1].0, e));
                }
            }
        }
        row.median_seconds = median(times);
        if row.runs > 0 {
            out.summary.push(row);
        }
        out.summary.extend(errors);
    }
    Ok(out)
}

pub fn write_summary<W: std::io::Write>(rows: &[SummaryRow], out: W) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["kind", "config", "instance", "runs", "solved", "timeouts", "errors", "medianSeconds", "message"])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
