//! Loading instances and running one configuration on one graph.

use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use lipp::io::{generate_barabasi_albert, generate_hypercube, generate_torus, parse_edge_list};
use lipp::{ghlipp, solve, CliqueMode, CutVariant, FormulationKind, Graph, HeuristicConfig, SolverConfig};
use serde::Deserialize;

use crate::record::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ba,
    Hypercube,
    Torus,
}

/// Parameters of a synthetic instance. Only the ones the family needs are
/// required.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenParams {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub k: Option<u32>,
    pub side: Option<usize>,
}

pub fn generate(family: Family, p: &GenParams, seed: u64) -> anyhow::Result<(String, Graph)> {
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--generate {family:?} needs --{flag}"));
    Ok(match family {
        Family::Ba => {
            let (n, d) = (need(p.n, "n")?, need(p.d, "d")?);
            (format!("ba_n{n}_d{d}_s{seed}"), generate_barabasi_albert(n, d, seed)?)
        }
        Family::Hypercube => {
            let k = p.k.context("--generate hypercube needs --k")?;
            (format!("hypercube_{k}"), generate_hypercube(k)?)
        }
        Family::Torus => {
            let side = need(p.side, "side")?;
            (format!("torus_{side}"), generate_torus(side)?)
        }
    })
}

/// Reads an instance file; the instance is named after the file stem.
pub fn load(path: &Path) -> anyhow::Result<(String, Graph)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let (g, meta) = parse_edge_list(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    if meta.dropped_edges > 0 {
        log::warn!("{}: dropped {} loops or repeated edges", path.display(), meta.dropped_edges);
    }
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, g))
}

/// Everything needed to run one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub formulation: FormulationKind,
    pub cliques: CliqueMode,
    pub max_cl: usize,
    pub cut_variant: CutVariant,
    pub time_limit: Duration,
    pub warm_start: bool,
    /// Heuristic budget; defaults to a tenth of the time limit.
    pub heuristic_time: Option<Duration>,
    pub maxpaths: usize,
    pub seed: u64,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            formulation: FormulationKind::Cut,
            cliques: CliqueMode::Apriori,
            max_cl: 500,
            cut_variant: CutVariant::Cutset,
            time_limit: Duration::from_secs(1200),
            warm_start: false,
            heuristic_time: None,
            maxpaths: 5000,
            seed: 0,
        }
    }
}

impl RunSettings {
    fn solver_config(&self, time_limit: Duration) -> SolverConfig {
        SolverConfig {
            formulation: self.formulation,
            clique_mode: self.cliques,
            max_cl: self.max_cl,
            cut_variant: self.cut_variant,
            time_limit,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }

    /// Heuristic and solver budgets. With a warm start the heuristic gets a
    /// tenth of the limit unless told otherwise, the solver the rest.
    fn budgets(&self) -> anyhow::Result<(Duration, Duration)> {
        if self.time_limit.is_zero() {
            bail!("time limit must be positive");
        }
        if !self.warm_start {
            return Ok((Duration::ZERO, self.time_limit));
        }
        let h = self.heuristic_time.unwrap_or(self.time_limit / 10);
        let rest = self.time_limit.saturating_sub(h);
        if rest.is_zero() {
            bail!("heuristic time {h:?} leaves no time for the solver within {:?}", self.time_limit);
        }
        Ok((h, rest))
    }
}

pub fn run_one(name: &str, g: &Graph, s: &RunSettings) -> anyhow::Result<RunRecord> {
    let (h_budget, s_budget) = s.budgets()?;
    let start = Instant::now();
    let mut cfg = s.solver_config(s_budget);
    let mut warm_value = None;
    if s.warm_start {
        let hcfg = HeuristicConfig { maxpaths: s.maxpaths, time_limit: Some(h_budget), seed: s.seed };
        let path = ghlipp(g, &hcfg);
        log::info!("{name}: heuristic path of {} vertices", path.cardinality());
        warm_value = Some(path.cardinality());
        cfg.warm_start = Some(path);
    }
    let report = solve(g, &cfg).with_context(|| format!("solving {name}"))?;
    Ok(RunRecord::new(name, g, &cfg, &report, warm_value, start.elapsed().as_secs_f64()))
}
