//! Branch-and-cut driver.
//!
//! One simplex instance lives for the whole search. Separated rows go into
//! a global pool (they are valid everywhere), and nodes only differ in the
//! column bounds they fix. Nodes are explored best bound first, deeper
//! nodes first among equal bounds.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use log::{debug, info, warn};

use crate::error::{Error, Result};
use crate::formulation::{build, make_clique_rows, CliqueVariant, FormulationKind, LinearRow, Model, RowFamily};
use crate::graph::{transform, Graph, TransformedGraph};
use crate::heuristic::{verify_induced_path, PathSolution};
use crate::lp::{Simplex, SimplexOutcome, INTEGRALITY_TOL};
use crate::polylab::identity_residual;
use crate::separation::{
    apriori_clique_policy, separate_cliques, separate_cutset_fractional, separate_cutset_integer,
    separate_cycles_fractional, separate_cycles_integer, CliquePolicy, CutForm, Point, SeparationResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueMode {
    /// Add all maximal clique rows up front when there are at most
    /// `max_cl` of them, otherwise separate.
    Apriori,
    Separate,
    Off,
}

impl CliqueMode {
    pub fn name(self) -> &'static str {
        match self {
            CliqueMode::Apriori => "apriori",
            CliqueMode::Separate => "separate",
            CliqueMode::Off => "off",
        }
    }
}

impl std::str::FromStr for CliqueMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apriori" => Ok(CliqueMode::Apriori),
            "separate" => Ok(CliqueMode::Separate),
            "off" => Ok(CliqueMode::Off),
            _ => Err(Error::InvalidParameter(format!("unknown clique mode `{s}`"))),
        }
    }
}

/// Connectivity rows of the `cut` model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutVariant {
    Cutset,
    Subtour,
}

impl CutVariant {
    pub fn name(self) -> &'static str {
        match self {
            CutVariant::Cutset => "cutset",
            CutVariant::Subtour => "subtour",
        }
    }
}

impl std::str::FromStr for CutVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cutset" => Ok(CutVariant::Cutset),
            "subtour" => Ok(CutVariant::Subtour),
            _ => Err(Error::InvalidParameter(format!("unknown cut variant `{s}`"))),
        }
    }
}

/// Search settings. The search is single threaded.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub formulation: FormulationKind,
    pub clique_mode: CliqueMode,
    pub max_cl: usize,
    pub cut_variant: CutVariant,
    pub time_limit: Duration,
    /// Relative gap at which a node is considered closed.
    pub gap_tol: f64,
    pub root_only_fractional_separation: bool,
    /// Separate fractional points at all. Turning it off gives the
    /// integer-only separation of the baseline configuration.
    pub fractional_separation: bool,
    /// Cap on fractional separation rounds per node.
    pub max_separation_rounds: usize,
    pub warm_start: Option<PathSolution>,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            formulation: FormulationKind::Cut,
            clique_mode: CliqueMode::Apriori,
            max_cl: 500,
            cut_variant: CutVariant::Cutset,
            time_limit: Duration::from_secs(1200),
            gap_tol: 1e-6,
            root_only_fractional_separation: true,
            fractional_separation: true,
            max_separation_rounds: 50,
            warm_start: None,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_formulation(formulation: FormulationKind) -> Self {
        SolverConfig { formulation, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.gap_tol.is_nan() || self.gap_tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("gap tolerance {} must be positive", self.gap_tol)));
        }
        if self.time_limit.is_zero() {
            return Err(Error::InvalidParameter("time limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    TimeLimit,
    Infeasible,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "Optimal",
            SolveStatus::TimeLimit => "TimeLimit",
            SolveStatus::Infeasible => "Infeasible",
        }
    }
}

/// Rows separated during the search, by family. Subtour and edge-only
/// connectivity rows are counted as cutsets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CutCounts {
    pub cycle: usize,
    pub cutset: usize,
    pub clique: usize,
}

impl CutCounts {
    fn record(&mut self, rows: &[LinearRow]) {
        for r in rows {
            match r.family {
                RowFamily::Cycle => self.cycle += 1,
                RowFamily::Cutset | RowFamily::Subtour => self.cutset += 1,
                RowFamily::CliqueX | RowFamily::CliqueY => self.clique += 1,
                _ => {}
            }
        }
    }

    pub fn total(&self) -> usize {
        self.cycle + self.cutset + self.clique
    }
}

/// Wall-clock seconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub total: f64,
    pub root: f64,
    pub lp: f64,
    pub separation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub incumbent: Option<PathSolution>,
    /// Vertices on the incumbent path (0 without one).
    pub objective: usize,
    /// Upper bound in vertex units.
    pub best_bound: f64,
    /// `100 (bound - objective) / objective`; infinite without an incumbent.
    pub gap_percent: f64,
    pub nodes: u64,
    pub cuts: CutCounts,
    /// Clique rows added before the search.
    pub apriori_cliques: usize,
    /// Bound after the root cut loop, in vertex units.
    pub root_bound: f64,
    pub timings: Timings,
    /// Largest `|Σy - Σ_E x - 1|` over all LP solutions.
    pub identity_residual: f64,
    pub lp_solves: u64,
}

fn gap_percent(bound: f64, objective: usize) -> f64 {
    if objective == 0 {
        f64::INFINITY
    } else {
        (100.0 * (bound - objective as f64) / objective as f64).max(0.0)
    }
}

/// Solves the longest induced path problem on `g`.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(ws) = &cfg.warm_start {
        verify_induced_path(&ws.sequence, g)
            .map_err(|d| Error::InvalidParameter(format!("warm start is not an induced path: {d}")))?;
    }
    let start = Instant::now();
    if g.m() <= 1 {
        return Ok(trivial(g, start));
    }
    let gs = transform(g);
    BranchAndCut::new(g, &gs, cfg, start)?.run()
}

/// Without edges any vertex is optimal; with one edge, the edge.
fn trivial(g: &Graph, start: Instant) -> SolveReport {
    let seq = match g.edges().first() {
        Some(&(u, v)) => vec![u, v],
        None => vec![0],
    };
    let objective = seq.len();
    let total = start.elapsed().as_secs_f64();
    SolveReport {
        status: SolveStatus::Optimal,
        incumbent: Some(PathSolution::new(seq)),
        objective,
        best_bound: objective as f64,
        gap_percent: 0.0,
        nodes: 0,
        cuts: CutCounts::default(),
        apriori_cliques: 0,
        root_bound: objective as f64,
        timings: Timings { total, root: total, ..Default::default() },
        identity_residual: 0.0,
        lp_solves: 0,
    }
}

/// Walks from one end of the path (a selected dummy edge) along selected
/// edges to the other end.
pub fn decode_path(p: &Point, gs: &TransformedGraph) -> Result<PathSolution> {
    let g = gs.base();
    let on = |v: f64| v >= 0.5;
    let ends: Vec<usize> = (0..g.n()).filter(|&v| on(p.x[gs.dummy_edge(v)])).collect();
    if ends.len() != 2 {
        return Err(Error::Decode(format!("{} selected dummy edges instead of 2", ends.len())));
    }
    let mut seq = vec![ends[0]];
    let mut visited = vec![false; g.n()];
    visited[ends[0]] = true;
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    loop {
        let next: Vec<usize> = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| w != prev && on(p.x[g.edge_index(cur, w).expect("neighbors share an edge")]))
            .collect();
        match next.as_slice() {
            [] => break,
            [w] => {
                if visited[*w] {
                    return Err(Error::Decode(format!("selected edges revisit vertex {w}")));
                }
                visited[*w] = true;
                seq.push(*w);
                prev = cur;
                cur = *w;
            }
            _ => return Err(Error::Decode(format!("vertex {cur} has more than two selected edges"))),
        }
    }
    if cur != ends[1] {
        return Err(Error::Decode(format!("walk from {} stops at {cur}, not at {}", ends[0], ends[1])));
    }
    let selected = p.y.iter().filter(|&&v| on(v)).count();
    if selected != seq.len() {
        return Err(Error::Decode(format!(
            "selection is disconnected: walk covers {} of {selected} vertices",
            seq.len()
        )));
    }
    verify_induced_path(&seq, g).map_err(|d| Error::Decode(d.to_string()))?;
    Ok(PathSolution::new(seq))
}

fn is_fractional(v: f64) -> bool {
    (v - v.round()).abs() > INTEGRALITY_TOL
}

/// Branching column: the `y` column closest to 0.5, ties to the higher
/// degree and then the lower id. Integer `x` columns are used only when
/// every `y` is integral.
pub fn choose_branch(p: &Point, model: &Model, g: &Graph) -> Result<usize> {
    let closest = (0..p.y.len()).filter(|&v| is_fractional(p.y[v])).min_by(|&a, &b| {
        let (da, db) = ((p.y[a] - 0.5).abs(), (p.y[b] - 0.5).abs());
        if (da - db).abs() <= 1e-9 {
            g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b))
        } else {
            da.total_cmp(&db)
        }
    });
    if let Some(v) = closest {
        return Ok(model.vars.y(v));
    }
    (0..p.x.len())
        .map(|e| model.vars.x(e))
        .filter(|&c| model.vars.integral[c] && is_fractional(p.x[c - model.vars.n]))
        .min_by(|&a, &b| {
            let da = (p.x[a - model.vars.n] - 0.5).abs();
            let db = (p.x[b - model.vars.n] - 0.5).abs();
            da.total_cmp(&db).then(a.cmp(&b))
        })
        .ok_or(Error::IntegralPoint)
}

#[derive(Debug, Clone)]
struct Node {
    bound: f64,
    depth: usize,
    seq: u64,
    fixings: Vec<(usize, f64)>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound).then(self.depth.cmp(&other.depth)).then(self.seq.cmp(&other.seq))
    }
}

enum NodeOutcome {
    Pruned,
    Branch { bound: f64, col: usize },
    OutOfTime { bound: f64 },
}

struct BranchAndCut<'a> {
    g: &'a Graph,
    gs: &'a TransformedGraph,
    cfg: &'a SolverConfig,
    model: Model,
    lp: Simplex,
    rows: Vec<LinearRow>,
    fixed: Vec<Option<f64>>,
    form: CutForm,
    separate_cliques: bool,
    incumbent: Option<PathSolution>,
    cuts: CutCounts,
    apriori_cliques: usize,
    root_bound: Option<f64>,
    residual: f64,
    lp_solves: u64,
    timings: Timings,
    start: Instant,
}

impl<'a> BranchAndCut<'a> {
    fn new(g: &'a Graph, gs: &'a TransformedGraph, cfg: &'a SolverConfig, start: Instant) -> Result<Self> {
        let subtour = cfg.cut_variant == CutVariant::Subtour;
        let model = build(cfg.formulation, gs, subtour);
        let form = match (cfg.formulation, cfg.cut_variant) {
            (FormulationKind::Bcwwy, _) => CutForm::Bcww,
            (_, CutVariant::Cutset) => CutForm::Cutset,
            (_, CutVariant::Subtour) => CutForm::Subtour,
        };
        let mut rows = model.static_rows.clone();
        let mut separate = cfg.clique_mode == CliqueMode::Separate;
        let mut apriori_cliques = 0;
        if cfg.clique_mode == CliqueMode::Apriori {
            match apriori_clique_policy(g, cfg.max_cl) {
                CliquePolicy::AddAll(cliques) => {
                    let variant = match cfg.formulation {
                        FormulationKind::Bcwwy => CliqueVariant::OnX,
                        _ => CliqueVariant::OnY,
                    };
                    rows.extend(make_clique_rows(gs, &cliques, variant)?);
                    apriori_cliques = cliques.len();
                }
                CliquePolicy::SeparateInstead => {
                    info!("more than {} maximal cliques, separating clique rows instead", cfg.max_cl);
                    separate = true;
                }
            }
        }
        let ncols = model.num_cols();
        let mut lp = Simplex::new(&model.objective, &vec![0.0; ncols], &vec![1.0; ncols]);
        lp.add_rows(&rows);
        Ok(BranchAndCut {
            g,
            gs,
            cfg,
            lp,
            rows,
            fixed: vec![None; ncols],
            form,
            separate_cliques: separate,
            incumbent: cfg.warm_start.clone(),
            cuts: CutCounts::default(),
            apriori_cliques,
            root_bound: None,
            residual: 0.0,
            lp_solves: 0,
            timings: Timings::default(),
            start,
            model,
        })
    }

    fn incumbent_value(&self) -> usize {
        self.incumbent.as_ref().map_or(0, PathSolution::cardinality)
    }

    /// The objective is integral, so a node whose bound rounds down to the
    /// incumbent value cannot improve on it.
    fn can_prune(&self, bound: f64) -> bool {
        let inc = self.incumbent_value() as f64;
        (bound + 1e-6).floor() <= inc || bound - inc <= self.cfg.gap_tol * bound.abs()
    }

    fn out_of_time(&self) -> bool {
        self.start.elapsed() >= self.cfg.time_limit
    }

    fn run(mut self) -> Result<SolveReport> {
        let mut queue = BinaryHeap::new();
        let mut seq = 0u64;
        queue.push(Node { bound: self.g.n() as f64, depth: 0, seq, fixings: Vec::new() });
        let mut nodes = 0u64;
        let mut interrupted: Option<f64> = None;
        while let Some(node) = queue.pop() {
            if self.can_prune(node.bound) {
                continue;
            }
            nodes += 1;
            let outcome = self.process(&node)?;
            if node.depth == 0 {
                self.timings.root = self.start.elapsed().as_secs_f64();
            }
            match outcome {
                NodeOutcome::Pruned => {}
                NodeOutcome::Branch { bound, col } => {
                    for value in [0.0, 1.0] {
                        seq += 1;
                        let mut fixings = node.fixings.clone();
                        fixings.push((col, value));
                        queue.push(Node { bound, depth: node.depth + 1, seq, fixings });
                    }
                }
                NodeOutcome::OutOfTime { bound } => {
                    interrupted = Some(bound);
                    break;
                }
            }
            if nodes.is_multiple_of(100) {
                debug!(
                    "{nodes} nodes, {} open, incumbent {}, bound {:.3}",
                    queue.len(),
                    self.incumbent_value(),
                    queue.peek().map_or(0.0, |n| n.bound)
                );
            }
        }
        let objective = self.incumbent_value();
        let (status, best_bound) = match interrupted {
            Some(b) => {
                let open = queue.iter().map(|n| n.bound).fold(b, f64::max);
                (SolveStatus::TimeLimit, open.max(objective as f64))
            }
            None if self.incumbent.is_some() => (SolveStatus::Optimal, objective as f64),
            None => (SolveStatus::Infeasible, f64::NEG_INFINITY),
        };
        self.timings.total = self.start.elapsed().as_secs_f64();
        info!("{} with {objective} vertices after {nodes} nodes", status.name());
        Ok(SolveReport {
            status,
            incumbent: self.incumbent,
            objective,
            best_bound,
            gap_percent: gap_percent(best_bound, objective),
            nodes,
            cuts: self.cuts,
            apriori_cliques: self.apriori_cliques,
            root_bound: self.root_bound.unwrap_or(best_bound),
            timings: self.timings,
            identity_residual: self.residual,
            lp_solves: self.lp_solves,
        })
    }

    fn apply_fixings(&mut self, fixings: &[(usize, f64)]) {
        let mut target: Vec<Option<f64>> = vec![None; self.fixed.len()];
        for &(c, v) in fixings {
            target[c] = Some(v);
        }
        for (c, t) in target.into_iter().enumerate() {
            if t != self.fixed[c] {
                match t {
                    Some(v) => self.lp.set_bounds(c, v, v),
                    None => self.lp.set_bounds(c, 0.0, 1.0),
                }
                self.fixed[c] = t;
            }
        }
    }

    fn solve_lp(&mut self) -> Result<SimplexOutcome> {
        let t = Instant::now();
        self.lp_solves += 1;
        let mut outcome = self.lp.solve();
        if outcome == SimplexOutcome::IterationLimit {
            warn!("simplex hit its iteration limit, restarting from a fresh basis");
            let ncols = self.model.num_cols();
            let lower: Vec<f64> = self.fixed.iter().map(|f| f.unwrap_or(0.0)).collect();
            let upper: Vec<f64> = self.fixed.iter().map(|f| f.unwrap_or(1.0)).collect();
            debug_assert_eq!(lower.len(), ncols);
            self.lp = Simplex::new(&self.model.objective, &lower, &upper);
            self.lp.add_rows(&self.rows);
            outcome = self.lp.solve();
        }
        self.timings.lp += t.elapsed().as_secs_f64();
        match outcome {
            SimplexOutcome::IterationLimit => Err(Error::Numerical("iteration limit after restart".into())),
            o => Ok(o),
        }
    }

    fn add_rows(&mut self, res: SeparationResult) {
        self.cuts.record(&res.rows);
        self.lp.add_rows(&res.rows);
        self.rows.extend(res.rows);
    }

    fn process(&mut self, node: &Node) -> Result<NodeOutcome> {
        self.apply_fixings(&node.fixings);
        let at_root = node.depth == 0;
        let fractional = self.cfg.fractional_separation && (at_root || !self.cfg.root_only_fractional_separation);
        let mut rounds = 0;
        let mut bound = node.bound;
        loop {
            if self.out_of_time() {
                return Ok(NodeOutcome::OutOfTime { bound });
            }
            if self.solve_lp()? == SimplexOutcome::Infeasible {
                return Ok(NodeOutcome::Pruned);
            }
            let cols = self.lp.values().to_vec();
            self.residual = self.residual.max(identity_residual(self.gs, &cols));
            bound = bound.min(self.lp.objective() + self.model.objective_offset);
            if at_root {
                self.root_bound = Some(bound);
            }
            if self.can_prune(bound) {
                return Ok(NodeOutcome::Pruned);
            }
            let point = Point::from_columns(self.g.n(), &cols);
            if point.y_integral(INTEGRALITY_TOL) {
                let t = Instant::now();
                let res = self.separate_integer(&point);
                self.timings.separation += t.elapsed().as_secs_f64();
                if !res.is_empty() {
                    self.add_rows(res);
                    continue;
                }
                let path = decode_path(&point, self.gs)?;
                if path.cardinality() > self.incumbent_value() {
                    debug!("new incumbent with {} vertices", path.cardinality());
                    self.incumbent = Some(path);
                }
                return Ok(NodeOutcome::Pruned);
            }
            if fractional && rounds < self.cfg.max_separation_rounds {
                let t = Instant::now();
                let res = self.separate_fractional(&point);
                self.timings.separation += t.elapsed().as_secs_f64();
                if !res.is_empty() {
                    rounds += 1;
                    self.add_rows(res);
                    continue;
                }
            }
            let col = choose_branch(&point, &self.model, self.g)?;
            return Ok(NodeOutcome::Branch { bound, col });
        }
    }

    fn separate_integer(&self, p: &Point) -> SeparationResult {
        let mut res = match self.cfg.formulation {
            FormulationKind::Cec => separate_cycles_integer(self.gs, p),
            _ if p.x_integral(INTEGRALITY_TOL) => separate_cutset_integer(self.gs, p, self.form),
            _ => separate_cutset_fractional(self.gs, p, self.form),
        };
        if self.separate_cliques {
            merge(&mut res, separate_cliques(self.gs, p));
        }
        res
    }

    fn separate_fractional(&self, p: &Point) -> SeparationResult {
        let mut res = match self.cfg.formulation {
            FormulationKind::Cec => separate_cycles_fractional(self.gs, p),
            _ => separate_cutset_fractional(self.gs, p, self.form),
        };
        if self.separate_cliques {
            merge(&mut res, separate_cliques(self.gs, p));
        }
        res
    }
}

fn merge(into: &mut SeparationResult, other: SeparationResult) {
    into.rows.extend(other.rows);
    into.certificates.extend(other.certificates);
}
