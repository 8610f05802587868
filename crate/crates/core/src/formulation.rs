//! Variable layout and static rows of the three models, plus constructors
//! for the rows of the lazily separated families.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CliqueSet, TransformedGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulationKind {
    Cec,
    Cut,
    Bcwwy,
}

impl FormulationKind {
    pub fn name(self) -> &'static str {
        match self {
            FormulationKind::Cec => "cec",
            FormulationKind::Cut => "cut",
            FormulationKind::Bcwwy => "bcwwy",
        }
    }
}

impl std::str::FromStr for FormulationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cec" => Ok(FormulationKind::Cec),
            "cut" => Ok(FormulationKind::Cut),
            "bcwwy" => Ok(FormulationKind::Bcwwy),
            _ => Err(Error::InvalidParameter(format!("unknown formulation `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowFamily {
    Degree,
    DummyDegree,
    EdgeImpliesVertex,
    InducedLower,
    Cycle,
    Cutset,
    Subtour,
    CliqueX,
    CliqueY,
    BcwwPairLower,
    BcwwPairUpper,
    /// Rows added by callers that belong to no model family.
    Other,
}

/// Sparse row `Σ coef·col (sense) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRow {
    pub coefs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
    pub family: RowFamily,
}

impl LinearRow {
    /// Merges repeated columns and drops zero coefficients.
    pub fn new(mut coefs: Vec<(usize, f64)>, sense: Sense, rhs: f64, family: RowFamily) -> Self {
        coefs.sort_by_key(|&(c, _)| c);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(coefs.len());
        for (c, v) in coefs {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0.0);
        LinearRow { coefs: merged, sense, rhs, family }
    }

    pub fn activity(&self, values: &[f64]) -> f64 {
        self.coefs.iter().map(|&(c, v)| v * values[c]).sum()
    }

    /// Amount by which `values` violates the row; zero or negative when the
    /// row holds.
    pub fn violation(&self, values: &[f64]) -> f64 {
        let a = self.activity(values);
        match self.sense {
            Sense::Le => a - self.rhs,
            Sense::Ge => self.rhs - a,
            Sense::Eq => (a - self.rhs).abs(),
        }
    }
}

/// Column layout: `y_v` at column `v` for `v ∈ V`, then `x_e` at column
/// `n + e` for each edge id `e` of `G_s`. There is no column for `y_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSpace {
    pub n: usize,
    pub num_x: usize,
    pub integral: Vec<bool>,
}

impl VariableSpace {
    fn new(gs: &TransformedGraph, x_integral: bool) -> Self {
        let n = gs.base().n();
        let num_x = gs.num_edges();
        let mut integral = vec![true; n];
        integral.extend(std::iter::repeat_n(x_integral, num_x));
        VariableSpace { n, num_x, integral }
    }

    pub fn y(&self, v: Vertex) -> usize {
        v
    }

    pub fn x(&self, e: usize) -> usize {
        self.n + e
    }

    pub fn num_cols(&self) -> usize {
        self.n + self.num_x
    }

    pub fn is_y(&self, col: usize) -> bool {
        col < self.n
    }
}

#[derive(Debug, Clone)]
pub struct Model {
    pub kind: FormulationKind,
    pub vars: VariableSpace,
    pub static_rows: Vec<LinearRow>,
    /// Dense objective (maximized), one entry per column.
    pub objective: Vec<f64>,
    /// Added to model objective values to report vertex counts.
    pub objective_offset: f64,
    pub dynamic_families: Vec<RowFamily>,
}

impl Model {
    pub fn num_cols(&self) -> usize {
        self.vars.num_cols()
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, v)| c * v).sum::<f64>() + self.objective_offset
    }
}

fn degree_rows(gs: &TransformedGraph, vars: &VariableSpace, rows: &mut Vec<LinearRow>) {
    for v in 0..vars.n {
        let mut coefs: Vec<(usize, f64)> = gs.incident(v).iter().map(|&e| (vars.x(e), 1.0)).collect();
        coefs.push((vars.y(v), -2.0));
        rows.push(LinearRow::new(coefs, Sense::Eq, 0.0, RowFamily::Degree));
    }
}

fn dummy_row(gs: &TransformedGraph, vars: &VariableSpace) -> LinearRow {
    let coefs = gs.incident(gs.s()).iter().map(|&e| (vars.x(e), 1.0)).collect();
    LinearRow::new(coefs, Sense::Eq, 2.0, RowFamily::DummyDegree)
}

/// Static rows shared by `cec` and `cut`.
fn cec_static_rows(gs: &TransformedGraph, vars: &VariableSpace) -> Vec<LinearRow> {
    let mut rows = Vec::new();
    degree_rows(gs, vars, &mut rows);
    rows.push(dummy_row(gs, vars));
    for v in 0..vars.n {
        for &e in gs.incident(v) {
            rows.push(LinearRow::new(
                vec![(vars.x(e), 1.0), (vars.y(v), -1.0)],
                Sense::Le,
                0.0,
                RowFamily::EdgeImpliesVertex,
            ));
        }
    }
    for (e, &(u, v)) in gs.base().edges().iter().enumerate() {
        rows.push(LinearRow::new(
            vec![(vars.y(u), 1.0), (vars.y(v), 1.0), (vars.x(e), -1.0)],
            Sense::Le,
            1.0,
            RowFamily::InducedLower,
        ));
    }
    rows
}

fn y_objective(vars: &VariableSpace) -> Vec<f64> {
    let mut obj = vec![0.0; vars.num_cols()];
    obj[..vars.n].iter_mut().for_each(|c| *c = 1.0);
    obj
}

pub fn build_cec(gs: &TransformedGraph) -> Model {
    let vars = VariableSpace::new(gs, true);
    Model {
        kind: FormulationKind::Cec,
        static_rows: cec_static_rows(gs, &vars),
        objective: y_objective(&vars),
        objective_offset: 0.0,
        dynamic_families: vec![RowFamily::Cycle],
        vars,
    }
}

/// `cut` model. `subtour` selects the subtour form of the connectivity rows
/// instead of cutsets.
pub fn build_cut(gs: &TransformedGraph, subtour: bool) -> Model {
    let vars = VariableSpace::new(gs, true);
    let family = if subtour { RowFamily::Subtour } else { RowFamily::Cutset };
    Model {
        kind: FormulationKind::Cut,
        static_rows: cec_static_rows(gs, &vars),
        objective: y_objective(&vars),
        objective_offset: 0.0,
        dynamic_families: vec![family],
        vars,
    }
}

/// Edge-based baseline with vertex linking variables. `x` columns are
/// continuous, `y` columns binary; the objective counts base edges and the
/// offset of one turns it into a vertex count.
pub fn build_bcwwy(gs: &TransformedGraph) -> Model {
    let vars = VariableSpace::new(gs, false);
    let g = gs.base();
    let mut rows = vec![dummy_row(gs, &vars)];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        // δ_{G_s}({u, v}): edges with exactly one endpoint in {u, v}
        let boundary: Vec<usize> = gs.incident(u).iter().chain(gs.incident(v)).copied().filter(|&f| f != e).collect();
        let mut lower: Vec<(usize, f64)> = boundary.iter().map(|&f| (vars.x(f), -1.0)).collect();
        lower.push((vars.x(e), 2.0));
        rows.push(LinearRow::new(lower, Sense::Le, 0.0, RowFamily::BcwwPairLower));
        let upper = boundary.iter().map(|&f| (vars.x(f), 1.0)).collect();
        rows.push(LinearRow::new(upper, Sense::Le, 2.0, RowFamily::BcwwPairUpper));
    }
    degree_rows(gs, &vars, &mut rows);
    let mut objective = vec![0.0; vars.num_cols()];
    for e in 0..g.m() {
        objective[vars.x(e)] = 1.0;
    }
    Model {
        kind: FormulationKind::Bcwwy,
        static_rows: rows,
        objective,
        objective_offset: 1.0,
        dynamic_families: vec![RowFamily::Cutset],
        vars,
    }
}

pub fn build(kind: FormulationKind, gs: &TransformedGraph, subtour: bool) -> Model {
    match kind {
        FormulationKind::Cec => build_cec(gs),
        FormulationKind::Cut => build_cut(gs, subtour),
        FormulationKind::Bcwwy => build_bcwwy(gs),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueVariant {
    /// `Σ_{e ∈ E(K)} x_e ≤ 1`
    OnX,
    /// `Σ_{v ∈ K} y_v ≤ 2`
    OnY,
}

pub fn clique_row(gs: &TransformedGraph, clique: &[Vertex], variant: CliqueVariant) -> Result<LinearRow> {
    if clique.len() < 3 {
        return Err(Error::CliqueTooSmall(clique.len()));
    }
    let n = gs.base().n();
    let row = match variant {
        CliqueVariant::OnY => {
            LinearRow::new(clique.iter().map(|&v| (v, 1.0)).collect(), Sense::Le, 2.0, RowFamily::CliqueY)
        }
        CliqueVariant::OnX => {
            let mut coefs = Vec::new();
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    let e = gs
                        .base()
                        .edge_index(u, v)
                        .ok_or_else(|| Error::InvalidParameter(format!("vertices {u} and {v} are not adjacent")))?;
                    coefs.push((n + e, 1.0));
                }
            }
            LinearRow::new(coefs, Sense::Le, 1.0, RowFamily::CliqueX)
        }
    };
    Ok(row)
}

pub fn make_clique_rows(gs: &TransformedGraph, cliques: &CliqueSet, variant: CliqueVariant) -> Result<Vec<LinearRow>> {
    cliques.iter().map(|k| clique_row(gs, k, variant)).collect()
}

/// `Σ_{v ∈ C} y_v ≤ |C| - 1`
pub fn cycle_row(cycle: &[Vertex]) -> LinearRow {
    let coefs = cycle.iter().map(|&v| (v, 1.0)).collect();
    LinearRow::new(coefs, Sense::Le, cycle.len() as f64 - 1.0, RowFamily::Cycle)
}

fn membership(gs: &TransformedGraph, set: &[Vertex]) -> Vec<bool> {
    let mut in_set = vec![false; gs.num_vertices()];
    for &v in set {
        in_set[v] = true;
    }
    in_set
}

/// `Σ_{e ∈ δ_{G_s}(S)} x_e ≥ 2 y_v` for `S ⊆ V`, `v ∈ S`.
pub fn cutset_row(gs: &TransformedGraph, set: &[Vertex], v: Vertex) -> LinearRow {
    let n = gs.base().n();
    let mut coefs: Vec<(usize, f64)> = gs.cut_edges(&membership(gs, set)).into_iter().map(|e| (n + e, 1.0)).collect();
    coefs.push((v, -2.0));
    LinearRow::new(coefs, Sense::Ge, 0.0, RowFamily::Cutset)
}

/// `Σ_{e ∈ E(S)} x_e ≤ Σ_{u ∈ S∖{v}} y_u`
pub fn subtour_row(gs: &TransformedGraph, set: &[Vertex], v: Vertex) -> LinearRow {
    let n = gs.base().n();
    let mut coefs: Vec<(usize, f64)> = gs.inner_edges(&membership(gs, set)).into_iter().map(|e| (n + e, 1.0)).collect();
    coefs.extend(set.iter().filter(|&&u| u != v).map(|&u| (u, -1.0)));
    LinearRow::new(coefs, Sense::Le, 0.0, RowFamily::Subtour)
}

/// The edge-only form used by the baseline:
/// `Σ_{e ∈ δ_{G_s}(v)} x_e ≤ Σ_{e ∈ δ_{G_s}(S)} x_e`.
pub fn bcww_cut_row(gs: &TransformedGraph, set: &[Vertex], v: Vertex) -> LinearRow {
    let n = gs.base().n();
    let mut coefs: Vec<(usize, f64)> = gs.cut_edges(&membership(gs, set)).into_iter().map(|e| (n + e, 1.0)).collect();
    coefs.extend(gs.incident(v).iter().map(|&e| (n + e, -1.0)));
    LinearRow::new(coefs, Sense::Ge, 0.0, RowFamily::Cutset)
}

/// Static model in CPLEX LP text format. Lazily separated families are
/// listed as comments.
pub fn to_lp_format(model: &Model, gs: &TransformedGraph) -> String {
    let vars = &model.vars;
    let name = |c: usize| -> String {
        if vars.is_y(c) {
            format!("y{c}")
        } else {
            let (u, v) = gs.endpoints(c - vars.n);
            if v == gs.s() {
                format!("x{u}_s")
            } else {
                format!("x{u}_{v}")
            }
        }
    };
    let term_list = |coefs: &mut dyn Iterator<Item = (usize, f64)>| -> String {
        let mut s = String::new();
        for (i, (c, v)) in coefs.enumerate() {
            let sign = match (i, v < 0.0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => "+ ",
                (_, true) => "- ",
            };
            let mag = v.abs();
            if mag == 1.0 {
                let _ = write!(s, " {sign}{}", name(c));
            } else {
                let _ = write!(s, " {sign}{mag} {}", name(c));
            }
        }
        if s.is_empty() {
            s.push_str(" 0");
        }
        s
    };

    let mut out = String::new();
    let _ = writeln!(out, "\\ formulation {}", model.kind.name());
    let _ = writeln!(out, "\\ objective offset {}", model.objective_offset);
    for fam in &model.dynamic_families {
        let _ = writeln!(out, "\\ lazy family {fam:?} is separated during the search");
    }
    let obj = model.objective.iter().copied().enumerate().filter(|&(_, v)| v != 0.0);
    let _ = writeln!(out, "Maximize\n obj:{}", term_list(&mut obj.into_iter()));
    let _ = writeln!(out, "Subject To");
    for (i, row) in model.static_rows.iter().enumerate() {
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        let _ = writeln!(out, " r{i}:{} {op} {}", term_list(&mut row.coefs.iter().copied()), row.rhs);
    }
    let _ = writeln!(out, "Bounds");
    for c in 0..vars.num_cols() {
        let _ = writeln!(out, " 0 <= {} <= 1", name(c));
    }
    let ints: Vec<usize> = (0..vars.num_cols()).filter(|&c| vars.integral[c]).collect();
    if !ints.is_empty() {
        let _ = writeln!(out, "Binary");
        for c in ints {
            let _ = writeln!(out, " {}", name(c));
        }
    }
    let _ = writeln!(out, "End");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, triangle_bridge};
    use crate::graph::{transform, Graph};

    fn count(model: &Model, fam: RowFamily) -> usize {
        model.static_rows.iter().filter(|r| r.family == fam).count()
    }

    #[test]
    fn cec_row_counts() {
        let m = build_cec(&transform(&triangle_bridge()));
        assert_eq!(m.static_rows.len(), 34);
        assert_eq!(m.num_cols(), 19);
        assert_eq!(count(&m, RowFamily::Degree), 6);
        assert_eq!(count(&m, RowFamily::EdgeImpliesVertex), 20);
        assert_eq!(count(&m, RowFamily::InducedLower), 7);
        assert!(m.vars.integral.iter().all(|&b| b));
        assert_eq!(build_cec(&transform(&complete(3))).static_rows.len(), 16);
    }

    #[test]
    fn cut_shares_cec_rows() {
        let gs = transform(&triangle_bridge());
        let cec = build_cec(&gs);
        let cut = build_cut(&gs, false);
        assert_eq!(cec.static_rows, cut.static_rows);
        assert_eq!(cut.dynamic_families, vec![RowFamily::Cutset]);
        assert_eq!(build_cut(&gs, true).dynamic_families, vec![RowFamily::Subtour]);
    }

    #[test]
    fn bcwwy_row_counts() {
        let m = build_bcwwy(&transform(&triangle_bridge()));
        assert_eq!(m.static_rows.len(), 21);
        assert_eq!(m.objective_offset, 1.0);
        assert!(m.vars.integral[..6].iter().all(|&b| b));
        assert!(m.vars.integral[6..].iter().all(|&b| !b));
    }

    /// Encodes an induced path as a column vector.
    fn encode(gs: &TransformedGraph, path: &[usize]) -> Vec<f64> {
        let n = gs.base().n();
        let mut v = vec![0.0; n + gs.num_edges()];
        for &p in path {
            v[p] = 1.0;
        }
        for w in path.windows(2) {
            v[n + gs.base().edge_index(w[0], w[1]).unwrap()] = 1.0;
        }
        v[n + gs.dummy_edge(path[0])] = 1.0;
        v[n + gs.dummy_edge(*path.last().unwrap())] = 1.0;
        v
    }

    #[test]
    fn single_edge_forced() {
        let gs = transform(&Graph::new(2, [(0, 1)]).unwrap());
        let point = encode(&gs, &[0, 1]);
        for model in [build_cec(&gs), build_bcwwy(&gs)] {
            assert!(model.static_rows.iter().all(|r| r.violation(&point) <= 1e-12));
            assert_eq!(model.objective_value(&point), 2.0);
        }
    }

    #[test]
    fn path_encodings_satisfy_all_static_rows() {
        let gs = transform(&triangle_bridge());
        let point = encode(&gs, &[0, 2, 3, 4]);
        for model in [build_cec(&gs), build_cut(&gs, false), build_bcwwy(&gs)] {
            for r in &model.static_rows {
                assert!(r.violation(&point) <= 1e-12, "{:?}", r);
            }
            assert_eq!(model.objective_value(&point), 4.0);
        }
        assert!(cutset_row(&gs, &[0, 2], 0).violation(&point) <= 0.0);
        assert!(subtour_row(&gs, &[0, 2, 3], 2).violation(&point) <= 0.0);
    }

    #[test]
    fn clique_rows() {
        let gs = transform(&triangle_bridge());
        let y = clique_row(&gs, &[0, 1, 2], CliqueVariant::OnY).unwrap();
        assert_eq!(y.coefs, vec![(0, 1.0), (1, 1.0), (2, 1.0)]);
        assert_eq!(y.rhs, 2.0);
        let x = clique_row(&gs, &[0, 1, 2], CliqueVariant::OnX).unwrap();
        // edges ab, ac, bc are ids 0, 1, 2
        assert_eq!(x.coefs, vec![(6, 1.0), (7, 1.0), (8, 1.0)]);
        assert_eq!(x.rhs, 1.0);
        assert_eq!(clique_row(&gs, &[0, 1], CliqueVariant::OnY).unwrap_err(), Error::CliqueTooSmall(2));
        let rows = make_clique_rows(&gs, &vec![vec![0, 1, 2], vec![3, 4, 5]], CliqueVariant::OnY).unwrap();
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn lp_export_mentions_every_row() {
        let gs = transform(&triangle_bridge());
        let text = to_lp_format(&build_cec(&gs), &gs);
        assert!(text.starts_with("\\ formulation cec"));
        assert_eq!(text.lines().filter(|l| l.starts_with(" r")).count(), 34);
        assert!(text.contains("lazy family Cycle"));
        assert!(text.contains(" r0: -2 y0 + x0_1 + x0_2 + x0_s = 0"));
    }
}
