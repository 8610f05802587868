//! Tools for comparing the three relaxations on small graphs: exact
//! membership tests for points, fully separated root bounds, and an
//! exhaustive optimum.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::formulation::{build_bcwwy, build_cec, build_cut, cycle_row, LinearRow, Model, RowFamily};
use crate::graph::{transform, Cycle, Graph, TransformedGraph, Vertex};
use crate::heuristic::PathSolution;
use crate::lp::{LpStatus, Simplex, SimplexOutcome, FEASIBILITY_TOL};
use crate::separation::{min_cut_rows, Certificate, CutForm, Point};

/// Default budget for exhaustive cycle enumeration.
pub const CYCLE_LIMIT: usize = 1_000_000;
/// Largest graph accepted by [`brute_force_lipp`].
pub const BRUTE_FORCE_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relaxation {
    Qcec,
    Qcut,
    Qbcwwy,
}

impl Relaxation {
    pub fn name(self) -> &'static str {
        match self {
            Relaxation::Qcec => "cec",
            Relaxation::Qcut => "cut",
            Relaxation::Qbcwwy => "bcwwy",
        }
    }
}

/// Witness of a failed constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Column whose bounds `[0, 1]` are violated.
    Bound(usize),
    /// Index into the model's static rows.
    StaticRow(usize),
    Separated(Certificate),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub family: RowFamily,
    pub witness: Witness,
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict {
    pub feasible: bool,
    pub violated: Vec<Violation>,
}

fn static_model(gs: &TransformedGraph, which: Relaxation) -> Model {
    match which {
        Relaxation::Qcec => build_cec(gs),
        Relaxation::Qcut => build_cut(gs, false),
        Relaxation::Qbcwwy => build_bcwwy(gs),
    }
}

/// Exact membership of `p` in the relaxation, at tolerance
/// [`FEASIBILITY_TOL`]. Cycle rows are checked by enumerating every simple
/// cycle (at most [`CYCLE_LIMIT`]); cut rows by maximum flow.
pub fn check_membership(p: &Point, g: &Graph, which: Relaxation) -> Result<MembershipVerdict> {
    let gs = transform(g);
    if p.y.len() != g.n() || p.x.len() != gs.num_edges() {
        return Err(Error::InvalidParameter(format!(
            "point has {} vertex and {} edge values, expected {} and {}",
            p.y.len(),
            p.x.len(),
            g.n(),
            gs.num_edges()
        )));
    }
    let model = static_model(&gs, which);
    let cols = p.to_columns();
    let mut violated = Vec::new();
    for (c, &v) in cols.iter().enumerate() {
        let amount = (-v).max(v - 1.0);
        if amount > FEASIBILITY_TOL {
            violated.push(Violation { family: RowFamily::Other, witness: Witness::Bound(c), amount });
        }
    }
    for (i, row) in model.static_rows.iter().enumerate() {
        let amount = row.violation(&cols);
        if amount > FEASIBILITY_TOL {
            violated.push(Violation { family: row.family, witness: Witness::StaticRow(i), amount });
        }
    }
    match which {
        Relaxation::Qcec => {
            for c in simple_cycles(g, CYCLE_LIMIT)? {
                let row = cycle_row(&c);
                let amount = row.violation(&cols);
                if amount > FEASIBILITY_TOL {
                    let witness = Witness::Separated(Certificate::Cycle(Cycle(c)));
                    violated.push(Violation { family: RowFamily::Cycle, witness, amount });
                }
            }
        }
        Relaxation::Qcut | Relaxation::Qbcwwy => {
            let form = if which == Relaxation::Qcut { CutForm::Cutset } else { CutForm::Bcww };
            let res = min_cut_rows(&gs, p, form, FEASIBILITY_TOL);
            for (row, cert) in res.rows.iter().zip(res.certificates) {
                let amount = row.violation(&cols);
                violated.push(Violation { family: RowFamily::Cutset, witness: Witness::Separated(cert), amount });
            }
        }
    }
    Ok(MembershipVerdict { feasible: violated.is_empty(), violated })
}

/// Both clique sums of a point and whether each clique row holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliqueCheck {
    pub satisfies_x: bool,
    pub satisfies_y: bool,
    /// `Σ_{e ∈ E(K)} x̂_e`
    pub edge_sum: f64,
    /// `Σ_{v ∈ K} ŷ_v`
    pub vertex_sum: f64,
}

pub fn check_clique_point(p: &Point, g: &Graph, clique: &[Vertex]) -> Result<CliqueCheck> {
    let mut edge_sum = 0.0;
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            let e = g
                .edge_index(u, v)
                .ok_or_else(|| Error::InvalidParameter(format!("vertices {u} and {v} are not adjacent")))?;
            edge_sum += p.x[e];
        }
    }
    let vertex_sum: f64 = clique.iter().map(|&v| p.y[v]).sum();
    Ok(CliqueCheck {
        satisfies_x: edge_sum <= 1.0 + FEASIBILITY_TOL,
        satisfies_y: vertex_sum <= 2.0 + FEASIBILITY_TOL,
        edge_sum,
        vertex_sum,
    })
}

/// Every simple cycle of `g` (length at least three) once, starting at its
/// smallest vertex. Fails when more than `limit` cycles exist.
pub fn simple_cycles(g: &Graph, limit: usize) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for start in 0..g.n() {
        let mut path = vec![start];
        on_path[start] = true;
        extend_cycles(g, start, &mut path, &mut on_path, &mut out, limit)?;
        on_path[start] = false;
    }
    Ok(out)
}

fn extend_cycles(
    g: &Graph,
    start: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
    limit: usize,
) -> Result<()> {
    let tail = *path.last().expect("path starts non-empty");
    for &w in g.neighbors(tail) {
        if w == start && path.len() >= 3 && path[1] < tail {
            // each cycle is reported in one of its two directions
            if out.len() == limit {
                return Err(Error::TooLarge(format!("more than {limit} simple cycles; use a smaller instance")));
            }
            out.push(path.clone());
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_cycles(g, start, path, on_path, out, limit)?;
            path.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

/// Root bounds in vertex units with every dynamic family fully separated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBounds {
    pub cec: f64,
    pub cut: f64,
    pub bcwwy: f64,
    /// Largest `|Σy - Σ_E x - 1|` over the LP solutions visited.
    pub identity_residual: f64,
}

/// Optimizes each relaxation with all its cycle or cut rows by cutting
/// planes with exact separators.
///
/// Cycle rows are separated exactly as minimum weight cycles under vertex
/// weights `1 - ŷ`; cut rows by maximum flow.
pub fn compare_root_bounds(g: &Graph) -> Result<RootBounds> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let gs = transform(g);
    let mut residual: f64 = 0.0;
    let mut bound = |which: Relaxation| -> Result<f64> {
        let model = static_model(&gs, which);
        let (z, r) = closed_relaxation(&gs, &model, which)?;
        residual = residual.max(r);
        Ok(z)
    };
    let cec = bound(Relaxation::Qcec)?;
    let cut = bound(Relaxation::Qcut)?;
    let bcwwy = bound(Relaxation::Qbcwwy)?;
    Ok(RootBounds { cec, cut, bcwwy, identity_residual: residual })
}

/// `|Σy - Σ_{e ∈ E} x - 1|` of a column vector.
pub fn identity_residual(gs: &TransformedGraph, cols: &[f64]) -> f64 {
    let n = gs.base().n();
    let ysum: f64 = cols[..n].iter().sum();
    let xsum: f64 = cols[n..n + gs.base().m()].iter().sum();
    (ysum - xsum - 1.0).abs()
}

fn closed_relaxation(gs: &TransformedGraph, model: &Model, which: Relaxation) -> Result<(f64, f64)> {
    let n = gs.base().n();
    let mut lp = Simplex::new(&model.objective, &vec![0.0; model.num_cols()], &vec![1.0; model.num_cols()]);
    lp.add_rows(&model.static_rows);
    let mut residual: f64 = 0.0;
    for _ in 0..10_000 {
        match lp.solve() {
            SimplexOutcome::Optimal => {}
            other => return Err(Error::Numerical(format!("relaxation ended with {:?}", LpStatus::from(other)))),
        }
        let cols = lp.values().to_vec();
        residual = residual.max(identity_residual(gs, &cols));
        let p = Point::from_columns(n, &cols);
        let rows: Vec<LinearRow> = match which {
            Relaxation::Qcec => min_weight_cycle_rows(gs.base(), &p),
            Relaxation::Qcut => min_cut_rows(gs, &p, CutForm::Cutset, 1e-9).rows,
            Relaxation::Qbcwwy => min_cut_rows(gs, &p, CutForm::Bcww, 1e-9).rows,
        };
        if rows.is_empty() {
            return Ok((lp.objective() + model.objective_offset, residual));
        }
        lp.add_rows(&rows);
    }
    Err(Error::TooLarge("cutting plane loop did not converge".into()))
}

/// Violated cycle rows found as shortest `u`-`v` paths avoiding the edge
/// `uv`, for every edge, under vertex weights `1 - ŷ`. A cycle row is
/// violated iff its cycle has weight below one, so the minimum over all
/// edges decides exactly whether any cycle row is violated.
pub(crate) fn min_weight_cycle_rows(g: &Graph, p: &Point) -> Vec<LinearRow> {
    let w: Vec<f64> = p.y.iter().map(|&v| (1.0 - v).max(0.0)).collect();
    let mut seen = std::collections::HashSet::new();
    let mut rows = Vec::new();
    for &(u, v) in g.edges() {
        let Some(mut cyc) = shortest_path_avoiding(g, &w, u, v) else { continue };
        let weight: f64 = cyc.iter().map(|&x| w[x]).sum();
        if weight < 1.0 - 1e-9 {
            let row = cycle_row(&cyc);
            cyc.sort_unstable();
            if seen.insert(cyc) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Dijkstra with vertex weights from `u` to `v` not using edge `uv`.
fn shortest_path_avoiding(g: &Graph, w: &[f64], u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    #[derive(PartialEq)]
    struct Key(f64);
    impl Eq for Key {}
    impl PartialOrd for Key {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Key {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0)
        }
    }
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[u] = w[u];
    heap.push(Reverse((Key(w[u]), u)));
    while let Some(Reverse((Key(d), a))) = heap.pop() {
        if d > dist[a] {
            continue;
        }
        if a == v {
            break;
        }
        for &b in g.neighbors(a) {
            if a == u && b == v {
                continue;
            }
            let nd = d + w[b];
            if nd < dist[b] {
                dist[b] = nd;
                prev[b] = a;
                heap.push(Reverse((Key(nd), b)));
            }
        }
    }
    if dist[v].is_infinite() {
        return None;
    }
    let mut cyc = vec![v];
    let mut x = v;
    while x != u {
        x = prev[x];
        cyc.push(x);
    }
    Some(cyc)
}

/// Optimum by testing every vertex subset for inducing a path.
pub fn brute_force_lipp(g: &Graph) -> Result<PathSolution> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge(format!("brute force handles at most {BRUTE_FORCE_MAX_N} vertices, got {n}")));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let mut best_mask = 1u32;
    let mut best_size = 1;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones();
        if size > best_size && induces_path(&adj, mask) {
            best_size = size;
            best_mask = mask;
        }
    }
    Ok(PathSolution::new(order_path(&adj, best_mask)))
}

fn induces_path(adj: &[u32], mask: u32) -> bool {
    let mut degree_sum = 0;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = (adj[v] & mask).count_ones();
        if d > 2 {
            return false;
        }
        degree_sum += d;
    }
    // a forest with one edge fewer than vertices is a tree; max degree two
    // makes it a path
    if degree_sum != 2 * (mask.count_ones() - 1) {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut reached = 1u32 << start;
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == mask
}

fn order_path(adj: &[u32], mask: u32) -> Vec<Vertex> {
    let mut bits = mask;
    let mut start = mask.trailing_zeros() as usize;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if (adj[v] & mask).count_ones() <= 1 {
            start = v;
            break;
        }
    }
    let mut seq = vec![start];
    let mut used = 1u32 << start;
    loop {
        let tail = *seq.last().expect("non-empty");
        let next = adj[tail] & mask & !used;
        if next == 0 {
            return seq;
        }
        let w = next.trailing_zeros() as usize;
        used |= 1 << w;
        seq.push(w);
    }
}

/// Small graphs with hand-built points used by tests and the command line
/// report.
pub mod witnesses {
    use crate::graph::{transform, Graph};
    use crate::separation::Point;

    fn set(p: &mut Point, gs: &crate::graph::TransformedGraph, u: usize, v: usize, val: f64) {
        let e = if v == gs.s() { gs.dummy_edge(u) } else { gs.base().edge_index(u, v).expect("edge") };
        p.x[e] = val;
    }

    /// Two triangles `abc`, `def` joined by `cd` (vertices `a..f` are
    /// `0..6`), with a point in the cycle relaxation whose selected part
    /// `{a, b, c}` has no edge to the rest.
    pub fn disconnected_triangle() -> (Graph, Point) {
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).expect("valid");
        let gs = transform(&g);
        let s = gs.s();
        let t = 2.0 / 3.0;
        let mut p = Point::zeros(&gs);
        p.y = vec![t, t, t, 0.0, 1.0, 1.0];
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            set(&mut p, &gs, u, v, t);
        }
        for (u, v) in [(4, 5), (4, s), (5, s)] {
            set(&mut p, &gs, u, v, 1.0);
        }
        (g, p)
    }

    /// The two triangles of [`disconnected_triangle`] with every vertex at
    /// 3/4 and every edge at 1/2. It satisfies all degree, pair and cutset
    /// rows, but the cycle row of `abc` is violated by 1/4.
    pub fn cut_outside_cycle_relaxation() -> (Graph, Point) {
        let (g, _) = disconnected_triangle();
        let gs = transform(&g);
        let s = gs.s();
        let mut p = Point::zeros(&gs);
        p.y = vec![0.75; 6];
        for e in 0..g.m() {
            p.x[e] = 0.5;
        }
        for v in [0, 1, 4, 5] {
            set(&mut p, &gs, v, s, 0.5);
        }
        (g, p)
    }

    /// A triangle plus an isolated vertex. The isolated vertex has
    /// `x_{vs} = 1/2 > y_v = 1/4`, which the pair rows do not forbid
    /// because they only involve edges of the original graph.
    pub fn dummy_edge_excess() -> (Graph, Point) {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2)]).expect("valid");
        let gs = transform(&g);
        let s = gs.s();
        let mut p = Point::zeros(&gs);
        p.y = vec![0.75, 0.75, 0.75, 0.25];
        for e in 0..g.m() {
            p.x[e] = 0.5;
        }
        for v in 0..4 {
            set(&mut p, &gs, v, s, 0.5);
        }
        (g, p)
    }

    /// An edge `v1v2` and a triangle `v3v4v5` (ids `0..5`). The triangle's
    /// vertex sum is exactly 2 while its edge sum is 4/3.
    pub fn clique_edge_excess() -> (Graph, Point) {
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).expect("valid");
        let gs = transform(&g);
        let s = gs.s();
        let (a, b) = (1.0 / 3.0, 2.0 / 3.0);
        let mut p = Point::zeros(&gs);
        p.y = vec![a, a, b, b, b];
        for (u, v, val) in
            [(0, s, a), (1, s, a), (2, s, b), (3, s, a), (4, s, a), (0, 1, a), (2, 3, a), (3, 4, b), (2, 4, a)]
        {
            set(&mut p, &gs, u, v, val);
        }
        (g, p)
    }

    /// Triangles `v1v2v4` and `v3v4v5` sharing `v4` (ids `0..5`). The second
    /// triangle's edge sum is exactly 1 while its vertex sum is 13/6.
    pub fn clique_vertex_excess() -> (Graph, Point) {
        let g = Graph::new(5, [(3, 0), (3, 1), (0, 1), (2, 3), (3, 4), (4, 2)]).expect("valid");
        let gs = transform(&g);
        let s = gs.s();
        let mut p = Point::zeros(&gs);
        p.y = vec![1.0 / 6.0, 1.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0, 4.0 / 6.0];
        for (u, v, val) in [
            (3, 0, 1.0 / 6.0),
            (3, 1, 1.0 / 6.0),
            (0, 1, 1.0 / 6.0),
            (2, s, 4.0 / 6.0),
            (3, s, 4.0 / 6.0),
            (4, s, 4.0 / 6.0),
            (2, 3, 2.0 / 6.0),
            (3, 4, 2.0 / 6.0),
            (4, 2, 2.0 / 6.0),
        ] {
            set(&mut p, &gs, u, v, val);
        }
        (g, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, path, triangle_bridge};
    use crate::heuristic::verify_induced_path;
    use proptest::prelude::*;

    #[test]
    fn triangle_bridge_membership() {
        let (g, p) = witnesses::disconnected_triangle();
        assert!(check_membership(&p, &g, Relaxation::Qcec).unwrap().feasible);
        let cut = check_membership(&p, &g, Relaxation::Qcut).unwrap();
        assert!(!cut.feasible);
        let c = cut
            .violated
            .iter()
            .find(|v| v.witness == Witness::Separated(Certificate::Cut { set: vec![0, 1, 2], vertex: 2 }))
            .expect("cutset certificate for c");
        assert!((c.amount - 4.0 / 3.0).abs() < 1e-9);
        assert!(!check_membership(&p, &g, Relaxation::Qbcwwy).unwrap().feasible);
    }

    #[test]
    fn path_encodings_are_members() {
        let g = triangle_bridge();
        let gs = transform(&g);
        for seq in [vec![0, 2, 3, 4], vec![1, 2], vec![4, 3, 2, 0]] {
            let p = Point::from_path(&gs, &seq);
            for which in [Relaxation::Qcec, Relaxation::Qcut, Relaxation::Qbcwwy] {
                let v = check_membership(&p, &g, which).unwrap();
                assert!(v.feasible, "{seq:?} {which:?} {:?}", v.violated);
            }
        }
    }

    #[test]
    fn clique_witnesses() {
        let (g, p) = witnesses::clique_edge_excess();
        let c = check_clique_point(&p, &g, &[2, 3, 4]).unwrap();
        assert!(c.satisfies_y && !c.satisfies_x);
        assert!((c.vertex_sum - 2.0).abs() < 1e-9);
        assert!((c.edge_sum - 4.0 / 3.0).abs() < 1e-9);
        assert!(check_membership(&p, &g, Relaxation::Qcut).unwrap().feasible);

        let (g, p) = witnesses::clique_vertex_excess();
        let c = check_clique_point(&p, &g, &[2, 3, 4]).unwrap();
        assert!(c.satisfies_x && !c.satisfies_y);
        assert!((c.edge_sum - 1.0).abs() < 1e-9);
        assert!((c.vertex_sum - 13.0 / 6.0).abs() < 1e-9);

        let zero = Point::zeros(&transform(&g));
        let c = check_clique_point(&zero, &g, &[2, 3, 4]).unwrap();
        assert!(c.satisfies_x && c.satisfies_y);
        assert!(check_clique_point(&zero, &g, &[0, 2]).is_err());
    }

    #[test]
    fn vertex_excess_point_is_outside_the_cut_relaxation() {
        // y3 + y4 - x34 = 4/6 + 5/6 - 2/6 > 1
        let (g, p) = witnesses::clique_vertex_excess();
        let v = check_membership(&p, &g, Relaxation::Qcut).unwrap();
        assert!(v.violated.iter().any(|v| v.family == RowFamily::InducedLower));
    }

    #[test]
    fn cycle_enumeration() {
        assert_eq!(simple_cycles(&complete(4), 100).unwrap().len(), 7);
        assert_eq!(simple_cycles(&cycle(6), 100).unwrap(), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert!(simple_cycles(&path(5), 100).unwrap().is_empty());
        assert!(simple_cycles(&complete(6), 10).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_lipp(&triangle_bridge()).unwrap().cardinality(), 4);
        assert_eq!(brute_force_lipp(&cycle(5)).unwrap().cardinality(), 4);
        assert_eq!(brute_force_lipp(&path(7)).unwrap().cardinality(), 7);
        assert_eq!(brute_force_lipp(&Graph::new(3, []).unwrap()).unwrap().cardinality(), 1);
        assert!(brute_force_lipp(&path(21)).is_err());
    }

    #[test]
    fn containment_counterexamples() {
        let (g, p) = witnesses::cut_outside_cycle_relaxation();
        assert!(check_membership(&p, &g, Relaxation::Qcut).unwrap().feasible);
        let cec = check_membership(&p, &g, Relaxation::Qcec).unwrap();
        let v = cec
            .violated
            .iter()
            .find(
                |v| matches!(&v.witness, Witness::Separated(Certificate::Cycle(c)) if c.len() == 3 && c.0.contains(&0)),
            )
            .expect("triangle abc");
        assert!((v.amount - 0.25).abs() < 1e-9);

        let (g, p) = witnesses::dummy_edge_excess();
        assert!(check_membership(&p, &g, Relaxation::Qbcwwy).unwrap().feasible);
        assert!(!check_membership(&p, &g, Relaxation::Qcut).unwrap().feasible);
    }

    #[test]
    fn root_bound_examples() {
        let b = compare_root_bounds(&triangle_bridge()).unwrap();
        assert!((b.cec - 4.0).abs() < 1e-6, "{b:?}");
        assert!((b.cut - 4.5).abs() < 1e-6, "{b:?}");
        assert!((b.bcwwy - 4.5).abs() < 1e-6, "{b:?}");
        assert!(b.identity_residual <= 1e-7);

        let g = witnesses::dummy_edge_excess().0;
        let b = compare_root_bounds(&g).unwrap();
        assert!((b.cut - 2.0).abs() < 1e-6 && (b.bcwwy - 2.5).abs() < 1e-6, "{b:?}");

        let p = compare_root_bounds(&path(6)).unwrap();
        for z in [p.cec, p.cut, p.bcwwy] {
            assert!((z - 6.0).abs() < 1e-6, "{p:?}");
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (3..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n)
                .prop_map(move |e| Graph::new(n, e.into_iter().filter(|&(u, v)| u != v)).unwrap())
        })
    }

    fn brute_cycle_rows(g: &Graph, p: &Point) -> bool {
        simple_cycles(g, usize::MAX).unwrap().iter().any(|c| cycle_row(c).violation(&p.to_columns()) > 1e-9)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn brute_force_is_an_induced_path(g in arb_graph(10)) {
            let p = brute_force_lipp(&g).unwrap();
            prop_assert_eq!(verify_induced_path(&p.sequence, &g), Ok(()));
            let explored = (0..g.n())
                .map(|s| {
                    let mut best = 0;
                    crate::heuristic::explore_from(&g, s, |q| { best = best.max(q.len()); true });
                    best
                })
                .max()
                .unwrap();
            prop_assert_eq!(p.cardinality(), explored);
        }

        #[test]
        fn min_weight_cycles_match_enumeration(
            g in arb_graph(8),
            ys in proptest::collection::vec(0.0..=1.0f64, 8),
        ) {
            let gs = transform(&g);
            let mut p = Point::zeros(&gs);
            p.y = ys[..g.n()].to_vec();
            let found = min_weight_cycle_rows(&g, &p);
            for r in &found {
                prop_assert!(r.violation(&p.to_columns()) > 1e-9);
            }
            prop_assert_eq!(!found.is_empty(), brute_cycle_rows(&g, &p));
        }

        #[test]
        fn root_bounds_dominate_the_optimum(g in arb_graph(7)) {
            prop_assume!(g.m() >= 2);
            let b = compare_root_bounds(&g).unwrap();
            let opt = brute_force_lipp(&g).unwrap().cardinality() as f64;
            for z in [b.cec, b.cut, b.bcwwy] {
                prop_assert!(z >= opt - 1e-6, "{:?} < {}", b, opt);
            }
            prop_assert!(b.identity_residual <= 1e-7);
        }
    }
}
