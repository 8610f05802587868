//! Separation oracles for the lazily added row families.
//!
//! Every oracle is pure and only returns rows that the input point violates
//! by more than [`SEPARATION_EPS`].

use crate::formulation::{bcww_cut_row, clique_row, cutset_row, cycle_row, subtour_row, CliqueVariant, LinearRow};
use crate::graph::{
    bfs_reachable_by, dfs_cycles_ordered, enumerate_maximal_cliques_capped, max_flow, CliqueSet, Cycle, FlowNetwork,
    Graph, TransformedGraph, Vertex,
};

/// Minimum violation of an emitted row, and the threshold above which a
/// vertex value counts as nonzero.
pub const SEPARATION_EPS: f64 = 1e-6;

/// A point `(ŷ, x̂)`: one value per vertex of `G` and one per edge of `G_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub y: Vec<f64>,
    pub x: Vec<f64>,
}

impl Point {
    pub fn zeros(gs: &TransformedGraph) -> Self {
        Point { y: vec![0.0; gs.base().n()], x: vec![0.0; gs.num_edges()] }
    }

    /// Splits a column vector laid out as in
    /// [`VariableSpace`](crate::formulation::VariableSpace).
    pub fn from_columns(n: usize, cols: &[f64]) -> Self {
        Point { y: cols[..n].to_vec(), x: cols[n..].to_vec() }
    }

    pub fn to_columns(&self) -> Vec<f64> {
        let mut cols = self.y.clone();
        cols.extend_from_slice(&self.x);
        cols
    }

    /// Encoding of an induced path with at least two vertices: its vertices
    /// and consecutive edges at one, plus the dummy edges of both ends.
    pub fn from_path(gs: &TransformedGraph, seq: &[Vertex]) -> Self {
        let mut p = Point::zeros(gs);
        for &v in seq {
            p.y[v] = 1.0;
        }
        for w in seq.windows(2) {
            if let Some(e) = gs.base().edge_index(w[0], w[1]) {
                p.x[e] = 1.0;
            }
        }
        if let (Some(&first), Some(&last)) = (seq.first(), seq.last()) {
            p.x[gs.dummy_edge(first)] = 1.0;
            p.x[gs.dummy_edge(last)] = 1.0;
        }
        p
    }

    pub fn y_integral(&self, tol: f64) -> bool {
        self.y.iter().all(|&v| (v - v.round()).abs() <= tol)
    }

    pub fn x_integral(&self, tol: f64) -> bool {
        self.x.iter().all(|&v| (v - v.round()).abs() <= tol)
    }

    fn support(&self) -> Vec<bool> {
        self.y.iter().map(|&v| v > SEPARATION_EPS).collect()
    }
}

/// Witness for one separated row.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Cycle(Cycle),
    /// A vertex set `S ⊆ V` and the vertex `v ∈ S` the row was built for.
    Cut {
        set: Vec<Vertex>,
        vertex: Vertex,
    },
    Clique(Vec<Vertex>),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SeparationResult {
    pub rows: Vec<LinearRow>,
    pub certificates: Vec<Certificate>,
}

impl SeparationResult {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    fn push_if_violated(&mut self, row: LinearRow, cert: Certificate, cols: &[f64]) -> bool {
        if row.violation(cols) > SEPARATION_EPS {
            self.rows.push(row);
            self.certificates.push(cert);
            true
        } else {
            false
        }
    }
}

/// Row shape used for connectivity cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutForm {
    /// `Σ_{δ(S)} x ≥ 2 y_v`
    Cutset,
    /// `Σ_{E(S)} x ≤ Σ_{S∖{v}} y`
    Subtour,
    /// `Σ_{δ(S)} x ≥ Σ_{δ(v)} x`, the edge-only form of the baseline.
    Bcww,
}

fn cut_row(gs: &TransformedGraph, form: CutForm, set: &[Vertex], v: Vertex) -> LinearRow {
    match form {
        CutForm::Cutset => cutset_row(gs, set, v),
        CutForm::Subtour => subtour_row(gs, set, v),
        CutForm::Bcww => bcww_cut_row(gs, set, v),
    }
}

/// Cycles of the support graph `G[{v : ŷ_v > 0}]`, one per DFS back edge.
///
/// Meant for integral points, where every such cycle is violated by one.
pub fn separate_cycles_integer(gs: &TransformedGraph, p: &Point) -> SeparationResult {
    let keep = p.support();
    let h = gs.base().induced(&keep);
    let roots: Vec<Vertex> = (0..h.n()).filter(|&v| keep[v]).collect();
    collect_cycles(&h, &roots, p, |v| h.neighbors(v).to_vec())
}

/// Greedy DFS over the support graph visiting vertices by non-increasing
/// `ŷ` (ties by id); restarts from the highest unvisited vertex. Heuristic.
pub fn separate_cycles_fractional(gs: &TransformedGraph, p: &Point) -> SeparationResult {
    let keep = p.support();
    let h = gs.base().induced(&keep);
    let by_value = |a: &Vertex, b: &Vertex| p.y[*b].total_cmp(&p.y[*a]).then(a.cmp(b));
    let mut roots: Vec<Vertex> = (0..h.n()).filter(|&v| keep[v]).collect();
    roots.sort_by(by_value);
    collect_cycles(&h, &roots, p, |v| {
        let mut nb = h.neighbors(v).to_vec();
        nb.sort_by(by_value);
        nb
    })
}

fn collect_cycles<N>(h: &Graph, roots: &[Vertex], p: &Point, order: N) -> SeparationResult
where
    N: FnMut(Vertex) -> Vec<Vertex>,
{
    let violated = |c: &[Vertex]| c.iter().map(|&v| p.y[v]).sum::<f64>() - (c.len() as f64 - 1.0) > SEPARATION_EPS;
    let cycles = dfs_cycles_ordered(h, roots, order, violated);
    let cols = p.to_columns();
    let mut out = SeparationResult::default();
    for c in cycles {
        let row = cycle_row(c.vertices());
        out.push_if_violated(row, Certificate::Cycle(c), &cols);
    }
    out
}

/// BFS from `s` over edges with `x̂_e ≥ 1 - ε`. Every selected vertex that
/// is not reached gets a row for its whole unreached component.
pub fn separate_cutset_integer(gs: &TransformedGraph, p: &Point, form: CutForm) -> SeparationResult {
    let nv = gs.num_vertices();
    let selected_edges = |v: Vertex| {
        gs.incident(v)
            .iter()
            .filter(|&&e| p.x[e] >= 1.0 - SEPARATION_EPS)
            .map(move |&e| {
                let (a, b) = gs.endpoints(e);
                if a == v {
                    b
                } else {
                    a
                }
            })
            .collect::<Vec<_>>()
    };
    let mut reached = vec![false; nv];
    for v in bfs_reachable_by(nv, gs.s(), selected_edges) {
        reached[v] = true;
    }
    let cols = p.to_columns();
    let mut out = SeparationResult::default();
    let support = p.support();
    for root in 0..gs.base().n() {
        if reached[root] || !support[root] {
            continue;
        }
        let comp = bfs_reachable_by(nv, root, selected_edges);
        for &v in &comp {
            reached[v] = true;
        }
        let mut set = comp;
        set.sort_unstable();
        for &v in &set {
            let cert = Certificate::Cut { set: set.clone(), vertex: v };
            out.push_if_violated(cut_row(gs, form, &set, v), cert, &cols);
        }
    }
    out
}

/// Exact separation by maximum flow from `s` to every support vertex, with
/// both arcs of an edge carrying capacity `x̂_e`. `S` is the smallest sink
/// side of a minimum cut.
///
/// Exact for the cutset and edge-only forms; for the subtour form it is
/// exact on points satisfying the degree equations.
pub fn separate_cutset_fractional(gs: &TransformedGraph, p: &Point, form: CutForm) -> SeparationResult {
    min_cut_rows(gs, p, form, SEPARATION_EPS)
}

pub(crate) fn min_cut_rows(gs: &TransformedGraph, p: &Point, form: CutForm, tol: f64) -> SeparationResult {
    let nv = gs.num_vertices();
    let mut net = FlowNetwork::new(nv);
    for (e, &xe) in p.x.iter().enumerate() {
        if xe > 0.0 {
            let (u, v) = gs.endpoints(e);
            net.add_edge(u, v, xe);
        }
    }
    let cols = p.to_columns();
    let mut out = SeparationResult::default();
    for v in 0..gs.base().n() {
        if p.y[v] <= SEPARATION_EPS {
            continue;
        }
        let flow = max_flow(&net, gs.s(), v).expect("s differs from every base vertex");
        let set: Vec<Vertex> = (0..gs.base().n()).filter(|&u| flow.sink_side[u]).collect();
        let row = cut_row(gs, form, &set, v);
        if row.violation(&cols) > tol {
            out.rows.push(row);
            out.certificates.push(Certificate::Cut { set, vertex: v });
        }
    }
    out
}

/// Greedy clique construction in the support graph.
///
/// Vertices are taken by non-increasing `ŷ`, then non-increasing support
/// degree, then id; each is added when adjacent to the whole clique so
/// far. Every vertex is tried as a seed in that order. The first clique
/// with `Σŷ > 2` is lifted with zero-valued vertices of `G` in
/// non-increasing degree order and returned as a vertex-form row. Returns
/// at most one row.
pub fn separate_cliques(gs: &TransformedGraph, p: &Point) -> SeparationResult {
    let g = gs.base();
    let support = p.support();
    let sep_degree: Vec<usize> = (0..g.n()).map(|v| g.neighbors(v).iter().filter(|&&w| support[w]).count()).collect();
    let mut order: Vec<Vertex> = (0..g.n()).filter(|&v| support[v]).collect();
    order.sort_by(|&a, &b| p.y[b].total_cmp(&p.y[a]).then(sep_degree[b].cmp(&sep_degree[a])).then(a.cmp(&b)));
    let mut lift: Vec<Vertex> = (0..g.n()).filter(|&v| !support[v]).collect();
    lift.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));

    let cols = p.to_columns();
    let mut out = SeparationResult::default();
    for (i, &seed) in order.iter().enumerate() {
        let mut clique = vec![seed];
        for &v in order.iter().skip(i + 1).chain(order[..i].iter()) {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        let sum: f64 = clique.iter().map(|&v| p.y[v]).sum();
        if clique.len() < 3 || sum <= 2.0 + SEPARATION_EPS {
            continue;
        }
        for &v in &lift {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        clique.sort_unstable();
        let row = clique_row(gs, &clique, CliqueVariant::OnY).expect("clique has at least three vertices");
        if out.push_if_violated(row, Certificate::Clique(clique), &cols) {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliquePolicy {
    AddAll(CliqueSet),
    SeparateInstead,
}

/// Adds every maximal clique with at least three vertices when there are at
/// most `max_cl` of them.
pub fn apriori_clique_policy(g: &Graph, max_cl: usize) -> CliquePolicy {
    match enumerate_maximal_cliques_capped(g, 3, max_cl) {
        Some(cliques) => CliquePolicy::AddAll(cliques),
        None => CliquePolicy::SeparateInstead,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, path, triangle_bridge};
    use crate::graph::transform;
    use crate::polylab::witnesses;
    use proptest::prelude::*;

    fn assert_sound(res: &SeparationResult, p: &Point) {
        let cols = p.to_columns();
        assert_eq!(res.rows.len(), res.certificates.len());
        for r in &res.rows {
            assert!(r.violation(&cols) > SEPARATION_EPS);
        }
    }

    #[test]
    fn integral_triangle() {
        let gs = transform(&complete(3));
        let mut p = Point::zeros(&gs);
        p.y = vec![1.0; 3];
        let res = separate_cycles_integer(&gs, &p);
        assert_eq!(res.len(), 1);
        assert_eq!(res.rows[0].coefs, vec![(0, 1.0), (1, 1.0), (2, 1.0)]);
        assert!((res.rows[0].violation(&p.to_columns()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integerized_triangle_bridge_point() {
        let (g, frac) = witnesses::disconnected_triangle();
        let gs = transform(&g);
        let mut p = frac.clone();
        p.y.iter_mut().for_each(|v| *v = v.ceil());
        p.x.iter_mut().for_each(|v| *v = v.ceil());
        let cyc = separate_cycles_integer(&gs, &p);
        assert_eq!(cyc.len(), 1);
        assert_eq!(cyc.certificates[0], Certificate::Cycle(Cycle(vec![0, 1, 2])));

        let cuts = separate_cutset_integer(&gs, &p, CutForm::Cutset);
        assert_eq!(cuts.len(), 3);
        for (v, cert) in cuts.certificates.iter().enumerate() {
            assert_eq!(cert, &Certificate::Cut { set: vec![0, 1, 2], vertex: v });
        }
        assert!((cuts.rows[0].violation(&p.to_columns()) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fractional_triangle_bridge_point() {
        let (g, p) = witnesses::disconnected_triangle();
        let gs = transform(&g);
        assert!(separate_cycles_fractional(&gs, &p).is_empty());
        let res = separate_cutset_fractional(&gs, &p, CutForm::Cutset);
        assert_sound(&res, &p);
        let c =
            res.certificates.iter().position(|c| matches!(c, Certificate::Cut { vertex: 2, .. })).expect("row for c");
        assert_eq!(res.certificates[c], Certificate::Cut { set: vec![0, 1, 2], vertex: 2 });
        assert!((res.rows[c].violation(&p.to_columns()) - 4.0 / 3.0).abs() < 1e-9);
        assert_eq!(res.len(), 3);
    }

    #[test]
    fn fractional_cycles() {
        let gs = transform(&complete(3));
        let mut p = Point::zeros(&gs);
        p.y = vec![0.9; 3];
        let res = separate_cycles_fractional(&gs, &p);
        assert_eq!(res.len(), 1);
        assert!((res.rows[0].violation(&p.to_columns()) - 0.7).abs() < 1e-12);
        assert!(separate_cycles_fractional(&gs, &Point::zeros(&gs)).is_empty());
    }

    #[test]
    fn path_encodings_pass_every_oracle() {
        let g = triangle_bridge();
        let gs = transform(&g);
        let p = Point::from_path(&gs, &[0, 2, 3, 4]);
        assert!(separate_cycles_integer(&gs, &p).is_empty());
        assert!(separate_cycles_fractional(&gs, &p).is_empty());
        for form in [CutForm::Cutset, CutForm::Subtour, CutForm::Bcww] {
            assert!(separate_cutset_integer(&gs, &p, form).is_empty());
            assert!(separate_cutset_fractional(&gs, &p, form).is_empty());
        }
        assert!(separate_cliques(&gs, &p).is_empty());
        let zero = Point::zeros(&gs);
        assert!(separate_cutset_integer(&gs, &zero, CutForm::Cutset).is_empty());
    }

    #[test]
    fn star_around_s_is_connected() {
        // every vertex half selected and hanging off s only
        let gs = transform(&path(3));
        let mut p = Point::zeros(&gs);
        p.y = vec![0.5; 3];
        for v in 0..3 {
            p.x[gs.dummy_edge(v)] = 1.0;
        }
        assert!(separate_cutset_fractional(&gs, &p, CutForm::Cutset).is_empty());
    }

    #[test]
    fn clique_examples() {
        let (g, p) = witnesses::clique_vertex_excess();
        let gs = transform(&g);
        let res = separate_cliques(&gs, &p);
        assert_eq!(res.certificates, vec![Certificate::Clique(vec![2, 3, 4])]);
        assert!((res.rows[0].violation(&p.to_columns()) - 1.0 / 6.0).abs() < 1e-9);

        let (g, p) = witnesses::clique_edge_excess();
        assert!(separate_cliques(&transform(&g), &p).is_empty());

        let gs = transform(&path(6));
        let mut p = Point::zeros(&gs);
        p.y = vec![1.0; 6];
        assert!(separate_cliques(&gs, &p).is_empty());
    }

    #[test]
    fn clique_lifting_uses_unselected_vertices() {
        let gs = transform(&complete(4));
        let mut p = Point::zeros(&gs);
        p.y = vec![0.8, 0.8, 0.8, 0.0];
        let res = separate_cliques(&gs, &p);
        assert_eq!(res.certificates, vec![Certificate::Clique(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn apriori_policy() {
        assert_eq!(
            apriori_clique_policy(&triangle_bridge(), 500),
            CliquePolicy::AddAll(vec![vec![0, 1, 2], vec![3, 4, 5]])
        );
        assert_eq!(apriori_clique_policy(&crate::graph::tests::cycle(5), 500), CliquePolicy::AddAll(vec![]));
        assert_eq!(apriori_clique_policy(&triangle_bridge(), 1), CliquePolicy::SeparateInstead);
    }

    fn all_simple_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
        crate::polylab::simple_cycles(g, usize::MAX).unwrap()
    }

    fn arb_graph_point(max_n: usize) -> impl Strategy<Value = (Graph, Point)> {
        (3..=max_n)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let np = pairs.len();
                (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), np))
            })
            .prop_flat_map(|(n, pairs, mask)| {
                let edges: Vec<(usize, usize)> =
                    pairs.into_iter().zip(mask).filter(|&(_, k)| k).map(|(e, _)| e).collect();
                let g = Graph::new(n, edges).unwrap();
                let ne = g.m() + n;
                let grid = prop_oneof![Just(0.0), Just(1.0), Just(0.5), Just(1.0 / 3.0), 0.0..=1.0f64];
                (Just(g), proptest::collection::vec(grid.clone(), n), proptest::collection::vec(grid, ne))
            })
            .prop_map(|(g, y, x)| (g, Point { y, x }))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn oracles_are_sound((g, p) in arb_graph_point(8)) {
            let gs = transform(&g);
            assert_sound(&separate_cycles_fractional(&gs, &p), &p);
            assert_sound(&separate_cycles_integer(&gs, &p), &p);
            assert_sound(&separate_cliques(&gs, &p), &p);
            for form in [CutForm::Cutset, CutForm::Subtour, CutForm::Bcww] {
                assert_sound(&separate_cutset_integer(&gs, &p, form), &p);
                assert_sound(&separate_cutset_fractional(&gs, &p, form), &p);
            }
        }

        #[test]
        fn fractional_cutset_is_exact((g, p) in arb_graph_point(7)) {
            let gs = transform(&g);
            let n = g.n();
            let cols = p.to_columns();
            let mut exists = false;
            for mask in 1u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if set.iter().any(|&v| cutset_row(&gs, &set, v).violation(&cols) > SEPARATION_EPS) {
                    exists = true;
                    break;
                }
            }
            prop_assert_eq!(exists, !separate_cutset_fractional(&gs, &p, CutForm::Cutset).is_empty());
        }

        #[test]
        fn integer_cycles_are_exact((g, p) in arb_graph_point(8)) {
            let gs = transform(&g);
            let mut p = p;
            p.y.iter_mut().for_each(|v| *v = v.round());
            let cols = p.to_columns();
            let exists = all_simple_cycles(&g)
                .iter()
                .any(|c| cycle_row(c).violation(&cols) > SEPARATION_EPS);
            prop_assert_eq!(exists, !separate_cycles_integer(&gs, &p).is_empty());
        }

        #[test]
        fn oracles_are_pure((g, p) in arb_graph_point(7)) {
            let gs = transform(&g);
            prop_assert_eq!(separate_cliques(&gs, &p), separate_cliques(&gs, &p));
            prop_assert_eq!(
                separate_cutset_fractional(&gs, &p, CutForm::Cutset),
                separate_cutset_fractional(&gs, &p, CutForm::Cutset)
            );
        }
    }
}
