//! Simple undirected graphs, the dummy-vertex transform and the traversals
//! used by the models and separators.

mod cliques;
mod flow;

pub use cliques::{enumerate_maximal_cliques, enumerate_maximal_cliques_capped, CliqueSet};
pub use flow::{max_flow, FlowNetwork, MaxFlow};

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Simple undirected graph with dense vertex ids `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted, and each edge has
/// an index into that list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    index: HashMap<(Vertex, Vertex), usize>,
}

/// Counters for input edges that were not kept.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Dropped {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl Dropped {
    pub fn total(&self) -> usize {
        self.duplicates + self.self_loops
    }
}

impl Graph {
    /// Builds a graph, silently dropping self-loops and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        Self::with_dropped(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::new`] but also reports how many input edges were dropped.
    pub fn with_dropped(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<(Graph, Dropped)> {
        let mut dropped = Dropped::default();
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                dropped.self_loops += 1;
                continue;
            }
            list.push((u.min(v), u.max(v)));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        dropped.duplicates = before - list.len();

        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(list.len());
        for (i, &(u, v)) in list.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            index.insert((u, v), i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok((Graph { n, edges: list, adj, index }, dropped))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Subgraph induced by `keep`, with vertex ids preserved (vertices outside
    /// `keep` become isolated).
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| keep[u] && keep[v]);
        Graph::new(self.n, edges).expect("edges of a valid graph")
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for r in 0..self.n {
            if !seen[r] {
                count += 1;
                for v in bfs_reachable(self, r) {
                    seen[v] = true;
                }
            }
        }
        count
    }
}

/// `G_s`: the base graph plus a dummy vertex `s = n` adjacent to every vertex.
///
/// Edge ids of `G_s` are the base edge ids `0..m` followed by the dummy edge
/// `{v, s}` at id `m + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedGraph {
    base: Graph,
    incidence: Vec<Vec<usize>>,
}

impl TransformedGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// The dummy vertex.
    pub fn s(&self) -> Vertex {
        self.base.n
    }

    pub fn num_vertices(&self) -> usize {
        self.base.n + 1
    }

    pub fn num_edges(&self) -> usize {
        self.base.m() + self.base.n
    }

    /// Endpoints of edge `e` of `G_s`.
    pub fn endpoints(&self, e: usize) -> (Vertex, Vertex) {
        let m = self.base.m();
        if e < m {
            self.base.edges[e]
        } else {
            (e - m, self.s())
        }
    }

    pub fn dummy_edge(&self, v: Vertex) -> usize {
        self.base.m() + v
    }

    pub fn is_dummy_edge(&self, e: usize) -> bool {
        e >= self.base.m()
    }

    /// Edge ids of `δ_{G_s}(v)`; for `v = s` these are all dummy edges.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    /// Edge ids of `δ_{G_s}(S)` for `S ⊆ V_s` given as a membership mask.
    pub fn cut_edges(&self, in_set: &[bool]) -> Vec<usize> {
        (0..self.num_edges())
            .filter(|&e| {
                let (u, v) = self.endpoints(e);
                in_set[u] != in_set[v]
            })
            .collect()
    }

    /// Base edge ids with both endpoints in the set (`E(S)`).
    pub fn inner_edges(&self, in_set: &[bool]) -> Vec<usize> {
        (0..self.base.m())
            .filter(|&e| {
                let (u, v) = self.base.edges[e];
                in_set[u] && in_set[v]
            })
            .collect()
    }

    /// Edge-list view of `G_s` as an ordinary graph on `n + 1` vertices.
    pub fn as_graph(&self) -> Graph {
        let edges = (0..self.num_edges()).map(|e| self.endpoints(e));
        Graph::new(self.num_vertices(), edges).expect("transformed edges are valid")
    }
}

pub fn transform(g: &Graph) -> TransformedGraph {
    let n = g.n;
    let m = g.m();
    let mut incidence = vec![Vec::new(); n + 1];
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        incidence[u].push(e);
        incidence[v].push(e);
    }
    for v in 0..n {
        incidence[v].push(m + v);
        incidence[n].push(m + v);
    }
    TransformedGraph { base: g.clone(), incidence }
}

/// Simple cycle given as its vertex sequence; the last vertex is adjacent to
/// the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle(pub Vec<Vertex>);

impl Cycle {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.0.len();
        if k < 3 {
            return false;
        }
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == k && (0..k).all(|i| g.has_edge(self.0[i], self.0[(i + 1) % k]))
    }
}

/// Vertices reachable from `root` where `neighbors(v)` lists the support
/// edges leaving `v`. Returned in BFS order.
pub fn bfs_reachable_by<F, I>(n: usize, root: Vertex, mut neighbors: F) -> Vec<Vertex>
where
    F: FnMut(Vertex) -> I,
    I: IntoIterator<Item = Vertex>,
{
    let mut seen = vec![false; n];
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for w in neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

pub fn bfs_reachable(g: &Graph, root: Vertex) -> Vec<Vertex> {
    bfs_reachable_by(g.n, root, |v| g.adj[v].iter().copied())
}

/// One cycle per back edge of a depth-first forest.
///
/// Roots are taken in ascending id and neighbors are scanned in ascending
/// id, so the output is deterministic. The count equals the cyclomatic
/// number `m - n + components`.
pub fn dfs_cycles(g: &Graph) -> Vec<Cycle> {
    let order: Vec<Vertex> = (0..g.n).collect();
    dfs_cycles_ordered(g, &order, |v| g.neighbors(v).to_vec(), |_| true)
}

/// DFS back-edge cycle collection with caller-supplied root order and
/// neighbor order. `accept` filters which cycles are kept.
pub(crate) fn dfs_cycles_ordered<N, A>(g: &Graph, roots: &[Vertex], mut neighbor_order: N, mut accept: A) -> Vec<Cycle>
where
    N: FnMut(Vertex) -> Vec<Vertex>,
    A: FnMut(&[Vertex]) -> bool,
{
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.n;
    let mut color = vec![WHITE; n];
    let mut parent = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    for &root in roots {
        if color[root] != WHITE {
            continue;
        }
        // Stack of (vertex, neighbor list, cursor).
        let mut stack: Vec<(Vertex, Vec<Vertex>, usize)> = Vec::new();
        color[root] = GREY;
        stack.push((root, neighbor_order(root), 0));
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            if top.2 == top.1.len() {
                color[u] = BLACK;
                stack.pop();
                continue;
            }
            let w = top.1[top.2];
            top.2 += 1;
            match color[w] {
                WHITE => {
                    color[w] = GREY;
                    parent[w] = u;
                    let nb = neighbor_order(w);
                    stack.push((w, nb, 0));
                }
                GREY if w != parent[u] => {
                    // back edge u -> ancestor w
                    let mut cyc = vec![u];
                    let mut x = u;
                    while x != w {
                        x = parent[x];
                        cyc.push(x);
                    }
                    cyc.reverse();
                    if accept(&cyc) {
                        cycles.push(Cycle(cyc));
                    }
                }
                _ => {}
            }
        }
    }
    cycles
}

/// Per-vertex eccentricities measured inside each vertex's own component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eccentricities {
    pub values: Vec<usize>,
    /// False when some pair of vertices is mutually unreachable, in which
    /// case every true eccentricity is infinite.
    pub connected: bool,
}

pub fn eccentricities(g: &Graph) -> Eccentricities {
    let n = g.n;
    let mut values = vec![0; n];
    let mut connected = true;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[v] = 0;
        queue.push_back(v);
        let mut reached = 1;
        let mut far = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &g.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    far = far.max(dist[w]);
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached < n {
            connected = false;
        }
        values[v] = far;
    }
    Eccentricities { values, connected }
}
