use super::{Graph, Vertex};

/// A list of vertex sets, each sorted ascending.
pub type CliqueSet = Vec<Vec<Vertex>>;

/// All maximal cliques with at least `min_size` vertices.
///
/// Bron–Kerbosch with Tomita pivoting; the outer level walks a degeneracy
/// ordering. Output cliques are sorted internally and the list is sorted
/// lexicographically.
pub fn enumerate_maximal_cliques(g: &Graph, min_size: usize) -> CliqueSet {
    enumerate_maximal_cliques_capped(g, min_size, usize::MAX).expect("no cap")
}

/// Like [`enumerate_maximal_cliques`] but gives up with `None` as soon as
/// more than `cap` cliques have been found.
pub fn enumerate_maximal_cliques_capped(g: &Graph, min_size: usize, cap: usize) -> Option<CliqueSet> {
    let order = degeneracy_order(g);
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    for &v in &order {
        let (p, x): (Vec<_>, Vec<_>) = g.neighbors(v).iter().partition(|&&w| pos[w] > pos[v]);
        r.push(v);
        expand(g, &mut r, p, x, min_size, cap, &mut out);
        r.pop();
        if out.len() > cap {
            return None;
        }
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Some(out)
}

fn expand(
    g: &Graph,
    r: &mut Vec<Vertex>,
    mut p: Vec<Vertex>,
    mut x: Vec<Vertex>,
    min_size: usize,
    cap: usize,
    out: &mut CliqueSet,
) {
    if out.len() > cap {
        return;
    }
    if p.is_empty() {
        if x.is_empty() && r.len() >= min_size {
            out.push(r.clone());
        }
        return;
    }
    // size bound: even taking all of p cannot reach min_size
    if r.len() + p.len() < min_size {
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&w| g.has_edge(u, w)).count(), usize::MAX - u))
        .expect("p is non-empty");
    let candidates: Vec<Vertex> = p.iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        expand(g, r, np, nx, min_size, cap, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); max_deg + 1];
    for v in (0..n).rev() {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while order.len() < n {
        d = d.min(max_deg);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().unwrap();
        if removed[v] || degree[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                d = d.min(degree[w]);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, triangle_bridge};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(enumerate_maximal_cliques(&complete(4), 3), vec![vec![0, 1, 2, 3]]);
        assert_eq!(enumerate_maximal_cliques(&triangle_bridge(), 3), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(enumerate_maximal_cliques(&cycle(5), 3).is_empty());
        assert_eq!(enumerate_maximal_cliques(&cycle(5), 1).len(), 5);
        assert_eq!(enumerate_maximal_cliques_capped(&triangle_bridge(), 3, 1), None);
        assert_eq!(enumerate_maximal_cliques_capped(&triangle_bridge(), 3, 2).map(|c| c.len()), Some(2));
    }

    fn brute_force(g: &Graph, min_size: usize) -> CliqueSet {
        let n = g.n();
        let is_clique = |mask: u32| {
            (0..n).all(|u| mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || g.has_edge(u, v)))
        };
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if !is_clique(mask) {
                continue;
            }
            let maximal = (0..n).all(|w| mask >> w & 1 == 1 || !is_clique(mask | 1 << w));
            let c: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if maximal && c.len() >= min_size {
                out.push(c);
            }
        }
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(
            n in 1usize..10,
            edges in proptest::collection::vec((0usize..10, 0usize..10), 0..35),
            min_size in 1usize..4,
        ) {
            let g = Graph::new(n, edges.into_iter().filter(|&(u, v)| u < n && v < n)).unwrap();
            prop_assert_eq!(enumerate_maximal_cliques(&g, min_size), brute_force(&g, min_size));
        }
    }
}
