//! Warm-start heuristic and the induced path checker.

use std::fmt;
use std::time::{Duration, Instant};

use crate::graph::{eccentricities, Graph, Vertex};

/// An induced path given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSolution {
    pub sequence: Vec<Vertex>,
}

impl PathSolution {
    pub fn new(sequence: Vec<Vertex>) -> Self {
        PathSolution { sequence }
    }

    pub fn cardinality(&self) -> usize {
        self.sequence.len()
    }
}

/// Why a sequence is not an induced path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathDefect {
    Empty,
    OutOfRange(Vertex),
    Duplicate(Vertex),
    MissingEdge(Vertex, Vertex),
    Chord(Vertex, Vertex),
}

impl fmt::Display for PathDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathDefect::Empty => write!(f, "empty sequence"),
            PathDefect::OutOfRange(v) => write!(f, "vertex {v} is not in the graph"),
            PathDefect::Duplicate(v) => write!(f, "vertex {v} appears twice"),
            PathDefect::MissingEdge(u, v) => write!(f, "consecutive vertices {u} and {v} are not adjacent"),
            PathDefect::Chord(u, v) => write!(f, "chord {u}-{v}"),
        }
    }
}

/// Checks that `seq` is a simple path of `g` without chords.
pub fn verify_induced_path(seq: &[Vertex], g: &Graph) -> Result<(), PathDefect> {
    if seq.is_empty() {
        return Err(PathDefect::Empty);
    }
    let mut seen = vec![false; g.n()];
    for &v in seq {
        if v >= g.n() {
            return Err(PathDefect::OutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(PathDefect::Duplicate(v));
        }
    }
    for w in seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(PathDefect::MissingEdge(w[0], w[1]));
        }
    }
    for (i, &u) in seq.iter().enumerate() {
        for &v in seq.iter().skip(i + 2) {
            if g.has_edge(u, v) {
                return Err(PathDefect::Chord(u, v));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicConfig {
    /// Consecutive non-improving maximal paths tolerated per source.
    pub maxpaths: usize,
    pub time_limit: Option<Duration>,
    /// Exploration is fully ordered, so the seed does not change results;
    /// it is carried for reporting.
    pub seed: u64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { maxpaths: 5000, time_limit: None, seed: 0 }
    }
}

/// Depth-first enumeration of the maximal induced paths starting at `src`.
///
/// A vertex may extend the path when it is adjacent to the tail and to no
/// other path vertex; candidates are tried by ascending degree, then id.
/// `visit` sees each maximal path and returns `false` to stop.
pub(crate) fn explore_from<F>(g: &Graph, src: Vertex, mut visit: F)
where
    F: FnMut(&[Vertex]) -> bool,
{
    let mut ordered: Vec<Vec<Vertex>> = (0..g.n())
        .map(|v| {
            let mut nb = g.neighbors(v).to_vec();
            nb.sort_by_key(|&w| (g.degree(w), w));
            nb
        })
        .collect();
    // number of path vertices adjacent to each vertex
    let mut touch = vec![0usize; g.n()];
    let mut on_path = vec![false; g.n()];
    let mut path = vec![src];
    let mut cursor = vec![0usize];
    on_path[src] = true;
    for &w in &ordered[src] {
        touch[w] += 1;
    }
    let mut extended = vec![false];
    loop {
        let depth = path.len() - 1;
        let tail = path[depth];
        let nb = std::mem::take(&mut ordered[tail]);
        let next = nb[cursor[depth]..].iter().position(|&w| !on_path[w] && touch[w] == 1);
        let step = next.map(|i| nb[cursor[depth] + i]);
        if let Some(i) = next {
            cursor[depth] += i + 1;
        }
        ordered[tail] = nb;
        match step {
            Some(w) => {
                extended[depth] = true;
                path.push(w);
                on_path[w] = true;
                for &u in g.neighbors(w) {
                    touch[u] += 1;
                }
                cursor.push(0);
                extended.push(false);
            }
            None => {
                if !extended[depth] && !visit(&path) {
                    return;
                }
                on_path[tail] = false;
                for &u in g.neighbors(tail) {
                    touch[u] -= 1;
                }
                path.pop();
                cursor.pop();
                extended.pop();
                if path.is_empty() {
                    return;
                }
            }
        }
    }
}

/// Number of maximal induced paths the exploration from `src` generates.
pub fn count_maximal_induced_paths_from(g: &Graph, src: Vertex) -> u64 {
    let mut count = 0;
    explore_from(g, src, |_| {
        count += 1;
        true
    });
    count
}

/// Greedy multi-start search for a long induced path.
///
/// Sources are taken by non-increasing eccentricity, ties by smaller degree
/// and then smaller id. From each source the maximal induced paths are
/// generated depth first; the source is abandoned after `maxpaths`
/// consecutive paths that are not longer than the best path found from
/// that source.
pub fn ghlipp(g: &Graph, cfg: &HeuristicConfig) -> PathSolution {
    assert!(g.n() > 0, "graph must have at least one vertex");
    let start = Instant::now();
    let ecc = eccentricities(g);
    let mut sources: Vec<Vertex> = (0..g.n()).collect();
    sources.sort_by_key(|&v| (std::cmp::Reverse(ecc.values[v]), g.degree(v), v));
    let mut best = vec![sources[0]];
    let maxpaths = cfg.maxpaths.max(1);
    let out_of_time = || cfg.time_limit.is_some_and(|t| start.elapsed() >= t);
    for &src in &sources {
        if out_of_time() {
            break;
        }
        let mut local_best = 0;
        let mut stale = 0;
        let mut generated = 0u64;
        explore_from(g, src, |p| {
            generated += 1;
            if p.len() > local_best {
                local_best = p.len();
                stale = 0;
                if p.len() > best.len() {
                    best = p.to_vec();
                }
            } else {
                stale += 1;
            }
            // the clock is read sparingly
            let timed_out = generated.is_multiple_of(256) && out_of_time();
            stale < maxpaths && !timed_out
        });
    }
    log::debug!("heuristic path of {} vertices after {:?}", best.len(), start.elapsed());
    PathSolution::new(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, path, triangle_bridge};
    use proptest::prelude::*;

    #[test]
    fn verifier_examples() {
        let g = triangle_bridge();
        assert_eq!(verify_induced_path(&[0, 2, 3, 4], &g), Ok(()));
        assert_eq!(verify_induced_path(&[1, 0, 2], &g), Err(PathDefect::Chord(1, 2)));
        assert_eq!(verify_induced_path(&[5], &g), Ok(()));
        assert_eq!(verify_induced_path(&[0, 3], &g), Err(PathDefect::MissingEdge(0, 3)));
        assert_eq!(verify_induced_path(&[0, 2, 0], &g), Err(PathDefect::Duplicate(0)));
        assert_eq!(verify_induced_path(&[], &g), Err(PathDefect::Empty));
        assert_eq!(verify_induced_path(&[9], &g), Err(PathDefect::OutOfRange(9)));
    }

    #[test]
    fn heuristic_examples() {
        let cfg = HeuristicConfig::default();
        assert_eq!(ghlipp(&path(4), &cfg).cardinality(), 4);
        assert_eq!(ghlipp(&triangle_bridge(), &cfg).cardinality(), 4);
        assert_eq!(ghlipp(&complete(3), &cfg).cardinality(), 2);
        assert_eq!(ghlipp(&cycle(7), &cfg).cardinality(), 6);
        assert_eq!(ghlipp(&Graph::new(3, []).unwrap(), &cfg).cardinality(), 1);
    }

    #[test]
    fn path_counts() {
        // from an end of P5 there is exactly one maximal induced path
        assert_eq!(count_maximal_induced_paths_from(&path(5), 0), 1);
        assert_eq!(count_maximal_induced_paths_from(&path(5), 2), 2);
        // in K4 every maximal induced path is a single edge
        assert_eq!(count_maximal_induced_paths_from(&complete(4), 0), 3);
        assert_eq!(count_maximal_induced_paths_from(&Graph::new(1, []).unwrap(), 0), 1);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n)
                .prop_map(move |e| Graph::new(n, e.into_iter().filter(|&(u, v)| u != v)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn output_is_an_induced_path(g in arb_graph(), maxpaths in 1usize..20) {
            let cfg = HeuristicConfig { maxpaths, ..Default::default() };
            let p = ghlipp(&g, &cfg);
            prop_assert_eq!(verify_induced_path(&p.sequence, &g), Ok(()));
        }

        #[test]
        fn monotone_in_maxpaths(g in arb_graph(), m1 in 1usize..10, extra in 0usize..10) {
            let a = ghlipp(&g, &HeuristicConfig { maxpaths: m1, ..Default::default() });
            let b = ghlipp(&g, &HeuristicConfig { maxpaths: m1 + extra, ..Default::default() });
            prop_assert!(b.cardinality() >= a.cardinality());
        }

        #[test]
        fn every_generated_path_is_maximal(g in arb_graph()) {
            for src in 0..g.n() {
                explore_from(&g, src, |p| {
                    assert_eq!(verify_induced_path(p, &g), Ok(()));
                    let tail = *p.last().unwrap();
                    let extendable = g.neighbors(tail).iter().any(|&w| {
                        !p.contains(&w) && p[..p.len() - 1].iter().all(|&u| !g.has_edge(u, w))
                    });
                    assert!(!extendable);
                    true
                });
            }
        }
    }
}
