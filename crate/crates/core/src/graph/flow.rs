use std::collections::VecDeque;

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: f64,
    rev: usize,
}

/// Directed network with nonnegative real capacities.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { arcs: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        let rev_from = self.arcs[to].len() + usize::from(from == to);
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc { to, cap: cap.max(0.0), rev: rev_from });
        self.arcs[to].push(Arc { to: from, cap: 0.0, rev: rev_to });
    }

    /// Undirected edge as two opposite arcs of the same capacity.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: f64) {
        self.add_arc(u, v, cap);
        self.add_arc(v, u, cap);
    }
}

/// Result of a maximum flow computation together with two certifying cuts.
#[derive(Debug, Clone)]
pub struct MaxFlow {
    pub value: f64,
    /// Vertices reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
    /// Vertices that can reach the sink in the final residual network
    /// (the smallest sink side of a minimum cut).
    pub sink_side: Vec<bool>,
}

/// Shortest augmenting path maximum flow (Edmonds–Karp).
pub fn max_flow(network: &FlowNetwork, source: usize, sink: usize) -> Result<MaxFlow> {
    if source == sink {
        return Err(Error::SourceIsSink(source));
    }
    let n = network.n();
    let mut res = network.arcs.clone();
    let mut value = 0.0;
    loop {
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for (i, a) in res[u].iter().enumerate() {
                if a.cap > EPS && !seen[a.to] {
                    seen[a.to] = true;
                    pred[a.to] = Some((u, i));
                    queue.push_back(a.to);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = sink;
        while let Some((u, i)) = pred[v] {
            bottleneck = bottleneck.min(res[u][i].cap);
            v = u;
        }
        let mut v = sink;
        while let Some((u, i)) = pred[v] {
            res[u][i].cap -= bottleneck;
            let (to, rev) = (res[u][i].to, res[u][i].rev);
            res[to][rev].cap += bottleneck;
            v = u;
        }
        value += bottleneck;
    }

    let mut source_side = vec![false; n];
    source_side[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for a in &res[u] {
            if a.cap > EPS && !source_side[a.to] {
                source_side[a.to] = true;
                queue.push_back(a.to);
            }
        }
    }

    // w reaches the sink if some arc w->u with residual capacity has u
    // already known to reach it; walk reverse arcs from the sink.
    let mut sink_side = vec![false; n];
    sink_side[sink] = true;
    let mut queue = VecDeque::from([sink]);
    while let Some(u) = queue.pop_front() {
        for a in &res[u] {
            let back = &res[a.to][a.rev];
            if back.cap > EPS && !sink_side[a.to] {
                sink_side[a.to] = true;
                queue.push_back(a.to);
            }
        }
    }

    Ok(MaxFlow { value, source_side, sink_side })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cut_capacity(net: &FlowNetwork, side: &[bool]) -> f64 {
        let mut total = 0.0;
        for (u, arcs) in net.arcs.iter().enumerate() {
            for a in arcs {
                if side[u] && !side[a.to] {
                    total += a.cap;
                }
            }
        }
        total
    }

    #[test]
    fn unit_chain() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 1.0);
        net.add_arc(1, 2, 1.0);
        let f = max_flow(&net, 0, 2).unwrap();
        assert!((f.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_paths() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 1.0);
        net.add_arc(1, 3, 1.0);
        net.add_arc(0, 2, 1.0);
        net.add_arc(2, 3, 1.0);
        assert!((max_flow(&net, 0, 3).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn source_equals_sink_is_error() {
        let net = FlowNetwork::new(2);
        assert_eq!(max_flow(&net, 1, 1).unwrap_err(), Error::SourceIsSink(1));
    }

    #[test]
    fn sink_side_is_minimal() {
        // s=0 -- 1 -- 2=t with a dangling vertex 3 attached to nothing
        let mut net = FlowNetwork::new(4);
        net.add_edge(1, 2, 0.5);
        let f = max_flow(&net, 0, 2).unwrap();
        assert_eq!(f.value, 0.0);
        assert_eq!(f.sink_side, vec![false, true, true, false]);
        assert_eq!(f.source_side, vec![true, false, false, false]);
    }

    proptest! {
        #[test]
        fn value_equals_both_cut_capacities(
            arcs in proptest::collection::vec((0usize..7, 0usize..7, 0u32..5), 0..25)
        ) {
            let mut net = FlowNetwork::new(7);
            for (u, v, c) in arcs {
                net.add_arc(u, v, c as f64 / 4.0);
            }
            let f = max_flow(&net, 0, 6).unwrap();
            prop_assert!((cut_capacity(&net, &f.source_side) - f.value).abs() < 1e-9);
            let sink_complement: Vec<bool> = f.sink_side.iter().map(|b| !b).collect();
            prop_assert!((cut_capacity(&net, &sink_complement) - f.value).abs() < 1e-9);
            prop_assert!(!f.source_side[6]);
        }
    }
}
