//! Instance readers and synthetic instance generators.

use std::collections::HashMap;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    File,
    Generated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceMeta {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub source: Source,
    /// External name of each vertex id.
    pub labels: Vec<String>,
    /// Self-loops and repeated edges dropped while loading.
    pub dropped_edges: usize,
}

impl InstanceMeta {
    pub fn generated(name: impl Into<String>, g: &Graph) -> Self {
        InstanceMeta {
            name: name.into(),
            n: g.n(),
            m: g.m(),
            source: Source::Generated,
            labels: (0..g.n()).map(|v| v.to_string()).collect(),
            dropped_edges: 0,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a plain edge list or a DIMACS-style file.
///
/// Plain lines are two whitespace-separated labels; ids are assigned in
/// order of first appearance. A `p edge n m` header switches to DIMACS mode,
/// where edges are written `e u v` (or `u v`) with integer labels `1..=n`.
/// Lines starting with `#` or `%` are comments, as are lines whose first
/// token is `c` unless they are a plain two-token edge line outside DIMACS
/// mode.
pub fn parse_edge_list(text: &str) -> Result<(Graph, InstanceMeta)> {
    let mut declared: Option<usize> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "c" && (declared.is_some() || tokens.len() != 2) {
            continue;
        }
        if tokens[0] == "p" {
            if declared.is_some() || !edges.is_empty() {
                return Err(parse_err(line_no, "header must precede all edges"));
            }
            if tokens.len() != 4 {
                return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
            }
            let n: usize =
                tokens[2].parse().map_err(|_| parse_err(line_no, format!("bad vertex count `{}`", tokens[2])))?;
            tokens[3].parse::<usize>().map_err(|_| parse_err(line_no, format!("bad edge count `{}`", tokens[3])))?;
            declared = Some(n);
            labels = (1..=n).map(|v| v.to_string()).collect();
            continue;
        }
        let pair = match tokens.as_slice() {
            ["e", u, v] => (*u, *v),
            [u, v] => (*u, *v),
            _ => return Err(parse_err(line_no, format!("expected two vertex labels, got `{line}`"))),
        };
        let mut endpoint = |label: &str| -> Result<usize> {
            match declared {
                Some(n) => match label.parse::<usize>() {
                    Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                    _ => Err(parse_err(line_no, format!("label `{label}` is not in 1..={n}"))),
                },
                None => Ok(*ids.entry(label.to_string()).or_insert_with(|| {
                    labels.push(label.to_string());
                    labels.len() - 1
                })),
            }
        };
        let u = endpoint(pair.0)?;
        let v = endpoint(pair.1)?;
        edges.push((u, v));
    }

    let n = declared.unwrap_or(labels.len());
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let (g, dropped) = Graph::with_dropped(n, edges)?;
    if dropped.total() > 0 {
        warn!("dropped {} repeated edges and {} self-loops", dropped.duplicates, dropped.self_loops);
    }
    let meta = InstanceMeta {
        name: String::new(),
        n: g.n(),
        m: g.m(),
        source: Source::File,
        labels,
        dropped_edges: dropped.total(),
    };
    Ok((g, meta))
}

/// DIMACS text for `g` (1-indexed labels). Re-parsing yields the same ids.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// SplitMix64. Kept in-tree so generated instances are reproducible from
/// the seed alone, independent of any library's stream.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform index in `0..bound` (by modulo reduction).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Barabási–Albert preferential attachment graph with `(n - d) * d` edges.
///
/// Vertices `0..d` form an edgeless seed. Vertex `d` links to every seed
/// vertex; each later vertex links to `d` distinct earlier vertices drawn
/// with probability proportional to their current degree (sampling from the
/// endpoint multiset with rejection of repeats).
pub fn generate_barabasi_albert(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d == 0 || d >= n {
        return Err(Error::InvalidParameter(format!("attachment count d={d} must satisfy 1 <= d < n={n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity((n - d) * d);
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (n - d) * d);
    for v in d..n {
        let targets: Vec<usize> = if v == d {
            (0..d).collect()
        } else {
            let mut chosen = Vec::with_capacity(d);
            while chosen.len() < d {
                let t = endpoints[rng.below(endpoints.len())];
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
            chosen
        };
        for t in targets {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::new(n, edges)
}

/// `k`-dimensional hypercube: ids adjacent iff they differ in one bit.
pub fn generate_hypercube(k: u32) -> Result<Graph> {
    if !(1..=16).contains(&k) {
        return Err(Error::InvalidParameter(format!("hypercube dimension {k} not in 1..=16")));
    }
    let n = 1usize << k;
    let edges = (0..n).flat_map(|v| (0..k).map(move |b| (v, v ^ (1 << b))).filter(|&(u, w)| u < w));
    Graph::new(n, edges)
}

/// `side × side` grid with wrap-around in both directions (4-regular).
pub fn generate_torus(side: usize) -> Result<Graph> {
    if side < 3 {
        return Err(Error::InvalidParameter(format!("torus side {side} must be at least 3")));
    }
    let id = |i: usize, j: usize| i * side + j;
    let edges = (0..side).flat_map(|i| {
        (0..side).flat_map(move |j| [(id(i, j), id((i + 1) % side, j)), (id(i, j), id(i, (j + 1) % side))])
    });
    Graph::new(side * side, edges)
}
