//! Social network topologies and attack components.

use std::fmt::Write as _;
use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::StrategyProfile;

/// Undirected simple graph on nodes `0..n`, stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one node".into()));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} references a node outside 0..{node_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{}, {}}}",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.node_count()
    }

    /// True for the cycle `C_n`, `n >= 3`, under any labelling.
    pub fn is_cycle(&self) -> bool {
        self.node_count() >= 3
            && self.adjacency.iter().all(|list| list.len() == 2)
            && self.is_connected()
    }

    pub fn isolated_node(&self) -> Option<usize> {
        self.adjacency.iter().position(Vec::is_empty)
    }

    /// Serializes to the edge-list text format: a header line `n <count>`
    /// followed by one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.node_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let bad = |line: usize, message: String| Error::EdgeList { line, message };

        let (line, header) = lines
            .next()
            .ok_or_else(|| bad(1, "missing header `n <count>`".into()))?;
        let n: usize = header
            .strip_prefix("n ")
            .and_then(|rest| rest.trim().parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| bad(line, format!("expected header `n <count>`, found {header:?}")))?;

        let mut adjacency = vec![Vec::new(); n];
        for (line, content) in lines {
            if content.is_empty() {
                continue;
            }
            let mut fields = content.split_whitespace();
            let (u, v) = match (fields.next(), fields.next(), fields.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => return Err(bad(line, format!("expected `u v`, found {content:?}"))),
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| bad(line, format!("{s:?} is not a node id")))
            };
            let (u, v) = (parse(u)?, parse(v)?);
            if u >= n || v >= n {
                return Err(bad(line, format!("node id out of range 0..{n}")));
            }
            if u == v {
                return Err(bad(line, format!("self-loop at node {u}")));
            }
            if u > v {
                return Err(bad(line, format!("edge {u} {v} must be written with u < v")));
            }
            if adjacency[u].contains(&v) {
                return Err(bad(line, format!("duplicate edge {u} {v}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency })
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_edge_list()).map_err(|e| Error::io(path, e))
    }
}

/// The complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("K_n needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The star `S_n`: node 0 is the center, nodes `1..n` are leaves.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("S_n needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|leaf| (0, leaf)))
}

/// The cycle `C_n` with edges `{i, (i + 1) mod n}`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("C_n needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Erdős–Rényi `G(n, p)`, resampled until no node is isolated.
pub fn make_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidGraph(format!("G(n, p) needs n >= 2 and 0 < p <= 1, got n={n}, p={p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.isolated_node().is_none() {
            return Ok(g);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KleinbergParams {
    /// The lattice is a `side × side` torus.
    pub side: usize,
    /// Long-range contacts drawn per node.
    pub long_range_per_node: usize,
    pub clustering_exponent: f64,
    pub seed: u64,
}

impl Default for KleinbergParams {
    fn default() -> Self {
        KleinbergParams {
            side: 10,
            long_range_per_node: 1,
            clustering_exponent: 2.0,
            seed: 0,
        }
    }
}

impl KleinbergParams {
    fn validate(&self) -> Result<()> {
        if self.side < 2 {
            return Err(Error::InvalidGraph(format!("Kleinberg side must be >= 2, got {}", self.side)));
        }
        if self.long_range_per_node < 1 {
            return Err(Error::InvalidGraph("Kleinberg graphs need at least one long-range contact per node".into()));
        }
        if !(self.clustering_exponent >= 0.0 && self.clustering_exponent.is_finite()) {
            return Err(Error::InvalidGraph(format!(
                "clustering exponent must be a finite nonnegative number, got {}",
                self.clustering_exponent
            )));
        }
        Ok(())
    }
}

/// Draws attempted per long-range contact before the contact is dropped.
pub const MAX_LONG_RANGE_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct KleinbergGraph {
    pub graph: Graph,
    /// Long-range contacts dropped after [`MAX_LONG_RANGE_ATTEMPTS`] duplicate draws.
    pub skipped_contacts: usize,
}

/// Toroidal Manhattan distance between lattice cells `a` and `b`.
pub fn torus_distance(side: usize, a: usize, b: usize) -> usize {
    let axis = |x: usize, y: usize| {
        let d = x.abs_diff(y);
        d.min(side - d)
    };
    axis(a % side, b % side) + axis(a / side, b / side)
}

/// Samples long-range offsets on the torus with probability proportional to
/// `d^(-alpha)` over all cells at toroidal distance `d >= 2`.
#[derive(Debug, Clone)]
pub struct LongRangeSampler {
    side: usize,
    offsets: Vec<(usize, usize)>,
    distances: Vec<usize>,
    index: WeightedIndex<f64>,
}

impl LongRangeSampler {
    pub fn new(side: usize, alpha: f64) -> Result<Self> {
        let mut offsets = Vec::new();
        let mut distances = Vec::new();
        let mut weights = Vec::new();
        for dy in 0..side {
            for dx in 0..side {
                let d = torus_distance(side, 0, dy * side + dx);
                if d >= 2 {
                    offsets.push((dx, dy));
                    distances.push(d);
                    weights.push((d as f64).powf(-alpha));
                }
            }
        }
        let index = WeightedIndex::new(&weights).map_err(|_| {
            Error::InvalidGraph(format!("a {side}x{side} torus has no cells at distance >= 2"))
        })?;
        Ok(LongRangeSampler {
            side,
            offsets,
            distances,
            index,
        })
    }

    /// Returns the target cell for a contact leaving `from`, and its distance.
    pub fn sample<R: Rng + ?Sized>(&self, from: usize, rng: &mut R) -> (usize, usize) {
        let k = self.index.sample(rng);
        let (dx, dy) = self.offsets[k];
        let (x, y) = (from % self.side, from / self.side);
        let target = (y + dy) % self.side * self.side + (x + dx) % self.side;
        (target, self.distances[k])
    }

    /// Number of cells at each distance from a fixed cell, indexed by distance.
    pub fn cells_at_distance(&self) -> Vec<usize> {
        let max = self.distances.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for &d in &self.distances {
            counts[d] += 1;
        }
        counts
    }
}

/// Kleinberg small-world graph on a `side × side` torus.
pub fn make_kleinberg(params: &KleinbergParams) -> Result<Graph> {
    make_kleinberg_with_report(params).map(|k| k.graph)
}

pub fn make_kleinberg_with_report(params: &KleinbergParams) -> Result<KleinbergGraph> {
    params.validate()?;
    let side = params.side;
    let n = side * side;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let connect = |adjacency: &mut Vec<Vec<usize>>, u: usize, v: usize| -> bool {
        if u == v || adjacency[u].contains(&v) {
            return false;
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
        true
    };

    for y in 0..side {
        for x in 0..side {
            let u = y * side + x;
            connect(&mut adjacency, u, y * side + (x + 1) % side);
            connect(&mut adjacency, u, (y + 1) % side * side + x);
        }
    }

    let sampler = LongRangeSampler::new(side, params.clustering_exponent)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut skipped_contacts = 0;
    for u in 0..n {
        for _ in 0..params.long_range_per_node {
            let placed = (0..MAX_LONG_RANGE_ATTEMPTS).any(|_| {
                let (v, _) = sampler.sample(u, &mut rng);
                connect(&mut adjacency, u, v)
            });
            if !placed {
                skipped_contacts += 1;
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok(KleinbergGraph {
        graph: Graph { adjacency },
        skipped_contacts,
    })
}

/// Connected components of the subgraph induced by the insecure nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentView {
    component_of: Vec<Option<usize>>,
    sizes: Vec<usize>,
}

impl ComponentView {
    pub fn component_of(&self, node: usize) -> Option<usize> {
        self.component_of[node]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// Size of the component holding `node`, or `None` for secure nodes.
    pub fn size_of(&self, node: usize) -> Option<usize> {
        self.component_of[node].map(|c| self.sizes[c])
    }

    pub fn members(&self, component: usize) -> impl Iterator<Item = usize> + '_ {
        self.component_of
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == Some(component))
            .map(|(v, _)| v)
    }
}

/// Attack components of `profile`, numbered in order of their smallest node.
pub fn attack_components(g: &Graph, profile: &StrategyProfile) -> ComponentView {
    let n = g.node_count();
    let mut component_of = vec![None; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if profile.is_secure(start) || component_of[start].is_some() {
            continue;
        }
        let id = sizes.len();
        component_of[start] = Some(id);
        stack.push(start);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if !profile.is_secure(v) && component_of[v].is_none() {
                    component_of[v] = Some(id);
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    ComponentView { component_of, sizes }
}

/// Size of the attack component `node` would be in if it were insecure:
/// one plus the sizes of the distinct insecure components next to it.
///
/// For an insecure node this is simply its current component size.
pub fn hypothetical_component_size(
    g: &Graph,
    profile: &StrategyProfile,
    view: &ComponentView,
    node: usize,
) -> usize {
    if let Some(size) = view.size_of(node) {
        return size;
    }
    let mut seen: Vec<usize> = Vec::with_capacity(g.degree(node));
    let mut total = 1;
    for &v in g.neighbors(node) {
        if profile.is_secure(v) {
            continue;
        }
        let c = view.component_of(v).expect("insecure node has a component");
        if !seen.contains(&c) {
            seen.push(c);
            total += view.sizes()[c];
        }
    }
    total
}
