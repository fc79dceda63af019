//! Helpers shared by the integration tests: an independent brute-force
//! implementation of the game and small-graph generators.
#![allow(dead_code)]

use inoculation::rational::{int, Rational};
use inoculation::{Graph, Model};
use rand::Rng;

/// Component size of every insecure node (0 for secure ones), by union-find.
pub fn component_sizes(n: usize, edges: &[(usize, usize)], secure: &[bool]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(u, v) in edges {
        if !secure[u] && !secure[v] {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let mut count = vec![0; n];
    for v in 0..n {
        if !secure[v] {
            let r = find(&mut parent, v);
            count[r] += 1;
        }
    }
    (0..n)
        .map(|v| if secure[v] { 0 } else { count[find(&mut parent, v)] })
        .collect()
}

pub struct Oracle {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub neighbours: Vec<Vec<usize>>,
    pub c: Rational,
    pub l: Rational,
    pub f: Rational,
    pub model: Model,
}

impl Oracle {
    pub fn new(g: &Graph, c: Rational, l: Rational, f: Rational, model: Model) -> Self {
        let n = g.node_count();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut neighbours = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbours[u].push(v);
            neighbours[v].push(u);
        }
        Oracle { n, edges, neighbours, c, l, f, model }
    }

    pub fn actual(&self, secure: &[bool]) -> Vec<Rational> {
        let sizes = component_sizes(self.n, &self.edges, secure);
        (0..self.n)
            .map(|v| {
                if secure[v] {
                    self.c
                } else {
                    self.l * int(sizes[v] as i128) / int(self.n as i128)
                }
            })
            .collect()
    }

    pub fn perceived(&self, secure: &[bool], v: usize) -> Rational {
        let actual = self.actual(secure);
        let friends: Rational = self.neighbours[v].iter().map(|&u| actual[u]).sum();
        let weight = match self.model {
            Model::Selfish => int(0),
            Model::Absolute => self.f,
            Model::Relative => self.f / int(self.neighbours[v].len() as i128),
        };
        actual[v] + weight * friends
    }

    pub fn social(&self, secure: &[bool]) -> Rational {
        self.actual(secure).into_iter().sum()
    }

    pub fn is_equilibrium(&self, secure: &[bool]) -> bool {
        let mut flipped = secure.to_vec();
        (0..self.n).all(|v| {
            flipped[v] = !flipped[v];
            let worse_or_equal = self.perceived(&flipped, v) >= self.perceived(secure, v);
            flipped[v] = !flipped[v];
            worse_or_equal
        })
    }

    /// Equilibria as (0/1 string, social cost), in index order.
    pub fn equilibria(&self) -> Vec<(String, Rational)> {
        (0..1u64 << self.n)
            .map(|i| bits(self.n, i))
            .filter(|s| self.is_equilibrium(s))
            .map(|s| (render(&s), self.social(&s)))
            .collect()
    }

    pub fn optimum(&self) -> Rational {
        (0..1u64 << self.n).map(|i| self.social(&bits(self.n, i))).min().unwrap()
    }
}

/// Node 0 is the most significant bit.
pub fn bits(n: usize, index: u64) -> Vec<bool> {
    (0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect()
}

pub fn render(secure: &[bool]) -> String {
    secure.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A connected graph: a random spanning tree plus each other pair with
/// probability `extra`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A uniformly random admissible `C` for `L` on `n` nodes, on a grid of
/// denominator `den`.
pub fn random_cost<R: Rng>(rng: &mut R, n: usize, l: Rational, den: i128) -> Rational {
    loop {
        let c = Rational::new(rng.gen_range(1..=den), den) * l;
        if c > l / int(n as i128) && c <= l {
            return c;
        }
    }
}

pub fn random_friendship<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(0..=16), 16)
}

// ---------------------------------------------------------------------------
// Isomorphism classes of small graphs

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    // Row-major over the upper triangle.
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| edges.iter().fold(0u64, |m, &(u, v)| m | 1 << pair_index(n, p[u], p[v])))
        .min()
        .unwrap_or(0)
}

fn decode(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask >> pair_index(n, u, v) & 1 == 1 {
                out.push((u, v));
            }
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n <= 7` nodes,
/// connected or not. Classes on `n` nodes come from extending every class on
/// `n − 1` nodes by a vertex with every possible neighbourhood.
pub fn graph_classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!((1..=7).contains(&n));
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let perms = permutations(size);
        let mut seen = std::collections::BTreeSet::new();
        for base in &classes {
            for hood in 0..1u64 << (size - 1) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|&u| hood >> u & 1 == 1).map(|u| (u, size - 1)));
                seen.insert(canonical(size, &edges, &perms));
            }
        }
        classes = seen.into_iter().map(|m| decode(size, m)).collect();
    }
    classes
}

pub fn connected_classes(n: usize) -> Vec<Graph> {
    graph_classes(n)
        .into_iter()
        .map(|edges| Graph::from_edges(n, edges).unwrap())
        .filter(|g| g.is_connected())
        .collect()
}
