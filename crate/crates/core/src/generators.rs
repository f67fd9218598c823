//! Graph families used throughout the test corpus, strong products and
//! seeded random samplers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest product we are willing to materialize.
pub const MAX_PRODUCT_VERTICES: usize = 1 << 22;

/// Pairing attempts before `random_cubic` gives up.
pub const CUBIC_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `size` vertices in a line.
    Path,
    /// `size >= 3` vertices in a ring.
    Cycle,
    /// Center `0` joined to leaves `1..size`.
    Star,
    Complete,
    /// Heap numbering: children of `i` are `2i+1` and `2i+2`.
    CompleteBinaryTree,
    /// `size x size` grid, row-major.
    Grid,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "complete_binary_tree" | "binary-tree" | "binary_tree" => Family::CompleteBinaryTree,
            "grid" => Family::Grid,
            _ => return Err(Error::Domain(format!("unknown family {s:?}"))),
        })
    }
}

pub fn generate(family: Family, size: usize) -> Result<Graph> {
    let min = if family == Family::Cycle { 3 } else { 1 };
    if size < min {
        return Err(Error::Range {
            what: "size parameter",
            value: size,
            limit: min,
        });
    }
    let n = size;
    let edges: Vec<(Vertex, Vertex)> = match family {
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        Family::Star => (1..n).map(|i| (0, i)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::CompleteBinaryTree => (1..n).map(|i| ((i - 1) / 2, i)).collect(),
        Family::Grid => {
            let side = n;
            let n = side.checked_mul(side).ok_or_else(|| {
                Error::Capacity(format!("grid side {side} overflows"))
            })?;
            if n > MAX_PRODUCT_VERTICES {
                return Err(Error::Capacity(format!("grid with {n} vertices")));
            }
            let mut e = Vec::with_capacity(2 * side * (side - 1));
            for r in 0..side {
                for c in 0..side {
                    let v = GridCoordinates::new(side).index(r, c);
                    if c + 1 < side {
                        e.push((v, v + 1));
                    }
                    if r + 1 < side {
                        e.push((v, v + side));
                    }
                }
            }
            return Graph::from_edges(n, e);
        }
    };
    Graph::from_edges(n, edges)
}

/// Row-major coordinates of the `side x side` grid (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCoordinates {
    pub side: usize,
}

impl GridCoordinates {
    pub fn new(side: usize) -> Self {
        GridCoordinates { side }
    }

    pub fn index(&self, row: usize, col: usize) -> Vertex {
        row * self.side + col
    }

    pub fn coords(&self, v: Vertex) -> (usize, usize) {
        (v / self.side, v % self.side)
    }

    /// The grid adjacency rule: one coordinate equal, the other off by one.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = (self.coords(u), self.coords(v));
        (a.0 == b.0 && a.1.abs_diff(b.1) == 1) || (a.1 == b.1 && a.0.abs_diff(b.0) == 1)
    }
}

/// Strong product; vertex `(v, w)` is numbered `v * |V(h)| + w`.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::Domain("strong product of an empty graph".into()));
    }
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let n = ng
        .checked_mul(nh)
        .filter(|&n| n <= MAX_PRODUCT_VERTICES)
        .ok_or_else(|| Error::Capacity(format!("product of {ng} and {nh} vertices")))?;
    let closed = |graph: &Graph, v: Vertex| -> Vec<Vertex> {
        let mut c = graph.neighbors(v).to_vec();
        c.push(v);
        c.sort_unstable();
        c
    };
    let mut adj = vec![Vec::new(); n];
    for v in 0..ng {
        let cv = closed(g, v);
        for w in 0..nh {
            let cw = closed(h, w);
            let me = v * nh + w;
            for &v2 in &cv {
                for &w2 in &cw {
                    let other = v2 * nh + w2;
                    if other != me {
                        adj[me].push(other);
                    }
                }
            }
        }
    }
    Ok(Graph::from_raw_adjacency(adj))
}

/// `g` with every vertex replaced by `K_t` and every edge by `K_{t,t}`.
pub fn blow_up(g: &Graph, t: usize) -> Result<Graph> {
    strong_product(g, &generate(Family::Complete, t)?)
}

/// `P_n ⊠ ... ⊠ P_n` with `dims` factors, built by iterated products.
pub fn path_power(n: usize, dims: usize) -> Result<Graph> {
    if dims == 0 {
        return Err(Error::Range {
            what: "dimension",
            value: 0,
            limit: 1,
        });
    }
    let p = generate(Family::Path, n)?;
    let mut acc = p.clone();
    for _ in 1..dims {
        acc = strong_product(&acc, &p)?;
    }
    Ok(acc)
}

/// Simple 3-regular graph from the pairing model, rejecting any sample
/// with a loop or a repeated pair.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Range {
            what: "cubic vertex count (even, >= 4)",
            value: n,
            limit: 4,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| [v, v, v]).collect();
    'attempt: for _ in 0..CUBIC_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::with_capacity(3); n];
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                continue 'attempt;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        return Ok(Graph::from_raw_adjacency(adj));
    }
    Err(Error::Generation(format!(
        "no simple cubic pairing on {n} vertices after {CUBIC_ATTEMPTS} attempts"
    )))
}

/// Uniform labelled tree on `n` vertices via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Range {
            what: "tree size",
            value: 0,
            limit: 1,
        });
    }
    if n <= 2 {
        return generate(Family::Path, n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<Vertex> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        let leaf = *leaves.iter().next().expect("a Prüfer step always has a leaf");
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<Vertex> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges)
}

/// Uniform graph with exactly `m` distinct edges on `n` vertices.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::Range {
            what: "edge count",
            value: m,
            limit: max,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    all.shuffle(&mut rng);
    all.truncate(m);
    Graph::from_edges(n, all)
}
