//! Subdivisions with certified growth, degree-3 expansion, minor-map
//! contraction, and embeddings into a tree blown up by cliques.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, components, Graph, Vertex, UNREACHED};
use crate::growth::{GrowthBound, Polynomial};
use crate::ratio::{self, Rational};

/// Default cap on the number of vertices a subdivision may have.
pub const DEFAULT_SUBDIVISION_BUDGET: usize = 1_000_000;

/// Default number of radii scanned for the uniform subdivision length.
pub const DEFAULT_SCAN_BUDGET: usize = 100_000;

/// A map of `V(G)` into `T ⊠ K_k`: vertex `v` goes to tree node
/// `map[v].0` and clique copy `map[v].1` in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostEmbedding {
    pub tree: Graph,
    pub root: Vertex,
    pub k: usize,
    pub map: Vec<(Vertex, usize)>,
}

#[derive(Serialize, Deserialize)]
struct MapEntry {
    v: Vertex,
    node: Vertex,
    copy: usize,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    tree_edges: Vec<[Vertex; 2]>,
    root: Vertex,
    k: usize,
    map: Vec<MapEntry>,
}

impl HostEmbedding {
    /// A tree embedded in itself with `k = 1`.
    pub fn tree_identity(tree: &Graph, root: Vertex) -> Self {
        HostEmbedding {
            tree: tree.clone(),
            root,
            k: 1,
            map: tree.vertices().map(|v| (v, 1)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = EmbeddingJson {
            tree_edges: self.tree.edges().map(|(a, b)| [a, b]).collect(),
            root: self.root,
            k: self.k,
            map: self
                .map
                .iter()
                .enumerate()
                .map(|(v, &(node, copy))| MapEntry { v, node, copy })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Reads the JSON form. The tree has nodes `0..=max id` over the tree
    /// edges, the root, and the mapped nodes; the map must list every
    /// vertex `0..len` once.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: EmbeddingJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let top = doc
            .tree_edges
            .iter()
            .flat_map(|e| e.iter().copied())
            .chain(std::iter::once(doc.root))
            .chain(doc.map.iter().map(|e| e.node))
            .max()
            .unwrap_or(0);
        let tree = Graph::from_edges(top + 1, doc.tree_edges.iter().map(|e| (e[0], e[1])))?;
        let mut map: Vec<Option<(Vertex, usize)>> = vec![None; doc.map.len()];
        for e in doc.map {
            if e.v >= map.len() || map[e.v].is_some() {
                return Err(Error::Structure(format!("bad or repeated map entry for vertex {}", e.v)));
            }
            map[e.v] = Some((e.node, e.copy));
        }
        Ok(HostEmbedding {
            tree,
            root: doc.root,
            k: doc.k,
            map: map.into_iter().map(|e| e.expect("all entries seen")).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub valid: bool,
    pub first_failure: Option<String>,
}

/// Checks that the map is injective into `T ⊠ K_k` and that every edge of
/// `g` lands on equal or adjacent tree nodes, with distinct copies when
/// the nodes are equal.
pub fn check_product_embedding(g: &Graph, emb: &HostEmbedding) -> Result<EmbeddingVerdict> {
    let t = &emb.tree;
    if !t.is_tree() {
        return Err(Error::Precondition("host graph is not a tree".into()));
    }
    if emb.root >= t.vertex_count() {
        return Err(Error::Precondition(format!("root {} is not a tree node", emb.root)));
    }
    if emb.map.len() != g.vertex_count() {
        return Err(Error::Precondition(format!(
            "map covers {} vertices, graph has {}",
            emb.map.len(),
            g.vertex_count()
        )));
    }
    let fail = |msg: String| {
        Ok(EmbeddingVerdict {
            valid: false,
            first_failure: Some(msg),
        })
    };
    let mut seen = std::collections::BTreeMap::new();
    for (v, &(node, copy)) in emb.map.iter().enumerate() {
        if node >= t.vertex_count() {
            return fail(format!("vertex {v} maps to missing node {node}"));
        }
        if copy == 0 || copy > emb.k {
            return fail(format!("vertex {v} maps to copy {copy} outside 1..={}", emb.k));
        }
        if let Some(u) = seen.insert((node, copy), v) {
            return fail(format!("vertices {u} and {v} both map to ({node}, {copy})"));
        }
    }
    for (u, v) in g.edges() {
        let ((a, _), (b, _)) = (emb.map[u], emb.map[v]);
        if a != b && !t.has_edge(a, b) {
            return fail(format!("edge {u}-{v} maps to non-adjacent nodes {a} and {b}"));
        }
    }
    Ok(EmbeddingVerdict {
        valid: true,
        first_failure: None,
    })
}

/// Extra data of a subdivision driven by a host embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostSubdivision {
    /// Root depth of the shallower endpoint node, per base edge.
    pub gamma: Vec<usize>,
    /// `ell[i]` = number of edges with `gamma > i`, for `i < n_T`.
    pub ell: Vec<usize>,
    /// Indexed by depth `0..=n_T`; `g_table[n_T] = 1`.
    pub g_table: Vec<usize>,
    pub epsilon: Rational,
    pub k: usize,
    pub max_degree: usize,
}

/// Extra data of a uniform subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSubdivision {
    /// Each edge gets `2 * ell` internal vertices.
    pub ell: usize,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionRecord {
    pub base: Graph,
    /// Path length per base edge, in the order of `base.edges()`.
    pub lengths: Vec<usize>,
    pub result: Graph,
    pub host: Option<HostSubdivision>,
    pub uniform: Option<UniformSubdivision>,
}

impl SubdivisionRecord {
    /// `(kΔ + ε) r + 1` for host subdivisions.
    pub fn host_bound(&self) -> Option<Polynomial> {
        self.host.as_ref().map(|h| {
            let slope = ratio::from_usize(h.k * h.max_degree) + &h.epsilon;
            Polynomial::linear(slope, Rational::one())
        })
    }

    pub fn to_json(&self) -> String {
        let doc = RecordJson {
            base_n: self.base.vertex_count(),
            base_edges: self.base.edges().map(|(a, b)| [a, b]).collect(),
            lengths: self.lengths.clone(),
            result_n: self.result.vertex_count(),
            result_edges: self.result.edges().map(|(a, b)| [a, b]).collect(),
            host: self.host.as_ref().map(|h| HostJson {
                gamma: h.gamma.clone(),
                ell: h.ell.clone(),
                g_table: h.g_table.clone(),
                epsilon: h.epsilon.clone(),
                k: h.k,
                max_degree: h.max_degree,
            }),
            uniform: self.uniform.as_ref().map(|u| UniformJson { ell: u.ell, m: u.m, n: u.n }),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct HostJson {
    gamma: Vec<usize>,
    ell: Vec<usize>,
    g_table: Vec<usize>,
    #[serde(with = "ratio::as_string")]
    epsilon: Rational,
    k: usize,
    max_degree: usize,
}

#[derive(Serialize)]
struct UniformJson {
    ell: usize,
    m: usize,
    n: usize,
}

#[derive(Serialize)]
struct RecordJson {
    base_n: usize,
    base_edges: Vec<[Vertex; 2]>,
    lengths: Vec<usize>,
    result_n: usize,
    result_edges: Vec<[Vertex; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    host: Option<HostJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uniform: Option<UniformJson>,
}

/// Replaces the `i`-th edge of `g.edges()` by a path of `lengths[i]`
/// edges. Original vertices keep their ids; internal path vertices are
/// appended edge by edge, walking from the smaller endpoint.
pub fn subdivide_edges(g: &Graph, lengths: &[usize]) -> Result<Graph> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    if lengths.len() != edges.len() {
        return Err(Error::Precondition(format!(
            "{} lengths for {} edges",
            lengths.len(),
            edges.len()
        )));
    }
    if let Some(i) = lengths.iter().position(|&l| l == 0) {
        return Err(Error::Precondition(format!("edge {} has length 0", i)));
    }
    let total = g.vertex_count() + lengths.iter().map(|l| l - 1).sum::<usize>();
    let mut out = Vec::with_capacity(lengths.iter().sum());
    let mut next = g.vertex_count();
    for (&(u, v), &len) in edges.iter().zip(lengths) {
        let mut prev = u;
        for _ in 1..len {
            out.push((prev, next));
            prev = next;
            next += 1;
        }
        out.push((prev, v));
    }
    Graph::from_edges(total, out)
}

/// Recovers the base graph from a subdivision whose first `base_n` vertices
/// are the branch vertices and whose other vertices all have degree 2.
pub fn suppress_subdivision(h: &Graph, base_n: usize) -> Result<Graph> {
    if base_n > h.vertex_count() {
        return Err(Error::Precondition("more branch vertices than vertices".into()));
    }
    if let Some(v) = (base_n..h.vertex_count()).find(|&v| h.degree(v) != 2) {
        return Err(Error::Structure(format!("internal vertex {v} has degree {}", h.degree(v))));
    }
    let mut edges = Vec::new();
    for u in 0..base_n {
        for &first in h.neighbors(u) {
            let (mut prev, mut cur) = (u, first);
            let mut steps = 0;
            while cur >= base_n {
                let nb = h.neighbors(cur);
                let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = nxt;
                steps += 1;
                if steps > h.vertex_count() {
                    return Err(Error::Structure("internal vertices form a cycle".into()));
                }
            }
            if cur == u {
                return Err(Error::Structure(format!("path from {u} returns to itself")));
            }
            if u < cur {
                edges.push((u, cur));
            }
        }
    }
    Graph::from_edges(base_n, edges)
}

/// Subdivision with growth at most `(kΔ + ε) r + 1` for `g` embedded in
/// `T ⊠ K_k`.
///
/// For an edge `e` let `γ(e)` be the smaller root distance of its
/// endpoints' tree nodes and `ℓ(i)` the number of edges with `γ(e) > i`.
/// With `n_T = |V(T)|`, the table `g(n_T) = 1`,
/// `g(r) = max(1, ⌈(2 g(r+1) ℓ(r) + |V(G)|) / ε⌉)` is the least
/// integer solution of `ε g(r) ≥ 2 g(r+1) ℓ(r) + |V(G)|`, and edge `e`
/// becomes a path of length `2 g(γ(e))`. The projected vertex count is
/// checked against `budget` before anything is built.
pub fn subdivide_in_host(g: &Graph, emb: &HostEmbedding, epsilon: &Rational, budget: usize) -> Result<SubdivisionRecord> {
    if *epsilon <= Rational::zero() {
        return Err(Error::Domain(format!("epsilon must be positive, got {}", ratio::show(epsilon))));
    }
    let verdict = check_product_embedding(g, emb)?;
    if let Some(why) = verdict.first_failure {
        return Err(Error::Precondition(format!("not an embedding: {why}")));
    }
    if g.edge_count() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    let depth = bfs_distances(&emb.tree, emb.root, None);
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let gamma: Vec<usize> = edges
        .iter()
        .map(|&(u, v)| depth[emb.map[u].0].min(depth[emb.map[v].0]))
        .collect();
    debug_assert!(gamma.iter().all(|&d| d != UNREACHED));
    let n_t = emb.tree.vertex_count();
    let ell: Vec<usize> = (0..n_t).map(|i| gamma.iter().filter(|&&d| d > i).count()).collect();

    let n_g = BigInt::from(g.vertex_count());
    let mut table = vec![BigInt::one(); n_t + 1];
    for r in (0..n_t).rev() {
        let need = Rational::from_integer(BigInt::from(2) * &table[r + 1] * BigInt::from(ell[r]) + &n_g) / epsilon;
        table[r] = ratio::ceil(&need).max(BigInt::one());
    }
    let projected: BigInt = gamma
        .iter()
        .map(|&d| BigInt::from(2) * &table[d] - 1)
        .fold(n_g.clone(), |acc, x| acc + x);
    if projected > BigInt::from(budget) {
        return Err(Error::Capacity(format!(
            "subdivision would have {projected} vertices, budget is {budget}"
        )));
    }
    let g_table: Vec<usize> = table.iter().map(|x| x.to_usize().expect("within budget")).collect();
    let lengths: Vec<usize> = gamma.iter().map(|&d| 2 * g_table[d]).collect();
    let result = subdivide_edges(g, &lengths)?;
    Ok(SubdivisionRecord {
        base: g.clone(),
        lengths,
        result,
        host: Some(HostSubdivision {
            gamma,
            ell,
            g_table,
            epsilon: epsilon.clone(),
            k: emb.k,
            max_degree: g.max_degree(),
        }),
        uniform: None,
    })
}

/// Uniform subdivision with growth at most `f`, for `f(r) ≥ Δ r + 1`
/// nondecreasing and superlinear.
///
/// `ℓ` is the least `r ≥ 1` with `f(r) ≥ 2 r m + n`, and every edge gets
/// `2ℓ` internal vertices. For `r ≥ ℓ` every ball has at most
/// `2ℓm + n ≤ f(ℓ) ≤ f(r)` vertices; for `r < ℓ` a ball spans a
/// subdivided star and has at most `1 + Δ r ≤ f(r)` vertices. Hence `f`
/// must be declared nondecreasing; it is spot-checked on `[1, ℓ + n]`,
/// and `f(r) ≥ Δ r + 1` is checked on `[1, ℓ]`.
pub fn subdivide_uniform_superlinear(
    g: &Graph,
    f: &dyn GrowthBound,
    monotone_declared: bool,
    scan_budget: usize,
    size_budget: usize,
) -> Result<SubdivisionRecord> {
    if !monotone_declared {
        return Err(Error::Precondition("f must be declared nondecreasing".into()));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let delta = g.max_degree();
    let eval = |r: usize| {
        f.eval(r)
            .ok_or_else(|| Error::Domain(format!("bound {} not evaluable at r = {r}", f.describe())))
    };
    let mut ell = None;
    for r in 1..=scan_budget {
        let fr = eval(r)?;
        if fr < ratio::from_usize(delta * r + 1) {
            return Err(Error::Precondition(format!(
                "f({r}) = {} is below Δr + 1 = {}",
                ratio::show(&fr),
                delta * r + 1
            )));
        }
        if fr >= ratio::from_usize(2 * r * m + n) {
            ell = Some(r);
            break;
        }
    }
    let ell = ell.ok_or_else(|| {
        Error::Superlinearity(format!(
            "f(r) < 2rm + n for every r up to {scan_budget}; f does not look superlinear"
        ))
    })?;
    let mut prev = eval(1)?;
    for r in 2..=ell + n {
        let cur = eval(r)?;
        if cur < prev {
            return Err(Error::Precondition(format!("f decreases between r = {} and r = {r}", r - 1)));
        }
        prev = cur;
    }
    let size = n + 2 * ell * m;
    if size > size_budget {
        return Err(Error::Capacity(format!(
            "subdivision would have {size} vertices, budget is {size_budget}"
        )));
    }
    let lengths = vec![2 * ell + 1; m];
    let result = subdivide_edges(g, &lengths)?;
    Ok(SubdivisionRecord {
        base: g.clone(),
        lengths,
        result,
        host: None,
        uniform: Some(UniformSubdivision { ell, m, n }),
    })
}

/// Splits every vertex of degree `d ≥ 4` into a path of `d` vertices, the
/// `i`-th taking the edge to the `i`-th smallest neighbor. Vertices are
/// renumbered in blocks by original id. Returns the new graph and the map
/// from new vertices to original ones.
pub fn expand_to_degree3(g: &Graph) -> (Graph, Vec<Vertex>) {
    let n = g.vertex_count();
    let mut start = Vec::with_capacity(n + 1);
    let mut minor_map = Vec::new();
    for v in g.vertices() {
        start.push(minor_map.len());
        let size = if g.degree(v) >= 4 { g.degree(v) } else { 1 };
        minor_map.extend(std::iter::repeat_n(v, size));
    }
    let slot = |v: Vertex, u: Vertex| -> Vertex {
        if g.degree(v) >= 4 {
            start[v] + g.neighbors(v).partition_point(|&w| w < u)
        } else {
            start[v]
        }
    };
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v)| (slot(u, v), slot(v, u))).collect();
    for v in g.vertices().filter(|&v| g.degree(v) >= 4) {
        edges.extend((start[v]..start[v] + g.degree(v) - 1).map(|i| (i, i + 1)));
    }
    let h = Graph::from_edges(minor_map.len(), edges).expect("expansion edges are in range");
    (h, minor_map)
}

/// Contracts each label class of `h`. Labels must cover `0..L` and each
/// class must induce a connected subgraph; the result has an edge between
/// two labels when some edge of `h` joins their classes.
pub fn contract_minor_map(h: &Graph, minor_map: &[usize]) -> Result<Graph> {
    if minor_map.len() != h.vertex_count() {
        return Err(Error::Model(format!(
            "map has {} entries, graph has {} vertices",
            minor_map.len(),
            h.vertex_count()
        )));
    }
    let labels = minor_map.iter().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Vec<Vertex>> = vec![Vec::new(); labels];
    for (v, &l) in minor_map.iter().enumerate() {
        classes[l].push(v);
    }
    for (l, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::Model(format!("label {l} has no vertices")));
        }
        if components(&h.induced(class)).len() != 1 {
            return Err(Error::Model(format!("label {l} does not induce a connected subgraph")));
        }
    }
    let edges: Vec<(usize, usize)> = h
        .edges()
        .map(|(u, v)| (minor_map[u], minor_map[v]))
        .filter(|(a, b)| a != b)
        .collect();
    Graph::from_edges(labels, edges)
}
