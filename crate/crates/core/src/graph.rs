//! Finite simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Marks "not reached" in distance arrays.
pub const UNREACHED: usize = usize::MAX;

/// Immutable simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Vertices grouped by BFS distance from `center`, within its component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStructure {
    pub center: Vertex,
    pub layers: Vec<Vec<Vertex>>,
}

impl LayerStructure {
    /// Eccentricity of the center inside its component.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range ids fail.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::Range {
                        what: "vertex",
                        value: x,
                        limit: n,
                    });
                }
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Sorts and dedups each list; callers guarantee symmetry and no loops.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<Vertex>>) -> Graph {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adj,
            edge_count: twice / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.adj.len() {
            Err(Error::Range {
                what: "vertex",
                value: v,
                limit: self.adj.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Induced subgraph on `vertices`; vertex `i` of the result is
    /// `vertices[i]` in `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![UNREACHED; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != UNREACHED).then_some(index[w]))
                    .collect()
            })
            .collect();
        Graph::from_raw_adjacency(adj)
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in removed {
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        }
        Graph::from_raw_adjacency(adj)
    }

    /// True iff the graph is connected and acyclic (the empty graph is not).
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count + 1 == self.vertex_count() && components(self).len() == 1
    }
}

/// Distances from `source` inside the vertex set marked by `mask`
/// (or the whole graph when `mask` is `None`).
pub fn bfs_distances(g: &Graph, source: Vertex, mask: Option<&[bool]>) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    let inside = |v: Vertex| mask.is_none_or(|m| m[v]);
    if !inside(source) {
        return dist;
    }
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED && inside(w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// BFS layers from `source` restricted to `mask`; each layer sorted.
pub fn layers_within(g: &Graph, source: Vertex, mask: Option<&[bool]>) -> LayerStructure {
    let dist = bfs_distances(g, source, mask);
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d == UNREACHED {
            continue;
        }
        if layers.len() <= d {
            layers.resize(d + 1, Vec::new());
        }
        layers[d].push(v);
    }
    LayerStructure {
        center: source,
        layers,
    }
}

/// Connected components, each sorted, ordered by `(size, smallest id)`.
pub fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    components_within(g, None)
}

/// Components of the subgraph induced by `mask`, same ordering as
/// [`components`].
pub fn components_within(g: &Graph, mask: Option<&[bool]>) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] || mask.is_some_and(|m| !m[s]) {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] && mask.is_none_or(|m| m[w]) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by_key(|c| (c.len(), c[0]));
    out
}

/// Exact BFS layering of the component containing `v`.
pub fn bfs_layers(g: &Graph, v: Vertex) -> Result<LayerStructure> {
    g.check_vertex(v)?;
    Ok(layers_within(g, v, None))
}

/// The ball `B_r(v)`: all vertices at distance at most `r` from `v`, sorted.
pub fn ball(g: &Graph, v: Vertex, r: usize) -> Result<Vec<Vertex>> {
    g.check_vertex(v)?;
    let dist = bfs_distances(g, v, None);
    Ok(g.vertices().filter(|&w| dist[w] <= r).collect())
}

/// Eccentricity of `v` within its component.
pub fn eccentricity(g: &Graph, v: Vertex) -> Result<usize> {
    g.check_vertex(v)?;
    let dist = bfs_distances(g, v, None);
    Ok(dist.into_iter().filter(|&d| d != UNREACHED).max().unwrap_or(0))
}

/// Vertex of minimum eccentricity within the connected set `set`
/// (ties to the smallest id), with that eccentricity.
pub(crate) fn min_eccentricity_center(g: &Graph, set: &[Vertex], mask: &[bool]) -> (Vertex, usize) {
    use rayon::prelude::*;
    let eccs: Vec<usize> = set
        .par_iter()
        .map(|&v| {
            bfs_distances(g, v, Some(mask))
                .into_iter()
                .filter(|&d| d != UNREACHED)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut best = (set[0], eccs[0]);
    for (&v, &e) in set.iter().zip(&eccs) {
        if e < best.1 || (e == best.1 && v < best.0) {
            best = (v, e);
        }
    }
    best
}

/// Builds a membership mask of length `n`.
pub(crate) fn mask_of(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Parses the edge-list text format:
///
/// ```text
/// # optional comments
/// p <n> <m>
/// <u> <v>
/// ```
///
/// The header's edge count is informational; duplicate edge lines collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a nonnegative integer, found {s:?}"),
            })
        };
        match n {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected header \"p <n> <m>\"".into(),
                    });
                }
                n = Some(num(fields[1])?);
                num(fields[2])?;
            }
            Some(count) => {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected \"<u> <v>\", found {line:?}"),
                    });
                }
                let (u, v) = (num(fields[0])?, num(fields[1])?);
                for x in [u, v] {
                    if x >= count {
                        return Err(Error::Range {
                            what: "vertex",
                            value: x,
                            limit: count,
                        });
                    }
                }
                if u == v {
                    return Err(Error::Structure(format!(
                        "line {line_no}: self-loop at vertex {u}"
                    )));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing header \"p <n> <m>\"".into(),
    })?;
    Graph::from_edges(n, edges)
}

/// Canonical edge-list text: header then edges `u v` with `u < v`, sorted.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family};
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        generate(Family::Path, n).unwrap()
    }

    #[test]
    fn parse_single_edge() {
        let g = parse_edge_list("p 2 1\n0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn parse_edgeless_keeps_isolated_vertices() {
        let g = parse_edge_list("p 3 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_dedups() {
        let g = parse_edge_list("# c\np 3 2\n0 1\n1 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_edge_list("p 2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("p 2 1\n0 2\n"),
            Err(Error::Range { value: 2, .. })
        ));
        assert!(matches!(parse_edge_list("p 2 1\n1 1\n"), Err(Error::Structure(_))));
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_edge_list("p 3 1\n0 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn components_ordering() {
        assert_eq!(components(&path(4)), vec![vec![0, 1, 2, 3]]);
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(components(&g), vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(components(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn layers_of_paths_and_cliques() {
        let l = bfs_layers(&path(5), 0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(l.eccentricity(), 4);

        let l = bfs_layers(&path(7), 3).unwrap();
        assert_eq!(l.layers, vec![vec![3], vec![2, 4], vec![1, 5], vec![0, 6]]);
        assert_eq!(l.eccentricity(), 3);

        let k4 = generate(Family::Complete, 4).unwrap();
        for v in 0..4 {
            let l = bfs_layers(&k4, v).unwrap();
            assert_eq!(l.eccentricity(), 1);
            assert_eq!(l.layers[0], vec![v]);
            assert_eq!(l.layers[1].len(), 3);
        }
        assert!(bfs_layers(&k4, 4).is_err());
    }

    #[test]
    fn balls() {
        let grid = generate(Family::Grid, 3).unwrap();
        assert_eq!(ball(&grid, 4, 0).unwrap(), vec![4]);
        assert_eq!(ball(&grid, 4, 1).unwrap(), vec![1, 3, 4, 5, 7]);
        assert_eq!(ball(&grid, 0, 4).unwrap().len(), 9);
        assert!(ball(&grid, 9, 1).is_err());
    }

    #[test]
    fn induced_relabels() {
        let h = path(5).induced(&[1, 2, 4]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn serialize_roundtrip(g in arb_graph()) {
            prop_assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
        }

        #[test]
        fn layers_partition_component_and_match_balls(g in arb_graph(), seed in 0usize..100) {
            let v = seed % g.vertex_count();
            let l = bfs_layers(&g, v).unwrap();
            let comp = components(&g).into_iter().find(|c| c.contains(&v)).unwrap();
            prop_assert_eq!(l.vertex_count(), comp.len());
            let mut prev = 0;
            for r in 0..=l.eccentricity() + 1 {
                let b = ball(&g, v, r).unwrap();
                let mut union: Vec<_> = l.layers.iter().take(r + 1).flatten().copied().collect();
                union.sort_unstable();
                prop_assert_eq!(&b, &union);
                prop_assert!(b.len() >= prev);
                prev = b.len();
            }
            prop_assert_eq!(prev, comp.len());
            // edges join equal or adjacent layers
            let mut depth = vec![UNREACHED; g.vertex_count()];
            for (i, layer) in l.layers.iter().enumerate() {
                for &w in layer { depth[w] = i; }
            }
            for (a, b) in g.edges() {
                if depth[a] != UNREACHED {
                    prop_assert!(depth[a].abs_diff(depth[b]) <= 1);
                }
            }
        }
    }
}
