//! Tree-decompositions: construction from BFS-layer separators, validity
//! checking, exact treewidth on small graphs, and grid-minor models.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, components_within, layers_within, min_eccentricity_center, Graph, Vertex};
use crate::ratio::{self, Rational};

/// Default vertex budget of [`exact_treewidth`].
pub const EXACT_TREEWIDTH_MAX_VERTICES: usize = 18;

/// Hard ceiling for [`exact_treewidth_with_budget`]; the table has
/// `2^n` entries.
pub const EXACT_TREEWIDTH_HARD_LIMIT: usize = 24;

/// Bags indexed by the nodes `0..bags.len()` of a tree given by `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// One node holding `bag`.
    pub fn single_bag(mut bag: Vec<Vertex>) -> Self {
        bag.sort_unstable();
        bag.dedup();
        TreeDecomposition {
            bags: vec![bag],
            edges: Vec::new(),
        }
    }

    /// Largest bag size minus one (zero for an empty bag).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn to_json(&self) -> String {
        let doc = TdJson {
            nodes: self
                .bags
                .iter()
                .enumerate()
                .map(|(id, bag)| NodeJson { id, bag: bag.clone() })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            width: self.width(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Reads the JSON form. Node ids must be exactly `0..N` in any order;
    /// the stored width is ignored in favour of the bags.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TdJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let n = doc.nodes.len();
        let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; n];
        for node in doc.nodes {
            if node.id >= n || bags[node.id].is_some() {
                return Err(Error::Structure(format!("bad or repeated node id {}", node.id)));
            }
            let mut bag = node.bag;
            bag.sort_unstable();
            bag.dedup();
            bags[node.id] = Some(bag);
        }
        Ok(TreeDecomposition {
            bags: bags.into_iter().map(|b| b.expect("all ids seen")).collect(),
            edges: doc.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: usize,
    bag: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct TdJson {
    nodes: Vec<NodeJson>,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TdFailure {
    NotATree(String),
    VertexOutOfRange { node: usize, vertex: Vertex },
    VertexMissing(Vertex),
    VertexDisconnected(Vertex),
    EdgeUncovered(Vertex, Vertex),
}

impl fmt::Display for TdFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdFailure::NotATree(why) => write!(f, "index graph is not a tree: {why}"),
            TdFailure::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds vertex {vertex} outside the graph")
            }
            TdFailure::VertexMissing(v) => write!(f, "vertex {v} is in no bag"),
            TdFailure::VertexDisconnected(v) => write!(f, "bags holding vertex {v} are not connected"),
            TdFailure::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is in no bag"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdReport {
    pub valid: bool,
    pub width: usize,
    pub first_failure: Option<TdFailure>,
}

fn tree_failure(node_count: usize, edges: &[(usize, usize)]) -> Option<String> {
    if node_count == 0 {
        return Some("no nodes".into());
    }
    if edges.len() + 1 != node_count {
        return Some(format!("{} nodes but {} edges", node_count, edges.len()));
    }
    let mut parent: Vec<usize> = (0..node_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in edges {
        if a >= node_count || b >= node_count {
            return Some(format!("edge {a}-{b} names a missing node"));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Some(format!("edge {a}-{b} closes a cycle"));
        }
        parent[ra] = rb;
    }
    None
}

/// Checks both tree-decomposition axioms and the tree shape of the index
/// graph. Empty bags are allowed; they never break either axiom.
pub fn check_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> TdReport {
    let width = td.width();
    let fail = |f: TdFailure| TdReport {
        valid: false,
        width,
        first_failure: Some(f),
    };
    if let Some(why) = tree_failure(td.bags.len(), &td.edges) {
        return fail(TdFailure::NotATree(why));
    }
    let n = g.vertex_count();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return fail(TdFailure::VertexOutOfRange { node, vertex: v });
            }
            holders[v].push(node);
        }
    }
    // the nodes holding v induce a forest; it is a tree iff nodes - edges == 1
    let mut shared_edges = vec![0usize; n];
    for &(a, b) in &td.edges {
        for v in td.bags[a].iter().filter(|v| td.bags[b].binary_search(v).is_ok()) {
            shared_edges[*v] += 1;
        }
    }
    for v in 0..n {
        if holders[v].is_empty() {
            return fail(TdFailure::VertexMissing(v));
        }
        if holders[v].len() != shared_edges[v] + 1 {
            return fail(TdFailure::VertexDisconnected(v));
        }
    }
    for (u, v) in g.edges() {
        let (hu, hv) = (&holders[u], &holders[v]);
        let (mut i, mut j) = (0, 0);
        let mut covered = false;
        while i < hu.len() && j < hv.len() {
            match hu[i].cmp(&hv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    covered = true;
                    break;
                }
            }
        }
        if !covered {
            return fail(TdFailure::EdgeUncovered(u, v));
        }
    }
    TdReport {
        valid: true,
        width,
        first_failure: None,
    }
}

/// Decomposition from an elimination ordering: eliminating `v` creates the
/// bag `{v} ∪ N(v)` in the current fill graph, attached to the bag of the
/// earliest-eliminated vertex of `N(v)`. Separate components are chained.
pub fn elimination_decomposition(g: &Graph, order: &[Vertex]) -> Result<TreeDecomposition> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::Precondition(format!(
            "ordering has {} vertices, graph has {n}",
            order.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        g.check_vertex(v)?;
        if position[v] != usize::MAX {
            return Err(Error::Precondition(format!("vertex {v} repeated in ordering")));
        }
        position[v] = i;
    }
    if n == 0 {
        return Ok(TreeDecomposition::single_bag(Vec::new()));
    }
    let mut fill: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent_vertex = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<Vertex> = fill[v].iter().copied().collect();
        for (i, &a) in later.iter().enumerate() {
            fill[a].remove(&v);
            for &b in &later[i + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        parent_vertex.push(later.iter().copied().min_by_key(|&w| position[w]));
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, p) in parent_vertex.into_iter().enumerate() {
        match p {
            Some(w) => edges.push((i, position[w])),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    Ok(TreeDecomposition { bags, edges })
}

/// Exact treewidth with the default budget of
/// [`EXACT_TREEWIDTH_MAX_VERTICES`] vertices.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_with_budget(g, EXACT_TREEWIDTH_MAX_VERTICES)
}

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// `tw[S]` is the best achievable maximum forward degree when `S` is the
/// set of the first `|S|` eliminated vertices:
/// `tw[S] = min_{v ∈ S} max(tw[S - v], q(S - v, v))`, where `q(S, v)`
/// counts vertices outside `S ∪ {v}` reachable from `v` through `S`. The
/// witness comes from the backpointers via [`elimination_decomposition`].
pub fn exact_treewidth_with_budget(g: &Graph, max_vertices: usize) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    let limit = max_vertices.min(EXACT_TREEWIDTH_HARD_LIMIT);
    if n > limit {
        return Err(Error::Capacity(format!(
            "exact treewidth limited to {limit} vertices, graph has {n}"
        )));
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::single_bag(Vec::new())));
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    best[0] = 0;
    for set in 1..size as u32 {
        let mut rest = set;
        let mut value = u8::MAX;
        let mut pick = 0u8;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = set & !(1 << v);
            let prior = best[before as usize];
            if prior >= value {
                continue;
            }
            let q = forward_degree(&adj, before, v, full);
            let cand = prior.max(q);
            if cand < value {
                value = cand;
                pick = v as u8;
            }
        }
        best[set as usize] = value;
        choice[set as usize] = pick;
    }
    let width = best[full as usize] as usize;
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = choice[set as usize];
        order.push(v as usize);
        set &= !(1 << v);
    }
    order.reverse();
    let td = elimination_decomposition(g, &order)?;
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Vertices outside `before ∪ {v}` reachable from `v` through `before`.
fn forward_degree(adj: &[u32], before: u32, v: usize, full: u32) -> u8 {
    let mut reached: u32 = 1 << v;
    let mut boundary = adj[v];
    loop {
        let inner = boundary & before & !reached;
        if inner == 0 {
            break;
        }
        reached |= inner;
        let mut f = inner;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            boundary |= adj[x];
        }
    }
    (boundary & full & !before & !(1 << v)).count_ones() as u8
}

/// Greedy min-fill elimination; an upper bound on treewidth with a valid
/// witness, for graphs beyond the exact budget.
pub fn min_fill_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    let mut fill: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<Vertex> = fill[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|b| !fill[a].contains(b)).count();
            }
            let key = (missing, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.expect("some vertex is alive");
        let nb: Vec<Vertex> = fill[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            fill[a].remove(&v);
            for &b in &nb[i + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        alive[v] = false;
        order.push(v);
    }
    elimination_decomposition(g, &order).expect("order is a permutation")
}

struct Task {
    x: Vec<Vertex>,
    w: Vec<Vertex>,
    parent: Option<usize>,
}

/// Builds a tree-decomposition by recursive BFS-layer separation.
///
/// Each step handles a set `X` with boundary `W ⊆ X`, where no vertex of
/// `X \ W` has a neighbor outside `X`. If `X \ W` is disconnected the bag
/// is `W` and every component `C` recurses on `C ∪ N(C)` with boundary
/// `N(C)`. Otherwise `X \ W` is layered from a minimum-eccentricity center
/// and a separator `S` is picked among layer 0 and the thin layers
/// (`|V_i| < 2c`); the bag is `W ∪ S` and each component `C` of
/// `X \ (W ∪ S)` recurses on `C ∪ N(C)`. Among separators whose predicted
/// width `max(|W ∪ S|, max_C |N(C)| + 1)` does not exceed both the best
/// prediction and the width built so far, the most balanced split wins.
/// Finally nodes whose bag is contained in a neighbor's bag are merged.
pub fn build_tree_decomposition(g: &Graph, c: &Rational) -> Result<TreeDecomposition> {
    if *c < Rational::one() {
        return Err(Error::Domain(format!("c must be at least 1, got {}", ratio::show(c))));
    }
    if g.is_empty() {
        return Ok(TreeDecomposition::single_bag(Vec::new()));
    }
    let two_c = ratio::int(2) * c;
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    let mut widest = 0usize;

    let mut stack: Vec<Task> = components(g)
        .into_iter()
        .rev()
        .map(|x| Task { x, w: Vec::new(), parent: None })
        .collect();
    // process components in id order
    stack.sort_by_key(|t| std::cmp::Reverse(t.x[0]));

    while let Some(task) = stack.pop() {
        let (bag, children) = split_step(g, &task.x, &task.w, &two_c, widest)?;
        let node = bags.len();
        widest = widest.max(bag.len());
        bags.push(bag);
        match task.parent {
            Some(p) => edges.push((p, node)),
            None => roots.push(node),
        }
        for (x, w) in children.into_iter().rev() {
            stack.push(Task { x, w, parent: Some(node) });
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    Ok(merge_contained_bags(TreeDecomposition { bags, edges }))
}

type Child = (Vec<Vertex>, Vec<Vertex>);

/// One recursion step; returns the bag and the child subproblems, all in
/// global vertex ids.
fn split_step(
    g: &Graph,
    x: &[Vertex],
    w: &[Vertex],
    two_c: &Rational,
    widest: usize,
) -> Result<(Vec<Vertex>, Vec<Child>)> {
    let k = x.len();
    if k <= widest || k - w.len() <= 1 {
        return Ok((x.to_vec(), Vec::new()));
    }
    let local = g.induced(x);
    let mut in_w = vec![false; k];
    for v in w {
        let i = x.binary_search(v).map_err(|_| Error::Internal(format!("boundary vertex {v} outside X")))?;
        in_w[i] = true;
    }
    let inner_mask: Vec<bool> = in_w.iter().map(|b| !b).collect();
    let inner: Vec<Vertex> = (0..k).filter(|&i| inner_mask[i]).collect();
    let to_global = |set: &[Vertex]| -> Vec<Vertex> { set.iter().map(|&i| x[i]).collect() };

    let inner_comps = components_within(&local, Some(&inner_mask));
    if inner_comps.len() >= 2 {
        let sep_mask = in_w.clone();
        let children = children_of(&local, &inner_comps, &sep_mask)
            .into_iter()
            .map(|(cx, cw)| (to_global(&cx), to_global(&cw)))
            .collect();
        return Ok((w.to_vec(), children));
    }

    let (center, _) = min_eccentricity_center(&local, &inner, &inner_mask);
    let layering = layers_within(&local, center, Some(&inner_mask));
    let p = layering.eccentricity();

    struct Candidate {
        predicted: usize,
        largest: usize,
        sep_size: usize,
        j: usize,
        comps: Vec<Vec<Vertex>>,
        mask: Vec<bool>,
    }
    let mut candidates: Vec<Candidate> = Vec::new();
    for j in 0..=p {
        let layer = &layering.layers[j];
        if j > 0 && !ratio::lt_usize(layer.len(), two_c) {
            continue;
        }
        let mut sep_mask = in_w.clone();
        for &v in layer {
            sep_mask[v] = true;
        }
        let rest_mask: Vec<bool> = sep_mask.iter().map(|b| !b).collect();
        let comps = components_within(&local, Some(&rest_mask));
        let boundary_max = comps
            .iter()
            .map(|comp| neighborhood(&local, comp, &sep_mask).len())
            .max()
            .unwrap_or(0);
        let predicted = (w.len() + layer.len()).max(boundary_max + 1);
        let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
        candidates.push(Candidate {
            predicted,
            largest,
            sep_size: layer.len(),
            j,
            comps,
            mask: sep_mask,
        });
    }
    let best_prediction = candidates.iter().map(|c| c.predicted).min().expect("layer 0 is always a candidate");
    if k <= best_prediction {
        return Ok((x.to_vec(), Vec::new()));
    }
    let allowed = best_prediction.max(widest);
    let chosen = candidates
        .into_iter()
        .filter(|c| c.predicted <= allowed)
        .min_by_key(|c| (c.largest, c.sep_size, c.j))
        .expect("the best prediction is allowed");

    let bag: Vec<Vertex> = {
        let mut b: Vec<Vertex> = (0..k).filter(|&i| chosen.mask[i]).map(|i| x[i]).collect();
        b.sort_unstable();
        b
    };
    if chosen.comps.iter().any(|comp| comp.len() + bag.len() >= k + comp.len() && comp.len() == inner.len()) {
        return Err(Error::Internal(format!(
            "separator at layer {} did not shrink a set of {k} vertices",
            chosen.j
        )));
    }
    let children = children_of(&local, &chosen.comps, &chosen.mask)
        .into_iter()
        .map(|(cx, cw)| (to_global(&cx), to_global(&cw)))
        .collect();
    Ok((bag, children))
}

/// Neighbors of `comp` inside the marked separator set, sorted.
fn neighborhood(g: &Graph, comp: &[Vertex], sep_mask: &[bool]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = comp
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|&u| sep_mask[u])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn children_of(g: &Graph, comps: &[Vec<Vertex>], sep_mask: &[bool]) -> Vec<Child> {
    comps
        .iter()
        .map(|comp| {
            let boundary = neighborhood(g, comp, sep_mask);
            let mut x: Vec<Vertex> = comp.iter().chain(&boundary).copied().collect();
            x.sort_unstable();
            (x, boundary)
        })
        .collect()
}

fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Contracts every tree edge whose one bag contains the other, then
/// renumbers the surviving nodes in increasing old id.
pub fn merge_contained_bags(td: TreeDecomposition) -> TreeDecomposition {
    let n = td.bags.len();
    if n <= 1 {
        return td;
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in &td.edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut alive = vec![true; n];
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let target = adj[x].iter().copied().find(|&y| is_subset(&td.bags[x], &td.bags[y]));
            if let Some(y) = target {
                let others: Vec<usize> = adj[x].iter().copied().filter(|&z| z != y).collect();
                for z in others {
                    adj[z].remove(&x);
                    adj[z].insert(y);
                    adj[y].insert(z);
                }
                adj[y].remove(&x);
                adj[x].clear();
                alive[x] = false;
                changed = true;
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut bags = Vec::new();
    for x in (0..n).filter(|&x| alive[x]) {
        new_id[x] = bags.len();
        bags.push(td.bags[x].clone());
    }
    let mut edges = Vec::new();
    for x in (0..n).filter(|&x| alive[x]) {
        for &y in adj[x].iter().filter(|&&y| y > x) {
            edges.push((new_id[x], new_id[y]));
        }
    }
    TreeDecomposition { bags, edges }
}

/// Branch sets of a `side x side` grid minor; set `(i, j)` is at index
/// `i * side + j` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub side: usize,
    pub branch_sets: Vec<Vec<Vertex>>,
}

impl MinorModel {
    /// Singleton branch sets `{(i, j)}` for the grid itself.
    pub fn identity(side: usize) -> Self {
        MinorModel {
            side,
            branch_sets: (0..side * side).map(|v| vec![v]).collect(),
        }
    }

    pub fn set(&self, i: usize, j: usize) -> &[Vertex] {
        &self.branch_sets[i * self.side + j]
    }

    /// Union of row `i`.
    pub fn row(&self, i: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = (0..self.side).flat_map(|j| self.set(i, j).to_vec()).collect();
        out.sort_unstable();
        out
    }

    /// Union of column `j`.
    pub fn column(&self, j: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = (0..self.side).flat_map(|i| self.set(i, j).to_vec()).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorVerdict {
    Valid,
    Invalid(String),
}

impl MinorVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, MinorVerdict::Valid)
    }
}

/// Checks that the branch sets are nonempty, pairwise disjoint, connected,
/// and joined by an edge for every pair of grid neighbors.
pub fn verify_grid_minor_model(g: &Graph, model: &MinorModel) -> MinorVerdict {
    let q = model.side;
    let bad = |s: String| MinorVerdict::Invalid(s);
    if model.branch_sets.len() != q * q {
        return bad(format!("expected {} branch sets, found {}", q * q, model.branch_sets.len()));
    }
    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (idx, set) in model.branch_sets.iter().enumerate() {
        let (i, j) = (idx / q, idx % q);
        if set.is_empty() {
            return bad(format!("branch set ({i},{j}) is empty"));
        }
        for &v in set {
            if v >= n {
                return bad(format!("branch set ({i},{j}) holds vertex {v} outside the graph"));
            }
            if let Some(other) = owner[v] {
                if other != idx {
                    return bad(format!(
                        "vertex {v} is in branch sets ({},{}) and ({i},{j})",
                        other / q,
                        other % q
                    ));
                }
            }
            owner[v] = Some(idx);
        }
    }
    for (idx, set) in model.branch_sets.iter().enumerate() {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if components(&g.induced(&sorted)).len() != 1 {
            return bad(format!("branch set ({},{}) is not connected", idx / q, idx % q));
        }
    }
    let touches = |a: usize, b: usize| {
        model.branch_sets[a]
            .iter()
            .any(|&v| g.neighbors(v).iter().any(|&w| owner[w] == Some(b)))
    };
    for i in 0..q {
        for j in 0..q {
            let here = i * q + j;
            if j + 1 < q && !touches(here, here + 1) {
                return bad(format!("no edge between branch sets ({i},{j}) and ({i},{})", j + 1));
            }
            if i + 1 < q && !touches(here, here + q) {
                return bad(format!("no edge between branch sets ({i},{j}) and ({},{j})", i + 1));
            }
        }
    }
    MinorVerdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, random_gnm, random_tree, Family};
    use crate::growth::growth_constant;
    use crate::ratio::int;
    use proptest::prelude::*;

    /// Treewidth by trying every elimination ordering (no memoization).
    fn treewidth_by_all_orderings(g: &Graph) -> usize {
        fn width_of(g: &Graph, order: &[Vertex]) -> usize {
            let mut fill: Vec<BTreeSet<Vertex>> =
                g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
            let mut w = 0;
            for &v in order {
                let nb: Vec<Vertex> = fill[v].iter().copied().collect();
                w = w.max(nb.len());
                for &a in &nb {
                    fill[a].remove(&v);
                    for &b in &nb {
                        if a != b {
                            fill[a].insert(b);
                        }
                    }
                }
            }
            w
        }
        fn permute(g: &Graph, prefix: &mut Vec<Vertex>, used: &mut Vec<bool>, best: &mut usize) {
            if prefix.len() == g.vertex_count() {
                *best = (*best).min(width_of(g, prefix));
                return;
            }
            for v in g.vertices() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    permute(g, prefix, used, best);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut best = usize::MAX;
        permute(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut best);
        best
    }

    #[test]
    fn checker_examples() {
        let p3 = generate(Family::Path, 3).unwrap();
        let whole = TreeDecomposition::single_bag(vec![0, 1, 2]);
        let rep = check_tree_decomposition(&p3, &whole);
        assert!(rep.valid);
        assert_eq!(rep.width, 2);

        let two = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![(0, 1)] };
        let rep = check_tree_decomposition(&p3, &two);
        assert!(rep.valid);
        assert_eq!(rep.width, 1);

        let bad = TreeDecomposition { bags: vec![vec![0, 1], vec![2]], edges: vec![(0, 1)] };
        assert_eq!(check_tree_decomposition(&p3, &bad).first_failure, Some(TdFailure::EdgeUncovered(1, 2)));

        let split = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2], vec![1, 2]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(check_tree_decomposition(&p3, &split).first_failure, Some(TdFailure::VertexDisconnected(1)));

        let cyclic = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![1]],
            edges: vec![(0, 1), (1, 2), (2, 0)],
        };
        assert!(matches!(
            check_tree_decomposition(&p3, &cyclic).first_failure,
            Some(TdFailure::NotATree(_))
        ));
        let missing = TreeDecomposition::single_bag(vec![0, 1]);
        assert_eq!(check_tree_decomposition(&p3, &missing).first_failure, Some(TdFailure::VertexMissing(2)));
    }

    #[test]
    fn json_roundtrip() {
        let td = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![(0, 1)] };
        let text = td.to_json();
        assert!(text.contains("\"width\": 1"));
        assert_eq!(TreeDecomposition::from_json(&text).unwrap(), td);
        assert!(TreeDecomposition::from_json("{\"nodes\":[{\"id\":3,\"bag\":[]}],\"edges\":[]}").is_err());
    }

    #[test]
    fn exact_examples() {
        for seed in 0..5 {
            let t = random_tree(12, seed).unwrap();
            let (w, td) = exact_treewidth(&t).unwrap();
            assert_eq!(w, 1);
            assert!(check_tree_decomposition(&t, &td).valid);
        }
        let (w, td) = exact_treewidth(&generate(Family::Grid, 3).unwrap()).unwrap();
        assert_eq!((w, td.width()), (3, 3));
        assert_eq!(exact_treewidth(&generate(Family::Complete, 6).unwrap()).unwrap().0, 5);
        assert_eq!(exact_treewidth(&generate(Family::Cycle, 5).unwrap()).unwrap().0, 2);
        assert_eq!(exact_treewidth(&Graph::empty(1)).unwrap().0, 0);
        assert!(matches!(exact_treewidth(&generate(Family::Path, 19).unwrap()), Err(Error::Capacity(_))));
    }

    #[test]
    fn exact_matches_all_orderings() {
        for (n, m, seed) in [(5, 6, 1), (6, 9, 2), (6, 12, 3), (7, 10, 4), (7, 15, 5), (7, 8, 6)] {
            let g = random_gnm(n, m, seed).unwrap();
            let (w, td) = exact_treewidth(&g).unwrap();
            assert_eq!(w, treewidth_by_all_orderings(&g), "G({n},{m}) seed {seed}");
            let rep = check_tree_decomposition(&g, &td);
            assert!(rep.valid);
            assert_eq!(rep.width, w);
        }
    }

    #[test]
    fn builder_examples() {
        for n in [2, 3, 7, 20, 101] {
            let p = generate(Family::Path, n).unwrap();
            let td = build_tree_decomposition(&p, &int(3)).unwrap();
            let rep = check_tree_decomposition(&p, &td);
            assert!(rep.valid, "P_{n}: {:?}", rep.first_failure);
            assert!(rep.width <= 2, "P_{n} width {}", rep.width);
        }
        let k5 = generate(Family::Complete, 5).unwrap();
        let td = build_tree_decomposition(&k5, &int(5)).unwrap();
        assert_eq!(td.bags, vec![vec![0, 1, 2, 3, 4]]);

        let grid = generate(Family::Grid, 4).unwrap();
        let c = growth_constant(&grid).unwrap();
        let td = build_tree_decomposition(&grid, &c).unwrap();
        let rep = check_tree_decomposition(&grid, &td);
        assert!(rep.valid);
        assert!(rep.width >= 4);
        assert!(ratio::from_usize(rep.width) <= Rational::from_integer(ratio::treewidth_bound(&c)));

        let empty = build_tree_decomposition(&Graph::empty(0), &int(1)).unwrap();
        assert_eq!(empty.bags, vec![Vec::<Vertex>::new()]);
        assert!(build_tree_decomposition(&k5, &ratio::frac(1, 2)).is_err());
    }

    #[test]
    fn builder_handles_disconnected_graphs() {
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (4, 5), (5, 6), (6, 4)]).unwrap();
        let td = build_tree_decomposition(&g, &int(3)).unwrap();
        let rep = check_tree_decomposition(&g, &td);
        assert!(rep.valid, "{:?}", rep.first_failure);
        assert_eq!(rep.width, 2);
    }

    #[test]
    fn min_fill_is_valid() {
        let g = generate(Family::Grid, 5).unwrap();
        let td = min_fill_decomposition(&g);
        let rep = check_tree_decomposition(&g, &td);
        assert!(rep.valid);
        assert!(rep.width >= 5);
    }

    #[test]
    fn minor_models() {
        let g3 = generate(Family::Grid, 3).unwrap();
        assert!(verify_grid_minor_model(&g3, &MinorModel::identity(3)).is_valid());
        let cut = g3.without_edges(&[(4, 5)]);
        match verify_grid_minor_model(&cut, &MinorModel::identity(3)) {
            MinorVerdict::Invalid(why) => assert!(why.contains("(1,1) and (1,2)"), "{why}"),
            MinorVerdict::Valid => panic!("missing edge not detected"),
        }
        let c4 = generate(Family::Cycle, 4).unwrap();
        // C_4 = 0-1-2-3-0; grid order (0,0)=0 (0,1)=1 (1,0)=3 (1,1)=2
        let model = MinorModel { side: 2, branch_sets: vec![vec![0], vec![1], vec![3], vec![2]] };
        assert!(verify_grid_minor_model(&c4, &model).is_valid());

        // contract a 2x4 grid's column pairs into a 2x2 grid
        let g = crate::generators::strong_product(&generate(Family::Path, 2).unwrap(), &generate(Family::Path, 4).unwrap()).unwrap();
        let model = MinorModel { side: 2, branch_sets: vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]] };
        assert!(verify_grid_minor_model(&g, &model).is_valid());
        let overlap = MinorModel { side: 2, branch_sets: vec![vec![0, 1], vec![1, 2], vec![4], vec![6]] };
        assert!(!verify_grid_minor_model(&g, &overlap).is_valid());
        let split = MinorModel { side: 2, branch_sets: vec![vec![0, 2], vec![1], vec![4], vec![5]] };
        assert!(!verify_grid_minor_model(&g, &split).is_valid());
        assert_eq!(MinorModel::identity(3).row(1), vec![3, 4, 5]);
        assert_eq!(MinorModel::identity(3).column(1), vec![1, 4, 7]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn builder_is_sound_and_above_exact(n in 1usize..13, m_seed in 0usize..100, seed in 0u64..1000) {
            let max = n * (n - 1) / 2;
            let g = random_gnm(n, m_seed % (max + 1), seed).unwrap();
            let c = growth_constant(&g).unwrap();
            let td = build_tree_decomposition(&g, &c).unwrap();
            let rep = check_tree_decomposition(&g, &td);
            prop_assert!(rep.valid, "{:?}", rep.first_failure);
            let (exact, witness) = exact_treewidth(&g).unwrap();
            prop_assert!(rep.width >= exact);
            prop_assert!(check_tree_decomposition(&g, &witness).valid);
        }
    }
}
