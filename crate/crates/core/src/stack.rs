//! Stack layouts (book embeddings): checking, exact stack number for small
//! graphs, and a layout derived from a tree-decomposition.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::decomposition::{check_tree_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Vertex budget of [`exact_stack_number`].
pub const EXACT_STACK_MAX_VERTICES: usize = 8;

/// A vertex order plus a stack id in `1..=k` for every edge. Edge keys are
/// stored with the smaller vertex id first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackLayout {
    pub order: Vec<Vertex>,
    pub assignment: BTreeMap<(Vertex, Vertex), usize>,
    pub k: usize,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: Vertex,
    v: Vertex,
    stack: usize,
}

#[derive(Serialize, Deserialize)]
struct LayoutJson {
    order: Vec<Vertex>,
    stacks: Vec<EdgeJson>,
    k: usize,
}

impl StackLayout {
    /// Builds a layout; `k` is the largest stack id used.
    pub fn new(order: Vec<Vertex>, assignment: impl IntoIterator<Item = ((Vertex, Vertex), usize)>) -> Self {
        let assignment: BTreeMap<(Vertex, Vertex), usize> = assignment
            .into_iter()
            .map(|((u, v), s)| ((u.min(v), u.max(v)), s))
            .collect();
        let k = assignment.values().copied().max().unwrap_or(0);
        StackLayout { order, assignment, k }
    }

    pub fn to_json(&self) -> String {
        let doc = LayoutJson {
            order: self.order.clone(),
            stacks: self
                .assignment
                .iter()
                .map(|(&(u, v), &stack)| EdgeJson { u, v, stack })
                .collect(),
            k: self.k,
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LayoutJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let mut layout = StackLayout::new(doc.order, doc.stacks.into_iter().map(|e| ((e.u, e.v), e.stack)));
        layout.k = layout.k.max(doc.k);
        Ok(layout)
    }
}

/// Two same-stack edges `u-x` and `v-y` with `u < v < x < y` in the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub stack: usize,
    pub first: (Vertex, Vertex),
    pub second: (Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StackVerdict {
    pub valid: bool,
    pub k: usize,
    pub first_crossing: Option<Crossing>,
}

/// Checks a layout. Coverage problems (order not a permutation of `V`,
/// missing or extra edges, stack ids outside `1..=k`) are structure errors;
/// interleaving same-stack edges make the verdict invalid. The reported
/// crossing is the first one met when scanning edges by left endpoint.
pub fn check_stack_layout(g: &Graph, layout: &StackLayout) -> Result<StackVerdict> {
    let n = g.vertex_count();
    if layout.order.len() != n {
        return Err(Error::Structure(format!(
            "order has {} vertices, graph has {n}",
            layout.order.len()
        )));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in layout.order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Structure(format!("order is not a permutation (vertex {v})")));
        }
        pos[v] = i;
    }
    if layout.assignment.len() != g.edge_count() {
        return Err(Error::Structure(format!(
            "{} edges assigned, graph has {}",
            layout.assignment.len(),
            g.edge_count()
        )));
    }
    let mut per_stack: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (&(u, v), &s) in &layout.assignment {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(Error::Structure(format!("{u}-{v} is not an edge of the graph")));
        }
        if s == 0 || s > layout.k {
            return Err(Error::Structure(format!("edge {u}-{v} has stack {s} outside 1..={}", layout.k)));
        }
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        per_stack.entry(s).or_default().push((a, b));
    }
    for (&s, intervals) in per_stack.iter_mut() {
        intervals.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let mut open: Vec<(usize, usize)> = Vec::new();
        for &(l, r) in intervals.iter() {
            while open.last().is_some_and(|&(_, top)| top <= l) {
                open.pop();
            }
            if let Some(&(ol, or)) = open.last() {
                if or < r {
                    let o = &layout.order;
                    return Ok(StackVerdict {
                        valid: false,
                        k: layout.k,
                        first_crossing: Some(Crossing {
                            stack: s,
                            first: (o[ol], o[or]),
                            second: (o[l], o[r]),
                        }),
                    });
                }
            }
            open.push((l, r));
        }
    }
    Ok(StackVerdict {
        valid: true,
        k: layout.k,
        first_crossing: None,
    })
}

/// Conflict graph of the edges under `order`: bit `j` of entry `i` is set
/// when edges `i` and `j` interleave.
fn conflicts(edges: &[(Vertex, Vertex)], pos: &[usize]) -> Vec<u64> {
    let spans: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    let mut out = vec![0u64; edges.len()];
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let ((a, b), (c, d)) = (spans[i], spans[j]);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                out[i] |= 1 << j;
                out[j] |= 1 << i;
            }
        }
    }
    out
}

/// A proper colouring with at most `k` colours, found by DSATUR-ordered
/// backtracking.
fn colour_with(adj: &[u64], k: usize) -> Option<Vec<usize>> {
    let m = adj.len();
    if m == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut colour = vec![usize::MAX; m];
    fn go(adj: &[u64], k: usize, colour: &mut Vec<usize>, done: usize) -> bool {
        let m = adj.len();
        if done == m {
            return true;
        }
        // pick the uncoloured vertex with most distinct neighbour colours
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        for v in 0..m {
            if colour[v] != usize::MAX {
                continue;
            }
            let mut seen = 0u64;
            let mut degree = 0;
            let mut rest = adj[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                degree += 1;
                if colour[w] != usize::MAX {
                    seen |= 1 << colour[w];
                }
            }
            let key = (seen.count_ones() as usize, degree);
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let mut used = 0u64;
        let mut rest = adj[pick];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if colour[w] != usize::MAX {
                used |= 1 << colour[w];
            }
        }
        let highest = colour.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |c| c + 1);
        // trying one fresh colour suffices by symmetry
        for c in 0..k.min(highest + 1) {
            if used & (1 << c) == 0 {
                colour[pick] = c;
                if go(adj, k, colour, done + 1) {
                    return true;
                }
                colour[pick] = usize::MAX;
            }
        }
        false
    }
    if go(adj, k, &mut colour, 0) {
        Some(colour)
    } else {
        None
    }
}

fn layout_from_colouring(order: &[Vertex], edges: &[(Vertex, Vertex)], colour: &[usize]) -> StackLayout {
    StackLayout::new(order.to_vec(), edges.iter().zip(colour).map(|(&e, &c)| (e, c + 1)))
}

/// Minimum number of stacks over all vertex orders.
///
/// Interleaving only depends on the cyclic order, so the first vertex is
/// fixed to 0 and of each reversed pair only the order whose second entry
/// is smaller than its last is tried. For each order the minimum is the
/// chromatic number of the edge conflict graph. Ties keep the
/// lexicographically least order.
pub fn exact_stack_number(g: &Graph) -> Result<(usize, StackLayout)> {
    let n = g.vertex_count();
    if n > EXACT_STACK_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "exact stack number limited to {EXACT_STACK_MAX_VERTICES} vertices, graph has {n}"
        )));
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let identity: Vec<Vertex> = g.vertices().collect();
    if edges.is_empty() {
        return Ok((0, StackLayout::new(identity, [])));
    }
    let mut best: Option<(usize, StackLayout)> = None;
    let mut order = identity.clone();
    let mut pos = vec![0; n];
    loop {
        let canonical = n < 3 || order[1] < order[n - 1];
        if canonical {
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let adj = conflicts(&edges, &pos);
            let start = best.as_ref().map_or(edges.len(), |(k, _)| *k - 1);
            let mut found: Option<(usize, Vec<usize>)> = None;
            let mut k = start;
            while let Some(col) = colour_with(&adj, k) {
                let used = col.iter().max().map_or(0, |c| c + 1);
                found = Some((used, col));
                if used == 0 {
                    break;
                }
                k = used - 1;
            }
            if let Some((k, col)) = found {
                best = Some((k, layout_from_colouring(&order, &edges, &col)));
                if k == 1 {
                    break;
                }
            }
        }
        if !next_permutation(&mut order[1..]) {
            break;
        }
    }
    let (k, layout) = best.expect("identity order is always tried");
    Ok((k, layout))
}

/// Advances to the next lexicographic permutation; false at the last one.
pub(crate) fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Layout from a tree-decomposition. The order is the first-visit order of
/// vertices in a depth-first traversal of the decomposition tree, rooted at
/// the largest bag (smallest id on ties), children by ascending id and bag
/// vertices by ascending id. Edges sorted by (left position, right position
/// descending) go to the lowest stack with no interleaving edge.
pub fn layout_from_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<StackLayout> {
    let report = check_tree_decomposition(g, td);
    if !report.valid {
        return Err(Error::Precondition(format!(
            "invalid tree-decomposition: {}",
            report.first_failure.map(|f| f.to_string()).unwrap_or_default()
        )));
    }
    let n = g.vertex_count();
    let nodes = td.bags.len();
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(a, b) in &td.edges {
        tree[a].push(b);
        tree[b].push(a);
    }
    for nb in &mut tree {
        nb.sort_unstable();
    }
    let root = (0..nodes)
        .max_by_key(|&x| (td.bags[x].len(), std::cmp::Reverse(x)))
        .expect("a tree has a node");
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut seen = vec![false; nodes];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        let mut bag = td.bags[x].clone();
        bag.sort_unstable();
        for v in bag {
            if !placed[v] {
                placed[v] = true;
                order.push(v);
            }
        }
        for &y in tree[x].iter().rev() {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut spans: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    spans.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    // every earlier edge starts no later; (l, r) interleaves an earlier
    // edge exactly when that edge ends strictly inside (l, r)
    let mut rights: Vec<BTreeSet<usize>> = Vec::new();
    let mut assignment = Vec::with_capacity(spans.len());
    for (l, r) in spans {
        let s = match rights.iter().position(|set| set.range(l + 1..r).next().is_none()) {
            Some(s) => s,
            None => {
                rights.push(BTreeSet::new());
                rights.len() - 1
            }
        };
        rights[s].insert(r);
        assignment.push(((order[l], order[r]), s + 1));
    }
    Ok(StackLayout::new(order, assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{build_tree_decomposition, exact_treewidth};
    use crate::generators::{generate, random_gnm, random_tree, Family};
    use crate::growth::growth_constant;
    use proptest::prelude::*;

    /// Stack number by every order and plain backtracking colouring.
    fn stack_number_by_all_orders(g: &Graph) -> usize {
        let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
        let n = g.vertex_count();
        fn colourable(edges: &[(usize, usize)], pos: &[usize], k: usize, col: &mut Vec<usize>) -> bool {
            let i = col.len();
            if i == edges.len() {
                return true;
            }
            let (a, b) = (pos[edges[i].0].min(pos[edges[i].1]), pos[edges[i].0].max(pos[edges[i].1]));
            for c in 0..k {
                let clash = (0..i).any(|j| {
                    let (x, y) = (pos[edges[j].0].min(pos[edges[j].1]), pos[edges[j].0].max(pos[edges[j].1]));
                    col[j] == c && ((a < x && x < b && b < y) || (x < a && a < y && y < b))
                });
                if !clash {
                    col.push(c);
                    if colourable(edges, pos, k, col) {
                        return true;
                    }
                    col.pop();
                }
            }
            false
        }
        let mut best = edges.len();
        let mut order: Vec<usize> = (0..n).collect();
        loop {
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let mut k = 0;
            while !colourable(&edges, &pos, k, &mut Vec::new()) {
                k += 1;
            }
            best = best.min(k);
            if !next_permutation(&mut order) {
                break;
            }
        }
        best
    }

    /// Bags `{parent(v), v}` numbered in depth-first preorder from vertex 0;
    /// the bag of a child of the root hangs off the first such bag.
    fn tree_edge_decomposition(t: &Graph) -> TreeDecomposition {
        let mut bags: Vec<Vec<Vertex>> = Vec::new();
        let mut edges = Vec::new();
        let mut bag_of = vec![usize::MAX; t.vertex_count()];
        let mut stack: Vec<(Vertex, Vertex)> = t.neighbors(0).iter().rev().map(|&c| (0, c)).collect();
        while let Some((p, v)) = stack.pop() {
            let id = bags.len();
            bags.push(vec![p.min(v), p.max(v)]);
            bag_of[v] = id;
            let attach = if p == 0 { 0 } else { bag_of[p] };
            if id > 0 {
                edges.push((attach, id));
            }
            for &w in t.neighbors(v).iter().rev() {
                if w != p {
                    stack.push((v, w));
                }
            }
        }
        TreeDecomposition { bags, edges }
    }

    #[test]
    fn checker_examples() {
        let c4 = generate(Family::Cycle, 4).unwrap();
        let one = StackLayout::new(vec![0, 1, 2, 3], c4.edges().map(|e| (e, 1)));
        assert!(check_stack_layout(&c4, &one).unwrap().valid);

        let k4 = generate(Family::Complete, 4).unwrap();
        let single = StackLayout::new(vec![0, 1, 2, 3], k4.edges().map(|e| (e, 1)));
        let v = check_stack_layout(&k4, &single).unwrap();
        assert!(!v.valid);
        let x = v.first_crossing.unwrap();
        assert_eq!((x.first, x.second), ((0, 2), (1, 3)));

        let split = StackLayout::new(
            vec![0, 1, 2, 3],
            k4.edges().map(|e| (e, if e == (1, 3) { 2 } else { 1 })),
        );
        let v = check_stack_layout(&k4, &split).unwrap();
        assert!(v.valid);
        assert_eq!(v.k, 2);

        let short = StackLayout::new(vec![0, 1, 2, 3], [((0, 1), 1)]);
        assert!(matches!(check_stack_layout(&c4, &short), Err(Error::Structure(_))));
        let bad_order = StackLayout::new(vec![0, 1, 1, 3], c4.edges().map(|e| (e, 1)));
        assert!(check_stack_layout(&c4, &bad_order).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k4 = generate(Family::Complete, 4).unwrap();
        let (_, layout) = exact_stack_number(&k4).unwrap();
        let back = StackLayout::from_json(&layout.to_json()).unwrap();
        assert_eq!(back, layout);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_stack_number(&Graph::empty(5)).unwrap().0, 0);
        for seed in 0..4 {
            let t = random_tree(8, seed).unwrap();
            assert_eq!(exact_stack_number(&t).unwrap().0, 1);
        }
        for n in 3..=8 {
            assert_eq!(exact_stack_number(&generate(Family::Cycle, n).unwrap()).unwrap().0, 1);
        }
        for (n, k) in [(4, 2), (5, 3), (6, 3)] {
            let g = generate(Family::Complete, n).unwrap();
            let (got, witness) = exact_stack_number(&g).unwrap();
            assert_eq!(got, k, "K_{n}");
            let v = check_stack_layout(&g, &witness).unwrap();
            assert!(v.valid);
            assert_eq!(v.k, k);
        }
        assert!(matches!(exact_stack_number(&Graph::empty(9)), Err(Error::Capacity(_))));
    }

    #[test]
    fn exact_matches_unpruned_search() {
        for n in 4..=6 {
            let g = generate(Family::Complete, n).unwrap();
            assert_eq!(exact_stack_number(&g).unwrap().0, stack_number_by_all_orders(&g));
        }
        for (n, m, seed) in [(5, 7, 1), (6, 10, 2), (6, 12, 3), (6, 9, 4), (6, 13, 5)] {
            let g = random_gnm(n, m, seed).unwrap();
            assert_eq!(exact_stack_number(&g).unwrap().0, stack_number_by_all_orders(&g), "G({n},{m}) {seed}");
        }
    }

    #[test]
    fn decomposition_layout_examples() {
        let t = random_tree(30, 3).unwrap();
        let natural = tree_edge_decomposition(&t);
        assert!(check_tree_decomposition(&t, &natural).valid);
        let layout = layout_from_decomposition(&t, &natural).unwrap();
        assert!(check_stack_layout(&t, &layout).unwrap().valid);
        assert_eq!(layout.k, 1);
        let small = random_tree(12, 3).unwrap();
        let (_, td) = exact_treewidth(&small).unwrap();
        assert!(check_stack_layout(&small, &layout_from_decomposition(&small, &td).unwrap()).unwrap().valid);
        let td = build_tree_decomposition(&t, &growth_constant(&t).unwrap()).unwrap();
        let layout = layout_from_decomposition(&t, &td).unwrap();
        assert!(check_stack_layout(&t, &layout).unwrap().valid);

        let c6 = generate(Family::Cycle, 6).unwrap();
        let path_td = TreeDecomposition {
            bags: vec![vec![0, 1, 5], vec![1, 4, 5], vec![1, 2, 4], vec![2, 3, 4]],
            edges: vec![(0, 1), (1, 2), (2, 3)],
        };
        let layout = layout_from_decomposition(&c6, &path_td).unwrap();
        assert!(check_stack_layout(&c6, &layout).unwrap().valid);
        assert!(layout.k <= 2);

        let k4 = generate(Family::Complete, 4).unwrap();
        let layout = layout_from_decomposition(&k4, &TreeDecomposition::single_bag(vec![0, 1, 2, 3])).unwrap();
        assert!(check_stack_layout(&k4, &layout).unwrap().valid);
        assert_eq!(layout.k, 2);

        let bad = TreeDecomposition::single_bag(vec![0, 1]);
        assert!(matches!(layout_from_decomposition(&k4, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn grid_layout_within_bound() {
        let g = generate(Family::Grid, 6).unwrap();
        let c = growth_constant(&g).unwrap();
        let td = build_tree_decomposition(&g, &c).unwrap();
        let layout = layout_from_decomposition(&g, &td).unwrap();
        assert!(check_stack_layout(&g, &layout).unwrap().valid);
        assert!(num_bigint::BigInt::from(layout.k) <= crate::ratio::stack_bound(&c));
    }

    #[test]
    fn subgraph_monotonicity() {
        for seed in 0..6 {
            let g = random_gnm(6, 11, seed).unwrap();
            let k = exact_stack_number(&g).unwrap().0;
            let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
            let h = g.without_edges(&edges[..3]);
            assert!(exact_stack_number(&h).unwrap().0 <= k);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        #[test]
        fn heuristic_is_valid_and_above_exact(n in 1usize..9, m_seed in 0usize..100, seed in 0u64..1000) {
            let max = n * (n - 1) / 2;
            let g = random_gnm(n, m_seed % (max + 1), seed).unwrap();
            let c = growth_constant(&g).unwrap();
            let td = build_tree_decomposition(&g, &c).unwrap();
            let layout = layout_from_decomposition(&g, &td).unwrap();
            prop_assert!(check_stack_layout(&g, &layout).unwrap().valid);
            let (k, witness) = exact_stack_number(&g).unwrap();
            prop_assert!(k <= layout.k);
            prop_assert!(check_stack_layout(&g, &witness).unwrap().valid);
        }
    }
}
