//! Balanced separations from BFS layerings.
//!
//! * [`bfs_layer_separation`] splits a connected vertex set along one thin
//!   BFS layer. When the graph satisfies `f(r) <= c r`, the split has order
//!   below `2c` and each exclusive side holds at most `(1 - 1/(4c)) n`
//!   vertices.
//! * [`separate_possibly_disconnected`] lifts a separator for connected sets
//!   to arbitrary sets by peeling off smallest components.
//! * [`rebalance_to_two_thirds`] iterates an `alpha`-balanced separator until
//!   both exclusive sides hold at most `2n/3` vertices.
//!
//! Balance is always measured on the exclusive sides `A \ B` and `B \ A`.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components_within, layers_within, mask_of, min_eccentricity_center, Graph, Vertex};
use crate::ratio::{self, Rational};

/// A pair `(A, B)` covering a vertex set with no edge between `A \ B` and
/// `B \ A`. Both sides are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub host_size: usize,
}

fn sorted_difference(x: &[Vertex], y: &[Vertex]) -> Vec<Vertex> {
    x.iter().filter(|v| y.binary_search(v).is_err()).copied().collect()
}

fn sorted_union(x: &[Vertex], y: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = x.iter().chain(y).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl Separation {
    pub fn new(mut a: Vec<Vertex>, mut b: Vec<Vertex>, host_size: usize) -> Self {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        Separation { a, b, host_size }
    }

    /// `A ∩ B`.
    pub fn separator(&self) -> Vec<Vertex> {
        self.a.iter().filter(|v| self.b.binary_search(v).is_ok()).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    pub fn a_only(&self) -> Vec<Vertex> {
        sorted_difference(&self.a, &self.b)
    }

    pub fn b_only(&self) -> Vec<Vertex> {
        sorted_difference(&self.b, &self.a)
    }

    pub fn swapped(self) -> Self {
        Separation {
            a: self.b,
            b: self.a,
            host_size: self.host_size,
        }
    }

    /// Largest exclusive side.
    pub fn max_exclusive(&self) -> usize {
        self.a_only().len().max(self.b_only().len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub valid: bool,
    pub order: usize,
    /// `max(|A|, |B|) / n`.
    #[serde(with = "ratio::as_string")]
    pub alpha_achieved: Rational,
    /// `max(|A \ B|, |B \ A|) / n`.
    #[serde(with = "ratio::as_string")]
    pub exclusive_alpha: Rational,
    /// `(|A \ B|, |A ∩ B|, |B \ A|)`.
    pub sides: (usize, usize, usize),
    /// `alpha_achieved <= alpha`.
    pub balanced: bool,
    /// `exclusive_alpha <= alpha`, the balance notion used by the
    /// separator routines.
    pub exclusive_balanced: bool,
    pub failure: Option<String>,
}

/// Bookkeeping of one layer split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerSplitTrace {
    pub center: Vertex,
    /// Eccentricity of the center.
    pub p: usize,
    pub layer_sizes: Vec<usize>,
    /// Thick layers: indices `i` in `1..=p` with `|V_i| >= 2c`.
    pub thick: Vec<usize>,
    /// Thin layers: the rest of `1..=p`.
    pub thin: Vec<usize>,
    pub j: usize,
    #[serde(with = "ratio::as_string")]
    pub c: Rational,
    /// Set when no layer was thin and `j` fell back to the smallest layer;
    /// only possible when `c` understates the growth.
    pub fallback: bool,
}

fn check_c(c: &Rational) -> Result<()> {
    if *c < Rational::one() {
        return Err(Error::Domain(format!("c must be at least 1, got {}", ratio::show(c))));
    }
    Ok(())
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha < ratio::frac(2, 3) || *alpha >= Rational::one() {
        return Err(Error::Domain(format!(
            "alpha must lie in [2/3, 1), got {}",
            ratio::show(alpha)
        )));
    }
    Ok(())
}

/// Splits the connected set `x` at a thin BFS layer.
///
/// The center is a vertex of minimum eccentricity in `g[x]` (smallest id on
/// ties). With `thin` the layers `V_i`, `i >= 1`, of size below `2c`, `j` is
/// the least thin index such that at least half of the thin indices are
/// `<= j`. Then `A = V_0 ∪ ... ∪ V_j` and `B = V_j ∪ ... ∪ V_p`.
pub fn bfs_layer_separation(g: &Graph, x: &[Vertex], c: &Rational) -> Result<(Separation, LayerSplitTrace)> {
    check_c(c)?;
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    for &v in &x {
        g.check_vertex(v)?;
    }
    match x.len() {
        0 => return Err(Error::Precondition("empty vertex set".into())),
        1 => {
            return Err(Error::Degenerate(format!(
                "single vertex {} has no layer split",
                x[0]
            )))
        }
        _ => {}
    }
    let mask = mask_of(g.vertex_count(), &x);
    let (center, _) = min_eccentricity_center(g, &x, &mask);
    let layering = layers_within(g, center, Some(&mask));
    if layering.vertex_count() != x.len() {
        return Err(Error::Precondition("vertex set is not connected".into()));
    }
    let sizes: Vec<usize> = layering.layers.iter().map(Vec::len).collect();
    let p = layering.eccentricity();
    let two_c = ratio::int(2) * c;
    let (thin, thick): (Vec<usize>, Vec<usize>) =
        (1..=p).partition(|&i| ratio::lt_usize(sizes[i], &two_c));

    let (j, fallback) = match thin.iter().enumerate().find(|(k, _)| 2 * (k + 1) >= thin.len()) {
        Some((_, &j)) => (j, false),
        None => {
            let j = (1..=p).min_by_key(|&i| (sizes[i], i)).expect("p >= 1 for two vertices");
            (j, true)
        }
    };

    let a: Vec<Vertex> = layering.layers[..=j].iter().flatten().copied().collect();
    let b: Vec<Vertex> = layering.layers[j..].iter().flatten().copied().collect();
    let trace = LayerSplitTrace {
        center,
        p,
        layer_sizes: sizes,
        thick,
        thin,
        j,
        c: c.clone(),
        fallback,
    };
    Ok((Separation::new(a, b, x.len()), trace))
}

/// Separator for any vertex set: singletons give `({v}, {v})`, connected
/// sets go through [`bfs_layer_separation`], disconnected sets through
/// [`separate_possibly_disconnected`].
pub fn growth_separator(g: &Graph, x: &[Vertex], c: &Rational) -> Result<Separation> {
    let alpha = Rational::one() - Rational::one() / (ratio::int(4) * c);
    separate_possibly_disconnected(g, x, &alpha, &mut |comp: &[Vertex]| {
        if comp.len() == 1 {
            Ok(Separation::new(comp.to_vec(), comp.to_vec(), 1))
        } else {
            bfs_layer_separation(g, comp, c).map(|(s, _)| s)
        }
    })
}

/// Lifts a separator for connected sets to the set `x`.
///
/// While `g[x]` is disconnected, let `J` be its smallest component. If
/// `|x \ J| <= 2|x|/3` the answer is `(x \ J, J)` with order 0; otherwise
/// `x \ J` is separated recursively into `(A, B)`, oriented so that `A` is
/// the larger side, and the answer is `(A, B ∪ J)`. The order never exceeds
/// the largest order returned by `connected_separator`.
pub fn separate_possibly_disconnected<F>(
    g: &Graph,
    x: &[Vertex],
    alpha: &Rational,
    connected_separator: &mut F,
) -> Result<Separation>
where
    F: FnMut(&[Vertex]) -> Result<Separation>,
{
    check_alpha(alpha)?;
    if x.is_empty() {
        return Err(Error::Precondition("empty vertex set".into()));
    }
    let mut current: Vec<Vertex> = x.to_vec();
    current.sort_unstable();
    current.dedup();
    let mut peeled: Vec<(Vec<Vertex>, usize)> = Vec::new();
    let mut sep = loop {
        let mask = mask_of(g.vertex_count(), &current);
        let comps = components_within(g, Some(&mask));
        if comps.len() == 1 {
            let mut s = connected_separator(&current)?;
            s.host_size = current.len();
            break s;
        }
        let smallest = &comps[0];
        let rest = sorted_difference(&current, smallest);
        if 3 * rest.len() <= 2 * current.len() {
            break Separation::new(rest, smallest.clone(), current.len());
        }
        peeled.push((smallest.clone(), current.len()));
        current = rest;
    };
    for (component, size) in peeled.into_iter().rev() {
        let a_first = (sep.a.len(), std::cmp::Reverse(sep.a.first().copied()))
            >= (sep.b.len(), std::cmp::Reverse(sep.b.first().copied()));
        if !a_first {
            sep = sep.swapped();
        }
        debug_assert!(3 * sep.a.len() >= size);
        let b = sorted_union(&sep.b, &component);
        sep = Separation {
            a: sep.a,
            b,
            host_size: size,
        };
    }
    Ok(sep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rebalanced {
    pub separation: Separation,
    /// Separations produced, `i` in `(A_i, B_i)`; equals the oracle calls.
    pub iterations: usize,
    /// Update rounds performed, `iterations - 1`.
    pub update_rounds: usize,
    pub max_step_order: usize,
    /// `ceil(log_alpha(2/3))`.
    pub cap: usize,
}

/// Iterates an `alpha`-balanced separator into a `2/3`-balanced one.
///
/// Starting from `(A_1, B_1) = oracle(x)`: while an exclusive side exceeds
/// `2n/3`, orient it as `B_i \ A_i`, separate `g[B_i \ A_i]` into
/// `(C_i, D_i)` with `|D_i| >= |C_i|`, and set `A_{i+1} = A_i ∪ C_i`,
/// `B_{i+1} = D_i ∪ (A_i ∩ B_i)`. An honest oracle needs at most
/// `ceil(log_alpha(2/3))` separations; exceeding that is an error.
pub fn rebalance_to_two_thirds<F>(
    g: &Graph,
    x: &[Vertex],
    alpha: &Rational,
    alpha_separator: &mut F,
) -> Result<Rebalanced>
where
    F: FnMut(&[Vertex]) -> Result<Separation>,
{
    check_alpha(alpha)?;
    let cap = ratio::ceil_log(alpha, &ratio::frac(2, 3))?;
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let n = x.len();
    if n == 0 {
        return Err(Error::Precondition("empty vertex set".into()));
    }
    for &v in &x {
        g.check_vertex(v)?;
    }
    let mut sep = alpha_separator(&x)?;
    sep.host_size = n;
    let mut iterations = 1;
    let mut max_step_order = sep.order();
    loop {
        let (ea, eb) = (sep.a_only().len(), sep.b_only().len());
        if 3 * ea.max(eb) <= 2 * n {
            break;
        }
        if iterations >= cap {
            return Err(Error::Invariant(format!(
                "still unbalanced after {iterations} separations (cap {cap}); \
                 the oracle broke its {}-balance contract",
                ratio::show(alpha)
            )));
        }
        if 3 * ea > 2 * n {
            sep = sep.swapped();
        }
        let big = sep.b_only();
        let mut cd = alpha_separator(&big)?;
        iterations += 1;
        max_step_order = max_step_order.max(cd.order());
        let d_first = (cd.b.len(), std::cmp::Reverse(cd.b.first().copied()))
            >= (cd.a.len(), std::cmp::Reverse(cd.a.first().copied()));
        if !d_first {
            cd = cd.swapped();
        }
        let (c_side, d_side) = (cd.a, cd.b);
        let a_next = sorted_union(&sep.a, &c_side);
        let b_next = sorted_union(&d_side, &sep.separator());
        sep = Separation {
            a: a_next,
            b: b_next,
            host_size: n,
        };
    }
    Ok(Rebalanced {
        separation: sep,
        iterations,
        update_rounds: iterations - 1,
        max_step_order,
        cap,
    })
}

/// Validates `s` as a separation of `g[x]` and measures its balance.
pub fn check_separation(g: &Graph, x: &[Vertex], s: &Separation, alpha: &Rational) -> SeparationReport {
    let mut x = x.to_vec();
    x.sort_unstable();
    x.dedup();
    let n = x.len();
    let both = s.separator().len();
    let (a_only, b_only) = (s.a_only().len(), s.b_only().len());
    let mut failure = None;

    if s.a.iter().chain(&s.b).any(|v| x.binary_search(v).is_err()) {
        failure = Some("a side contains a vertex outside the host set".to_string());
    } else if sorted_union(&s.a, &s.b) != x {
        failure = Some("A ∪ B does not cover the host set".to_string());
    } else {
        let in_a = mask_of(g.vertex_count().max(1), &s.a);
        let in_b = mask_of(g.vertex_count().max(1), &s.b);
        'outer: for &u in &x {
            if u >= g.vertex_count() || !(in_a[u] && !in_b[u]) {
                continue;
            }
            for &w in g.neighbors(u) {
                if in_b[w] && !in_a[w] {
                    failure = Some(format!("edge {u}-{w} crosses from A \\ B to B \\ A"));
                    break 'outer;
                }
            }
        }
    }

    let ratio_of = |k: usize| {
        if n == 0 {
            Rational::one()
        } else {
            Rational::new(k.into(), n.into())
        }
    };
    let alpha_achieved = ratio_of(s.a.len().max(s.b.len()));
    let exclusive_alpha = ratio_of(a_only.max(b_only));
    SeparationReport {
        valid: failure.is_none(),
        order: both,
        balanced: alpha_achieved <= *alpha,
        exclusive_balanced: exclusive_alpha <= *alpha,
        alpha_achieved,
        exclusive_alpha,
        sides: (a_only, both, b_only),
        failure,
    }
}
