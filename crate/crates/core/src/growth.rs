//! The growth function `f_G(r)`, the growth constant, and an exhaustive
//! subgraph oracle for small graphs.
//!
//! `f_G(r)` is defined as the largest vertex count of a subgraph of radius
//! at most `r`. It is computed here as `max_v |B_r(v)|`:
//!
//! * the subgraph induced by `B_r(v)` has radius at most `r`, since every
//!   shortest path from `v` to a ball vertex stays inside the ball;
//! * a subgraph `H` of radius at most `r` centred at `w` lies inside
//!   `B_r(w)`, because distances in `H` dominate distances in `G`.
//!
//! [`brute_force_growth`] enumerates subgraphs directly and exists to pin
//! this equivalence down on small instances.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, UNREACHED};
use crate::ratio::{self, Rational};

/// Edge budget of the exhaustive oracle.
pub const BRUTE_FORCE_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthProfile {
    /// `values[r - 1] = f(r)` for `r` in `1..=r_max`.
    pub values: Vec<usize>,
    pub r_max: usize,
    pub growth_constant: Rational,
    /// Smallest `r` with `f(r) / r` equal to the growth constant.
    pub argmax_radius: usize,
}

impl GrowthProfile {
    /// `f(r)` for `1 <= r <= r_max`.
    pub fn f(&self, r: usize) -> usize {
        self.values[r - 1]
    }
}

/// Ball sizes `|B_r(v)|` for `r = 0..`, saturating at the component size.
fn cumulative_ball_sizes(g: &Graph, v: usize) -> Vec<usize> {
    let dist = bfs_distances(g, v, None);
    let ecc = dist.iter().filter(|&&d| d != UNREACHED).max().copied().unwrap_or(0);
    let mut counts = vec![0usize; ecc + 1];
    for d in dist.into_iter().filter(|&d| d != UNREACHED) {
        counts[d] += 1;
    }
    for i in 1..counts.len() {
        counts[i] += counts[i - 1];
    }
    counts
}

pub fn growth_profile(g: &Graph, r_max: usize) -> Result<GrowthProfile> {
    if g.is_empty() {
        return Err(Error::Domain("growth of the empty graph".into()));
    }
    if r_max == 0 {
        return Err(Error::Domain("r_max must be positive".into()));
    }
    let values = g
        .vertices()
        .into_par_iter()
        .fold(
            || vec![0usize; r_max],
            |mut acc, v| {
                let sizes = cumulative_ball_sizes(g, v);
                let last = *sizes.last().expect("ball sizes include r = 0");
                for (i, slot) in acc.iter_mut().enumerate() {
                    let b = sizes.get(i + 1).copied().unwrap_or(last);
                    if b > *slot {
                        *slot = b;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0usize; r_max],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        );
    let scan = r_max.min(g.vertex_count());
    let mut best = Rational::zero();
    let mut argmax = 1;
    for r in 1..=scan {
        let q = Rational::new(BigInt::from(values[r - 1]), BigInt::from(r));
        if q > best {
            best = q;
            argmax = r;
        }
    }
    Ok(GrowthProfile {
        values,
        r_max,
        growth_constant: best,
        argmax_radius: argmax,
    })
}

/// `c_G = max_r f(r) / r`, scanning every `r` in `1..=n`.
pub fn growth_constant(g: &Graph) -> Result<Rational> {
    Ok(growth_profile(g, g.vertex_count().max(1))?.growth_constant)
}

/// `f(r)` for every `r` in `0..=n` by exhaustive subgraph enumeration.
///
/// Every edge subset is visited (Gray-code order). The candidate vertex
/// set is the subset's endpoints; adding isolated vertices to a nonempty
/// subset disconnects it, so with isolated vertices only single-vertex
/// subgraphs remain, each of radius 0. The radius is measured inside the
/// subgraph itself.
pub fn brute_force_profile(g: &Graph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::Capacity(format!(
            "brute-force growth needs at most {BRUTE_FORCE_MAX_EDGES} edges, got {}",
            edges.len()
        )));
    }
    if n > 64 {
        return Err(Error::Capacity(format!("brute-force growth on {n} vertices")));
    }
    // best[rad] = largest connected subgraph of radius exactly rad
    let mut best = vec![0usize; n + 1];
    if n > 0 {
        best[0] = 1;
    }
    let mut adj = vec![0u64; n];
    let total: u64 = 1 << edges.len();
    for i in 1..total {
        // gray code: toggle the lowest set bit position of i
        let e = i.trailing_zeros() as usize;
        let (u, v) = edges[e];
        adj[u] ^= 1 << v;
        adj[v] ^= 1 << u;
        let mut verts = 0u64;
        for (x, &a) in adj.iter().enumerate() {
            if a != 0 {
                verts |= 1 << x;
            }
        }
        if verts == 0 {
            continue;
        }
        if let Some(rad) = mask_radius(&adj, verts) {
            let size = verts.count_ones() as usize;
            if size > best[rad] {
                best[rad] = size;
            }
        }
    }
    let mut profile = vec![0usize; n + 1];
    let mut running = 0;
    for r in 0..=n {
        running = running.max(best[r]);
        profile[r] = running;
    }
    Ok(profile)
}

/// Radius of the subgraph with vertex set `verts` and adjacency `adj`
/// (bitmasks), or `None` when it is disconnected.
fn mask_radius(adj: &[u64], verts: u64) -> Option<usize> {
    let mut radius = usize::MAX;
    let mut rest = verts;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut reached = 1u64 << s;
        let mut frontier = reached;
        let mut ecc = 0;
        // stop once this source cannot beat the current radius
        while frontier != 0 && ecc < radius {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[x];
            }
            next &= !reached;
            if next == 0 {
                break;
            }
            reached |= next;
            frontier = next;
            ecc += 1;
        }
        if radius == usize::MAX && reached != verts {
            return None;
        }
        radius = radius.min(ecc);
    }
    Some(radius)
}

/// Exhaustive `f(r)`; see [`brute_force_profile`].
pub fn brute_force_growth(g: &Graph, r: usize) -> Result<usize> {
    let profile = brute_force_profile(g)?;
    Ok(profile[r.min(profile.len() - 1)])
}

/// A bound `r -> b(r)` evaluated exactly; `None` means not evaluable at `r`.
pub trait GrowthBound {
    fn eval(&self, r: usize) -> Option<Rational>;

    fn describe(&self) -> String {
        "custom bound".into()
    }
}

/// `c_0 + c_1 r + c_2 r^2 + ...` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coefficients: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        Polynomial { coefficients }
    }

    /// `slope * r + intercept`.
    pub fn linear(slope: Rational, intercept: Rational) -> Self {
        Polynomial::new(vec![intercept, slope])
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Parses comma-separated coefficients, constant term first, e.g.
    /// `"1,3,1"` for `r^2 + 3r + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let coefficients = text
            .split(',')
            .map(ratio::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coefficients))
    }
}

impl GrowthBound for Polynomial {
    fn eval(&self, r: usize) -> Option<Rational> {
        let x = ratio::from_usize(r);
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        Some(acc)
    }

    fn describe(&self) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => ratio::show(c),
                1 => format!("{}*r", ratio::show(c)),
                _ => format!("{}*r^{i}", ratio::show(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Adapts a closure as a bound.
pub struct FnBound<F>(pub F);

impl<F> GrowthBound for FnBound<F>
where
    F: Fn(usize) -> Option<Rational>,
{
    fn eval(&self, r: usize) -> Option<Rational> {
        (self.0)(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundVerdict {
    Holds,
    FirstViolation { r: usize, f: usize, bound: Rational },
}

impl BoundVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, BoundVerdict::Holds)
    }
}

/// Checks `f_g(r) <= bound(r)` for every `r` in `1..=n`. Beyond `n` the
/// growth function is constant, so nondecreasing bounds need no more.
pub fn verify_growth_bound(g: &Graph, bound: &dyn GrowthBound) -> Result<BoundVerdict> {
    let n = g.vertex_count();
    let profile = growth_profile(g, n.max(1))?;
    verify_profile_against(&profile, bound)
}

/// As [`verify_growth_bound`] on a precomputed profile.
pub fn verify_profile_against(profile: &GrowthProfile, bound: &dyn GrowthBound) -> Result<BoundVerdict> {
    for r in 1..=profile.r_max {
        let b = bound.eval(r).ok_or_else(|| {
            Error::Domain(format!("bound {} not evaluable at r = {r}", bound.describe()))
        })?;
        let f = profile.f(r);
        if ratio::from_usize(f) > b {
            return Ok(BoundVerdict::FirstViolation { r, f, bound: b });
        }
    }
    Ok(BoundVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, path_power, random_gnm, Family};
    use crate::ratio::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn path_profile() {
        let p9 = generate(Family::Path, 9).unwrap();
        let prof = growth_profile(&p9, 12).unwrap();
        for r in 1..=12 {
            assert_eq!(prof.f(r), (2 * r + 1).min(9));
        }
        assert_eq!(prof.growth_constant, int(3));
        assert_eq!(prof.argmax_radius, 1);
    }

    #[test]
    fn cube_of_paths() {
        let g = path_power(5, 3).unwrap();
        let prof = growth_profile(&g, 2).unwrap();
        assert_eq!(prof.f(1), 27);
        assert_eq!(prof.f(2), 125);
    }

    #[test]
    fn complete_graph() {
        let k5 = generate(Family::Complete, 5).unwrap();
        let prof = growth_profile(&k5, 5).unwrap();
        assert_eq!(prof.f(1), 5);
        assert_eq!(prof.growth_constant, int(5));
    }

    #[test]
    fn growth_constant_at_least_degree_plus_one() {
        for fam in [Family::Star, Family::Complete, Family::Path] {
            let g = generate(fam, 7).unwrap();
            let c = growth_constant(&g).unwrap();
            assert!(c >= ratio::from_usize(g.max_degree() + 1));
        }
        // equality for stars and cliques
        assert_eq!(growth_constant(&generate(Family::Star, 7).unwrap()).unwrap(), int(7));
        // grid(2) = C_4: f(1) = 3, f(2) = 4
        assert_eq!(growth_constant(&generate(Family::Grid, 2).unwrap()).unwrap(), int(3));
    }

    #[test]
    fn empty_graph_is_a_domain_error() {
        assert!(growth_profile(&Graph::empty(0), 3).is_err());
        assert!(growth_profile(&Graph::empty(2), 0).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_growth(&generate(Family::Path, 3).unwrap(), 1).unwrap(), 3);
        assert_eq!(brute_force_growth(&generate(Family::Cycle, 5).unwrap(), 1).unwrap(), 3);
        assert_eq!(brute_force_growth(&generate(Family::Complete, 4).unwrap(), 1).unwrap(), 4);
        assert_eq!(brute_force_growth(&Graph::empty(3), 2).unwrap(), 1);
        assert!(brute_force_growth(&generate(Family::Complete, 7).unwrap(), 1).is_err());
    }

    #[test]
    fn bound_verdicts() {
        let p9 = generate(Family::Path, 9).unwrap();
        let three_r = Polynomial::linear(int(3), int(0));
        assert!(verify_growth_bound(&p9, &three_r).unwrap().holds());

        let k4 = generate(Family::Complete, 4).unwrap();
        let two_r = Polynomial::linear(int(2), int(0));
        assert_eq!(
            verify_growth_bound(&k4, &two_r).unwrap(),
            BoundVerdict::FirstViolation { r: 1, f: 4, bound: int(2) }
        );

        let g = generate(Family::Grid, 4).unwrap();
        let n = Polynomial::constant(int(16));
        assert!(verify_growth_bound(&g, &n).unwrap().holds());

        let partial = FnBound(|r: usize| (r < 3).then(|| int(100)));
        assert!(matches!(verify_growth_bound(&g, &partial), Err(Error::Domain(_))));
    }

    #[test]
    fn polynomial_parse_and_eval() {
        let p = Polynomial::parse("1,3,1").unwrap();
        assert_eq!(p.eval(10), Some(int(131)));
        let q = Polynomial::parse("1,5/2").unwrap();
        assert_eq!(q.eval(2), Some(int(6)));
        assert_eq!(Polynomial::linear(frac(1, 2), int(0)).eval(3), Some(frac(3, 2)));
        assert_eq!(p.describe(), "1 + 3*r + 1*r^2");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn balls_match_subgraph_enumeration(n in 1usize..8, m_seed in 0usize..1000, seed in 0u64..1000) {
            let max = (n * (n - 1) / 2).min(14);
            let m = m_seed % (max + 1);
            let g = random_gnm(n, m, seed).unwrap();
            let prof = growth_profile(&g, n).unwrap();
            let brute = brute_force_profile(&g).unwrap();
            prop_assert_eq!(&prof.values[..], &brute[1..=n]);
            for r in 1..n {
                prop_assert!(prof.f(r + 1) >= prof.f(r));
            }
        }
    }
}
