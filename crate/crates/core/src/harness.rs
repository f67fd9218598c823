//! Runs graph corpora through the whole pipeline and compares every
//! measured quantity with its bound, exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    check_product_embedding, contract_minor_map, expand_to_degree3, subdivide_in_host,
    subdivide_uniform_superlinear, HostEmbedding, DEFAULT_SCAN_BUDGET,
};
use crate::decomposition::{
    build_tree_decomposition, check_tree_decomposition, exact_treewidth, verify_grid_minor_model, MinorModel,
};
use crate::error::{Error, Result};
use crate::generators::{generate, path_power, random_cubic, random_tree, strong_product, Family};
use crate::graph::Graph;
use crate::growth::{growth_profile, GrowthBound, GrowthProfile, Polynomial};
use crate::ratio::{self, Rational};
use crate::separators::{bfs_layer_separation, check_separation, growth_separator, rebalance_to_two_thirds};
use crate::stack::{check_stack_layout, layout_from_decomposition};

/// Largest graph for which the suites also report exact treewidth.
const EXACT_DETAIL_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Treewidth bound `⌊49c² + 30c⌋`.
    Treewidth,
    /// Stack-number bound `⌊49c² + 30c⌋ + 1`.
    StackNumber,
    /// Grid-minor exclusion and the planar treewidth bound `12c + 1`.
    GridMinor,
    /// Subdivision growth certificates and tree-product embedding widths.
    Subdivisions,
    /// BFS-layer separations.
    LayerSeparation,
    /// Rebalancing to 2/3.
    Rebalancing,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["treewidth", "stack-number", "grid-minor", "subdivision", "layer-separator", "rebalance", "all"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "treewidth" => Suite::Treewidth,
            "stack-number" => Suite::StackNumber,
            "grid-minor" => Suite::GridMinor,
            "subdivision" => Suite::Subdivisions,
            "layer-separator" => Suite::LayerSeparation,
            "rebalance" => Suite::Rebalancing,
            "all" => Suite::All,
            _ => {
                return Err(Error::Domain(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub planar: bool,
    /// Side length when the graph is a square grid.
    pub grid_side: Option<usize>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        CorpusEntry {
            name: name.into(),
            graph,
            planar: false,
            grid_side: None,
        }
    }

    fn planar(mut self) -> Self {
        self.planar = true;
        self
    }
}

fn named(family: Family, size: usize, label: &str, planar: bool) -> Result<CorpusEntry> {
    let mut e = CorpusEntry::new(format!("{label}({size})"), generate(family, size)?);
    e.planar = planar;
    if family == Family::Grid {
        e.grid_side = Some(size);
    }
    Ok(e)
}

/// Paths, cycles, grids, random trees and cubic graphs, strong products of
/// paths, and a few small complete graphs, stars and binary trees.
pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in [50, 500, 2000] {
        out.push(named(Family::Path, n, "path", true)?);
        out.push(named(Family::Cycle, n, "cycle", true)?);
    }
    for side in [2, 3, 4, 5, 6, 10, 20] {
        out.push(named(Family::Grid, side, "grid", true)?);
    }
    for (n, seed) in [(50, 1), (500, 2), (2000, 3)] {
        out.push(CorpusEntry::new(format!("random_tree({n},seed={seed})"), random_tree(n, seed)?).planar());
    }
    for (n, seed) in [(20, 1), (100, 2), (500, 3)] {
        out.push(CorpusEntry::new(format!("random_cubic({n},seed={seed})"), random_cubic(n, seed)?));
    }
    for n in [4, 8, 12] {
        let p = generate(Family::Path, n)?;
        out.push(CorpusEntry::new(format!("path({n})^2 strong"), strong_product(&p, &p)?));
    }
    for n in [3, 5, 6] {
        out.push(CorpusEntry::new(format!("path({n})^3 strong"), path_power(n, 3)?));
    }
    for n in [4, 5, 6] {
        out.push(named(Family::Complete, n, "complete", n == 4)?);
    }
    for n in [6, 10] {
        out.push(named(Family::Star, n, "star", true)?);
    }
    for n in [7, 31] {
        out.push(named(Family::CompleteBinaryTree, n, "binary_tree", true)?);
    }
    Ok(out)
}

/// A measured quantity against its bound; `pass` iff `measured <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub check: String,
    pub graph: String,
    pub n: usize,
    pub m: usize,
    #[serde(with = "ratio::as_string")]
    pub c_g: Rational,
    pub quantity: String,
    #[serde(with = "ratio::as_string")]
    pub measured: Rational,
    #[serde(with = "ratio::as_string")]
    pub bound: Rational,
    pub pass: bool,
    pub detail: String,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        check: &str,
        graph: &str,
        g: &Graph,
        c_g: &Rational,
        quantity: &str,
        measured: Rational,
        bound: Rational,
        detail: String,
    ) -> Self {
        BoundReport {
            check: check.into(),
            graph: graph.into(),
            n: g.vertex_count(),
            m: g.edge_count(),
            c_g: c_g.clone(),
            quantity: quantity.into(),
            pass: measured <= bound,
            measured,
            bound,
            detail,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<13} {:<28} c={:<8} {} {} <= {}  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.graph,
            ratio::show(&self.c_g),
            self.quantity,
            ratio::show(&self.measured),
            ratio::show(&self.bound),
            self.detail
        )
    }
}

/// One line per report plus a count.
pub fn summarize(reports: &[BoundReport]) -> String {
    let mut out: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    let failed = reports.iter().filter(|r| !r.pass).count();
    out.push(format!("{} checks, {} passed, {} failed", reports.len(), reports.len() - failed, failed));
    out.join("\n")
}

fn int_rational(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

/// Smallest `a` with `f(r) <= a r + 1` for all `r` in the profile.
fn linear_slope(profile: &GrowthProfile) -> Rational {
    (1..=profile.r_max)
        .map(|r| Rational::new(BigInt::from(profile.f(r)) - 1, BigInt::from(r)))
        .max()
        .unwrap_or_default()
}

/// `max_r f(r) / bound(r)`; at most one iff the bound holds everywhere.
fn bound_ratio(profile: &GrowthProfile, bound: &dyn GrowthBound) -> Result<Rational> {
    let mut worst = Rational::default();
    for r in 1..=profile.r_max {
        let b = bound
            .eval(r)
            .ok_or_else(|| Error::Domain(format!("bound {} not evaluable at r = {r}", bound.describe())))?;
        let q = ratio::from_usize(profile.f(r)) / b;
        if q > worst {
            worst = q;
        }
    }
    Ok(worst)
}

fn full_profile(g: &Graph) -> Result<GrowthProfile> {
    growth_profile(g, g.vertex_count().max(1))
}

fn exact_note(g: &Graph) -> String {
    if g.vertex_count() <= EXACT_DETAIL_MAX {
        match exact_treewidth(g) {
            Ok((tw, _)) => format!("exact treewidth {tw}; "),
            Err(_) => String::new(),
        }
    } else {
        String::new()
    }
}

fn corpus_reports(entry: &CorpusEntry, suite: Suite) -> Result<Vec<BoundReport>> {
    let g = &entry.graph;
    let name = entry.name.as_str();
    let profile = full_profile(g)?;
    let c = profile.growth_constant.clone();
    let mut out = Vec::new();
    let needs_td = suite.includes(Suite::Treewidth) || suite.includes(Suite::StackNumber);
    let td = if needs_td { Some(build_tree_decomposition(g, &c)?) } else { None };

    if suite.includes(Suite::Treewidth) {
        let td = td.as_ref().expect("built above");
        let rep = check_tree_decomposition(g, td);
        if !rep.valid {
            return Err(Error::Invariant(format!(
                "treewidth {name}: invalid tree-decomposition: {}",
                rep.first_failure.map(|f| f.to_string()).unwrap_or_default()
            )));
        }
        out.push(BoundReport::new(
            "treewidth",
            name,
            g,
            &c,
            "width",
            ratio::from_usize(rep.width),
            int_rational(ratio::treewidth_bound(&c)),
            format!("{}{} bags; checked on this instance only", exact_note(g), td.node_count()),
        ));
    }
    if suite.includes(Suite::StackNumber) {
        let td = td.as_ref().expect("built above");
        let layout = layout_from_decomposition(g, td)?;
        let verdict = check_stack_layout(g, &layout)?;
        if !verdict.valid {
            return Err(Error::Invariant(format!(
                "stacks {name}: crossing edges {:?}",
                verdict.first_crossing
            )));
        }
        out.push(BoundReport::new(
            "stacks",
            name,
            g,
            &c,
            "stacks",
            ratio::from_usize(layout.k),
            int_rational(ratio::stack_bound(&c)),
            "layout from the tree-decomposition; checked on this instance only".into(),
        ));
    }
    if suite.includes(Suite::GridMinor) {
        if let Some(side) = entry.grid_side {
            let verdict = verify_grid_minor_model(g, &MinorModel::identity(side));
            if !verdict.is_valid() {
                return Err(Error::Invariant(format!("grid-minor {name}: identity grid model rejected: {verdict:?}")));
            }
            // side < ceil(2c)  <=>  side <= ceil(2c) - 1
            let bound = int_rational(ratio::ceil(&(ratio::int(2) * &c)) - 1);
            out.push(BoundReport::new(
                "grid-minor",
                name,
                g,
                &c,
                "grid minor side",
                ratio::from_usize(side),
                bound,
                "identity model is valid, so the side must stay below ceil(2c)".into(),
            ));
        }
        if entry.planar {
            let c_int = ratio::ceil(&c);
            let (measured, how) = if g.vertex_count() <= crate::decomposition::EXACT_TREEWIDTH_MAX_VERTICES {
                (exact_treewidth(g)?.0, "exact treewidth")
            } else {
                let td = match &td {
                    Some(td) => td.clone(),
                    None => build_tree_decomposition(g, &c)?,
                };
                (td.width(), "width of a valid decomposition (upper bound on treewidth)")
            };
            out.push(BoundReport::new(
                "planar-tw",
                name,
                g,
                &c,
                "treewidth",
                ratio::from_usize(measured),
                int_rational(BigInt::from(12) * &c_int + 1),
                format!("planar, integer c = {c_int}; {how}"),
            ));
        }
    }
    if suite.includes(Suite::LayerSeparation) && g.vertex_count() >= 2 {
        let x: Vec<usize> = g.vertices().collect();
        let (s, trace) = bfs_layer_separation(g, &x, &c)?;
        let rep = check_separation(g, &x, &s, &Rational::one());
        if !rep.valid {
            return Err(Error::Invariant(format!(
                "layer-sep {name}: not a separation: {}",
                rep.failure.unwrap_or_default()
            )));
        }
        let two_c = ratio::int(2) * &c;
        out.push(BoundReport::new(
            "layer-sep",
            name,
            g,
            &c,
            "order",
            ratio::from_usize(s.order()),
            // order < 2c  <=>  order <= ceil(2c) - 1
            int_rational(ratio::ceil(&two_c) - 1),
            format!("separator layer {} of {}", trace.j, trace.p),
        ));
        let alpha = Rational::one() - Rational::one() / (ratio::int(4) * &c);
        out.push(BoundReport::new(
            "layer-sep",
            name,
            g,
            &c,
            "largest exclusive side",
            ratio::from_usize(s.max_exclusive()),
            &alpha * ratio::from_usize(g.vertex_count()),
            format!("alpha = {}", ratio::show(&alpha)),
        ));
        out.push(BoundReport::new(
            "layer-sep",
            name,
            g,
            &c,
            "2 * thick layers",
            ratio::from_usize(2 * trace.thick.len()),
            ratio::from_usize(trace.p),
            format!("{} thick of {} layers beyond the center", trace.thick.len(), trace.p),
        ));
    }
    if suite.includes(Suite::Rebalancing) && g.vertex_count() >= 2 {
        let x: Vec<usize> = g.vertices().collect();
        let alpha = Rational::one() - Rational::one() / (ratio::int(4) * &c);
        let out_sep = rebalance_to_two_thirds(g, &x, &alpha, &mut |y: &[usize]| growth_separator(g, y, &c))?;
        let rep = check_separation(g, &x, &out_sep.separation, &ratio::frac(2, 3));
        if !rep.valid {
            return Err(Error::Invariant(format!(
                "rebalance {name}: not a separation: {}",
                rep.failure.unwrap_or_default()
            )));
        }
        out.push(BoundReport::new(
            "rebalance",
            name,
            g,
            &c,
            "oracle calls",
            ratio::from_usize(out_sep.iterations),
            ratio::from_usize(out_sep.cap),
            format!("alpha = {}", ratio::show(&alpha)),
        ));
        out.push(BoundReport::new(
            "rebalance",
            name,
            g,
            &c,
            "largest exclusive side",
            ratio::from_usize(out_sep.separation.max_exclusive()),
            ratio::frac(2, 3) * ratio::from_usize(g.vertex_count()),
            "2/3-balanced on exclusive sides".into(),
        ));
        out.push(BoundReport::new(
            "rebalance",
            name,
            g,
            &c,
            "order",
            ratio::from_usize(out_sep.separation.order()),
            ratio::from_usize(out_sep.iterations * out_sep.max_step_order),
            format!(
                "{} calls, largest step order {}",
                out_sep.iterations, out_sep.max_step_order
            ),
        ));
    }
    Ok(out)
}

/// Checks a supplied embedding into `T ⊠ K_k` and reports `k` against
/// `⌊882 c³⌋`; an invalid embedding is an error.
pub fn embedding_report(name: &str, g: &Graph, emb: &HostEmbedding) -> Result<BoundReport> {
    let verdict = check_product_embedding(g, emb)?;
    if let Some(why) = verdict.first_failure {
        return Err(Error::Invariant(format!("product-width {name}: {why}")));
    }
    let c = crate::growth::growth_constant(g)?;
    Ok(BoundReport::new(
        "product-width",
        name,
        g,
        &c,
        "clique size k",
        ratio::from_usize(emb.k),
        Rational::from_integer(ratio::product_width_bound(&c)),
        format!("host tree has {} nodes", emb.tree.vertex_count()),
    ))
}

/// Fixed subdivision instances with their growth certificates, then
/// tree-product embedding widths.
pub fn subdivision_reports(epsilon: &Rational) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let budget = crate::constructions::DEFAULT_SUBDIVISION_BUDGET;

    // an edge in a two-node host
    let p2 = generate(Family::Path, 2)?;
    let rec = subdivide_in_host(&p2, &HostEmbedding::tree_identity(&p2, 0), epsilon, budget)?;
    let prof = full_profile(&rec.result)?;
    let c = prof.growth_constant.clone();
    out.push(BoundReport::new(
        "host-subdiv",
        "path(2) in host path(2), k=1",
        &rec.result,
        &c,
        "slope a with f <= a r + 1",
        linear_slope(&prof),
        ratio::from_usize(rec.host.as_ref().unwrap().k * p2.max_degree()) + epsilon,
        format!("subdivision has {} vertices", rec.result.vertex_count()),
    ));

    // a tree of maximum degree 3 in itself, k = 1
    let tree = generate(Family::CompleteBinaryTree, 7)?;
    let rec = subdivide_in_host(&tree, &HostEmbedding::tree_identity(&tree, 0), epsilon, budget)?;
    let prof = full_profile(&rec.result)?;
    let c = prof.growth_constant.clone();
    let delta = tree.max_degree();
    out.push(BoundReport::new(
        "host-subdiv",
        "binary_tree(7) in itself, k=1",
        &rec.result,
        &c,
        "slope a with f <= a r + 1",
        linear_slope(&prof),
        ratio::from_usize(delta) + epsilon,
        format!("g_table {:?}", rec.host.as_ref().unwrap().g_table),
    ));
    // treewidth 1 < k = 2
    let k = 2;
    out.push(BoundReport::new(
        "tree-host",
        "binary_tree(7), treewidth < 2",
        &rec.result,
        &c,
        "slope a with f <= a r + 1",
        linear_slope(&prof),
        ratio::from_usize(18 * k * delta * delta) + epsilon,
        "host embedding is the tree itself".into(),
    ));

    // a star: expand to degree 3, subdivide, contract back
    let star = generate(Family::Star, 5)?;
    let (tw, _) = exact_treewidth(&star)?;
    let k = tw + 1;
    let (expanded, minor_map) = expand_to_degree3(&star);
    if contract_minor_map(&expanded, &minor_map)? != star {
        return Err(Error::Invariant("minor-host: expansion does not contract back to the star".into()));
    }
    // rooting at a center keeps the depth, and so the table, small
    let all: Vec<usize> = expanded.vertices().collect();
    let (root, _) = crate::graph::min_eccentricity_center(&expanded, &all, &vec![true; all.len()]);
    let rec = subdivide_in_host(&expanded, &HostEmbedding::tree_identity(&expanded, root), epsilon, budget)?;
    let prof = full_profile(&rec.result)?;
    let c = prof.growth_constant.clone();
    out.push(BoundReport::new(
        "minor-host",
        "star(5) as a minor",
        &rec.result,
        &c,
        "slope a with f <= a r + 1",
        linear_slope(&prof),
        ratio::from_usize(162 * (k + 1)) + epsilon,
        format!("witness treewidth {tw}, k = {k}; star is a minor of the subdivided expansion"),
    ));

    // uniform subdivision of K_4
    let k4 = generate(Family::Complete, 4)?;
    let f = Polynomial::parse("1,3,1")?;
    let rec = subdivide_uniform_superlinear(&k4, &f, true, DEFAULT_SCAN_BUDGET, budget)?;
    let prof = full_profile(&rec.result)?;
    out.push(BoundReport::new(
        "uniform",
        "complete(4) uniform",
        &rec.result,
        &prof.growth_constant,
        "max f(r) / (r^2 + 3r + 1)",
        bound_ratio(&prof, &f)?,
        Rational::one(),
        format!("ell = {}, {} vertices", rec.uniform.as_ref().unwrap().ell, rec.result.vertex_count()),
    ));

    // any graph is a minor of a graph with growth below f: K_5 via degree 3
    let k5 = generate(Family::Complete, 5)?;
    let (expanded, minor_map) = expand_to_degree3(&k5);
    if contract_minor_map(&expanded, &minor_map)? != k5 {
        return Err(Error::Invariant("minor-uniform: expansion does not contract back to K_5".into()));
    }
    let rec = subdivide_uniform_superlinear(&expanded, &f, true, DEFAULT_SCAN_BUDGET, budget)?;
    let prof = full_profile(&rec.result)?;
    out.push(BoundReport::new(
        "minor-uniform",
        "complete(5) as a minor, uniform",
        &rec.result,
        &prof.growth_constant,
        "max f(r) / (r^2 + 3r + 1)",
        bound_ratio(&prof, &f)?,
        Rational::one(),
        format!("ell = {}, {} vertices", rec.uniform.as_ref().unwrap().ell, rec.result.vertex_count()),
    ));

    // clique width of supplied tree-product embeddings
    let ladder = strong_product(&generate(Family::Path, 6)?, &generate(Family::Complete, 2)?)?;
    let ladder_path = generate(Family::Path, 6)?;
    let ladder_emb = HostEmbedding {
        tree: ladder_path,
        root: 0,
        k: 2,
        map: ladder.vertices().map(|v| (v / 2, v % 2 + 1)).collect(),
    };
    out.push(embedding_report("path(6) x K2 in path(6) x K2", &ladder, &ladder_emb)?);
    let tree = generate(Family::CompleteBinaryTree, 15)?;
    out.push(embedding_report("binary_tree(15) in itself", &tree, &HostEmbedding::tree_identity(&tree, 0))?);
    Ok(out)
}

/// Runs the selected suite. Corpus entries are processed in parallel and
/// reported in corpus order. A checker rejecting a built object is an
/// error; a bound exceeded is a failing report.
pub fn run_suite(corpus: &[CorpusEntry], suite: Suite) -> Result<Vec<BoundReport>> {
    let per_entry: Vec<Result<Vec<BoundReport>>> =
        corpus.par_iter().map(|entry| corpus_reports(entry, suite)).collect();
    let mut out = Vec::new();
    for r in per_entry {
        out.extend(r?);
    }
    if suite.includes(Suite::Subdivisions) {
        out.extend(subdivision_reports(&Rational::one())?);
    }
    Ok(out)
}

/// One random cubic graph of the lower-bound exploration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorationRow {
    pub n: usize,
    pub seed: u64,
    #[serde(with = "ratio::as_string")]
    pub c_g: Rational,
    pub treewidth: usize,
    /// `f(r) <= min(n, 3 * 2^r - 2)` for every `r`.
    pub ball_bound_holds: bool,
    /// The conjectured bound `c_G <= 4`.
    pub c_at_most_4: bool,
}

/// Growth constant and exact treewidth of random cubic graphs.
///
/// The one asserted fact is the ball bound of a 3-regular graph,
/// `f(r) <= min(n, 3 * 2^r - 2)`; a violation is an error. Whether
/// `c_G <= 4` is recorded per row, not asserted: the ball bound allows
/// `f(2) / 2 = 5`.
pub fn lower_bound_exploration(sizes: &[usize], seeds: &[u64]) -> Result<Vec<ExplorationRow>> {
    for &n in sizes {
        if n > crate::decomposition::EXACT_TREEWIDTH_MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "exploration size {n} exceeds the exact treewidth budget of {}",
                crate::decomposition::EXACT_TREEWIDTH_MAX_VERTICES
            )));
        }
        if n < 4 || n % 2 == 1 {
            return Err(Error::Domain(format!("cubic graphs need an even size of at least 4, got {n}")));
        }
    }
    let jobs: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
    jobs.par_iter()
        .map(|&(n, seed)| {
            let g = random_cubic(n, seed)?;
            let prof = full_profile(&g)?;
            let ball_bound_holds = (1..=prof.r_max).all(|r| {
                let tree_bound = if r >= usize::BITS as usize - 2 { usize::MAX } else { 3 * (1usize << r) - 2 };
                prof.f(r) <= n.min(tree_bound)
            });
            if !ball_bound_holds {
                return Err(Error::Invariant(format!(
                    "cubic graph n={n} seed={seed} has a ball above min(n, 3*2^r - 2)"
                )));
            }
            let (treewidth, _) = exact_treewidth(&g)?;
            Ok(ExplorationRow {
                n,
                seed,
                c_at_most_4: prof.growth_constant <= ratio::int(4),
                c_g: prof.growth_constant,
                treewidth,
                ball_bound_holds,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("t9".parse::<Suite>().is_err());
    }

    #[test]
    fn small_corpus_treewidth_suite() {
        let corpus = vec![
            named(Family::Path, 50, "path", true).unwrap(),
            named(Family::Cycle, 50, "cycle", true).unwrap(),
            named(Family::Grid, 4, "grid", true).unwrap(),
        ];
        let reports = run_suite(&corpus, Suite::Treewidth).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.pass), "{}", summarize(&reports));
        // P_50 has growth constant 3 (f(1) = 3)
        assert_eq!(reports[0].c_g, int(3));
        assert_eq!(reports[0].bound, int(531));
    }

    #[test]
    fn grid_self_consistency() {
        let corpus: Vec<CorpusEntry> = (2..=6).map(|n| named(Family::Grid, n, "grid", true).unwrap()).collect();
        let reports = run_suite(&corpus, Suite::GridMinor).unwrap();
        let t31: Vec<&BoundReport> = reports.iter().filter(|r| r.check == "grid-minor").collect();
        assert_eq!(t31.len(), 5);
        assert!(reports.iter().all(|r| r.pass), "{}", summarize(&reports));
    }

    #[test]
    fn subdivision_suite_passes() {
        let reports = subdivision_reports(&int(1)).unwrap();
        assert_eq!(reports.len(), 8);
        assert_eq!(reports[6].measured, int(2));
        assert_eq!(reports[6].bound, Rational::from_integer(ratio::product_width_bound(&int(6))));
        assert!(reports.iter().all(|r| r.pass), "{}", summarize(&reports));
        // the worked edge example: P_5 with f(r) = min(2r + 1, 5), slope 2
        assert_eq!(reports[0].measured, int(2));
        assert_eq!(reports[0].bound, int(2));
    }

    #[test]
    fn reports_are_deterministic() {
        let corpus = vec![CorpusEntry::new("cubic", random_cubic(20, 7).unwrap())];
        let a = run_suite(&corpus, Suite::All).unwrap();
        let b = run_suite(&corpus, Suite::All).unwrap();
        assert_eq!(a, b);
        let line = a[0].to_json_line();
        assert!(line.contains("\"check\":\"treewidth\""));
    }

    #[test]
    fn exploration_examples() {
        let rows = lower_bound_exploration(&[4], &[0]).unwrap();
        assert_eq!((rows[0].n, rows[0].c_g.clone(), rows[0].treewidth), (4, int(4), 3));
        assert!(lower_bound_exploration(&[], &[1, 2]).unwrap().is_empty());
        assert!(matches!(lower_bound_exploration(&[20], &[0]), Err(Error::Capacity(_))));
        let rows = lower_bound_exploration(&[10], &[5]).unwrap();
        assert!(rows[0].ball_bound_holds);
    }
}
