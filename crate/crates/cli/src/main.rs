//! Command-line front end: every pipeline stage as a subcommand, composed
//! through edge-list and JSON files.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lingrowth::constructions::{
    expand_to_degree3, subdivide_in_host, subdivide_uniform_superlinear, HostEmbedding, DEFAULT_SCAN_BUDGET,
    DEFAULT_SUBDIVISION_BUDGET,
};
use lingrowth::decomposition::{
    build_tree_decomposition, check_tree_decomposition, exact_treewidth_with_budget, TreeDecomposition,
    EXACT_TREEWIDTH_MAX_VERTICES,
};
use lingrowth::generators::{
    blow_up, generate, path_power, random_cubic, random_gnm, random_tree, strong_product, Family,
};
use lingrowth::graph::{parse_edge_list, serialize_edge_list};
use lingrowth::growth::{growth_profile, verify_profile_against, BoundVerdict, Polynomial};
use lingrowth::harness::{default_corpus, lower_bound_exploration, run_suite, summarize, Suite};
use lingrowth::ratio::{self, Rational};
use lingrowth::separators::{bfs_layer_separation, check_separation, growth_separator, rebalance_to_two_thirds};
use lingrowth::stack::{check_stack_layout, exact_stack_number, layout_from_decomposition};
use lingrowth::{Error, Graph};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lingrowth", version, about = "Growth, separators, tree-decompositions and stack layouts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GrowthArg {
    /// Growth constant as `p/q` or an integer; computed from the graph when
    /// omitted.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Host,
    Uniform,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named or random graph as an edge list.
    ///
    /// Families: path, cycle, star, complete, binary-tree, grid (size is
    /// the side), random-tree, random-cubic, random-gnm (needs --edges).
    Generate {
        family: String,
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        edges: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Strong product of two edge-list graphs, a blow-up by K_t, or the
    /// strong product of `--dims` paths on `--path` vertices.
    Product {
        first: Option<PathBuf>,
        second: Option<PathBuf>,
        /// Blow up `first` by a clique of this size.
        #[arg(long)]
        blow_up: Option<usize>,
        #[arg(long)]
        path: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Growth function f(r) = max ball size, as `r,f` rows and the growth
    /// constant max f(r)/r.
    Growth {
        #[command(flatten)]
        input: Input,
        /// Largest radius; defaults to the vertex count.
        #[arg(long)]
        r_max: Option<usize>,
        /// Check f(r) <= bound(r) for a polynomial given by its
        /// coefficients, constant first (e.g. `1,3,1`).
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Balanced separation from a thin BFS layer; `--rebalance` iterates it
    /// to a 2/3-balanced separation.
    Separate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        growth: GrowthArg,
        #[arg(long)]
        rebalance: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Tree-decomposition from recursive BFS-layer separators, as JSON.
    Treedecomp {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        growth: GrowthArg,
        #[command(flatten)]
        out: Output,
    },
    /// Check a tree-decomposition JSON file against a graph.
    Checktd {
        #[command(flatten)]
        input: Input,
        decomposition: PathBuf,
    },
    /// Exact treewidth with a witness decomposition (small graphs).
    TwExact {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = EXACT_TREEWIDTH_MAX_VERTICES)]
        budget: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Stack layout from a tree-decomposition (built when not given).
    Stack {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[command(flatten)]
        growth: GrowthArg,
        #[command(flatten)]
        out: Output,
    },
    /// Exact stack number with a witness layout (at most 8 vertices).
    StackExact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Subdivide with a growth certificate: `host` follows a tree
    /// embedding, `uniform` subdivides every edge equally for a
    /// superlinear bound.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Host embedding JSON (host mode).
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Positive rational slack (host mode).
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Bound coefficients, constant first (uniform mode).
        #[arg(long)]
        f: Option<String>,
        /// Largest vertex count of the result.
        #[arg(long, default_value_t = DEFAULT_SUBDIVISION_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
        scan_budget: usize,
        /// Skip the exhaustive growth check of the result.
        #[arg(long)]
        no_verify: bool,
        /// Also write the subdivided graph as an edge list.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Split vertices of degree 4 or more into paths so every degree is at
    /// most 3; the original is a minor of the result.
    Expand3 {
        #[command(flatten)]
        input: Input,
        /// Write the new-to-original vertex map as JSON.
        #[arg(long)]
        map_out: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the bound checks on the built-in corpus.
    Verify {
        /// One of treewidth, stack-number, grid-minor (with planar
        /// treewidth), subdivision, layer-separator, rebalance or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Growth constant and exact treewidth of random cubic graphs.
    ExploreLowerBound {
        #[arg(long, value_delimiter = ',', default_values_t = vec![10, 12, 14, 16, 18])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        seeds: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read_text(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(out: &Output, text: &str) -> Outcome {
    write_to(out.output.as_deref(), text)
}

fn write_to(path: Option<&Path>, text: &str) -> Outcome {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Usage(format!("writing {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Usage(format!("writing standard output: {e}"))),
    }
}

fn growth_of(g: &Graph, arg: &GrowthArg) -> Result<Rational, Failure> {
    match &arg.c {
        Some(text) => Ok(ratio::parse(text)?),
        None => {
            let c = lingrowth::growth::growth_constant(g)?;
            eprintln!("c = {} (growth constant of the input)", ratio::show(&c));
            Ok(c)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate { family, size, seed, edges, out } => {
            let g = match family.as_str() {
                "random-tree" | "random_tree" => random_tree(size, seed)?,
                "random-cubic" | "random_cubic" => random_cubic(size, seed)?,
                "random-gnm" | "random_gnm" => {
                    let m = edges.ok_or_else(|| Failure::Usage("random-gnm needs --edges".into()))?;
                    random_gnm(size, m, seed)?
                }
                other => {
                    let fam: Family = other.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                    generate(fam, size)?
                }
            };
            write_out(&out, &serialize_edge_list(&g))
        }
        Command::Product { first, second, blow_up: t, path, dims, out } => {
            let g = match (first, second, t, path) {
                (Some(a), Some(b), None, None) => strong_product(&read_graph(&a)?, &read_graph(&b)?)?,
                (Some(a), None, Some(t), None) => blow_up(&read_graph(&a)?, t)?,
                (None, None, None, Some(n)) => path_power(n, dims)?,
                _ => {
                    return Err(Failure::Usage(
                        "give two graphs, one graph with --blow-up, or --path with --dims".into(),
                    ))
                }
            };
            write_out(&out, &serialize_edge_list(&g))
        }
        Command::Growth { input, r_max, bound, format, out } => {
            let g = read_graph(&input.input)?;
            let r_max = r_max.unwrap_or(g.vertex_count().max(1));
            let profile = growth_profile(&g, r_max)?;
            let verdict = match &bound {
                Some(text) => Some(verify_profile_against(&profile, &Polynomial::parse(text)?)?),
                None => None,
            };
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "f": profile.values,
                    "r_max": profile.r_max,
                    "c": ratio::show(&profile.growth_constant),
                    "argmax_radius": profile.argmax_radius,
                    "bound_holds": verdict.as_ref().map(BoundVerdict::holds),
                }))
                .expect("json value serializes"),
                Format::Csv | Format::Text => {
                    let mut lines = vec!["r,f".to_string()];
                    lines.extend((1..=profile.r_max).map(|r| format!("{r},{}", profile.f(r))));
                    lines.push(format!(
                        "# c = {} at r = {}",
                        ratio::show(&profile.growth_constant),
                        profile.argmax_radius
                    ));
                    if let Some(v) = &verdict {
                        lines.push(match v {
                            BoundVerdict::Holds => "# bound holds".to_string(),
                            BoundVerdict::FirstViolation { r, f, bound } => {
                                format!("# bound violated at r = {r}: f = {f} > {}", ratio::show(bound))
                            }
                        });
                    }
                    lines.join("\n")
                }
            };
            write_out(&out, &text)?;
            match verdict {
                Some(BoundVerdict::FirstViolation { r, .. }) => Err(Failure::Check(format!("bound violated at r = {r}"))),
                _ => Ok(()),
            }
        }
        Command::Separate { input, growth, rebalance, out } => {
            let g = read_graph(&input.input)?;
            let c = growth_of(&g, &growth)?;
            let x: Vec<usize> = g.vertices().collect();
            let alpha = Rational::from_integer(1.into()) - Rational::from_integer(1.into()) / (ratio::int(4) * &c);
            let mut doc = serde_json::Map::new();
            doc.insert("c".into(), json!(ratio::show(&c)));
            let sep = if rebalance {
                let r = rebalance_to_two_thirds(&g, &x, &alpha, &mut |y: &[usize]| growth_separator(&g, y, &c))?;
                doc.insert("iterations".into(), json!(r.iterations));
                doc.insert("cap".into(), json!(r.cap));
                doc.insert("max_step_order".into(), json!(r.max_step_order));
                r.separation
            } else if lingrowth::graph::components(&g).len() == 1 && x.len() >= 2 {
                let (s, trace) = bfs_layer_separation(&g, &x, &c)?;
                doc.insert("trace".into(), serde_json::to_value(&trace).expect("trace serializes"));
                s
            } else {
                growth_separator(&g, &x, &c)?
            };
            let target = if rebalance { ratio::frac(2, 3) } else { alpha };
            let report = check_separation(&g, &x, &sep, &target);
            doc.insert("a".into(), json!(sep.a));
            doc.insert("b".into(), json!(sep.b));
            doc.insert("report".into(), serde_json::to_value(&report).expect("report serializes"));
            write_out(&out, &serde_json::to_string_pretty(&doc).expect("json value serializes"))?;
            if report.valid && report.exclusive_balanced {
                Ok(())
            } else {
                Err(Failure::Check("separation is invalid or unbalanced".into()))
            }
        }
        Command::Treedecomp { input, growth, out } => {
            let g = read_graph(&input.input)?;
            let c = growth_of(&g, &growth)?;
            let td = build_tree_decomposition(&g, &c)?;
            eprintln!("width {} (bound {})", td.width(), ratio::treewidth_bound(&c));
            write_out(&out, &td.to_json())
        }
        Command::Checktd { input, decomposition } => {
            let g = read_graph(&input.input)?;
            let td = TreeDecomposition::from_json(&read_text(&decomposition)?)?;
            let report = check_tree_decomposition(&g, &td);
            write_to(None, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
            if report.valid {
                Ok(())
            } else {
                Err(Failure::Check("invalid tree-decomposition".into()))
            }
        }
        Command::TwExact { input, budget, out } => {
            let g = read_graph(&input.input)?;
            let (width, td) = exact_treewidth_with_budget(&g, budget)?;
            eprintln!("treewidth {width}");
            write_out(&out, &td.to_json())
        }
        Command::Stack { input, decomposition, growth, out } => {
            let g = read_graph(&input.input)?;
            let td = match decomposition {
                Some(p) => TreeDecomposition::from_json(&read_text(&p)?)?,
                None => build_tree_decomposition(&g, &growth_of(&g, &growth)?)?,
            };
            let layout = layout_from_decomposition(&g, &td)?;
            let verdict = check_stack_layout(&g, &layout)?;
            eprintln!("{} stacks", layout.k);
            write_out(&out, &layout.to_json())?;
            if verdict.valid {
                Ok(())
            } else {
                Err(Failure::Check(format!("crossing in layout: {:?}", verdict.first_crossing)))
            }
        }
        Command::StackExact { input, out } => {
            let g = read_graph(&input.input)?;
            let (k, layout) = exact_stack_number(&g)?;
            eprintln!("stack number {k}");
            write_out(&out, &layout.to_json())
        }
        Command::Subdivide { input, mode, embedding, epsilon, f, budget, scan_budget, no_verify, graph_out, out } => {
            let g = read_graph(&input.input)?;
            let (record, bound) = match mode {
                Mode::Host => {
                    let path = embedding.ok_or_else(|| Failure::Usage("host mode needs --embedding".into()))?;
                    let emb = HostEmbedding::from_json(&read_text(&path)?)?;
                    let eps = ratio::parse(&epsilon)?;
                    let rec = subdivide_in_host(&g, &emb, &eps, budget)?;
                    let bound = rec.host_bound().expect("host record has a bound");
                    (rec, bound)
                }
                Mode::Uniform => {
                    let text = f.ok_or_else(|| Failure::Usage("uniform mode needs --f".into()))?;
                    let poly = Polynomial::parse(&text)?;
                    let rec = subdivide_uniform_superlinear(&g, &poly, true, scan_budget, budget)?;
                    (rec, poly)
                }
            };
            write_out(&out, &record.to_json())?;
            if let Some(p) = graph_out {
                write_to(Some(&p), &serialize_edge_list(&record.result))?;
            }
            if no_verify {
                return Ok(());
            }
            let n = record.result.vertex_count();
            match verify_profile_against(&growth_profile(&record.result, n.max(1))?, &bound)? {
                BoundVerdict::Holds => {
                    eprintln!("growth certificate holds for r in 1..={n}");
                    Ok(())
                }
                BoundVerdict::FirstViolation { r, f, bound } => Err(Failure::Check(format!(
                    "growth certificate fails at r = {r}: f = {f} > {}",
                    ratio::show(&bound)
                ))),
            }
        }
        Command::Expand3 { input, map_out, out } => {
            let g = read_graph(&input.input)?;
            let (h, map) = expand_to_degree3(&g);
            write_out(&out, &serialize_edge_list(&h))?;
            if let Some(p) = map_out {
                write_to(Some(&p), &serde_json::to_string(&map).expect("map serializes"))?;
            }
            Ok(())
        }
        Command::Verify { suite, format, out } => {
            let suite: Suite = suite.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let corpus = default_corpus()?;
            let reports = run_suite(&corpus, suite)?;
            let text = match format {
                Format::Json => reports.iter().map(|r| r.to_json_line()).collect::<Vec<_>>().join("\n"),
                Format::Text | Format::Csv => summarize(&reports),
            };
            write_out(&out, &text)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} checks failed")))
            }
        }
        Command::ExploreLowerBound { sizes, seeds, format, out } => {
            let rows = lower_bound_exploration(&sizes, &seeds)?;
            let text = match format {
                Format::Json => rows
                    .iter()
                    .map(|r| serde_json::to_string(r).expect("row serializes"))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Text | Format::Csv => {
                    let mut lines = vec!["n,seed,c_g,treewidth,ball_bound_holds,c_at_most_4".to_string()];
                    lines.extend(rows.iter().map(|r| {
                        format!(
                            "{},{},{},{},{},{}",
                            r.n,
                            r.seed,
                            ratio::show(&r.c_g),
                            r.treewidth,
                            r.ball_bound_holds,
                            r.c_at_most_4
                        )
                    }));
                    lines.join("\n")
                }
            };
            write_out(&out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Capacity(_) => EXIT_BUDGET,
                Error::Invariant(_) => EXIT_CHECK_FAILED,
                _ => EXIT_USAGE,
            })
        }
    }
}
