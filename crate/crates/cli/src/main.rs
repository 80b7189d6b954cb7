use std::io::{BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use trc_core::constructions::{self as cons, FamilySpec};
use trc_core::harness::CSV_HEADER;
use trc_core::{
    bounds, classify, emit_graph6, fixtures, ng_scan, parse_graph6, summary_line, trc_with_report,
    verify_trc_with_paths, Budget, Graph, ScanOptions, SolverConfig, TotalColoring, TrcCache,
};

const EXIT_USAGE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Total-rainbow connection numbers: exact search, explicit colorings,
/// classification and Nordhaus-Gaddum scans.
///
/// GRAPH arguments accept a family spec (`cycle:9`, `bell:7,2`, `h4`), a
/// graph6 string, a file holding graph6 or an edge list (`n m` then `u v`
/// lines), or `-` for standard input.
#[derive(Parser)]
#[command(name = "trc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Search node cap per graph.
    #[arg(long, default_value_t = 500_000_000)]
    max_nodes: u64,
    /// Wall-clock cap per graph in seconds (0 disables).
    #[arg(long, default_value_t = 120)]
    max_secs: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_time: (self.max_secs > 0).then(|| Duration::from_secs(self.max_secs)),
            ..Budget::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact trc by bounded search.
    Solve {
        graph: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print the optimal coloring in the coloring text format.
        #[arg(long)]
        certificate: bool,
        /// Print the optimal coloring as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check a coloring file against a graph.
    Verify {
        graph: String,
        coloring: PathBuf,
        /// Also list one total-rainbow path per pair.
        #[arg(long)]
        paths: bool,
    },
    /// Run an explicit coloring recipe.
    Color {
        recipe: Recipe,
        graph: String,
        /// kbip: distinct vertex colors on the two sides.
        #[arg(long)]
        strong: bool,
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Structural class and theory value, resolved by search if needed.
    Classify {
        graph: String,
        /// Skip the search; report the theory value only.
        #[arg(long)]
        no_solve: bool,
        /// Structured output.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the complement.
    Complement {
        graph: String,
        #[arg(long)]
        edge_list: bool,
    },
    /// Generate a family member.
    Gen {
        spec: String,
        #[arg(long)]
        edge_list: bool,
    },
    /// Nordhaus-Gaddum scan over graph6 lines.
    NgScan {
        /// Scan the bundled list of all graphs on N vertices (N <= 7).
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
        /// graph6 file; standard input when neither --n nor --in is given.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
        #[arg(long)]
        jobs: Option<usize>,
        /// JSON-lines result cache.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    Bell,
    Cycle,
    CoPath,
    CoSpider,
    Layers,
    Diam2,
    Kbip,
    CoDiam3,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Records,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

enum Source {
    Family(FamilySpec),
    Graph(Graph),
}

impl Source {
    fn graph(&self) -> Result<Graph> {
        match self {
            Source::Family(spec) => Ok(cons::generate(spec)?),
            Source::Graph(g) => Ok(g.clone()),
        }
    }
}

fn read_source(arg: &str) -> Result<Source> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if std::path::Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        if let Ok(spec) = arg.parse::<FamilySpec>() {
            return Ok(Source::Family(spec));
        }
        return parse_graph6(arg).map(Source::Graph).map_err(|e| {
            anyhow!("{arg:?} is neither a family spec, a graph6 string nor a file: {e}")
        });
    };
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| anyhow!("no graph in input"))?;
    let looks_like_edge_list = first.split_whitespace().count() == 2
        && first.split_whitespace().all(|t| t.parse::<usize>().is_ok());
    let g = if looks_like_edge_list {
        Graph::parse_edge_list(&text)?
    } else {
        parse_graph6(first)?
    };
    Ok(Source::Graph(g))
}

fn read_graph(arg: &str) -> Result<Graph> {
    read_source(arg)?.graph()
}

fn print_graph(g: &Graph, edge_list: bool) {
    if edge_list {
        print!("{}", g.to_edge_list());
    } else {
        println!("{}", emit_graph6(g));
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Solve {
            graph,
            budget,
            certificate,
            dot,
        } => {
            let g = read_graph(&graph)?;
            let b = bounds(&g)?;
            let r = trc_core::solve_trc_with(&g, &budget.budget(), &SolverConfig::default(), None)?;
            println!(
                "trc={} ({}) bounds=[{},{}] nodes={} elapsed_ms={:.3}",
                r.value, r.method, b.lower.value, b.upper.value, r.stats.nodes, r.stats.elapsed_ms
            );
            if let Some(c) = r.certificate.as_ref().filter(|_| r.value.exact().is_some()) {
                if certificate {
                    println!("# graph6 {}", emit_graph6(&g));
                    print!("{}", c.to_text());
                }
                if dot {
                    print!("{}", c.to_dot(&g));
                }
            }
            Ok(if r.value.exact().is_some() {
                0
            } else {
                EXIT_UNKNOWN
            })
        }
        Command::Verify {
            graph,
            coloring,
            paths,
        } => {
            let g = read_graph(&graph)?;
            let text = std::fs::read_to_string(&coloring)
                .with_context(|| format!("reading {}", coloring.display()))?;
            let c = TotalColoring::parse_text(&text)?;
            let report = verify_trc_with_paths(&g, &c)?;
            if report.valid {
                println!("valid: {} colors", c.palette());
                if paths {
                    for p in report.witness_paths.unwrap_or_default() {
                        println!("{} {}: {:?}", p.u, p.v, p.path);
                    }
                }
                Ok(0)
            } else {
                let (u, v) = report
                    .witness_pair
                    .expect("invalid reports carry a witness");
                println!("invalid: no total-rainbow path between {u} and {v}");
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Color {
            recipe,
            graph,
            strong,
            dot,
            budget,
        } => {
            let (target, c) = color(recipe, &read_source(&graph)?, strong, &budget.budget())?;
            eprintln!("graph6 {}; {} colors", emit_graph6(&target), c.palette());
            if dot {
                print!("{}", c.to_dot(&target));
            } else {
                println!("# graph6 {}", emit_graph6(&target));
                print!("{}", c.to_text());
            }
            Ok(0)
        }
        Command::Classify {
            graph,
            no_solve,
            json,
            budget,
        } => {
            let g = read_graph(&graph)?;
            if no_solve {
                let r = classify(&g)?;
                if json {
                    println!("{}", serde_json::to_string(&r)?);
                } else {
                    println!(
                        "class={}; trc={} (theory); bounds=[{},{}]",
                        r.class_label(),
                        r.trc_theory,
                        r.bounds.0,
                        r.bounds.1
                    );
                }
                return Ok(0);
            }
            let (report, result) = trc_with_report(&g, &budget.budget())?;
            if json {
                let record = serde_json::json!({ "class": report, "result": result });
                println!("{record}");
            } else {
                println!("{}", summary_line(&report, &result));
            }
            Ok(if result.value.exact().is_some() {
                0
            } else {
                EXIT_UNKNOWN
            })
        }
        Command::Complement { graph, edge_list } => {
            print_graph(&read_graph(&graph)?.complement(), edge_list);
            Ok(0)
        }
        Command::Gen { spec, edge_list } => {
            let spec: FamilySpec = spec.parse()?;
            print_graph(&cons::generate(&spec)?, edge_list);
            Ok(0)
        }
        Command::NgScan {
            n,
            input,
            out,
            jobs,
            cache,
            budget,
        } => {
            let lines: Vec<String> = match (n, input) {
                (Some(n), _) => fixtures::graph_lines(n)
                    .ok_or_else(|| {
                        anyhow!(
                            "bundled lists cover 1 <= n <= {}",
                            fixtures::MAX_GRAPH_ORDER
                        )
                    })?
                    .lines()
                    .map(str::to_string)
                    .collect(),
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .lines()
                    .map(str::to_string)
                    .collect(),
                (None, None) => std::io::stdin()
                    .lock()
                    .lines()
                    .collect::<std::io::Result<_>>()?,
            };
            let mut cache = cache.map(TrcCache::open).transpose()?;
            if cache.as_ref().is_some_and(|c| c.was_rebuilt()) {
                eprintln!("warning: cache file was damaged and has been rebuilt");
            }
            let opts = ScanOptions {
                budget: budget.budget(),
                jobs,
            };
            let result = ng_scan(lines, &opts, cache.as_mut())?;
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            match out {
                OutFormat::Csv => {
                    writeln!(w, "{CSV_HEADER}")?;
                    for r in &result.records {
                        writeln!(w, "{}", r.csv_line())?;
                    }
                }
                OutFormat::Records => {
                    for r in &result.records {
                        writeln!(w, "{}", serde_json::to_string(r)?)?;
                    }
                }
            }
            let s = &result.summary;
            for bad in &s.malformed {
                eprintln!("line {}: {}", bad.line, bad.message);
            }
            for f in &s.check_failures {
                eprintln!("check failed: {f}");
            }
            eprintln!(
                "scanned={} co_connected={} max_sum={} argmax={} violations={} unknowns={} elapsed_ms={}",
                s.scanned,
                s.co_connected,
                s.max_sum.map_or("-".to_string(), |m| m.to_string()),
                s.argmax.join(" "),
                s.violations.len(),
                s.unknowns,
                s.elapsed_ms
            );
            Ok(
                if !s.violations.is_empty() || !s.check_failures.is_empty() {
                    EXIT_VIOLATION
                } else if s.unknowns > 0 {
                    EXIT_UNKNOWN
                } else {
                    0
                },
            )
        }
    }
}

/// Returns the colored graph (the complement for the `co-*` and `layers`
/// recipes) with its coloring.
fn color(
    recipe: Recipe,
    src: &Source,
    strong: bool,
    budget: &Budget,
) -> Result<(Graph, TotalColoring)> {
    let family = match src {
        Source::Family(f) => Some(f),
        Source::Graph(_) => None,
    };
    let g = src.graph()?;
    let need = |what: &str| anyhow!("this recipe takes a `{what}` family spec");
    Ok(match recipe {
        Recipe::Bell => {
            let c = cons::color_b_ell(&g)?;
            (g, c)
        }
        Recipe::Cycle => match family {
            Some(FamilySpec::Cycle(n)) => (g, cons::color_cycle(*n)?),
            _ => bail!(need("cycle:N")),
        },
        Recipe::CoPath => match family {
            Some(FamilySpec::Path(n)) => (g.complement(), cons::color_complement_of_path(*n)?),
            _ => bail!(need("path:N")),
        },
        Recipe::CoSpider => match family {
            Some(FamilySpec::Spider(k, l, m)) => (
                g.complement(),
                cons::color_complement_of_spider(*k, *l, *m)?,
            ),
            _ => bail!(need("spider:K,L,M")),
        },
        Recipe::Kbip => match family {
            Some(FamilySpec::CompleteBipartite(m, n)) => {
                let c = if strong {
                    cons::color_complete_bipartite_strong(*m, *n)?
                } else {
                    cons::color_complete_bipartite(*m, *n)?
                };
                (g, c)
            }
            _ => bail!(need("kbip:M,N")),
        },
        Recipe::Layers => {
            let c = cons::color_via_distance_layers(&g)?;
            (g.complement(), c)
        }
        Recipe::Diam2 => {
            let c = cons::color_two_connected_diam2(&g, budget)?;
            (g, c)
        }
        Recipe::CoDiam3 => {
            let c = cons::color_complement_of_diam3_2connected(&g, None)?;
            (g.complement(), c)
        }
    })
}
