use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cubex_core::cubespan::cswalls_total_flow;
use cubex_core::enumerate::classify;
use cubex_core::error::Error as CoreError;
use cubex_core::expansion::{
    edge_expansion_exact_with_limit, maxcut_bruteforce_with_limit, np_reduction,
};
use cubex_core::families;
use cubex_core::graph::Graph;
use cubex_core::polytope::ZeroOnePolytope;
use cubex_core::rat::{format_rat, rat, rat_int};
use cubex_core::spectral::spectral_report;
use cubex_core::walls::{
    build_wall_flow, enumerate_walls, has_fractional_wall_matchings, is_balanced, total_wall_flow,
};

use cubex::formats;
use cubex::report;
use cubex::stretch;
use cubex::survey::{resolve_workers, run_survey};
use cubex::verify::verify_polytope;

/// Exact-arithmetic edge-expansion toolkit for graphs of 0/1-polytopes.
#[derive(Parser)]
#[command(name = "cubex", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance for eigenvalue computations.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Brute-force limit for exact expansion and max-cut.
    #[arg(long, global = true, default_value_t = 24)]
    max_n: usize,

    /// Histogram bin width.
    #[arg(long, global = true, default_value_t = 0.1)]
    bins: f64,

    /// Output file (or directory for `survey`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker count (default: CUBEX_WORKERS or machine parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Enable the long-running d = 5 classification.
    #[arg(long, global = true, default_value_t = false)]
    stretch_d5: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the skeleton of a polytope in DIMACS edge format.
    Skeleton { input: PathBuf },
    /// Exact edge expansion with a cut certificate.
    Expansion { input: PathBuf },
    /// Lazy-walk spectral report as JSON.
    Spectral { input: PathBuf },
    /// Wall report (sigma, size, mu, shores, matching status) as JSON.
    Walls { input: PathBuf },
    /// Check the fractional wall-matching property.
    CheckFwm { input: PathBuf },
    /// Dump the wall flow (all-targets sum, or one target).
    WallFlow {
        input: PathBuf,
        /// Target vertex index; omitted = summed flow over all targets.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Check the balance counting inequality and uniformity.
    Balanced { input: PathBuf },
    /// Cube-spanned-walls coverage report as JSON.
    Cubespan { input: PathBuf },
    /// Generate a family polytope as a `.pol` file.
    Gen {
        /// cube | cube-minus-vertex | hypersimplex | stable-set | matching
        /// | perfect-matching | spanning-tree | knapsack
        family: String,
        /// Family parameters (dimensions, or a graph file, or capacity
        /// followed by weights).
        params: Vec<String>,
    },
    /// Build the complement-doubling reduction and check its identity.
    ReduceMaxcut { input: PathBuf },
    /// Count isometry classes of full-dimensional 0/1-polytopes.
    Classify {
        #[arg(short, long)]
        d: usize,
    },
    /// Per-class survey: spectral bounds, exact expansion, histogram.
    Survey {
        #[arg(short, long)]
        d: usize,
    },
    /// Full pipeline: skeleton, bounds, expansion, certificates, verdict.
    Verify { input: PathBuf },
}

enum CliError {
    Malformed(String),
    Limit(String),
    Verification(Vec<String>),
    Other(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::LimitExceeded(msg) => CliError::Limit(msg),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {}", path.display(), e)))
}

fn load_polytope(path: &Path) -> Result<ZeroOnePolytope, CliError> {
    let text = read_file(path)?;
    formats::parse_pol(&text).map_err(|e| CliError::Malformed(format!("{}:{}", path.display(), e)))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    formats::parse_dimacs(&text)
        .map_err(|e| CliError::Malformed(format!("{}:{}", path.display(), e)))
}

/// Inputs for graph-flavored commands: a DIMACS graph, or a `.pol` file
/// whose skeleton is used.
fn load_graph_or_skeleton(path: &Path) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    let looks_dimacs = matches!(
        first.and_then(|l| l.split_whitespace().next()),
        Some("p") | Some("c") | Some("e")
    );
    if looks_dimacs {
        formats::parse_dimacs(&text)
            .map_err(|e| CliError::Malformed(format!("{}:{}", path.display(), e)))
    } else {
        let p = formats::parse_pol(&text)
            .map_err(|e| CliError::Malformed(format!("{}:{}", path.display(), e)))?;
        Ok(p.skeleton()?)
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Other(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Skeleton { input } => {
            let p = load_polytope(&input)?;
            let g = p.skeleton()?;
            emit(&cli.out, &formats::render_dimacs(&g))
        }
        Command::Expansion { input } => {
            let g = load_graph_or_skeleton(&input)?;
            let (h, cert) = edge_expansion_exact_with_limit(&g, cli.max_n)?;
            let subset: Vec<String> = cert.subset.iter().map(|v| v.to_string()).collect();
            emit(
                &cli.out,
                &format!(
                    "expansion {}\ncut {}\nwitness {}\n",
                    format_rat(&h),
                    cert.cut_size,
                    subset.join(" ")
                ),
            )
        }
        Command::Spectral { input } => {
            let g = load_graph_or_skeleton(&input)?;
            let r = spectral_report(&g, cli.tol)?;
            let doc = serde_json::to_string_pretty(&report::spectral_json(&r)).unwrap();
            emit(&cli.out, &format!("{}\n", doc))
        }
        Command::Walls { input } => {
            let p = load_polytope(&input)?;
            let g = p.skeleton()?;
            let walls = enumerate_walls(&p)?;
            let docs: Vec<serde_json::Value> =
                walls.iter().map(|w| report::wall_json(&p, &g, w)).collect();
            let doc = serde_json::to_string_pretty(&serde_json::Value::Array(docs)).unwrap();
            emit(&cli.out, &format!("{}\n", doc))
        }
        Command::CheckFwm { input } => {
            let p = load_polytope(&input)?;
            let g = p.skeleton()?;
            let r = has_fractional_wall_matchings(&p, &g)?;
            let mut text = format!("fwm {}\n", if r.holds { "yes" } else { "no" });
            for w in &r.failing {
                text.push_str(&format!("failing {}\n", w.sigma.render()));
            }
            emit(&cli.out, &text)
        }
        Command::WallFlow { input, target } => {
            let p = load_polytope(&input)?;
            let g = p.skeleton()?;
            let flow = match target {
                Some(t) => build_wall_flow(&p, &g, t)?,
                None => {
                    let (flow, phi_max) = total_wall_flow(&p, &g)?;
                    if phi_max > rat_int(0) {
                        eprintln!(
                            "phi_max {} bound {}",
                            format_rat(&phi_max),
                            format_rat(&(rat_int(p.n_vertices() as i64) / (rat_int(2) * &phi_max)))
                        );
                    }
                    flow
                }
            };
            emit(&cli.out, &formats::render_flow(&flow))
        }
        Command::Balanced { input } => {
            let p = load_polytope(&input)?;
            let (balanced, violation) = is_balanced(&p)?;
            let uniform = p
                .is_uniform()
                .map(|r| r.to_string())
                .unwrap_or_else(|| "no".into());
            let mut text = format!(
                "balanced {}\nuniform {}\n",
                if balanced { "yes" } else { "no" },
                uniform
            );
            if let Some(v) = violation {
                text.push_str(&format!(
                    "violation wall={} i={} j={}\n",
                    v.wall.sigma.render(),
                    v.i,
                    v.j
                ));
            }
            emit(&cli.out, &text)
        }
        Command::Cubespan { input } => {
            let p = load_polytope(&input)?;
            let g = p.skeleton()?;
            let r = cswalls_total_flow(&p, &g)?;
            let doc =
                serde_json::to_string_pretty(&report::coverage_json(p.n_vertices(), &r)).unwrap();
            emit(&cli.out, &format!("{}\n", doc))
        }
        Command::Gen { family, params } => {
            let p = generate(&family, &params)?;
            emit(&cli.out, &formats::render_pol(&p))
        }
        Command::ReduceMaxcut { input } => {
            let g = load_graph_or_skeleton(&input)?;
            let n = g.n();
            if n == 0 {
                return Err(CliError::Malformed("graph has no nodes".into()));
            }
            let (mc, witness) = maxcut_bruteforce_with_limit(&g, cli.max_n)?;
            let red = np_reduction(&g);
            // G' has 2n nodes; the brute force there also obeys --max-n.
            let (h, _) = edge_expansion_exact_with_limit(&red.g_prime, cli.max_n)?;
            let identity = rat_int(n as i64) - rat(mc as i64, n as i64);
            let subset: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            let text = format!(
                "maxcut {}\nwitness {}\nh(G') {}\nn - maxcut/n {}\n",
                mc,
                subset.join(" "),
                format_rat(&h),
                format_rat(&identity)
            );
            emit(&cli.out, &text)?;
            if h != identity {
                return Err(CliError::Verification(vec![format!(
                    "reduction identity violated: h(G') = {} but n - maxcut/n = {}",
                    format_rat(&h),
                    format_rat(&identity)
                )]));
            }
            Ok(())
        }
        Command::Classify { d } => {
            if d == 5 {
                if !cli.stretch_d5 {
                    return Err(CliError::Limit(
                        "d = 5 requires --stretch-d5 (long-running)".into(),
                    ));
                }
                let workers = resolve_workers(cli.workers);
                let count = stretch::classify_d5_count(workers, |level, classes| {
                    eprintln!("level {level}: {classes} subset classes");
                });
                return emit(&cli.out, &format!("d 5 classes {}\n", count));
            }
            let classes = classify(d)?;
            emit(&cli.out, &format!("d {} classes {}\n", d, classes.len()))
        }
        Command::Survey { d } => {
            let workers = resolve_workers(cli.workers);
            let out_dir = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("survey_out"));
            let survey = run_survey(d, cli.tol, cli.bins, workers)?;
            std::fs::create_dir_all(&out_dir)
                .map_err(|e| CliError::Other(format!("{}: {}", out_dir.display(), e)))?;
            for (name, doc) in &survey.class_docs {
                std::fs::write(out_dir.join(name), doc)
                    .map_err(|e| CliError::Other(e.to_string()))?;
            }
            std::fs::write(out_dir.join("histogram.csv"), &survey.histogram_csv)
                .map_err(|e| CliError::Other(e.to_string()))?;
            std::fs::write(out_dir.join("summary.json"), &survey.summary_json)
                .map_err(|e| CliError::Other(e.to_string()))?;
            println!(
                "surveyed {} classes of dimension {}; reports in {}",
                survey.rows.len(),
                d,
                out_dir.display()
            );
            Ok(())
        }
        Command::Verify { input } => {
            let p = load_polytope(&input)?;
            let outcome = verify_polytope(&p, cli.tol, cli.max_n)?;
            let mut text = outcome.lines.join("\n");
            text.push('\n');
            emit(&cli.out, &text)?;
            if outcome.violations.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(outcome.violations))
            }
        }
    }
}

fn generate(family: &str, params: &[String]) -> Result<ZeroOnePolytope, CliError> {
    let usage = |msg: &str| CliError::Other(format!("gen {}: {}", family, msg));
    let int = |s: &String| -> Result<usize, CliError> {
        s.parse::<usize>()
            .map_err(|_| usage(&format!("bad integer `{}`", s)))
    };
    match family {
        "cube" => {
            let d = int(params.first().ok_or_else(|| usage("expected dimension"))?)?;
            Ok(families::cube(d)?)
        }
        "cube-minus-vertex" => {
            let d = int(params.first().ok_or_else(|| usage("expected dimension"))?)?;
            Ok(families::cube_minus_vertex(d)?)
        }
        "hypersimplex" => {
            if params.len() != 2 {
                return Err(usage("expected `d rho`"));
            }
            Ok(families::hypersimplex(int(&params[0])?, int(&params[1])?)?)
        }
        "stable-set" => {
            let path = params.first().ok_or_else(|| usage("expected graph file"))?;
            Ok(families::stable_set_polytope(&load_graph(Path::new(
                path,
            ))?)?)
        }
        "matching" => {
            let path = params.first().ok_or_else(|| usage("expected graph file"))?;
            Ok(families::matching_polytope(&load_graph(Path::new(path))?)?)
        }
        "perfect-matching" => {
            let path = params.first().ok_or_else(|| usage("expected graph file"))?;
            Ok(families::perfect_matching_polytope(&load_graph(
                Path::new(path),
            )?)?)
        }
        "spanning-tree" => {
            let path = params.first().ok_or_else(|| usage("expected graph file"))?;
            Ok(families::spanning_tree_polytope(&load_graph(Path::new(
                path,
            ))?)?)
        }
        "knapsack" => {
            if params.len() < 2 {
                return Err(usage("expected `capacity w1 w2 ...`"));
            }
            let cap = int(&params[0])? as u64;
            let weights: Vec<u64> = params[1..]
                .iter()
                .map(|s| int(s).map(|x| x as u64))
                .collect::<Result<_, _>>()?;
            Ok(families::knapsack_polytope(&weights, cap)?)
        }
        other => Err(usage(&format!("unknown family `{}`", other))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Malformed(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Limit(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
        Err(CliError::Verification(violations)) => {
            for v in violations {
                eprintln!("verification failure: {}", v);
            }
            ExitCode::from(4)
        }
        Err(CliError::Other(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::FAILURE
        }
    }
}
