use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use nullcert::dual::{find_dual_certificate, patch_dual_certificate, verify_dual_certificate};
use nullcert::graph::{
    girth, greedy_coloring, longest_increasing_path, ordering_from_coloring, parse_dimacs, Graph,
    SubgraphEdgeSet, VertexOrdering,
};
use nullcert::groebner::{buchberger, ColoringIdeal};
use nullcert::primal::{
    degree_bounds, find_certificate, min_certificate_degree, verify_certificate, CertificateQuery,
    MinDegree,
};
use nullcert::{Execution, Field, FieldSpec, PatchError, PrimeField, Rationals};

const COMPUTED: u8 = 0;
const USAGE: u8 = 1;
const NEGATIVE: u8 = 10;
const CONSTRUCTION_FAILED: u8 = 20;

/// Nullstellensatz certificates of graph non-colourability.
#[derive(Parser)]
#[command(name = "nullcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and edge counts, girth, greedy colouring and ordering summary.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "greedy")]
        ordering: String,
    },
    /// Searches for a certificate of degree d.
    Primal {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        problem: Problem,
        /// Certificate degree.
        #[arg(long)]
        d: u32,
    },
    /// Finds the smallest certificate degree up to d-max.
    Mindeg {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        problem: Problem,
        /// Largest degree to try.
        #[arg(long)]
        d_max: u32,
    },
    /// Solves the dual system at degree d.
    Dual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        problem: Problem,
        /// Certificate degree.
        #[arg(long)]
        d: u32,
    },
    /// Assembles a dual certificate from local solutions on essential subgraphs.
    Patch {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        problem: Problem,
        /// Certificate degree.
        #[arg(long)]
        d: u32,
        /// `greedy`, `identity` or `file:<path>` (new label of vertex i on entry i).
        #[arg(long, default_value = "greedy")]
        ordering: String,
        /// Solve local systems on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Reduced Gröbner basis of a subgraph's colouring ideal; prints leading monomials.
    Groebner {
        #[command(flatten)]
        input: Input,
        /// Number of colours.
        #[arg(long)]
        k: u32,
        /// `qq` (default) or `gf:<p>`.
        #[arg(long, default_value = "qq")]
        field: FieldSpec,
        /// `all`, `F1`..`F4` (the example tree minus one edge), `minus:u-v,...` or `only:u-v,...`.
        #[arg(long, default_value = "all")]
        subgraph: String,
        /// Also adjoin `x_v^k - 1` for every vertex.
        #[arg(long)]
        vertex_equations: bool,
    },
    /// Kollár and Lazard degree bounds.
    Bounds {
        #[command(flatten)]
        input: Input,
        /// Number of colours.
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args)]
struct Input {
    /// Graph in DIMACS `col` format, or JSON `{"n", "edges"}` when the name ends in `.json`.
    graph: PathBuf,
    /// Where to write JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Problem {
    /// Number of colours.
    #[arg(long)]
    k: u32,
    /// `gf:<p>` or `qq`; defaults to the smallest prime not dividing k.
    #[arg(long)]
    field: Option<FieldSpec>,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(msg: impl Display) -> Failure {
    Failure {
        code: USAGE,
        message: msg.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { COMPUTED });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Stats { input, ordering } => stats(&input, &ordering),
        Command::Primal { input, problem, d } => with_field(&problem, |f| primal(&input, problem.k, d, f)),
        Command::Mindeg { input, problem, d_max } => with_field(&problem, |f| mindeg(&input, problem.k, d_max, f)),
        Command::Dual { input, problem, d } => with_field(&problem, |f| dual(&input, problem.k, d, f)),
        Command::Patch {
            input,
            problem,
            d,
            ordering,
            sequential,
        } => {
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            with_field(&problem, |f| patch(&input, problem.k, d, f, &ordering, exec))
        }
        Command::Groebner {
            input,
            k,
            field,
            subgraph,
            vertex_equations,
        } => match field {
            FieldSpec::Rationals => groebner(&input, k, Rationals, &subgraph, vertex_equations),
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p).map_err(usage)?;
                groebner(&input, k, f, &subgraph, vertex_equations)
            }
        },
        Command::Bounds { input, k } => bounds(&input, k),
    }
}

/// Dispatches on the field; rationals and prime fields share one code path.
fn with_field(problem: &Problem, body: impl FnOnce(AnyField) -> Outcome) -> Outcome {
    let spec = problem.field.unwrap_or_else(|| FieldSpec::default_for_solving(problem.k));
    if problem.k < 2 {
        return Err(usage(format!("--k must be at least 2, got {}", problem.k)));
    }
    if !spec.admits_colors(problem.k) {
        return Err(usage(format!("field {spec} has characteristic dividing k = {}", problem.k)));
    }
    match spec {
        FieldSpec::Rationals => body(AnyField::Rationals(Rationals)),
        FieldSpec::Prime(p) => body(AnyField::Prime(PrimeField::new(p).map_err(usage)?)),
    }
}

enum AnyField {
    Prime(PrimeField),
    Rationals(Rationals),
}

macro_rules! on_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyField::Prime($f) => $body,
            AnyField::Rationals($f) => $body,
        }
    };
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        Graph::from_json(&text)
    } else {
        parse_dimacs(&text)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_json(out: Option<&Path>, value: &serde_json::Value) -> Result<(), Failure> {
    let Some(path) = out else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("JSON serializes") + "\n";
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn resolve_ordering(g: &Graph, spec: &str) -> Result<VertexOrdering, Failure> {
    match spec {
        "greedy" => Ok(ordering_from_coloring(g, &greedy_coloring(g)).expect("greedy colouring is proper")),
        "identity" => Ok(VertexOrdering::identity(g.n())),
        _ => {
            let Some(path) = spec.strip_prefix("file:") else {
                return Err(usage(format!("unknown ordering `{spec}` (expected greedy, identity or file:<path>)")));
            };
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            let labels = text
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| usage(format!("{path}: `{t}` is not a vertex label"))))
                .collect::<Result<Vec<_>, _>>()?;
            if labels.len() != g.n() as usize {
                return Err(usage(format!("{path}: {} labels for {} vertices", labels.len(), g.n())));
            }
            VertexOrdering::from_new_labels(&labels).map_err(|e| usage(format!("{path}: {e}")))
        }
    }
}

fn stats(input: &Input, ordering: &str) -> Outcome {
    let g = read_graph(&input.graph)?;
    let coloring = greedy_coloring(&g);
    let order = resolve_ordering(&g, ordering)?;
    let longest = longest_increasing_path(&g, &order);
    let gir = girth(&g);
    println!("vertices                 {}", g.n());
    println!("edges                    {}", g.edge_count());
    println!("max degree               {}", g.max_degree());
    println!("girth                    {gir}");
    println!("greedy colours           {}", coloring.color_count());
    println!("ordering                 {ordering}");
    println!("longest increasing path  {longest}");
    write_json(
        input.out.as_deref(),
        &json!({
            "n": g.n(),
            "m": g.edge_count(),
            "max_degree": g.max_degree(),
            "girth": gir.to_string(),
            "greedy_colors": coloring.color_count(),
            "ordering": ordering,
            "longest_increasing_path": longest,
        }),
    )?;
    Ok(COMPUTED)
}

fn primal(input: &Input, k: u32, d: u32, field: AnyField) -> Outcome {
    let g = read_graph(&input.graph)?;
    on_field!(field, f => {
        let q = CertificateQuery::new(&g, k, d, f).map_err(usage)?;
        match find_certificate(&q) {
            Some(cert) => {
                let verified = verify_certificate(&cert, &q);
                println!("certificate of degree {} found over {} (verified: {verified})", cert.degree(), f.spec());
                let mut doc = cert.to_json();
                doc["verified"] = json!(verified);
                write_json(input.out.as_deref(), &doc)?;
                Ok(COMPUTED)
            }
            None => {
                println!("no certificate of degree {d} over {}", f.spec());
                Ok(NEGATIVE)
            }
        }
    })
}

fn mindeg(input: &Input, k: u32, d_max: u32, field: AnyField) -> Outcome {
    let g = read_graph(&input.graph)?;
    on_field!(field, f => {
        match min_certificate_degree(&g, k, f, d_max).map_err(usage)? {
            MinDegree::Found(d) => {
                println!("minimal certificate degree {d} over {}", f.spec());
                write_json(input.out.as_deref(), &json!({"k": k, "field": f.spec().to_string(), "min_degree": d}))?;
                Ok(COMPUTED)
            }
            MinDegree::NotFoundUpTo(d) => {
                println!("no certificate up to degree {d} over {}", f.spec());
                write_json(input.out.as_deref(), &json!({"k": k, "field": f.spec().to_string(), "not_found_up_to": d}))?;
                Ok(NEGATIVE)
            }
        }
    })
}

fn dual(input: &Input, k: u32, d: u32, field: AnyField) -> Outcome {
    let g = read_graph(&input.graph)?;
    on_field!(field, f => {
        match find_dual_certificate(&g, k, d, f).map_err(usage)? {
            Some(lambda) => {
                let verified = verify_dual_certificate(&lambda, &g, k, d, &f);
                println!(
                    "dual certificate of degree {d} over {} with {} nonzero entries (verified: {verified})",
                    f.spec(),
                    lambda.support_size()
                );
                write_json(input.out.as_deref(), &lambda.to_json(verified))?;
                Ok(COMPUTED)
            }
            None => {
                println!("no dual certificate of degree {d} over {}", f.spec());
                Ok(NEGATIVE)
            }
        }
    })
}

fn patch(input: &Input, k: u32, d: u32, field: AnyField, ordering: &str, exec: Execution) -> Outcome {
    let g = read_graph(&input.graph)?;
    let order = resolve_ordering(&g, ordering)?;
    if k == 2 {
        eprintln!("warning: the patching construction is only guaranteed for k >= 3");
    }
    on_field!(field, f => {
        match patch_dual_certificate(&g, k, d, f, Some(&order), exec) {
            Ok(p) => {
                let verified = verify_dual_certificate(&p.certificate, &g, k, d, &f);
                println!(
                    "patched dual certificate over {}: {} local systems, {} nonzero entries (verified: {verified})",
                    f.spec(),
                    p.local_systems,
                    p.certificate.support_size()
                );
                if !p.girth_condition_holds {
                    println!("note: girth is below the range where patching is guaranteed; the result was verified directly");
                }
                let mut doc = p.certificate.to_json(verified);
                doc["ordering"] = json!(p.ordering.new_labels());
                doc["girth_condition_holds"] = json!(p.girth_condition_holds);
                write_json(input.out.as_deref(), &doc)?;
                Ok(COMPUTED)
            }
            Err(PatchError::Algebra(e)) => Err(usage(e)),
            Err(e) => {
                println!("patching failed: {e}");
                write_json(input.out.as_deref(), &patch_failure_json(&e))?;
                Ok(CONSTRUCTION_FAILED)
            }
        }
    })
}

fn patch_failure_json(e: &PatchError) -> serde_json::Value {
    let (kind, monomial) = match e {
        PatchError::EssentialGraphNotForest(m) => ("essential_graph_not_forest", Some(m.to_string())),
        PatchError::LocalInfeasible(m) => ("local_infeasible", Some(m.to_string())),
        PatchError::PatchVerificationFailed { monomial, .. } => ("verification_failed", Some(monomial.to_string())),
        PatchError::ConstantNotOne => ("constant_not_one", None),
        _ => ("other", None),
    };
    json!({"error": kind, "monomial": monomial, "message": e.to_string()})
}

/// Resolves `--subgraph` against `g`.
fn select_subgraph(g: &Graph, spec: &str) -> Result<SubgraphEdgeSet, Failure> {
    let parse_edges = |list: &str| -> Result<Vec<(u32, u32)>, Failure> {
        list.split(',')
            .filter(|s| !s.is_empty())
            .map(|e| {
                let (u, v) = e.split_once('-').ok_or_else(|| usage(format!("bad edge `{e}` in --subgraph")))?;
                let u: u32 = u.trim().parse().map_err(|_| usage(format!("bad vertex `{u}` in --subgraph")))?;
                let v: u32 = v.trim().parse().map_err(|_| usage(format!("bad vertex `{v}` in --subgraph")))?;
                if !g.has_edge(u, v) {
                    return Err(usage(format!("--subgraph names {u}-{v}, which is not an edge of the graph")));
                }
                Ok((u.min(v), u.max(v)))
            })
            .collect()
    };
    let removed: Vec<(u32, u32)> = match spec {
        "all" => Vec::new(),
        "F1" => parse_edges("1-4")?,
        "F2" => parse_edges("2-6")?,
        "F3" => parse_edges("3-8")?,
        "F4" => parse_edges("4-10")?,
        _ => {
            if let Some(list) = spec.strip_prefix("only:") {
                return Ok(SubgraphEdgeSet::from_edges(parse_edges(list)?));
            }
            let Some(list) = spec.strip_prefix("minus:") else {
                return Err(usage(format!("unknown subgraph `{spec}`")));
            };
            parse_edges(list)?
        }
    };
    Ok(SubgraphEdgeSet::from_edges(
        g.edges().iter().copied().filter(|e| !removed.contains(e)),
    ))
}

fn groebner<F: Field>(input: &Input, k: u32, field: F, subgraph: &str, vertex_equations: bool) -> Outcome {
    let g = read_graph(&input.graph)?;
    let f = select_subgraph(&g, subgraph)?;
    let n = g.n() as usize;
    let ideal = if vertex_equations {
        ColoringIdeal::new(field.clone(), n, k, &f)
    } else {
        ColoringIdeal::edges_only(field.clone(), n, k, &f)
    }
    .map_err(usage)?;
    let gb = buchberger(&ideal);
    let report = gb.leading_monomial_report();
    print!("{report}");
    write_json(
        input.out.as_deref(),
        &json!({
            "k": k,
            "field": field.spec().to_string(),
            "edges": f.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            "vertex_equations": vertex_equations,
            "leading_monomials": report.lines().collect::<Vec<_>>(),
            "basis": gb.polynomials().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
    )?;
    Ok(COMPUTED)
}

fn bounds(input: &Input, k: u32) -> Outcome {
    let g = read_graph(&input.graph)?;
    if k < 2 {
        return Err(usage(format!("--k must be at least 2, got {k}")));
    }
    let b = degree_bounds(&g, k);
    println!("kollar  {}", b.kollar);
    println!("lazard  {}", b.lazard);
    write_json(
        input.out.as_deref(),
        &json!({"k": k, "kollar": b.kollar.to_string(), "lazard": b.lazard}),
    )?;
    Ok(COMPUTED)
}
