//! `rankforge`: exact rank computations, extremal constructions, coding
//! bounds and exhaustive enumeration of reduced graphs from the command
//! line. Graphs travel as graph6, one per line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rankforge::coding::{f2n_brute_max, f2n_check, min_distance, plotkin_bound_check, singleton_verify};
use rankforge::constructions::{construct_b, construct_c, construct_c_recursive, construct_o, construct_remark_h};
use rankforge::enumeration::{Progress, DEFAULT_MAX_RANK};
use rankforge::structure::{
    max_subgraph_below_rank, rank_drop_neighborhood, rank_drop_symdiff, validate_lov_matrix_obstruction,
};
use rankforge::{
    bounds, enumerate_extremal, from_graph6, graph_rank, independence_number, merge_reports, to_graph6,
    verify_theorem, BinaryCode, EnumerationOptions, EnumerationReport, Error, Graph, GraphClass, Shard, Theorem,
    VertexSet,
};

/// Environment variable that raises the enumeration rank guard.
const MAX_R_ENV: &str = "RANKFORGE_MAX_R";

#[derive(Parser)]
#[command(name = "rankforge", version, about = "Reduced graphs of small rank: constructions, bounds and exhaustive search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print c(r), b(r), t(r), mu(r) and 2^r - 1 for rank r.
    Bounds {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
    /// Build one of the extremal graphs and print it as graph6.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        param: usize,
        /// Use the recursive definition (family C only).
        #[arg(long)]
        recursive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of each input graph.
    Rank { input: Option<PathBuf> },
    /// Remove isolated vertices and duplicates until the graph is reduced.
    Reduce { input: Option<PathBuf> },
    /// Evaluate a predicate on each input graph.
    Check {
        #[arg(value_enum)]
        what: Predicate,
        input: Option<PathBuf>,
    },
    /// Rank-drop and low-rank subgraph checks on reduced graphs.
    Lemma {
        #[command(subcommand)]
        which: LemmaCommand,
    },
    /// Bounds for binary codes.
    Code {
        #[command(subcommand)]
        which: CodeCommand,
    },
    /// Largest reduced graphs of rank R in a class.
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_parser = parse_class)]
        class: GraphClass,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Process only shard K of N, written K/N.
        #[arg(long, value_parser = parse_shard)]
        shard: Option<Shard>,
        #[arg(long)]
        quiet: bool,
    },
    /// Combine the shard reports of one enumeration.
    Merge {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check an extremal statement exhaustively at rank R.
    Verify {
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "O", alias = "o")]
    O,
    #[value(name = "C", alias = "c")]
    C,
    Remark,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    Reduced,
    #[value(alias = "triangle-free")]
    Trianglefree,
    Bipartite,
    Alpha,
}

#[derive(Subcommand)]
enum LemmaCommand {
    /// rank(G - N(v)) <= rank(G) - 2, for one vertex or all of them.
    Neighborhood {
        #[arg(long)]
        v: Option<usize>,
        input: Option<PathBuf>,
    },
    /// rank(G - (N(u) sym N(v))) <= rank(G) - 2, for one pair or every
    /// non-adjacent pair.
    Symdiff {
        #[arg(long, requires = "v")]
        u: Option<usize>,
        #[arg(long, requires = "u")]
        v: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Largest induced subgraph with rank at most rank(G) - gap, with its
    /// structural checks.
    Lov {
        #[arg(long, default_value_t = 1)]
        gap: usize,
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodeCommand {
    /// |C| <= 2^(n-d+1) and the extremal families. Words one per line.
    Singleton {
        /// Defaults to the minimum distance of the code.
        #[arg(long)]
        d: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Smallest neighbourhood symmetric difference on an independent set.
    Plotkin {
        /// Comma-separated vertices of an independent set.
        #[arg(long, value_parser = parse_set)]
        set: VertexSet,
        input: Option<PathBuf>,
    },
    /// |C| <= 5 * 2^(n-4) for a distance-2 code with j in its row space.
    F2n { input: Option<PathBuf> },
    /// Exact optimum of the f2n problem for n = 5 or 6.
    F2nMax {
        #[arg(long)]
        n: usize,
    },
}

/// How a command ended, mapped onto the process exit code.
enum Outcome {
    Pass,
    Counterexample,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

type CliResult<T = Outcome> = Result<T, CliError>;

fn parse_class(s: &str) -> Result<GraphClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shard(s: &str) -> Result<Shard, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_set(s: &str) -> Result<VertexSet, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .map(|v| v.and_then(|v| if v < 64 { Ok(v) } else { Err(format!("vertex {v} >= 64")) }))
        .collect()
}

fn read_input(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// graph6 lines, skipping blanks and the optional `>>graph6<<` header.
fn read_graphs(path: Option<&Path>) -> CliResult<Vec<Graph>> {
    let text = read_input(path)?;
    let graphs = text
        .lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect::<Result<Vec<_>, _>>()?;
    if graphs.is_empty() {
        return Err(CliError::Io("no graphs on input".into()));
    }
    Ok(graphs)
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn max_rank_from_env() -> CliResult<usize> {
    match std::env::var(MAX_R_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Io(format!("{MAX_R_ENV}={v:?} is not a rank"))),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

fn enumeration_options(jobs: Option<usize>, shard: Option<Shard>, quiet: bool) -> CliResult<EnumerationOptions> {
    let progress = (!quiet).then(|| {
        Arc::new(|p: Progress| eprintln!("core {}/{}: best so far {}", p.done, p.total, p.best))
            as Arc<dyn Fn(Progress) + Send + Sync>
    });
    Ok(EnumerationOptions {
        jobs,
        max_rank: Some(max_rank_from_env()?),
        shard,
        progress,
    })
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Counterexample
    }
}

fn cmd_bounds(r: u32, as_json: bool) -> CliResult {
    let t = bounds(r)?;
    if as_json {
        let text = serde_json::to_string_pretty(&t).expect("bounds serialize");
        println!("{text}");
        return Ok(Outcome::Pass);
    }
    let opt = |v: Option<u128>| v.map_or("-".to_string(), |v| v.to_string());
    println!("r = {r}");
    println!("c({r}) = {}", opt(t.c));
    println!("b({r}) = {}", opt(t.b));
    println!("t({r}) = {}", opt(t.t));
    println!("mu({r}) = {}", t.mu);
    println!("2^{r} - 1 = {}", t.m_upper);
    Ok(Outcome::Pass)
}

fn cmd_construct(family: Family, param: usize, recursive: bool, out: Option<&Path>) -> CliResult {
    if recursive && !matches!(family, Family::C) {
        return Err(CliError::Io("--recursive applies only to family C".into()));
    }
    let g = match family {
        Family::B => construct_b(param)?,
        Family::O => construct_o(param)?,
        Family::C if recursive => construct_c_recursive(param)?,
        Family::C => construct_c(param)?.graph,
        Family::Remark => construct_remark_h(param)?,
    };
    write_output(out, &format!("{}\n", to_graph6(&g)))?;
    Ok(Outcome::Pass)
}

fn cmd_check(what: Predicate, input: Option<&Path>) -> CliResult {
    for g in read_graphs(input)? {
        match what {
            Predicate::Reduced => println!("{}", g.is_reduced()),
            Predicate::Trianglefree => println!("{}", g.is_triangle_free()),
            Predicate::Bipartite => println!("{}", g.is_bipartite()),
            Predicate::Alpha => {
                let (alpha, witness) = independence_number(&g);
                println!("{alpha} {witness}");
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cmd_lemma(which: LemmaCommand) -> CliResult {
    let mut ok = true;
    match which {
        LemmaCommand::Neighborhood { v, input } => {
            for g in read_graphs(input.as_deref())? {
                let vertices: Vec<usize> = v.map_or_else(|| (0..g.order()).collect(), |v| vec![v]);
                for v in vertices {
                    let d = rank_drop_neighborhood(&g, v)?;
                    ok &= d.holds;
                    println!("{}", json!({"v": v, "lhs": d.lhs, "rhs": d.rhs, "holds": d.holds}));
                }
            }
        }
        LemmaCommand::Symdiff { u, v, input } => {
            for g in read_graphs(input.as_deref())? {
                let pairs: Vec<(usize, usize)> = match (u, v) {
                    (Some(u), Some(v)) => vec![(u, v)],
                    _ => (0..g.order())
                        .flat_map(|v| (0..v).map(move |u| (u, v)))
                        .filter(|&(u, v)| !g.has_edge(u, v))
                        .collect(),
                };
                for (u, v) in pairs {
                    let d = rank_drop_symdiff(&g, u, v)?;
                    ok &= d.holds;
                    println!("{}", json!({"u": u, "v": v, "lhs": d.lhs, "rhs": d.rhs, "holds": d.holds}));
                }
            }
        }
        LemmaCommand::Lov { gap, input } => {
            for g in read_graphs(input.as_deref())? {
                let report = max_subgraph_below_rank(&g, gap)?;
                let consistent = validate_lov_matrix_obstruction(&report);
                ok &= report.all_hold() && consistent;
                let mut value = serde_json::to_value(&report).expect("report serializes");
                value["obstruction_free"] = json!(consistent);
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            }
        }
    }
    Ok(pass_if(ok))
}

fn read_code(input: Option<&Path>) -> CliResult<BinaryCode> {
    Ok(BinaryCode::parse(&read_input(input)?)?)
}

fn cmd_code(which: CodeCommand) -> CliResult {
    match which {
        CodeCommand::Singleton { d, input } => {
            let code = read_code(input.as_deref())?;
            let d = match d {
                Some(d) => d,
                None => min_distance(&code)?,
            };
            let v = singleton_verify(&code, d)?;
            println!(
                "{}",
                json!({"n": code.len(), "size": code.size(), "d": d, "bound": v.bound.to_string(), "holds": v.holds, "equality": v.equality})
            );
            Ok(pass_if(v.holds))
        }
        CodeCommand::Plotkin { set, input } => {
            let mut ok = true;
            for g in read_graphs(input.as_deref())? {
                let p = plotkin_bound_check(&g, set)?;
                ok &= p.holds;
                println!("{}", serde_json::to_string(&p).expect("json"));
            }
            Ok(pass_if(ok))
        }
        CodeCommand::F2n { input } => {
            let code = read_code(input.as_deref())?;
            let c = f2n_check(&code)?;
            println!(
                "{}",
                json!({"n": code.len(), "size": code.size(), "bound": c.bound.to_string(), "holds": c.holds})
            );
            Ok(pass_if(c.holds))
        }
        CodeCommand::F2nMax { n } => {
            let opt = f2n_brute_max(n)?;
            println!("n = {}", opt.n);
            println!("max_size = {}", opt.max_size);
            println!("hyperplanes = {}", opt.hyperplanes);
            print!("{}", opt.witness);
            Ok(Outcome::Pass)
        }
    }
}

fn cmd_enumerate(
    rank: usize,
    class: GraphClass,
    jobs: Option<usize>,
    report: Option<&Path>,
    shard: Option<Shard>,
    quiet: bool,
) -> CliResult {
    let opts = enumeration_options(jobs, shard, quiet)?;
    let rep = enumerate_extremal(rank, class, &opts)?;
    write_output(report, &format!("{}\n", rep.to_json()))?;
    if report.is_some() {
        println!(
            "rank {} {}: max order {} with {} extremal graph(s)",
            rep.rank,
            rep.class,
            rep.max_order,
            rep.extremal.len()
        );
    }
    Ok(Outcome::Pass)
}

fn cmd_merge(paths: &[PathBuf], report: Option<&Path>) -> CliResult {
    let reports = paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(EnumerationReport::from_json(&text)?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let merged = merge_reports(&reports)?;
    write_output(report, &format!("{}\n", merged.to_json()))?;
    Ok(Outcome::Pass)
}

fn cmd_verify(theorem: Theorem, r: usize, jobs: Option<usize>, quiet: bool) -> CliResult {
    let opts = enumeration_options(jobs, None, quiet)?;
    let verdict = verify_theorem(theorem, r, &opts)?;
    for line in &verdict.evidence {
        println!("{line}");
    }
    if verdict.passed {
        println!("{theorem} at r = {r}: verified");
    } else {
        println!("{theorem} at r = {r}: counterexample");
        if let Some(g6) = &verdict.counterexample {
            println!("{g6}");
        }
    }
    Ok(pass_if(verdict.passed))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Bounds { r, json } => cmd_bounds(r, json),
        Command::Construct {
            family,
            param,
            recursive,
            out,
        } => cmd_construct(family, param, recursive, out.as_deref()),
        Command::Rank { input } => {
            for g in read_graphs(input.as_deref())? {
                println!("{}", graph_rank(&g));
            }
            Ok(Outcome::Pass)
        }
        Command::Reduce { input } => {
            for g in read_graphs(input.as_deref())? {
                println!("{}", to_graph6(&g.reduce()));
            }
            Ok(Outcome::Pass)
        }
        Command::Check { what, input } => cmd_check(what, input.as_deref()),
        Command::Lemma { which } => cmd_lemma(which),
        Command::Code { which } => cmd_code(which),
        Command::Enumerate {
            rank,
            class,
            jobs,
            report,
            shard,
            quiet,
        } => cmd_enumerate(rank, class, jobs, report.as_deref(), shard, quiet),
        Command::Merge { reports, report } => cmd_merge(&reports, report.as_deref()),
        Command::Verify {
            theorem,
            r,
            jobs,
            quiet,
        } => cmd_verify(theorem, r, jobs, quiet),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(e) => {
            eprintln!("rankforge: {e}");
            ExitCode::from(2)
        }
    }
}
