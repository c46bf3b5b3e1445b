//! Subcommands.

use std::io::{BufRead, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use spextral::containment::{find_forest, ComponentEmbedding};
use spextral::families::{self, ExtremalFamily};
use spextral::graph::read_graph6_lines;
use spextral::search::{self, SearchOptions, SearchReport, DEFAULT_RHO_TOL};
use spextral::spectral::{self, DEFAULT_MAX_ITER, DEFAULT_TOL};
use spextral::turan::{self, Prediction, Shape, TuranValue};
use spextral::{graph6_decode, graph6_encode, Error, ForestPattern, Graph};
use spextral_verify::{Config, Suite};

use crate::output::{emit, print_line, CliResult, Failure};

#[derive(Debug, Parser)]
#[command(name = "spextral", version, about = "Spectral and Turán extremal problems for star-path forests")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named graph and print its graph6.
    Construct(ConstructArgs),
    /// Spectral radius by power iteration.
    Rho(RhoArgs),
    /// Compare the spectral radius with the degree-and-size upper bound.
    Bound(GraphArg),
    /// Closed-form Turán number of a pattern.
    Turan(PatternOrder),
    /// Predicted spectral extremal graphs of a pattern.
    Predict(PatternOrder),
    /// Whether a graph avoids a pattern, with an embedding when it does not.
    Free(FreeArgs),
    /// Perron level sets R, R′ and R″.
    Levelsets(LevelArgs),
    /// Structural claims on the complement of R″.
    Claims(LevelArgs),
    /// Maximum edges among pattern-free graphs, by exhaustive search.
    SearchEx(SearchArgs),
    /// Maximum spectral radius among pattern-free graphs, by exhaustive search.
    SearchSp(SearchSpArgs),
    /// Run the acceptance criteria.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyKind {
    Split,
    SplitPlus,
    CliqueJoinCliques,
    LinearForest,
    CliqueUnionEmpty,
    Complete,
    Empty,
    Path,
    Cycle,
    Star,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    family: FamilyKind,
    #[arg(long)]
    n: usize,
    /// Clique size of split graphs.
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Size of the last clique; derived from n, k and l when omitted.
    #[arg(long)]
    r: Option<usize>,
    /// Clique size of clique-union-empty.
    #[arg(long)]
    c: Option<usize>,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph in graph6; read from standard input when omitted.
    #[arg(long)]
    g6: Option<String>,
}

#[derive(Debug, Args)]
struct RhoArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
}

#[derive(Debug, Args)]
struct PatternOrder {
    /// Forest such as 1S3+1P4 (S = star with that many leaves, P = path with that many vertices).
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct FreeArgs {
    #[arg(long)]
    pattern: String,
    #[command(flatten)]
    graph: GraphArg,
}

#[derive(Debug, Args)]
struct LevelArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    pattern: String,
    /// Order of the generated graphs; optional with --g6-file.
    #[arg(long)]
    n: Option<usize>,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "SPEXTRAL_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Search the graphs listed in this graph6 file instead of generating them.
    #[arg(long)]
    g6_file: Option<PathBuf>,
    /// Permit order 10, which enumerates about twelve million graphs.
    #[arg(long)]
    large: bool,
}

#[derive(Debug, Args)]
struct SearchSpArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Radii within this of the maximum are reported as ties.
    #[arg(long, default_value_t = DEFAULT_RHO_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Include the order-10 search.
    #[arg(long)]
    large: bool,
    #[arg(long, env = "SPEXTRAL_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Print the outcomes as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Rho(a) => rho(a),
        Command::Bound(a) => bound(a),
        Command::Turan(a) => turan_value(a),
        Command::Predict(a) => predict(a),
        Command::Free(a) => free(a),
        Command::Levelsets(a) => levelsets(a),
        Command::Claims(a) => claims(a),
        Command::SearchEx(a) => search_ex(a),
        Command::SearchSp(a) => search_sp(a),
        Command::Verify(a) => verify(a),
    }
}

fn need(value: Option<usize>, flag: &str, family: FamilyKind) -> CliResult<usize> {
    value.ok_or_else(|| Failure::argument(format!("--{flag} is required for {family:?}")))
}

fn construct(a: ConstructArgs) -> CliResult {
    let n = a.n;
    let fam = |f: ExtremalFamily| -> CliResult<Graph> { Ok(f.build()?) };
    let g = match a.family {
        FamilyKind::Split => fam(ExtremalFamily::Split { n, h: need(a.h, "h", a.family)? })?,
        FamilyKind::SplitPlus => fam(ExtremalFamily::SplitPlus { n, h: need(a.h, "h", a.family)? })?,
        FamilyKind::CliqueJoinCliques => {
            let k = need(a.k, "k", a.family)?;
            let l = need(a.l, "l", a.family)?;
            match a.r {
                Some(r) => fam(ExtremalFamily::CliqueJoinCliques { n, k, l, r })?,
                None => fam(ExtremalFamily::clique_join_cliques(n, k, l)?)?,
            }
        }
        FamilyKind::LinearForest => fam(ExtremalFamily::LinearForestExtremal { n, k: need(a.k, "k", a.family)? })?,
        FamilyKind::CliqueUnionEmpty => fam(ExtremalFamily::CliqueUnionEmpty { n, c: need(a.c, "c", a.family)? })?,
        FamilyKind::Complete => families::complete(n)?,
        FamilyKind::Empty => families::empty(n)?,
        FamilyKind::Path => families::path(n)?,
        FamilyKind::Cycle => families::cycle(n)?,
        FamilyKind::Star => {
            if n == 0 {
                return Err(Failure::argument("a star needs at least one vertex"));
            }
            families::star(n - 1)?
        }
    };
    print_line(graph6_encode(&g))
}

fn read_graph(arg: &GraphArg) -> CliResult<Graph> {
    let text = match &arg.g6 {
        Some(s) => s.clone(),
        None => {
            let mut line = String::new();
            std::io::stdin()
                .lock()
                .read_line(&mut line)
                .map_err(|e| Failure::from(Error::from(e)))?;
            line
        }
    };
    Ok(graph6_decode(text.trim())?)
}

fn parse_pattern(s: &str) -> CliResult<ForestPattern> {
    Ok(s.parse::<ForestPattern>()?)
}

fn check_tol(tol: f64) -> CliResult {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::argument(format!("--tol must be a positive number, got {tol}")))
    }
}

fn rho(a: RhoArgs) -> CliResult {
    check_tol(a.tol)?;
    let g = read_graph(&a.graph)?;
    if g.order() == 0 {
        return emit(&json!({"rho": 0.0, "residual": 0.0, "iterations": 0, "tol": a.tol}));
    }
    let r = spectral::power_iteration(&g, a.tol, a.max_iter)?;
    emit(&json!({
        "rho": r.rho,
        "residual": r.residual,
        "iterations": r.iterations,
        "tol": a.tol,
    }))
}

fn bound(a: GraphArg) -> CliResult {
    let g = read_graph(&a)?;
    if g.order() == 0 {
        return Err(Failure::argument("the bound needs at least one vertex"));
    }
    let hong = spectral::hong_bound(&g)?;
    let rho = spectral::spectral_radius(&g)?;
    emit(&json!({
        "hong": hong,
        "rho": rho,
        "ok": rho <= hong + DEFAULT_TOL,
        "tol": DEFAULT_TOL,
    }))
}

#[derive(Serialize)]
struct Certificate {
    family: ExtremalFamily,
    graph6: String,
}

fn certificates(fams: &[ExtremalFamily]) -> CliResult<Vec<Certificate>> {
    fams.iter()
        .map(|f| {
            Ok(Certificate {
                family: *f,
                graph6: graph6_encode(&f.build()?),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct TuranOutput {
    pattern: String,
    n: usize,
    /// Whether `value` is the Turán number or only an upper bound on it.
    kind: &'static str,
    #[serde(flatten)]
    value: TuranValue,
    families: Vec<Certificate>,
}

fn turan_value(a: PatternOrder) -> CliResult {
    let f = parse_pattern(&a.pattern)?;
    let n = a.n;
    let uniform = |xs: &[usize]| xs.first().filter(|&&x| xs.iter().all(|&y| y == x)).copied();
    let (kind, value, fams) = if f.paths().is_empty() && uniform(f.stars()).is_some() {
        let s = f.stars()[0];
        let k = f.stars().len();
        if k == 1 {
            let v = turan::turan_star_bound(n, s)?;
            let tv = TuranValue {
                value: v,
                case: "floor((l-1)n/2)".into(),
                guaranteed: true,
                threshold: s as u128 + 1,
            };
            ("upper-bound", tv, Vec::new())
        } else {
            ("exact", turan::turan_star_forest(n, k, s)?, Vec::new())
        }
    } else if f.stars().is_empty() && f.paths().len() == 1 {
        let m = f.paths()[0];
        let v = turan::turan_connected_path_bound(n, m.saturating_sub(1))?;
        let tv = TuranValue {
            value: v,
            case: "connected".into(),
            guaranteed: true,
            threshold: m as u128,
        };
        ("connected-upper-bound", tv, Vec::new())
    } else if let Some(Shape::StarPath { k, l }) = turan::recognize(&f)
        .into_iter()
        .find(|s| matches!(s, Shape::StarPath { .. }))
    {
        let (v, pred) = turan::turan_star_path(n, k, l)?;
        ("exact", v, pred.families)
    } else {
        return Err(Error::UnsupportedPattern(format!(
            "no closed-form Turán number for {f}; supported: S(l), kS(l), P(m), kS(l-1)+P(l)"
        ))
        .into());
    };
    emit(&TuranOutput {
        pattern: f.to_string(),
        n,
        kind,
        value,
        families: certificates(&fams)?,
    })
}

#[derive(Serialize)]
struct PredictOutput {
    #[serde(flatten)]
    prediction: Prediction,
    certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    alternative_certificates: Vec<Certificate>,
}

fn predict(a: PatternOrder) -> CliResult {
    let f = parse_pattern(&a.pattern)?;
    let prediction = turan::predicted_spectral_extremal(&f, a.n)?;
    let certs = certificates(&prediction.families)?;
    let alt = match &prediction.discrepancy {
        Some(d) => certificates(&d.alternative_families)?,
        None => Vec::new(),
    };
    emit(&PredictOutput {
        prediction,
        certificates: certs,
        alternative_certificates: alt,
    })
}

#[derive(Serialize)]
struct FreeOutput {
    pattern: String,
    free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedding: Option<Vec<ComponentEmbedding>>,
}

fn free(a: FreeArgs) -> CliResult {
    let f = parse_pattern(&a.pattern)?;
    let g = read_graph(&a.graph)?;
    let embedding = find_forest(&g, &f);
    emit(&FreeOutput {
        pattern: f.to_string(),
        free: embedding.is_none(),
        embedding,
    })
}

fn levelsets(a: LevelArgs) -> CliResult {
    check_tol(a.tol)?;
    let g = read_graph(&a.graph)?;
    let sets = spectral::perron_level_sets(&g, a.k, a.l, a.tol)?;
    let mut v = serde_json::to_value(&sets).expect("level sets serialize");
    v["tol"] = json!(a.tol);
    emit(&v)
}

fn claims(a: LevelArgs) -> CliResult {
    check_tol(a.tol)?;
    let g = read_graph(&a.graph)?;
    let c = spectral::structure_claims(&g, a.k, a.l, a.tol)?;
    let mut v = serde_json::to_value(&c).expect("claims serialize");
    v["tol"] = json!(a.tol);
    emit(&v)
}

fn universe(a: &SearchArgs) -> CliResult<Option<Vec<Graph>>> {
    let Some(path) = &a.g6_file else {
        if a.n.is_none() {
            return Err(Failure::argument("--n is required unless --g6-file is given"));
        }
        return Ok(None);
    };
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Failure::argument(format!("cannot read {}: {e}", path.display())))?;
    let graphs = read_graph6_lines(&text)?;
    if let (Some(n), Some(g)) = (a.n, graphs.first()) {
        if g.order() != n {
            return Err(Failure::argument(format!(
                "--n {n} does not match the order {} of the graphs in {}",
                g.order(),
                path.display()
            )));
        }
    }
    Ok(Some(graphs))
}

fn finish(report: SearchReport) -> CliResult {
    eprintln!("elapsed {:.3} s", report.elapsed.as_secs_f64());
    emit(&report)
}

fn search_ex(a: SearchArgs) -> CliResult {
    let f = parse_pattern(&a.pattern)?;
    let opts = SearchOptions {
        jobs: a.jobs,
        allow_large: a.large,
        ..SearchOptions::default()
    };
    let report = match universe(&a)? {
        Some(graphs) => search::brute_ex_in(&graphs, &f, &opts)?,
        None => search::brute_ex(a.n.expect("checked"), &f, &opts)?,
    };
    finish(report)
}

fn search_sp(a: SearchSpArgs) -> CliResult {
    check_tol(a.tol)?;
    let s = a.search;
    let f = parse_pattern(&s.pattern)?;
    let opts = SearchOptions {
        jobs: s.jobs,
        allow_large: s.large,
        tol: a.tol,
    };
    let report = match universe(&s)? {
        Some(graphs) => search::brute_ex_sp_in(&graphs, &f, &opts)?,
        None => search::brute_ex_sp(s.n.expect("checked"), &f, &opts)?,
    };
    finish(report)
}

fn verify(a: VerifyArgs) -> CliResult {
    let suite: Suite = a.suite.parse().map_err(Failure::argument)?;
    let cfg = Config {
        large: a.large,
        jobs: a.jobs,
    };
    let mut outcomes = Vec::new();
    for &id in suite.criteria() {
        let o = spextral_verify::run(id, &cfg);
        if !a.json {
            print_line(&o)?;
        }
        outcomes.push(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if a.json {
        emit(&json!({ "suite": suite, "outcomes": outcomes, "passed": failed.is_empty() }))?;
    } else {
        print_line(format_args!(
            "{} of {} criteria passed",
            outcomes.len() - failed.len(),
            outcomes.len()
        ))?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(format!("criteria {failed:?} failed")))
    }
}
