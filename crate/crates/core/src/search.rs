//! Exhaustive search over all graphs of a small order, one per isomorphism
//! class, and brute-force Turán and spectral Turán oracles built on it.
//!
//! Graphs on `n` vertices are generated from those on `n − 1` by canonical
//! augmentation: a child `G + v` is kept when `v` lies in the automorphism
//! orbit of the child's canonical deletion vertex, and children of one parent
//! are taken once per orbit of neighbour sets under the parent's
//! automorphism group. The deletion vertex is chosen among the vertices that
//! maximize `(degree, sum of neighbour degrees)`, which settles most children
//! without a canonical labelling.
//!
//! Work is split by parent graph. Per-parent results are merged in parent
//! order, so every report is independent of the number of workers.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonize, Perm, Small};
use crate::containment::contains_forest_rows;
use crate::error::{Error, Result};
use crate::graph::{graph6_encode, Graph};
use crate::pattern::ForestPattern;
use crate::spectral;

/// Largest order the generator accepts.
pub const MAX_SEARCH_ORDER: usize = 10;
/// Orders from here on take minutes and need [`SearchOptions::allow_large`].
pub const GATED_ORDER: usize = 10;
pub const DEFAULT_RHO_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; `0` means one per available core.
    pub jobs: usize,
    pub allow_large: bool,
    /// Spectral radii within this of the maximum count as ties.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            allow_large: false,
            tol: DEFAULT_RHO_TOL,
        }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchOptions {
            jobs,
            ..Self::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Io(format!("cannot start worker pool: {e}")))
    }
}

fn check_order(n: usize, opts: &SearchOptions) -> Result<()> {
    if !(1..=MAX_SEARCH_ORDER).contains(&n) {
        return Err(Error::arg(format!(
            "search order must be between 1 and {MAX_SEARCH_ORDER}, got {n}"
        )));
    }
    if n >= GATED_ORDER && !opts.allow_large {
        return Err(Error::arg(format!(
            "order {n} enumerates about twelve million graphs and must be enabled explicitly (allow_large, or --large on the command line)"
        )));
    }
    Ok(())
}

/// Whether `s` is the smallest member of its orbit under `gens`.
fn orbit_minimal(s: u16, gens: &[Perm]) -> bool {
    let image = |m: u16, g: &Perm| {
        let mut out = 0u16;
        let mut rest = m;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << g[v];
        }
        out
    };
    let mut orbit = vec![s];
    let mut i = 0;
    while i < orbit.len() {
        let m = orbit[i];
        for g in gens {
            let t = image(m, g);
            if t < s {
                return false;
            }
            if !orbit.contains(&t) {
                orbit.push(t);
            }
        }
        i += 1;
    }
    true
}

fn accept(child: &Small) -> bool {
    let n = child.n;
    let v = n - 1;
    let mut inv = [0u32; 16];
    for u in 0..n {
        let mut sum = 0;
        let mut m = child.rows[u];
        while m != 0 {
            sum += child.rows[m.trailing_zeros() as usize].count_ones();
            m &= m - 1;
        }
        inv[u] = child.rows[u].count_ones() << 8 | sum;
    }
    let top = *inv[..n].iter().max().expect("nonempty");
    if inv[v] != top {
        return false;
    }
    let tied: Vec<usize> = (0..n).filter(|&u| inv[u] == top).collect();
    if tied.len() == 1 {
        return true;
    }
    let c = canonize(child);
    let orbits = c.orbits(n);
    let w = (0..n)
        .rev()
        .map(|pos| c.lab[pos] as usize)
        .find(|u| inv[*u] == top)
        .expect("a tied vertex");
    orbits[v] == orbits[w]
}

fn children(parent: &Small) -> Vec<Small> {
    let m = parent.n;
    let gens = canonize(parent).generators;
    let mut out = Vec::new();
    for s in 0..(1u32 << m) {
        let s = s as u16;
        if !gens.is_empty() && !orbit_minimal(s, &gens) {
            continue;
        }
        let child = parent.extend(s);
        if accept(&child) {
            out.push(child);
        }
    }
    out
}

/// All graphs on `m` vertices, deterministic order.
fn level(m: usize, pool: &rayon::ThreadPool) -> Vec<Small> {
    let mut cur = vec![Small::empty(0)];
    for _ in 0..m {
        cur = pool.install(|| {
            cur.par_iter()
                .map(children)
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        });
    }
    cur
}

/// Applies `f` to the children of every parent on `n − 1` vertices, in
/// parallel; results come back in parent order.
fn map_final<T: Send>(
    n: usize,
    opts: &SearchOptions,
    f: impl Fn(&[Small]) -> T + Sync,
) -> Result<Vec<T>> {
    let pool = opts.pool()?;
    let parents = level(n - 1, &pool);
    Ok(pool.install(|| parents.par_iter().map(|p| f(&children(p))).collect()))
}

/// One graph per isomorphism class on `n` vertices (`1 <= n <= 10`), as a
/// lazy stream in a fixed order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if !(1..=MAX_SEARCH_ORDER).contains(&n) {
        return Err(Error::arg(format!(
            "search order must be between 1 and {MAX_SEARCH_ORDER}, got {n}"
        )));
    }
    let pool = SearchOptions::with_jobs(1).pool()?;
    let parents = level(n - 1, &pool);
    Ok(parents
        .into_iter()
        .flat_map(|p| children(&p).into_iter().map(|c| c.to_graph())))
}

/// Number of isomorphism classes of graphs on `n` vertices.
pub fn count_graphs(n: usize, opts: &SearchOptions) -> Result<u64> {
    check_order(n, opts)?;
    Ok(map_final(n, opts, |cs| cs.len() as u64)?.into_iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Edges,
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BestValue {
    Edges(u64),
    Rho(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universe {
    Generated,
    Graph6List,
}

/// Outcome of a brute-force search. `elapsed` is deliberately left out of
/// the serialized form so that reports from different runs compare equal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub objective: Objective,
    pub pattern: String,
    pub n: usize,
    pub universe: Universe,
    /// `None` when no graph of the universe avoids the pattern.
    pub best_value: Option<BestValue>,
    /// Canonical graph6 of every optimal graph, sorted.
    pub certificates: Vec<String>,
    /// Spectral radius of each certificate, aligned with `certificates`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificate_rho: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub enumerated: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn canonical_g6(g: &Small) -> String {
    graph6_encode(&canonize(g).form(g.n).to_graph())
}

fn free(g: &Small, f: &ForestPattern) -> bool {
    !contains_forest_rows(g.rows64(), f)
}

#[derive(Default)]
struct EdgeAcc {
    best: Option<usize>,
    certs: Vec<Small>,
    seen: u64,
}

fn fold_edges(graphs: &[Small], f: &ForestPattern) -> EdgeAcc {
    let mut acc = EdgeAcc {
        seen: graphs.len() as u64,
        ..EdgeAcc::default()
    };
    for g in graphs {
        let e = g.edge_count();
        if acc.best.is_some_and(|b| e < b) || !free(g, f) {
            continue;
        }
        if acc.best.map_or(true, |b| e > b) {
            acc.best = Some(e);
            acc.certs.clear();
        }
        acc.certs.push(*g);
    }
    acc
}

fn finish_edges(accs: Vec<EdgeAcc>, f: &ForestPattern, n: usize, universe: Universe, start: Instant) -> SearchReport {
    let best = accs.iter().filter_map(|a| a.best).max();
    let certs: BTreeSet<String> = accs
        .iter()
        .filter(|a| a.best.is_some() && a.best == best)
        .flat_map(|a| a.certs.iter().map(canonical_g6))
        .collect();
    SearchReport {
        objective: Objective::Edges,
        pattern: f.to_string(),
        n,
        universe,
        best_value: best.map(|b| BestValue::Edges(b as u64)),
        certificates: certs.into_iter().collect(),
        certificate_rho: Vec::new(),
        tol: None,
        enumerated: accs.iter().map(|a| a.seen).sum(),
        elapsed: start.elapsed(),
    }
}

/// `ex(n, F)` by exhaustive search, with every extremal graph.
pub fn brute_ex(n: usize, f: &ForestPattern, opts: &SearchOptions) -> Result<SearchReport> {
    check_order(n, opts)?;
    let start = Instant::now();
    let accs = map_final(n, opts, |cs| fold_edges(cs, f))?;
    Ok(finish_edges(accs, f, n, Universe::Generated, start))
}

#[derive(Default)]
struct RhoAcc {
    best: f64,
    certs: Vec<(f64, Small)>,
    seen: u64,
}

fn small_hong(g: &Small) -> f64 {
    let n = g.n as f64;
    let delta = (0..g.n).map(|v| g.degree(v)).min().unwrap_or(0) as f64;
    let e = g.edge_count() as f64;
    let radicand = 8.0 * e - 4.0 * delta * n + (delta + 1.0).powi(2);
    (delta - 1.0 + radicand.max(0.0).sqrt()) / 2.0
}

fn fold_rho(graphs: &[Small], f: &ForestPattern, tol: f64) -> Result<RhoAcc> {
    let mut acc = RhoAcc {
        best: f64::NEG_INFINITY,
        seen: graphs.len() as u64,
        ..RhoAcc::default()
    };
    for g in graphs {
        // The bound is slightly padded so rounding never discards a tie.
        if small_hong(g) + 1e-9 < acc.best - tol || !free(g, f) {
            continue;
        }
        let graph = g.to_graph();
        let rho = spectral::spectral_radius(&graph).map_err(|e| Error::InGraph {
            graph6: graph6_encode(&graph),
            source: Box::new(e),
        })?;
        if rho > acc.best {
            acc.best = rho;
            let floor = rho - tol;
            acc.certs.retain(|(r, _)| *r >= floor);
        }
        if rho >= acc.best - tol {
            acc.certs.push((rho, *g));
        }
    }
    Ok(acc)
}

fn finish_rho(
    accs: Vec<RhoAcc>,
    f: &ForestPattern,
    n: usize,
    tol: f64,
    universe: Universe,
    start: Instant,
) -> SearchReport {
    let best = accs.iter().map(|a| a.best).fold(f64::NEG_INFINITY, f64::max);
    let mut certs: Vec<(String, f64)> = accs
        .iter()
        .flat_map(|a| a.certs.iter())
        .filter(|(r, _)| *r >= best - tol)
        .map(|(r, g)| (canonical_g6(g), *r))
        .collect();
    certs.sort_by(|a, b| a.0.cmp(&b.0));
    certs.dedup_by(|a, b| a.0 == b.0);
    SearchReport {
        objective: Objective::Rho,
        pattern: f.to_string(),
        n,
        universe,
        best_value: best.is_finite().then_some(BestValue::Rho(best)),
        certificate_rho: certs.iter().map(|c| c.1).collect(),
        certificates: certs.into_iter().map(|c| c.0).collect(),
        tol: Some(tol),
        enumerated: accs.iter().map(|a| a.seen).sum(),
        elapsed: start.elapsed(),
    }
}

/// Maximum spectral radius among `F`-free graphs on `n` vertices, with every
/// graph within `opts.tol` of it.
pub fn brute_ex_sp(n: usize, f: &ForestPattern, opts: &SearchOptions) -> Result<SearchReport> {
    check_order(n, opts)?;
    let start = Instant::now();
    let accs = map_final(n, opts, |cs| fold_rho(cs, f, opts.tol))?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(finish_rho(accs, f, n, opts.tol, Universe::Generated, start))
}

const CHUNK: usize = 512;

/// Converts an external graph list, dropping isomorphic repeats (first
/// occurrence wins). All graphs must share one order.
fn external(graphs: &[Graph]) -> Result<(usize, Vec<Small>)> {
    let Some(first) = graphs.first() else {
        return Err(Error::arg("the graph list is empty"));
    };
    let n = first.order();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        if g.order() != n {
            return Err(Error::arg(format!(
                "graph {i} has order {} but the first graph has order {n}",
                g.order()
            )));
        }
        let s = Small::from_graph(g)?;
        if seen.insert(canonize(&s).code) {
            out.push(s);
        }
    }
    Ok((n, out))
}

/// [`brute_ex`] over a caller-supplied universe (e.g. a third-party
/// generator's output).
pub fn brute_ex_in(graphs: &[Graph], f: &ForestPattern, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let (n, smalls) = external(graphs)?;
    let accs = opts
        .pool()?
        .install(|| smalls.par_chunks(CHUNK).map(|c| fold_edges(c, f)).collect());
    Ok(finish_edges(accs, f, n, Universe::Graph6List, start))
}

pub fn brute_ex_sp_in(graphs: &[Graph], f: &ForestPattern, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let (n, smalls) = external(graphs)?;
    let accs = opts
        .pool()?
        .install(|| {
            smalls
                .par_chunks(CHUNK)
                .map(|c| fold_rho(c, f, opts.tol))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(finish_rho(accs, f, n, opts.tol, Universe::Graph6List, start))
}

/// `ex(n, F)` by branch and bound over labelled graphs, independent of the
/// generator above.
///
/// Rows are filled in vertex order. Later vertices with identical adjacency
/// to the finished rows are interchangeable, so within each such class only
/// the number of neighbours is chosen (always a prefix of the class). A
/// partial graph that already contains `F` is abandoned, as is any branch
/// that cannot beat the incumbent even with every undecided pair present.
pub fn maximal_free_count(n: usize, f: &ForestPattern) -> Result<u64> {
    if !(1..=MAX_SEARCH_ORDER).contains(&n) {
        return Err(Error::arg(format!(
            "search order must be between 1 and {MAX_SEARCH_ORDER}, got {n}"
        )));
    }
    if f.total_order() <= 1 {
        // Contained in every graph with a vertex; no graph qualifies.
        return Err(Error::Precondition(format!("every graph on {n} vertices contains {f}")));
    }
    let mut bb = Bnb {
        n,
        f,
        best: 0,
        rows: vec![0; n],
    };
    if !contains_forest_rows(bb.rows.clone(), f) {
        bb.row(0, 0, vec![(0, n)]);
    } else {
        return Err(Error::Precondition(format!("every graph on {n} vertices contains {f}")));
    }
    Ok(bb.best as u64)
}

struct Bnb<'a> {
    n: usize,
    f: &'a ForestPattern,
    best: usize,
    rows: Vec<u64>,
}

impl Bnb<'_> {
    /// Decides the neighbours of `i` among later vertices. `classes` are the
    /// half-open intervals of interchangeable vertices covering `i..n`.
    fn row(&mut self, i: usize, edges: usize, classes: Vec<(usize, usize)>) {
        let rest = self.n - i;
        if edges + rest * rest.saturating_sub(1) / 2 <= self.best {
            return;
        }
        if rest <= 1 {
            self.best = self.best.max(edges);
            return;
        }
        let mut later = classes;
        later[0].0 += 1;
        if later[0].0 == later[0].1 {
            later.remove(0);
        }
        let mut counts = vec![0; later.len()];
        self.choose(i, edges, &later, 0, &mut counts);
    }

    fn choose(&mut self, i: usize, edges: usize, later: &[(usize, usize)], c: usize, counts: &mut Vec<usize>) {
        if c == later.len() {
            let mut added = 0;
            let mut next = Vec::with_capacity(later.len() * 2);
            for (&(a, b), &k) in later.iter().zip(counts.iter()) {
                for v in a..a + k {
                    self.rows[i] |= 1 << v;
                    self.rows[v] |= 1 << i;
                }
                added += k;
                if k > 0 {
                    next.push((a, a + k));
                }
                if a + k < b {
                    next.push((a + k, b));
                }
            }
            if added == 0 || !contains_forest_rows(self.rows.clone(), self.f) {
                self.row(i + 1, edges + added, next);
            }
            for (&(a, _), &k) in later.iter().zip(counts.iter()) {
                for v in a..a + k {
                    self.rows[i] &= !(1 << v);
                    self.rows[v] &= !(1 << i);
                }
            }
            return;
        }
        let (a, b) = later[c];
        let decided: usize = counts[..c].iter().sum();
        let open: usize = later[c..].iter().map(|(a, b)| b - a).sum();
        let rest = self.n - i - 1;
        for k in (0..=b - a).rev() {
            // Row i gets at most `decided + open` edges; the rest of the
            // graph at most C(rest, 2).
            let cap = edges + decided + k + (open - (b - a)) + rest * rest.saturating_sub(1) / 2;
            if cap <= self.best {
                break;
            }
            counts[c] = k;
            self.choose(i, edges, later, c + 1, counts);
        }
        counts[c] = 0;
    }
}
