//! Spectral radius, the Perron vector and the level-set diagnostics built on
//! top of it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::ExtremalFamily;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Iterations without a halving of the residual before the iteration is
/// restarted from a perturbed vector.
const STALL_WINDOW: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Unit 2-norm, nonnegative, supported on the component attaining `rho`.
    pub vector: Vec<f64>,
    /// `‖Ax − ρx‖₂`.
    pub residual: f64,
    pub iterations: usize,
}

struct ComponentRun {
    rho: f64,
    x: Vec<f64>,
    residual: f64,
    iterations: usize,
}

/// Neumaier's compensated sum. Plain summation over a few hundred
/// neighbours leaves the residual stuck near 1e-12.
fn csum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0;
    for x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + comp
}

fn norm(x: &[f64]) -> f64 {
    csum(x.iter().map(|v| v * v)).sqrt()
}

fn mul(adj: &[Vec<usize>], x: &[f64], y: &mut [f64]) {
    for (v, nbrs) in adj.iter().enumerate() {
        y[v] = csum(nbrs.iter().map(|&u| x[u]));
    }
}

/// Power iteration on `A + I` for one connected component given by local
/// adjacency lists. The shift keeps bipartite components from oscillating.
fn iterate_component(adj: &[Vec<usize>], tol: f64, max_iter: usize) -> ComponentRun {
    let m = adj.len();
    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    let mut y = vec![0.0; m];
    let mut best = ComponentRun {
        rho: 0.0,
        x: x.clone(),
        residual: f64::INFINITY,
        iterations: 0,
    };
    let mut checkpoint = f64::INFINITY;
    let mut since_checkpoint = 0;
    let mut restarted = false;

    for it in 1..=max_iter {
        mul(adj, &x, &mut y);
        let rho = csum(x.iter().zip(&y).map(|(a, b)| a * b));
        let residual = csum(x.iter().zip(&y).map(|(a, b)| (b - rho * a).powi(2))).sqrt();
        if residual < best.residual {
            best = ComponentRun {
                rho,
                x: x.clone(),
                residual,
                iterations: it,
            };
        }
        if residual <= tol {
            break;
        }

        since_checkpoint += 1;
        if residual <= 0.5 * checkpoint {
            checkpoint = residual;
            since_checkpoint = 0;
        } else if since_checkpoint >= STALL_WINDOW && !restarted {
            restarted = true;
            since_checkpoint = 0;
            for (v, xv) in x.iter_mut().enumerate() {
                *xv += 1e-3 * ((v % 7) as f64 + 1.0) / 7.0;
            }
            let s = norm(&x);
            x.iter_mut().for_each(|v| *v /= s);
            continue;
        }

        for (a, b) in x.iter_mut().zip(&y) {
            *a += b;
        }
        let s = norm(&x);
        x.iter_mut().for_each(|v| *v /= s);
    }
    best.iterations = best.iterations.max(1);
    best
}

/// Perron root and vector of `G`.
///
/// Starts from the normalized all-ones vector on each connected component
/// and returns the component with the largest root, zero elsewhere. Ties go
/// to the component containing the smallest vertex.
pub fn power_iteration(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::arg("power iteration needs at least one vertex"));
    }
    if !(tol > 0.0) {
        return Err(Error::arg(format!("tolerance must be positive, got {tol}")));
    }

    let mut best: Option<(Vec<usize>, ComponentRun)> = None;
    let mut total_iterations = 0;
    for comp in g.components() {
        let verts: Vec<usize> = comp.iter().collect();
        let run = if verts.len() == 1 {
            ComponentRun {
                rho: 0.0,
                x: vec![1.0],
                residual: 0.0,
                iterations: 0,
            }
        } else {
            let mut local = vec![usize::MAX; n];
            for (i, &v) in verts.iter().enumerate() {
                local[v] = i;
            }
            let adj: Vec<Vec<usize>> = verts
                .iter()
                .map(|&v| g.neighbors(v).iter().map(|u| local[u]).collect())
                .collect();
            iterate_component(&adj, tol, max_iter)
        };
        total_iterations += run.iterations;
        if run.residual > tol {
            return Err(Error::Convergence {
                rho: run.rho,
                residual: run.residual,
                iterations: run.iterations,
            });
        }
        let better = match &best {
            None => true,
            Some((_, b)) => run.rho > b.rho + tol,
        };
        if better {
            best = Some((verts, run));
        }
    }

    let (verts, run) = best.expect("n >= 1 gives at least one component");
    let mut vector = vec![0.0; n];
    for (&v, &xv) in verts.iter().zip(&run.x) {
        vector[v] = xv.abs();
    }
    Ok(SpectralResult {
        rho: run.rho,
        vector,
        residual: run.residual,
        iterations: total_iterations,
    })
}

/// `ρ(G)` with the default tolerance; `0` for the empty graph.
pub fn spectral_radius(g: &Graph) -> Result<f64> {
    if g.order() == 0 {
        return Ok(0.0);
    }
    power_iteration(g, DEFAULT_TOL, DEFAULT_MAX_ITER).map(|r| r.rho)
}

/// `ρ(S_{n,p}) = (p − 1 + √(4pn − 4p² + (p − 1)²)) / 2`.
pub fn rho_split_closed(n: usize, p: usize) -> Result<f64> {
    if p < 1 || p > n {
        return Err(Error::arg(format!("need 1 <= p <= n (p = {p}, n = {n})")));
    }
    let (n, p) = (n as f64, p as f64);
    Ok((p - 1.0 + (4.0 * p * n - 4.0 * p * p + (p - 1.0).powi(2)).sqrt()) / 2.0)
}

/// Upper bound `(δ − 1 + √(8e − 4δn + (δ + 1)²)) / 2` on `ρ(G)` in terms of
/// the minimum degree `δ`.
pub fn hong_bound(g: &Graph) -> Result<f64> {
    let n = g.order();
    if n == 0 {
        return Err(Error::arg("the bound needs at least one vertex"));
    }
    let delta = g.min_degree() as f64;
    let e = g.edge_count() as f64;
    let radicand = 8.0 * e - 4.0 * delta * n as f64 + (delta + 1.0).powi(2);
    Ok((delta - 1.0 + radicand.max(0.0).sqrt()) / 2.0)
}

/// An equitable partition together with its quotient matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquitablePartition {
    pub cells: Vec<Vec<usize>>,
    /// `quotient[i][j]`: neighbours in cell `j` of any vertex of cell `i`.
    pub quotient: Vec<Vec<u64>>,
}

impl EquitablePartition {
    /// Checks that `cells` partitions `V(G)` and that every vertex of a cell
    /// sees the same number of neighbours in each cell.
    pub fn new(g: &Graph, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = VertexSet::new();
        for &v in cells.iter().flatten() {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::arg(format!("vertex {v} appears in two cells")));
            }
        }
        if seen.len() != g.order() {
            return Err(Error::arg("cells do not cover every vertex"));
        }
        if cells.iter().any(|c| c.is_empty()) {
            return Err(Error::arg("empty cell"));
        }
        let sets: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut quotient = Vec::with_capacity(cells.len());
        for cell in &cells {
            let first = g.neighbors(cell[0]);
            let row: Vec<u64> = sets
                .iter()
                .map(|s| first.intersection_len(s) as u64)
                .collect();
            for &v in &cell[1..] {
                let nv = g.neighbors(v);
                for (j, s) in sets.iter().enumerate() {
                    if nv.intersection_len(s) as u64 != row[j] {
                        return Err(Error::Precondition(format!(
                            "partition is not equitable: vertex {v} has {} neighbours in cell {j}, \
                             cell representative {} has {}",
                            nv.intersection_len(s),
                            cell[0],
                            row[j]
                        )));
                    }
                }
            }
            quotient.push(row);
        }
        Ok(EquitablePartition { cells, quotient })
    }
}

/// The natural equitable partition of a named construction: hubs, then one
/// cell per class of remaining vertices. Empty cells are dropped.
pub fn equitable_from_family(f: &ExtremalFamily) -> Result<EquitablePartition> {
    let g = f.build()?;
    let range = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    let cells = match *f {
        ExtremalFamily::Split { n, h } => vec![range(0, h), range(h, n)],
        ExtremalFamily::SplitPlus { n, h } => {
            vec![range(0, h), range(h, h + 2), range(h + 2, n)]
        }
        ExtremalFamily::CliqueJoinCliques { n, k, r, .. } => {
            vec![range(0, k), range(k, n - r), range(n - r, n)]
        }
        ExtremalFamily::LinearForestExtremal { n, k } => {
            let hubs = k - 1;
            let s = (n - hubs) % 2;
            vec![range(0, hubs), range(hubs, n - s), range(n - s, n)]
        }
        ExtremalFamily::CliqueUnionEmpty { n, c } => vec![range(0, c), range(c, n)],
    };
    EquitablePartition::new(&g, cells.into_iter().filter(|c| !c.is_empty()).collect())
}

fn det_shifted(q: &[Vec<f64>], x: f64) -> f64 {
    match q.len() {
        1 => x - q[0][0],
        2 => (x - q[0][0]) * (x - q[1][1]) - q[0][1] * q[1][0],
        3 => {
            let m = |i: usize, j: usize| if i == j { x - q[i][j] } else { -q[i][j] };
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => unreachable!("bisection is only used for at most three cells"),
    }
}

/// Largest eigenvalue of the quotient matrix.
///
/// For up to three cells the characteristic polynomial is bisected (200
/// steps) between `max(0, largest critical point)` and the largest row sum;
/// the quotient of an equitable partition has a real spectrum, so the
/// polynomial is increasing there. Larger quotients fall back to power
/// iteration on `Q + I`.
pub fn quotient_rho(p: &EquitablePartition, tol: f64) -> Result<f64> {
    let c = p.quotient.len();
    if c == 0 {
        return Err(Error::arg("quotient has no cells"));
    }
    let q: Vec<Vec<f64>> = p
        .quotient
        .iter()
        .map(|row| row.iter().map(|&v| v as f64).collect())
        .collect();
    let hi = q.iter().map(|row| row.iter().sum::<f64>()).fold(0.0, f64::max);

    if c <= 3 {
        let lo = match c {
            1 => return Ok(q[0][0]),
            2 => (q[0][0] + q[1][1]) / 2.0,
            _ => {
                let a = q[0][0] + q[1][1] + q[2][2];
                let b = q[0][0] * q[1][1] + q[0][0] * q[2][2] + q[1][1] * q[2][2]
                    - q[0][1] * q[1][0]
                    - q[0][2] * q[2][0]
                    - q[1][2] * q[2][1];
                let disc = 4.0 * a * a - 12.0 * b;
                if disc >= 0.0 {
                    (2.0 * a + disc.sqrt()) / 6.0
                } else {
                    0.0
                }
            }
        };
        let (mut lo, mut hi) = (lo.clamp(0.0, hi), hi);
        if det_shifted(&q, lo) >= 0.0 {
            return Ok(lo);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if det_shifted(&q, mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(0.5 * (lo + hi));
    }

    let mut x = vec![1.0 / (c as f64).sqrt(); c];
    let mut residual = f64::INFINITY;
    let mut rho = 0.0;
    for _ in 0..DEFAULT_MAX_ITER {
        let y: Vec<f64> = q
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        let xx: f64 = x.iter().map(|v| v * v).sum();
        rho = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / xx;
        residual = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - rho * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            return Ok(rho);
        }
        let mut z: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a + b).collect();
        let s = norm(&z);
        z.iter_mut().for_each(|v| *v /= s);
        x = z;
    }
    Err(Error::Convergence {
        rho,
        residual,
        iterations: DEFAULT_MAX_ITER,
    })
}

/// Parameters of the level-set analysis for `kS_{ℓ−1} ∪ P_ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelParams {
    pub k: usize,
    pub l: usize,
    /// `k + ⌊ℓ/2⌋ − 1`.
    pub h: usize,
    /// `(ℓ² − ℓ + 1)k + (ℓ² + 3ℓ − 2)/2`.
    pub t: u64,
    /// `1 / (2(h + 1)t²)`.
    pub alpha: f64,
}

impl LevelParams {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k < 1 || l < 4 {
            return Err(Error::arg(format!("need k >= 1 and ℓ >= 4 (k = {k}, ℓ = {l})")));
        }
        let (kk, ll) = (k as u64, l as u64);
        let h = k + l / 2 - 1;
        let t = (ll * ll - ll + 1) * kk + (ll * ll + 3 * ll - 2) / 2;
        let alpha = 1.0 / (2.0 * (h as f64 + 1.0) * (t as f64).powi(2));
        Ok(LevelParams { k, l, h, t, alpha })
    }

    /// Threshold ratio `1 / (2(h + 1))` defining `R″`.
    pub fn top_ratio(&self) -> f64 {
        1.0 / (2.0 * (self.h as f64 + 1.0))
    }
}

/// Perron level sets `R ⊇ R′ ⊇ R″`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSets {
    #[serde(flatten)]
    pub params: LevelParams,
    pub rho: f64,
    /// Vertex with the largest Perron entry (smallest index on ties).
    pub z: usize,
    pub x_z: f64,
    /// `{v : x_v > α x_z}`.
    #[serde(rename = "R")]
    pub r: VertexSet,
    /// `{v : x_v > 4α x_z}`.
    #[serde(rename = "Rp")]
    pub r_prime: VertexSet,
    /// `{v : x_v ≥ x_z / (2(h + 1))}`.
    #[serde(rename = "Rpp")]
    pub r_double_prime: VertexSet,
    /// Vertices whose entry lies within `tol` of one of the three thresholds,
    /// where rounding could flip membership.
    #[serde(rename = "boundary_flags")]
    pub boundary: VertexSet,
    #[serde(skip)]
    pub vector: Vec<f64>,
}

pub fn perron_level_sets(g: &Graph, k: usize, l: usize, tol: f64) -> Result<LevelSets> {
    let params = LevelParams::new(k, l)?;
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Precondition("level sets need a connected graph".into()));
    }
    let spec = power_iteration(g, tol, DEFAULT_MAX_ITER)?;
    let x = &spec.vector;
    let x_max = x.iter().copied().fold(0.0, f64::max);
    let z = x
        .iter()
        .position(|&v| v >= x_max - tol)
        .expect("nonempty vector");
    let x_z = x[z];

    let low = params.alpha * x_z;
    let mid = 4.0 * params.alpha * x_z;
    let top = params.top_ratio() * x_z;
    let mut sets = LevelSets {
        params,
        rho: spec.rho,
        z,
        x_z,
        r: VertexSet::new(),
        r_prime: VertexSet::new(),
        r_double_prime: VertexSet::new(),
        boundary: VertexSet::new(),
        vector: spec.vector.clone(),
    };
    for (v, &xv) in x.iter().enumerate() {
        if xv > low {
            sets.r.insert(v);
        }
        if xv > mid {
            sets.r_prime.insert(v);
        }
        if xv >= top {
            sets.r_double_prime.insert(v);
        }
        if [low, mid, top].iter().any(|&th| (xv - th).abs() < tol) {
            sets.boundary.insert(v);
        }
    }
    Ok(sets)
}

/// Structural predicates on the complement of `R″`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureClaims {
    /// `G[V ∖ R″]` is `S_{ℓ−1}`-free.
    #[serde(rename = "A")]
    pub star_free: bool,
    /// `z` is adjacent to every vertex outside `R″`.
    #[serde(rename = "B")]
    pub z_dominates: bool,
    /// No edge outside `R″`.
    #[serde(rename = "C")]
    pub no_outside_edge: bool,
    /// At most one edge outside `R″`.
    #[serde(rename = "D")]
    pub at_most_one_outside_edge: bool,
    /// `G[R″]` is complete.
    #[serde(rename = "Rpp_complete")]
    pub core_complete: bool,
    /// Every vertex of `R″` is adjacent to every vertex outside it.
    pub dominating: bool,
    pub outside_edges: usize,
    #[serde(rename = "Rpp")]
    pub core: VertexSet,
    pub z: usize,
}

pub fn structure_claims(g: &Graph, k: usize, l: usize, tol: f64) -> Result<StructureClaims> {
    let sets = perron_level_sets(g, k, l, tol)?;
    Ok(claims_from_level_sets(g, &sets))
}

pub fn claims_from_level_sets(g: &Graph, sets: &LevelSets) -> StructureClaims {
    let core = sets.r_double_prime.clone();
    let outside = g.vertices().difference(&core);
    let outside_edges = g.edges_within(&outside).expect("subset of V(G)");
    let max_outside_degree = outside
        .iter()
        .map(|v| g.neighbors(v).intersection_len(&outside))
        .max()
        .unwrap_or(0);
    let z_nbrs = g.neighbors(sets.z);
    let core_complete = core
        .iter()
        .all(|v| g.neighbors(v).intersection_len(&core) + 1 == core.len());
    let dominating = core.iter().all(|v| outside.is_subset(&g.neighbors(v)));
    StructureClaims {
        star_free: max_outside_degree < sets.params.l - 1,
        z_dominates: outside.is_subset(&z_nbrs),
        no_outside_edge: outside_edges == 0,
        at_most_one_outside_edge: outside_edges <= 1,
        core_complete,
        dominating,
        outside_edges,
        core,
        z: sets.z,
    }
}

/// `ρ` of a named construction through its quotient matrix.
pub fn family_rho(f: &ExtremalFamily) -> Result<f64> {
    quotient_rho(&equitable_from_family(f)?, DEFAULT_TOL)
}

/// `tr(A²) = Σ deg(v)`.
pub fn trace_of_square(g: &Graph) -> usize {
    g.degrees().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, complete, cycle, empty, path, star};

    const GOLDEN: f64 = 1.618_033_988_749_895;

    fn rho(g: &Graph) -> f64 {
        power_iteration(g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap().rho
    }

    #[test]
    fn power_iteration_examples() {
        assert!((rho(&complete(3).unwrap()) - 2.0).abs() < 1e-12);
        assert!((rho(&star(4).unwrap()) - 2.0).abs() < 1e-12);
        assert!((rho(&path(4).unwrap()) - GOLDEN).abs() < 1e-12);
        assert_eq!(rho(&empty(3).unwrap()), 0.0);
        assert!(power_iteration(&empty(0).unwrap(), 1e-12, 10).is_err());
    }

    #[test]
    fn perron_vector_is_unit_and_positive() {
        let r = power_iteration(&path(5).unwrap(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let s: f64 = r.vector.iter().map(|v| v * v).sum();
        assert!((s.sqrt() - 1.0).abs() < 1e-12);
        assert!(r.vector.iter().all(|&v| v > 0.0));
        assert!(r.residual <= DEFAULT_TOL);
    }

    #[test]
    fn disconnected_graph_uses_largest_component() {
        // K3 ∪ P2: ρ = 2 from the triangle, zeros on the edge.
        let g = families::union(&complete(3).unwrap(), &path(2).unwrap()).unwrap();
        let r = power_iteration(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-12);
        assert_eq!(&r.vector[3..], &[0.0, 0.0]);
    }

    #[test]
    fn non_convergence_carries_best_estimate() {
        match power_iteration(&path(30).unwrap(), 1e-14, 3) {
            Err(Error::Convergence { rho, iterations, .. }) => {
                assert!(rho > 1.0);
                assert!(iterations <= 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn split_closed_form() {
        assert!((rho_split_closed(7, 7).unwrap() - 6.0).abs() < 1e-12);
        assert!((rho_split_closed(5, 1).unwrap() - 2.0).abs() < 1e-12);
        let expect = (1.0 + 65f64.sqrt()) / 2.0;
        assert!((rho_split_closed(10, 2).unwrap() - expect).abs() < 1e-12);
        assert!((expect - 4.531_128_874_149_275).abs() < 1e-12);
        let g = ExtremalFamily::Split { n: 10, h: 2 }.build().unwrap();
        assert!((rho(&g) - expect).abs() < 1e-10);
        assert!(rho_split_closed(3, 4).is_err());
        assert!(rho_split_closed(3, 0).is_err());
    }

    #[test]
    fn hong_bound_examples() {
        assert!((hong_bound(&complete(6).unwrap()).unwrap() - 5.0).abs() < 1e-12);
        let s = ExtremalFamily::Split { n: 10, h: 2 }.build().unwrap();
        assert!((hong_bound(&s).unwrap() - (1.0 + 65f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(hong_bound(&empty(5).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn equitable_partitions_of_families() {
        let p = equitable_from_family(&ExtremalFamily::Split { n: 10, h: 3 }).unwrap();
        assert_eq!(p.quotient, vec![vec![2, 7], vec![3, 0]]);
        // largest root of x² − 2x − 21
        let expect = 1.0 + 22f64.sqrt();
        assert!((quotient_rho(&p, DEFAULT_TOL).unwrap() - expect).abs() < 1e-12);

        let p = equitable_from_family(&ExtremalFamily::SplitPlus { n: 12, h: 2 }).unwrap();
        assert_eq!(p.quotient, vec![vec![1, 2, 8], vec![2, 1, 0], vec![2, 0, 0]]);

        let f = ExtremalFamily::CliqueJoinCliques { n: 28, k: 1, l: 4, r: 0 };
        let p = equitable_from_family(&f).unwrap();
        assert_eq!(p.quotient, vec![vec![0, 27], vec![1, 2]]);
        let expect = 1.0 + 28f64.sqrt();
        assert!((quotient_rho(&p, DEFAULT_TOL).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn quotient_rho_edge_cases() {
        let zero = EquitablePartition {
            cells: vec![vec![0], vec![1]],
            quotient: vec![vec![0, 0], vec![0, 0]],
        };
        assert_eq!(quotient_rho(&zero, DEFAULT_TOL).unwrap(), 0.0);
        let regular = EquitablePartition::new(&cycle(6).unwrap(), vec![(0..6).collect()]).unwrap();
        assert_eq!(quotient_rho(&regular, DEFAULT_TOL).unwrap(), 2.0);
        // four cells exercise the power-iteration fallback: P4 ends / middles
        // split as {0},{1},{2},{3}.
        let p4 = path(4).unwrap();
        let p = EquitablePartition::new(&p4, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert!((quotient_rho(&p, DEFAULT_TOL).unwrap() - GOLDEN).abs() < 1e-10);
    }

    #[test]
    fn non_equitable_partition_rejected() {
        let p4 = path(4).unwrap();
        let err = EquitablePartition::new(&p4, vec![vec![0, 1], vec![2, 3]]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(EquitablePartition::new(&p4, vec![vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn level_params() {
        let p = LevelParams::new(1, 4).unwrap();
        assert_eq!((p.h, p.t), (2, 26));
        assert!((p.alpha - 1.0 / (6.0 * 676.0)).abs() < 1e-18);
        assert!(LevelParams::new(0, 4).is_err());
        assert!(LevelParams::new(1, 3).is_err());
    }

    #[test]
    fn level_sets_examples() {
        let k7 = complete(7).unwrap();
        let ls = perron_level_sets(&k7, 1, 4, DEFAULT_TOL).unwrap();
        assert_eq!(ls.r_double_prime.len(), 7);

        let big = ExtremalFamily::Split { n: 200, h: 2 }.build().unwrap();
        let ls = perron_level_sets(&big, 1, 4, DEFAULT_TOL).unwrap();
        assert_eq!(ls.r_double_prime.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(ls.r_double_prime.is_subset(&ls.r_prime));
        assert!(ls.r_prime.is_subset(&ls.r));

        let small = ExtremalFamily::Split { n: 20, h: 2 }.build().unwrap();
        let ls = perron_level_sets(&small, 1, 4, DEFAULT_TOL).unwrap();
        assert_eq!(ls.r_double_prime.len(), 20);

        let disconnected = empty(3).unwrap();
        assert!(matches!(
            perron_level_sets(&disconnected, 1, 4, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn structure_claims_examples() {
        let g = ExtremalFamily::Split { n: 200, h: 2 }.build().unwrap();
        let c = structure_claims(&g, 1, 4, DEFAULT_TOL).unwrap();
        assert!(c.star_free && c.z_dominates && c.no_outside_edge);
        assert_eq!(c.outside_edges, 0);
        assert!(c.core_complete && c.dominating);

        let g = ExtremalFamily::SplitPlus { n: 200, h: 2 }.build().unwrap();
        let c = structure_claims(&g, 1, 5, DEFAULT_TOL).unwrap();
        assert!(c.at_most_one_outside_edge);
        assert!(!c.no_outside_edge);
        assert_eq!(c.outside_edges, 1);

        let c = structure_claims(&cycle(6).unwrap(), 1, 4, DEFAULT_TOL).unwrap();
        assert_eq!(c.core.len(), 6);
        assert!(c.star_free && c.z_dominates && c.no_outside_edge && c.at_most_one_outside_edge);
    }
}
