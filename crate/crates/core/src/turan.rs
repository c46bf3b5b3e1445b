//! Closed-form Turán numbers for paths, stars and star-path forests, their
//! applicability thresholds, and the predicted (spectral) extremal families.
//!
//! All values are exact integers. Thresholds are `u128` because several of
//! them are astronomically large; arithmetic that would overflow even that
//! is reported as an error.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::ExtremalFamily;
use crate::pattern::ForestPattern;

/// A Turán value together with the branch that produced it and whether the
/// underlying result actually covers this `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuranValue {
    pub value: u64,
    pub case: String,
    pub guaranteed: bool,
    #[serde(serialize_with = "crate::numfmt::wide_integer")]
    pub threshold: u128,
}

/// Predicted extremal graphs for a pattern at order `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub pattern: String,
    pub n: usize,
    pub families: Vec<ExtremalFamily>,
    #[serde(serialize_with = "crate::numfmt::wide_integer")]
    pub threshold: u128,
    pub source: &'static str,
    pub guaranteed: bool,
    /// Other recognized shapes the same pattern also matches.
    pub ties: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

/// Set when the published statement cannot be right as printed; carries the
/// families of the consistent alternative reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub note: String,
    pub alternative_reading: String,
    pub alternative_families: Vec<ExtremalFamily>,
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} does not fit in 128 bits"))
}

/// Maximum edge count of a connected `n`-vertex graph with no path on `k+1`
/// vertices (`n > k >= 3`).
pub fn turan_connected_path_bound(n: usize, k: usize) -> Result<u64> {
    if k < 3 || n <= k {
        return Err(Error::arg(format!("need n > k >= 3, got n = {n}, k = {k}")));
    }
    let (n, k) = (n as u64, k as u64);
    let half_up = (k + 2) / 2;
    let a = choose2(k - 1) + (n - k + 1);
    let b = choose2(half_up) + (k - 1) / 2 * (n - half_up);
    Ok(a.max(b))
}

/// `⌊(ℓ−1)n/2⌋`, the largest edge count without a star `S_ℓ`
/// (`ℓ >= 3`, `n >= ℓ+1`).
pub fn turan_star_bound(n: usize, l: usize) -> Result<u64> {
    if l < 3 || n < l + 1 {
        return Err(Error::arg(format!("need ℓ >= 3 and n >= ℓ + 1, got n = {n}, ℓ = {l}")));
    }
    Ok((l as u64 - 1) * n as u64 / 2)
}

/// `ex(n, kS_ℓ)` for `k >= 2`, `ℓ >= 3`, valid for every `n`.
pub fn turan_star_forest(n: usize, k: usize, l: usize) -> Result<TuranValue> {
    if k < 2 || l < 3 || n < 1 {
        return Err(Error::arg(format!(
            "need k >= 2, ℓ >= 3, n >= 1, got n = {n}, k = {k}, ℓ = {l}"
        )));
    }
    let (n, k, l) = (n as u64, k as u64, l as u64);
    let big = k * l + k - 1;
    let (value, case) = if n < k * (l + 1) {
        (choose2(n), "n<k(l+1)")
    } else if n <= (k + 1) * l + k - 1 {
        (choose2(big) + choose2(n - big), "k(l+1)<=n<=(k+1)l+k-1")
    } else if 2 * n < k * l * l + 2 * k * l + 2 * k - 2 {
        (
            choose2(big) + (l - 1) * (n - big) / 2,
            "(k+1)l+k<=n<(kl^2+2kl+2k-2)/2",
        )
    } else {
        (
            choose2(k - 1) + (n - k + 1) * (k - 1) + (l - 1) * (n - k + 1) / 2,
            "n>=(kl^2+2kl+2k-2)/2",
        )
    };
    Ok(TuranValue {
        value,
        case: case.to_string(),
        guaranteed: true,
        threshold: 1,
    })
}

fn check_star_path(k: usize, l: usize) -> Result<()> {
    if k < 1 || l < 4 {
        return Err(Error::arg(format!("need k >= 1 and ℓ >= 4, got k = {k}, ℓ = {l}")));
    }
    Ok(())
}

/// Smallest `n` for which the closed form of `ex(n, kS_{ℓ−1} ∪ P_ℓ)` is
/// proved: `(ℓ²−ℓ+1)k + (ℓ²+3ℓ−2)/2`.
pub fn star_path_threshold(k: usize, l: usize) -> u128 {
    let (k, l) = (k as u128, l as u128);
    (l * l - l + 1) * k + (l * l + 3 * l - 2) / 2
}

/// `ex(n, kS_{ℓ−1} ∪ P_ℓ)` with its extremal graphs.
///
/// Writing `n = k + d(ℓ−1) + r` with `0 <= r < ℓ−1`, the value is
/// `[(2k+ℓ−2)n − k² − (ℓ−1)(k+r) + r²] / 2`, which is always an integer and
/// equals `e(K_k ∨ (dK_{ℓ−1} ∪ K_r))`. For even `ℓ` and `r ∈ {ℓ/2, ℓ/2−1}`
/// the split graph `S_{n, k+ℓ/2−1}` ties.
pub fn turan_star_path(n: usize, k: usize, l: usize) -> Result<(TuranValue, Prediction)> {
    check_star_path(k, l)?;
    let cjc = ExtremalFamily::clique_join_cliques(n, k, l)?;
    let ExtremalFamily::CliqueJoinCliques { r, .. } = cjc else {
        unreachable!()
    };
    let (ni, ki, li, ri) = (n as i128, k as i128, l as i128, r as i128);
    let twice = (2 * ki + li - 2) * ni - ki * ki - (li - 1) * (ki + ri) + ri * ri;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    let value = u64::try_from(twice / 2).map_err(|_| overflow("edge count"))?;

    let mut families = vec![cjc];
    if l % 2 == 0 && (r == l / 2 || r + 1 == l / 2) {
        families.push(ExtremalFamily::Split { n, h: k + l / 2 - 1 });
    }
    let threshold = star_path_threshold(k, l);
    let guaranteed = n as u128 >= threshold;
    let pattern = ForestPattern::star_path(k, l)?.to_string();
    Ok((
        TuranValue {
            value,
            case: format!("d={},r={r}", (n - k - r) / (l - 1)),
            guaranteed,
            threshold,
        },
        Prediction {
            pattern,
            n,
            families,
            threshold,
            source: "star-path-turan",
            guaranteed,
            ties: Vec::new(),
            discrepancy: None,
        },
    ))
}

/// `(k + ⌊ℓ/2⌋ − ½)(n − 1)`, a general upper bound on
/// `ex(n, kS_{ℓ−1} ∪ P_ℓ)`.
pub fn upbound_star_path(n: usize, k: usize, l: usize) -> Result<f64> {
    check_star_path(k, l)?;
    if n < 1 {
        return Err(Error::arg("need n >= 1"));
    }
    Ok((2 * (k + l / 2) - 1) as f64 * (n - 1) as f64 / 2.0)
}

fn pow2_4p(p: u64) -> Result<u128> {
    let e = p.checked_mul(4).filter(|&e| e < 128).ok_or_else(|| overflow("2^(4p)"))?;
    Ok(1u128 << e)
}

/// `max{2^{4p}, m²}`: from this order on, a unique split (or split-plus)
/// edge-extremal graph is also the unique spectral extremal graph.
pub fn spectral_transfer_threshold(p: u64, m: u64) -> Result<u128> {
    if p < 1 || m < 1 {
        return Err(Error::arg(format!("need p >= 1 and m >= 1, got p = {p}, m = {m}")));
    }
    let m2 = (m as u128).checked_mul(m as u128).ok_or_else(|| overflow("m²"))?;
    Ok(pow2_4p(p)?.max(m2))
}

/// `8(k+⌊ℓ/2⌋)³ t⁸` with `t = (ℓ²−ℓ+1)k + (ℓ²+3ℓ−2)/2`.
pub fn spectral_star_path_threshold(k: usize, l: usize) -> Result<u128> {
    check_star_path(k, l)?;
    let t = star_path_threshold(k, l);
    let s = (k + l / 2) as u128;
    let mut acc: u128 = 8;
    for _ in 0..3 {
        acc = acc.checked_mul(s).ok_or_else(|| overflow("spectral threshold"))?;
    }
    for _ in 0..8 {
        acc = acc.checked_mul(t).ok_or_else(|| overflow("spectral threshold"))?;
    }
    Ok(acc)
}

/// The pattern shapes with known spectral extremal graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `kS_{ℓ−1} ∪ P_ℓ`, `ℓ >= 4`.
    StarPath { k: usize, l: usize },
    /// `k₁S_{2ℓ−1} ∪ k₂P_{2ℓ}`, `k₁ >= 1`, `k₂ >= 2`, `ℓ >= 2`.
    StarsEvenPaths { k1: usize, k2: usize, l: usize },
    /// `kS₄ ∪ 2P₅`.
    Star4TwoP5 { k: usize },
    /// `kP₂`.
    Matching { k: usize },
    /// `kP₃`, `k >= 2`.
    PathsP3 { k: usize },
}

impl Shape {
    pub fn tag(&self) -> &'static str {
        match self {
            Shape::StarPath { .. } => "kS(l-1)+P(l)",
            Shape::StarsEvenPaths { .. } => "k1S(2l-1)+k2P(2l)",
            Shape::Star4TwoP5 { .. } => "kS4+2P5",
            Shape::Matching { .. } => "kP2",
            Shape::PathsP3 { .. } => "kP3",
        }
    }
}

fn all_equal(xs: &[usize]) -> Option<usize> {
    let first = *xs.first()?;
    xs.iter().all(|&x| x == first).then_some(first)
}

/// Every recognized shape `f` matches, most specific first.
pub fn recognize(f: &ForestPattern) -> Vec<Shape> {
    let stars = f.stars();
    let paths = f.paths();
    let mut out = Vec::new();
    if stars.is_empty() {
        match all_equal(paths) {
            Some(2) => out.push(Shape::Matching { k: paths.len() }),
            Some(3) if paths.len() >= 2 => out.push(Shape::PathsP3 { k: paths.len() }),
            _ => {}
        }
        return out;
    }
    let Some(s) = all_equal(stars) else {
        return out;
    };
    let k = stars.len();
    if paths == [5, 5] && s == 4 {
        out.push(Shape::Star4TwoP5 { k });
    }
    if paths.len() == 1 && paths[0] == s + 1 && paths[0] >= 4 {
        out.push(Shape::StarPath { k, l: paths[0] });
    }
    if paths.len() >= 2 {
        if let Some(p) = all_equal(paths) {
            if p % 2 == 0 && p >= 4 && s == p - 1 {
                out.push(Shape::StarsEvenPaths { k1: k, k2: paths.len(), l: p / 2 });
            }
        }
    }
    out
}

/// Spectral extremal graphs for `kP₂` exactly as published: for `n >= 2k`,
/// `K_n`, then `K_{2k+1} ∪ K̄`, both at `n = 3k+2`, then `K_k ∨ K̄_{n−k}`.
pub fn matching_families(n: usize, k: usize) -> Vec<ExtremalFamily> {
    if k < 1 || n < 2 * k {
        return Vec::new();
    }
    let clique_union = ExtremalFamily::CliqueUnionEmpty { n, c: 2 * k + 1 };
    let split = ExtremalFamily::Split { n, h: k };
    if n <= 2 * k + 1 {
        vec![ExtremalFamily::Split { n, h: n }]
    } else if n < 3 * k + 2 {
        vec![clique_union]
    } else if n == 3 * k + 2 {
        vec![clique_union, split]
    } else {
        vec![split]
    }
}

/// The predicted spectral extremal family for `f` at order `n`.
pub fn predicted_spectral_extremal(f: &ForestPattern, n: usize) -> Result<Prediction> {
    let shapes = recognize(f);
    let Some(&shape) = shapes.first() else {
        return Err(Error::UnsupportedPattern(format!(
            "{f} is not one of kS(l-1)+P(l), k1S(2l-1)+k2P(2l), kS4+2P5, kP2, kP3"
        )));
    };
    let ties = shapes[1..].iter().map(Shape::tag).collect();
    let mut discrepancy = None;
    let (families, threshold, source) = match shape {
        Shape::StarPath { k, l } => {
            let fam = if l % 2 == 0 {
                ExtremalFamily::Split { n, h: (2 * k + l - 2) / 2 }
            } else {
                ExtremalFamily::SplitPlus { n, h: (2 * k + l - 3) / 2 }
            };
            (vec![fam], spectral_star_path_threshold(k, l)?, "star-path-spectral")
        }
        Shape::StarsEvenPaths { k1, k2, l } => {
            let (k1, k2, l) = (k1 as u64, k2 as u64, l as u64);
            let m = (4 * l * l - 2 * l + 1) * k1 + (2 * l * l + 3 * l - 4) * k2 + 3;
            let fam = ExtremalFamily::Split {
                n,
                h: (k1 + l * k2 - 1) as usize,
            };
            (vec![fam], spectral_transfer_threshold(k1 + l * k2 - 1, m)?, "star-forest-transfer")
        }
        Shape::Star4TwoP5 { k } => {
            let k = k as u64;
            let fam = ExtremalFamily::SplitPlus {
                n,
                h: k as usize + 3,
            };
            (vec![fam], spectral_transfer_threshold(k + 3, 21 * k + 38)?, "star4-path5-transfer")
        }
        Shape::Matching { k } => {
            let alternative = if k >= 2 { matching_families(n, k - 1) } else { Vec::new() };
            discrepancy = Some(Discrepancy {
                note: format!(
                    "as published, K_k ∨ K̄_(n−k) and K_(2k+1) contain {k}P2; the statement \
                     only holds when k bounds the matching number"
                ),
                alternative_reading: format!("matching number at most {}", k.saturating_sub(1)),
                alternative_families: alternative,
            });
            (matching_families(n, k), 2 * k as u128, "matching")
        }
        Shape::PathsP3 { k } => {
            let k = k as u128;
            (
                vec![ExtremalFamily::LinearForestExtremal { n, k: k as usize }],
                8 * k * k - 3 * k,
                "linear-forest-p3",
            )
        }
    };
    for fam in &families {
        fam.validate()?;
    }
    Ok(Prediction {
        pattern: f.to_string(),
        n,
        families,
        threshold,
        source,
        guaranteed: n as u128 >= threshold,
        ties,
        discrepancy,
    })
}
