//! Named graphs and the extremal constructions built from them.
//!
//! Every constructor documents its vertex layout; hub and clique vertices
//! always come first so callers can address them by index.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v);
        }
    }
    Ok(g)
}

/// `K̄_n`.
pub fn empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

/// `P_n`, vertices in path order.
pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.set_edge(v - 1, v);
    }
    Ok(g)
}

/// `C_n` for `n >= 3`, vertices in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::arg(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let mut g = path(n)?;
    g.set_edge(0, n - 1);
    Ok(g)
}

/// The star `S_leaves = K_{1,leaves}` of order `leaves + 1`, hub at 0.
pub fn star(leaves: usize) -> Result<Graph> {
    let mut g = Graph::empty(leaves + 1)?;
    for v in 1..=leaves {
        g.set_edge(0, v);
    }
    Ok(g)
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::Capacity {
            order: n,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

fn place(target: &mut Graph, src: &Graph, offset: usize) {
    for (u, v) in src.edges() {
        target.set_edge(u + offset, v + offset);
    }
}

/// `G ∪ H`: `G` on the first `|G|` vertices, `H` after it.
pub fn union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order() + h.order();
    check_order(n)?;
    let mut out = Graph::empty(n)?;
    place(&mut out, g, 0);
    place(&mut out, h, g.order());
    Ok(out)
}

/// `G ∨ H`: the union plus every edge between `V(G)` and `V(H)`.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = union(g, h)?;
    for u in 0..g.order() {
        for v in g.order()..out.order() {
            out.set_edge(u, v);
        }
    }
    Ok(out)
}

/// `kH`, the vertex-disjoint union of `k` copies of `H`.
pub fn copies(k: usize, h: &Graph) -> Result<Graph> {
    let n = k
        .checked_mul(h.order())
        .ok_or(Error::Capacity {
            order: usize::MAX,
            max: MAX_ORDER,
        })?;
    check_order(n)?;
    let mut out = Graph::empty(n)?;
    for i in 0..k {
        place(&mut out, h, i * h.order());
    }
    Ok(out)
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// A named extremal construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum ExtremalFamily {
    /// `S_{n,h} = K_h ∨ K̄_{n−h}`; clique on `0..h`.
    Split { n: usize, h: usize },
    /// `S⁺_{n,h}`: `S_{n,h}` plus the edge `{h, h+1}`.
    SplitPlus { n: usize, h: usize },
    /// `K_k ∨ (dK_{ℓ−1} ∪ K_r)` with `n = k + d(ℓ−1) + r`, `0 <= r < ℓ−1`.
    /// Hubs on `0..k`, then the `d` cliques consecutively, then `K_r`.
    CliqueJoinCliques { n: usize, k: usize, l: usize, r: usize },
    /// `F_{n,k} = K_{k−1} ∨ (dK₂ ∪ K_s)` with `n − (k−1) = 2d + s`,
    /// `0 <= s < 2`. Hubs first, then matched pairs, then the lone vertex.
    LinearForestExtremal { n: usize, k: usize },
    /// `K_c ∪ K̄_{n−c}`; clique on `0..c`.
    CliqueUnionEmpty { n: usize, c: usize },
}

impl ExtremalFamily {
    /// The clique-join-cliques family of order `n`, with `r` derived from
    /// `(n − k) mod (ℓ − 1)`.
    pub fn clique_join_cliques(n: usize, k: usize, l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::arg(format!("ℓ must be at least 2, got {l}")));
        }
        if n < k {
            return Err(Error::arg(format!("n = {n} is smaller than k = {k}")));
        }
        let f = ExtremalFamily::CliqueJoinCliques {
            n,
            k,
            l,
            r: (n - k) % (l - 1),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn order(&self) -> usize {
        match *self {
            ExtremalFamily::Split { n, .. }
            | ExtremalFamily::SplitPlus { n, .. }
            | ExtremalFamily::CliqueJoinCliques { n, .. }
            | ExtremalFamily::LinearForestExtremal { n, .. }
            | ExtremalFamily::CliqueUnionEmpty { n, .. } => n,
        }
    }

    /// Number of cliques `d` in the clique-based families.
    pub fn clique_count(&self) -> Option<usize> {
        match *self {
            ExtremalFamily::CliqueJoinCliques { n, k, l, r } => Some((n - k - r) / (l - 1)),
            ExtremalFamily::LinearForestExtremal { n, k } => Some((n + 1 - k) / 2),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_order(self.order())?;
        match *self {
            ExtremalFamily::Split { n, h } => {
                if h > n {
                    return Err(Error::arg(format!("Split requires h <= n (h = {h}, n = {n})")));
                }
            }
            ExtremalFamily::SplitPlus { n, h } => {
                if h > n || n - h < 2 {
                    return Err(Error::arg(format!(
                        "SplitPlus requires n − h >= 2 (h = {h}, n = {n})"
                    )));
                }
            }
            ExtremalFamily::CliqueJoinCliques { n, k, l, r } => {
                if l < 2 {
                    return Err(Error::arg(format!("CliqueJoinCliques requires ℓ >= 2, got {l}")));
                }
                if r >= l - 1 {
                    return Err(Error::arg(format!(
                        "CliqueJoinCliques requires 0 <= r < ℓ − 1 (r = {r}, ℓ = {l})"
                    )));
                }
                if n < k + r || (n - k - r) % (l - 1) != 0 {
                    return Err(Error::arg(format!(
                        "CliqueJoinCliques requires n = k + d(ℓ−1) + r with d >= 0 \
                         (n = {n}, k = {k}, ℓ = {l}, r = {r})"
                    )));
                }
            }
            ExtremalFamily::LinearForestExtremal { n, k } => {
                if k < 1 || n + 1 < k {
                    return Err(Error::arg(format!(
                        "LinearForestExtremal requires k >= 1 and n >= k − 1 (n = {n}, k = {k})"
                    )));
                }
            }
            ExtremalFamily::CliqueUnionEmpty { n, c } => {
                if c > n {
                    return Err(Error::arg(format!(
                        "CliqueUnionEmpty requires c <= n (c = {c}, n = {n})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Closed-form edge count of the construction.
    pub fn expected_edges(&self) -> Result<usize> {
        self.validate()?;
        Ok(match *self {
            ExtremalFamily::Split { n, h } => h * n - h * (h + 1) / 2,
            ExtremalFamily::SplitPlus { n, h } => h * n - h * (h + 1) / 2 + 1,
            ExtremalFamily::CliqueJoinCliques { n, k, l, r } => {
                let d = (n - k - r) / (l - 1);
                choose2(k) + k * (n - k) + d * choose2(l - 1) + choose2(r)
            }
            ExtremalFamily::LinearForestExtremal { n, k } => {
                let hubs = k - 1;
                let d = (n - hubs) / 2;
                choose2(hubs) + hubs * (n - hubs) + d
            }
            ExtremalFamily::CliqueUnionEmpty { c, .. } => choose2(c),
        })
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            ExtremalFamily::Split { n, h } => join(&complete(h)?, &empty(n - h)?),
            ExtremalFamily::SplitPlus { n, h } => {
                let mut g = join(&complete(h)?, &empty(n - h)?)?;
                g.set_edge(h, h + 1);
                Ok(g)
            }
            ExtremalFamily::CliqueJoinCliques { n, k, l, r } => {
                let d = (n - k - r) / (l - 1);
                let rest = union(&copies(d, &complete(l - 1)?)?, &complete(r)?)?;
                join(&complete(k)?, &rest)
            }
            ExtremalFamily::LinearForestExtremal { n, k } => {
                let hubs = k - 1;
                let d = (n - hubs) / 2;
                let s = (n - hubs) % 2;
                let rest = union(&copies(d, &complete(2)?)?, &complete(s)?)?;
                join(&complete(hubs)?, &rest)
            }
            ExtremalFamily::CliqueUnionEmpty { n, c } => union(&complete(c)?, &empty(n - c)?),
        }
    }
}

impl fmt::Display for ExtremalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExtremalFamily::Split { n, h } => write!(f, "S_{{{n},{h}}}"),
            ExtremalFamily::SplitPlus { n, h } => write!(f, "S+_{{{n},{h}}}"),
            ExtremalFamily::CliqueJoinCliques { k, l, r, .. } => {
                let d = self.clique_count().unwrap_or(0);
                write!(f, "K_{k} v ({d}K_{} u K_{r})", l - 1)
            }
            ExtremalFamily::LinearForestExtremal { n, k } => {
                let d = (n + 1 - k) / 2;
                let s = (n + 1 - k) % 2;
                write!(f, "K_{} v ({d}K_2 u K_{s})", k - 1)
            }
            ExtremalFamily::CliqueUnionEmpty { n, c } => write!(f, "K_{c} u E_{}", n - c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_graphs() {
        assert_eq!(path(4).unwrap().edge_count(), 3);
        let s3 = star(3).unwrap();
        assert_eq!(s3.order(), 4);
        assert_eq!(s3.degree(0), 3);
        assert_eq!(complete(1).unwrap(), empty(1).unwrap());
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn union_join_copies() {
        let s52 = join(&complete(2).unwrap(), &empty(3).unwrap()).unwrap();
        assert_eq!(s52.edge_count(), 7);
        assert_eq!(s52, ExtremalFamily::Split { n: 5, h: 2 }.build().unwrap());

        let two_stars = copies(2, &star(3).unwrap()).unwrap();
        assert_eq!((two_stars.order(), two_stars.edge_count()), (8, 6));

        let g = union(&cycle(5).unwrap(), &complete(1).unwrap()).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 5));

        let big = empty(3000).unwrap();
        assert!(matches!(union(&big, &big), Err(Error::Capacity { .. })));
        assert!(matches!(copies(2, &big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn documented_examples() {
        let g = ExtremalFamily::Split { n: 10, h: 3 }.build().unwrap();
        assert_eq!(g.edge_count(), 24);

        let f = ExtremalFamily::CliqueJoinCliques { n: 28, k: 1, l: 4, r: 0 };
        assert_eq!(f.clique_count(), Some(9));
        assert_eq!(f.build().unwrap().edge_count(), 54);

        let g = ExtremalFamily::SplitPlus { n: 29, h: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 56);
        assert!(g.has_edge(2, 3));

        let g = ExtremalFamily::LinearForestExtremal { n: 9, k: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(0), 8);
    }

    #[test]
    fn empty_pieces_are_identities() {
        // r = 0 and s = 0 attach nothing.
        let f = ExtremalFamily::LinearForestExtremal { n: 5, k: 2 };
        assert_eq!(f.build().unwrap().edge_count(), 4 + 2);
        let f = ExtremalFamily::clique_join_cliques(7, 1, 4).unwrap();
        assert_eq!(f, ExtremalFamily::CliqueJoinCliques { n: 7, k: 1, l: 4, r: 0 });
    }

    #[test]
    fn invalid_parameters_name_the_constraint() {
        let bad = [
            ExtremalFamily::Split { n: 3, h: 4 },
            ExtremalFamily::SplitPlus { n: 5, h: 4 },
            ExtremalFamily::CliqueJoinCliques { n: 10, k: 1, l: 4, r: 3 },
            ExtremalFamily::CliqueJoinCliques { n: 10, k: 1, l: 4, r: 1 },
            ExtremalFamily::LinearForestExtremal { n: 3, k: 0 },
            ExtremalFamily::CliqueUnionEmpty { n: 3, c: 4 },
        ];
        for f in bad {
            let err = f.build().unwrap_err();
            assert!(matches!(err, Error::Argument(_)), "{f:?}: {err}");
        }
    }

    #[test]
    fn edge_formulas_hold_exhaustively() {
        for n in 0..=30 {
            for h in 0..=n.min(6) {
                let f = ExtremalFamily::Split { n, h };
                assert_eq!(f.build().unwrap().edge_count(), f.expected_edges().unwrap());
                if n - h >= 2 {
                    let f = ExtremalFamily::SplitPlus { n, h };
                    assert_eq!(f.build().unwrap().edge_count(), f.expected_edges().unwrap());
                }
            }
            for k in 1..=6 {
                for l in 2..=6 {
                    if let Ok(f) = ExtremalFamily::clique_join_cliques(n, k, l) {
                        assert_eq!(f.build().unwrap().edge_count(), f.expected_edges().unwrap());
                    }
                }
                if n + 1 >= k {
                    let f = ExtremalFamily::LinearForestExtremal { n, k };
                    assert_eq!(f.build().unwrap().edge_count(), f.expected_edges().unwrap());
                }
            }
        }
    }
}
