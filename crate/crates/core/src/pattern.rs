//! Star-path forest patterns and their text syntax.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::graph::Graph;

/// A star-path forest: stars `S_s` (hub plus `s` leaves) and paths `P_p`
/// (`p` vertices).
///
/// Stars with one or two leaves are stored as the paths they are (`S₁ = P₂`,
/// `S₂ = P₃`), so every forest has exactly one representation. Both lists
/// are kept in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ForestPattern {
    stars: Vec<usize>,
    paths: Vec<usize>,
}

impl ForestPattern {
    pub fn new(stars: impl IntoIterator<Item = usize>, paths: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut st = Vec::new();
        let mut pa = Vec::new();
        for s in stars {
            match s {
                0 => return Err(Error::arg("a star needs at least one leaf")),
                1 | 2 => pa.push(s + 1),
                _ => st.push(s),
            }
        }
        for p in paths {
            if p == 0 {
                return Err(Error::arg("a path needs at least one vertex"));
            }
            pa.push(p);
        }
        st.sort_unstable_by(|a, b| b.cmp(a));
        pa.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ForestPattern { stars: st, paths: pa })
    }

    pub fn empty() -> Self {
        ForestPattern {
            stars: Vec::new(),
            paths: Vec::new(),
        }
    }

    /// `kS_{ℓ−1} ∪ P_ℓ`.
    pub fn star_path(k: usize, l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::arg(format!("ℓ must be at least 2, got {l}")));
        }
        Self::new(std::iter::repeat(l - 1).take(k), [l])
    }

    /// `k·P_p`.
    pub fn paths_only(k: usize, p: usize) -> Result<Self> {
        Self::new([], std::iter::repeat(p).take(k))
    }

    /// `k·S_s`.
    pub fn stars_only(k: usize, s: usize) -> Result<Self> {
        Self::new(std::iter::repeat(s).take(k), [])
    }

    /// Leaf counts of the stars with at least three leaves, descending.
    pub fn stars(&self) -> &[usize] {
        &self.stars
    }

    /// Path orders, descending.
    pub fn paths(&self) -> &[usize] {
        &self.paths
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty() && self.paths.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.stars.len() + self.paths.len()
    }

    pub fn total_order(&self) -> usize {
        self.stars.iter().map(|s| s + 1).sum::<usize>() + self.paths.iter().sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.stars.iter().sum::<usize>() + self.paths.iter().map(|p| p - 1).sum::<usize>()
    }

    /// The forest as a graph: stars first (hub, then leaves), then paths.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(0)?;
        for &s in &self.stars {
            g = families::union(&g, &families::star(s)?)?;
        }
        for &p in &self.paths {
            g = families::union(&g, &families::path(p)?)?;
        }
        Ok(g)
    }

    /// Components grouped as `(count, kind, size)` in display order.
    fn groups(&self) -> Vec<(usize, char, usize)> {
        let mut out: Vec<(usize, char, usize)> = Vec::new();
        let items = self
            .stars
            .iter()
            .map(|&s| ('S', s))
            .chain(self.paths.iter().map(|&p| ('P', p)));
        for (kind, size) in items {
            match out.last_mut() {
                Some(last) if last.1 == kind && last.2 == size => last.0 += 1,
                _ => out.push((1, kind, size)),
            }
        }
        out
    }

    /// Multiplicity of `S_s` (after normalization).
    pub fn star_multiplicity(&self, s: usize) -> usize {
        self.stars.iter().filter(|&&x| x == s).count()
    }

    pub fn path_multiplicity(&self, p: usize) -> usize {
        self.paths.iter().filter(|&&x| x == p).count()
    }
}

impl fmt::Display for ForestPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0P1");
        }
        let parts: Vec<String> = self
            .groups()
            .into_iter()
            .map(|(k, kind, size)| format!("{k}{kind}{size}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn syntax(offset: usize, reason: impl Into<String>) -> Error {
    Error::PatternSyntax {
        offset,
        reason: reason.into(),
    }
}

fn read_int(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(syntax(start, "expected an integer"));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .expect("ascii digits")
        .parse()
        .map_err(|_| syntax(start, "integer too large"))
}

impl FromStr for ForestPattern {
    type Err = Error;

    /// `term ("+" term)*` with `term = INT "S" INT | INT "P" INT`,
    /// e.g. `2S3+1P4`. The literal `0P1` denotes the empty forest.
    fn from_str(text: &str) -> Result<Self> {
        if text == "0P1" {
            return Ok(ForestPattern::empty());
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut stars = Vec::new();
        let mut paths = Vec::new();
        loop {
            let term_start = pos;
            let count = read_int(bytes, &mut pos)?;
            let kind = *bytes
                .get(pos)
                .ok_or_else(|| syntax(pos, "expected 'S' or 'P'"))?;
            if kind != b'S' && kind != b'P' {
                return Err(syntax(pos, format!("expected 'S' or 'P', found {:?}", kind as char)));
            }
            pos += 1;
            let size_at = pos;
            let size = read_int(bytes, &mut pos)?;
            if count == 0 {
                return Err(syntax(term_start, "multiplicity must be at least 1"));
            }
            if size == 0 {
                return Err(syntax(size_at, "component size must be at least 1"));
            }
            let target = if kind == b'S' { &mut stars } else { &mut paths };
            target.extend(std::iter::repeat(size).take(count));
            match bytes.get(pos) {
                None => break,
                Some(b'+') => pos += 1,
                Some(&c) => return Err(syntax(pos, format!("unexpected {:?}", c as char))),
            }
        }
        ForestPattern::new(stars, paths)
    }
}
