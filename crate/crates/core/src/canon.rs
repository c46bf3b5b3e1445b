//! Canonical labelling of small graphs (at most 16 vertices) by
//! individualization-refinement.
//!
//! The search tree individualizes vertices of the first non-singleton cell
//! of an equitable partition. Each leaf is a vertex order; its code is the
//! relabelled upper triangle in graph6 bit order, read as an integer with the
//! first bit most significant. The canonical form is the leaf with the
//! smallest code. Leaves whose codes tie differ by an automorphism, and those
//! automorphisms prune sibling subtrees in the same orbit.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CANON_MAX: usize = 16;

/// Compact adjacency for graphs with at most [`CANON_MAX`] vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Small {
    pub n: usize,
    pub rows: [u16; CANON_MAX],
}

impl Small {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= CANON_MAX);
        Small {
            n,
            rows: [0; CANON_MAX],
        }
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        if g.order() > CANON_MAX {
            return Err(Error::Capacity {
                order: g.order(),
                max: CANON_MAX,
            });
        }
        let mut s = Small::empty(g.order());
        for (u, v) in g.edges() {
            s.rows[u] |= 1 << v;
            s.rows[v] |= 1 << u;
        }
        Ok(s)
    }

    pub fn to_graph(&self) -> Graph {
        let rows: Vec<u64> = self.rows[..self.n].iter().map(|&r| r as u64).collect();
        Graph::from_rows(self.n, &rows)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows64(&self) -> Vec<u64> {
        self.rows[..self.n].iter().map(|&r| r as u64).collect()
    }

    /// This graph plus a new vertex `n` adjacent to `nbrs`.
    pub fn extend(&self, nbrs: u16) -> Self {
        let mut c = *self;
        let v = self.n;
        c.n += 1;
        c.rows[v] = nbrs;
        let mut m = nbrs;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            c.rows[u] |= 1 << v;
        }
        c
    }

    /// Upper triangle of the graph relabelled by `lab` (position `i` holds
    /// original vertex `lab[i]`), in graph6 bit order.
    pub fn code(&self, lab: &[u8]) -> u128 {
        let mut code = 0u128;
        for j in 1..self.n {
            let row = self.rows[lab[j] as usize];
            for &li in &lab[..j] {
                code = code << 1 | (row >> li & 1) as u128;
            }
        }
        code
    }

    pub fn from_code(n: usize, code: u128) -> Self {
        let mut s = Small::empty(n);
        let total = n * n.saturating_sub(1) / 2;
        let mut bit = total;
        for j in 1..n {
            for i in 0..j {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    s.rows[i] |= 1 << j;
                    s.rows[j] |= 1 << i;
                }
            }
        }
        s
    }
}

pub(crate) type Perm = [u8; CANON_MAX];

pub(crate) struct Canon {
    pub code: u128,
    /// `lab[i]` is the original vertex placed at canonical position `i`.
    pub lab: Perm,
    /// Generators of the automorphism group.
    pub generators: Vec<Perm>,
}

impl Canon {
    /// Smallest member of each vertex's automorphism orbit.
    pub fn orbits(&self, n: usize) -> Perm {
        orbits_of(n, self.generators.iter())
    }

    pub fn form(&self, n: usize) -> Small {
        Small::from_code(n, self.code)
    }
}

fn find(parent: &mut [u8], x: u8) -> u8 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut x = x;
    while parent[x as usize] != r {
        let next = parent[x as usize];
        parent[x as usize] = r;
        x = next;
    }
    r
}

fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a Perm>) -> Perm {
    let mut parent: Perm = [0; CANON_MAX];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    for g in gens {
        for v in 0..n {
            let a = find(&mut parent, v as u8);
            let b = find(&mut parent, g[v]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    for v in 0..n {
        parent[v] = find(&mut parent, v as u8);
    }
    parent
}

struct Search<'a> {
    g: &'a Small,
    best: Option<(u128, Perm)>,
    generators: Vec<Perm>,
}

/// Splits cells until every vertex of a cell has the same number of
/// neighbours in every cell. Sub-cells are ordered by that count.
fn refine(g: &Small, cells: &mut Vec<u16>) {
    'again: loop {
        for si in 0..cells.len() {
            let splitter = cells[si];
            for ci in 0..cells.len() {
                let cell = cells[ci];
                if cell.count_ones() == 1 {
                    continue;
                }
                let mut by_count = [0u16; CANON_MAX + 1];
                let mut m = cell;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    by_count[(g.rows[v] & splitter).count_ones() as usize] |= 1 << v;
                }
                let parts: Vec<u16> = by_count.iter().copied().filter(|&p| p != 0).collect();
                if parts.len() > 1 {
                    cells.splice(ci..=ci, parts);
                    continue 'again;
                }
            }
        }
        return;
    }
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<u16>, prefix: &mut Vec<u8>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut done: u16 = 0;
        let mut m = cell;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if done != 0 {
                let fixing = self
                    .generators
                    .iter()
                    .filter(|g| prefix.iter().all(|&p| g[p as usize] == p));
                let orbits = orbits_of(self.g.n, fixing);
                let seen = (0..self.g.n).any(|u| done >> u & 1 == 1 && orbits[u] == orbits[w]);
                if seen {
                    continue;
                }
            }
            done |= 1 << w;
            let mut next = cells.clone();
            next.splice(target..=target, [1u16 << w, cell & !(1 << w)]);
            prefix.push(w as u8);
            self.run(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[u16]) {
        let mut lab: Perm = [0; CANON_MAX];
        for (i, c) in cells.iter().enumerate() {
            lab[i] = c.trailing_zeros() as u8;
        }
        let code = self.g.code(&lab[..self.g.n]);
        match &self.best {
            Some((best, _)) if code > *best => {}
            Some((best, best_lab)) if code == *best => {
                let mut perm: Perm = [0; CANON_MAX];
                for i in 0..self.g.n {
                    perm[best_lab[i] as usize] = lab[i];
                }
                if (0..self.g.n).any(|v| perm[v] as usize != v) {
                    self.generators.push(perm);
                }
            }
            _ => self.best = Some((code, lab)),
        }
    }
}

pub(crate) fn canonize(g: &Small) -> Canon {
    let mut s = Search {
        g,
        best: None,
        generators: Vec::new(),
    };
    let all: u16 = if g.n == 0 { 0 } else { (((1u32 << g.n) - 1) & 0xffff) as u16 };
    let cells = if g.n == 0 { Vec::new() } else { vec![all] };
    s.run(cells, &mut Vec::new());
    let (code, lab) = s.best.expect("at least one leaf");
    Canon {
        code,
        lab,
        generators: s.generators,
    }
}

/// Canonical graph6 string: isomorphic graphs (and only those) share it.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    let s = Small::from_graph(g)?;
    Ok(crate::graph::graph6_encode(&canonize(&s).form(s.n).to_graph()))
}

/// Whether two graphs with at most 16 vertices are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let (sa, sb) = (Small::from_graph(a)?, Small::from_graph(b)?);
    Ok(canonize(&sa).code == canonize(&sb).code)
}

/// Size of the automorphism group, by orbit-stabilizer over the generators.
pub fn automorphism_count(g: &Graph) -> Result<u128> {
    let s = Small::from_graph(g)?;
    let c = canonize(&s);
    let n = s.n;
    let mut gens = c.generators;
    let mut order = 1u128;
    for v in 0..n {
        // Orbit of v under the current stabilizer.
        let mut orbit = vec![v as u8];
        let mut reps: Vec<Perm> = vec![identity(n)];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            let t = reps[i];
            for g in &gens {
                let y = g[x as usize];
                if !orbit.contains(&y) {
                    orbit.push(y);
                    reps.push(compose(&t, g, n));
                }
            }
            i += 1;
        }
        order *= orbit.len() as u128;
        // Schreier generators of the stabilizer of v.
        let mut next = Vec::new();
        for (i, &x) in orbit.iter().enumerate() {
            for g in &gens {
                let y = g[x as usize];
                let j = orbit.iter().position(|&o| o == y).expect("orbit closed");
                let s = compose(&compose(&reps[i], g, n), &inverse(&reps[j], n), n);
                if (0..n).any(|u| s[u] as usize != u) && !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        gens = next;
    }
    Ok(order)
}

fn identity(n: usize) -> Perm {
    let mut p: Perm = [0; CANON_MAX];
    for (i, x) in p.iter_mut().enumerate().take(n) {
        *x = i as u8;
    }
    p
}

/// `a` then `b`.
fn compose(a: &Perm, b: &Perm, n: usize) -> Perm {
    let mut p: Perm = [0; CANON_MAX];
    for v in 0..n {
        p[v] = b[a[v] as usize];
    }
    p
}

fn inverse(a: &Perm, n: usize) -> Perm {
    let mut p: Perm = [0; CANON_MAX];
    for v in 0..n {
        p[a[v] as usize] = v as u8;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn relabelled_graphs_share_a_form() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]).unwrap();
        assert_eq!(canonical_graph6(&g).unwrap(), canonical_graph6(&h).unwrap());
        assert!(isomorphic(&g, &h).unwrap());
        let p6 = families::path(6).unwrap();
        assert!(!isomorphic(&g, &p6).unwrap());
    }

    #[test]
    fn group_orders() {
        let count = |g: &Graph| automorphism_count(g).unwrap();
        assert_eq!(count(&families::complete(6).unwrap()), 720);
        assert_eq!(count(&families::cycle(7).unwrap()), 14);
        assert_eq!(count(&families::path(5).unwrap()), 2);
        assert_eq!(count(&families::star(4).unwrap()), 24);
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        assert_eq!(count(&Graph::from_edges(10, &edges).unwrap()), 120);
    }

    #[test]
    fn code_round_trip() {
        let g = Small::from_graph(&families::cycle(5).unwrap()).unwrap();
        let lab: Vec<u8> = (0..5).collect();
        assert_eq!(Small::from_code(5, g.code(&lab)), g);
        assert_eq!(canonize(&Small::empty(0)).code, 0);
    }
}
