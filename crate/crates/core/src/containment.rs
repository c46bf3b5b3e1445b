//! Star-path forest containment, longest paths and maximum matchings.
//!
//! Containment is subgraph (not induced) containment. The forest search
//! places paths first, longest first, then chooses star hubs and settles the
//! leaves with a bipartite b-matching, so the only exhaustive part of the
//! star phase is the hub choice.

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::{members, Bits};
use crate::graph::{Graph, VertexSet};
use crate::pattern::ForestPattern;

/// Representative (smallest member) of each vertex's twin class. Two
/// vertices are twins when swapping them is an automorphism, i.e. they have
/// the same neighbours apart from each other.
fn twin_classes<B: Bits>(rows: &[B]) -> Vec<usize> {
    let n = rows.len();
    let mut rep: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if rep[v] != v {
            continue;
        }
        let open = rows[v].clone();
        for u in v + 1..n {
            if rep[u] == u && rows[u].without(v) == open.without(u) {
                rep[u] = v;
            }
        }
    }
    rep
}

/// Drops every candidate that has a twin earlier in `cand`. Branching on
/// twins of an already tried candidate only revisits the same subtree up to
/// an automorphism.
fn twin_representatives<B: Bits>(cand: &B, class: &[usize]) -> B {
    let mut seen = B::none();
    let mut out = B::none();
    for v in members(cand) {
        if !seen.has(class[v]) {
            seen = seen.with(class[v]);
            out = out.with(v);
        }
    }
    out
}

/// Where one component of a forest landed in the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentEmbedding {
    Star { hub: usize, leaves: Vec<usize> },
    Path { vertices: Vec<usize> },
}

impl ComponentEmbedding {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            ComponentEmbedding::Star { hub, leaves } => {
                std::iter::once(*hub).chain(leaves.iter().copied()).collect()
            }
            ComponentEmbedding::Path { vertices } => vertices.clone(),
        }
    }
}

/// Whether `g` contains a path on `l` vertices.
pub fn has_path(g: &Graph, l: usize) -> bool {
    find_path(g, l).is_some()
}

/// A path on `l` vertices, if one exists. `l = 0` yields the empty path.
pub fn find_path(g: &Graph, l: usize) -> Option<Vec<usize>> {
    if l > g.order() {
        return None;
    }
    if g.order() <= 64 {
        path_search::<u64>(g, l)
    } else {
        path_search::<VertexSet>(g, l)
    }
}

fn path_search<B: Bits>(g: &Graph, l: usize) -> Option<Vec<usize>> {
    fn extend<B: Bits>(rows: &[B], class: &[usize], free: &B, path: &mut Vec<usize>, l: usize) -> bool {
        if path.len() == l {
            return true;
        }
        let last = *path.last().expect("nonempty path");
        let mut cand = twin_representatives(&rows[last].and(free), class);
        while let Some(v) = cand.first() {
            cand = cand.without(v);
            path.push(v);
            if extend(rows, class, &free.without(v), path, l) {
                return true;
            }
            path.pop();
        }
        false
    }

    if l == 0 {
        return Some(Vec::new());
    }
    let rows = B::rows(g);
    let class = twin_classes(&rows);
    let all = B::full(g.order());
    let mut path = Vec::with_capacity(l);
    for s in members(&twin_representatives(&all, &class)) {
        path.push(s);
        if extend(&rows, &class, &all.without(s), &mut path, l) {
            return Some(path);
        }
        path.pop();
    }
    None
}

/// Order of a longest path in `g`.
pub fn longest_path_order(g: &Graph) -> usize {
    let mut best = usize::from(g.order() > 0);
    while best < g.order() && has_path(g, best + 1) {
        best += 1;
    }
    best
}

const UNMATCHED: usize = usize::MAX;

/// A maximum matching as a mate array (`usize::MAX` marks unmatched
/// vertices), computed with Edmonds' blossom algorithm.
pub fn maximum_matching(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let adj = g.adjacency_lists();
    let mut mate = vec![UNMATCHED; n];

    // Greedy start; the augmenting phase fixes anything it gets wrong.
    for v in 0..n {
        if mate[v] == UNMATCHED {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u] == UNMATCHED) {
                mate[v] = u;
                mate[u] = v;
            }
        }
    }

    let mut parent = vec![UNMATCHED; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];

    let lca = |mut a: usize, mut b: usize, base: &[usize], mate: &[usize], parent: &[usize]| {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == UNMATCHED {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    fn mark_path(
        mut v: usize,
        b: usize,
        mut child: usize,
        base: &[usize],
        mate: &[usize],
        parent: &mut [usize],
        blossom: &mut [bool],
    ) {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    for root in 0..n {
        if mate[root] != UNMATCHED {
            continue;
        }
        parent.fill(UNMATCHED);
        used.fill(false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut end = UNMATCHED;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != UNMATCHED && parent[mate[to]] != UNMATCHED) {
                    let cur = lca(v, to, &base, &mate, &parent);
                    blossom.fill(false);
                    mark_path(v, cur, to, &base, &mate, &mut parent, &mut blossom);
                    mark_path(to, cur, v, &base, &mate, &mut parent, &mut blossom);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == UNMATCHED {
                    parent[to] = v;
                    if mate[to] == UNMATCHED {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        let mut v = end;
        while v != UNMATCHED {
            let pv = parent[v];
            let next = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = next;
        }
    }
    mate
}

pub fn max_matching_size(g: &Graph) -> usize {
    maximum_matching(g).iter().filter(|&&m| m != UNMATCHED).count() / 2
}

/// Whether `g` contains vertex-disjoint copies of every component of `f`.
pub fn contains_forest(g: &Graph, f: &ForestPattern) -> bool {
    find_forest(g, f).is_some()
}

pub fn is_free(g: &Graph, f: &ForestPattern) -> bool {
    !contains_forest(g, f)
}

/// An embedding of `f` into `g`, if one exists: paths (longest first), then
/// stars (largest first), then the single-vertex paths.
pub fn find_forest(g: &Graph, f: &ForestPattern) -> Option<Vec<ComponentEmbedding>> {
    if f.total_order() > g.order() {
        return None;
    }
    let emb = if g.order() <= 64 {
        Finder::new(u64::rows(g), f).run()
    } else {
        Finder::new(VertexSet::rows(g), f).run()
    }?;
    debug_assert!(verify_embedding(g, f, &emb));
    Some(emb)
}

struct Finder<B: Bits> {
    n: usize,
    rows: Vec<B>,
    class: Vec<usize>,
    paths: Vec<usize>,
    stars: Vec<usize>,
    singles: usize,
    /// Vertices still needed from path `i` onward.
    path_need: Vec<usize>,
    star_need: usize,
    failed: HashSet<(usize, B)>,
    star_failed: HashSet<B>,
    out: Vec<ComponentEmbedding>,
}

impl<B: Bits> Finder<B> {
    fn new(rows: Vec<B>, f: &ForestPattern) -> Self {
        let paths: Vec<usize> = f.paths().iter().copied().filter(|&p| p >= 2).collect();
        let singles = f.paths().len() - paths.len();
        let stars = f.stars().to_vec();
        let star_need = stars.iter().map(|s| s + 1).sum::<usize>() + singles;
        let mut path_need = vec![star_need; paths.len() + 1];
        for i in (0..paths.len()).rev() {
            path_need[i] = path_need[i + 1] + paths[i];
        }
        Finder {
            n: rows.len(),
            class: twin_classes(&rows),
            rows,
            paths,
            stars,
            singles,
            path_need,
            star_need,
            failed: HashSet::new(),
            star_failed: HashSet::new(),
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Vec<ComponentEmbedding>> {
        if self.place_path(0, B::full(self.n)) {
            self.out.reverse();
            Some(self.out)
        } else {
            None
        }
    }

    /// Places path `i` and everything after it inside `avail`. Equal copies
    /// placed in different orders reach the same `(i, avail)` state, which
    /// the failure memo cuts off.
    fn place_path(&mut self, i: usize, avail: B) -> bool {
        if i == self.paths.len() {
            return self.place_stars(avail);
        }
        if avail.count() < self.path_need[i] {
            return false;
        }
        let key = (i, avail.clone());
        if self.failed.contains(&key) {
            return false;
        }
        let mut tried = HashSet::new();
        let mut path = Vec::with_capacity(self.paths[i]);
        let mut starts = twin_representatives(&avail, &self.class);
        while let Some(s) = starts.first() {
            starts = starts.without(s);
            path.push(s);
            if self.grow(i, &avail, &avail.without(s), &mut path, B::none().with(s), &mut tried) {
                return true;
            }
            path.pop();
        }
        self.failed.insert(key);
        false
    }

    fn grow(
        &mut self,
        i: usize,
        avail: &B,
        free: &B,
        path: &mut Vec<usize>,
        set: B,
        tried: &mut HashSet<B>,
    ) -> bool {
        if path.len() == self.paths[i] {
            // Later components only see which vertices were consumed.
            if !tried.insert(set.clone()) {
                return false;
            }
            if self.place_path(i + 1, avail.minus(&set)) {
                self.out.push(ComponentEmbedding::Path {
                    vertices: path.clone(),
                });
                return true;
            }
            return false;
        }
        let last = *path.last().expect("nonempty path");
        let mut cand = twin_representatives(&self.rows[last].and(free), &self.class);
        while let Some(v) = cand.first() {
            cand = cand.without(v);
            path.push(v);
            if self.grow(i, avail, &free.without(v), path, set.with(v), tried) {
                return true;
            }
            path.pop();
        }
        false
    }

    fn place_stars(&mut self, avail: B) -> bool {
        if avail.count() < self.star_need {
            return false;
        }
        if self.stars.is_empty() {
            self.emit_singles(&avail);
            return true;
        }
        if self.star_failed.contains(&avail) {
            return false;
        }
        let mut hubs = Vec::with_capacity(self.stars.len());
        if self.choose_hub(0, &avail, B::none(), &mut hubs) {
            return true;
        }
        self.star_failed.insert(avail);
        false
    }

    fn emit_singles(&mut self, avail: &B) {
        let picked: Vec<usize> = members(avail).take(self.singles).collect();
        for &v in picked.iter().rev() {
            self.out.push(ComponentEmbedding::Path { vertices: vec![v] });
        }
    }

    fn choose_hub(&mut self, j: usize, avail: &B, hubset: B, hubs: &mut Vec<usize>) -> bool {
        if j == self.stars.len() {
            let pool = avail.minus(&hubset);
            let Some(leaves) = self.assign_leaves(hubs, &pool) else {
                return false;
            };
            let used = leaves.iter().flatten().fold(B::none(), |s, &v| s.with(v));
            self.emit_singles(&pool.minus(&used));
            for (k, ls) in leaves.into_iter().enumerate().rev() {
                self.out.push(ComponentEmbedding::Star {
                    hub: hubs[k],
                    leaves: ls,
                });
            }
            return true;
        }
        let s = self.stars[j];
        let mut cand = avail.minus(&hubset);
        if j > 0 && self.stars[j - 1] == s {
            cand = cand.above(hubs[j - 1]);
        }
        cand = twin_representatives(&cand, &self.class);
        while let Some(h) = cand.first() {
            cand = cand.without(h);
            let next = hubset.with(h);
            let leaf_pool = avail.minus(&next);
            if self.rows[h].and_count(&leaf_pool) < s {
                continue;
            }
            let earlier_ok = hubs
                .iter()
                .zip(&self.stars)
                .all(|(&u, &su)| self.rows[u].and_count(&leaf_pool) >= su);
            if !earlier_ok {
                continue;
            }
            hubs.push(h);
            if self.choose_hub(j + 1, avail, next, hubs) {
                return true;
            }
            hubs.pop();
        }
        false
    }

    /// Distributes distinct leaves from `pool` to the hubs (augmenting paths
    /// over leaf slots).
    fn assign_leaves(&self, hubs: &[usize], pool: &B) -> Option<Vec<Vec<usize>>> {
        let slot_hub: Vec<usize> = self
            .stars
            .iter()
            .enumerate()
            .flat_map(|(j, &s)| std::iter::repeat(j).take(s))
            .collect();
        let mut owner = vec![UNMATCHED; self.n];

        fn augment<B: Bits>(
            slot: usize,
            slot_hub: &[usize],
            hubs: &[usize],
            rows: &[B],
            pool: &B,
            owner: &mut [usize],
            seen: &mut B,
        ) -> bool {
            let mut cand = rows[hubs[slot_hub[slot]]].and(pool).minus(seen);
            while let Some(leaf) = cand.first() {
                cand = cand.without(leaf);
                *seen = seen.with(leaf);
                if owner[leaf] == UNMATCHED
                    || augment(owner[leaf], slot_hub, hubs, rows, pool, owner, seen)
                {
                    owner[leaf] = slot;
                    return true;
                }
            }
            false
        }

        for slot in 0..slot_hub.len() {
            let mut seen = B::none();
            if !augment(slot, &slot_hub, hubs, &self.rows, pool, &mut owner, &mut seen) {
                return None;
            }
        }
        let mut leaves = vec![Vec::new(); hubs.len()];
        for (leaf, &slot) in owner.iter().enumerate() {
            if slot != UNMATCHED {
                leaves[slot_hub[slot]].push(leaf);
            }
        }
        Some(leaves)
    }
}

/// Containment test on raw 64-bit adjacency rows, for the search kernels.
pub(crate) fn contains_forest_rows(rows: Vec<u64>, f: &ForestPattern) -> bool {
    f.total_order() <= rows.len() && Finder::new(rows, f).run().is_some()
}

/// Checks that `emb` is a vertex-disjoint, adjacency-correct copy of `f`.
pub fn verify_embedding(g: &Graph, f: &ForestPattern, emb: &[ComponentEmbedding]) -> bool {
    let mut seen = HashSet::new();
    let mut stars = Vec::new();
    let mut paths = Vec::new();
    for c in emb {
        for v in c.vertices() {
            if v >= g.order() || !seen.insert(v) {
                return false;
            }
        }
        match c {
            ComponentEmbedding::Star { hub, leaves } => {
                if leaves.iter().any(|&u| !g.has_edge(*hub, u)) {
                    return false;
                }
                stars.push(leaves.len());
            }
            ComponentEmbedding::Path { vertices } => {
                if vertices.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                    return false;
                }
                paths.push(vertices.len());
            }
        }
    }
    ForestPattern::new(stars, paths).is_ok_and(|shape| &shape == f)
}

/// Independent containment check: embeds the pattern graph vertex by vertex
/// over all injective maps, with no knowledge of stars or paths.
pub fn naive_injection_oracle(g: &Graph, f: &ForestPattern) -> bool {
    let h = f.to_graph().expect("pattern order fits");
    let m = h.order();
    if m > g.order() {
        return false;
    }
    let back: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..i).filter(|&j| h.has_edge(i, j)).collect())
        .collect();

    fn extend(i: usize, g: &Graph, back: &[Vec<usize>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if i == back.len() {
            return true;
        }
        for v in 0..g.order() {
            if used[v] || back[i].iter().any(|&j| !g.has_edge(map[j], v)) {
                continue;
            }
            used[v] = true;
            map.push(v);
            if extend(i + 1, g, back, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }

    extend(0, g, &back, &mut Vec::with_capacity(m), &mut vec![false; g.order()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, ExtremalFamily};

    fn pat(s: &str) -> ForestPattern {
        s.parse().unwrap()
    }

    fn split(n: usize, h: usize) -> Graph {
        ExtremalFamily::Split { n, h }.build().unwrap()
    }

    #[test]
    fn paths() {
        assert!(!has_path(&families::star(4).unwrap(), 4));
        assert!(has_path(&families::cycle(5).unwrap(), 5));
        assert!(!has_path(&split(9, 2), 6));
        assert!(has_path(&split(9, 2), 5));
        assert_eq!(longest_path_order(&split(9, 2)), 5);
        assert_eq!(longest_path_order(&Graph::empty(3).unwrap()), 1);
        assert_eq!(longest_path_order(&Graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn matchings() {
        assert_eq!(max_matching_size(&families::path(4).unwrap()), 2);
        assert_eq!(max_matching_size(&families::cycle(5).unwrap()), 2);
        assert_eq!(max_matching_size(&split(9, 2)), 2);
        // Petersen graph has a perfect matching; a blossom-heavy case.
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        assert_eq!(max_matching_size(&Graph::from_edges(10, &edges).unwrap()), 5);
    }

    #[test]
    fn forest_examples() {
        let c5 = families::cycle(5).unwrap();
        assert!(contains_forest(&c5, &pat("1P5")));
        assert!(!contains_forest(&split(9, 2), &pat("1S3+1P4")));
        let k7k1 = families::union(&families::complete(7).unwrap(), &Graph::empty(1).unwrap()).unwrap();
        assert!(!contains_forest(&k7k1, &pat("2S3")));
        let plus = ExtremalFamily::SplitPlus { n: 12, h: 2 }.build().unwrap();
        assert!(!contains_forest(&plus, &pat("1S4+1P5")));
        assert!(is_free(&Graph::empty(10).unwrap(), &pat("1P2")));
        assert!(!is_free(&families::complete(10).unwrap(), &pat("1S3+1P4")));
        let cjc = ExtremalFamily::clique_join_cliques(14, 1, 4).unwrap().build().unwrap();
        assert!(is_free(&cjc, &pat("1S3+1P4")));
    }

    #[test]
    fn oracle_examples() {
        let p3 = families::path(3).unwrap();
        assert!(naive_injection_oracle(&p3, &pat("1P1")));
        assert!(naive_injection_oracle(&families::complete(2).unwrap(), &pat("1S1")));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!naive_injection_oracle(&two_k2, &pat("1P3")));
        assert!(!contains_forest(&two_k2, &pat("1P3")));
        assert!(!naive_injection_oracle(&split(9, 2), &pat("1S3+1P4")));
    }

    #[test]
    fn embeddings_verify() {
        let g = families::complete(12).unwrap();
        let f = pat("2S3+1P4");
        let emb = find_forest(&g, &f).unwrap();
        assert!(verify_embedding(&g, &f, &emb));
        assert!(matches!(emb[0], ComponentEmbedding::Path { .. }));
        let f = pat("1S3+2P1");
        let emb = find_forest(&families::star(5).unwrap(), &f).unwrap();
        assert!(verify_embedding(&families::star(5).unwrap(), &f, &emb));
        assert_eq!(find_forest(&g, &ForestPattern::empty()), Some(vec![]));
    }

    #[test]
    fn large_hosts_use_wide_sets() {
        let g = split(150, 3);
        assert!(!contains_forest(&g, &pat("2S3+1P4")));
        assert!(contains_forest(&g, &pat("1S3+1P4")));
        assert_eq!(max_matching_size(&g), 3);
        assert_eq!(longest_path_order(&g), 7);
    }
}
