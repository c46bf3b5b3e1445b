//! Small bitset abstraction so the search kernels run on a bare `u64` when
//! the host has at most 64 vertices and on `VertexSet` otherwise.

use std::hash::Hash;

use crate::graph::{Graph, VertexSet};

pub(crate) trait Bits: Clone + Eq + Hash {
    fn none() -> Self;
    fn full(n: usize) -> Self;
    fn has(&self, v: usize) -> bool;
    fn with(&self, v: usize) -> Self;
    fn without(&self, v: usize) -> Self;
    fn and(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn count(&self) -> usize;
    fn and_count(&self, o: &Self) -> usize;
    fn first(&self) -> Option<usize>;
    /// Members strictly greater than `v`.
    fn above(&self, v: usize) -> Self;
    fn rows(g: &Graph) -> Vec<Self>;
}

impl Bits for u64 {
    #[inline]
    fn none() -> Self {
        0
    }
    #[inline]
    fn full(n: usize) -> Self {
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }
    #[inline]
    fn has(&self, v: usize) -> bool {
        self >> v & 1 == 1
    }
    #[inline]
    fn with(&self, v: usize) -> Self {
        self | 1 << v
    }
    #[inline]
    fn without(&self, v: usize) -> Self {
        self & !(1 << v)
    }
    #[inline]
    fn and(&self, o: &Self) -> Self {
        self & o
    }
    #[inline]
    fn minus(&self, o: &Self) -> Self {
        self & !o
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn and_count(&self, o: &Self) -> usize {
        (self & o).count_ones() as usize
    }
    #[inline]
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn above(&self, v: usize) -> Self {
        if v >= 63 {
            0
        } else {
            self & !((2u64 << v) - 1)
        }
    }
    fn rows(g: &Graph) -> Vec<Self> {
        (0..g.order()).map(|v| g.row64(v)).collect()
    }
}

impl Bits for VertexSet {
    fn none() -> Self {
        VertexSet::new()
    }
    fn full(n: usize) -> Self {
        VertexSet::full(n)
    }
    fn has(&self, v: usize) -> bool {
        self.contains(v)
    }
    fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }
    fn without(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }
    fn and(&self, o: &Self) -> Self {
        self.intersection(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.difference(o)
    }
    fn count(&self) -> usize {
        self.len()
    }
    fn and_count(&self, o: &Self) -> usize {
        self.intersection_len(o)
    }
    fn first(&self) -> Option<usize> {
        self.min()
    }
    fn above(&self, v: usize) -> Self {
        self.difference(&VertexSet::full(v + 1))
    }
    fn rows(g: &Graph) -> Vec<Self> {
        (0..g.order()).map(|v| g.neighbors(v)).collect()
    }
}

/// Iterates the members of a bitset in ascending order.
pub(crate) fn members<B: Bits>(set: &B) -> impl Iterator<Item = usize> {
    let mut rest = set.clone();
    std::iter::from_fn(move || {
        let v = rest.first()?;
        rest = rest.without(v);
        Some(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agree(vs: &[usize], n: usize) {
        let a: u64 = vs.iter().fold(0, |s, &v| s.with(v));
        let b: VertexSet = vs.iter().copied().collect();
        assert_eq!(a.count(), b.count());
        assert_eq!(members(&a).collect::<Vec<_>>(), members(&b).collect::<Vec<_>>());
        for v in 0..n {
            assert_eq!(
                members(&a.above(v)).collect::<Vec<_>>(),
                members(&Bits::above(&b, v)).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn word_and_set_agree() {
        agree(&[0, 3, 17, 62, 63], 64);
        agree(&[], 64);
        agree(&[5], 10);
    }
}
