use std::fmt;

use smallvec::SmallVec;

type Words = SmallVec<[u64; 2]>;

/// A set of vertex indices stored as a little-endian bitset.
///
/// Trailing zero words are always trimmed, so two sets with the same members
/// compare equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Words,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words: Words = SmallVec::from_elem(u64::MAX, n / 64);
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        Self::from_words(words)
    }

    pub(crate) fn from_words(words: impl Into<Words>) -> Self {
        let mut set = VertexSet {
            words: words.into(),
        };
        set.trim();
        set
    }

    pub(crate) fn from_slice(words: &[u64]) -> Self {
        Self::from_words(Words::from_slice(words))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w |= s;
        }
        VertexSet { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_words(
            self.words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect::<Words>(),
        )
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self::from_words(
            self.words
                .iter()
                .enumerate()
                .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect::<Words>(),
        )
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_len(&self, other: &Self) -> usize {
        count_common(&self.words, &other.words)
    }
}

#[inline]
pub(crate) fn count_common(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_across_word_boundaries() {
        let a: VertexSet = [1, 63, 64, 130].into_iter().collect();
        let b: VertexSet = [63, 130, 5].into_iter().collect();
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![63, 130]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![1, 64]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.max(), Some(130));
        assert_eq!(a.min(), Some(1));
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.intersection_len(&b), 2);
    }

    #[test]
    fn trimming_keeps_equality_structural() {
        let mut a = VertexSet::singleton(200);
        a.remove(200);
        assert_eq!(a, VertexSet::new());
        assert!(a.is_empty());
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(65).max(), Some(64));
        assert_eq!(VertexSet::full(0), VertexSet::new());
    }
}
