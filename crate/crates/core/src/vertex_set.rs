//! Word-sized vertex sets over a universe `{0..n-1}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Largest universe a [`VertexSet`] can address. Every set fits in one `u32`.
pub const VERTEX_CAP: usize = 24;

/// A subset of `{0..n-1}` stored as a bitmask (bit `v` set iff `v` is a member).
///
/// The universe size is not carried by the set; operations that need it
/// (complement, full set) take `n` explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0..n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= VERTEX_CAP);
        VertexSet(((1u64 << n) - 1) as u32)
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < VERTEX_CAP);
        VertexSet(1 << v)
    }

    /// Builds a set from members. Panics if a member is `>= VERTEX_CAP`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices.into_iter().fold(VertexSet::EMPTY, |acc, v| {
            assert!(v < VERTEX_CAP, "vertex {v} exceeds cap {VERTEX_CAP}");
            acc.with(v)
        })
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// `{0..n-1} \ self`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        VertexSet::full(n).difference(self)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest member plus one, or 0 for the empty set.
    #[inline]
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Canonical order: by cardinality, then lexicographically on the sorted
    /// member lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Space-separated ascending members, the `.hg` edge-line form.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Ascending members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

/// Sub-mask enumeration of a fixed mask.
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    #[inline]
    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        // (cur - mask) & mask steps to the next sub-mask in increasing order.
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(VertexSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_arithmetic() {
        let a = VertexSet::from_vertices([0, 1, 3]);
        let b = VertexSet::from_vertices([1, 2]);
        assert_eq!(a.intersection(b).to_vec(), vec![1]);
        assert_eq!(a.union(b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 3]);
        assert_eq!(a.complement(5).to_vec(), vec![2, 4]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.span(), 4);
        assert!(VertexSet::EMPTY.is_subset(a));
        assert!(!a.is_subset(b));
    }

    #[test]
    fn full_universe_at_cap() {
        assert_eq!(VertexSet::full(VERTEX_CAP).len(), VERTEX_CAP);
        assert_eq!(VertexSet::full(0), VertexSet::EMPTY);
    }

    #[test]
    fn subsets_enumerates_every_submask_once_in_order() {
        let m = VertexSet::from_vertices([1, 3, 4]);
        let subs: Vec<u32> = m.subsets().map(VertexSet::bits).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|&s| s & !m.bits() == 0));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn canonical_order() {
        let mut sets: Vec<VertexSet> = [[1, 2].as_slice(), &[0, 2], &[3], &[0, 1], &[]]
            .iter()
            .map(|s| VertexSet::from_vertices(s.iter().copied()))
            .collect();
        sets.sort_by(VertexSet::canonical_cmp);
        let listed: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            listed,
            vec![vec![], vec![3], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn display_is_hg_edge_line() {
        assert_eq!(VertexSet::from_vertices([4, 0, 2]).to_string(), "0 2 4");
        assert_eq!(
            serde_json::to_string(&VertexSet::from_vertices([2, 0])).unwrap(),
            "[0,2]"
        );
    }
}
