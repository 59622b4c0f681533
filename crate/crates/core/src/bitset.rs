//! Fixed-capacity vertex sets backed by a single 128-bit word.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub, SubAssign};

/// Hard capacity of every graph and vertex set in this crate.
pub const MAX_VERTICES: usize = 128;

/// A set of vertex ids in `0..128`, stored as a bitmask.
///
/// Sets are `Copy` and all set algebra is a handful of word operations.
/// The derived `Ord` compares raw masks and is only meant to give hash-map
/// keys a stable sort order; see [`VertexSet::lex_cmp`] for the order on
/// ascending member lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn empty() -> Self {
        VertexSet(0)
    }

    /// The full set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u128 << v)
    }

    #[inline]
    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within `{0, .., n-1}`.
    #[inline]
    pub fn complement_within(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    /// Lexicographic order on ascending member lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Ascending iterator over members.
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        self.0 &= !rhs.0;
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a: VertexSet = [0, 2, 5].into_iter().collect();
        let b: VertexSet = [2, 3].into_iter().collect();
        assert_eq!((a | b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!((a & b).to_vec(), vec![2]);
        assert_eq!((a - b).to_vec(), vec![0, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(5) && !a.contains(1));
        assert_eq!(a.complement_within(6).to_vec(), vec![1, 3, 4]);
    }

    #[test]
    fn full_at_capacity() {
        assert_eq!(VertexSet::full(MAX_VERTICES).len(), MAX_VERTICES);
        assert_eq!(VertexSet::full(0), VertexSet::empty());
    }

    #[test]
    fn lex_order_on_member_lists() {
        let a: VertexSet = [0, 3].into_iter().collect();
        let b: VertexSet = [1, 2].into_iter().collect();
        // [0, 3] precedes [1, 2] even though its mask is numerically larger
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        let c: VertexSet = [0].into_iter().collect();
        let d: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(c.lex_cmp(d), Ordering::Less);
        assert_eq!(d.lex_cmp(d), Ordering::Equal);
    }

    #[test]
    fn iteration_is_ascending() {
        let s: VertexSet = [7, 1, 127, 64].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 7, 64, 127]);
    }
}
