//! Carrier indexing and subset bitmasks.
//!
//! Every finite structure in this crate lives on a carrier `{0, .., n-1}`
//! with `0` the additive identity and `1` the multiplicative identity
//! (when `n >= 2`). Subsets of carriers with at most [`MAX_CARRIER`]
//! elements are single machine words.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Position of an element in its carrier.
pub type ElementIndex = usize;

/// Largest carrier a [`SubsetMask`] can describe.
pub const MAX_CARRIER: usize = 64;

/// Hard upper bound on the source carrier of a powerset construction.
pub const POWERSET_HARD_CAP: usize = 16;

/// Default powerset cap, overridable through `HYPERALG_MAX_POWERSET`.
pub const POWERSET_DEFAULT_CAP: usize = 8;

/// The effective powerset cap: `HYPERALG_MAX_POWERSET` when set to a valid
/// number (clamped to [`POWERSET_HARD_CAP`]), otherwise the default.
pub fn powerset_cap() -> usize {
    std::env::var("HYPERALG_MAX_POWERSET")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|n| n.min(POWERSET_HARD_CAP))
        .unwrap_or(POWERSET_DEFAULT_CAP)
}

/// A subset of a carrier of size at most 64; bit `i` is set iff element `i`
/// is a member. The empty mask is valid (partial hyperrings have empty sums).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub fn singleton(i: ElementIndex) -> Self {
        debug_assert!(i < MAX_CARRIER);
        SubsetMask(1u64 << i)
    }

    /// The whole carrier `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn from_elems<I: IntoIterator<Item = ElementIndex>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |m, i| m.with(i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, i: ElementIndex) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn with(self, i: ElementIndex) -> Self {
        SubsetMask(self.0 | (1u64 << i))
    }

    #[inline]
    pub fn without(self, i: ElementIndex) -> Self {
        SubsetMask(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// The unique member, if this is a singleton.
    #[inline]
    pub fn single(self) -> Option<ElementIndex> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    /// Smallest member.
    #[inline]
    pub fn min(self) -> Option<ElementIndex> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    pub fn to_vec(self) -> Vec<ElementIndex> {
        self.iter().collect()
    }

    /// Image under an element map.
    pub fn map(self, f: impl Fn(ElementIndex) -> ElementIndex) -> Self {
        self.iter().fold(Self::EMPTY, |m, i| m.with(f(i)))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for SubsetMask {
    type Item = ElementIndex;
    type IntoIter = MaskIter;
    fn into_iter(self) -> MaskIter {
        self.iter()
    }
}

impl FromIterator<ElementIndex> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = ElementIndex>>(iter: I) -> Self {
        Self::from_elems(iter)
    }
}

/// Ascending iterator over the members of a mask.
pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = ElementIndex;

    #[inline]
    fn next(&mut self) -> Option<ElementIndex> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

/// Hyperaddition table: `n x n` subset-valued entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperAddTable {
    n: usize,
    entries: Vec<SubsetMask>,
}

impl HyperAddTable {
    /// Wraps a row-major table; the caller guarantees shape and ranges.
    pub(crate) fn from_raw(n: usize, entries: Vec<SubsetMask>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: ElementIndex, b: ElementIndex) -> SubsetMask {
        self.entries[a * self.n + b]
    }

    pub fn entries(&self) -> &[SubsetMask] {
        &self.entries
    }

    /// The powerset extension: `A + B = union of a + b over a in A, b in B`.
    pub fn extend(&self, a: SubsetMask, b: SubsetMask) -> SubsetMask {
        extend_hyperop(self, a, b)
    }

    /// Left fold of [`extend_hyperop`] over singletons.
    pub fn sum(&self, elems: &[ElementIndex]) -> SubsetMask {
        iterated_hypersum(self, elems)
    }
}

/// `A + B` on subsets. Empty when either side is empty or when every
/// pairwise sum is empty.
pub fn extend_hyperop(add: &HyperAddTable, a: SubsetMask, b: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::EMPTY;
    for x in a {
        let row = &add.entries[x * add.n..(x + 1) * add.n];
        for y in b {
            out = out.union(row[y]);
        }
    }
    out
}

/// `a_1 + .. + a_k` folded left to right; `[a]` gives `{a}`.
///
/// # Panics
/// If `elems` is empty.
pub fn iterated_hypersum(add: &HyperAddTable, elems: &[ElementIndex]) -> SubsetMask {
    let (first, rest) = elems.split_first().expect("iterated_hypersum needs at least one term");
    rest.iter().fold(SubsetMask::singleton(*first), |acc, &x| {
        extend_hyperop(add, acc, SubsetMask::singleton(x))
    })
}

/// Elementwise product `{ab : a in A, b in B}` for a single-valued
/// multiplication given row-major.
pub fn mask_product(n: usize, mul: &[ElementIndex], a: SubsetMask, b: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::EMPTY;
    for x in a {
        for y in b {
            out = out.with(mul[x * n + y]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn krasner() -> HyperAddTable {
        let s = SubsetMask::singleton;
        HyperAddTable::from_raw(2, vec![s(0), s(1), s(1), SubsetMask::full(2)])
    }

    // 0 = 0, 1 = 1, 2 = -1
    fn signs() -> HyperAddTable {
        let s = SubsetMask::singleton;
        let all = SubsetMask::full(3);
        HyperAddTable::from_raw(3, vec![s(0), s(1), s(2), s(1), s(1), all, s(2), all, s(2)])
    }

    #[test]
    fn mask_basics() {
        let m = SubsetMask::from_elems([0, 3, 5]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.to_vec(), vec![0, 3, 5]);
        assert!(m.contains(3) && !m.contains(4));
        assert_eq!(m.min(), Some(0));
        assert_eq!(SubsetMask::singleton(7).single(), Some(7));
        assert_eq!(m.single(), None);
        assert_eq!(SubsetMask::full(64).len(), 64);
        assert!(SubsetMask::EMPTY.is_subset(m));
        assert_eq!(format!("{:?}", m), "{0, 3, 5}");
    }

    #[test]
    fn krasner_one_plus_one() {
        let k = krasner();
        let one = SubsetMask::singleton(1);
        assert_eq!(k.extend(one, one), SubsetMask::from_elems([0, 1]));
    }

    #[test]
    fn empty_operand_gives_empty() {
        let s = signs();
        assert!(s.extend(SubsetMask::EMPTY, SubsetMask::full(3)).is_empty());
        assert!(s.extend(SubsetMask::full(3), SubsetMask::EMPTY).is_empty());
    }

    #[test]
    fn signs_plus_minus_one_with_one_is_everything() {
        let s = signs();
        let a = SubsetMask::from_elems([1, 2]);
        assert_eq!(s.extend(a, SubsetMask::singleton(1)), SubsetMask::full(3));
    }

    #[test]
    fn iterated_sums() {
        assert_eq!(signs().sum(&[1, 2, 1]), SubsetMask::full(3));
        assert_eq!(krasner().sum(&[1, 1, 1]), SubsetMask::from_elems([0, 1]));
        assert_eq!(signs().sum(&[2]), SubsetMask::singleton(2));
    }

    #[test]
    fn extension_matches_naive_set_union() {
        let s = signs();
        for a in 0..8u64 {
            for b in 0..8u64 {
                let mut naive = BTreeSet::new();
                for x in SubsetMask(a) {
                    for y in SubsetMask(b) {
                        naive.extend(s.get(x, y).iter());
                    }
                }
                let got: BTreeSet<_> = s.extend(SubsetMask(a), SubsetMask(b)).iter().collect();
                assert_eq!(got, naive);
            }
        }
    }

    #[test]
    fn product_of_masks() {
        // signs multiplication: 0,1,-1 with -1 at index 2
        let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
        let pm = SubsetMask::from_elems([1, 2]);
        assert_eq!(mask_product(3, &mul, pm, pm), pm);
        assert_eq!(
            mask_product(3, &mul, SubsetMask::full(3), SubsetMask::singleton(0)),
            SubsetMask::singleton(0)
        );
    }
}
