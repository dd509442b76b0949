//! Edge subsets as bit masks.
//!
//! Ground sets are edge lists (or matrix columns); a subset is a mask over
//! indices `0..m` with `m <= 63`, which is far beyond anything the
//! exponential enumerations can chew through anyway.

use std::fmt;

/// Subset of edge (or column) indices, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSubset(u64);

impl EdgeSubset {
    pub const fn empty() -> Self {
        EdgeSubset(0)
    }

    /// Full ground set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= 63, "ground set too large for bit-mask subsets");
        EdgeSubset(if m == 0 { 0 } else { (1u64 << m) - 1 })
    }

    pub const fn from_mask(mask: u64) -> Self {
        EdgeSubset(mask)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut s = EdgeSubset::empty();
        for &i in indices {
            s = s.with(i);
        }
        s
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        assert!(e < 64);
        EdgeSubset(self.0 | 1 << e)
    }

    #[must_use]
    pub fn without(self, e: usize) -> Self {
        assert!(e < 64);
        EdgeSubset(self.0 & !(1 << e))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        EdgeSubset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        EdgeSubset(self.0 & other.0)
    }

    /// Indices present in the subset, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&e| self.0 >> e & 1 == 1)
    }

    /// All `2^m` subsets of the ground set `{0, .., m-1}`, ascending as masks.
    pub fn all(m: usize) -> impl Iterator<Item = EdgeSubset> {
        assert!(m <= 63);
        (0..1u64 << m).map(EdgeSubset)
    }

    /// All subsets of `self`, ascending as masks (the empty set first,
    /// `self` last).
    pub fn subsets(self) -> impl Iterator<Item = EdgeSubset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some(cur.wrapping_sub(full) & full)
            };
            Some(EdgeSubset(cur))
        })
    }

    /// Subsets of `self` ordered by size, then by mask value.
    pub fn subsets_by_size(self) -> Vec<EdgeSubset> {
        let mut all: Vec<EdgeSubset> = self.subsets().collect();
        all.sort_by_key(|s| (s.len(), s.0));
        all
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "e{e}")?;
        }
        write!(f, "}}")
    }
}
