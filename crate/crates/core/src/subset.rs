//! Subsets of `[n] = {1, …, n}` as bitmasks.
//!
//! Element `i` is bit `i - 1`. Every `2ⁿ × 2ⁿ` matrix in the crate is
//! indexed by masks in increasing numeric order, so a row index *is* a
//! subset.

use std::fmt;

use crate::error::{domain, Result};

/// Largest `n` a mask can hold.
pub const MAX_ELEMENTS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        Subset(if n == 0 { 0 } else { u64::MAX >> (64 - n) })
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(elements: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > MAX_ELEMENTS {
                return domain(format!("subset element {e} outside 1..={MAX_ELEMENTS}"));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= MAX_ELEMENTS && self.0 >> (element - 1) & 1 == 1
    }

    /// Whether every element lies in `[n]`.
    pub fn within(self, n: usize) -> bool {
        n >= MAX_ELEMENTS || self.0 >> n == 0
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize + 1);
            m &= m - 1;
        }
        out
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }

    /// Subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = Subset> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", elems.join(","))
    }
}

/// Joint membership counts of two subsets of `[n]`.
///
/// `in_out` counts elements in `I` but not in `J`; `out_in` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OverlapStats {
    pub n: usize,
    pub in_in: usize,
    pub out_out: usize,
    pub out_in: usize,
    pub in_out: usize,
}

impl OverlapStats {
    pub fn new(i: Subset, j: Subset, n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS || !i.within(n) || !j.within(n) {
            return domain(format!("subsets {i} and {j} are not contained in [{n}]"));
        }
        let in_in = i.intersection(j).len();
        let in_out = i.difference(j).len();
        let out_in = j.difference(i).len();
        Ok(Self { n, in_in, out_out: n - in_in - in_out - out_in, out_in, in_out })
    }

    /// `(n - n∈∈ - n∉∉) / 2` when the two mixed counts agree.
    pub fn half_mixed(&self) -> Option<usize> {
        (self.out_in == self.in_out).then_some(self.out_in)
    }
}
