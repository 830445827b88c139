//! Multisets of `[n]` as multiplicity vectors, with their staircase view.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A multiset of the ground set `[n]`, stored as its multiplicity vector.
///
/// The derived ordering is lexicographic on the multiplicity vector, which is
/// the canonical member order of a [`Family`](crate::Family).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset {
    mult: Vec<u32>,
}

/// A cell `(column, row)` of the `ℓ × n` rectangle.
///
/// Columns are 0-based, rows are 1-based: a multiset contains `(i, r)` iff
/// `1 <= r <= m(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircaseCell {
    pub column: usize,
    pub row: u32,
}

impl Multiset {
    pub fn new(mult: Vec<u32>) -> Result<Self> {
        if mult.is_empty() {
            return Err(invalid("a multiset needs a ground set of size n >= 1"));
        }
        Ok(Multiset { mult })
    }

    pub(crate) fn from_vec_unchecked(mult: Vec<u32>) -> Self {
        debug_assert!(!mult.is_empty());
        Multiset { mult }
    }

    /// The empty multiset of `[n]`.
    pub fn zeros(n: usize) -> Result<Self> {
        Multiset::new(vec![0; n])
    }

    /// The rectangle `M(n, height)`: every column filled to `height`.
    pub fn rectangle(n: usize, height: u32) -> Result<Self> {
        Multiset::new(vec![height; n])
    }

    /// `M(n, 1)`, the first row.
    pub fn first_row(n: usize) -> Result<Self> {
        Multiset::rectangle(n, 1)
    }

    pub fn n(&self) -> usize {
        self.mult.len()
    }

    /// `|F|`, the sum of the multiplicities.
    pub fn cardinality(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn multiplicity(&self, column: usize) -> u32 {
        self.mult[column]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mult
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.mult
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Number of columns with multiplicity at least one, i.e. `|F ∩ M(n,1)|`.
    pub fn support_size(&self) -> u32 {
        self.mult.iter().filter(|&&m| m > 0).count() as u32
    }

    /// Columns with multiplicity at least one.
    pub fn support(&self) -> Vec<usize> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_same_n(&self, other: &Multiset) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// Coordinatewise minimum.
    pub fn intersect(&self, other: &Multiset) -> Result<Multiset> {
        self.check_same_n(other)?;
        Ok(Multiset::from_vec_unchecked(
            self.mult
                .iter()
                .zip(&other.mult)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        ))
    }

    /// `|F ∩ G|` without materializing the intersection.
    pub fn intersection_size(&self, other: &Multiset) -> Result<u32> {
        self.check_same_n(other)?;
        Ok(meet(&self.mult, &other.mult))
    }

    /// `Σ |m(i,F) - m(i,G)|`.
    pub fn l1_distance(&self, other: &Multiset) -> Result<u32> {
        self.check_same_n(other)?;
        Ok(self
            .mult
            .iter()
            .zip(&other.mult)
            .map(|(&a, &b)| a.abs_diff(b))
            .sum())
    }

    /// Coordinatewise `self >= other`.
    pub fn contains(&self, other: &Multiset) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(self.mult.iter().zip(&other.mult).all(|(a, b)| a >= b))
    }

    /// The cells of the staircase, column by column, bottom row first.
    pub fn staircase(&self) -> Vec<StaircaseCell> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(column, &m)| (1..=m).map(move |row| StaircaseCell { column, row }))
            .collect()
    }

    /// Rebuilds a multiset from staircase cells. Every column must be
    /// downward closed.
    pub fn from_staircase(n: usize, cells: &[StaircaseCell]) -> Result<Multiset> {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for cell in cells {
            if cell.column >= n {
                return Err(Error::InvalidColumn {
                    index: cell.column,
                    n,
                });
            }
            if cell.row == 0 {
                return Err(invalid("staircase rows start at 1"));
            }
            rows[cell.column].push(cell.row);
        }
        let mut mult = Vec::with_capacity(n);
        for (column, mut col) in rows.into_iter().enumerate() {
            col.sort_unstable();
            col.dedup();
            let top = col.len() as u32;
            if col.last().copied().unwrap_or(0) != top {
                return Err(invalid(format!("column {column} is not downward closed")));
            }
            mult.push(top);
        }
        Multiset::new(mult)
    }

    pub(crate) fn with_columns(&self, updates: &[(usize, u32)]) -> Multiset {
        let mut mult = self.mult.clone();
        for &(c, v) in updates {
            mult[c] = v;
        }
        Multiset::from_vec_unchecked(mult)
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, m) in self.mult.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// `Σ min(a_i, b_i)` over equal-length slices.
#[inline]
pub(crate) fn meet(a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x.min(y)).sum()
}

/// `Σ min(a_i, b_i, c_i)` over equal-length slices.
#[inline]
pub(crate) fn meet3(a: &[u32], b: &[u32], c: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((&x, &y), &z)| x.min(y).min(z))
        .sum()
}

/// Every `k`-multiset of `[n]` with all multiplicities at most `cap`
/// (default `k`), in ascending lexicographic order.
pub fn enumerate_multisets(n: usize, k: u32, cap: Option<u32>) -> MultisetIter {
    MultisetIter::new(n, k, cap.unwrap_or(k))
}

/// Iterator returned by [`enumerate_multisets`].
#[derive(Clone, Debug)]
pub struct MultisetIter {
    cap: u32,
    current: Option<Vec<u32>>,
}

impl MultisetIter {
    fn new(n: usize, k: u32, cap: u32) -> Self {
        let feasible = n >= 1 && (k as u64) <= cap as u64 * n as u64;
        let current = feasible.then(|| {
            let mut v = vec![0; n];
            fill_minimal(&mut v, k, cap);
            v
        });
        MultisetIter { cap, current }
    }
}

/// Lexicographically smallest filling of `slot` with total `sum`, heights `<= cap`.
fn fill_minimal(slot: &mut [u32], mut sum: u32, cap: u32) {
    for x in slot.iter_mut().rev() {
        let take = sum.min(cap);
        *x = take;
        sum -= take;
    }
    debug_assert_eq!(sum, 0);
}

impl Iterator for MultisetIter {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let current = self.current.as_mut()?;
        let out = Multiset::from_vec_unchecked(current.clone());
        let n = current.len();
        let mut suffix: u32 = current[n - 1];
        let mut advanced = false;
        for p in (0..n.saturating_sub(1)).rev() {
            if current[p] < self.cap && suffix >= 1 {
                current[p] += 1;
                fill_minimal(&mut current[p + 1..], suffix - 1, self.cap);
                advanced = true;
                break;
            }
            suffix += current[p];
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[u32]) -> Multiset {
        Multiset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_intersection() {
        let f = ms(&[3, 1, 2, 0, 0]);
        let g = ms(&[2, 2, 0, 1, 1]);
        assert_eq!(f.intersect(&g).unwrap(), ms(&[2, 1, 0, 0, 0]));
        assert_eq!(f.l1_distance(&g).unwrap(), 6);
        assert_eq!(6 - 6 / 2, f.intersection_size(&g).unwrap());
    }

    #[test]
    fn intersection_edge_cases() {
        let f = ms(&[3, 1, 2, 0, 0]);
        assert_eq!(f.intersect(&f).unwrap(), f);
        assert_eq!(f.l1_distance(&f).unwrap(), 0);
        assert_eq!(
            ms(&[1, 1, 0]).intersect(&ms(&[0, 0, 2])).unwrap(),
            ms(&[0, 0, 0])
        );
        assert!(matches!(
            f.intersect(&ms(&[1, 1])),
            Err(Error::DimensionMismatch {
                expected: 5,
                found: 2
            })
        ));
        assert!(f.l1_distance(&ms(&[1])).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_multisets(3, 2, None).count(), 6);
        let single: Vec<_> = enumerate_multisets(1, 5, None).collect();
        assert_eq!(single, vec![ms(&[5])]);
        let subsets: Vec<_> = enumerate_multisets(4, 3, Some(1)).collect();
        assert_eq!(subsets.len(), 4);
        assert!(subsets.iter().all(|s| s.max_multiplicity() == 1));
        assert_eq!(enumerate_multisets(2, 5, Some(2)).count(), 0);
        assert_eq!(
            enumerate_multisets(3, 0, None).collect::<Vec<_>>(),
            vec![ms(&[0, 0, 0])]
        );
    }

    #[test]
    fn enumeration_is_sorted() {
        let all: Vec<_> = enumerate_multisets(4, 4, Some(3)).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.first().unwrap(), &ms(&[0, 0, 1, 3]));
        assert_eq!(all.last().unwrap(), &ms(&[3, 1, 0, 0]));
    }

    #[test]
    fn staircase_round_trip() {
        let f = ms(&[3, 0, 1]);
        let cells = f.staircase();
        assert_eq!(cells.len(), 4);
        assert_eq!(Multiset::from_staircase(3, &cells).unwrap(), f);
        let gap = [StaircaseCell { column: 0, row: 2 }];
        assert!(Multiset::from_staircase(3, &gap).is_err());
    }

    #[test]
    fn support_and_containment() {
        let f = ms(&[2, 0, 1]);
        assert_eq!(f.support(), vec![0, 2]);
        assert_eq!(f.support_size(), 2);
        assert!(f.contains(&ms(&[1, 0, 1])).unwrap());
        assert!(!f.contains(&ms(&[0, 1, 0])).unwrap());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn pair(n: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
        (
            proptest::collection::vec(0u32..5, n),
            proptest::collection::vec(0u32..5, n),
        )
    }

    proptest! {
        #[test]
        fn meet_is_commutative_and_bounded((a, b) in (1usize..7).prop_flat_map(pair)) {
            let (a, b) = (Multiset::new(a).unwrap(), Multiset::new(b).unwrap());
            let ab = a.intersect(&b).unwrap();
            prop_assert_eq!(&ab, &b.intersect(&a).unwrap());
            prop_assert!(a.contains(&ab).unwrap() && b.contains(&ab).unwrap());
            let d = a.l1_distance(&b).unwrap();
            // |A| + |B| = 2|A ∩ B| + d
            prop_assert_eq!(a.cardinality() + b.cardinality(), 2 * ab.cardinality() + d);
        }

        #[test]
        fn staircase_round_trip(v in proptest::collection::vec(0u32..6, 1..7)) {
            let m = Multiset::new(v).unwrap();
            let cells = m.staircase();
            prop_assert_eq!(cells.len() as u32, m.cardinality());
            prop_assert_eq!(Multiset::from_staircase(m.n(), &cells).unwrap(), m);
        }

        #[test]
        fn enumeration_is_sorted_and_capped(n in 1usize..5, k in 0u32..6, cap in 1u32..4) {
            let all: Vec<_> = enumerate_multisets(n, k, Some(cap)).collect();
            prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(all.iter().all(|m| m.cardinality() == k && m.max_multiplicity() <= cap));
        }
    }
}
