//! Families of equal-length intervals on the line `X = {1, ..., 2k}`, and
//! the two-column map that turns a slice of a multiset family into one.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};

/// `r` intervals of common length `p` inside `{1, ..., 2k}`, stored by start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalFamily {
    k: u32,
    length: u32,
    starts: BTreeSet<u32>,
}

impl IntervalFamily {
    pub fn new(k: u32, length: u32, starts: impl IntoIterator<Item = u32>) -> Result<Self> {
        if length == 0 || length > 2 * k {
            return Err(invalid(format!(
                "interval length {length} must lie in 1..={}",
                2 * k
            )));
        }
        let starts: BTreeSet<u32> = starts.into_iter().collect();
        if let Some(&bad) = starts.iter().find(|&&s| s == 0 || s + length - 1 > 2 * k) {
            return Err(invalid(format!(
                "interval starting at {bad} with length {length} leaves {{1..{}}}",
                2 * k
            )));
        }
        Ok(IntervalFamily { k, length, starts })
    }

    /// `I(p, Y)`: every `p`-subinterval of `Y = {first, ..., last}`.
    pub fn all_subintervals(k: u32, length: u32, first: u32, last: u32) -> Result<Self> {
        if first == 0 || last < first || last - first + 1 < length {
            return Err(invalid(format!(
                "no {length}-subintervals of {{{first}..{last}}}"
            )));
        }
        IntervalFamily::new(k, length, first..=last + 1 - length)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn starts(&self) -> impl Iterator<Item = u32> + '_ {
        self.starts.iter().copied()
    }

    /// Inclusive `(start, end)` pairs.
    pub fn intervals(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.starts.iter().map(move |&s| (s, s + self.length - 1))
    }

    /// True when the starts are consecutive, i.e. the family is `I(p, Y)`
    /// for the union `Y`.
    pub fn is_complete(&self) -> bool {
        match (self.starts.first(), self.starts.last()) {
            (Some(&a), Some(&b)) => (b - a + 1) as usize == self.starts.len(),
            _ => true,
        }
    }

    /// Moves the family to the middle of `X`.
    ///
    /// The result is the `r` consecutive `p`-intervals whose union is the
    /// centered interval of length `L = p + r - 1`,
    /// `{k - ⌈L/2⌉ + 1, ..., k + ⌊L/2⌋}`. It only depends on `r` and `p`.
    pub fn phi_center(&self) -> Result<IntervalFamily> {
        if self.is_empty() {
            return Err(invalid("cannot center an empty interval family"));
        }
        let r = self.starts.len() as u32;
        let span = self.length + r - 1;
        let lo = self.k + 1 - span.div_ceil(2);
        IntervalFamily::new(self.k, self.length, lo..lo + r)
    }
}

fn overlap((a0, a1): (u32, u32), (b0, b1): (u32, u32)) -> u32 {
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    if hi >= lo {
        hi - lo + 1
    } else {
        0
    }
}

/// `min |I ∩ J|` over `I` in `a`, `J` in `b`.
pub fn interval_distance(a: &IntervalFamily, b: &IntervalFamily) -> Result<u32> {
    if a.k != b.k {
        return Err(invalid(format!(
            "interval families live on different lines (k={} vs k={})",
            a.k, b.k
        )));
    }
    a.intervals()
        .flat_map(|x| b.intervals().map(move |y| overlap(x, y)))
        .min()
        .ok_or_else(|| invalid("interval distance of an empty family"))
}

/// Start of `Ψ(F)` restricted to columns `(i, j)` when `m(i,F) = mi`:
/// column `i` is laid on `{k, k-1, ..., 1}` and column `j` on `{k+1, ..., 2k}`.
pub(crate) fn lay_start(k: u32, mi: u32) -> u32 {
    k + 1 - mi
}

/// Inverse of [`lay_start`]: `m(i,F)` from the start of the interval.
pub(crate) fn unlay_start(k: u32, start: u32) -> u32 {
    k + 1 - start
}
