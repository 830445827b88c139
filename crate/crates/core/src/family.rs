//! Families of `k`-multisets over a common ground set, and the predicates
//! on them.
//!
//! Text format, one multiset per line:
//!
//! ```text
//! n=3 k=2
//! 1,0,1
//! 2,0,0
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::multiset::{meet, meet3, Multiset};

/// A duplicate-free family of `k`-multisets of `[n]`, iterated in
/// lexicographic order of the multiplicity vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    k: u32,
    height_cap: Option<u32>,
    members: BTreeSet<Multiset>,
}

impl Family {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ground set size n must be >= 1"));
        }
        Ok(Family {
            n,
            k,
            height_cap: None,
            members: BTreeSet::new(),
        })
    }

    pub fn with_cap(n: usize, k: u32, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(invalid("height cap must be >= 1"));
        }
        let mut family = Family::new(n, k)?;
        family.height_cap = Some(cap);
        Ok(family)
    }

    pub fn from_members<I>(n: usize, k: u32, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Multiset>,
    {
        let mut family = Family::new(n, k)?;
        for m in members {
            family.insert(m)?;
        }
        Ok(family)
    }

    /// Builds a family from raw multiplicity vectors. Shape is taken from the
    /// first row, so the input must be nonempty.
    pub fn from_vecs(rows: &[&[u32]]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| invalid("from_vecs needs at least one member"))?;
        let n = first.len();
        let k = first.iter().sum();
        Family::from_members(
            n,
            k,
            rows.iter()
                .map(|r| Multiset::new(r.to_vec()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Same shape and cap, no members.
    pub fn empty_like(&self) -> Family {
        Family {
            n: self.n,
            k: self.k,
            height_cap: self.height_cap,
            members: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn height_cap(&self) -> Option<u32> {
        self.height_cap
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Multiset> + DoubleEndedIterator + '_ {
        self.members.iter()
    }

    pub fn contains(&self, m: &Multiset) -> bool {
        self.members.contains(m)
    }

    fn check_member(&self, m: &Multiset) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        let card = m.cardinality();
        if card != self.k {
            return Err(Error::CardinalityMismatch {
                expected: self.k,
                found: card,
            });
        }
        if let Some(cap) = self.height_cap {
            let top = m.max_multiplicity();
            if top > cap {
                return Err(Error::HeightCapExceeded { cap, found: top });
            }
        }
        Ok(())
    }

    /// Inserts a member; returns whether it was new.
    pub fn insert(&mut self, m: Multiset) -> Result<bool> {
        self.check_member(&m)?;
        Ok(self.members.insert(m))
    }

    pub(crate) fn insert_unchecked(&mut self, m: Multiset) -> bool {
        debug_assert!(self.check_member(&m).is_ok());
        self.members.insert(m)
    }

    /// Every pair, including each member with itself, meets in at least `t`.
    pub fn is_t_intersecting(&self, t: u32) -> bool {
        if self.is_empty() || t == 0 {
            return true;
        }
        if self.k < t {
            return false;
        }
        let rows: Vec<&[u32]> = self.members.iter().map(Multiset::as_slice).collect();
        rows.iter()
            .enumerate()
            .all(|(a, fa)| rows[a + 1..].iter().all(|fb| meet(fa, fb) >= t))
    }

    /// `|F1 ∩ F2 ∩ T| >= t` for every pair of members (including `F1 = F2`).
    pub fn is_t_kernel(&self, kernel: &Multiset, t: u32) -> Result<bool> {
        if kernel.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: kernel.n(),
            });
        }
        let tk = kernel.as_slice();
        let rows: Vec<&[u32]> = self.members.iter().map(Multiset::as_slice).collect();
        Ok(rows
            .iter()
            .enumerate()
            .all(|(a, fa)| rows[a..].iter().all(|fb| meet3(fa, fb, tk) >= t)))
    }

    /// `F_T`: the members containing `T`.
    pub fn subfamily_containing(&self, t_set: &Multiset) -> Result<Family> {
        if t_set.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: t_set.n(),
            });
        }
        let mut out = self.empty_like();
        for m in &self.members {
            if m.contains(t_set)? {
                out.members.insert(m.clone());
            }
        }
        Ok(out)
    }

    /// Largest multiplicity over all members; 0 for an empty family.
    pub fn max_height(&self) -> u32 {
        self.members
            .iter()
            .map(Multiset::max_multiplicity)
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Multiset;
    type IntoIter = std::collections::btree_set::Iter<'a, Multiset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} k={}", self.n, self.k)?;
        for m in &self.members {
            let row: Vec<String> = m.as_slice().iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str) -> Option<(usize, u32)> {
    let mut n = None;
    let mut k = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok.split_once('=')?;
        match key {
            "n" => n = value.parse().ok(),
            "k" => k = value.parse().ok(),
            _ => return None,
        }
    }
    Some((n?, k?))
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(idx, l)| (idx + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let (n, k) = parse_header(header)
            .ok_or_else(|| parse_err(hline, format!("expected `n=<n> k=<k>`, got `{header}`")))?;
        let mut family = Family::new(n, k).map_err(|e| parse_err(hline, e.to_string()))?;
        for (lineno, line) in lines {
            let mult = line
                .split(',')
                .map(|tok| tok.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(lineno, e.to_string()))?;
            let m = Multiset::new(mult).map_err(|e| parse_err(lineno, e.to_string()))?;
            let fresh = family
                .insert(m)
                .map_err(|e| parse_err(lineno, e.to_string()))?;
            if !fresh {
                return Err(parse_err(lineno, "duplicate member"));
            }
        }
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::enumerate_multisets;

    fn ms(v: &[u32]) -> Multiset {
        Multiset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn intersecting_examples() {
        assert!(Family::from_vecs(&[&[2, 0], &[1, 1]])
            .unwrap()
            .is_t_intersecting(1));
        assert!(!Family::from_vecs(&[&[2, 0, 0], &[0, 2, 0]])
            .unwrap()
            .is_t_intersecting(1));
        let all = Family::from_members(3, 2, enumerate_multisets(3, 2, None)).unwrap();
        assert_eq!(all.len(), 6);
        assert!(!all.is_t_intersecting(1));
        assert!(all.is_t_intersecting(0));
        assert!(Family::new(4, 3).unwrap().is_t_intersecting(7));
    }

    #[test]
    fn self_pairs_count() {
        let single = Family::from_vecs(&[&[1, 1]]).unwrap();
        assert!(single.is_t_intersecting(2));
        assert!(!single.is_t_intersecting(3));
    }

    #[test]
    fn kernel_examples() {
        let fam = Family::from_vecs(&[&[2, 1, 0], &[1, 1, 1], &[1, 2, 0]]).unwrap();
        let full = Multiset::rectangle(3, 3).unwrap();
        for t in 0..=3 {
            assert_eq!(fam.is_t_kernel(&full, t).unwrap(), fam.is_t_intersecting(t));
        }
        let t0 = ms(&[1, 1, 0]);
        assert!(fam.is_t_kernel(&t0, 2).unwrap());
        assert!(fam.is_t_kernel(&ms(&[1]), 1).is_err());
    }

    #[test]
    fn subfamily_and_height() {
        let fam = Family::from_vecs(&[&[2, 1, 0], &[1, 1, 1], &[0, 0, 3]]).unwrap();
        assert_eq!(fam.subfamily_containing(&ms(&[0, 0, 0])).unwrap(), fam);
        let sub = fam.subfamily_containing(&ms(&[1, 1, 0])).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(fam.max_height(), 3);
        assert_eq!(Family::new(2, 2).unwrap().max_height(), 0);
        assert_eq!(
            Family::from_vecs(&[&[3, 1, 2, 0, 0]]).unwrap().max_height(),
            3
        );
    }

    #[test]
    fn rejects_bad_members() {
        let mut fam = Family::with_cap(3, 3, 2).unwrap();
        assert!(matches!(
            fam.insert(ms(&[3, 0, 0])),
            Err(Error::HeightCapExceeded { cap: 2, found: 3 })
        ));
        assert!(matches!(
            fam.insert(ms(&[1, 0, 0])),
            Err(Error::CardinalityMismatch { .. })
        ));
        assert!(fam.insert(ms(&[1, 1])).is_err());
        assert!(fam.insert(ms(&[2, 1, 0])).unwrap());
        assert!(!fam.insert(ms(&[2, 1, 0])).unwrap());
    }

    #[test]
    fn text_format() {
        let fam = Family::from_vecs(&[&[2, 0, 0], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        let text = fam.to_text();
        assert_eq!(text, "n=3 k=2\n1,0,1\n1,1,0\n2,0,0\n");
        assert_eq!(text.parse::<Family>().unwrap(), fam);
        let empty: Family = "n=4 k=2\n".parse().unwrap();
        assert!(empty.is_empty());
        assert!("n=3 k=2\n1,1\n".parse::<Family>().is_err());
        assert!("n=3 k=2\n1,0,1\n1,0,1\n".parse::<Family>().is_err());
        assert!("k=2\n".parse::<Family>().is_err());
        assert!(matches!(
            "n=2 k=2\n1,x\n".parse::<Family>(),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::multiset::enumerate_multisets;
    use proptest::prelude::*;

    fn random_family() -> impl Strategy<Value = Family> {
        (1usize..5, 1u32..4).prop_flat_map(|(n, k)| {
            let all: Vec<Multiset> = enumerate_multisets(n, k, None).collect();
            let len = all.len();
            proptest::sample::subsequence(all, 0..=len)
                .prop_map(move |members| Family::from_members(n, k, members).unwrap())
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(fam in random_family()) {
            let back: Family = fam.to_text().parse().unwrap();
            prop_assert_eq!(back, fam);
        }

        #[test]
        fn rectangle_kernel_is_plain_intersection(fam in random_family(), t in 1u32..4) {
            let full = Multiset::rectangle(fam.n(), fam.k()).unwrap();
            prop_assert_eq!(fam.is_t_kernel(&full, t).unwrap(), fam.is_t_intersecting(t));
        }
    }
}
