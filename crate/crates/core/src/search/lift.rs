//! Lifting a first-row-compressed multiset family to a family of sets on
//! `n + k - 1` points.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::multiset::Multiset;

/// A duplicate-free family of `k`-subsets of `{0, ..., N-1}`, each stored
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    k: usize,
    members: BTreeSet<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground: usize, k: usize) -> Self {
        SetFamily {
            ground,
            k,
            members: BTreeSet::new(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.members.iter()
    }

    /// Inserts a set (any order); returns whether it was new.
    pub fn insert(&mut self, mut set: Vec<usize>) -> Result<bool> {
        set.sort_unstable();
        set.dedup();
        if set.len() != self.k {
            return Err(invalid(format!(
                "expected a {}-set, got {} distinct elements",
                self.k,
                set.len()
            )));
        }
        if set.last().is_some_and(|&x| x >= self.ground) {
            return Err(invalid(format!(
                "element outside the ground set of size {}",
                self.ground
            )));
        }
        Ok(self.members.insert(set))
    }

    pub fn is_t_intersecting(&self, t: usize) -> bool {
        if self.members.is_empty() || t == 0 {
            return true;
        }
        if self.k < t {
            return false;
        }
        let rows: Vec<&Vec<usize>> = self.members.iter().collect();
        rows.iter()
            .enumerate()
            .all(|(a, x)| rows[a + 1..].iter().all(|y| sorted_overlap(x, y) >= t))
    }
}

fn sorted_overlap(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// `G_s`: the distinct supports (first-row restrictions) of size `s`.
pub fn support_layers(family: &Family) -> BTreeMap<usize, BTreeSet<Vec<usize>>> {
    let mut layers: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for m in family {
        let support = m.support();
        layers.entry(support.len()).or_default().insert(support);
    }
    layers
}

/// Keeps every support `G` on the first `n` points and extends it by every
/// `(k - |G|)`-subset of the `k - 1` extra points `n, ..., n+k-2`.
///
/// Requires `M(n,1)` to be a `t`-kernel of `family`; the lift is then
/// `t`-intersecting and has at least as many members as `family`.
pub fn lift_to_sets(family: &Family, t: u32) -> Result<SetFamily> {
    let n = family.n();
    let k = family.k() as usize;
    if k == 0 {
        return Err(invalid("lifting needs k >= 1"));
    }
    if !family.is_t_kernel(&Multiset::first_row(n)?, t)? {
        return Err(Error::KernelPrecondition(format!(
            "M(n,1) is not a {t}-kernel of the family"
        )));
    }
    let extra: Vec<usize> = (n..n + k - 1).collect();
    let mut out = SetFamily::new(n + k - 1, k);
    for (s, supports) in support_layers(family) {
        for support in supports {
            for tail in extra.iter().copied().combinations(k - s) {
                let mut set = support.clone();
                set.extend(tail);
                out.insert(set)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::construct::build_star_multiset_family;

    #[test]
    fn star_lifts_to_star() {
        let base = Multiset::new(vec![1, 1, 0, 0]).unwrap();
        let star = build_star_multiset_family(4, 3, 2, &base).unwrap();
        let lifted = lift_to_sets(&star, 2).unwrap();
        assert_eq!(lifted.ground(), 6);
        // C(n+k-1-t, k-t) = C(4, 1)
        assert_eq!(lifted.len(), 4);
        assert!(lifted.iter().all(|s| s.starts_with(&[0, 1])));
        assert!(lifted.is_t_intersecting(2));
    }

    #[test]
    fn requires_first_row_kernel() {
        let tall = Family::from_vecs(&[&[2, 0, 0]]).unwrap();
        assert!(lift_to_sets(&tall, 2).is_err());
    }

    #[test]
    fn set_family_checks() {
        let mut f = SetFamily::new(4, 2);
        assert!(f.insert(vec![1, 0]).unwrap());
        assert!(!f.insert(vec![0, 1]).unwrap());
        assert!(f.insert(vec![0, 4]).is_err());
        assert!(f.insert(vec![0]).is_err());
        assert!(f.insert(vec![2, 3]).unwrap());
        assert!(!f.is_t_intersecting(1));
    }
}
