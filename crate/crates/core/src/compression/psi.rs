//! Two-column balancing `ψ_{i,j}`.
//!
//! Members are grouped into slices that agree outside columns `i` and `j`.
//! Inside a slice `m(i,F) + m(j,F) = s` is constant, so the two columns laid
//! end to end (column `i` upside down on `{1..k}`, column `j` on
//! `{k+1..2k}`) turn every member into an `s`-interval. The slice is replaced
//! by the preimage of its centered interval family.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::multiset::Multiset;

use super::interval::{lay_start, unlay_start, IntervalFamily};

/// Identifies the slice `F_g`: the columns being balanced, the multiplicities
/// `g` elsewhere (stored with zeros at `i` and `j`), and the forced sum `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceKey {
    pub i: usize,
    pub j: usize,
    pub g: Vec<u32>,
    pub s: u32,
}

pub(crate) fn check_columns(n: usize, i: usize, j: usize) -> Result<()> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::InvalidColumn { index, n });
        }
    }
    if i == j {
        return Err(Error::InvalidParameter(format!(
            "columns must differ, got i = j = {i}"
        )));
    }
    Ok(())
}

/// Partitions `family` into the slices of the column pair `(i, j)`.
pub fn slices(family: &Family, i: usize, j: usize) -> Result<BTreeMap<SliceKey, Vec<Multiset>>> {
    check_columns(family.n(), i, j)?;
    let mut out: BTreeMap<SliceKey, Vec<Multiset>> = BTreeMap::new();
    for m in family {
        let s = m.multiplicity(i) + m.multiplicity(j);
        let g = m.with_columns(&[(i, 0), (j, 0)]).into_vec();
        out.entry(SliceKey { i, j, g, s })
            .or_default()
            .push(m.clone());
    }
    Ok(out)
}

/// `Ψ` on one slice: the interval family of its members in columns `(i, j)`.
pub fn slice_intervals(k: u32, key: &SliceKey, members: &[Multiset]) -> Result<IntervalFamily> {
    IntervalFamily::new(
        k,
        key.s,
        members.iter().map(|m| lay_start(k, m.multiplicity(key.i))),
    )
}

/// `ψ_{i,j}(A)`: balances columns `i` and `j` slice by slice.
///
/// Mass is tilted toward `i` when a slice cannot be split evenly, so the
/// compression driver only uses pairs with `i < j`.
pub fn psi(family: &Family, i: usize, j: usize) -> Result<Family> {
    let k = family.k();
    let mut out = family.empty_like();
    for (key, members) in slices(family, i, j)? {
        if key.s == 0 {
            // one possible member, nothing to move
            for m in members {
                out.insert_unchecked(m);
            }
            continue;
        }
        let centered = slice_intervals(k, &key, &members)?.phi_center()?;
        let base = Multiset::from_vec_unchecked(key.g.clone());
        for start in centered.starts() {
            let mi = unlay_start(k, start);
            debug_assert!(mi <= key.s);
            out.insert_unchecked(base.with_columns(&[(i, mi), (j, key.s - mi)]));
        }
    }
    debug_assert_eq!(out.len(), family.len());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_slice_is_fixed() {
        let fam = Family::from_vecs(&[&[0, 2], &[1, 1], &[2, 0]]).unwrap();
        let key = SliceKey {
            i: 0,
            j: 1,
            g: vec![0, 0],
            s: 2,
        };
        let members: Vec<_> = fam.iter().cloned().collect();
        let iv = slice_intervals(2, &key, &members).unwrap();
        assert!(iv.is_complete());
        assert_eq!(
            iv.intervals().collect::<Vec<_>>(),
            vec![(1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(psi(&fam, 0, 1).unwrap(), fam);
    }

    #[test]
    fn concentrated_member_is_balanced() {
        let fam = Family::from_vecs(&[&[2, 0, 1]]).unwrap();
        assert_eq!(
            psi(&fam, 0, 1).unwrap(),
            Family::from_vecs(&[&[1, 1, 1]]).unwrap()
        );
        let fam = Family::from_vecs(&[&[0, 3]]).unwrap();
        assert_eq!(
            psi(&fam, 0, 1).unwrap(),
            Family::from_vecs(&[&[2, 1]]).unwrap()
        );
        let fam = Family::from_vecs(&[&[3, 0, 0]]).unwrap();
        assert_eq!(
            psi(&fam, 0, 2).unwrap(),
            Family::from_vecs(&[&[2, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn slices_partition_by_other_columns() {
        let fam = Family::from_vecs(&[&[2, 0, 1], &[0, 2, 1], &[1, 0, 2], &[3, 0, 0]]).unwrap();
        let parts = slices(&fam, 0, 1).unwrap();
        assert_eq!(parts.len(), 3);
        let sizes: Vec<usize> = parts.values().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 4);
        let out = psi(&fam, 0, 1).unwrap();
        assert_eq!(out.len(), 4);
        let after: Vec<usize> = slices(&out, 0, 1).unwrap().values().map(Vec::len).collect();
        assert_eq!(after, sizes);
    }

    #[test]
    fn bad_columns() {
        let fam = Family::from_vecs(&[&[1, 1]]).unwrap();
        assert!(psi(&fam, 0, 0).is_err());
        assert!(psi(&fam, 0, 2).is_err());
    }
}
