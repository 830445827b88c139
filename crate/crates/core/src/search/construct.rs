//! Explicit extremal families.

use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::bounds::{ak, multiset_bound};
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::multiset::{enumerate_multisets, Multiset};

use super::lift::SetFamily;

/// All `k`-multisets of `[n]` containing the `t`-multiset `base`.
pub fn build_star_multiset_family(n: usize, k: u32, t: u32, base: &Multiset) -> Result<Family> {
    if base.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: base.n(),
        });
    }
    if base.cardinality() != t || t > k {
        return Err(invalid(format!(
            "star centre must be a t-multiset with t <= k, got |T|={} t={t} k={k}",
            base.cardinality()
        )));
    }
    let mut out = Family::new(n, k)?;
    for m in enumerate_multisets(n, k, None) {
        if m.contains(base)? {
            out.insert_unchecked(m);
        }
    }
    Ok(out)
}

/// All `k`-multisets `F` with `|F ∩ T| >= r`; pairwise they meet inside `T`
/// in at least `2r - |T|` elements.
pub fn build_kernel_family(n: usize, k: u32, kernel: &Multiset, r: u32) -> Result<Family> {
    if kernel.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: kernel.n(),
        });
    }
    let size = kernel.cardinality();
    if r > size || size > k {
        return Err(invalid(format!(
            "need r <= |T| <= k, got r={r} |T|={size} k={k}"
        )));
    }
    let mut out = Family::new(n, k)?;
    for m in enumerate_multisets(n, k, None) {
        if m.intersection_size(kernel)? >= r {
            out.insert_unchecked(m);
        }
    }
    Ok(out)
}

/// `A(N,k,t,i)`: the `k`-subsets of `[N]` meeting `{0, ..., t+2i-1}` in at
/// least `t+i` elements.
pub fn build_ak_set_family(ground: usize, k: usize, t: usize, i: usize) -> Result<SetFamily> {
    if t + 2 * i > ground || t + i > k || k > ground {
        return Err(invalid(format!(
            "need t+2i <= N and t+i <= k <= N, got N={ground} k={k} t={t} i={i}"
        )));
    }
    let core = t + 2 * i;
    let mut out = SetFamily::new(ground, k);
    for subset in (0..ground).combinations(k) {
        if subset.iter().filter(|&&x| x < core).count() >= t + i {
            out.insert(subset)?;
        }
    }
    Ok(out)
}

/// A `t`-intersecting family of `k`-multisets of `[n]` of size
/// `AK(n+k-1, k, t)`: the multisets whose support meets the first
/// `t + 2i*` columns in at least `t + i*` places, with `i*` the smallest
/// maximizer for the lifted ground set.
///
/// Size and intersection are checked before returning.
pub fn build_optimal_multiset_family(n: usize, k: u32, t: u32) -> Result<Family> {
    let nn = n as u32;
    if t == 0 || t > k || (n as u64) + (t as u64) < 2 * k as u64 {
        return Err(invalid(format!(
            "need 1 <= t <= k and n >= 2k - t, got n={n} k={k} t={t}"
        )));
    }
    let i_star = ak(nn + k - 1, k, t)?.i_star;
    let core = (t + 2 * i_star) as usize;
    if core > n {
        return Err(invalid(format!("t + 2i* = {core} exceeds n = {n}")));
    }
    let need = (t + i_star) as usize;
    let mut out = Family::new(n, k)?;
    for m in enumerate_multisets(n, k, None) {
        if m.as_slice()[..core].iter().filter(|&&x| x > 0).count() >= need {
            out.insert_unchecked(m);
        }
    }
    let bound = multiset_bound(nn, k, t)?.value;
    if bound.to_usize() != Some(out.len()) {
        return Err(Error::CertificationFailed(format!(
            "construction has {} members, bound is {bound}",
            out.len()
        )));
    }
    if !out.is_t_intersecting(t) {
        return Err(Error::CertificationFailed(format!(
            "construction is not {t}-intersecting"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{ak_family_size, star_bound};

    fn ms(v: &[u32]) -> Multiset {
        Multiset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn star_examples() {
        let star = build_star_multiset_family(3, 2, 1, &ms(&[1, 0, 0])).unwrap();
        let expected = Family::from_vecs(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        assert_eq!(star, expected);
        let only = build_star_multiset_family(3, 2, 2, &ms(&[1, 1, 0])).unwrap();
        assert_eq!(only.len(), 1);
        assert!(build_star_multiset_family(3, 2, 1, &ms(&[1, 1, 0])).is_err());
        for k in 1..=4u32 {
            for t in 1..=k {
                for n in 1..=7usize {
                    let mut base = vec![0; n];
                    base[0] = t;
                    let star = build_star_multiset_family(n, k, t, &ms(&base)).unwrap();
                    assert_eq!(
                        star.len().to_string(),
                        star_bound(n as u32, k, t).unwrap().to_string()
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_family_beats_star_below_threshold() {
        let wide = build_kernel_family(7, 5, &ms(&[1, 1, 1, 1, 1, 0, 0]), 4).unwrap();
        assert!(wide.len() > 28);
        assert!(wide.is_t_intersecting(3));
        let star_like = build_kernel_family(5, 3, &ms(&[1, 1, 0, 0, 0]), 2).unwrap();
        let star = build_star_multiset_family(5, 3, 2, &ms(&[1, 1, 0, 0, 0])).unwrap();
        assert_eq!(star_like, star);
        assert!(build_kernel_family(5, 3, &ms(&[1, 1, 0, 0, 0]), 3).is_err());
    }

    #[test]
    fn ak_set_family_examples() {
        let fam = build_ak_set_family(4, 2, 1, 0).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(fam.iter().all(|s| s.contains(&0)));
        for ground in 2..=9usize {
            for k in 1..=ground.min(5) {
                for t in 1..=k {
                    for i in 0..=k - t {
                        if t + 2 * i > ground {
                            continue;
                        }
                        let fam = build_ak_set_family(ground, k, t, i).unwrap();
                        assert!(fam.is_t_intersecting(t));
                        assert_eq!(
                            fam.len().to_string(),
                            ak_family_size(ground as u32, k as u32, t as u32, i as u32)
                                .unwrap()
                                .to_string()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn optimal_family_examples() {
        let fam = build_optimal_multiset_family(7, 5, 3).unwrap();
        assert_eq!(fam.len(), 31);
        for n in 3..9 {
            let fam = build_optimal_multiset_family(n, 2, 1).unwrap();
            assert!(fam.iter().all(|m| m.multiplicity(0) >= 1));
        }
        assert!(build_optimal_multiset_family(3, 3, 1).is_err());
    }
}
