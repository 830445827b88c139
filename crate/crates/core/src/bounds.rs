//! Exact Ahlswede–Khachatrian values and the bounds derived from them.
//!
//! `A(n,k,t,i)` is the family of `k`-subsets of `[n]` meeting `[t+2i]` in at
//! least `t+i` elements, and `AK(n,k,t) = max_i |A(n,k,t,i)|` is the maximum
//! size of a `t`-intersecting family of `k`-subsets. For `k`-multisets of
//! `[n]` with `n >= 2k-t` the maximum is `AK(n+k-1, k, t)`.
//!
//! Everything is computed in exact big integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for step in 0..r {
        acc *= n - step;
        acc /= step + 1;
    }
    acc
}

fn check_nkt(n: u32, k: u32, t: u32) -> Result<()> {
    if t > k || k > n {
        return Err(invalid(format!("need t <= k <= n, got n={n} k={k} t={t}")));
    }
    Ok(())
}

/// `|A(n,k,t,i)| = Σ_{j=t+i}^{min(t+2i,k)} C(t+2i, j) C(n-t-2i, k-j)`.
pub fn ak_family_size(n: u32, k: u32, t: u32, i: u32) -> Result<BigUint> {
    check_nkt(n, k, t)?;
    let core = t + 2 * i;
    if core > n {
        return Err(invalid(format!("t+2i = {core} exceeds n = {n}")));
    }
    let rest = (n - core) as u64;
    let total = (t + i..=core.min(k))
        .map(|j| binomial(core as u64, j as u64) * binomial(rest, (k - j) as u64))
        .sum();
    Ok(total)
}

/// Indices `i` with `t+2i <= n` and `t+i <= k`.
fn admissible(n: u32, k: u32, t: u32) -> impl Iterator<Item = u32> {
    (0..).take_while(move |&i| t + 2 * i <= n && t + i <= k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkValue {
    pub value: BigUint,
    /// Smallest maximizing index.
    pub i_star: u32,
}

/// `AK(n,k,t)` together with the smallest maximizing `i`.
pub fn ak(n: u32, k: u32, t: u32) -> Result<AkValue> {
    if t == 0 {
        return Err(invalid("AK needs t >= 1"));
    }
    check_nkt(n, k, t)?;
    let mut best: Option<AkValue> = None;
    for i in admissible(n, k, t) {
        let value = ak_family_size(n, k, t, i)?;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(AkValue { value, i_star: i });
        }
    }
    Ok(best.expect("i = 0 is always admissible"))
}

/// `AK(n+k-1, k, t)`, the maximum size of a `t`-intersecting family of
/// `k`-multisets of `[n]`. Only a proven bound when `n >= 2k-t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetBound {
    pub value: BigUint,
    pub i_star: u32,
    pub proven: bool,
}

pub fn multiset_bound(n: u32, k: u32, t: u32) -> Result<MultisetBound> {
    if t == 0 || t > k || n == 0 {
        return Err(invalid(format!(
            "need 1 <= t <= k and n >= 1, got n={n} k={k} t={t}"
        )));
    }
    let AkValue { value, i_star } = ak(n + k - 1, k, t)?;
    Ok(MultisetBound {
        value,
        i_star,
        proven: n + t >= 2 * k,
    })
}

/// `C(n+k-t-1, k-t)`: the number of `k`-multisets containing a fixed
/// `t`-multiset.
pub fn star_bound(n: u32, k: u32, t: u32) -> Result<BigUint> {
    if t == 0 || t > k || n == 0 {
        return Err(invalid(format!(
            "need 1 <= t <= k and n >= 1, got n={n} k={k} t={t}"
        )));
    }
    Ok(binomial((n + k - t - 1) as u64, (k - t) as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    /// `n >= t(k-t) + 2`.
    pub multiset: bool,
    /// `n+k-1 >= (t+1)(k-t+1)`: the star is optimal among sets on the
    /// lifted ground set.
    pub lifted_sets: bool,
}

pub fn mp_threshold(n: u32, k: u32, t: u32) -> Result<Threshold> {
    if t == 0 || t > k {
        return Err(invalid(format!("need 1 <= t <= k, got k={k} t={t}")));
    }
    Ok(Threshold {
        multiset: n >= t * (k - t) + 2,
        lifted_sets: n + k > (t + 1) * (k - t + 1),
    })
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySize {
    pub i: u32,
    #[serde(serialize_with = "decimal")]
    pub size: BigUint,
}

/// Star bound and lifted AK value for one `(n, k, t)`.
///
/// In JSON every big integer is written as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    #[serde(serialize_with = "decimal")]
    pub star: BigUint,
    #[serde(serialize_with = "decimal")]
    pub ak_set: BigUint,
    pub i_star: u32,
    /// `n >= 2k-t`, where `ak_set` is a theorem rather than a number.
    pub proven: bool,
    pub per_i: Vec<FamilySize>,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "n,k,t,star,ak_set,i_star";

    pub fn compute(n: u32, k: u32, t: u32) -> Result<BoundReport> {
        let star = star_bound(n, k, t)?;
        let bound = multiset_bound(n, k, t)?;
        let lifted = n + k - 1;
        let per_i = admissible(lifted, k, t)
            .map(|i| {
                Ok(FamilySize {
                    i,
                    size: ak_family_size(lifted, k, t, i)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundReport {
            n,
            k,
            t,
            star,
            ak_set: bound.value,
            i_star: bound.i_star,
            proven: bound.proven,
            per_i,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.k, self.t, self.star, self.ak_set, self.i_star
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(6, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
        assert_eq!(
            binomial(128, 64).to_string(),
            "23951146041928082866135587776380551750"
        );
    }

    #[test]
    fn family_sizes() {
        assert_eq!(ak_family_size(4, 2, 1, 0).unwrap(), big(3));
        assert_eq!(ak_family_size(4, 2, 1, 1).unwrap(), big(3));
        for n in 3..10 {
            for k in 1..=n {
                for t in 0..=k {
                    assert_eq!(
                        ak_family_size(n, k, t, 0).unwrap(),
                        binomial((n - t) as u64, (k - t) as u64)
                    );
                }
            }
        }
        assert!(ak_family_size(4, 2, 1, 2).is_err());
        assert!(ak_family_size(4, 5, 1, 0).is_err());
    }

    #[test]
    fn ak_examples() {
        let v = ak(11, 5, 3).unwrap();
        assert_eq!(v.value, big(31));
        assert_eq!(v.i_star, 1);
        for k in 1..6 {
            for n in 2 * k..16 {
                assert_eq!(
                    ak(n, k, 1).unwrap().value,
                    binomial((n - 1) as u64, (k - 1) as u64)
                );
            }
            for t in 1..=k {
                assert_eq!(ak(k, k, t).unwrap().value, big(1));
            }
        }
        assert!(ak(5, 3, 0).is_err());
        assert!(ak(2, 3, 1).is_err());
    }

    #[test]
    fn multiset_and_star_bounds() {
        let b = multiset_bound(7, 5, 3).unwrap();
        assert_eq!(b.value, big(31));
        assert!(b.proven);
        assert!(!multiset_bound(4, 5, 3).unwrap().proven);
        for k in 1..6 {
            for n in k + 1..14 {
                assert_eq!(
                    multiset_bound(n, k, 1).unwrap().value,
                    binomial((n + k - 2) as u64, (k - 1) as u64)
                );
            }
            for n in 1..10 {
                assert_eq!(multiset_bound(n, k, k).unwrap().value, big(1));
                assert_eq!(star_bound(n, k, k).unwrap(), big(1));
            }
        }
        assert_eq!(star_bound(3, 2, 1).unwrap(), big(3));
    }

    #[test]
    fn thresholds() {
        let below = mp_threshold(7, 5, 3).unwrap();
        assert!(!below.multiset);
        assert!(!below.lifted_sets);
        let at = mp_threshold(8, 5, 3).unwrap();
        assert!(at.multiset);
        assert!(at.lifted_sets);
    }

    #[test]
    fn report_formats() {
        let r = BoundReport::compute(7, 5, 3).unwrap();
        assert_eq!(r.csv_row(), "7,5,3,28,31,1");
        assert_eq!(r.per_i.len(), 3);
        let json = r.to_json();
        assert!(json.contains("\"ak_set\":\"31\""));
        assert!(json.contains("{\"i\":1,\"size\":\"31\"}"));
    }
}
