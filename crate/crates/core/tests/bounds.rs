use msekr::bounds::{
    ak, ak_family_size, binomial, mp_threshold, multiset_bound, star_bound, BoundReport,
};
use msekr::search::build_ak_set_family;
use num_bigint::BigUint;

/// `max_i |A(N,k,t,i)|` by listing subsets of `[N]` as bitmasks.
fn ak_by_enumeration(ground: u32, k: u32, t: u32) -> (usize, u32) {
    let mut best = (0, 0);
    for i in (0..).take_while(|&i| t + 2 * i <= ground && t + i <= k) {
        let core = (1u32 << (t + 2 * i)) - 1;
        let size = (0u32..1 << ground)
            .filter(|s| s.count_ones() == k && (s & core).count_ones() >= t + i)
            .count();
        if size > best.0 {
            best = (size, i);
        }
    }
    best
}

#[test]
fn ak_matches_enumeration() {
    for ground in 1..=14u32 {
        for k in 1..=ground.min(7) {
            for t in 1..=k {
                let (size, i) = ak_by_enumeration(ground, k, t);
                let got = ak(ground, k, t).unwrap();
                assert_eq!(got.value, BigUint::from(size), "({ground},{k},{t})");
                assert_eq!(got.i_star, i, "({ground},{k},{t})");
            }
        }
    }
}

#[test]
fn set_families_have_the_counted_size() {
    for ground in 2..=10usize {
        for k in 1..=ground.min(5) {
            for t in 1..=k {
                for i in (0..).take_while(|&i| t + 2 * i <= ground && t + i <= k) {
                    let fam = build_ak_set_family(ground, k, t, i).unwrap();
                    let size = ak_family_size(ground as u32, k as u32, t as u32, i as u32).unwrap();
                    assert_eq!(BigUint::from(fam.len()), size);
                    assert!(fam.is_t_intersecting(t));
                }
            }
        }
    }
}

#[test]
fn star_bound_counts_containing_multisets() {
    for n in 1..=6u32 {
        for k in 1..=5u32 {
            for t in 1..=k {
                // multisets containing t copies of column 0
                let count = msekr::enumerate_multisets(n as usize, k, None)
                    .filter(|m| m.multiplicity(0) >= t)
                    .count();
                assert_eq!(star_bound(n, k, t).unwrap(), BigUint::from(count));
            }
        }
    }
}

#[test]
fn classical_identities() {
    for k in 2..=8u32 {
        for n in k + 1..=30 {
            assert_eq!(
                multiset_bound(n, k, 1).unwrap().value,
                binomial((n + k - 2) as u64, (k - 1) as u64)
            );
        }
    }
    assert_eq!(binomial(10, 11), BigUint::from(0u32));
    assert!(binomial(200, 100).bits() > 190);
}

#[test]
fn threshold_flags() {
    let th = mp_threshold(5, 3, 1).unwrap();
    assert!(th.multiset);
    let th = mp_threshold(7, 5, 3).unwrap();
    assert!(!th.multiset);
    assert!(mp_threshold(5, 3, 0).is_err());
    assert!(!multiset_bound(3, 3, 1).unwrap().proven);
    assert!(multiset_bound(5, 3, 1).unwrap().proven);
}

#[test]
fn report_formats() {
    let r = BoundReport::compute(7, 5, 3).unwrap();
    assert_eq!(BoundReport::CSV_HEADER, "n,k,t,star,ak_set,i_star");
    assert_eq!(r.csv_row(), "7,5,3,28,31,1");
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["ak_set"], "31");
    assert_eq!(json["star"], "28");
    assert_eq!(json["per_i"].as_array().unwrap().len(), 3);
    assert_eq!(json["per_i"][1]["size"], "31");
    assert!(BoundReport::compute(3, 2, 0).is_err());
}
