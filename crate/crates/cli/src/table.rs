//! Acceptance grids as flat rows.

use msekr::bounds::{ak_family_size, binomial, multiset_bound, star_bound};
use msekr::compression::{down_compress, interval_distance, reduce_kernel, IntervalFamily};
use msekr::search::{build_kernel_family, lift_to_sets, max_t_intersecting, SearchConfig};
use msekr::{enumerate_multisets, Family, Multiset};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub criterion: u8,
    pub case: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Row {
    fn new(
        criterion: u8,
        case: String,
        expected: impl ToString,
        observed: impl ToString,
        pass: bool,
    ) -> Row {
        Row {
            criterion,
            case,
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        }
    }

    fn equal<T: PartialEq + ToString>(
        criterion: u8,
        case: String,
        expected: T,
        observed: T,
    ) -> Row {
        let pass = expected == observed;
        Row::new(criterion, case, expected, observed, pass)
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.criterion, self.case, self.expected, self.observed, self.pass
        )
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut s = String::from("criterion,case,expected,observed,pass\n");
    for r in rows {
        s.push_str(&r.csv());
        s.push('\n');
    }
    s
}

fn point(n: impl ToString, k: u32, t: u32) -> String {
    format!("n={} k={k} t={t}", n.to_string())
}

pub fn build(
    seed: u64,
    corpus_size: usize,
    search_limit: usize,
    config: &SearchConfig,
) -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    meagher_purdy(&mut rows)?;
    regime(&mut rows)?;
    exhaustive(&mut rows, search_limit, config)?;
    kernel_note(&mut rows)?;
    let corpus = corpus(seed, corpus_size);
    compression(&mut rows, &corpus)?;
    intervals(&mut rows)?;
    kernel_reduction(&mut rows, &corpus)?;
    algebra(&mut rows)?;
    Ok(rows)
}

fn meagher_purdy(rows: &mut Vec<Row>) -> Result<(), Failure> {
    for k in 2..=6u32 {
        for n in k + 1..=14 {
            let expected = binomial((n + k - 2) as u64, (k - 1) as u64);
            rows.push(Row::equal(
                1,
                point(n, k, 1),
                expected,
                multiset_bound(n, k, 1)?.value,
            ));
        }
    }
    Ok(())
}

fn regime(rows: &mut Vec<Row>) -> Result<(), Failure> {
    for k in 1..=6u32 {
        for t in 1..=k {
            for n in (2 * k - t).max(1)..=20 {
                let bound = multiset_bound(n, k, t)?.value;
                let star = star_bound(n, k, t)?;
                let case = point(n, k, t);
                let row = if n >= t * (k - t) + 2 {
                    Row::new(2, case, format!("={star}"), &bound, bound == star)
                } else if k >= t + 2 {
                    Row::new(2, case, format!(">{star}"), &bound, bound > star)
                } else {
                    // only (1,1,1): a single 1-multiset exists
                    let single = enumerate_multisets(n as usize, k, None).count() == 1;
                    Row::new(
                        2,
                        case,
                        "=1 (single multiset)",
                        &bound,
                        single && bound == BigUint::from(1u32),
                    )
                };
                rows.push(row);
            }
        }
    }
    Ok(())
}

fn exhaustive(rows: &mut Vec<Row>, limit: usize, config: &SearchConfig) -> Result<(), Failure> {
    let config = SearchConfig {
        seed_constructions: false,
        theorem_cutoff: false,
        ..config.clone()
    };
    let mut points = Vec::new();
    for k in 1..=4u32 {
        for t in 1..=k {
            let mut n = (2 * k - t).max(1) as usize;
            while enumerate_multisets(n, k, None).count() <= limit {
                points.push((n, k, t));
                n += 1;
            }
        }
    }
    if enumerate_multisets(7, 5, None).count() <= limit {
        points.push((7, 5, 3));
    }
    for (n, k, t) in points {
        let expected = multiset_bound(n as u32, k, t)?.value;
        let found = max_t_intersecting(n, k, t, None, &config)?;
        let valid = found.witness.is_t_intersecting(t);
        let observed = BigUint::from(found.max_size);
        let pass = valid && observed == expected;
        rows.push(Row::new(3, point(n, k, t), expected, observed, pass));
    }
    Ok(())
}

fn kernel_note(rows: &mut Vec<Row>) -> Result<(), Failure> {
    let kernel = Multiset::new(vec![1, 1, 1, 1, 1, 0, 0])?;
    let family = build_kernel_family(7, 5, &kernel, 4)?;
    let star = star_bound(7, 5, 3)?;
    let pass = family.is_t_intersecting(3) && BigUint::from(family.len()) > star;
    rows.push(Row::new(
        4,
        "n=7 k=5 t=3 |T|=5 r=4".into(),
        format!(">{star}"),
        family.len(),
        pass,
    ));
    Ok(())
}

/// Random maximal `t`-intersecting families for `2 <= k <= 4`,
/// `2k - t <= n <= 6`, cycling through the shapes.
fn corpus(seed: u64, count: usize) -> Vec<(u32, Family)> {
    let mut shapes = Vec::new();
    for k in 2..=4u32 {
        for t in 1..=k {
            for n in (2 * k - t).max(2) as usize..=6 {
                shapes.push((n, k, t));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|idx| {
            let (n, k, t) = shapes[idx % shapes.len()];
            let mut pool: Vec<_> = enumerate_multisets(n, k, None).collect();
            pool.shuffle(&mut rng);
            let mut family = Family::new(n, k).expect("valid shape");
            for cand in pool {
                if family
                    .iter()
                    .all(|m| m.intersection_size(&cand).is_ok_and(|s| s >= t))
                {
                    family.insert(cand).expect("candidate fits the family");
                }
            }
            (t, family)
        })
        .collect()
}

fn compression(rows: &mut Vec<Row>, corpus: &[(u32, Family)]) -> Result<(), Failure> {
    for (idx, (t, family)) in corpus.iter().enumerate() {
        let t = *t;
        let case = format!("{} #{idx}", point(family.n(), family.k(), t));
        let out = down_compress(family, t)?;
        let row = Multiset::first_row(family.n())?;
        let mut last = out.initial_potential.clone();
        let mut decreasing = true;
        for step in &out.trace {
            decreasing &= step.potential < last;
            last = step.potential.clone();
        }
        let kernel = out.family.is_t_kernel(&row, t)?;
        let pass = out.family.len() == family.len()
            && kernel
            && out.family.max_height() <= family.max_height()
            && decreasing;
        rows.push(Row::new(
            5,
            case.clone(),
            family.len(),
            out.family.len(),
            pass,
        ));

        let lifted = lift_to_sets(&out.family, t)?;
        let k = family.k() as u64;
        let mut expected = BigUint::default();
        for (s, layer) in msekr::search::support_layers(&out.family) {
            expected += BigUint::from(layer.len()) * binomial(k - 1, k - s as u64);
        }
        let pass = BigUint::from(lifted.len()) == expected
            && lifted.is_t_intersecting(t as usize)
            && lifted.len() >= family.len();
        rows.push(Row::new(8, case, expected, lifted.len(), pass));
    }
    Ok(())
}

fn intervals(rows: &mut Vec<Row>) -> Result<(), Failure> {
    for k in 1..=5u32 {
        let mut systems = Vec::new();
        for first in 1..=2 * k {
            for last in first..=2 * k {
                for p in 1..=last - first + 1 {
                    let system = IntervalFamily::all_subintervals(k, p, first, last)?;
                    let centered = system.phi_center()?;
                    systems.push((system, centered));
                }
            }
        }
        let mut violations = 0;
        for (a, ca) in &systems {
            for (b, cb) in &systems {
                if interval_distance(ca, cb)? < interval_distance(a, b)? {
                    violations += 1;
                }
            }
        }
        let pairs = systems.len() * systems.len();
        rows.push(Row::equal(6, format!("k={k} pairs={pairs}"), 0, violations));
    }
    Ok(())
}

fn kernel_reduction(rows: &mut Vec<Row>, corpus: &[(u32, Family)]) -> Result<(), Failure> {
    for (idx, (t, family)) in corpus.iter().enumerate() {
        let t = *t;
        let (n, k) = (family.n(), family.k());
        let mut kernel = Multiset::rectangle(n, k)?;
        let mut current = family.clone();
        let mut ok = true;
        let mut steps = 0;
        while kernel.max_multiplicity() >= 2 {
            let (next, lowered) = reduce_kernel(&current, &kernel, t)?;
            ok &= next.len() == family.len()
                && next.is_t_kernel(&lowered, t)?
                && lowered.cardinality() + 1 == kernel.cardinality();
            current = next;
            kernel = lowered;
            steps += 1;
        }
        let expected = n * (k as usize - 1);
        let case = format!("{} #{idx}", point(n, k, t));
        rows.push(Row::new(7, case, expected, steps, ok && steps == expected));
    }
    Ok(())
}

fn algebra(rows: &mut Vec<Row>) -> Result<(), Failure> {
    for n in 1..=4usize {
        for k in 0..=4u32 {
            let all: Vec<_> = enumerate_multisets(n, k, None).collect();
            let mut bad = 0;
            for f in &all {
                for g in &all {
                    let d = f.l1_distance(g)?;
                    if d % 2 != 0 || f.intersection_size(g)? != k - d / 2 {
                        bad += 1;
                    }
                }
            }
            rows.push(Row::equal(9, format!("meet n={n} k={k}"), 0, bad));
        }
    }
    for n in 1..=6usize {
        for k in 0..=6u32 {
            let count = enumerate_multisets(n, k, None).count();
            let expected = binomial(n as u64 + k as u64 - 1, k as u64);
            rows.push(Row::equal(
                9,
                format!("count n={n} k={k}"),
                expected,
                BigUint::from(count),
            ));
        }
    }
    for n in 1..=12u32 {
        for k in 0..=n.min(6) {
            for t in 0..=k {
                for i in (0..).take_while(|&i| t + 2 * i <= n && t + i <= k) {
                    let core = (1u32 << (t + 2 * i)) - 1;
                    let count = (0u32..1 << n)
                        .filter(|s| s.count_ones() == k && (s & core).count_ones() >= t + i)
                        .count();
                    let case = format!("ak_family n={n} k={k} t={t} i={i}");
                    rows.push(Row::equal(
                        9,
                        case,
                        BigUint::from(count),
                        ak_family_size(n, k, t, i)?,
                    ));
                }
            }
        }
    }
    Ok(())
}
