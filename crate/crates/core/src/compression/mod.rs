//! Shifting and compression operators.
//!
//! * [`shift_c`] / [`shift_c_prime`]: column-exchange shifting.
//! * [`psi`] and [`down_compress`]: two-column balancing iterated to a fixed
//!   point whose first row `M(n,1)` is a `t`-kernel.
//! * [`kernel_shift`] / [`reduce_kernel`]: the kernel-lowering route to the
//!   same conclusion.

mod interval;
mod psi;
mod shift;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::multiset::{enumerate_multisets, meet, Multiset};

pub use interval::{interval_distance, IntervalFamily};
pub use psi::{psi, slice_intervals, slices, SliceKey};
pub use shift::{kernel_shift, reduce_kernel, shift_c, shift_c_prime};

/// Termination measure for `ψ` sweeps:
/// `Σ_F [ |A|·n·k²·Σ_i m(i,F)² + Σ_i i·m(i,F) ]` with 1-based `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PotentialValue(pub BigUint);

impl std::fmt::Display for PotentialValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub fn potential(family: &Family) -> PotentialValue {
    let n = family.n() as u64;
    let k = family.k() as u64;
    let weight = BigUint::from(family.len() as u64) * n * k * k;
    let mut squares = BigUint::default();
    let mut linear = BigUint::default();
    for m in family {
        for (idx, &x) in m.as_slice().iter().enumerate() {
            let x = x as u64;
            squares += x * x;
            linear += (idx as u64 + 1) * x;
        }
    }
    PotentialValue(weight * squares + linear)
}

/// One changing `ψ_{i,j}` application recorded by [`down_compress`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "as_decimal")]
    pub potential: PotentialValue,
    pub size: usize,
    /// Whether `M(n,1)` is a `t`-kernel after this step.
    pub kernel: bool,
}

fn as_decimal<S: serde::Serializer>(
    v: &PotentialValue,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.0.to_string())
}

impl TraceStep {
    pub const CSV_HEADER: &'static str = "step,i,j,potential,size,kernel";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.step, self.i, self.j, self.potential, self.size, self.kernel
        )
    }
}

#[derive(Clone, Debug)]
pub struct Compressed {
    pub family: Family,
    pub initial_potential: PotentialValue,
    pub trace: Vec<TraceStep>,
}

/// The down-compression `f`: applies `ψ_{i,j}` over pairs `i < j` in
/// lexicographic order, restarting the sweep after every change, until a
/// whole sweep is idle.
///
/// Requires `t >= 1`, `n >= 2k - t` and a `t`-intersecting input. The fixed
/// point has the same size, no larger maximum height, and (for the
/// families where the construction is proven) `M(n,1)` as a `t`-kernel.
pub fn down_compress(family: &Family, t: u32) -> Result<Compressed> {
    let n = family.n();
    let k = family.k();
    if t == 0 {
        return Err(invalid("down-compression needs t >= 1"));
    }
    if (n as u64) + (t as u64) < 2 * k as u64 {
        return Err(invalid(format!(
            "down-compression needs n >= 2k - t, got n={n} k={k} t={t}"
        )));
    }
    if !family.is_t_intersecting(t) {
        return Err(Error::NotIntersecting { t });
    }
    let row = Multiset::first_row(n)?;
    let mut current = family.clone();
    let mut level = potential(&current);
    let initial_potential = level.clone();
    let mut trace = Vec::new();
    'sweep: loop {
        for i in 0..n {
            for j in i + 1..n {
                let next = psi(&current, i, j)?;
                if next == current {
                    continue;
                }
                let after = potential(&next);
                if after >= level {
                    return Err(Error::CertificationFailed(format!(
                        "potential did not drop at psi({i},{j}): {level} -> {after}"
                    )));
                }
                trace.push(TraceStep {
                    step: trace.len() + 1,
                    i,
                    j,
                    potential: after.clone(),
                    size: next.len(),
                    kernel: next.is_t_kernel(&row, t)?,
                });
                current = next;
                level = after;
                continue 'sweep;
            }
        }
        break;
    }
    Ok(Compressed {
        family: current,
        initial_potential,
        trace,
    })
}

/// Greedily extends a `t`-intersecting family to a maximal one, trying
/// candidates in canonical order (respecting the height cap).
pub fn saturate(family: &Family, t: u32) -> Result<Family> {
    if !family.is_t_intersecting(t) {
        return Err(Error::NotIntersecting { t });
    }
    if family.k() < t {
        return Ok(family.clone());
    }
    let mut out = family.clone();
    let mut rows: Vec<Vec<u32>> = family.iter().map(|m| m.as_slice().to_vec()).collect();
    for cand in enumerate_multisets(family.n(), family.k(), family.height_cap()) {
        if out.contains(&cand) {
            continue;
        }
        if rows.iter().all(|r| meet(r, cand.as_slice()) >= t) {
            rows.push(cand.as_slice().to_vec());
            out.insert_unchecked(cand);
        }
    }
    Ok(out)
}

/// No `k`-multiset outside the family can be added without breaking
/// `t`-intersection.
pub fn is_maximal(family: &Family, t: u32) -> bool {
    let rows: Vec<&[u32]> = family.iter().map(Multiset::as_slice).collect();
    family.k() < t
        || enumerate_multisets(family.n(), family.k(), family.height_cap())
            .filter(|c| !family.contains(c))
            .all(|c| rows.iter().any(|r| meet(r, c.as_slice()) < t))
}

/// Closure under the unit moves `F - e_j + e_i` whenever
/// `m(i,F) + 1 < m(j,F)`, and also whenever `i < j` and
/// `m(i,F) + 1 <= m(j,F)`.
pub fn is_stable(family: &Family) -> bool {
    let n = family.n();
    family.iter().all(|m| {
        (0..n).all(|i| {
            (0..n).filter(|&j| j != i).all(|j| {
                let (mi, mj) = (m.multiplicity(i), m.multiplicity(j));
                let forced = mi + 1 < mj || (i < j && mi < mj);
                !forced || family.contains(&m.with_columns(&[(i, mi + 1), (j, mj - 1)]))
            })
        })
    })
}
