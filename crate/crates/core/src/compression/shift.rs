//! Member-wise shifting operators.
//!
//! Each operator proposes a replacement `F'` for every member and keeps `F`
//! whenever `F'` is already present in the input, so the family size never
//! changes.

use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::multiset::Multiset;

use super::psi::check_columns;

fn check_ordered(n: usize, i: usize, j: usize) -> Result<()> {
    check_columns(n, i, j)?;
    if i > j {
        return Err(invalid(format!("shifting needs i < j, got i={i} j={j}")));
    }
    Ok(())
}

fn apply<F>(family: &Family, propose: F) -> Family
where
    F: Fn(&Multiset) -> Option<Multiset>,
{
    let mut out = family.empty_like();
    for m in family {
        let next = match propose(m) {
            Some(cand) if !family.contains(&cand) => cand,
            _ => m.clone(),
        };
        out.insert_unchecked(next);
    }
    debug_assert_eq!(out.len(), family.len());
    out
}

/// `c_{i,j}`: swaps columns `i` and `j` of every member with `m(j) > m(i)`.
pub fn shift_c(family: &Family, i: usize, j: usize) -> Result<Family> {
    check_ordered(family.n(), i, j)?;
    Ok(apply(family, |m| {
        let (mi, mj) = (m.multiplicity(i), m.multiplicity(j));
        (mj > mi).then(|| m.with_columns(&[(i, mj), (j, mi)]))
    }))
}

/// `c'_{i,j}`: moves a single unit from column `j` to column `i` when
/// `m(j) > m(i)`. Does not preserve `t`-intersection in general.
pub fn shift_c_prime(family: &Family, i: usize, j: usize) -> Result<Family> {
    check_ordered(family.n(), i, j)?;
    Ok(apply(family, |m| {
        let (mi, mj) = (m.multiplicity(i), m.multiplicity(j));
        (mj > mi).then(|| m.with_columns(&[(i, mi + 1), (j, mj - 1)]))
    }))
}

/// `S(i,s)(j,1)`: for members with `m(j) = 0` and `m(i) >= s`, cuts rows
/// `s..=m(i)` off column `i` and stacks them on column `j` from row 1.
pub fn kernel_shift(family: &Family, i: usize, s: u32, j: usize) -> Result<Family> {
    check_columns(family.n(), i, j)?;
    if s == 0 || s > family.k().max(1) {
        return Err(invalid(format!("row s={s} must lie in 1..={}", family.k())));
    }
    Ok(lift_rows(family, i, s, j))
}

fn lift_rows(family: &Family, i: usize, s: u32, j: usize) -> Family {
    apply(family, |m| {
        let (mi, mj) = (m.multiplicity(i), m.multiplicity(j));
        (mj == 0 && mi >= s).then(|| m.with_columns(&[(i, s - 1), (j, mi - s + 1)]))
    })
}

/// One step of kernel reduction.
///
/// `kernel` must be a `t`-kernel of `family` containing the first row and
/// having some column of height at least 2. The first such column `i` is
/// lowered by one: `S(i, m(i,T))(j,1)` is applied for `j = 0, 1, ..., n-1`
/// (threading the family), and the kernel loses its top cell in column `i`.
pub fn reduce_kernel(family: &Family, kernel: &Multiset, t: u32) -> Result<(Family, Multiset)> {
    let n = family.n();
    let k = family.k();
    if kernel.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: kernel.n(),
        });
    }
    if (n as u64) + (t as u64) < 2 * k as u64 {
        return Err(Error::KernelPrecondition(format!(
            "needs n >= 2k - t, got n={n} k={k} t={t}"
        )));
    }
    if kernel.as_slice().contains(&0) {
        return Err(Error::KernelPrecondition(
            "kernel must contain the first row M(n,1)".into(),
        ));
    }
    let i = kernel
        .as_slice()
        .iter()
        .position(|&h| h >= 2)
        .ok_or_else(|| Error::KernelPrecondition("kernel is already the first row".into()))?;
    if !family.is_t_kernel(kernel, t)? {
        return Err(Error::KernelPrecondition(format!(
            "{kernel} is not a {t}-kernel of the family"
        )));
    }
    let s = kernel.multiplicity(i);
    let mut current = family.clone();
    for j in (0..n).filter(|&j| j != i) {
        current = lift_rows(&current, i, s, j);
    }
    let lowered = kernel.with_columns(&[(i, s - 1)]);
    Ok((current, lowered))
}
