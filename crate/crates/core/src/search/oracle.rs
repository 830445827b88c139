//! Reference maximum-clique search: enumerates every maximal clique
//! (Bron–Kerbosch with pivoting) and keeps the largest. No size bounds are
//! used, so it shares nothing with the branch-and-bound solver beyond the
//! adjacency relation.

use crate::error::{invalid, Error, Result};

pub(crate) const ORACLE_MAX_VERTICES: usize = 128;

struct Enumerator<'a> {
    adj: &'a [u128],
    best: u128,
    calls: u64,
    max_calls: Option<u64>,
}

impl Enumerator<'_> {
    fn run(&mut self, r: u128, mut p: u128, mut x: u128) -> Result<()> {
        self.calls += 1;
        if let Some(limit) = self.max_calls {
            if self.calls > limit {
                return Err(Error::BudgetExceeded(format!(
                    "oracle call budget of {limit} exhausted"
                )));
            }
        }
        if p == 0 && x == 0 {
            if r.count_ones() > self.best.count_ones() {
                self.best = r;
            }
            return Ok(());
        }
        let pivot = {
            let px = p | x;
            (0..128)
                .filter(|&u| px >> u & 1 == 1)
                .max_by_key(|&u| (self.adj[u] & p).count_ones())
                .expect("p | x is nonempty")
        };
        let mut todo = p & !self.adj[pivot];
        while todo != 0 {
            let v = todo.trailing_zeros() as usize;
            todo &= todo - 1;
            let bit = 1u128 << v;
            self.run(r | bit, p & self.adj[v], x & self.adj[v])?;
            p &= !bit;
            x |= bit;
        }
        Ok(())
    }
}

/// Largest clique, as sorted vertex indices, plus the number of recursive
/// calls made.
pub(crate) fn oracle_max_clique(
    order: usize,
    adjacent: impl Fn(usize, usize) -> bool,
    max_calls: Option<u64>,
) -> Result<(Vec<usize>, u64)> {
    if order > ORACLE_MAX_VERTICES {
        return Err(invalid(format!(
            "the oracle handles at most {ORACLE_MAX_VERTICES} vertices, got {order}"
        )));
    }
    if order == 0 {
        return Ok((Vec::new(), 0));
    }
    let mut adj = vec![0u128; order];
    for (u, row) in adj.iter_mut().enumerate() {
        for v in 0..order {
            if u != v && adjacent(u, v) {
                *row |= 1 << v;
            }
        }
    }
    let all = if order == 128 {
        u128::MAX
    } else {
        (1u128 << order) - 1
    };
    let mut e = Enumerator {
        adj: &adj,
        best: 0,
        calls: 0,
        max_calls,
    };
    e.run(0, all, 0)?;
    let clique = (0..order).filter(|&v| e.best >> v & 1 == 1).collect();
    Ok((clique, e.calls))
}
