//! Exact search for maximum `t`-intersecting families of `k`-multisets,
//! constructions of extremal families, and the lift to set families.
//!
//! Maximum families are maximum cliques of the graph on all `k`-multisets of
//! `[n]` where two vertices are adjacent when they meet in at least `t`
//! elements. [`max_t_intersecting`] solves it by colouring-bounded branch and
//! bound; [`oracle_max_t_intersecting`] enumerates maximal cliques with no
//! bound at all and serves as the cross-check.

mod clique;
mod construct;
mod lift;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::bounds::multiset_bound;
use crate::compression::{down_compress, is_stable};
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::multiset::{enumerate_multisets, meet, Multiset};

pub use construct::{
    build_ak_set_family, build_kernel_family, build_optimal_multiset_family,
    build_star_multiset_family,
};
pub use lift::{lift_to_sets, support_layers, SetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Pruned,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Pruned => "pruned",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Refuse instances with more vertices than this.
    pub max_vertices: usize,
    /// Refuse to explore more branch-and-bound nodes than this.
    pub max_nodes: Option<u64>,
    /// Branch only on one representative per column-permutation orbit at
    /// the root.
    pub symmetry: bool,
    /// Start from the best explicit construction instead of an empty
    /// incumbent.
    pub seed_constructions: bool,
    /// Stop once the incumbent reaches `AK(n+k-1,k,t)`. This trusts the
    /// upper bound, so it is off unless asked for and never used by
    /// [`verify_theorem`].
    pub theorem_cutoff: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: 4096,
            max_nodes: None,
            symmetry: false,
            seed_constructions: true,
            theorem_cutoff: false,
        }
    }
}

fn family_rows<S: Serializer>(f: &Family, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(f.iter().map(Multiset::as_slice))
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: u32,
    pub t: u32,
    pub cap: Option<u32>,
    pub max_size: usize,
    #[serde(serialize_with = "family_rows")]
    pub witness: Family,
    pub method: Method,
    pub nodes_explored: u64,
    /// Wall-clock time; not serialized so repeated runs emit identical JSON.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchResult {
    pub const CSV_HEADER: &'static str = "n,k,t,cap,max_size,method,nodes_explored";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.t,
            self.cap.map(|c| c.to_string()).unwrap_or_default(),
            self.max_size,
            self.method,
            self.nodes_explored
        )
    }
}

fn check_instance(n: usize, k: u32, t: u32, cap: Option<u32>) -> Result<()> {
    if t == 0 || t > k || n == 0 {
        return Err(invalid(format!(
            "need 1 <= t <= k and n >= 1, got n={n} k={k} t={t}"
        )));
    }
    if cap == Some(0) {
        return Err(invalid("height cap must be >= 1"));
    }
    Ok(())
}

fn vertices(n: usize, k: u32, cap: Option<u32>, limit: usize) -> Result<Vec<Multiset>> {
    let mut out = Vec::new();
    for m in enumerate_multisets(n, k, cap) {
        if out.len() == limit {
            return Err(Error::BudgetExceeded(format!(
                "instance has more than {limit} vertices"
            )));
        }
        out.push(m);
    }
    Ok(out)
}

fn witness_family(
    n: usize,
    k: u32,
    cap: Option<u32>,
    verts: &[Multiset],
    clique: &[usize],
) -> Result<Family> {
    let mut fam = match cap {
        Some(c) => Family::with_cap(n, k, c)?,
        None => Family::new(n, k)?,
    };
    for &v in clique {
        fam.insert(verts[v].clone())?;
    }
    Ok(fam)
}

/// Vertex indices of the largest construction that fits the instance.
fn seed_incumbent(n: usize, k: u32, t: u32, cap: Option<u32>, verts: &[Multiset]) -> Vec<usize> {
    let mut candidates: Vec<Family> = Vec::new();
    if cap.is_none_or(|c| t <= c) {
        let mut base = vec![0; n];
        base[0] = t;
        if let Ok(star) = build_star_multiset_family(n, k, t, &Multiset::from_vec_unchecked(base)) {
            candidates.push(star);
        }
    }
    if let Ok(opt) = build_optimal_multiset_family(n, k, t) {
        candidates.push(opt);
    }
    candidates
        .into_iter()
        .filter_map(|fam| {
            fam.iter()
                .map(|m| verts.binary_search(m).ok())
                .collect::<Option<Vec<usize>>>()
        })
        .max_by_key(Vec::len)
        .unwrap_or_default()
}

/// Column-permutation orbits: vertices grouped by sorted multiplicities.
fn orbits(verts: &[Multiset]) -> Vec<Vec<usize>> {
    let mut by_shape: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (idx, m) in verts.iter().enumerate() {
        let mut shape = m.as_slice().to_vec();
        shape.sort_unstable_by(|a, b| b.cmp(a));
        by_shape.entry(shape).or_default().push(idx);
    }
    // most concentrated shapes first
    by_shape.into_values().rev().collect()
}

/// Exact maximum `t`-intersecting family of `k`-multisets of `[n]`, heights
/// optionally capped.
pub fn max_t_intersecting(
    n: usize,
    k: u32,
    t: u32,
    cap: Option<u32>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    check_instance(n, k, t, cap)?;
    let start = Instant::now();
    let verts = vertices(n, k, cap, config.max_vertices)?;
    let graph = clique::BitGraph::new(verts.len(), |a, b| {
        meet(verts[a].as_slice(), verts[b].as_slice()) >= t
    });
    let incumbent = if config.seed_constructions {
        seed_incumbent(n, k, t, cap, &verts)
    } else {
        Vec::new()
    };
    let target =
        if config.theorem_cutoff && cap.is_none() && (n as u64) + (t as u64) >= 2 * k as u64 {
            multiset_bound(n as u32, k, t)?.value.to_usize()
        } else {
            None
        };
    let opts = clique::CliqueOptions {
        max_nodes: config.max_nodes,
        incumbent,
        target,
        orbits: config.symmetry.then(|| orbits(&verts)),
    };
    let outcome = clique::max_clique(&graph, &opts)?;
    let witness = witness_family(n, k, cap, &verts, &outcome.clique)?;
    Ok(SearchResult {
        n,
        k,
        t,
        cap,
        max_size: witness.len(),
        witness,
        method: Method::Pruned,
        nodes_explored: outcome.nodes,
        elapsed: start.elapsed(),
    })
}

/// Same question answered by maximal-clique enumeration (at most 128
/// vertices). `max_calls` bounds the recursion.
pub fn oracle_max_t_intersecting(
    n: usize,
    k: u32,
    t: u32,
    cap: Option<u32>,
    max_calls: Option<u64>,
) -> Result<SearchResult> {
    check_instance(n, k, t, cap)?;
    let start = Instant::now();
    let verts = vertices(n, k, cap, oracle::ORACLE_MAX_VERTICES)?;
    let (clique, calls) = oracle::oracle_max_clique(
        verts.len(),
        |a, b| verts[a].intersection_size(&verts[b]).is_ok_and(|s| s >= t),
        max_calls,
    )?;
    let witness = witness_family(n, k, cap, &verts, &clique)?;
    Ok(SearchResult {
        n,
        k,
        t,
        cap,
        max_size: witness.len(),
        witness,
        method: Method::Oracle,
        nodes_explored: calls,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    /// The maximum equals the bound.
    Sharp,
    /// The maximum is strictly below the bound.
    BelowBound,
    /// The maximum exceeds the bound.
    ExceedsBound,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Sharp => "SHARP",
            Outcome::BelowBound => "BELOW_BOUND",
            Outcome::ExceedsBound => "EXCEEDS_BOUND",
        })
    }
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: u32,
    pub t: u32,
    pub max_size: usize,
    #[serde(serialize_with = "decimal")]
    pub bound: BigUint,
    pub outcome: Outcome,
    /// The witness, down-compressed, is closed under the unit moves of
    /// [`is_stable`].
    pub stable_after_compression: bool,
    /// `M(n,1)` is a `t`-kernel of the compressed witness.
    pub kernel_after_compression: bool,
    pub nodes_explored: u64,
}

impl VerifyReport {
    pub const CSV_HEADER: &'static str =
        "n,k,t,max_size,bound,outcome,stable_after_compression,kernel_after_compression";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.t,
            self.max_size,
            self.bound,
            self.outcome,
            self.stable_after_compression,
            self.kernel_after_compression
        )
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max={} bound={} {}",
            self.max_size, self.bound, self.outcome
        )
    }
}

/// Computes the exact maximum and compares it with `AK(n+k-1,k,t)`.
/// Needs `n >= 2k - t`.
pub fn verify_theorem(n: usize, k: u32, t: u32, config: &SearchConfig) -> Result<VerifyReport> {
    check_instance(n, k, t, None)?;
    if (n as u64) + (t as u64) < 2 * k as u64 {
        return Err(invalid(format!(
            "the bound is only proven for n >= 2k - t, got n={n} k={k} t={t}"
        )));
    }
    let config = SearchConfig {
        theorem_cutoff: false,
        ..config.clone()
    };
    let found = max_t_intersecting(n, k, t, None, &config)?;
    let bound = multiset_bound(n as u32, k, t)?.value;
    let max = BigUint::from(found.max_size);
    let outcome = match max.cmp(&bound) {
        std::cmp::Ordering::Equal => Outcome::Sharp,
        std::cmp::Ordering::Less => Outcome::BelowBound,
        std::cmp::Ordering::Greater => Outcome::ExceedsBound,
    };
    let compressed = down_compress(&found.witness, t)?.family;
    let kernel = compressed.is_t_kernel(&Multiset::first_row(n)?, t)?;
    Ok(VerifyReport {
        n,
        k,
        t,
        max_size: found.max_size,
        bound,
        outcome,
        stable_after_compression: is_stable(&compressed),
        kernel_after_compression: kernel,
        nodes_explored: found.nodes_explored,
    })
}
