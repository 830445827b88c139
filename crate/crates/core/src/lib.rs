//! Intersecting families of multisets.
//!
//! A `k`-multiset of `[n]` is a vector of `n` multiplicities summing to `k`;
//! two multisets intersect in the coordinatewise minimum. This crate provides
//! the family algebra, the shifting and down-compression operators that push
//! a `t`-intersecting family onto a first-row kernel, exact
//! Ahlswede–Khachatrian values, extremal constructions, and an exact
//! branch-and-bound search that certifies `max |F| = AK(n+k-1, k, t)` on
//! small instances.
//!
//! Column indices are 0-based throughout the API.

pub mod bounds;
pub mod compression;
mod error;
pub mod family;
pub mod multiset;
pub mod search;

pub use bounds::{ak, ak_family_size, binomial, multiset_bound, star_bound, BoundReport};
pub use error::{Error, Result};
pub use family::Family;
pub use multiset::{enumerate_multisets, Multiset, StaircaseCell};
