//! Criterion benchmarks for `msekr`; see `benches/`.
