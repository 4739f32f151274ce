//! Criterion benchmarks for lucid-core; see `benches/`.
