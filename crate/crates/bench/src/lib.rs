//! Criterion benchmarks for qbf-core; see `benches/`.
