//! Criterion benchmarks for `randers-core`; see `benches/`.
