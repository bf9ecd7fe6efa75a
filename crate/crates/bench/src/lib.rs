//! Criterion benchmarks for `hcv-core`; see `benches/`.
