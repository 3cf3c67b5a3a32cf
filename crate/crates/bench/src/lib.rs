//! Criterion benchmarks for the chaosmark pipelines; see `benches/pipelines.rs`.
