//! Criterion benchmarks for nilzeta live under `benches/`.
