//! Criterion benchmarks for `pball-core`; see `benches/`.
