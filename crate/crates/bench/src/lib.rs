//! Criterion benchmarks for `dotent-core`; see `benches/`.
