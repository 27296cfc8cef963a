//! Criterion benchmarks for `bup4-core`; see `benches/`.
