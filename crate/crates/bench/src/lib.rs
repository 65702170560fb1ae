//! Criterion benchmarks for `ghzshare-core`; see `benches/`.
