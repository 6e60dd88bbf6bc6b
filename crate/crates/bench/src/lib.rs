//! Criterion benchmarks for `padic-hl`; see `benches/`.
