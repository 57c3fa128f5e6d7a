//! Criterion benchmarks for `gordonlab-core`; see `benches/compute.rs`.
