//! Benchmarks for the algebra kernel; see `benches/kernel.rs`.
