//! Benchmark-only crate; see `benches/`.

pub use og10_lattice;
