//! Benchmarks live under `benches/`; this crate only hosts them.
pub use weightsys_core;
