//! Benchmark-only crate; see `benches/`.

pub use hata_core;
