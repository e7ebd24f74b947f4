//! Benchmark-only crate; the interesting code lives in `benches/`.
//!
//! Kept as a library target so `cargo check --workspace` still builds it
//! even when benches are skipped.
