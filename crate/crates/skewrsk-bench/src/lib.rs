//! Criterion benchmarks for the dynamics, Greene invariants and identity checks; see `benches/`.
