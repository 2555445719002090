//! Benchmarks for `twoalg-core`; see `benches/`.
