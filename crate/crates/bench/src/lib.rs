//! Benchmarks of the jet, identity and eigen-solver kernels live in `benches/`.
