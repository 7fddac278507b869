//! Criterion benchmarks for the samplers, the mapping and the metric tools;
//! see `benches/`.
