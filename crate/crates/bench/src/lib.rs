//! Criterion benchmarks for model construction, `d²` checks, truncated
//! cohomology and the split/ω checks. Run with `cargo bench -p dgq-bench`.
