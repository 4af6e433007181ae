//! Parameter grids shared by the benchmarks.

use osp12::Number;

/// μ values used across benchmarks: ¼, ½, 1, 5/2.
pub fn mu_grid() -> Vec<Number> {
    vec![
        Number::ratio(1, 4),
        Number::ratio(1, 2),
        Number::int(1),
        Number::ratio(5, 2),
    ]
}

/// Rational grid k/8 for 1 ≤ k ≤ 40.
pub fn eighths() -> Vec<Number> {
    (1..=40).map(|k| Number::ratio(k, 8)).collect()
}
