//! Deterministic compensated summation.
//!
//! Quadrature sums run over millions of lattice points and feed log-log
//! rate fits, so the accumulation must be both accurate and reproducible:
//! each fixed chunk of terms is summed with Kahan-Neumaier compensation,
//! and the per-chunk partial sums are merged with a fixed pairwise tree.
//! The result is bit-identical for any number of worker threads because
//! the chunk partition, not the schedule, determines every rounding.

/// Kahan-Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Kahan {
        Kahan::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Merges per-chunk partial sums with a fixed balanced pairwise tree.
/// The merge order depends only on the slice layout, never on scheduling.
pub fn pairwise_merge(partials: &[f64]) -> f64 {
    match partials.len() {
        0 => 0.0,
        1 => partials[0],
        n => {
            let mid = n / 2;
            pairwise_merge(&partials[..mid]) + pairwise_merge(&partials[mid..])
        }
    }
}
