//! Continued fractions, convergents, and the lattice-count discrepancy
//! bound for convex polygons.
//!
//! The discrepancy bound controls how far the number of lattice points
//! inside a convex polygon can deviate from its area: each side
//! contributes `rho = sum of the slope's continued-fraction terms up to
//! index k, plus (L+1)/q_k`, where `L` is the side length in lattice
//! units and `k` is the largest index with `q_k <= L + 1`.

use crate::error::{Error, Result};
use crate::math::V2;

/// A truncated continued-fraction expansion with its convergents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    /// `[a0; a1, a2, ...]` with `a_k >= 1` for `k >= 1`.
    pub terms: Vec<i64>,
    /// `p_k / q_k` for each term, by the standard recurrence.
    pub convergents: Vec<(i128, i128)>,
}

impl ContinuedFraction {
    fn from_terms(terms: Vec<i64>) -> ContinuedFraction {
        let mut convergents = Vec::with_capacity(terms.len());
        // p_{-1} = 1, p_{-2} = 0 and q_{-1} = 0, q_{-2} = 1
        let (mut p_prev, mut p) = (0i128, 1i128);
        let (mut q_prev, mut q) = (1i128, 0i128);
        for &a in &terms {
            let p_next = a as i128 * p + p_prev;
            let q_next = a as i128 * q + q_prev;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
            convergents.push((p, q));
        }
        ContinuedFraction { terms, convergents }
    }

    /// Evaluates the finite expansion back to a real number.
    pub fn value(&self) -> f64 {
        let (p, q) = *self.convergents.last().expect("empty expansion");
        p as f64 / q as f64
    }
}

const RATIONAL_CUTOFF: f64 = 1e-12;
const PRECISION_LIMIT: f64 = 1e12;

/// Floor-and-reciprocal expansion of `x`, stopping at `max_terms`, when
/// the remainder is within 1e-12 of an integer, or when floating-point
/// precision is exhausted. The quadratic irrationals `sqrt(2)` and the
/// golden ratio take an exact periodic fast path.
pub fn continued_fraction(x: f64, max_terms: usize) -> ContinuedFraction {
    assert!(max_terms >= 1 && x.is_finite());
    if (x - std::f64::consts::SQRT_2).abs() < 1e-14 {
        let mut terms = vec![1i64];
        terms.resize(max_terms, 2);
        return ContinuedFraction::from_terms(terms);
    }
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    if (x - golden).abs() < 1e-14 {
        return ContinuedFraction::from_terms(vec![1i64; max_terms]);
    }
    let mut terms: Vec<i64> = Vec::new();
    let mut rest = x;
    for _ in 0..max_terms {
        let mut a = rest.floor();
        let mut frac = rest - a;
        // a remainder within 1e-12 of 1 is the rounded-up integer in
        // disguise: absorb it instead of emitting spurious tail terms
        if frac > 1.0 - RATIONAL_CUTOFF {
            a += 1.0;
            frac = 0.0;
        }
        if !terms.is_empty() && a < 1.0 {
            break;
        }
        terms.push(a as i64);
        if frac < RATIONAL_CUTOFF || 1.0 / frac > PRECISION_LIMIT {
            break;
        }
        rest = 1.0 / frac;
    }
    ContinuedFraction::from_terms(terms)
}

/// True iff every partial quotient `a_k` (`k >= 1`) is at most `bound`.
pub fn is_badly_approximable(cf: &ContinuedFraction, bound: i64) -> bool {
    assert!(cf.terms.len() >= 3, "expansion too short to judge");
    cf.terms.iter().skip(1).all(|&a| a <= bound)
}

/// One side's contribution to the discrepancy bound.
fn side_rho(side: V2, h: f64) -> f64 {
    let len = side.norm() / h;
    // expand the shallow slope (|slope| <= 1): swap coordinates for steep
    // or vertical sides
    let (run, rise) = if side.x.abs() >= side.y.abs() {
        (side.x.abs(), side.y.abs())
    } else {
        (side.y.abs(), side.x.abs())
    };
    let slope = if run == 0.0 { 0.0 } else { rise / run };
    let cf = continued_fraction(slope, 40);
    // largest k with q_k <= len + 1 (q_0 = 1 always qualifies)
    let mut k = 0;
    for (i, &(_, q)) in cf.convergents.iter().enumerate() {
        if q as f64 <= len + 1.0 {
            k = i;
        } else {
            break;
        }
    }
    let term_sum: i64 = cf.terms[..=k].iter().sum();
    let q_k = cf.convergents[k].1 as f64;
    term_sum as f64 + (len + 1.0) / q_k
}

/// Bound on `|#(lattice points in P) - area(P)/h^2|` for a convex polygon
/// `P` (closed region; boundary points counted as inside).
pub fn discrepancy_bound(polygon: &[V2], h: f64) -> Result<f64> {
    if polygon.len() < 3 {
        return Err(Error::DegeneratePolygon(format!(
            "need at least 3 vertices, got {}",
            polygon.len()
        )));
    }
    if !(h > 0.0) {
        return Err(Error::DegeneratePolygon(format!("invalid spacing {h}")));
    }
    let mut bound = 0.0;
    for i in 0..polygon.len() {
        let side = polygon[(i + 1) % polygon.len()] - polygon[i];
        bound += side_rho(side, h);
    }
    Ok(bound)
}
