//! Shared machinery for smooth closed curves given in polar form
//! `gamma(t) = center + rho(t) (cos t, sin t)`.
//!
//! Both the quartic superellipse and the star curve reduce to a profile
//! `rho` with closed-form first and second derivatives, which is all the
//! closest-point solver, the curvature formula and the arc-length element
//! need.

use crate::error::{Error, Result};
use crate::math::{v2, V2};
use std::f64::consts::TAU;

pub trait PolarProfile {
    fn center(&self) -> V2;

    /// `(rho, rho', rho'')` at parameter `t`.
    fn rho_derivs(&self, t: f64) -> (f64, f64, f64);

    #[inline]
    fn rho(&self, t: f64) -> f64 {
        self.rho_derivs(t).0
    }
}

#[inline]
pub fn point<P: PolarProfile>(p: &P, t: f64) -> V2 {
    let (s, c) = t.sin_cos();
    let rho = p.rho(t);
    p.center() + v2(rho * c, rho * s)
}

/// `(gamma, gamma', gamma'')` at parameter `t`.
#[inline]
pub fn derivs<P: PolarProfile>(p: &P, t: f64) -> (V2, V2, V2) {
    let (s, c) = t.sin_cos();
    let u = v2(c, s);
    let v = v2(-s, c);
    let (rho, rho1, rho2) = p.rho_derivs(t);
    let g = p.center() + u * rho;
    let g1 = u * rho1 + v * rho;
    let g2 = u * (rho2 - rho) + v * (2.0 * rho1);
    (g, g1, g2)
}

/// Signed curvature of the counterclockwise-parametrized curve; positive
/// where the boundary is convex.
#[inline]
pub fn curvature<P: PolarProfile>(p: &P, t: f64) -> f64 {
    let (rho, rho1, rho2) = p.rho_derivs(t);
    let num = rho * rho + 2.0 * rho1 * rho1 - rho * rho2;
    let den = (rho * rho + rho1 * rho1).powf(1.5);
    num / den
}

/// Derived constants computed once per shape from a dense parameter sweep.
#[derive(Debug, Clone, Copy)]
pub struct PolarMetrics {
    pub reach: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    /// Lipschitz bound of the radial gap `|q - center| - rho(theta_q)`
    /// relative to the true distance, valid for queries within reach.
    pub radial_lipschitz: f64,
    pub max_abs_curvature: f64,
}

pub fn compute_metrics<P: PolarProfile>(p: &P) -> PolarMetrics {
    let n = 4096;
    let mut rho_min = f64::INFINITY;
    let mut rho_max = 0.0f64;
    let mut max_kappa = 0.0f64;
    let mut max_rho1 = 0.0f64;
    for i in 0..n {
        let t = TAU * i as f64 / n as f64;
        let (rho, rho1, _) = p.rho_derivs(t);
        rho_min = rho_min.min(rho);
        rho_max = rho_max.max(rho);
        max_rho1 = max_rho1.max(rho1.abs());
        max_kappa = max_kappa.max(curvature(p, t).abs());
    }
    let focal = 1.0 / max_kappa;
    let medial = medial_reach(p, focal);
    let reach = focal.min(medial);
    let denom = (rho_min - reach).max(0.25 * rho_min);
    let radial_lipschitz = (1.0 + (max_rho1 / denom).powi(2)).sqrt();
    PolarMetrics {
        reach,
        rho_min,
        rho_max,
        radial_lipschitz,
        max_abs_curvature: max_kappa,
    }
}

/// Largest normal offset for which the footpoint stays the unique closest
/// point, estimated by bisection on a parameter grid.
fn medial_reach<P: PolarProfile>(p: &P, focal: f64) -> f64 {
    let grid = 256;
    let mut reach = focal;
    for i in 0..grid {
        let t = TAU * i as f64 / grid as f64;
        let (g, g1, _) = derivs(p, t);
        let normal = v2(g1.y, -g1.x).normalize();
        for side in [-1.0, 1.0] {
            let dir = normal * side;
            let mut lo = 0.0f64;
            let mut hi = reach.min(focal);
            for _ in 0..24 {
                let mid = 0.5 * (lo + hi);
                let q = g + dir * mid;
                if brute_distance(p, q, 512) < mid * (1.0 - 1e-6) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            reach = reach.min(lo.max(1e-6));
        }
    }
    reach
}

/// Coarse curve distance used only for reach estimation.
fn brute_distance<P: PolarProfile>(p: &P, q: V2, samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..samples {
        let t = TAU * i as f64 / samples as f64;
        let d = (point(p, t) - q).norm_sq();
        if d < best {
            best = d;
        }
    }
    best.sqrt()
}

const STATIONARITY_TOL: f64 = 1e-12;
const MAX_NEWTON_ITERS: usize = 50;

/// Newton on the stationarity condition `(gamma(t) - q) . gamma'(t) = 0`.
/// Returns the parameter on success.
fn newton<P: PolarProfile>(p: &P, q: V2, t0: f64) -> Option<f64> {
    let mut t = t0;
    for _ in 0..MAX_NEWTON_ITERS {
        let (g, g1, g2) = derivs(p, t);
        let r = g - q;
        let f = r.dot(g1);
        let fp = g1.norm_sq() + r.dot(g2);
        if f.abs() <= STATIONARITY_TOL * (1.0 + g1.norm_sq()) {
            // require a local minimum of the squared distance
            if fp > 0.0 {
                return Some(t);
            }
            return None;
        }
        if fp.abs() < 1e-300 {
            return None;
        }
        let step = f / fp;
        // clamp wild steps; the seed is always near the target
        t -= step.clamp(-0.5, 0.5);
    }
    None
}

fn golden_refine<P: PolarProfile>(p: &P, q: V2, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let dist2 = |t: f64| (point(p, t) - q).norm_sq();
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = dist2(a);
    let mut fb = dist2(b);
    while hi - lo > 1e-13 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = dist2(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = dist2(b);
        }
    }
    0.5 * (lo + hi)
}

/// Global closest-point parameter via multi-start: the best of 256 uniform
/// samples seeds Newton, with golden-section refinement as fallback.
pub fn project_multistart<P: PolarProfile>(p: &P, q: V2) -> Result<f64> {
    let n = 256;
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let t = TAU * i as f64 / n as f64;
        let d = (point(p, t) - q).norm_sq();
        if d < best {
            best = d;
            best_i = i;
        }
    }
    let t0 = TAU * best_i as f64 / n as f64;
    if let Some(t) = newton(p, q, t0) {
        return Ok(t);
    }
    let width = TAU / n as f64;
    let t = golden_refine(p, q, t0 - width, t0 + width);
    if let Some(t) = newton(p, q, t) {
        return Ok(t);
    }
    // golden-section result without a clean Newton polish
    let (g, g1, _) = derivs(p, t);
    if (g - q).dot(g1).abs() <= 1e-8 * (1.0 + g1.norm_sq()) {
        return Ok(t);
    }
    Err(Error::NoConvergence)
}

/// Closest-point parameter for a query known to be inside the tube: the
/// query's own polar angle seeds Newton directly.
#[inline]
pub fn project_in_tube<P: PolarProfile>(p: &P, q: V2) -> Result<f64> {
    let rel = q - p.center();
    let theta = rel.y.atan2(rel.x);
    if let Some(t) = newton(p, q, theta) {
        // a tube point's closest distance never exceeds the radial gap
        let gap = (rel.norm() - p.rho(theta)).abs();
        if (point(p, t) - q).norm() <= gap + 1e-9 {
            return Ok(t);
        }
    }
    project_multistart(p, q)
}

/// Cheap conservative rejection test: a point whose radial gap exceeds
/// `lipschitz * eps` cannot lie within distance `eps` of the curve.
#[inline]
pub fn outside_tube_prefilter<P: PolarProfile>(p: &P, q: V2, eps: f64, m: &PolarMetrics) -> bool {
    let rel = q - p.center();
    let r = rel.norm();
    if r < 1e-12 {
        return true;
    }
    let theta = rel.y.atan2(rel.x);
    (r - p.rho(theta)).abs() > m.radial_lipschitz * eps
}
