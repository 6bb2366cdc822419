//! The lattice quadrature sum
//! `I_h(f) = h^d * sum_n f(P x_n) * theta_eps(d(x_n)) * J(x_n, d(x_n))`
//! over all lattice points `x_n` in the tube.
//!
//! Summation contract: lattice rows (fixed outermost index) are the chunk
//! partition; each chunk is accumulated with compensated summation and the
//! per-chunk sums are merged with a fixed pairwise tree, so the value is
//! bit-identical regardless of how many threads process the chunks.

use crate::error::{Error, Result};
use crate::geometry::{jacobian_factor, Boundary, JacobianMode, Point};
use crate::lattice::{candidate_ranges2, candidate_ranges3, LatticeFrame};
use crate::math::{V2, V3};
use crate::summation::{pairwise_merge, Kahan};
use crate::weights::WeightFunction;
use rayon::prelude::*;

/// Closed-form scalar fields used across the studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrand {
    /// f = 1.
    One,
    /// f(x,y) = cos(x^2 - y) sin(y^2 - x^3).
    Trig2d,
    /// f(x,y,z) = cos(x^2 - y - z^3) sin(y^2 - x^3 - z).
    Trig3d,
    /// f(x) = |x|^2.
    NormSq,
    /// The 2D trig integrand zeroed on the half-plane y < y_cut.
    Trig2dMasked { y_cut: f64 },
}

impl Integrand {
    pub fn id(&self) -> &'static str {
        match self {
            Integrand::One => "one",
            Integrand::Trig2d => "trig2d",
            Integrand::Trig3d => "trig3d",
            Integrand::NormSq => "normsq",
            Integrand::Trig2dMasked { .. } => "trig2d_masked",
        }
    }

    #[inline]
    pub fn eval2(&self, p: V2) -> f64 {
        match self {
            Integrand::One => 1.0,
            Integrand::Trig2d => trig2d(p),
            Integrand::NormSq => p.norm_sq(),
            Integrand::Trig2dMasked { y_cut } => {
                if p.y < *y_cut {
                    0.0
                } else {
                    trig2d(p)
                }
            }
            Integrand::Trig3d => panic!("3D integrand evaluated on a 2D point"),
        }
    }

    #[inline]
    pub fn eval3(&self, p: V3) -> f64 {
        match self {
            Integrand::One => 1.0,
            Integrand::NormSq => p.norm_sq(),
            Integrand::Trig3d => {
                let a = p.x * p.x - p.y - p.z * p.z * p.z;
                let b = p.y * p.y - p.x * p.x * p.x - p.z;
                a.cos() * b.sin()
            }
            _ => panic!("2D integrand evaluated on a 3D point"),
        }
    }
}

#[inline]
fn trig2d(p: V2) -> f64 {
    (p.x * p.x - p.y).cos() * (p.y * p.y - p.x * p.x * p.x).sin()
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub point_count: usize,
    pub h: f64,
    pub epsilon: f64,
    pub frame: LatticeFrame,
    pub jacobian_mode: JacobianMode,
}

/// |value - reference|.
pub fn quadrature_error(result: &QuadratureResult, reference: f64) -> f64 {
    (result.value - reference).abs()
}

/// Evaluates the IBIM sum. An empty tube is not an error: the result has
/// value 0 and point_count 0.
pub fn ibim_integrate(
    boundary: &Boundary,
    f: &Integrand,
    w: &WeightFunction,
    frame: &LatticeFrame,
    mode: JacobianMode,
) -> Result<QuadratureResult> {
    let eps = w.epsilon();
    if eps >= boundary.reach() {
        return Err(Error::WidthExceedsReach {
            epsilon: eps,
            reach: boundary.reach(),
        });
    }
    assert_eq!(frame.dim, boundary.dim(), "frame/boundary dimension mismatch");
    let (value, point_count) = match boundary.dim() {
        2 => integrate_2d(boundary, f, w, frame, mode)?,
        _ => integrate_3d(boundary, f, w, frame, mode)?,
    };
    Ok(QuadratureResult {
        value,
        point_count,
        h: frame.h,
        epsilon: eps,
        frame: *frame,
        jacobian_mode: mode,
    })
}

fn integrate_2d(
    boundary: &Boundary,
    f: &Integrand,
    w: &WeightFunction,
    frame: &LatticeFrame,
    mode: JacobianMode,
) -> Result<(f64, usize)> {
    let eps = w.epsilon();
    let [rx, ry] = candidate_ranges2(boundary, frame, eps);
    let rows: Vec<i64> = rx.collect();
    // one chunk per lattice row: the partition is fixed by the geometry
    let partials: Vec<(f64, usize)> = rows
        .par_iter()
        .map(|&i| -> Result<(f64, usize)> {
            let mut acc = Kahan::new();
            let mut count = 0usize;
            for j in ry.clone() {
                let x = frame.point2([i, j]);
                let s = match boundary.tube_eval2(x, eps)? {
                    Some(s) => s,
                    None => continue,
                };
                let jac = match mode {
                    JacobianMode::Unity => 1.0,
                    JacobianMode::Exact => jacobian_factor(s.d, s.kappa)?,
                    JacobianMode::Laplacian { .. } => {
                        boundary.jacobian(Point::D2(x), mode)?
                    }
                };
                acc.add(f.eval2(s.proj) * w.eval(s.d) * jac);
                count += 1;
            }
            Ok((acc.value(), count))
        })
        .collect::<Result<Vec<_>>>()?;
    let sums: Vec<f64> = partials.iter().map(|p| p.0).collect();
    let count = partials.iter().map(|p| p.1).sum();
    Ok((frame.h * frame.h * pairwise_merge(&sums), count))
}

fn integrate_3d(
    boundary: &Boundary,
    f: &Integrand,
    w: &WeightFunction,
    frame: &LatticeFrame,
    mode: JacobianMode,
) -> Result<(f64, usize)> {
    if frame.rotation != 0.0 {
        return Err(Error::RotationUnsupported);
    }
    let eps = w.epsilon();
    let [rx, ry, rz] = candidate_ranges3(boundary, frame, eps);
    let slabs: Vec<i64> = rx.collect();
    let partials: Vec<(f64, usize)> = slabs
        .par_iter()
        .map(|&i| -> Result<(f64, usize)> {
            let mut acc = Kahan::new();
            let mut count = 0usize;
            for j in ry.clone() {
                for k in rz.clone() {
                    let x = frame.point3([i, j, k]);
                    let s = match boundary.tube_eval3(x, eps)? {
                        Some(s) => s,
                        None => continue,
                    };
                    let jac = match mode {
                        JacobianMode::Unity => 1.0,
                        JacobianMode::Exact => {
                            jacobian_factor(s.d, s.k1)? * jacobian_factor(s.d, s.k2)?
                        }
                        JacobianMode::Laplacian { .. } => {
                            boundary.jacobian(Point::D3(x), mode)?
                        }
                    };
                    acc.add(f.eval3(s.proj) * w.eval(s.d) * jac);
                    count += 1;
                }
            }
            Ok((acc.value(), count))
        })
        .collect::<Result<Vec<_>>>()?;
    let sums: Vec<f64> = partials.iter().map(|p| p.0).collect();
    let count = partials.iter().map(|p| p.1).sum();
    Ok((frame.h.powi(3) * pairwise_merge(&sums), count))
}
