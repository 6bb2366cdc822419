//! Rigidly transformed uniform lattices and deterministic tube enumeration.
//!
//! The lattice point with index `n` is `R(rotation) * (h * (n + shift))`:
//! the rigid transform is applied to the lattice rather than the boundary,
//! which is equivalent by rigid invariance and keeps the shape code
//! transform-free.

use crate::error::{Error, Result};
use crate::geometry::{Boundary, Point};
use crate::math::{rotate2, v2, v3, V2, V3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::ops::RangeInclusive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMode {
    ShiftOnly,
    ShiftAndRotation,
}

/// A rigid placement of the `h`-lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeFrame {
    pub h: f64,
    /// Lattice shift in units of `h`; canonically in `[0,1)^d`, integer
    /// offsets produce the same point set.
    pub shift: [f64; 3],
    /// Rotation angle (2D only; must be 0 in 3D).
    pub rotation: f64,
    pub dim: usize,
}

impl LatticeFrame {
    pub fn identity(h: f64, dim: usize) -> LatticeFrame {
        assert!(h > 0.0 && (dim == 2 || dim == 3));
        LatticeFrame {
            h,
            shift: [0.0; 3],
            rotation: 0.0,
            dim,
        }
    }

    pub fn with_shift(h: f64, dim: usize, shift: [f64; 3]) -> LatticeFrame {
        LatticeFrame {
            shift,
            ..LatticeFrame::identity(h, dim)
        }
    }

    /// Physical position of lattice index `n` (2D).
    #[inline]
    pub fn point2(&self, n: [i64; 2]) -> V2 {
        let p = v2(
            self.h * (n[0] as f64 + self.shift[0]),
            self.h * (n[1] as f64 + self.shift[1]),
        );
        if self.rotation == 0.0 {
            p
        } else {
            rotate2(p, self.rotation)
        }
    }

    /// Physical position of lattice index `n` (3D).
    #[inline]
    pub fn point3(&self, n: [i64; 3]) -> V3 {
        v3(
            self.h * (n[0] as f64 + self.shift[0]),
            self.h * (n[1] as f64 + self.shift[1]),
            self.h * (n[2] as f64 + self.shift[2]),
        )
    }
}

/// Draws the frame for `(seed, sample_index)`; fully replayable.
pub fn sample_frame(
    seed: u64,
    sample_index: u64,
    h: f64,
    dim: usize,
    mode: TransformMode,
) -> Result<LatticeFrame> {
    if dim == 3 && mode == TransformMode::ShiftAndRotation {
        return Err(Error::RotationUnsupported);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index);
    let mut shift = [0.0; 3];
    for s in shift.iter_mut().take(dim) {
        *s = rng.gen_range(0.0..1.0);
    }
    let rotation = match mode {
        TransformMode::ShiftOnly => 0.0,
        TransformMode::ShiftAndRotation => rng.gen_range(0.0..TAU),
    };
    Ok(LatticeFrame {
        h,
        shift,
        rotation,
        dim,
    })
}

/// Inclusive index ranges guaranteed to cover every lattice point within
/// distance `eps` of the boundary: the bounding box is dilated by
/// `eps + h * sqrt(d)` and pulled back through the frame's rotation.
pub fn candidate_ranges2(
    boundary: &Boundary,
    frame: &LatticeFrame,
    eps: f64,
) -> [RangeInclusive<i64>; 2] {
    let (lo, hi) = boundary.bbox2();
    let pad = eps + frame.h * std::f64::consts::SQRT_2;
    let (lo, hi) = (lo - v2(pad, pad), hi + v2(pad, pad));
    // axis-aligned cover of the dilated box in lattice coordinates
    let corners = [
        v2(lo.x, lo.y),
        v2(lo.x, hi.y),
        v2(hi.x, lo.y),
        v2(hi.x, hi.y),
    ];
    let mut llo = v2(f64::INFINITY, f64::INFINITY);
    let mut lhi = v2(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in corners {
        let r = rotate2(c, -frame.rotation);
        llo = v2(llo.x.min(r.x), llo.y.min(r.y));
        lhi = v2(lhi.x.max(r.x), lhi.y.max(r.y));
    }
    let lo_i = |v: f64, s: f64| (v / frame.h - s).floor() as i64 - 1;
    let hi_i = |v: f64, s: f64| (v / frame.h - s).ceil() as i64 + 1;
    [
        lo_i(llo.x, frame.shift[0])..=hi_i(lhi.x, frame.shift[0]),
        lo_i(llo.y, frame.shift[1])..=hi_i(lhi.y, frame.shift[1]),
    ]
}

pub fn candidate_ranges3(
    boundary: &Boundary,
    frame: &LatticeFrame,
    eps: f64,
) -> [RangeInclusive<i64>; 3] {
    let (lo, hi) = boundary.bbox3();
    let pad = eps + frame.h * 3.0f64.sqrt();
    let lo = lo - v3(pad, pad, pad);
    let hi = hi + v3(pad, pad, pad);
    let lo_i = |v: f64, s: f64| (v / frame.h - s).floor() as i64 - 1;
    let hi_i = |v: f64, s: f64| (v / frame.h - s).ceil() as i64 + 1;
    [
        lo_i(lo.x, frame.shift[0])..=hi_i(hi.x, frame.shift[0]),
        lo_i(lo.y, frame.shift[1])..=hi_i(hi.y, frame.shift[1]),
        lo_i(lo.z, frame.shift[2])..=hi_i(hi.z, frame.shift[2]),
    ]
}

/// One lattice point inside the tube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeMember {
    pub index: [i64; 3],
    pub point: Point,
    pub d: f64,
}

/// Materialized tube point set in lexicographic index order.
#[derive(Debug, Clone)]
pub struct TubeEnumeration {
    pub members: Vec<TubeMember>,
}

impl TubeEnumeration {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Enumerates all lattice points of the transformed lattice within the
/// tube of half-width `eps` (and, for open curves, within the
/// perpendicular band), in lexicographic index order.
pub fn enumerate_tube(
    boundary: &Boundary,
    frame: &LatticeFrame,
    eps: f64,
) -> Result<TubeEnumeration> {
    if !(eps > 0.0) {
        return Err(Error::InvalidWidth(eps));
    }
    if eps >= boundary.reach() {
        return Err(Error::WidthExceedsReach {
            epsilon: eps,
            reach: boundary.reach(),
        });
    }
    let mut members = Vec::new();
    match boundary.dim() {
        2 => {
            let [rx, ry] = candidate_ranges2(boundary, frame, eps);
            for i in rx {
                for j in ry.clone() {
                    let x = frame.point2([i, j]);
                    if let Some(s) = boundary.tube_eval2(x, eps)? {
                        members.push(TubeMember {
                            index: [i, j, 0],
                            point: Point::D2(x),
                            d: s.d,
                        });
                    }
                }
            }
        }
        _ => {
            if frame.rotation != 0.0 {
                return Err(Error::RotationUnsupported);
            }
            let [rx, ry, rz] = candidate_ranges3(boundary, frame, eps);
            for i in rx {
                for j in ry.clone() {
                    for k in rz.clone() {
                        let x = frame.point3([i, j, k]);
                        if let Some(s) = boundary.tube_eval3(x, eps)? {
                            members.push(TubeMember {
                                index: [i, j, k],
                                point: Point::D3(x),
                                d: s.d,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(TubeEnumeration { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::v2;

    #[test]
    fn circle_coarse_tube_count() {
        // h=0.5, eps=0.05: only (+-0.5, +-0.5) with |x| = 0.7071 are within
        // 0.05 of the r=0.75 circle
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        let frame = LatticeFrame::identity(0.5, 2);
        let e = enumerate_tube(&c, &frame, 0.05).unwrap();
        assert_eq!(e.count(), 4);
        for m in &e.members {
            assert_eq!(m.index[0].abs(), 1);
            assert_eq!(m.index[1].abs(), 1);
            assert!((m.d - (0.5f64 * std::f64::consts::SQRT_2 - 0.75)).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_tube() {
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        let frame = LatticeFrame::identity(0.5, 2);
        // nearest lattice point is 0.0429 from the circle
        let e = enumerate_tube(&c, &frame, 0.01).unwrap();
        assert_eq!(e.count(), 0);
    }

    #[test]
    fn segment_rectangle_count() {
        let s = Boundary::segment(v2(0.0, 0.0), v2(1.0, 0.0));
        let frame = LatticeFrame::identity(0.25, 2);
        let e = enumerate_tube(&s, &frame, 0.3).unwrap();
        // x in {0,.25,.5,.75,1}, y in {-.25,0,.25}: closed band and tube
        assert_eq!(e.count(), 15);
    }

    #[test]
    fn width_exceeding_reach_is_rejected() {
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        let frame = LatticeFrame::identity(0.1, 2);
        assert!(matches!(
            enumerate_tube(&c, &frame, 0.75),
            Err(Error::WidthExceedsReach { .. })
        ));
        assert!(matches!(
            enumerate_tube(&c, &frame, 0.0),
            Err(Error::InvalidWidth(_))
        ));
    }

    #[test]
    fn matches_exhaustive_scan_on_circle() {
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        for (h, rot) in [(0.25, 0.0), (0.1, 0.7), (0.125, 2.9)] {
            let frame = LatticeFrame {
                h,
                shift: [0.3, 0.65, 0.0],
                rotation: rot,
                dim: 2,
            };
            let eps = 0.2;
            let e = enumerate_tube(&c, &frame, eps).unwrap();
            // exhaustive scan over a generously padded index box
            let mut brute = Vec::new();
            let range = (2.0 / h).ceil() as i64;
            for i in -range..=range {
                for j in -range..=range {
                    let x = frame.point2([i, j]);
                    if let Some(_s) = c.tube_eval2(x, eps).unwrap() {
                        brute.push([i, j, 0]);
                    }
                }
            }
            let got: Vec<[i64; 3]> = e.members.iter().map(|m| m.index).collect();
            assert_eq!(got, brute, "h={h} rot={rot}");
        }
    }

    #[test]
    fn tube_count_scales_like_eps_over_h_squared() {
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        let perimeter = 2.0 * std::f64::consts::PI * 0.75;
        for h in [0.05, 0.025, 0.0125] {
            let eps = 2.0 * h;
            let frame = LatticeFrame::with_shift(h, 2, [0.5, 0.5, 0.0]);
            let count = enumerate_tube(&c, &frame, eps).unwrap().count() as f64;
            let expect = perimeter * 2.0 * eps / (h * h);
            assert!(
                count > 0.5 * expect && count < 2.0 * expect,
                "h={h}: count {count}, expected about {expect}"
            );
        }
    }

    #[test]
    fn integer_shift_offsets_give_identical_point_sets() {
        let c = Boundary::circle(v2(0.0, 0.0), 0.75);
        let base = LatticeFrame {
            h: 0.1,
            shift: [0.3, 0.8, 0.0],
            rotation: 0.0,
            dim: 2,
        };
        let offset = LatticeFrame {
            shift: [1.3, -1.2, 0.0],
            ..base
        };
        let key = |e: &TubeEnumeration| {
            let mut pts: Vec<(i64, i64)> = e
                .members
                .iter()
                .map(|m| match m.point {
                    Point::D2(p) => ((p.x * 1e10).round() as i64, (p.y * 1e10).round() as i64),
                    _ => unreachable!(),
                })
                .collect();
            pts.sort_unstable();
            pts
        };
        let a = enumerate_tube(&c, &base, 0.15).unwrap();
        let b = enumerate_tube(&c, &offset, 0.15).unwrap();
        assert!(!a.members.is_empty());
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn sample_frame_is_replayable() {
        let a = sample_frame(1, 0, 0.1, 2, TransformMode::ShiftAndRotation).unwrap();
        let b = sample_frame(1, 0, 0.1, 2, TransformMode::ShiftAndRotation).unwrap();
        assert_eq!(a, b);
        let c = sample_frame(1, 1, 0.1, 2, TransformMode::ShiftAndRotation).unwrap();
        assert_ne!(a, c);
        let d = sample_frame(2, 0, 0.1, 2, TransformMode::ShiftAndRotation).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn shift_only_has_zero_rotation() {
        for idx in 0..20 {
            let f = sample_frame(9, idx, 0.1, 2, TransformMode::ShiftOnly).unwrap();
            assert_eq!(f.rotation, 0.0);
            assert!(f.shift.iter().take(2).all(|s| (0.0..1.0).contains(s)));
        }
    }

    #[test]
    fn rotation_unsupported_in_3d() {
        assert!(matches!(
            sample_frame(1, 0, 0.1, 3, TransformMode::ShiftAndRotation),
            Err(Error::RotationUnsupported)
        ));
        assert!(sample_frame(1, 0, 0.1, 3, TransformMode::ShiftOnly).is_ok());
    }

    #[test]
    fn shift_distribution_is_uniform() {
        let n = 10_000;
        let mut mean = [0.0f64; 2];
        for idx in 0..n {
            let f = sample_frame(123, idx, 0.1, 2, TransformMode::ShiftOnly).unwrap();
            mean[0] += f.shift[0];
            mean[1] += f.shift[1];
        }
        for m in mean {
            let m = m / n as f64;
            assert!((0.47..0.53).contains(&m), "mean shift {m}");
        }
    }
}
