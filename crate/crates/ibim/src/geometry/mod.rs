//! Boundary shapes (closed and open, 2D and 3D) with signed distance,
//! closest-point projection, curvature and level-set Jacobian evaluation.
//!
//! Sign conventions:
//! * signed distance is negative strictly inside a closed boundary and
//!   positive outside (`d(x) = n(Px) . (x - Px)` with `n` the outward
//!   unit normal);
//! * curvature is positive where the boundary curves away from the
//!   outward normal (convex regions of a closed boundary).

pub mod polar;

use crate::error::{Error, Result};
use crate::math::{v2, v3, V2, V3};
use polar::{PolarMetrics, PolarProfile};

/// A point in the ambient space of a boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    D2(V2),
    D3(V3),
}

impl Point {
    pub fn d2(x: f64, y: f64) -> Point {
        Point::D2(v2(x, y))
    }

    pub fn d3(x: f64, y: f64, z: f64) -> Point {
        Point::D3(v3(x, y, z))
    }

    pub fn dim(&self) -> usize {
        match self {
            Point::D2(_) => 2,
            Point::D3(_) => 3,
        }
    }

    fn expect_2d(self) -> V2 {
        match self {
            Point::D2(p) => p,
            Point::D3(_) => panic!("expected a 2D point for a 2D boundary"),
        }
    }

    fn expect_3d(self) -> V3 {
        match self {
            Point::D3(p) => p,
            Point::D2(_) => panic!("expected a 3D point for a 3D boundary"),
        }
    }
}

/// Curvature of the boundary at a projected point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvatureData {
    /// Signed curvature of a planar curve.
    Curve { kappa: f64 },
    /// Principal curvatures of a surface.
    Surface { k1: f64, k2: f64 },
}

impl CurvatureData {
    /// Mean curvature `H = (k1 + k2) / 2` (surfaces only).
    pub fn mean(&self) -> f64 {
        match self {
            CurvatureData::Curve { kappa } => *kappa,
            CurvatureData::Surface { k1, k2 } => 0.5 * (k1 + k2),
        }
    }

    /// Gaussian curvature `G = k1 * k2` (surfaces only).
    pub fn gaussian(&self) -> f64 {
        match self {
            CurvatureData::Curve { .. } => 0.0,
            CurvatureData::Surface { k1, k2 } => k1 * k2,
        }
    }
}

/// How the level-set Jacobian factor is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobianMode {
    /// Product of `1 / (1 + eta * kappa_i)` over principal curvatures.
    Exact,
    /// The constant 1 (first-order approximation).
    Unity,
    /// `1 - d(x) * laplacian(d)(x)` with the Laplacian by central
    /// differences of the signed distance at the given step.
    Laplacian { step: f64 },
}

const MEDIAL_TOL: f64 = 1e-12;

/// The superellipse `x^4/r^4 + y^2/r^2 = 1`, a smooth convex closed curve
/// whose curvature vanishes to order two at `(0, +-r)`.
#[derive(Debug, Clone, Copy)]
pub struct QuarticConvex {
    center: V2,
    radius: f64,
    metrics: PolarMetrics,
}

impl PolarProfile for QuarticConvex {
    fn center(&self) -> V2 {
        self.center
    }

    #[inline]
    fn rho_derivs(&self, t: f64) -> (f64, f64, f64) {
        // In polar form rho^2 satisfies a*rho^4 + b*rho^2 = 1 with
        // a = cos^4 t / r^4 and b = sin^2 t / r^2, hence
        // rho^2 = 2 / (b + sqrt(b^2 + 4a)); the positive root keeps the
        // denominator bounded away from zero for all t.
        let (s, c) = t.sin_cos();
        let r2 = self.radius * self.radius;
        let r4 = r2 * r2;
        let (c2, s2) = (c * c, s * s);
        let a = c2 * c2 / r4;
        let b = s2 / r2;
        let a1 = -4.0 * c2 * c * s / r4;
        let b1 = 2.0 * s * c / r2;
        let a2 = (12.0 * c2 * s2 - 4.0 * c2 * c2) / r4;
        let b2 = 2.0 * (c2 - s2) / r2;
        let s_ = (b * b + 4.0 * a).sqrt();
        let s1 = (b * b1 + 2.0 * a1) / s_;
        let s2_ = (b1 * b1 + b * b2 + 2.0 * a2 - s1 * s1) / s_;
        let d = b + s_;
        let d1 = b1 + s1;
        let d2 = b2 + s2_;
        let rho_sq = 2.0 / d;
        let rho_sq1 = -2.0 * d1 / (d * d);
        let rho_sq2 = -2.0 * d2 / (d * d) + 4.0 * d1 * d1 / (d * d * d);
        let rho = rho_sq.sqrt();
        let rho1 = rho_sq1 / (2.0 * rho);
        let rho2 = (rho_sq2 - 2.0 * rho1 * rho1) / (2.0 * rho);
        (rho, rho1, rho2)
    }
}

/// The star-shaped curve `rho(theta) = big_r + small_r * cos(m * theta)`.
#[derive(Debug, Clone, Copy)]
pub struct StarCurve {
    center: V2,
    big_r: f64,
    small_r: f64,
    m: u32,
    metrics: PolarMetrics,
}

impl PolarProfile for StarCurve {
    fn center(&self) -> V2 {
        self.center
    }

    #[inline]
    fn rho_derivs(&self, t: f64) -> (f64, f64, f64) {
        let m = self.m as f64;
        let (s, c) = (m * t).sin_cos();
        (
            self.big_r + self.small_r * c,
            -m * self.small_r * s,
            -m * m * self.small_r * c,
        )
    }
}

/// An open straight segment with the fixed normal `perp(b - a)` (for the
/// segment `(0,0)-(1,0)` the normal is `(0,1)`).
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    a: V2,
    b: V2,
    dir: V2,
    normal: V2,
    len: f64,
}

/// The open upper half (polar angle in `[0, pi]`) of a circle.
#[derive(Debug, Clone, Copy)]
pub struct Semicircle {
    center: V2,
    radius: f64,
}

/// A stadium: the closed boundary at distance `cap_radius` from the spine
/// segment `a-b` (two straight sides and two semicircular caps).
#[derive(Debug, Clone, Copy)]
pub struct Capsule {
    a: V2,
    b: V2,
    dir: V2,
    len: f64,
    cap_radius: f64,
}

#[derive(Debug, Clone, Copy)]
pub enum Boundary {
    Circle { center: V2, radius: f64 },
    Sphere { center: V3, radius: f64 },
    QuarticConvex(QuarticConvex),
    StarCurve(StarCurve),
    Segment(Segment),
    Semicircle(Semicircle),
    Capsule(Capsule),
}

/// One lattice point's geometric data inside a 2D tube.
#[derive(Debug, Clone, Copy)]
pub struct TubeSample2 {
    pub d: f64,
    pub proj: V2,
    pub kappa: f64,
}

/// One lattice point's geometric data inside a 3D tube.
#[derive(Debug, Clone, Copy)]
pub struct TubeSample3 {
    pub d: f64,
    pub proj: V3,
    pub k1: f64,
    pub k2: f64,
}

impl Boundary {
    pub fn circle(center: V2, radius: f64) -> Boundary {
        assert!(radius > 0.0);
        Boundary::Circle { center, radius }
    }

    pub fn sphere(center: V3, radius: f64) -> Boundary {
        assert!(radius > 0.0);
        Boundary::Sphere { center, radius }
    }

    pub fn quartic(center: V2, radius: f64) -> Boundary {
        assert!(radius > 0.0);
        let mut q = QuarticConvex {
            center,
            radius,
            metrics: PolarMetrics {
                reach: 0.0,
                rho_min: 0.0,
                rho_max: 0.0,
                radial_lipschitz: 0.0,
                max_abs_curvature: 0.0,
            },
        };
        q.metrics = polar::compute_metrics(&q);
        Boundary::QuarticConvex(q)
    }

    pub fn star(center: V2, big_r: f64, small_r: f64, m: u32) -> Boundary {
        assert!(big_r > small_r.abs() && small_r != 0.0 && m >= 2);
        let mut s = StarCurve {
            center,
            big_r,
            small_r,
            m,
            metrics: PolarMetrics {
                reach: 0.0,
                rho_min: 0.0,
                rho_max: 0.0,
                radial_lipschitz: 0.0,
                max_abs_curvature: 0.0,
            },
        };
        s.metrics = polar::compute_metrics(&s);
        Boundary::StarCurve(s)
    }

    pub fn segment(a: V2, b: V2) -> Boundary {
        let len = (b - a).norm();
        assert!(len > 0.0);
        let dir = (b - a) * (1.0 / len);
        Boundary::Segment(Segment {
            a,
            b,
            dir,
            normal: dir.perp(),
            len,
        })
    }

    pub fn semicircle(center: V2, radius: f64) -> Boundary {
        assert!(radius > 0.0);
        Boundary::Semicircle(Semicircle { center, radius })
    }

    pub fn capsule(a: V2, b: V2, cap_radius: f64) -> Boundary {
        let len = (b - a).norm();
        assert!(len > 0.0 && cap_radius > 0.0);
        let dir = (b - a) * (1.0 / len);
        Boundary::Capsule(Capsule {
            a,
            b,
            dir,
            len,
            cap_radius,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Boundary::Sphere { .. } => 3,
            _ => 2,
        }
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, Boundary::Segment(_) | Boundary::Semicircle(_))
    }

    /// Largest tube half-width for which projection is unique everywhere
    /// in the tube.
    pub fn reach(&self) -> f64 {
        match self {
            Boundary::Circle { radius, .. } | Boundary::Sphere { radius, .. } => *radius,
            Boundary::QuarticConvex(q) => q.metrics.reach,
            Boundary::StarCurve(s) => s.metrics.reach,
            Boundary::Segment(_) => f64::INFINITY,
            Boundary::Semicircle(s) => s.radius,
            Boundary::Capsule(c) => c.cap_radius,
        }
    }

    /// Axis-aligned bounding box of the boundary itself (2D shapes).
    pub fn bbox2(&self) -> (V2, V2) {
        match self {
            Boundary::Circle { center, radius } => {
                (*center - v2(*radius, *radius), *center + v2(*radius, *radius))
            }
            Boundary::QuarticConvex(q) => {
                let r = q.metrics.rho_max;
                (q.center - v2(r, r), q.center + v2(r, r))
            }
            Boundary::StarCurve(s) => {
                let r = s.metrics.rho_max;
                (s.center - v2(r, r), s.center + v2(r, r))
            }
            Boundary::Segment(s) => (
                v2(s.a.x.min(s.b.x), s.a.y.min(s.b.y)),
                v2(s.a.x.max(s.b.x), s.a.y.max(s.b.y)),
            ),
            Boundary::Semicircle(s) => (
                s.center - v2(s.radius, s.radius),
                s.center + v2(s.radius, s.radius),
            ),
            Boundary::Capsule(c) => {
                let r = c.cap_radius;
                (
                    v2(c.a.x.min(c.b.x) - r, c.a.y.min(c.b.y) - r),
                    v2(c.a.x.max(c.b.x) + r, c.a.y.max(c.b.y) + r),
                )
            }
            Boundary::Sphere { .. } => panic!("bbox2 called on a 3D boundary"),
        }
    }

    pub fn bbox3(&self) -> (V3, V3) {
        match self {
            Boundary::Sphere { center, radius } => (
                *center - v3(*radius, *radius, *radius),
                *center + v3(*radius, *radius, *radius),
            ),
            _ => panic!("bbox3 called on a 2D boundary"),
        }
    }

    /// Rough boundary diameter, used to scale finite-difference steps.
    pub fn diameter(&self) -> f64 {
        match self {
            Boundary::Sphere { radius, .. } => 2.0 * radius,
            _ => {
                let (lo, hi) = self.bbox2();
                (hi - lo).norm()
            }
        }
    }

    /// Signed distance to the boundary; negative inside closed shapes.
    pub fn signed_distance(&self, x: Point) -> Result<f64> {
        match self {
            Boundary::Circle { center, radius } => {
                let rel = x.expect_2d() - *center;
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(r - radius)
            }
            Boundary::Sphere { center, radius } => {
                let rel = x.expect_3d() - *center;
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(r - radius)
            }
            Boundary::QuarticConvex(q) => polar_signed_distance(q, x.expect_2d(), &q.metrics),
            Boundary::StarCurve(s) => polar_signed_distance(s, x.expect_2d(), &s.metrics),
            Boundary::Segment(s) => {
                let p = x.expect_2d();
                let (t, d) = s.foot(p);
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::OutsideBand);
                }
                Ok(d)
            }
            Boundary::Semicircle(s) => {
                let rel = x.expect_2d() - s.center;
                if rel.y < 0.0 {
                    return Err(Error::OutsideBand);
                }
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(r - s.radius)
            }
            Boundary::Capsule(c) => {
                let p = x.expect_2d();
                let (_, foot) = c.spine_foot(p);
                let gap = (p - foot).norm();
                if gap < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(gap - c.cap_radius)
            }
        }
    }

    /// Closest boundary point.
    pub fn project(&self, x: Point) -> Result<Point> {
        match self {
            Boundary::Circle { center, radius } => {
                let rel = x.expect_2d() - *center;
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(Point::D2(*center + rel * (radius / r)))
            }
            Boundary::Sphere { center, radius } => {
                let rel = x.expect_3d() - *center;
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(Point::D3(*center + rel * (radius / r)))
            }
            Boundary::QuarticConvex(q) => {
                let t = polar_project(q, x.expect_2d(), &q.metrics)?;
                Ok(Point::D2(polar::point(q, t)))
            }
            Boundary::StarCurve(s) => {
                let t = polar_project(s, x.expect_2d(), &s.metrics)?;
                Ok(Point::D2(polar::point(s, t)))
            }
            Boundary::Segment(s) => {
                let p = x.expect_2d();
                let (t, _) = s.foot(p);
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::OutsideBand);
                }
                Ok(Point::D2(s.a + s.dir * (t * s.len)))
            }
            Boundary::Semicircle(s) => {
                let rel = x.expect_2d() - s.center;
                if rel.y < 0.0 {
                    return Err(Error::OutsideBand);
                }
                let r = rel.norm();
                if r < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(Point::D2(s.center + rel * (s.radius / r)))
            }
            Boundary::Capsule(c) => {
                let p = x.expect_2d();
                let (_, foot) = c.spine_foot(p);
                let rel = p - foot;
                let gap = rel.norm();
                if gap < MEDIAL_TOL {
                    return Err(Error::NonUniqueProjection);
                }
                Ok(Point::D2(foot + rel * (c.cap_radius / gap)))
            }
        }
    }

    /// Curvature at a boundary point `p` (caller guarantees `p` lies on
    /// the boundary; see `project`).
    pub fn curvature(&self, p: Point) -> CurvatureData {
        match self {
            Boundary::Circle { radius, .. } => CurvatureData::Curve {
                kappa: 1.0 / radius,
            },
            Boundary::Sphere { radius, .. } => CurvatureData::Surface {
                k1: 1.0 / radius,
                k2: 1.0 / radius,
            },
            Boundary::QuarticConvex(q) => {
                let t = (p.expect_2d() - q.center).angle();
                CurvatureData::Curve {
                    kappa: polar::curvature(q, t),
                }
            }
            Boundary::StarCurve(s) => {
                let t = (p.expect_2d() - s.center).angle();
                CurvatureData::Curve {
                    kappa: polar::curvature(s, t),
                }
            }
            Boundary::Segment(_) => CurvatureData::Curve { kappa: 0.0 },
            Boundary::Semicircle(s) => CurvatureData::Curve {
                kappa: 1.0 / s.radius,
            },
            Boundary::Capsule(c) => {
                let q = p.expect_2d();
                let t = (q - c.a).dot(c.dir) / c.len;
                // junction ties go to the straight pieces
                let kappa = if (0.0..=1.0).contains(&t) {
                    0.0
                } else {
                    1.0 / c.cap_radius
                };
                CurvatureData::Curve { kappa }
            }
        }
    }

    /// Level-set Jacobian factor `J(x, d(x))` relating the area element of
    /// the level set through `x` to that of the boundary.
    pub fn jacobian(&self, x: Point, mode: JacobianMode) -> Result<f64> {
        match mode {
            JacobianMode::Unity => Ok(1.0),
            JacobianMode::Exact => {
                let eta = self.signed_distance(x)?;
                let proj = self.project(x)?;
                match self.curvature(proj) {
                    CurvatureData::Curve { kappa } => jacobian_factor(eta, kappa),
                    CurvatureData::Surface { k1, k2 } => {
                        Ok(jacobian_factor(eta, k1)? * jacobian_factor(eta, k2)?)
                    }
                }
            }
            JacobianMode::Laplacian { step } => {
                let d = self.signed_distance(x)?;
                Ok(1.0 - d * self.laplacian_distance(x, step)?)
            }
        }
    }

    fn laplacian_distance(&self, x: Point, step: f64) -> Result<f64> {
        let d0 = self.signed_distance(x)?;
        let mut lap = 0.0;
        match x {
            Point::D2(p) => {
                for dir in [v2(step, 0.0), v2(0.0, step)] {
                    let dp = self.signed_distance(Point::D2(p + dir))?;
                    let dm = self.signed_distance(Point::D2(p - dir))?;
                    lap += (dp - 2.0 * d0 + dm) / (step * step);
                }
            }
            Point::D3(p) => {
                for dir in [v3(step, 0.0, 0.0), v3(0.0, step, 0.0), v3(0.0, 0.0, step)] {
                    let dp = self.signed_distance(Point::D3(p + dir))?;
                    let dm = self.signed_distance(Point::D3(p - dir))?;
                    lap += (dp - 2.0 * d0 + dm) / (step * step);
                }
            }
        }
        Ok(lap)
    }

    /// Fast tube membership + projection for the quadrature hot loop.
    /// Returns `None` for points outside the tube (or outside an open
    /// curve's perpendicular band).
    pub fn tube_eval2(&self, q: V2, eps: f64) -> Result<Option<TubeSample2>> {
        match self {
            Boundary::Circle { center, radius } => {
                let rel = q - *center;
                let r = rel.norm();
                let d = r - radius;
                if d.abs() > eps || r < MEDIAL_TOL {
                    return Ok(None);
                }
                Ok(Some(TubeSample2 {
                    d,
                    proj: *center + rel * (radius / r),
                    kappa: 1.0 / radius,
                }))
            }
            Boundary::QuarticConvex(p) => polar_tube_eval(p, q, eps, &p.metrics),
            Boundary::StarCurve(p) => polar_tube_eval(p, q, eps, &p.metrics),
            Boundary::Segment(s) => {
                let (t, d) = s.foot(q);
                if !(0.0..=1.0).contains(&t) || d.abs() > eps {
                    return Ok(None);
                }
                Ok(Some(TubeSample2 {
                    d,
                    proj: s.a + s.dir * (t * s.len),
                    kappa: 0.0,
                }))
            }
            Boundary::Semicircle(s) => {
                let rel = q - s.center;
                if rel.y < 0.0 {
                    return Ok(None);
                }
                let r = rel.norm();
                let d = r - s.radius;
                if d.abs() > eps || r < MEDIAL_TOL {
                    return Ok(None);
                }
                Ok(Some(TubeSample2 {
                    d,
                    proj: s.center + rel * (s.radius / r),
                    kappa: 1.0 / s.radius,
                }))
            }
            Boundary::Capsule(c) => {
                let (t, foot) = c.spine_foot(q);
                let rel = q - foot;
                let gap = rel.norm();
                let d = gap - c.cap_radius;
                if d.abs() > eps || gap < MEDIAL_TOL {
                    return Ok(None);
                }
                let kappa = if (0.0..=1.0).contains(&t) {
                    0.0
                } else {
                    1.0 / c.cap_radius
                };
                Ok(Some(TubeSample2 {
                    d,
                    proj: foot + rel * (c.cap_radius / gap),
                    kappa,
                }))
            }
            Boundary::Sphere { .. } => panic!("tube_eval2 called on a 3D boundary"),
        }
    }

    /// 3D analogue of `tube_eval2`.
    pub fn tube_eval3(&self, q: V3, eps: f64) -> Result<Option<TubeSample3>> {
        match self {
            Boundary::Sphere { center, radius } => {
                let rel = q - *center;
                let r = rel.norm();
                let d = r - radius;
                if d.abs() > eps || r < MEDIAL_TOL {
                    return Ok(None);
                }
                Ok(Some(TubeSample3 {
                    d,
                    proj: *center + rel * (radius / r),
                    k1: 1.0 / radius,
                    k2: 1.0 / radius,
                }))
            }
            _ => panic!("tube_eval3 called on a 2D boundary"),
        }
    }
}

/// `1 / (1 + eta * kappa)`: the reciprocal of the length stretch from the
/// boundary to the level set at offset `eta`, per principal direction.
#[inline]
pub fn jacobian_factor(eta: f64, kappa: f64) -> Result<f64> {
    let denom = 1.0 + eta * kappa;
    if denom <= 0.0 {
        return Err(Error::FocalPointReached { eta, kappa });
    }
    Ok(1.0 / denom)
}

impl Segment {
    /// `(t, d)`: normalized spine coordinate of the perpendicular foot
    /// (unclamped) and the signed offset along the fixed normal.
    #[inline]
    fn foot(&self, p: V2) -> (f64, f64) {
        let rel = p - self.a;
        (rel.dot(self.dir) / self.len, rel.dot(self.normal))
    }

    pub fn endpoints(&self) -> (V2, V2) {
        (self.a, self.b)
    }

    pub fn len(&self) -> f64 {
        self.len
    }
}

impl Semicircle {
    pub fn center(&self) -> V2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl Capsule {
    /// Closest point on the spine segment together with the unclamped
    /// normalized spine coordinate.
    #[inline]
    fn spine_foot(&self, p: V2) -> (f64, V2) {
        let t = (p - self.a).dot(self.dir) / self.len;
        let tc = t.clamp(0.0, 1.0);
        (t, self.a + self.dir * (tc * self.len))
    }

    pub fn cap_radius(&self) -> f64 {
        self.cap_radius
    }

    pub fn spine(&self) -> (V2, V2) {
        (self.a, self.b)
    }
}

fn polar_signed_distance<P: PolarProfile>(p: &P, q: V2, m: &PolarMetrics) -> Result<f64> {
    let rel = q - p.center();
    let r = rel.norm();
    if r < MEDIAL_TOL {
        return Err(Error::NonUniqueProjection);
    }
    let t = polar_project(p, q, m)?;
    let dist = (polar::point(p, t) - q).norm();
    // the curve is star-shaped about its center, so the radial comparison
    // decides inside/outside
    if r < p.rho(rel.angle()) {
        Ok(-dist)
    } else {
        Ok(dist)
    }
}

fn polar_project<P: PolarProfile>(p: &P, q: V2, m: &PolarMetrics) -> Result<f64> {
    let rel = q - p.center();
    let r = rel.norm();
    if r < MEDIAL_TOL {
        return Err(Error::NonUniqueProjection);
    }
    let gap = (r - p.rho(rel.angle())).abs();
    if gap <= 0.5 * m.reach {
        polar::project_in_tube(p, q)
    } else {
        polar::project_multistart(p, q)
    }
}

fn polar_tube_eval<P: PolarProfile>(
    p: &P,
    q: V2,
    eps: f64,
    m: &PolarMetrics,
) -> Result<Option<TubeSample2>> {
    if polar::outside_tube_prefilter(p, q, eps, m) {
        return Ok(None);
    }
    let t = polar::project_in_tube(p, q)?;
    let proj = polar::point(p, t);
    let dist = (proj - q).norm();
    if dist > eps {
        return Ok(None);
    }
    let rel = q - p.center();
    let d = if rel.norm() < p.rho(rel.angle()) {
        -dist
    } else {
        dist
    };
    Ok(Some(TubeSample2 {
        d,
        proj,
        kappa: polar::curvature(p, t),
    }))
}
