//! Convergence and variance studies with log-log rate fitting.
//!
//! A study sweeps a decreasing list of grid spacings `h`, evaluates the
//! lattice quadrature under one fixed frame (convergence) or `N` random
//! frames (variance), and fits a slope to `log2(error)` or
//! `log2(variance)` against `log2(h)` by ordinary least squares. Segment
//! error studies fit the upper envelope instead, because the pointwise
//! error fluctuates by orders of magnitude between nearby `h`.

use crate::error::{Error, Result};
use crate::geometry::{Boundary, JacobianMode};
use crate::lattice::{sample_frame, LatticeFrame, TransformMode};
use crate::math::v2;
use crate::quadrature::{ibim_integrate, Integrand};
use crate::reference::reference_integral;
use crate::summation::Kahan;
use crate::weights::{WeightFunction, WeightKind};
use serde::{Deserialize, Serialize};

/// Tube-width rule exponent: `eps = 0.1` (alpha = 0), `2 sqrt(h)`
/// (alpha = 1/2) or `2 h` (alpha = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alpha {
    Zero,
    Half,
    One,
}

impl Alpha {
    pub fn epsilon(self, h: f64) -> f64 {
        match self {
            Alpha::Zero => 0.1,
            Alpha::Half => 2.0 * h.sqrt(),
            Alpha::One => 2.0 * h,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Alpha::Zero => 0.0,
            Alpha::Half => 0.5,
            Alpha::One => 1.0,
        }
    }

    pub fn from_value(v: f64) -> Option<Alpha> {
        if v == 0.0 {
            Some(Alpha::Zero)
        } else if v == 0.5 {
            Some(Alpha::Half)
        } else if v == 1.0 {
            Some(Alpha::One)
        } else {
            None
        }
    }
}

/// Jacobian evaluation strategy; the laplacian variant derives its
/// finite-difference step from `h` as `max(1e-5, h/10)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianChoice {
    Exact,
    Unity,
    Laplacian,
}

impl JacobianChoice {
    pub fn mode_at(self, h: f64) -> JacobianMode {
        match self {
            JacobianChoice::Exact => JacobianMode::Exact,
            JacobianChoice::Unity => JacobianMode::Unity,
            JacobianChoice::Laplacian => JacobianMode::Laplacian {
                step: (1e-5f64).max(h / 10.0),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub study_id: String,
    pub shape_id: String,
    pub boundary: Boundary,
    pub integrand: Integrand,
    pub weight: WeightKind,
    pub alpha: Alpha,
    pub h_list: Vec<f64>,
    pub jacobian: JacobianChoice,
    /// Number of random frames per `h` (variance studies).
    pub samples: u32,
    pub transform: TransformMode,
    pub seed: u64,
    /// When set, overrides the random shift with a fixed one (used by the
    /// rational-slope degeneracy study).
    pub fixed_shift: Option<[f64; 3]>,
    /// Envelope bin width in octaves of `h` for segment error studies.
    pub envelope_bin_octaves: f64,
}

impl StudyConfig {
    pub fn new(
        study_id: &str,
        shape_id: &str,
        boundary: Boundary,
        integrand: Integrand,
        weight: WeightKind,
        alpha: Alpha,
        h_list: Vec<f64>,
    ) -> StudyConfig {
        StudyConfig {
            study_id: study_id.to_string(),
            shape_id: shape_id.to_string(),
            boundary,
            integrand,
            weight,
            alpha,
            h_list,
            jacobian: JacobianChoice::Exact,
            samples: 32,
            transform: TransformMode::ShiftOnly,
            seed: 0,
            fixed_shift: None,
            envelope_bin_octaves: 1.0,
        }
    }

    /// Checks every invariant a study relies on; call before running.
    pub fn validate(&self) -> Result<()> {
        if self.h_list.len() < 4 {
            return Err(Error::InvalidConfig(format!(
                "h list needs at least 4 entries for a rate fit, got {}",
                self.h_list.len()
            )));
        }
        if !self.h_list.windows(2).all(|w| w[1] < w[0]) {
            return Err(Error::InvalidConfig(
                "h list must be strictly decreasing".into(),
            ));
        }
        let reach = self.boundary.reach();
        for &h in &self.h_list {
            if !(h > 0.0) {
                return Err(Error::InvalidConfig(format!("invalid spacing h = {h}")));
            }
            let eps = self.alpha.epsilon(h);
            if eps >= reach {
                return Err(Error::WidthExceedsReach {
                    epsilon: eps,
                    reach,
                });
            }
        }
        if self.transform == TransformMode::ShiftAndRotation && self.boundary.dim() == 3 {
            return Err(Error::RotationUnsupported);
        }
        if !(self.envelope_bin_octaves > 0.0) {
            return Err(Error::InvalidConfig(
                "envelope bin width must be positive".into(),
            ));
        }
        Ok(())
    }

    fn weight_at(&self, h: f64) -> Result<WeightFunction> {
        WeightFunction::new(self.weight, self.alpha.epsilon(h))
    }

    fn frame_at(&self, h: f64, sample_index: u64) -> Result<LatticeFrame> {
        let mut frame = sample_frame(
            self.seed,
            sample_index,
            h,
            self.boundary.dim(),
            self.transform,
        )?;
        if let Some(shift) = self.fixed_shift {
            frame.shift = shift;
            frame.rotation = 0.0;
        }
        Ok(frame)
    }
}

/// One CSV data row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataRow {
    pub h: f64,
    pub epsilon: f64,
    /// `None` for the fixed-frame convergence rows.
    pub sample_index: Option<u32>,
    pub value: f64,
    pub error: f64,
    /// Per-`h` variance (variance studies only), repeated on each sample
    /// row of that `h`.
    pub variance: Option<f64>,
    pub point_count: usize,
}

/// Least-squares fit of a log-log rate together with its data.
#[derive(Debug, Clone)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    /// Number of points entering the fit.
    pub n_points: usize,
    pub rows: Vec<DataRow>,
}

/// Ordinary least squares of `y` against `x`.
fn ols(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let ss: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

fn fit_from(points: &[(f64, f64)], rows: Vec<DataRow>) -> RateFit {
    let (slope, intercept, residual_rms) = ols(points);
    RateFit {
        slope,
        intercept,
        residual_rms,
        n_points: points.len(),
        rows,
    }
}

/// Error decay under one fixed random frame held across all `h`.
pub fn convergence_study(cfg: &StudyConfig) -> Result<RateFit> {
    cfg.validate()?;
    let reference = reference_integral(&cfg.boundary, &cfg.integrand)?;
    // one draw, reused at every h
    let proto = cfg.frame_at(cfg.h_list[0], 0)?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &h in &cfg.h_list {
        let frame = LatticeFrame { h, ..proto };
        let w = cfg.weight_at(h)?;
        let r = ibim_integrate(
            &cfg.boundary,
            &cfg.integrand,
            &w,
            &frame,
            cfg.jacobian.mode_at(h),
        )?;
        let error = (r.value - reference).abs();
        rows.push(DataRow {
            h,
            epsilon: w.epsilon(),
            sample_index: None,
            value: r.value,
            error,
            variance: None,
            point_count: r.point_count,
        });
        points.push((h.log2(), error.log2()));
    }
    Ok(fit_from(&points, rows))
}

/// Variance of the quadrature value over `N` independent random frames,
/// computed about the true integral `I(f)`.
pub fn variance_study(cfg: &StudyConfig) -> Result<RateFit> {
    cfg.validate()?;
    if cfg.samples == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    let reference = reference_integral(&cfg.boundary, &cfg.integrand)?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &h in &cfg.h_list {
        let w = cfg.weight_at(h)?;
        let mut sample_rows = Vec::with_capacity(cfg.samples as usize);
        let mut sq = Kahan::new();
        for i in 0..cfg.samples {
            let frame = cfg.frame_at(h, i as u64)?;
            let r = ibim_integrate(
                &cfg.boundary,
                &cfg.integrand,
                &w,
                &frame,
                cfg.jacobian.mode_at(h),
            )?;
            let dev = r.value - reference;
            sq.add(dev * dev);
            sample_rows.push(DataRow {
                h,
                epsilon: w.epsilon(),
                sample_index: Some(i),
                value: r.value,
                error: dev.abs(),
                variance: None,
                point_count: r.point_count,
            });
        }
        let variance = sq.value() / cfg.samples as f64;
        for row in &mut sample_rows {
            row.variance = Some(variance);
        }
        rows.extend(sample_rows);
        points.push((h.log2(), variance.log2()));
    }
    Ok(fit_from(&points, rows))
}

/// Builds the unit segment from the origin along slope `gamma`.
pub fn segment_with_slope(gamma: f64) -> Boundary {
    let len = (1.0 + gamma * gamma).sqrt();
    Boundary::segment(v2(0.0, 0.0), v2(1.0 / len, gamma / len))
}

/// Quadrature error of a slanted segment over a dense `h` sweep, fitted
/// on the per-bin upper envelope of the log-log cloud.
pub fn segment_error_study(gamma: f64, cfg: &StudyConfig) -> Result<RateFit> {
    let cfg = StudyConfig {
        boundary: segment_with_slope(gamma),
        ..cfg.clone()
    };
    cfg.validate()?;
    let reference = reference_integral(&cfg.boundary, &cfg.integrand)?;
    let proto = cfg.frame_at(cfg.h_list[0], 0)?;
    let mut rows = Vec::new();
    for &h in &cfg.h_list {
        let frame = LatticeFrame { h, ..proto };
        let w = cfg.weight_at(h)?;
        let r = ibim_integrate(
            &cfg.boundary,
            &cfg.integrand,
            &w,
            &frame,
            cfg.jacobian.mode_at(h),
        )?;
        rows.push(DataRow {
            h,
            epsilon: w.epsilon(),
            sample_index: None,
            value: r.value,
            error: (r.value - reference).abs(),
            variance: None,
            point_count: r.point_count,
        });
    }
    let envelope = upper_envelope(&rows, cfg.envelope_bin_octaves);
    Ok(fit_from(&envelope, rows))
}

/// Per-bin maxima of `log2(error)` over bins of `log2(h)`.
fn upper_envelope(rows: &[DataRow], bin_octaves: f64) -> Vec<(f64, f64)> {
    let mut bins: std::collections::BTreeMap<i64, (f64, f64)> = Default::default();
    for row in rows {
        if row.error <= 0.0 {
            continue;
        }
        let x = row.h.log2();
        let key = (x / bin_octaves).floor() as i64;
        let y = row.error.log2();
        bins.entry(key)
            .and_modify(|e| {
                if y > e.1 {
                    *e = (x, y);
                }
            })
            .or_insert((x, y));
    }
    bins.into_values().collect()
}

/// Dyadic spacings `2^-lo ... 2^-hi` (inclusive, decreasing).
pub fn dyadic_h(lo: u32, hi: u32) -> Vec<f64> {
    (lo..=hi).map(|k| (2.0f64).powi(-(k as i32))).collect()
}

/// `count` log-uniform spacings from `2^-lo` down to `2^-hi`.
pub fn log_spaced_h(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            (2.0f64).powf(-(lo + t * (hi - lo)))
        })
        .collect()
}

/// JSON summary record for a fitted study.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StudySummary {
    pub study_id: String,
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub n_points: usize,
}

impl StudySummary {
    pub fn new(study_id: &str, fit: &RateFit) -> StudySummary {
        StudySummary {
            study_id: study_id.to_string(),
            slope: fit.slope,
            intercept: fit.intercept,
            residual_rms: fit.residual_rms,
            n_points: fit.n_points,
        }
    }
}

pub const CSV_HEADER: &str =
    "study_id,shape,weight,alpha,h,epsilon,sample_index,value,error,variance,point_count";

/// Renders a study's rows in the stable CSV schema; all numeric fields
/// are written with 17 significant digits so they round-trip exactly.
pub fn csv_string(cfg: &StudyConfig, fit: &RateFit) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &fit.rows {
        let sample = row
            .sample_index
            .map(|i| i.to_string())
            .unwrap_or_else(|| "fixed".to_string());
        let variance = row
            .variance
            .map(|v| format!("{v:.16e}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.16e},{:.16e},{},{:.16e},{:.16e},{},{}\n",
            cfg.study_id,
            cfg.shape_id,
            cfg.weight.name(),
            cfg.alpha.value(),
            row.h,
            row.epsilon,
            sample,
            row.value,
            row.error,
            variance,
            row.point_count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::canonical_shape;

    fn circle_cfg() -> StudyConfig {
        StudyConfig::new(
            "t",
            "circle",
            canonical_shape("circle").unwrap(),
            Integrand::One,
            WeightKind::Hat,
            Alpha::One,
            dyadic_h(5, 8),
        )
    }

    #[test]
    fn ols_recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (0..6).map(|i| (i as f64, 3.0 - 2.5 * i as f64)).collect();
        let (slope, intercept, rms) = ols(&pts);
        assert!((slope + 2.5).abs() < 1e-12);
        assert!((intercept - 3.0).abs() < 1e-12);
        assert!(rms < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_h_lists() {
        let mut cfg = circle_cfg();
        cfg.h_list = vec![0.1, 0.05, 0.025];
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        cfg.h_list = vec![0.1, 0.1, 0.05, 0.025];
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn validation_rejects_wide_tubes() {
        let mut cfg = circle_cfg();
        // alpha = 1/2 at h = 2^-2: eps = 1 > reach
        cfg.alpha = Alpha::Half;
        cfg.h_list = vec![0.25, 0.125, 0.0625, 0.03125];
        assert!(matches!(
            cfg.validate(),
            Err(Error::WidthExceedsReach { .. })
        ));
    }

    #[test]
    fn convergence_study_is_deterministic() {
        let cfg = circle_cfg();
        let a = convergence_study(&cfg).unwrap();
        let b = convergence_study(&cfg).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.slope.to_bits(), b.slope.to_bits());
    }

    #[test]
    fn variance_matches_two_pass_computation() {
        let mut cfg = circle_cfg();
        cfg.samples = 8;
        let fit = variance_study(&cfg).unwrap();
        let reference = reference_integral(&cfg.boundary, &cfg.integrand).unwrap();
        for &h in &cfg.h_list {
            let values: Vec<f64> = fit
                .rows
                .iter()
                .filter(|r| r.h == h)
                .map(|r| r.value)
                .collect();
            assert_eq!(values.len(), 8);
            let brute: f64 = values
                .iter()
                .map(|v| (v - reference).powi(2))
                .sum::<f64>()
                / values.len() as f64;
            let reported = fit
                .rows
                .iter()
                .find(|r| r.h == h)
                .unwrap()
                .variance
                .unwrap();
            assert!(
                (reported - brute).abs() <= 1e-14 * brute.abs().max(1e-300),
                "h={h}: {reported} vs {brute}"
            );
        }
    }

    #[test]
    fn csv_rows_round_trip_at_full_precision() {
        let mut cfg = circle_cfg();
        cfg.samples = 2;
        let fit = variance_study(&cfg).unwrap();
        let csv = csv_string(&cfg, &fit);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for (line, row) in lines.zip(&fit.rows) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 11);
            assert_eq!(cols[4].parse::<f64>().unwrap(), row.h);
            assert_eq!(cols[7].parse::<f64>().unwrap(), row.value);
            assert_eq!(cols[8].parse::<f64>().unwrap(), row.error);
            assert_eq!(cols[9].parse::<f64>().unwrap(), row.variance.unwrap());
        }
    }

    #[test]
    fn envelope_takes_per_bin_maxima() {
        let mk = |h: f64, e: f64| DataRow {
            h,
            epsilon: 0.1,
            sample_index: None,
            value: 0.0,
            error: e,
            variance: None,
            point_count: 1,
        };
        let rows = vec![
            mk(0.4, 1e-2),
            mk(0.3, 3e-2),
            mk(0.2, 2e-3),
            mk(0.1, 8e-3),
            mk(0.05, 1e-4),
        ];
        let env = upper_envelope(&rows, 1.0);
        // bins: [0.5,0.25): max 3e-2; [0.25,0.125): 2e-3 ... per octave
        assert!(env.len() >= 3);
        let ys: Vec<f64> = env.iter().map(|p| p.1).collect();
        assert!(ys.contains(&(3e-2f64).log2()));
    }

    #[test]
    fn h_helpers() {
        let hs = dyadic_h(5, 8);
        assert_eq!(hs, vec![0.03125, 0.015625, 0.0078125, 0.00390625]);
        let ls = log_spaced_h(5.0, 8.0, 7);
        assert_eq!(ls.len(), 7);
        assert!((ls[0] - 0.03125).abs() < 1e-15);
        assert!((ls[6] - 0.00390625).abs() < 1e-15);
        assert!(ls.windows(2).all(|w| w[1] < w[0]));
    }
}
