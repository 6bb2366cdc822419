//! TOML experiment configuration: one `[[study]]` table per study.
//!
//! ```toml
//! [[study]]
//! id = "circle_hat_alpha_half"
//! kind = "convergence"            # convergence | variance | segment_error
//! shape = "circle"                # canonical id, or an inline table
//! integrand = "one"
//! weight = "hat"                  # cos | hat | char
//! alpha = 0.5                     # 0 | 0.5 | 1
//! h = { dyadic = [5, 12] }        # or an explicit list, or { log = [lo, hi], count = n }
//! samples = 32
//! transform = "shift_only"        # shift_only | shift_and_rotation
//! jacobian = "exact"              # exact | unity | laplacian
//! seed = 0
//! ```
//!
//! Inline shape tables carry a `kind` tag plus numeric parameters, e.g.
//! `shape = { kind = "star", center = [0.0, 0.0], radius = 0.75,
//! amplitude = 0.2, lobes = 3 }`.

use crate::error::{Error, Result};
use crate::experiments::{
    convergence_study, dyadic_h, log_spaced_h, segment_error_study, variance_study, Alpha,
    JacobianChoice, RateFit, StudyConfig,
};
use crate::geometry::Boundary;
use crate::lattice::TransformMode;
use crate::math::{v2, v3};
use crate::reference::{canonical_integrand, canonical_shape};
use crate::weights::WeightKind;
use serde::Deserialize;

/// What a study measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    /// Error decay under one fixed frame.
    Convergence,
    /// Variance of the value over random frames.
    Variance,
    /// Upper-envelope error decay of a slanted segment.
    SegmentError,
}

/// Shape field: either a canonical id or an inline parameter table.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ShapeSpec {
    Id(String),
    Inline(InlineShape),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InlineShape {
    Circle { center: [f64; 2], radius: f64 },
    Sphere { center: [f64; 3], radius: f64 },
    Quartic { center: [f64; 2], radius: f64 },
    Star {
        center: [f64; 2],
        radius: f64,
        amplitude: f64,
        lobes: u32,
    },
    Segment { a: [f64; 2], b: [f64; 2] },
    Semicircle { center: [f64; 2], radius: f64 },
    Capsule {
        a: [f64; 2],
        b: [f64; 2],
        radius: f64,
    },
}

impl InlineShape {
    fn build(&self) -> Boundary {
        match *self {
            InlineShape::Circle { center: [x, y], radius } => Boundary::circle(v2(x, y), radius),
            InlineShape::Sphere {
                center: [x, y, z],
                radius,
            } => Boundary::sphere(v3(x, y, z), radius),
            InlineShape::Quartic { center: [x, y], radius } => Boundary::quartic(v2(x, y), radius),
            InlineShape::Star {
                center: [x, y],
                radius,
                amplitude,
                lobes,
            } => Boundary::star(v2(x, y), radius, amplitude, lobes),
            InlineShape::Segment { a, b } => Boundary::segment(v2(a[0], a[1]), v2(b[0], b[1])),
            InlineShape::Semicircle { center: [x, y], radius } => {
                Boundary::semicircle(v2(x, y), radius)
            }
            InlineShape::Capsule { a, b, radius } => {
                Boundary::capsule(v2(a[0], a[1]), v2(b[0], b[1]), radius)
            }
        }
    }

    fn id(&self) -> &'static str {
        match self {
            InlineShape::Circle { .. } => "circle",
            InlineShape::Sphere { .. } => "sphere",
            InlineShape::Quartic { .. } => "quartic",
            InlineShape::Star { .. } => "star",
            InlineShape::Segment { .. } => "segment",
            InlineShape::Semicircle { .. } => "semicircle",
            InlineShape::Capsule { .. } => "capsule",
        }
    }
}

/// Grid-spacing field: explicit list, dyadic range `2^-lo ... 2^-hi`, or
/// `count` log-uniform points between `2^-lo` and `2^-hi`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum HSpec {
    List(Vec<f64>),
    Dyadic { dyadic: [u32; 2] },
    Log { log: [f64; 2], count: usize },
}

impl HSpec {
    fn build(&self) -> Result<Vec<f64>> {
        match self {
            HSpec::List(hs) => Ok(hs.clone()),
            HSpec::Dyadic { dyadic: [lo, hi] } => {
                if lo >= hi {
                    return Err(Error::InvalidConfig(format!(
                        "h.dyadic: need lo < hi, got [{lo}, {hi}]"
                    )));
                }
                Ok(dyadic_h(*lo, *hi))
            }
            HSpec::Log { log: [lo, hi], count } => {
                if !(lo < hi) || *count < 2 {
                    return Err(Error::InvalidConfig(format!(
                        "h.log: need lo < hi and count >= 2, got [{lo}, {hi}] x {count}"
                    )));
                }
                Ok(log_spaced_h(*lo, *hi, *count))
            }
        }
    }
}

/// One `[[study]]` table.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyDecl {
    pub id: String,
    pub kind: StudyKind,
    pub shape: ShapeSpec,
    pub integrand: String,
    pub weight: WeightKind,
    pub alpha: f64,
    pub h: HSpec,
    #[serde(default = "default_samples")]
    pub samples: u32,
    #[serde(default = "default_transform")]
    pub transform: TransformMode,
    #[serde(default = "default_jacobian")]
    pub jacobian: JacobianChoice,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub fixed_shift: Option<[f64; 3]>,
    #[serde(default = "default_bin_octaves")]
    pub envelope_bin_octaves: f64,
    /// Segment slope `gamma` (segment_error studies only).
    #[serde(default)]
    pub slope: Option<f64>,
}

fn default_samples() -> u32 {
    32
}
fn default_transform() -> TransformMode {
    TransformMode::ShiftOnly
}
fn default_jacobian() -> JacobianChoice {
    JacobianChoice::Exact
}
fn default_bin_octaves() -> f64 {
    1.0
}

/// A whole config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "study")]
    pub studies: Vec<StudyDecl>,
}

impl StudyDecl {
    /// Lowers the declaration into a validated runtime config.
    pub fn build(&self) -> Result<StudyConfig> {
        let boundary = match &self.shape {
            ShapeSpec::Id(id) => canonical_shape(id)
                .ok_or_else(|| Error::InvalidConfig(format!("shape: unknown shape '{id}'")))?,
            ShapeSpec::Inline(s) => s.build(),
        };
        let shape_id = match &self.shape {
            ShapeSpec::Id(id) => id.clone(),
            ShapeSpec::Inline(s) => s.id().to_string(),
        };
        let integrand = canonical_integrand(&self.integrand).ok_or_else(|| {
            Error::InvalidConfig(format!("integrand: unknown integrand '{}'", self.integrand))
        })?;
        let alpha = Alpha::from_value(self.alpha).ok_or_else(|| {
            Error::InvalidConfig(format!("alpha: must be 0, 0.5 or 1, got {}", self.alpha))
        })?;
        if self.kind == StudyKind::Variance && self.samples == 0 {
            return Err(Error::InvalidConfig(
                "samples: must be positive for a variance study".into(),
            ));
        }
        if self.kind == StudyKind::SegmentError && self.slope.is_none() {
            return Err(Error::InvalidConfig(
                "slope: required for a segment_error study".into(),
            ));
        }
        let cfg = StudyConfig {
            study_id: self.id.clone(),
            shape_id,
            boundary,
            integrand,
            weight: self.weight,
            alpha,
            h_list: self.h.build()?,
            jacobian: self.jacobian,
            samples: self.samples,
            transform: self.transform,
            seed: self.seed,
            fixed_shift: self.fixed_shift,
            envelope_bin_octaves: self.envelope_bin_octaves,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds and runs the study.
    pub fn run(&self) -> Result<(StudyConfig, RateFit)> {
        let cfg = self.build()?;
        let fit = match self.kind {
            StudyKind::Convergence => convergence_study(&cfg)?,
            StudyKind::Variance => variance_study(&cfg)?,
            StudyKind::SegmentError => segment_error_study(self.slope.unwrap(), &cfg)?,
        };
        Ok((cfg, fit))
    }
}

/// Parses a config file, mapping TOML errors to `InvalidConfig` with the
/// offending location in the message.
pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let file: ConfigFile =
        toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("config parse: {e}")))?;
    if file.studies.is_empty() {
        return Err(Error::InvalidConfig("config declares no studies".into()));
    }
    Ok(file)
}
