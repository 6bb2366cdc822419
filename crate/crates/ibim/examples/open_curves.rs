//! Variance studies on boundaries with endpoints: segment, semicircle,
//! capsule.
//!
//! Open curves lose the periodic cancellation a closed tube enjoys; the
//! band edges and endpoints dominate the error and the variance decays
//! like `h^(3-alpha)` (straight segment) or `h^(3-2 alpha)` (curved
//! pieces and piecewise-smooth collections, as an upper bound).
//!
//! ```sh
//! cargo run --release --example open_curves
//! ```

use ibim::experiments::{log_spaced_h, variance_study, Alpha, StudyConfig};
use ibim::reference::canonical_shape;
use ibim::{Integrand, TransformMode, WeightKind};

fn main() {
    let cases: [(&str, WeightKind, Integrand, u32); 3] = [
        ("segment", WeightKind::Cos, Integrand::One, 32),
        ("semicircle", WeightKind::Cos, Integrand::Trig2d, 64),
        ("capsule", WeightKind::Hat, Integrand::Trig2d, 32),
    ];
    println!("{:<10} {:<6} {:>7} {:>8}", "shape", "weight", "alpha", "slope");
    for (shape_id, weight, integrand, samples) in cases {
        let boundary = canonical_shape(shape_id).unwrap();
        for alpha in [Alpha::One, Alpha::Half, Alpha::Zero] {
            // the capsule's cap radius caps the tube width at alpha=1/2
            let h_list = match (shape_id, alpha) {
                ("capsule", Alpha::Half) => log_spaced_h(7.0, 11.0, 9),
                ("capsule", _) => log_spaced_h(5.0, 10.0, 9),
                (_, _) => log_spaced_h(5.0, 10.0, 11),
            };
            let mut cfg = StudyConfig::new(
                "open_curves",
                shape_id,
                boundary.clone(),
                integrand,
                weight,
                alpha,
                h_list,
            );
            cfg.samples = samples;
            cfg.transform = TransformMode::ShiftAndRotation;
            let fit = variance_study(&cfg).expect("study failed");
            println!(
                "{:<10} {:<6} {:>7} {:>8.3}",
                shape_id,
                weight.name(),
                alpha.value(),
                fit.slope
            );
        }
    }
}
