//! Variance under random rotations and shifts on non-circular curves.
//!
//! On a curve whose curvature is not constant, rotating the lattice as
//! well as shifting it averages the quadrature over boundary orientations
//! and recovers the convex-curve variance rates `h^(1+2(q+1)(1-alpha))`.
//! This example runs the quartic curve `x^4 + y^4 = r^4` and the
//! three-petal star with the triangle weight, 32 frames per `h`.
//!
//! ```sh
//! cargo run --release --example rotation_variance
//! ```

use ibim::experiments::{log_spaced_h, variance_study, Alpha, StudyConfig};
use ibim::reference::canonical_shape;
use ibim::{Integrand, TransformMode, WeightKind};

fn main() {
    println!("{:<8} {:>7} {:>8}", "shape", "alpha", "slope");
    for shape_id in ["quartic", "star"] {
        let boundary = canonical_shape(shape_id).unwrap();
        for alpha in [Alpha::One, Alpha::Half, Alpha::Zero] {
            // the star's reach forces a finer coarse end when the tube
            // width is 2 sqrt(h)
            let h_list = match (shape_id, alpha) {
                (_, Alpha::Half) => log_spaced_h(6.5, 10.0, 8),
                (_, _) => log_spaced_h(5.0, 9.5, 10),
            };
            let mut cfg = StudyConfig::new(
                "rotation_variance",
                shape_id,
                boundary.clone(),
                Integrand::Trig2d,
                WeightKind::Hat,
                alpha,
                h_list,
            );
            cfg.samples = 32;
            cfg.transform = TransformMode::ShiftAndRotation;
            let fit = variance_study(&cfg).expect("study failed");
            println!("{:<8} {:>7} {:>8.3}", shape_id, alpha.value(), fit.slope);
        }
    }
}
