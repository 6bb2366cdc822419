//! Convergence of the lattice quadrature on a sphere.
//!
//! The 3D analogue of `circle_convergence`: on a strongly convex surface
//! the single-realization error decays like `h^(1+(q+1)(1-alpha))`, one
//! power of `h` faster per regularity order than the worst case.
//!
//! ```sh
//! cargo run --release --example sphere_convergence
//! ```

use ibim::experiments::{convergence_study, log_spaced_h, Alpha, StudyConfig};
use ibim::reference::canonical_shape;
use ibim::{Integrand, WeightKind};

fn main() {
    let sphere = canonical_shape("sphere").unwrap();
    println!("{:<6} {:>7} {:>8} {:>8}", "weight", "alpha", "slope", "rms");
    for weight in [WeightKind::Hat, WeightKind::Cos] {
        for alpha in [Alpha::One, Alpha::Half, Alpha::Zero] {
            let cfg = StudyConfig::new(
                "sphere_convergence",
                "sphere",
                sphere.clone(),
                Integrand::Trig3d,
                weight,
                alpha,
                log_spaced_h(3.0, 8.0, 16),
            );
            let fit = convergence_study(&cfg).expect("study failed");
            println!(
                "{:<6} {:>7} {:>8.3} {:>8.3}",
                weight.name(),
                alpha.value(),
                fit.slope,
                fit.residual_rms
            );
        }
    }
}
