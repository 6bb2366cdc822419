//! Convergence of the lattice quadrature on a circle.
//!
//! Sweeps `h` under one frozen random lattice frame for every weight and
//! tube-width rule, prints the fitted log-log slope, and shows the decay
//! the rates table predicts: `h^((q+1)(1-alpha))` up to the `h^(1/2)`
//! floor of a single realization.
//!
//! ```sh
//! cargo run --release --example circle_convergence
//! ```

use ibim::experiments::{convergence_study, log_spaced_h, Alpha, StudyConfig};
use ibim::reference::canonical_shape;
use ibim::{Integrand, WeightKind};

fn main() {
    let circle = canonical_shape("circle").unwrap();
    println!("{:<6} {:>7} {:>8} {:>8}", "weight", "alpha", "slope", "rms");
    for weight in [WeightKind::Hat, WeightKind::Cos, WeightKind::Char] {
        for alpha in [Alpha::One, Alpha::Half, Alpha::Zero] {
            let mut cfg = StudyConfig::new(
                "circle_convergence",
                "circle",
                circle.clone(),
                Integrand::Trig2d,
                weight,
                alpha,
                log_spaced_h(5.0, 12.0, 29),
            );
            cfg.seed = 4;
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
