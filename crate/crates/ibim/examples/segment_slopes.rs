//! Segment quadrature error as a function of the segment's slope.
//!
//! A straight segment aligned with the lattice at a rational slope traps
//! every lattice column in the same phase of the weight: the quadrature
//! error stalls at O(1) no matter how fine the grid. Quadratically
//! irrational slopes (continued fraction with bounded terms) instead
//! equidistribute the phases and the error envelope decays like
//! `h^(2-alpha)`.
//!
//! ```sh
//! cargo run --release --example segment_slopes
//! ```

use ibim::experiments::{
    log_spaced_h, segment_error_study, segment_with_slope, Alpha, StudyConfig,
};
use ibim::{
    ibim_integrate, Integrand, JacobianMode, LatticeFrame, WeightFunction, WeightKind,
};

fn main() {
    // irrational slopes: envelope fit of the error cloud
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    println!("{:<8} {:>7} {:>8}", "slope", "alpha", "envelope");
    for (name, gamma) in [("sqrt2", std::f64::consts::SQRT_2), ("golden", golden)] {
        for alpha in [Alpha::One, Alpha::Half, Alpha::Zero] {
            let cfg = StudyConfig::new(
                "segment_slopes",
                "segment",
                segment_with_slope(gamma),
                Integrand::One,
                WeightKind::Cos,
                alpha,
                log_spaced_h(4.0, 12.0, 120),
            );
            let fit = segment_error_study(gamma, &cfg).expect("study failed");
            println!("{:<8} {:>7} {:>8.3}", name, alpha.value(), fit.slope);
        }
    }

    // rational slope 1 on the unshifted lattice: the error does not decay
    println!("\nslope 1, unshifted lattice, eps = 1.5 h:");
    let seg = segment_with_slope(1.0);
    for k in [4, 6, 8, 10, 12] {
        let h = (2.0f64).powi(-k);
        let frame = LatticeFrame::identity(h, 2);
        let w = WeightFunction::new(WeightKind::Cos, 1.5 * h).unwrap();
        let r = ibim_integrate(&seg, &Integrand::One, &w, &frame, JacobianMode::Exact).unwrap();
        println!("  h = 2^-{k:<2}  error = {:.3e}", (r.value - 1.0).abs());
    }
}
