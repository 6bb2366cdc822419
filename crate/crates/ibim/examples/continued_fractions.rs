//! Continued fractions and the lattice-count discrepancy bound.
//!
//! The segment quadrature rates rest on a counting argument: the number
//! of lattice points in a thin rotated rectangle deviates from
//! area / h^2 by at most a bound built from the continued fraction of the
//! rectangle's slope. This example prints the expansions of the two
//! quadratic irrationals used in the studies and then verifies the bound
//! against brute-force counts on a thin band.
//!
//! ```sh
//! cargo run --release --example continued_fractions
//! ```

use ibim::math::{v2, V2};
use ibim::numbertheory::{continued_fraction, discrepancy_bound, is_badly_approximable};

fn brute_count(polygon: &[V2], h: f64) -> i64 {
    let scaled: Vec<V2> = polygon.iter().map(|p| *p * (1.0 / h)).collect();
    let xs: Vec<f64> = scaled.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = scaled.iter().map(|p| p.y).collect();
    let mut count = 0;
    for i in xs.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i64
        ..=xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64
    {
        for j in ys.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i64
            ..=ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64
        {
            let p = v2(i as f64, j as f64);
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

fn main() {
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    for (name, x) in [
        ("sqrt2", std::f64::consts::SQRT_2),
        ("golden", golden),
        ("pi", std::f64::consts::PI),
    ] {
        let cf = continued_fraction(x, 12);
        let terms: Vec<String> = cf.terms.iter().map(|t| t.to_string()).collect();
        println!(
            "{name:<7} = [{}; {}]  badly approximable (terms <= 2): {}",
            terms[0],
            terms[1..].join(", "),
            is_badly_approximable(&cf, 2)
        );
        let (p, q) = *cf.convergents.last().unwrap();
        println!("        last convergent {p}/{q}, error {:.2e}", (x - p as f64 / q as f64).abs());
    }

    // thin band of width 2 eps around a unit segment of slope sqrt2
    println!("\nlattice counts in a thin band of slope sqrt2:");
    let dir = v2(1.0, std::f64::consts::SQRT_2).normalize();
    let perp = dir.perp() * 0.05;
    let origin = v2(0.02, -0.013);
    let rect = [origin - perp, origin + dir - perp, origin + dir + perp, origin + perp];
    let area = 2.0 * 0.05;
    for h in [0.05, 0.02, 0.01, 0.005] {
        let bound = discrepancy_bound(&rect, h).unwrap();
        let count = brute_count(&rect, h);
        let discrepancy = (count as f64 - area / (h * h)).abs();
        println!("  h = {h:<6} count = {count:<6} |count - area/h^2| = {discrepancy:<8.2} bound = {bound:.2}");
    }
}
