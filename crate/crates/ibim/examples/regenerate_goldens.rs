//! Recomputes the frozen reference integrals and prints the golden file.
//!
//! Every value is computed twice (adaptive Gauss-Legendre and adaptive
//! Simpson on the same exact parametrizations) and only accepted when the
//! two agree. Redirect stdout to `crates/ibim/data/golden.txt` to refresh
//! the values shipped with the crate:
//!
//! ```sh
//! cargo run --example regenerate_goldens > crates/ibim/data/golden.txt
//! ```

use ibim::reference::{compute_goldens, format_goldens};

fn main() {
    let values = compute_goldens().expect("dual-method reference computation failed");
    print!("{}", format_goldens(&values));
}
