//! Reduced Khovanov homology of the torus knots T(3,4) and T(3,5), with
//! their δ-support and graded Euler characteristic.
//!
//! ```text
//! cargo run --release --example kh_torus_knots
//! ```

use std::time::Instant;

use khpages::diagram::{braid_to_diagram, parse_braid};
use khpages::khovanov::{build_reduced_complex, cube_homology, delta_support, graded_euler_characteristic};

fn main() -> khpages::Result<()> {
    for (name, word) in [("T(3,4)", "s=3; w=1,2,1,2,1,2,1,2"), ("T(3,5)", "s=3; w=1,2,1,2,1,2,1,2,1,2")] {
        let start = Instant::now();
        let d = braid_to_diagram(&parse_braid(word)?);
        let cube = build_reduced_complex(&d);
        let kh = cube_homology(&cube);
        let delta = delta_support(&kh);
        let deltas: Vec<String> = delta.values.iter().map(|v| v.to_string()).collect();
        println!("{name}: {} generators, {:?}", cube.len(), start.elapsed());
        println!("  Kh     = {}", kh.poincare());
        println!("  δ      = {{{}}}, width {}", deltas.join(", "), delta.width);
        println!("  V(q)   = {}", graded_euler_characteristic(&cube));
    }
    Ok(())
}
