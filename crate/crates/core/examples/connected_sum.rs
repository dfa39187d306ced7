//! Khovanov homology of a connected sum is the graded tensor product of the
//! summands' homology; the determinant is multiplicative.
//!
//! ```text
//! cargo run --release --example connected_sum
//! ```

use khpages::diagram::{braid_to_diagram, connected_sum, parse_braid, to_pd_json};
use khpages::doublecover::determinant;
use khpages::khovanov::kh_homology;
use khpages::pagesolver::tensor_pages;

fn main() -> khpages::Result<()> {
    let trefoil = braid_to_diagram(&parse_braid("s=2; w=1,1,1")?);
    let figure_eight = braid_to_diagram(&parse_braid("s=3; w=1,-2,1,-2")?);
    for (name, a, b) in [("granny", &trefoil, &trefoil), ("trefoil # figure eight", &trefoil, &figure_eight)] {
        let sum = connected_sum(a, b);
        let kh = kh_homology(&sum);
        let product = tensor_pages(&kh_homology(a), &kh_homology(b));
        println!("{name}: {} crossings", sum.crossing_count());
        println!("  PD          {}", to_pd_json(&sum));
        println!("  Kh(sum)     {}", kh.poincare());
        println!("  Kh ⊗ Kh     {}", product.poincare());
        println!("  det         {} = {} x {}", determinant(&sum)?, determinant(a)?, determinant(b)?);
        assert_eq!(kh, product);
    }
    Ok(())
}
