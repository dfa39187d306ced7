//! Link determinants two ways: the Goeritz matrix of a checkerboard
//! coloring, and the Jones polynomial at q = i.
//!
//! ```text
//! cargo run --release --example determinant
//! ```

use khpages::diagram::{braid_to_diagram, parse_braid, parse_pd_json, PlanarDiagram};
use khpages::doublecover::{goeritz_matrix, jones_determinant_check};

fn main() -> khpages::Result<()> {
    let mut diagrams: Vec<(String, PlanarDiagram)> = Vec::new();
    for word in ["s=2; w=1,1,1", "s=3; w=1,-2,1,-2", "s=3; w=1,2,1,2,1,2,1,2", "s=3; w=1,2,1,2,1,2,1,2,1,2"] {
        diagrams.push((word.to_string(), braid_to_diagram(&parse_braid(word)?)));
    }
    let fig8 = r#"{"pd": [[4,2,5,1,"+"],[8,6,1,5,"+"],[6,3,7,4,"-"],[2,7,3,8,"-"]]}"#;
    diagrams.push(("figure eight (PD)".into(), parse_pd_json(fig8)?));

    for (name, d) in &diagrams {
        let g = goeritz_matrix(d)?;
        println!("{name}: Goeritz {:?}", g.entries);
        println!("  |det G| = {}, |V(i)| = {}", g.det().abs(), jones_determinant_check(d)?);
    }
    Ok(())
}
