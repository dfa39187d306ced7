//! The transverse invariant ψ on a few braids: its bigrading, its class in
//! Kh, and the vanishing-criterion report.
//!
//! ```text
//! cargo run --release --example psi_invariant
//! ```

use khpages::diagram::parse_braid;
use khpages::transverse::{fillability_report, psi_chain};

fn main() -> khpages::Result<()> {
    for word in [
        "s=1; w=",
        "s=2; w=1,1,1",
        "s=2; w=-1,-1,-1",
        "s=3; w=1,-2,1,-2",
        "s=3; w=1,2,1,2,1,2,1,2,1,2",
        "s=3; w=1,2,1,2,1,2,1,2,1,2,-3",
    ] {
        let b = match parse_braid(word) {
            Ok(b) => b,
            Err(e) => {
                println!("{word}: {e}");
                continue;
            }
        };
        let chain = psi_chain(&b);
        let report = fillability_report(&b, None)?;
        println!(
            "{word:<32} sl = {:>3}  ψ at {:?}  cycle {}  nonzero in Kh {}  obstruction {}",
            b.self_linking(),
            chain.bigrading,
            chain.is_cycle,
            report.e2_nonzero,
            report.fillability_obstruction
        );
    }
    Ok(())
}
