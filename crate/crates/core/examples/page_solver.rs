//! Higher pages of T(3,4) and T(3,5) from their Khovanov homology, under the
//! δ-shift rule, with ψ's bigrading as a survivor and the E^∞ rank set to the
//! determinant.
//!
//! ```text
//! cargo run --release --example page_solver
//! ```

use khpages::diagram::{braid_to_diagram, parse_braid};
use khpages::doublecover::determinant;
use khpages::khovanov::kh_homology;
use khpages::pagesolver::{solve_pages, vk_polynomial, SolverConstraints, SolverStatus};
use khpages::transverse::psi_chain;

fn main() -> khpages::Result<()> {
    for word in ["s=3; w=1,2,1,2,1,2,1,2", "s=3; w=1,2,1,2,1,2,1,2,1,2"] {
        let b = parse_braid(word)?;
        let d = braid_to_diagram(&b);
        let (h, q) = psi_chain(&b).bigrading;
        let rank = determinant(&d)? as usize;
        let constraints = SolverConstraints::new(Some(rank)).with_survivor(h, q);
        let r = solve_pages(&kh_homology(&d), &constraints)?;
        println!("{word}: E^∞ rank {rank}, survivor ({h},{q}), status {}", r.status.name());
        if r.status == SolverStatus::Unique {
            for (i, page) in r.pages.iter().enumerate() {
                println!("  E^{} = {:<60} V = {}", i + 2, page.poincare(), vk_polynomial(page));
            }
            for p in &r.patterns {
                for (&(h, q), &n) in &p.arrows {
                    let (th, tq) = p.target((h, q));
                    println!("  D^{}: ({h},{q}) -> ({th},{tq}) rank {n}", p.k);
                }
            }
        }
    }

    // Without the survivor the T(3,4) answer is not determined.
    let d = braid_to_diagram(&parse_braid("s=3; w=1,2,1,2,1,2,1,2")?);
    let r = solve_pages(&kh_homology(&d), &SolverConstraints::new(Some(3)))?;
    println!("T(3,4) without survivor: {:?}", r.status);
    Ok(())
}
