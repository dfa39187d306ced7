//! Jones polynomial, determinant and thin-knot checks against independent
//! oracles.

mod common;

use khpages::diagram::{braid_to_diagram, connected_sum, parse_braid, parse_pd_json, PlanarDiagram};
use khpages::doublecover::{checkerboard, determinant, goeritz_matrix_with, jones_determinant_check};
use khpages::khovanov::{build_reduced_complex, cube_homology, delta_support, graded_euler_characteristic, kh_homology};
use khpages::pagesolver::{solve_pages, tensor_pages, SolverConstraints, SolverStatus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<PlanarDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut out: Vec<PlanarDiagram> =
        (0..60).map(|_| braid_to_diagram(&common::random_connected_braid(&mut rng, 4, 10))).collect();
    out.push(parse_pd_json(common::FIGURE_EIGHT_PD).unwrap());
    out.push(braid_to_diagram(&parse_braid(common::T34).unwrap()));
    out.push(braid_to_diagram(&parse_braid(common::T35).unwrap()));
    out
}

#[test]
fn euler_characteristic_matches_bracket() {
    for d in corpus() {
        let cube = build_reduced_complex(&d);
        let chi = graded_euler_characteristic(&cube);
        assert_eq!(chi, common::bracket_jones(&d), "{}", khpages::diagram::to_pd_json(&d));
        assert_eq!(cube_homology(&cube).euler_characteristic(), chi);
    }
    let trefoil = braid_to_diagram(&parse_braid("s=2; w=1,1,1").unwrap());
    assert_eq!(common::bracket_jones(&trefoil).to_string(), "q^2 + q^6 - q^8");
}

#[test]
fn determinant_two_ways() {
    for d in corpus() {
        let g = determinant(&d).unwrap();
        assert_eq!(g, jones_determinant_check(&d).unwrap());
        if d.crossing_count() == 0 {
            continue;
        }
        let col = checkerboard(&d).unwrap();
        for white in 0..2u8 {
            let faces = col.color.iter().filter(|&&c| c == white).count();
            for del in 0..faces {
                assert_eq!(goeritz_matrix_with(&col, white, del).unwrap().det().unsigned_abs(), g as u128);
            }
        }
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..15 {
        let a = braid_to_diagram(&common::random_connected_braid(&mut rng, 3, 5));
        let b = braid_to_diagram(&common::random_connected_braid(&mut rng, 3, 5));
        let sum = connected_sum(&a, &b);
        assert_eq!(determinant(&sum).unwrap(), determinant(&a).unwrap() * determinant(&b).unwrap());
    }
}

#[test]
fn connected_sum_is_tensor_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..15 {
        let a = braid_to_diagram(&common::random_connected_braid(&mut rng, 3, 5));
        let b = braid_to_diagram(&common::random_connected_braid(&mut rng, 3, 5));
        let sum = connected_sum(&a, &b);
        assert_eq!(sum.crossing_count(), a.crossing_count() + b.crossing_count());
        assert_eq!(sum.n_plus(), a.n_plus() + b.n_plus());
        assert_eq!(kh_homology(&sum), tensor_pages(&kh_homology(&a), &kh_homology(&b)));
    }
    let unknot = PlanarDiagram::unknot();
    let t = braid_to_diagram(&parse_braid("s=2; w=1,1,1").unwrap());
    assert_eq!(kh_homology(&connected_sum(&t, &unknot)), kh_homology(&t));
}

#[test]
fn alternating_knots_are_thin_and_collapse() {
    let mut knots: Vec<PlanarDiagram> =
        common::alternating_knot_braids(4, 9).iter().map(braid_to_diagram).collect();
    knots.push(parse_pd_json(common::FIGURE_EIGHT_PD).unwrap());
    assert!(knots.len() > 100, "{}", knots.len());
    for d in &knots {
        let kh = kh_homology(d);
        assert_eq!(delta_support(&kh).width, 1);
        assert_eq!(kh.total_rank() as u64, determinant(d).unwrap());
        let r = solve_pages(&kh, &SolverConstraints::new(None)).unwrap();
        assert_eq!(r.status, SolverStatus::Unique);
        assert_eq!(r.pages, vec![kh]);
    }
}

