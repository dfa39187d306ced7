//! Kh is unchanged by braid moves that preserve the link type, and the
//! mirror reflects the table.

mod common;

use khpages::diagram::{braid_to_diagram, BraidWord};
use khpages::khovanov::{kh_homology, BigradedRanks};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kh(b: &BraidWord) -> BigradedRanks {
    kh_homology(&braid_to_diagram(b))
}

/// `(name, before, after)` for random braids and every move.
fn move_pairs(count: usize, seed: u64) -> Vec<(&'static str, BraidWord, BraidWord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let b = common::random_braid(&mut rng, 3, 6);
        let at = rng.gen_range(0..=b.letters().len());
        match out.len() % 5 {
            0 => out.push(("positive stabilization", b.clone(), b.positive_stabilization())),
            1 => out.push(("negative stabilization", b.clone(), b.negative_stabilization())),
            2 if b.strands() >= 2 => {
                let i = rng.gen_range(1..b.strands() as i32);
                let pair = if rng.gen_bool(0.5) { [i, -i] } else { [-i, i] };
                out.push(("R2", b.clone(), b.insert(at, &pair).unwrap()));
            }
            3 if b.strands() >= 3 => {
                let i = rng.gen_range(1..b.strands() as i32 - 1);
                let word = [i, i + 1, i, -(i + 1), -i, -(i + 1)];
                out.push(("R3 word", b.clone(), b.insert(at, &word).unwrap()));
            }
            4 if !b.letters().is_empty() => {
                let by = rng.gen_range(1..=b.letters().len());
                out.push(("conjugation", b.clone(), b.rotate(by)));
            }
            _ => {}
        }
    }
    out
}

#[test]
fn moves_preserve_kh() {
    let pairs = move_pairs(80, 1);
    let mut kinds = std::collections::BTreeSet::new();
    for (name, a, b) in &pairs {
        assert_eq!(kh(a), kh(b), "{name}: {a} vs {b}");
        kinds.insert(*name);
    }
    assert_eq!(kinds.len(), 5);
}

#[test]
fn braid_relations_preserve_kh() {
    let far = BraidWord::new(4, vec![1, 3, 2, 1, 3]).unwrap();
    let commuted = BraidWord::new(4, vec![3, 1, 2, 3, 1]).unwrap();
    assert_eq!(kh(&far), kh(&commuted));
    let braid = BraidWord::new(3, vec![1, 2, 1, -2, 1]).unwrap();
    let swapped = BraidWord::new(3, vec![2, 1, 2, -2, 1]).unwrap();
    assert_eq!(kh(&braid), kh(&swapped));
}

#[test]
fn mirror_reflects_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let b = common::random_braid(&mut rng, 4, 8);
        let d = braid_to_diagram(&b);
        assert_eq!(kh_homology(&d.mirror()), kh_homology(&d).reflected(), "{b}");
        assert_eq!(kh(&b.mirror()), kh(&b).reflected(), "{b}");
    }
}

#[test]
fn marked_edge_does_not_matter_for_knots() {
    let d = braid_to_diagram(&khpages::diagram::parse_braid(common::T34).unwrap());
    let base = kh_homology(&d);
    for e in 0..d.num_edges() {
        let moved = d.with_marked_label(d.label(e)).unwrap();
        assert_eq!(kh_homology(&moved), base);
    }
}
