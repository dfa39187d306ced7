//! Spectral-sequence pages straight from the subquotient definition
//!
//! `E^k_p = Z^k_p / (D(Z^{k-1}_{p-k+1}) + Z^{k-1}_{p+1})` with
//! `F_p = span{x | f(x) >= p}` and `Z^k_p = F_p ∩ D^{-1}(F_{p+k})`,
//! computed per bigrading with dense Gaussian elimination. Shares no code
//! with the cancellation engine.

use std::collections::BTreeSet;

use super::complex::{Degree, FilteredComplex};
use super::pages::{PageGrading, PageRanks};

type Bits = Vec<u64>;

fn unit(n: usize, i: usize) -> Bits {
    let mut v = vec![0; n.div_ceil(64)];
    v[i / 64] |= 1 << (i % 64);
    v
}

fn bit(v: &Bits, i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn xor_into(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn span_rank(n: usize, vectors: &[Bits]) -> usize {
    let mut m = vectors.to_vec();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| bit(&m[r], c)) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for r in rank + 1..m.len() {
            if bit(&m[r], c) {
                xor_into(&mut m[r], &pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{v in span(domain) | mask(D v) = 0}` where `mask` keeps the
/// coordinates in `watched`.
fn kernel(n: usize, domain: &[usize], image: impl Fn(usize) -> Bits, watched: &[usize]) -> Vec<Bits> {
    // Rows: [restricted image | combination of domain vectors].
    let mut rows: Vec<(Vec<bool>, Bits)> = domain
        .iter()
        .map(|&i| {
            let img = image(i);
            (watched.iter().map(|&w| bit(&img, w)).collect(), unit(n, i))
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..watched.len() {
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].0[c]) else { continue };
        rows.swap(pivot_row, p);
        let (pl, pc) = rows[pivot_row].clone();
        for r in 0..rows.len() {
            if r != pivot_row && rows[r].0[c] {
                for (x, y) in rows[r].0.iter_mut().zip(&pl) {
                    *x ^= y;
                }
                xor_into(&mut rows[r].1, &pc);
            }
        }
        pivot_row += 1;
    }
    rows.into_iter().skip(pivot_row).map(|(_, comb)| comb).collect()
}

/// Page ranks `E^1 ..= E^max_page` by the subquotient formula.
pub fn oracle_pages(f: &FilteredComplex, max_page: usize) -> Vec<PageRanks> {
    let n = f.len();
    let c = f.complex();
    let filt = f.filtration();
    let degrees = c.degrees();
    let boundary = |i: usize| -> Bits {
        let mut v = vec![0; n.div_ceil(64)];
        for &j in c.boundary_of(i) {
            v[j / 64] ^= 1 << (j % 64);
        }
        v
    };
    let apply = |v: &Bits| -> Bits {
        let mut out = vec![0; n.div_ceil(64)];
        for i in 0..n {
            if bit(v, i) {
                xor_into(&mut out, &boundary(i));
            }
        }
        out
    };
    // Z^k_p restricted to bigrading g.
    let cycles = |k: i64, p: i64, g: Degree| -> Vec<Bits> {
        let domain: Vec<usize> = (0..n).filter(|&i| filt[i] >= p && degrees[i] == g).collect();
        let watched: Vec<usize> = (0..n).filter(|&j| filt[j] < p + k).collect();
        kernel(n, &domain, boundary, &watched)
    };
    let levels: BTreeSet<(i64, Degree)> = (0..n).map(|i| (filt[i], degrees[i])).collect();
    (1..=max_page as i64)
        .map(|k| {
            let mut ranks = PageRanks::new();
            for &(p, g) in &levels {
                let z = cycles(k, p, g);
                let below = Degree::new(g.h - 1, g.q);
                let mut b: Vec<Bits> = cycles(k - 1, p - k + 1, below).iter().map(&apply).collect();
                b.extend(cycles(k - 1, p + 1, g));
                let dim = z.len() - span_rank(n, &b);
                debug_assert_eq!(span_rank(n, &[z.clone(), b.clone()].concat()), z.len());
                if dim > 0 {
                    ranks.insert(PageGrading { f: p, h: g.h, q: g.q }, dim);
                }
            }
            ranks
        })
        .collect()
}
