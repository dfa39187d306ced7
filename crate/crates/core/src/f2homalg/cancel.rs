use std::collections::BTreeSet;

use super::complex::{Chain, Complex};
use super::matrix::{xor_sorted, SparseMatrixF2};
use crate::error::{Error, Result};

/// Result of canceling the component `x_k -> x_l`.
///
/// The new complex has generators `{x_i | i != k, l}` (in their old order)
/// and differential `d'(x_i) = d(x_i) + d(x_i, x_l) d(x_k)`.
#[derive(Debug, Clone)]
pub struct Cancellation {
    pub complex: Complex,
    /// Old index of each new generator.
    pub kept: Vec<usize>,
    pub source: usize,
    pub target: usize,
    /// `d(x_k)` in old indices.
    boundary_of_source: Chain,
    /// Old generators `x_i` with `d(x_i, x_l) = 1`, excluding `x_k`.
    hits_target: Vec<usize>,
}

impl Cancellation {
    fn new_index(&self, old: usize) -> Option<usize> {
        self.kept.binary_search(&old).ok()
    }

    /// `ι(x_i) = x_i + d(x_i, x_l) x_k`, from new indices to old.
    pub fn include(&self, chain: &[usize]) -> Chain {
        let mut out: Chain = Vec::new();
        for &i in chain {
            let old = self.kept[i];
            let mut image = vec![old];
            if self.hits_target.binary_search(&old).is_ok() {
                image = xor_sorted(&image, &[self.source]);
            }
            out = xor_sorted(&out, &image);
        }
        out
    }

    /// The chain map `π`: drops `x_k` and sends `x_l` to `x_l + d(x_k)`
    /// (which no longer involves `x_l`).
    pub fn project(&self, chain: &[usize]) -> Chain {
        project_chain(chain, self.source, self.target, &self.boundary_of_source)
            .into_iter()
            .map(|i| self.new_index(i).expect("projection stays in kept generators"))
            .collect()
    }
}

pub(crate) fn project_chain(chain: &[usize], source: usize, target: usize, boundary_of_source: &[usize]) -> Chain {
    let mut c: Chain = chain.iter().copied().filter(|&i| i != source).collect();
    if c.binary_search(&target).is_ok() {
        c = xor_sorted(&c, boundary_of_source);
    }
    c.retain(|&i| i != source);
    debug_assert!(c.binary_search(&target).is_err());
    c
}

/// Cancels `x_k -> x_l` in `c`.
pub fn cancel_pair(c: &Complex, k: usize, l: usize) -> Result<Cancellation> {
    if k >= c.len() || l >= c.len() || k == l || !c.coefficient(k, l) {
        return Err(Error::InvalidCancellation { from: k, to: l });
    }
    let boundary_of_source = c.boundary_of(k).to_vec();
    let hits_target: Vec<usize> =
        (0..c.len()).filter(|&i| i != k && c.coefficient(i, l)).collect();
    let kept: Vec<usize> = (0..c.len()).filter(|&i| i != k && i != l).collect();
    let mut new_index = vec![usize::MAX; c.len()];
    for (n, &i) in kept.iter().enumerate() {
        new_index[i] = n;
    }
    let mut positions = Vec::new();
    for (n, &i) in kept.iter().enumerate() {
        let mut row = c.boundary_of(i).to_vec();
        if c.coefficient(i, l) {
            row = xor_sorted(&row, &boundary_of_source);
        }
        positions.extend(row.into_iter().filter(|&j| j != k && j != l).map(|j| (n, new_index[j])));
    }
    let degrees = kept.iter().map(|&i| c.degrees()[i]).collect();
    let d = SparseMatrixF2::from_entries(kept.len(), kept.len(), positions);
    Ok(Cancellation {
        complex: Complex::from_parts_unchecked(degrees, d),
        kept,
        source: k,
        target: l,
        boundary_of_source,
        hits_target,
    })
}

/// Mutable adjacency form of a complex used for long cancellation runs.
#[derive(Debug, Clone)]
pub(crate) struct Workspace {
    pub(crate) alive: Vec<bool>,
    pub(crate) out: Vec<BTreeSet<usize>>,
    pub(crate) inc: Vec<BTreeSet<usize>>,
}

impl Workspace {
    pub(crate) fn new(c: &Complex) -> Self {
        let n = c.len();
        let mut out = vec![BTreeSet::new(); n];
        let mut inc = vec![BTreeSet::new(); n];
        for (i, j) in c.differential().positions() {
            out[i].insert(j);
            inc[j].insert(i);
        }
        Self { alive: vec![true; n], out, inc }
    }

    pub(crate) fn boundary(&self, k: usize) -> Chain {
        self.out[k].iter().copied().collect()
    }

    /// Cancels `x_k -> x_l`; both must be alive with `d(x_k, x_l) = 1`.
    pub(crate) fn cancel(&mut self, k: usize, l: usize) {
        debug_assert!(k != l && self.alive[k] && self.alive[l] && self.out[k].contains(&l));
        let targets: Vec<usize> = self.out[k].iter().copied().collect();
        let sources: Vec<usize> = self.inc[l].iter().copied().filter(|&i| i != k).collect();
        for &i in &sources {
            for &t in &targets {
                if self.out[i].remove(&t) {
                    self.inc[t].remove(&i);
                } else {
                    self.out[i].insert(t);
                    self.inc[t].insert(i);
                }
            }
        }
        for x in [k, l] {
            for t in std::mem::take(&mut self.out[x]) {
                self.inc[t].remove(&x);
            }
            for s in std::mem::take(&mut self.inc[x]) {
                self.out[s].remove(&x);
            }
            self.alive[x] = false;
        }
    }

    pub(crate) fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(i, ts)| ts.iter().map(move |&t| (i, t)))
    }
}
