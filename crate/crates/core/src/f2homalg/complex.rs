use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::matrix::{xor_sorted, SparseMatrixF2};
use crate::error::{Error, Result};

/// Homological and quantum grading of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Degree {
    pub h: i64,
    pub q: i64,
}

impl Degree {
    pub fn new(h: i64, q: i64) -> Self {
        Self { h, q }
    }
}

/// A chain: the sorted set of generators with coefficient 1.
pub type Chain = Vec<usize>;

/// A finite, freely generated complex over F2.
///
/// Row `i` of the differential lists the generators in `d(x_i)`. Every
/// nonzero component raises `h` by exactly one and preserves `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    degrees: Vec<Degree>,
    d: SparseMatrixF2,
}

impl Complex {
    pub fn new(degrees: Vec<Degree>, d: SparseMatrixF2) -> Result<Self> {
        let n = degrees.len();
        if d.rows() != n || d.cols() != n {
            return Err(Error::NotHomogeneous(format!(
                "differential is {}x{} for {n} generators",
                d.rows(),
                d.cols()
            )));
        }
        for (i, j) in d.positions() {
            let (a, b) = (degrees[i], degrees[j]);
            if b.h != a.h + 1 || b.q != a.q {
                return Err(Error::NotHomogeneous(format!(
                    "component x_{i} -> x_{j} goes from (h,q)=({},{}) to ({},{})",
                    a.h, a.q, b.h, b.q
                )));
            }
        }
        if !d.mul(&d).is_zero() {
            return Err(Error::NotAComplex);
        }
        Ok(Self { degrees, d })
    }

    /// Builds from a list of arrows `x_i -> x_j`.
    pub fn from_arrows(degrees: Vec<Degree>, arrows: &[(usize, usize)]) -> Result<Self> {
        let n = degrees.len();
        if let Some(&(i, j)) = arrows.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::NotHomogeneous(format!("arrow {i} -> {j} out of range")));
        }
        Self::new(degrees, SparseMatrixF2::from_entries(n, n, arrows.iter().copied()))
    }

    pub(crate) fn from_parts_unchecked(degrees: Vec<Degree>, d: SparseMatrixF2) -> Self {
        debug_assert!(d.mul(&d).is_zero());
        Self { degrees, d }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn differential(&self) -> &SparseMatrixF2 {
        &self.d
    }

    /// `d(x_i, x_j)`, the coefficient of `x_j` in `d(x_i)`.
    pub fn coefficient(&self, i: usize, j: usize) -> bool {
        self.d.get(i, j)
    }

    pub fn boundary_of(&self, i: usize) -> &[usize] {
        self.d.row(i)
    }

    /// `d(c)` of a chain.
    pub fn apply(&self, chain: &[usize]) -> Chain {
        chain.iter().fold(Vec::new(), |acc, &i| xor_sorted(&acc, self.d.row(i)))
    }

    /// Number of generators in each degree.
    pub fn generator_counts(&self) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for &g in &self.degrees {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }

    /// Homology ranks per degree, `dim ker - rank(image)`, computed from the
    /// rank of every homogeneous block of the differential.
    pub fn homology(&self) -> BTreeMap<Degree, usize> {
        let mut index: HashMap<Degree, Vec<usize>> = HashMap::new();
        let mut local = vec![0; self.len()];
        for (i, &g) in self.degrees.iter().enumerate() {
            let v = index.entry(g).or_default();
            local[i] = v.len();
            v.push(i);
        }
        let mut block_rank: HashMap<Degree, usize> = HashMap::new();
        let local = &local;
        for (&g, gens) in &index {
            let target = Degree::new(g.h + 1, g.q);
            let Some(cols) = index.get(&target) else { continue };
            let block = SparseMatrixF2::from_entries(
                gens.len(),
                cols.len(),
                gens.iter().enumerate().flat_map(|(r, &i)| self.d.row(i).iter().map(move |&j| (r, local[j]))),
            );
            block_rank.insert(g, block.rank());
        }
        let mut out = BTreeMap::new();
        for (&g, gens) in &index {
            let outgoing = block_rank.get(&g).copied().unwrap_or(0);
            let incoming = block_rank.get(&Degree::new(g.h - 1, g.q)).copied().unwrap_or(0);
            let r = gens.len() - outgoing - incoming;
            if r > 0 {
                out.insert(g, r);
            }
        }
        out
    }
}

/// A complex with an integer filtration grading that no component of the
/// differential lowers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: Complex,
    filtration: Vec<i64>,
}

impl FilteredComplex {
    pub fn new(complex: Complex, filtration: Vec<i64>) -> Result<Self> {
        if filtration.len() != complex.len() {
            return Err(Error::NotHomogeneous(format!(
                "{} filtration values for {} generators",
                filtration.len(),
                complex.len()
            )));
        }
        for (i, j) in complex.differential().positions() {
            if filtration[j] < filtration[i] {
                return Err(Error::FiltrationViolated { from: i, to: j });
            }
        }
        Ok(Self { complex, filtration })
    }

    /// Filtered by the homological grading.
    pub fn by_homological_degree(complex: Complex) -> Self {
        let filtration = complex.degrees().iter().map(|g| g.h).collect();
        Self { complex, filtration }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn filtration(&self) -> &[i64] {
        &self.filtration
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// Components `D_i` of the differential that raise the filtration by
    /// exactly `i`.
    pub fn component(&self, shift: i64) -> Vec<(usize, usize)> {
        self.complex
            .differential()
            .positions()
            .filter(|&(i, j)| self.filtration[j] - self.filtration[i] == shift)
            .collect()
    }

    /// `max f - min f`, zero for an empty complex.
    pub fn span(&self) -> i64 {
        match (self.filtration.iter().min(), self.filtration.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(h: i64) -> Degree {
        Degree::new(h, 0)
    }

    #[test]
    fn homology_examples() {
        let zero = Complex::from_arrows(vec![deg(0), deg(0), deg(1)], &[]).unwrap();
        assert_eq!(zero.homology(), BTreeMap::from([(deg(0), 2), (deg(1), 1)]));
        let pair = Complex::from_arrows(vec![deg(0), deg(1)], &[(0, 1)]).unwrap();
        assert!(pair.homology().is_empty());
    }

    #[test]
    fn rejects_non_complexes() {
        // x -> y -> z with d^2(x) = z.
        let err = Complex::from_arrows(vec![deg(0), deg(1), deg(2)], &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(err, Error::NotAComplex);
        let err = Complex::from_arrows(vec![deg(0), deg(2)], &[(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
        let c = Complex::from_arrows(vec![deg(0), deg(1)], &[(0, 1)]).unwrap();
        assert!(matches!(
            FilteredComplex::new(c, vec![1, 0]),
            Err(Error::FiltrationViolated { from: 0, to: 1 })
        ));
    }

    #[test]
    fn square_zero_via_two_paths() {
        // x -> a, x -> b, a -> z, b -> z.
        let c = Complex::from_arrows(
            vec![deg(0), deg(1), deg(1), deg(2)],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(c.apply(&[0]), vec![1, 2]);
        assert!(c.homology().is_empty());
    }
}
