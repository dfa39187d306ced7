//! The reduced Khovanov complex of a diagram over F2.
//!
//! Generators are labelings of the circles of every resolution by `plus` or
//! `minus`, with the circle through the marked edge fixed to `minus`. For a
//! generator at vertex `I` of the cube,
//!
//! ```text
//! h = |I| - n_-
//! q = (#plus - #minus) + |I| + n_+ - 2 n_- + 1
//! ```
//!
//! The differential sums the merge and split maps along every cube edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{resolve_mask, CircleSet, PlanarDiagram, ResolutionVector};
use crate::f2homalg::{compute_pages, Complex, Degree, FilteredComplex, SparseMatrixF2};
use crate::poly::LaurentPoly;

/// Largest crossing count the cube builder accepts.
pub const MAX_CROSSINGS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Plus,
    Minus,
}

/// A generator of the reduced cube: a vertex and a labeling of its circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KhGenerator {
    /// Bit `j` is the resolution of crossing `j`.
    pub vertex: u64,
    /// Bit `c` set when circle `c` is labelled `plus`.
    pub plus: u64,
    pub circles: usize,
}

impl KhGenerator {
    pub fn resolution(&self, crossings: usize) -> ResolutionVector {
        ResolutionVector::from_mask(self.vertex, crossings)
    }

    pub fn label(&self, circle: usize) -> Label {
        if self.plus >> circle & 1 == 1 {
            Label::Plus
        } else {
            Label::Minus
        }
    }

    pub fn plus_count(&self) -> usize {
        self.plus.count_ones() as usize
    }
}

/// The reduced cube complex, filtered by `h`.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    diagram: PlanarDiagram,
    generators: Vec<KhGenerator>,
    offsets: Vec<usize>,
    marked_circle: Vec<usize>,
    filtered: FilteredComplex,
}

impl CubeComplex {
    pub fn diagram(&self) -> &PlanarDiagram {
        &self.diagram
    }

    pub fn generators(&self) -> &[KhGenerator] {
        &self.generators
    }

    pub fn complex(&self) -> &Complex {
        self.filtered.complex()
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Index of the generator at `vertex` with plus-labelled circles `plus`.
    pub fn index_of(&self, vertex: u64, plus: u64) -> Option<usize> {
        let v = vertex as usize;
        if v + 1 >= self.offsets.len() || plus >> self.marked_circle[v] & 1 == 1 {
            return None;
        }
        let idx = self.offsets[v] + compress(plus, self.marked_circle[v]);
        (idx < self.offsets[v + 1]).then_some(idx)
    }
}

/// Removes bit `skip` from `mask`.
fn compress(mask: u64, skip: usize) -> usize {
    let low = mask & ((1 << skip) - 1);
    let high = mask >> (skip + 1);
    (low | high << skip) as usize
}

/// Inserts a zero bit at position `skip`.
fn expand(idx: usize, skip: usize) -> u64 {
    let idx = idx as u64;
    let low = idx & ((1 << skip) - 1);
    let high = idx >> skip;
    low | high << (skip + 1)
}

fn quantum(plus: usize, circles: usize, weight: usize, n_plus: usize, n_minus: usize) -> i64 {
    let minus = circles - plus;
    plus as i64 - minus as i64 + weight as i64 + n_plus as i64 - 2 * n_minus as i64 + 1
}

/// Builds the reduced complex. Vertices are processed in parallel on the
/// current rayon pool; the result does not depend on the thread count.
pub fn build_reduced_complex(d: &PlanarDiagram) -> CubeComplex {
    let m = d.crossing_count();
    assert!(m <= MAX_CROSSINGS, "{m} crossings exceeds the cube limit of {MAX_CROSSINGS}");
    let (n_plus, n_minus) = (d.n_plus(), d.n_minus());
    let vertices = 1u64 << m;
    let resolved: Vec<CircleSet> = (0..vertices).into_par_iter().map(|v| resolve_mask(d, v)).collect();
    let mut offsets = Vec::with_capacity(resolved.len() + 1);
    offsets.push(0);
    for r in &resolved {
        offsets.push(offsets.last().unwrap() + (1usize << (r.count - 1)));
    }
    let marked_circle: Vec<usize> = resolved.iter().map(|r| r.marked).collect();
    let total = *offsets.last().unwrap();

    let generators: Vec<KhGenerator> = resolved
        .iter()
        .enumerate()
        .flat_map(|(v, r)| {
            (0..1usize << (r.count - 1))
                .map(move |i| KhGenerator { vertex: v as u64, plus: expand(i, r.marked), circles: r.count })
        })
        .collect();
    let degrees: Vec<Degree> = generators
        .iter()
        .map(|g| {
            let w = g.vertex.count_ones() as usize;
            Degree::new(w as i64 - n_minus as i64, quantum(g.plus_count(), g.circles, w, n_plus, n_minus))
        })
        .collect();

    let index = |v: u64, plus: u64| -> Option<usize> {
        let mc = marked_circle[v as usize];
        (plus >> mc & 1 == 0).then(|| offsets[v as usize] + compress(plus, mc))
    };

    let arrows: Vec<(usize, usize)> = (0..vertices)
        .into_par_iter()
        .flat_map_iter(|v| {
            let from = &resolved[v as usize];
            let mut out = Vec::new();
            for (j, crossing) in d.crossings().iter().enumerate() {
                if v >> j & 1 == 1 {
                    continue;
                }
                let w = v | 1 << j;
                let to = &resolved[w as usize];
                // Representative edge of each source circle, mapped to its
                // circle in the target resolution.
                let mut image = vec![usize::MAX; from.count];
                for (e, &c) in from.circle_of_edge.iter().enumerate() {
                    if image[c] == usize::MAX {
                        image[c] = to.circle_of_edge[e];
                    }
                }
                let [a, b, c, _] = crossing.slots;
                let (ca, cc) = (from.circle_of_edge[a], from.circle_of_edge[c]);
                let src_base = offsets[v as usize];
                for i in 0..1usize << (from.count - 1) {
                    let plus = expand(i, from.marked);
                    let mut rest = 0u64;
                    for circle in 0..from.count {
                        if circle != ca && circle != cc && plus >> circle & 1 == 1 {
                            rest |= 1 << image[circle];
                        }
                    }
                    let src = src_base + i;
                    let mut push = |labels: u64| {
                        if let Some(t) = index(w, labels) {
                            out.push((src, t));
                        }
                    };
                    if ca != cc {
                        let merged = to.circle_of_edge[a];
                        match (plus >> ca & 1, plus >> cc & 1) {
                            (1, 1) => push(rest | 1 << merged),
                            (0, 0) => {}
                            _ => push(rest),
                        }
                    } else {
                        let (p1, p2) = (to.circle_of_edge[a], to.circle_of_edge[b]);
                        if plus >> ca & 1 == 1 {
                            push(rest | 1 << p1);
                            push(rest | 1 << p2);
                        } else {
                            push(rest);
                        }
                    }
                }
            }
            out
        })
        .collect();

    let d_matrix = SparseMatrixF2::from_entries(total, total, arrows);
    let complex = Complex::new(degrees, d_matrix).expect("cube differential is homogeneous and squares to zero");
    CubeComplex {
        diagram: d.clone(),
        generators,
        offsets,
        marked_circle,
        filtered: FilteredComplex::by_homological_degree(complex),
    }
}

/// Ranks indexed by `(h, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BigradedRanks {
    ranks: BTreeMap<(i64, i64), usize>,
}

/// One row of the JSON rank table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub h: i64,
    pub q: i64,
    pub rank: usize,
}

impl BigradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, usize)>) -> Self {
        let mut r = Self::new();
        for (h, q, n) in terms {
            r.add(h, q, n);
        }
        r
    }

    pub fn add(&mut self, h: i64, q: i64, n: usize) {
        if n > 0 {
            *self.ranks.entry((h, q)).or_insert(0) += n;
        }
    }

    /// Sets a rank, removing zero entries.
    pub fn set(&mut self, h: i64, q: i64, n: usize) {
        if n == 0 {
            self.ranks.remove(&(h, q));
        } else {
            self.ranks.insert((h, q), n);
        }
    }

    pub fn get(&self, h: i64, q: i64) -> usize {
        self.ranks.get(&(h, q)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.ranks.keys().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(min h, max h)` of the support.
    pub fn h_range(&self) -> Option<(i64, i64)> {
        let lo = self.ranks.keys().map(|k| k.0).min()?;
        let hi = self.ranks.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    /// Reflection `(h, q) -> (-h, -q)`.
    pub fn reflected(&self) -> Self {
        Self::from_terms(self.iter().map(|((h, q), n)| (-h, -q, n)))
    }

    /// Poincaré polynomial, e.g. `h^0q^6 + h^2q^10 + 2h^3q^12`.
    pub fn poincare(&self) -> String {
        if self.ranks.is_empty() {
            return "0".into();
        }
        self.ranks
            .iter()
            .map(|(&(h, q), &n)| if n == 1 { format!("h^{h}q^{q}") } else { format!("{n}h^{h}q^{q}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`BigradedRanks::poincare`].
    pub fn parse_poincare(text: &str) -> Option<Self> {
        let text = text.trim();
        let mut out = Self::new();
        if text == "0" {
            return Some(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            let hpos = term.find("h^")?;
            let n: usize = if hpos == 0 { 1 } else { term[..hpos].parse().ok()? };
            let rest = &term[hpos + 2..];
            let qpos = rest.find("q^")?;
            let h: i64 = rest[..qpos].trim().parse().ok()?;
            let q: i64 = rest[qpos + 2..].trim().parse().ok()?;
            out.add(h, q, n);
        }
        Some(out)
    }

    pub fn entries(&self) -> Vec<RankEntry> {
        self.iter().map(|((h, q), rank)| RankEntry { h, q, rank }).collect()
    }

    pub fn from_entries(entries: &[RankEntry]) -> Self {
        Self::from_terms(entries.iter().map(|e| (e.h, e.q, e.rank)))
    }

    /// `Σ (-1)^h rank q^q`.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.iter().map(|((h, q), n)| (if h % 2 == 0 { n as i64 } else { -(n as i64) }, q)))
    }
}

impl fmt::Display for BigradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poincare())
    }
}

/// Homology of the reduced cube, by cancellation.
pub fn kh_homology(d: &PlanarDiagram) -> BigradedRanks {
    cube_homology(&build_reduced_complex(d))
}

pub fn cube_homology(cube: &CubeComplex) -> BigradedRanks {
    // Filtered by h, so E^1 is the chain group and E^2 the homology.
    let pages = compute_pages(cube.filtered(), 2);
    let last = pages.last().expect("at least one page");
    BigradedRanks::from_terms(last.ranks.iter().map(|(g, &n)| (g.h, g.q, n)))
}

/// `δ = q/2 - h`, stored doubled so that half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Delta(pub i64);

impl Delta {
    pub fn of(h: i64, q: i64) -> Self {
        Delta(q - 2 * h)
    }

    pub fn twice(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSupport {
    pub values: BTreeSet<Delta>,
    /// `max δ - min δ + 1`; zero for an empty table.
    pub width: usize,
}

pub fn delta_support(ranks: &BigradedRanks) -> DeltaSupport {
    let values: BTreeSet<Delta> = ranks.support().map(|(h, q)| Delta::of(h, q)).collect();
    let width = match (values.first(), values.last()) {
        (Some(lo), Some(hi)) => ((hi.0 - lo.0) / 2 + 1) as usize,
        _ => 0,
    };
    DeltaSupport { values, width }
}

/// `Σ_x (-1)^{h(x)} q^{q(x)}` over the chain generators: the reduced Jones
/// polynomial, normalized to 1 on the unknot.
pub fn graded_euler_characteristic(cube: &CubeComplex) -> LaurentPoly {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for g in cube.complex().degrees() {
        *counts.entry(g.q).or_insert(0) += if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
    }
    LaurentPoly::from_terms(counts.into_iter().map(|(q, c)| (c, q)))
}
