use std::collections::BTreeMap;

use serde::Serialize;

use super::cancel::{project_chain, Workspace};
use super::complex::{Chain, FilteredComplex};
use crate::error::{Error, Result};

/// Key of a page entry: filtration level plus the bigrading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PageGrading {
    pub f: i64,
    pub h: i64,
    pub q: i64,
}

pub type PageRanks = BTreeMap<PageGrading, usize>;

/// One page `E^k` of the spectral sequence of a filtered complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub k: usize,
    pub ranks: PageRanks,
    /// Surviving original generators, a basis of `E^k`.
    pub generators: Vec<usize>,
    /// `D^k`: components of the reduced differential shifting the filtration
    /// by exactly `k`, in original generator indices.
    pub differential: Vec<(usize, usize)>,
    /// The reduced differential vanishes, so this page is `E^∞`.
    pub is_infinity: bool,
}

impl Page {
    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }
}

/// Status of a tracked cycle on one page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTrace {
    pub page: usize,
    /// Representative in the reduced complex after this page's stage.
    pub representative: Chain,
    /// Part of the representative in the cycle's own filtration level; this
    /// is the class on the page.
    pub leading: Chain,
    pub is_zero: bool,
}

/// Staged cancellation: stage `n` cancels every component shifting the
/// filtration by `n - 1`, giving `E^n`. Stops at `max_page` or as soon as
/// the differential vanishes (that page is flagged `E^∞`).
///
/// Within a stage, arrows are processed in (source index, target index)
/// order.
pub fn compute_pages(f: &FilteredComplex, max_page: usize) -> Vec<Page> {
    let order: Vec<usize> = (0..f.len()).collect();
    run(f, max_page, &order, None).0
}

/// As [`compute_pages`], with sources and targets visited in the order given
/// by `priority` (a permutation of the generator indices).
pub fn compute_pages_ordered(f: &FilteredComplex, max_page: usize, priority: &[usize]) -> Vec<Page> {
    run(f, max_page, priority, None).0
}

/// Follows the class of `chain` through the cancellation stages via the
/// projection of each cancellation.
pub fn track_cycle(f: &FilteredComplex, chain: &[usize], max_page: usize) -> Result<Vec<CycleTrace>> {
    let mut c: Chain = chain.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.iter().any(|&i| i >= f.len()) {
        return Err(Error::Internal("chain refers to a generator outside the complex".into()));
    }
    if !f.complex().apply(&c).is_empty() {
        return Err(Error::NotACycle);
    }
    let level = match c.first() {
        Some(&i) => f.filtration()[i],
        None => 0,
    };
    if c.iter().any(|&i| f.filtration()[i] != level) {
        return Err(Error::InhomogeneousChain);
    }
    let order: Vec<usize> = (0..f.len()).collect();
    Ok(run(f, max_page, &order, Some((c, level))).1)
}

fn run(
    f: &FilteredComplex,
    max_page: usize,
    priority: &[usize],
    mut tracked: Option<(Chain, i64)>,
) -> (Vec<Page>, Vec<CycleTrace>) {
    let filt = f.filtration();
    let degrees = f.complex().degrees();
    let mut rank_of = vec![0; f.len()];
    for (r, &i) in priority.iter().enumerate() {
        rank_of[i] = r;
    }
    let mut ws = Workspace::new(f.complex());
    let mut pages = Vec::new();
    let mut traces = Vec::new();
    for n in 1..=max_page.max(1) {
        let shift = n as i64 - 1;
        loop {
            let mut progressed = false;
            for &x in priority {
                if !ws.alive[x] {
                    continue;
                }
                let target = ws.out[x]
                    .iter()
                    .copied()
                    .filter(|&y| y != x && filt[y] - filt[x] == shift)
                    .min_by_key(|&y| rank_of[y]);
                if let Some(y) = target {
                    if let Some((chain, _)) = tracked.as_mut() {
                        *chain = project_chain(chain, x, y, &ws.boundary(x));
                    }
                    ws.cancel(x, y);
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        let generators: Vec<usize> = (0..f.len()).filter(|&i| ws.alive[i]).collect();
        let mut ranks = PageRanks::new();
        for &i in &generators {
            let key = PageGrading { f: filt[i], h: degrees[i].h, q: degrees[i].q };
            *ranks.entry(key).or_insert(0) += 1;
        }
        let differential: Vec<(usize, usize)> =
            ws.arrows().filter(|&(i, j)| filt[j] - filt[i] == n as i64).collect();
        let is_infinity = ws.arrows().next().is_none();
        if let Some((chain, level)) = tracked.as_ref() {
            let leading: Chain = chain.iter().copied().filter(|&i| filt[i] == *level).collect();
            traces.push(CycleTrace {
                page: n,
                representative: chain.clone(),
                is_zero: leading.is_empty(),
                leading,
            });
        }
        pages.push(Page { k: n, ranks, generators, differential, is_infinity });
        if is_infinity {
            break;
        }
    }
    (pages, traces)
}

/// Ranks of `E^k`, reading past the last computed page when it is `E^∞`.
pub fn ranks_at(pages: &[Page], k: usize) -> Option<&PageRanks> {
    match pages.iter().find(|p| p.k == k) {
        Some(p) => Some(&p.ranks),
        None => pages.last().filter(|p| p.is_infinity && p.k < k).map(|p| &p.ranks),
    }
}
