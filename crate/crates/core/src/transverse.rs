//! The transverse invariant ψ of a braid closure: the generator at the
//! oriented resolution with every circle labelled `minus`.

use serde::Serialize;

use crate::diagram::{braid_to_diagram, oriented_resolution, BraidWord, ResolutionVector};
use crate::error::{Error, Result};
use crate::f2homalg::track_cycle;
use crate::khovanov::{build_reduced_complex, cube_homology, BigradedRanks, CubeComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiChain {
    pub vertex: ResolutionVector,
    /// Index of the generator in the reduced cube.
    pub index: usize,
    pub bigrading: (i64, i64),
    /// `D(ψ) = 0`, checked on the cube.
    pub is_cycle: bool,
}

/// ψ inside an already built cube of a braid closure.
pub fn psi_chain_in(cube: &CubeComplex) -> PsiChain {
    let vertex = oriented_resolution(cube.diagram());
    let index = cube.index_of(vertex.to_mask(), 0).expect("the all-minus labeling is always reduced");
    let g = cube.complex().degrees()[index];
    PsiChain { vertex, index, bigrading: (g.h, g.q), is_cycle: cube.complex().boundary_of(index).is_empty() }
}

pub fn psi_chain(b: &BraidWord) -> PsiChain {
    psi_chain_in(&build_reduced_complex(&braid_to_diagram(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiClass {
    pub bigrading: (i64, i64),
    pub nonzero: bool,
}

/// Class of ψ in Kh, following the chain through a full reduction of the
/// cube.
pub fn psi_class_in(cube: &CubeComplex) -> Result<PsiClass> {
    let psi = psi_chain_in(cube);
    let traces = track_cycle(cube.filtered(), &[psi.index], 2)?;
    let last = traces.last().ok_or_else(|| Error::Internal("no pages traced".into()))?;
    Ok(PsiClass { bigrading: psi.bigrading, nonzero: !last.is_zero })
}

pub fn psi_class(b: &BraidWord) -> Result<PsiClass> {
    psi_class_in(&build_reduced_complex(&braid_to_diagram(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fate {
    Survives,
    Dead,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PageFate {
    pub k: usize,
    pub status: Fate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub bigrading: (i64, i64),
    pub e2_nonzero: bool,
    pub page_fates: Vec<PageFate>,
    pub fillability_obstruction: bool,
    #[serde(skip)]
    pub obstruction_page: Option<usize>,
}

impl PsiReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bigrading": [self.bigrading.0, self.bigrading.1],
            "e2_nonzero": self.e2_nonzero,
            "page_fates": self.page_fates,
            "fillability_obstruction": self.fillability_obstruction,
        })
    }
}

/// Fates of ψ on pages `E^2, E^3, ...` (`pages[0]` is `E^2`) and the first
/// page where ψ is dead while the page lies in `h <= 0`.
///
/// ψ is a cycle for every `D^k`, so only incoming differentials can kill
/// it: an unchanged rank keeps it alive, rank zero kills it, and any other
/// drop leaves its status unknown.
pub fn assess_pages(bigrading: (i64, i64), e2_nonzero: bool, pages: &[BigradedRanks]) -> (Vec<PageFate>, Option<usize>) {
    let (h, q) = bigrading;
    let mut fates = Vec::with_capacity(pages.len());
    let mut status = if e2_nonzero { Fate::Survives } else { Fate::Dead };
    for (i, page) in pages.iter().enumerate() {
        let k = i + 2;
        if i > 0 && status != Fate::Dead {
            let (before, now) = (pages[i - 1].get(h, q), page.get(h, q));
            if now == 0 {
                status = Fate::Dead;
            } else if now < before {
                status = Fate::Unknown;
            }
        }
        fates.push(PageFate { k, status });
    }
    let obstruction = fates
        .iter()
        .zip(pages)
        .find(|(f, p)| f.status == Fate::Dead && p.support().all(|(h, _)| h <= 0))
        .map(|(f, _)| f.k);
    (fates, obstruction)
}

/// Checks the hypotheses of the vanishing criterion for the contact
/// invariant: ψ dies on some page `E^k` that is supported in `h <= 0`.
/// `pages`, when given, starts at `E^2` and must match Kh of the braid.
pub fn fillability_report(b: &BraidWord, pages: Option<&[BigradedRanks]>) -> Result<PsiReport> {
    let cube = build_reduced_complex(&braid_to_diagram(b));
    let class = psi_class_in(&cube)?;
    let kh = cube_homology(&cube);
    let own;
    let pages = match pages {
        Some(p) => {
            match p.first() {
                Some(e2) if *e2 == kh => {}
                Some(e2) => {
                    return Err(Error::Inconsistent(format!(
                        "supplied E^2 {} differs from Kh of {b}: {}",
                        e2.poincare(),
                        kh.poincare()
                    )))
                }
                None => return Err(Error::Inconsistent("no pages supplied".into())),
            }
            p
        }
        None => {
            own = [kh];
            &own[..]
        }
    };
    let (page_fates, obstruction_page) = assess_pages(class.bigrading, class.nonzero, pages);
    Ok(PsiReport {
        bigrading: class.bigrading,
        e2_nonzero: class.nonzero,
        page_fates,
        fillability_obstruction: obstruction_page.is_some(),
        obstruction_page,
    })
}
