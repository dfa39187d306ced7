//! Higher pages `E^k` from `E^2 = Kh` by exhaustive search over the ranks of
//! the page differentials.
//!
//! Under the δ-shift rule, `D^k` maps bigrading `(h, q)` to
//! `(h + k, q + 2k - 2)`. The solver enumerates every choice of ranks
//! `r_k(h, q)` for `k = 2, 3, ...` such that
//!
//! * no bigrading loses more than its rank,
//! * every survivor bigrading keeps rank at least one,
//! * the final total rank equals the `E^∞` target, when one is given,
//!
//! and reports whether the resulting page sequence is unique.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::khovanov::{BigradedRanks, Delta};
use crate::poly::LaurentPoly;

pub const DEFAULT_MAX_PAGE: usize = 8;
pub const DEFAULT_AMBIGUITY_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConstraints {
    /// `D^k` shifts `(h, q)` by `(k, 2k - 2)`. Must be set.
    pub q_shift_rule: bool,
    pub einf_rank: Option<usize>,
    pub survivors: Vec<(i64, i64)>,
    /// Differentials `D^2 .. D^{max_page - 1}` are searched; pages run up to
    /// `E^{max_page}`.
    pub max_page: usize,
    pub ambiguity_cap: usize,
}

impl SolverConstraints {
    pub fn new(einf_rank: Option<usize>) -> Self {
        Self {
            q_shift_rule: true,
            einf_rank,
            survivors: Vec::new(),
            max_page: DEFAULT_MAX_PAGE,
            ambiguity_cap: DEFAULT_AMBIGUITY_CAP,
        }
    }

    pub fn with_survivor(mut self, h: i64, q: i64) -> Self {
        if !self.survivors.contains(&(h, q)) {
            self.survivors.push((h, q));
        }
        self
    }

    pub fn with_max_page(mut self, k: usize) -> Self {
        self.max_page = k;
        self
    }
}

/// Ranks of `D^k` per source bigrading.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DifferentialPattern {
    pub k: usize,
    pub arrows: BTreeMap<(i64, i64), usize>,
}

impl DifferentialPattern {
    pub fn target(&self, (h, q): (i64, i64)) -> (i64, i64) {
        shift((h, q), self.k)
    }
}

fn shift((h, q): (i64, i64), k: usize) -> (i64, i64) {
    let k = k as i64;
    (h + k, q + 2 * k - 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverStatus {
    Unique,
    /// Number of distinct page sequences found, and whether the search
    /// stopped at the cap.
    Ambiguous { count: usize, capped: bool },
    /// No consistent choice exists; `page` is the first page from which the
    /// search could not be completed.
    Infeasible { page: usize, reason: String },
}

impl SolverStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolverStatus::Unique => "unique",
            SolverStatus::Ambiguous { .. } => "ambiguous",
            SolverStatus::Infeasible { .. } => "infeasible",
        }
    }
}

/// One consistent page sequence `E^2, E^3, ...`, trimmed after the last
/// page that changes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PageSequence {
    pub pages: Vec<BigradedRanks>,
    pub patterns: Vec<DifferentialPattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub status: SolverStatus,
    /// `E^2 ..` when unique; empty otherwise.
    pub pages: Vec<BigradedRanks>,
    /// Nonzero differentials of the unique solution.
    pub patterns: Vec<DifferentialPattern>,
    /// Every consistent sequence found (at most the cap).
    pub solutions: Vec<PageSequence>,
    /// Whether the `E^∞` target was enforced; it is only meaningful when
    /// every possible differential lies below `max_page`.
    pub einf_enforced: bool,
}

impl SolverResult {
    /// The last page of the unique solution.
    pub fn e_infinity(&self) -> Option<&BigradedRanks> {
        self.pages.last()
    }

    /// `E^k` of the unique solution, reading past the last page.
    pub fn page(&self, k: usize) -> Option<&BigradedRanks> {
        if k < 2 || self.pages.is_empty() {
            return None;
        }
        self.pages.get(k - 2).or(self.pages.last())
    }
}

struct Search<'a> {
    survivors: &'a BTreeSet<(i64, i64)>,
    einf: Option<usize>,
    last_arrow_page: usize,
    cap: usize,
    found: BTreeSet<PageSequence>,
    deepest: usize,
}

impl Search<'_> {
    fn reserve(&self, g: (i64, i64)) -> usize {
        usize::from(self.survivors.contains(&g))
    }

    fn done(&self) -> bool {
        self.found.len() > self.cap
    }

    /// Chooses `D^k` one source at a time.
    #[allow(clippy::too_many_arguments)]
    fn page(
        &mut self,
        k: usize,
        current: &BigradedRanks,
        sources: &[(i64, i64)],
        next: usize,
        used: &mut BTreeMap<(i64, i64), usize>,
        arrows: &mut BTreeMap<(i64, i64), usize>,
        history: &mut Vec<(BigradedRanks, DifferentialPattern)>,
    ) {
        if self.done() {
            return;
        }
        if next == sources.len() {
            let mut after = current.clone();
            for (&g, &r) in arrows.iter() {
                let t = shift(g, k);
                after.set(g.0, g.1, after.get(g.0, g.1) - r);
                after.set(t.0, t.1, after.get(t.0, t.1) - r);
            }
            if self.einf.is_some_and(|n| after.total_rank() < n) {
                return;
            }
            history.push((current.clone(), DifferentialPattern { k, arrows: arrows.clone() }));
            self.search_from(k + 1, &after, history);
            history.pop();
            return;
        }
        let g = sources[next];
        let t = shift(g, k);
        let avail = |x: (i64, i64), used: &BTreeMap<(i64, i64), usize>| {
            current.get(x.0, x.1).saturating_sub(used.get(&x).copied().unwrap_or(0) + self.reserve(x))
        };
        let max = avail(g, used).min(avail(t, used));
        for r in 0..=max {
            if r > 0 {
                *used.entry(g).or_insert(0) += r;
                *used.entry(t).or_insert(0) += r;
                arrows.insert(g, r);
            }
            self.page(k, current, sources, next + 1, used, arrows, history);
            if r > 0 {
                *used.get_mut(&g).unwrap() -= r;
                *used.get_mut(&t).unwrap() -= r;
                arrows.remove(&g);
            }
            if self.done() {
                return;
            }
        }
    }

    fn search_from(&mut self, k: usize, current: &BigradedRanks, history: &mut Vec<(BigradedRanks, DifferentialPattern)>) {
        self.deepest = self.deepest.max(k);
        if k > self.last_arrow_page {
            if self.einf.is_some_and(|n| current.total_rank() != n) {
                return;
            }
            self.found.insert(trimmed(history, current));
            return;
        }
        let sources: Vec<(i64, i64)> = current
            .support()
            .filter(|&g| {
                let t = shift(g, k);
                current.get(t.0, t.1) > 0
            })
            .collect();
        self.page(k, current, &sources, 0, &mut BTreeMap::new(), &mut BTreeMap::new(), history);
    }
}

fn trimmed(history: &[(BigradedRanks, DifferentialPattern)], last: &BigradedRanks) -> PageSequence {
    let changed = history.iter().rposition(|(_, p)| !p.arrows.is_empty());
    let keep = changed.map_or(0, |i| i + 1);
    let mut pages: Vec<BigradedRanks> = history[..keep].iter().map(|(p, _)| p.clone()).collect();
    pages.push(if keep < history.len() { history[keep].0.clone() } else { last.clone() });
    let patterns = history[..keep].iter().map(|(_, p)| p.clone()).filter(|p| !p.arrows.is_empty()).collect();
    PageSequence { pages, patterns }
}

/// Enumerates every page sequence consistent with the constraints.
pub fn solve_pages(e2: &BigradedRanks, c: &SolverConstraints) -> Result<SolverResult> {
    if !c.q_shift_rule {
        return Err(Error::InvalidConstraints("only the (k, 2k-2) shift rule is implemented".into()));
    }
    if c.max_page < 2 {
        return Err(Error::InvalidConstraints(format!("max page {} is below 2", c.max_page)));
    }
    if c.ambiguity_cap == 0 {
        return Err(Error::InvalidConstraints("ambiguity cap must be positive".into()));
    }
    for &(h, q) in &c.survivors {
        if e2.get(h, q) == 0 {
            return Err(Error::InvalidConstraints(format!("survivor ({h},{q}) is not in the support of E^2")));
        }
    }
    let span = e2.h_range().map_or(0, |(lo, hi)| (hi - lo) as usize);
    // D^k needs k <= span to connect two nonzero groups.
    let last_arrow_page = span.min(c.max_page - 1);
    let einf_enforced = span < c.max_page;
    let survivors: BTreeSet<(i64, i64)> = c.survivors.iter().copied().collect();
    let mut search = Search {
        survivors: &survivors,
        einf: if einf_enforced { c.einf_rank } else { None },
        last_arrow_page,
        cap: c.ambiguity_cap,
        found: BTreeSet::new(),
        deepest: 2,
    };
    let mut history = Vec::new();
    search.search_from(2, e2, &mut history);
    let capped = search.done();
    let mut solutions: Vec<PageSequence> = search.found.into_iter().collect();
    solutions.truncate(c.ambiguity_cap);
    for s in &solutions {
        verify_sequence(s)?;
    }
    let result = match solutions.len() {
        0 => {
            let reason = match c.einf_rank {
                Some(n) if einf_enforced => format!("no differential pattern reaches total rank {n} on E^∞"),
                _ => "no differential pattern keeps every survivor".into(),
            };
            SolverResult {
                status: SolverStatus::Infeasible { page: search.deepest.min(last_arrow_page.max(2)), reason },
                pages: Vec::new(),
                patterns: Vec::new(),
                solutions,
                einf_enforced,
            }
        }
        1 => SolverResult {
            status: SolverStatus::Unique,
            pages: solutions[0].pages.clone(),
            patterns: solutions[0].patterns.clone(),
            solutions,
            einf_enforced,
        },
        n => SolverResult {
            status: SolverStatus::Ambiguous { count: n, capped },
            pages: Vec::new(),
            patterns: Vec::new(),
            solutions,
            einf_enforced,
        },
    };
    Ok(result)
}

/// Checks the rank bookkeeping, the δ-shift of every arrow and the pair
/// relation `V^k - V^{k+1} = Σ r ((-1)^i q^{j/2} + (-1)^{i+k} q^{j/2+k-1})`.
pub fn verify_sequence(s: &PageSequence) -> Result<()> {
    let mut pattern_of: BTreeMap<usize, &DifferentialPattern> = BTreeMap::new();
    for p in &s.patterns {
        pattern_of.insert(p.k, p);
    }
    for (i, pair) in s.pages.windows(2).enumerate() {
        let k = i + 2;
        let (now, next) = (&pair[0], &pair[1]);
        let empty = DifferentialPattern { k, arrows: BTreeMap::new() };
        let p = pattern_of.get(&k).copied().unwrap_or(&empty);
        let keys: BTreeSet<(i64, i64)> = now.support().chain(next.support()).collect();
        for g in keys {
            let out = p.arrows.get(&g).copied().unwrap_or(0);
            let back = (g.0 - k as i64, g.1 - 2 * k as i64 + 2);
            let inc = p.arrows.get(&back).copied().unwrap_or(0);
            if now.get(g.0, g.1) < out + inc || next.get(g.0, g.1) != now.get(g.0, g.1) - out - inc {
                return Err(Error::Internal(format!("rank bookkeeping fails at E^{} ({},{})", k + 1, g.0, g.1)));
            }
        }
        let mut pairs = LaurentPoly::zero();
        for (&(h, q), &r) in &p.arrows {
            let t = p.target((h, q));
            if Delta::of(t.0, t.1).twice() != Delta::of(h, q).twice() - 2 {
                return Err(Error::Internal(format!("arrow from ({h},{q}) on E^{k} does not lower δ by 1")));
            }
            let sign = |x: i64| if x.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) };
            pairs = &pairs + &LaurentPoly::from_half_exponents([(sign(h), q), (sign(t.0), t.1)]);
        }
        if &vk_polynomial(now) - &vk_polynomial(next) != pairs {
            return Err(Error::Internal(format!("pair relation fails between E^{k} and E^{}", k + 1)));
        }
    }
    Ok(())
}

/// `V^k(q) = Σ (-1)^i rk E^k_{i,j} q^{j/2}`.
pub fn vk_polynomial(page: &BigradedRanks) -> LaurentPoly {
    LaurentPoly::from_half_exponents(
        page.iter().map(|((h, q), n)| (if h.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) }, q)),
    )
}

/// Graded tensor product: ranks convolved under `(h, q)` addition.
pub fn tensor_pages(a: &BigradedRanks, b: &BigradedRanks) -> BigradedRanks {
    let mut out = BigradedRanks::new();
    for ((h1, q1), n1) in a.iter() {
        for ((h2, q2), n2) in b.iter() {
            out.add(h1 + h2, q1 + q2, n1 * n2);
        }
    }
    out
}

/// `{"assumptions": ..., "status": ..., "pages": [...], "vk": [...]}`.
/// `einf_source` records where the `E^∞` target came from.
pub fn result_json(r: &SolverResult, c: &SolverConstraints, einf_source: &str) -> Value {
    let table = |p: &BigradedRanks| serde_json::to_value(p.entries()).expect("rank entries serialize");
    let pages: Vec<Value> = r
        .pages
        .iter()
        .enumerate()
        .map(|(i, p)| json!({"k": i + 2, "table": table(p)}))
        .collect();
    let vk: Vec<String> = r.pages.iter().map(|p| vk_polynomial(p).to_string()).collect();
    let survivors: Vec<[i64; 2]> = c.survivors.iter().map(|&(h, q)| [h, q]).collect();
    let mut out = json!({
        "assumptions": {
            "delta_shift": c.q_shift_rule,
            "einf_rank": c.einf_rank,
            "einf_source": einf_source,
            "einf_enforced": r.einf_enforced,
            "survivors": survivors,
            "max_page": c.max_page,
        },
        "status": r.status.name(),
    });
    let obj = out.as_object_mut().expect("object");
    match &r.status {
        SolverStatus::Unique => {}
        SolverStatus::Ambiguous { count, capped } => {
            obj.insert("count".into(), json!(count));
            obj.insert("capped".into(), json!(capped));
            let alts: Vec<Value> = r
                .solutions
                .iter()
                .map(|s| {
                    Value::Array(
                        s.pages.iter().enumerate().map(|(i, p)| json!({"k": i + 2, "table": table(p)})).collect(),
                    )
                })
                .collect();
            obj.insert("alternatives".into(), Value::Array(alts));
        }
        SolverStatus::Infeasible { page, reason } => {
            obj.insert("certificate".into(), json!({"page": page, "reason": reason}));
        }
    }
    obj.insert("pages".into(), Value::Array(pages));
    obj.insert("vk".into(), json!(vk));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kh(text: &str) -> BigradedRanks {
        BigradedRanks::parse_poincare(text).unwrap()
    }

    fn t35() -> BigradedRanks {
        kh("h^0q^8 + h^2q^12 + h^3q^14 + h^4q^14 + h^5q^18 + h^6q^18 + h^7q^20")
    }

    fn t34() -> BigradedRanks {
        kh("h^0q^6 + h^2q^10 + h^3q^12 + h^4q^12 + h^5q^16")
    }

    #[test]
    fn t35_pages() {
        let r = solve_pages(&t35(), &SolverConstraints::new(Some(1)).with_survivor(0, 8)).unwrap();
        assert_eq!(r.status, SolverStatus::Unique);
        let shown: Vec<String> = r.pages.iter().map(|p| p.poincare()).collect();
        assert_eq!(shown, [t35().poincare(), "h^0q^8 + h^3q^14 + h^6q^18".into(), "h^0q^8".into()]);
        assert_eq!(vk_polynomial(r.e_infinity().unwrap()).to_string(), "q^4");
        assert_eq!(r.patterns.len(), 2);
        assert_eq!(r.patterns[0].arrows, BTreeMap::from([((2, 12), 1), ((5, 18), 1)]));
        assert_eq!(r.patterns[1].arrows, BTreeMap::from([((3, 14), 1)]));
    }

    #[test]
    fn t34_pages() {
        let r = solve_pages(&t34(), &SolverConstraints::new(Some(3)).with_survivor(0, 6)).unwrap();
        assert_eq!(r.status, SolverStatus::Unique);
        assert_eq!(r.pages.len(), 2);
        assert_eq!(r.pages[1].poincare(), "h^0q^6 + h^3q^12 + h^5q^16");
        assert_eq!(vk_polynomial(&r.pages[1]).to_string(), "q^3 - q^6 - q^8");
    }

    #[test]
    fn t34_without_survivor_is_ambiguous() {
        let r = solve_pages(&t34(), &SolverConstraints::new(Some(3))).unwrap();
        assert_eq!(r.status, SolverStatus::Ambiguous { count: 2, capped: false });
    }

    #[test]
    fn thin_tables_collapse() {
        let trefoil = kh("h^0q^2 + h^2q^6 + h^3q^8");
        let r = solve_pages(&trefoil, &SolverConstraints::new(None)).unwrap();
        assert_eq!(r.status, SolverStatus::Unique);
        assert_eq!(r.pages, vec![trefoil]);
    }

    #[test]
    fn infeasible_target() {
        let r = solve_pages(&t35(), &SolverConstraints::new(Some(4)).with_survivor(0, 8)).unwrap();
        assert!(matches!(r.status, SolverStatus::Infeasible { .. }));
        assert!(solve_pages(&t35(), &SolverConstraints::new(Some(1)).with_survivor(1, 1)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let unknot = kh("h^0q^0");
        assert_eq!(tensor_pages(&t35(), &unknot), t35());
        let e4 = kh("h^0q^8");
        assert_eq!(tensor_pages(&e4, &e4).poincare(), "h^0q^16");
        assert_eq!(tensor_pages(&kh("h^0q^2 + h^2q^6 + h^3q^8"), &kh("h^0q^2 + h^2q^6 + h^3q^8")).total_rank(), 9);
    }

    #[test]
    fn vk_unknot() {
        assert_eq!(vk_polynomial(&kh("h^0q^0")).to_string(), "1");
        assert_eq!(vk_polynomial(&kh("h^1q^5")).to_string(), "-q^(5/2)");
    }
}
