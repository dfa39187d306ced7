//! Link diagrams: braid words, planar diagram codes and the circle
//! combinatorics of their resolutions.
//!
//! # Slot convention
//!
//! A crossing is stored as four edge labels `[a, b, c, d]` read
//! counterclockwise, starting from the incoming under-strand:
//!
//! ```text
//!        c           positive (+1)        negative (-1)
//!        |           over strand d -> b   over strand b -> d
//!   d ---|--> b
//!        |
//!        a  (under strand enters at a, leaves at c)
//! ```
//!
//! The 0-resolution joins `a-b` and `c-d`, the 1-resolution joins `a-d` and
//! `b-c`. At a positive crossing the 0-resolution is the oriented one, at a
//! negative crossing the 1-resolution is.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

/// A braid word on `strands` strands. Letter `i > 0` is a positive crossing
/// between strands `i` and `i + 1`, letter `-i` the negative one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("braid must have at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn crossings(&self) -> usize {
        self.letters.len()
    }

    /// Sum of the letter signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Writhe minus the number of strands.
    pub fn self_linking(&self) -> i64 {
        self.writhe() - self.strands as i64
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Appends `σ_s` on a new strand `s + 1`.
    pub fn positive_stabilization(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i32);
        Self { strands: self.strands + 1, letters }
    }

    /// Appends `σ_s^{-1}` on a new strand `s + 1`.
    pub fn negative_stabilization(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push(-(self.strands as i32));
        Self { strands: self.strands + 1, letters }
    }

    /// Cyclic rotation of the word, which is a conjugation in the braid group.
    pub fn rotate(&self, by: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(by % n);
        }
        Self { strands: self.strands, letters }
    }

    /// Inserts `letters` at position `at`; the caller is responsible for the
    /// inserted word being trivial if an isotopic braid is wanted.
    pub fn insert(&self, at: usize, inserted: &[i32]) -> Result<Self> {
        let mut letters = self.letters.clone();
        let at = at.min(letters.len());
        letters.splice(at..at, inserted.iter().copied());
        Self::new(self.strands, letters)
    }

    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}; w=", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses `s=<int>; w=<comma-separated signed ints>`. Whitespace is ignored
/// around tokens and the word may be empty.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut strands = None;
    let mut word = None;
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found `{part}`")))?;
        match key.trim() {
            "s" => {
                let v = value.trim();
                let n: usize = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid strand count `{v}`")))?;
                strands = Some(n);
            }
            "w" => {
                let mut letters = Vec::new();
                let v = value.trim();
                if !v.is_empty() {
                    for tok in v.split(',') {
                        let tok = tok.trim();
                        let l: i32 = tok
                            .parse()
                            .map_err(|_| Error::Parse(format!("invalid braid letter `{tok}`")))?;
                        letters.push(l);
                    }
                }
                word = Some(letters);
            }
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
    }
    let strands = strands.ok_or_else(|| Error::Parse("missing `s=<strands>`".into()))?;
    let letters = word.ok_or_else(|| Error::Parse("missing `w=<letters>`".into()))?;
    for &l in &letters {
        if l == 0 || l.unsigned_abs() as usize >= strands {
            return Err(Error::Parse(format!(
                "braid letter `{l}` out of range for {strands} strands"
            )));
        }
    }
    BraidWord::new(strands, letters)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Edge indices in counterclockwise order from the incoming under-strand.
    pub slots: [usize; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Whether the strand passes through slot `i` towards the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        match (slot, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (1, Sign::Positive) | (3, Sign::Negative) => false,
            _ => true,
        }
    }

    /// Pairs of slots joined by the given resolution bit.
    pub fn smoothing(&self, bit: bool) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.slots;
        if bit {
            [(a, d), (b, c)]
        } else {
            [(a, b), (c, d)]
        }
    }

    fn mirrored(&self) -> Self {
        let [a, b, c, d] = self.slots;
        let slots = match self.sign {
            Sign::Positive => [d, a, b, c],
            Sign::Negative => [b, c, d, a],
        };
        Self { slots, sign: self.sign.flip() }
    }
}

/// Position of an edge end: crossing index and slot index.
pub type SlotRef = (usize, usize);

/// An oriented link diagram with a marked edge.
///
/// Edges are `0..num_edges()`. An edge that occurs in no crossing is a free
/// circle (a zero-crossing component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    labels: Vec<u64>,
    marked: usize,
    /// `[tail, head]` of every edge that meets a crossing.
    ends: Vec<Option<[SlotRef; 2]>>,
}

impl PlanarDiagram {
    /// Builds a diagram from crossings over edge labels. Labels are
    /// renumbered to `0..n` in increasing order; `free_loops` extra free
    /// circles receive labels after the largest crossing label. The marked
    /// edge defaults to the lowest label.
    pub fn from_pd(
        crossings: &[([u64; 4], Sign)],
        free_loops: usize,
        marked: Option<u64>,
    ) -> Result<Self> {
        let mut label_set: BTreeSet<u64> = crossings.iter().flat_map(|(s, _)| *s).collect();
        let mut next = label_set.iter().next_back().map_or(1, |m| m + 1);
        for _ in 0..free_loops {
            label_set.insert(next);
            next += 1;
        }
        if label_set.is_empty() {
            return Err(Error::InvalidDiagram("diagram has no edges".into()));
        }
        let labels: Vec<u64> = label_set.into_iter().collect();
        let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let crossings: Vec<Crossing> = crossings
            .iter()
            .map(|(s, sign)| Crossing { slots: s.map(|l| index[&l]), sign: *sign })
            .collect();
        let marked = match marked {
            None => 0,
            Some(l) => *index
                .get(&l)
                .ok_or_else(|| Error::InvalidDiagram(format!("marked edge {l} is not an edge")))?,
        };
        Self::assemble(crossings, labels, marked)
    }

    fn assemble(crossings: Vec<Crossing>, labels: Vec<u64>, marked: usize) -> Result<Self> {
        let n = labels.len();
        let mut tails: Vec<Vec<SlotRef>> = vec![Vec::new(); n];
        let mut heads: Vec<Vec<SlotRef>> = vec![Vec::new(); n];
        for (ci, c) in crossings.iter().enumerate() {
            for (si, &e) in c.slots.iter().enumerate() {
                if e >= n {
                    return Err(Error::InvalidDiagram(format!("edge index {e} out of range")));
                }
                if c.is_incoming(si) {
                    heads[e].push((ci, si));
                } else {
                    tails[e].push((ci, si));
                }
            }
        }
        let mut ends = Vec::with_capacity(n);
        for e in 0..n {
            match (tails[e].as_slice(), heads[e].as_slice()) {
                ([], []) => ends.push(None),
                ([t], [h]) => ends.push(Some([*t, *h])),
                (t, h) => {
                    return Err(Error::InvalidDiagram(format!(
                        "edge {} has {} outgoing and {} incoming ends; each edge needs one of each \
                         (check crossing signs)",
                        labels[e],
                        t.len(),
                        h.len()
                    )))
                }
            }
        }
        if marked >= n {
            return Err(Error::InvalidDiagram(format!("marked edge index {marked} out of range")));
        }
        Ok(Self { crossings, labels, marked, ends })
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self::from_pd(&[], 1, None).expect("unknot is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    /// User-facing label of an edge index.
    pub fn label(&self, edge: usize) -> u64 {
        self.labels[edge]
    }

    pub fn marked_edge(&self) -> usize {
        self.marked
    }

    /// Moves the reduction point to the edge carrying `label`.
    pub fn with_marked_label(&self, label: u64) -> Result<Self> {
        let e = self
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::InvalidDiagram(format!("marked edge {label} is not an edge")))?;
        let mut d = self.clone();
        d.marked = e;
        Ok(d)
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// Edges that meet no crossing.
    pub fn free_loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_edges()).filter(|&e| self.ends[e].is_none())
    }

    /// `[tail, head]` slot positions of an edge, `None` for a free circle.
    pub fn edge_ends(&self, edge: usize) -> Option<[SlotRef; 2]> {
        self.ends[edge]
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.num_edges());
        for c in &self.crossings {
            uf.union(c.slots[0], c.slots[2]);
            uf.union(c.slots[1], c.slots[3]);
        }
        uf.count()
    }

    /// Number of connected pieces of the diagram's projection.
    pub fn split_pieces(&self) -> usize {
        let mut uf = UnionFind::new(self.num_edges());
        for c in &self.crossings {
            for s in 1..4 {
                uf.union(c.slots[0], c.slots[s]);
            }
        }
        uf.count()
    }

    /// Same projection with every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::mirrored).collect();
        Self::assemble(crossings, self.labels.clone(), self.marked).expect("mirror of a valid diagram")
    }
}

/// Closes a braid. Strands run upward; edges are labelled from 1, and the
/// edge labelled `p + 1` is the closure arc of strand `p + 1`. The marked edge
/// is strand 1's closure arc.
pub fn braid_to_diagram(b: &BraidWord) -> PlanarDiagram {
    let s = b.strands();
    let mut current: Vec<usize> = (0..s).collect();
    let mut next_edge = s;
    let mut crossings = Vec::with_capacity(b.crossings());
    for &letter in b.letters() {
        let p = letter.unsigned_abs() as usize - 1;
        let (bl, br) = (current[p], current[p + 1]);
        let (tl, tr) = (next_edge, next_edge + 1);
        next_edge += 2;
        // Counterclockwise around the crossing: BL, BR, TR, TL. The strand
        // BL -> TR is over at a positive crossing and under at a negative one.
        let crossing = if letter > 0 {
            Crossing { slots: [br, tr, tl, bl], sign: Sign::Positive }
        } else {
            Crossing { slots: [bl, br, tr, tl], sign: Sign::Negative }
        };
        crossings.push(crossing);
        current[p] = tl;
        current[p + 1] = tr;
    }
    // Identify each strand's last edge with its first (closure arc).
    let mut rename: Vec<usize> = (0..next_edge).collect();
    for (p, &last) in current.iter().enumerate() {
        rename[last] = p;
    }
    let mut used = vec![false; next_edge];
    for p in 0..s {
        used[p] = true;
    }
    for c in &mut crossings {
        for e in &mut c.slots {
            *e = rename[*e];
            used[*e] = true;
        }
    }
    // Compact numbering, closure arcs first.
    let mut compact = vec![usize::MAX; next_edge];
    let mut n = 0;
    for e in 0..next_edge {
        if used[e] {
            compact[e] = n;
            n += 1;
        }
    }
    for c in &mut crossings {
        for e in &mut c.slots {
            *e = compact[*e];
        }
    }
    let labels = (1..=n as u64).collect();
    PlanarDiagram::assemble(crossings, labels, 0).expect("braid closure is a valid diagram")
}

#[derive(Deserialize)]
struct PdJson {
    pd: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    marked: Option<u64>,
    #[serde(default)]
    free_loops: Option<usize>,
}

/// Parses `{"pd": [[a,b,c,d,"+"|"-"], ...], "marked": e}`. An empty `pd`
/// list is the unknot; `"free_loops": n` adds zero-crossing components.
pub fn parse_pd_json(text: &str) -> Result<PlanarDiagram> {
    let raw: PdJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("PD JSON: {e}")))?;
    let mut crossings = Vec::with_capacity(raw.pd.len());
    for (i, entry) in raw.pd.iter().enumerate() {
        if entry.len() != 5 {
            return Err(Error::Parse(format!(
                "PD crossing {i} must be [a,b,c,d,\"+|-\"], found {} fields",
                entry.len()
            )));
        }
        let mut slots = [0u64; 4];
        for (k, v) in entry[..4].iter().enumerate() {
            slots[k] = v
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("PD crossing {i}: edge label `{v}` is not a nonnegative integer")))?;
        }
        let sign = match entry[4].as_str() {
            Some("+") => Sign::Positive,
            Some("-") => Sign::Negative,
            _ => {
                return Err(Error::Parse(format!(
                    "PD crossing {i}: sign `{}` must be \"+\" or \"-\"",
                    entry[4]
                )))
            }
        };
        crossings.push((slots, sign));
    }
    let free = raw.free_loops.unwrap_or(if crossings.is_empty() { 1 } else { 0 });
    PlanarDiagram::from_pd(&crossings, free, raw.marked)
}

/// Serializes a diagram in the PD JSON input format.
pub fn to_pd_json(d: &PlanarDiagram) -> String {
    let pd: Vec<serde_json::Value> = d
        .crossings()
        .iter()
        .map(|c| {
            let mut v: Vec<serde_json::Value> =
                c.slots.iter().map(|&e| serde_json::Value::from(d.label(e))).collect();
            v.push(if c.sign == Sign::Positive { "+".into() } else { "-".into() });
            serde_json::Value::Array(v)
        })
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert("pd".into(), serde_json::Value::Array(pd));
    obj.insert("marked".into(), d.label(d.marked_edge()).into());
    let loops = d.free_loops().count();
    if loops > 0 {
        obj.insert("free_loops".into(), loops.into());
    }
    serde_json::Value::Object(obj).to_string()
}

/// A point of `{0,1}^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionVector {
    bits: Vec<bool>,
}

impl ResolutionVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(m: usize) -> Self {
        Self { bits: vec![false; m] }
    }

    /// Bit `j` of `mask` is coordinate `j`.
    pub fn from_mask(mask: u64, m: usize) -> Self {
        Self { bits: (0..m).map(|j| mask >> j & 1 == 1).collect() }
    }

    pub fn to_mask(&self) -> u64 {
        self.bits.iter().enumerate().fold(0, |acc, (j, &b)| acc | (b as u64) << j)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `|I|`, the number of 1-coordinates.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Circles of a fully resolved diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSet {
    /// Circle index of every edge; circles are numbered by their lowest edge.
    pub circle_of_edge: Vec<usize>,
    pub count: usize,
    pub marked: usize,
}

impl CircleSet {
    /// The edges making up each circle.
    pub fn circles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (e, &c) in self.circle_of_edge.iter().enumerate() {
            out[c].push(e);
        }
        out
    }
}

pub fn resolve(d: &PlanarDiagram, res: &ResolutionVector) -> Result<CircleSet> {
    if res.len() != d.crossing_count() {
        return Err(Error::ResolutionLength { expected: d.crossing_count(), got: res.len() });
    }
    Ok(resolve_mask(d, res.to_mask()))
}

/// Resolution by bitmask; bit `j` is the resolution of crossing `j`.
pub(crate) fn resolve_mask(d: &PlanarDiagram, mask: u64) -> CircleSet {
    let mut uf = UnionFind::new(d.num_edges());
    for (j, c) in d.crossings().iter().enumerate() {
        for (x, y) in c.smoothing(mask >> j & 1 == 1) {
            uf.union(x, y);
        }
    }
    let mut id = vec![usize::MAX; d.num_edges()];
    let mut circle_of_edge = vec![0; d.num_edges()];
    let mut count = 0;
    for e in 0..d.num_edges() {
        let r = uf.find(e);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        circle_of_edge[e] = id[r];
    }
    let marked = circle_of_edge[d.marked_edge()];
    CircleSet { circle_of_edge, count, marked }
}

/// `I^o`: 0 at positive crossings, 1 at negative crossings.
pub fn oriented_resolution(d: &PlanarDiagram) -> ResolutionVector {
    ResolutionVector::new(d.crossings().iter().map(|c| c.sign == Sign::Negative).collect())
}

/// Number of Seifert circles.
pub fn seifert_circles(d: &PlanarDiagram) -> usize {
    resolve_mask(d, oriented_resolution(d).to_mask()).count
}

/// Splices `d2` into `d1` along their marked edges. The result is marked on
/// the splice edge leaving `d1`.
pub fn connected_sum(d1: &PlanarDiagram, d2: &PlanarDiagram) -> PlanarDiagram {
    let offset = d1.num_edges();
    let e1 = d1.marked_edge();
    let e2 = d2.marked_edge();
    let mut crossings: Vec<Crossing> = d1.crossings().to_vec();
    let shifted: Vec<Crossing> = d2
        .crossings()
        .iter()
        .map(|c| Crossing { slots: c.slots.map(|e| e + offset), sign: c.sign })
        .collect();
    let base = crossings.len();
    crossings.extend(shifted);

    let mut dropped = None;
    let marked = match (d1.edge_ends(e1), d2.edge_ends(e2)) {
        // A free circle absorbs into the other summand.
        (_, None) => {
            dropped = Some(e2 + offset);
            e1
        }
        (None, Some(_)) => {
            dropped = Some(e1);
            e2 + offset
        }
        (Some([_, (b_cross, b_slot)]), Some([_, (d_cross, d_slot)])) => {
            // e1: A -> B in d1, e2: C -> D in d2. Rewire as A -> D (keeps e1)
            // and C -> B (keeps e2).
            crossings[b_cross].slots[b_slot] = e2 + offset;
            crossings[base + d_cross].slots[d_slot] = e1;
            e1
        }
    };
    let mut labels = Vec::new();
    let mut renumber = vec![usize::MAX; offset + d2.num_edges()];
    for e in 0..offset + d2.num_edges() {
        if Some(e) != dropped {
            renumber[e] = labels.len();
            labels.push(labels.len() as u64 + 1);
        }
    }
    for c in &mut crossings {
        for e in &mut c.slots {
            *e = renumber[*e];
        }
    }
    PlanarDiagram::assemble(crossings, labels, renumber[marked]).expect("connected sum is valid")
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), components: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.components
    }
}
