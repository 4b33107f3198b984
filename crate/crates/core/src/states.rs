//! Kauffman states of a braid word, their resolutions into Temperley-Lieb
//! words with tracked loops, enhanced states and the case table for single
//! components of the Khovanov differential.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::tl::{Pairing, TlWord};

/// Crossing masks are stored in a `u64`, bit `p - 1` for crossing `p`.
pub const MAX_CROSSINGS: usize = 63;

#[inline]
pub(crate) fn bit(p: usize) -> u64 {
    1u64 << (p - 1)
}

/// Key ordering a `width`-bit mask by its string form, bit 0 written first.
#[inline]
fn lex_key(mask: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - width)
    }
}

#[inline]
fn from_lex_key(key: u64, width: usize) -> u64 {
    lex_key(key, width)
}

fn mask_string(mask: u64, width: usize, zero: char, one: char) -> String {
    (0..width).map(|j| if mask >> j & 1 == 1 { one } else { zero }).collect()
}

/// A choice of resolution at every crossing. A set bit means the crossing is
/// barred (1-resolution, read as `e_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KauffmanState {
    crossings: usize,
    bars: u64,
}

impl KauffmanState {
    pub fn new(crossings: usize, bars: u64) -> Result<Self> {
        if crossings > MAX_CROSSINGS {
            return Err(Error::Unsupported(format!("{crossings} crossings exceeds the limit of {MAX_CROSSINGS}")));
        }
        if crossings < 64 && bars >> crossings != 0 {
            return Err(Error::domain(format!("bar mask {bars:#b} wider than {crossings} crossings")));
        }
        Ok(KauffmanState { crossings, bars })
    }

    pub fn unbarred(crossings: usize) -> Self {
        KauffmanState { crossings, bars: 0 }
    }

    /// Parses a string like `"0110"`, crossing 1 first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bars = 0;
        for (j, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' if j < 64 => bars |= 1 << j,
                _ => return Err(Error::Parse(format!("bad bar string `{text}`"))),
            }
        }
        KauffmanState::new(text.chars().count(), bars)
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn bars(&self) -> u64 {
        self.bars
    }

    /// Number of barred crossings, `r_s`.
    pub fn barred_count(&self) -> usize {
        self.bars.count_ones() as usize
    }

    pub fn is_barred(&self, p: usize) -> bool {
        self.bars & bit(p) != 0
    }

    pub fn with_bar(&self, p: usize) -> Self {
        KauffmanState { crossings: self.crossings, bars: self.bars | bit(p) }
    }

    pub fn without_bar(&self, p: usize) -> Self {
        KauffmanState { crossings: self.crossings, bars: self.bars & !bit(p) }
    }

    pub fn barred(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.crossings).filter(|&p| self.is_barred(p))
    }

    pub fn unbarred_crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.crossings).filter(|&p| !self.is_barred(p))
    }

    pub fn bars_string(&self) -> String {
        mask_string(self.bars, self.crossings, '0', '1')
    }
}

impl Ord for KauffmanState {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.crossings, self.barred_count(), lex_key(self.bars, self.crossings)).cmp(&(
            other.crossings,
            other.barred_count(),
            lex_key(other.bars, other.crossings),
        ))
    }
}

impl PartialOrd for KauffmanState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bars_string())
    }
}

/// All `2^t` states, grouped by number of bars and lexicographic inside a
/// group.
pub fn enumerate_states(b: &BraidWord) -> Result<Vec<KauffmanState>> {
    let t = b.len();
    if t > 30 {
        return Err(Error::Unsupported(format!("2^{t} states is too many to enumerate")));
    }
    let mut out: Vec<KauffmanState> = (0..1u64 << t).map(|bars| KauffmanState { crossings: t, bars }).collect();
    out.sort();
    Ok(out)
}

/// A closed loop of a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Loop {
    pub id: usize,
    /// Leftmost barred crossing on the loop, `ℓ(C)`.
    pub left: usize,
    /// Rightmost barred crossing on the loop, `r(C)`.
    pub right: usize,
    /// Barred crossings bordering the loop.
    pub boundary: u64,
}

impl Loop {
    pub fn touches(&self, p: usize) -> bool {
        self.boundary & bit(p) != 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub word: TlWord,
    /// Loops in closing order, so `right` is strictly increasing.
    pub loops: Vec<Loop>,
    pub through: Pairing,
    /// Crossing index for each position of `word`.
    pub origin: Vec<usize>,
}

impl Resolution {
    pub fn loop_with_boundary(&self, boundary: u64) -> Option<usize> {
        self.loops.iter().position(|l| l.boundary == boundary)
    }

    pub fn loop_with_ends(&self, left: usize, right: usize) -> Option<usize> {
        self.loops.iter().position(|l| l.left == left && l.right == right)
    }
}

struct Segments {
    parent: Vec<usize>,
    crossings: Vec<u64>,
}

impl Segments {
    fn with_capacity(cap: usize) -> Self {
        Segments { parent: Vec::with_capacity(cap), crossings: Vec::with_capacity(cap) }
    }

    fn push(&mut self, crossings: u64) -> usize {
        self.parent.push(self.parent.len());
        self.crossings.push(crossings);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Sweeps the crossings left to right. A barred crossing on rows `i, i+1`
/// caps the two frontier segments there (closing a loop when they are
/// already joined) and starts a fresh cup segment.
pub fn resolve(b: &BraidWord, s: KauffmanState) -> Resolution {
    let n = b.strands();
    assert_eq!(s.crossings(), b.len(), "state does not match braid length");
    let mut seg = Segments::with_capacity(n + s.barred_count());
    let mut frontier: Vec<usize> = (0..n).map(|_| seg.push(0)).collect();
    let mut loops = Vec::new();
    let mut gens = Vec::with_capacity(s.barred_count());
    let mut origin = Vec::with_capacity(s.barred_count());
    for p in s.barred() {
        let i = b.generator(p);
        gens.push(i);
        origin.push(p);
        let (x, y) = (seg.find(frontier[i - 1]), seg.find(frontier[i]));
        if x == y {
            let boundary = seg.crossings[x] | bit(p);
            loops.push(Loop { id: loops.len(), left: boundary.trailing_zeros() as usize + 1, right: p, boundary });
        } else {
            seg.parent[y] = x;
            seg.crossings[x] |= seg.crossings[y] | bit(p);
        }
        let cup = seg.push(bit(p));
        frontier[i - 1] = cup;
        frontier[i] = cup;
    }
    // Each surviving arc has exactly two endpoints; group them by root.
    let mut ends: Vec<Option<usize>> = vec![None; seg.parent.len()];
    let mut partners = vec![0; 2 * n];
    let points = (0..n).map(|r| (r, r)).chain((0..n).map(|r| (frontier[r], n + r)));
    for (segment, point) in points {
        let root = seg.find(segment);
        match ends[root].take() {
            Some(other) => {
                partners[other] = point;
                partners[point] = other;
            }
            None => ends[root] = Some(point),
        }
    }
    Resolution {
        word: TlWord::from_raw(n, gens),
        loops,
        through: Pairing::from_partners(partners).expect("resolution yields a perfect matching"),
        origin,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    Plus,
    Minus,
}

/// A Kauffman state with a `±` on each loop of its resolution. Bit `j` of
/// `marks` set means loop `j` carries `−`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedState {
    pub state: KauffmanState,
    pub loops: usize,
    pub marks: u64,
}

impl EnhancedState {
    pub fn new(state: KauffmanState, loops: usize, marks: u64) -> Result<Self> {
        if loops < 64 && marks >> loops != 0 {
            return Err(Error::domain("marks refer to a loop that does not exist"));
        }
        Ok(EnhancedState { state, loops, marks })
    }

    pub fn mark(&self, loop_id: usize) -> Mark {
        if self.marks >> loop_id & 1 == 1 {
            Mark::Minus
        } else {
            Mark::Plus
        }
    }

    pub fn minus_count(&self) -> usize {
        self.marks.count_ones() as usize
    }

    /// `deg = #(+) − #(−)`.
    pub fn degree(&self) -> i64 {
        self.loops as i64 - 2 * self.minus_count() as i64
    }

    pub fn marks_string(&self) -> String {
        mask_string(self.marks, self.loops, '+', '-')
    }

    /// Parses `"+-"` style markings.
    pub fn parse_marks(text: &str) -> Result<u64> {
        let mut marks = 0;
        for (j, c) in text.chars().enumerate() {
            match c {
                '+' => {}
                '-' if j < 64 => marks |= 1 << j,
                _ => return Err(Error::Parse(format!("bad marking `{text}`"))),
            }
        }
        Ok(marks)
    }
}

impl Ord for EnhancedState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.state.cmp(&other.state).then_with(|| {
            (self.loops, lex_key(self.marks, self.loops)).cmp(&(other.loops, lex_key(other.marks, other.loops)))
        })
    }
}

impl PartialOrd for EnhancedState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.state)?;
        if self.loops > 0 {
            write!(f, ", {}", self.marks_string())?;
        }
        f.write_str(")")
    }
}

/// Every marking of `loops` loops, in lexicographic order with `+ < −`.
pub fn markings(loops: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << loops).map(move |key| from_lex_key(key, loops))
}

/// Which formula produces `q`. The two agree term by term once `h = r_s − c_−`
/// is substituted; both are kept so reports can state which one was used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradingConvention {
    /// `q = deg + h + c_+ − c_−`
    #[default]
    Printed,
    /// `q = deg + r_s + c_+ − 2c_−`
    ModuleShift,
}

pub fn gradings(b: &BraidWord, e: &EnhancedState, convention: GradingConvention) -> (i64, i64) {
    let r = e.state.barred_count() as i64;
    let cp = b.positive_crossings() as i64;
    let cm = b.negative_crossings() as i64;
    let h = r - cm;
    let q = match convention {
        GradingConvention::Printed => e.degree() + h + cp - cm,
        GradingConvention::ModuleShift => e.degree() + r + cp - 2 * cm,
    };
    (h, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SaddleKind {
    /// Two loops merge into one.
    Merge,
    /// One loop splits in two.
    Split,
    /// A loop joins an arc.
    LoopIntoArc,
    /// An arc pinches off a new loop.
    ArcSplitsLoop,
    /// Two arcs exchange ends; no loop changes.
    ArcArc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coefficient {
    /// An identity map after delooping.
    Unit,
    /// Nonzero but carrying a dot.
    Dotted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub target: EnhancedState,
    pub crossing: usize,
    pub kind: SaddleKind,
    pub coefficient: Coefficient,
}

/// Loops of `target` matched to loops of `source` by boundary set. Loops that
/// avoid the active crossing are the same curve in both resolutions.
struct LoopMatch {
    /// For each target loop, its source loop if unchanged.
    kept: Vec<Option<usize>>,
    removed: Vec<usize>,
    created: Vec<usize>,
}

fn match_loops(source: &Resolution, target: &Resolution) -> LoopMatch {
    let kept: Vec<Option<usize>> = target.loops.iter().map(|l| source.loop_with_boundary(l.boundary)).collect();
    let removed = (0..source.loops.len()).filter(|j| !kept.contains(&Some(*j))).collect();
    let created = (0..target.loops.len()).filter(|&j| kept[j].is_none()).collect();
    LoopMatch { kept, removed, created }
}

/// All nonzero single components of `d(e)` along the saddle at `crossing`,
/// given the resolutions before and after barring it.
pub fn saddle_components(
    e: &EnhancedState,
    crossing: usize,
    source: &Resolution,
    target: &Resolution,
) -> Vec<Component> {
    debug_assert!(!e.state.is_barred(crossing));
    let state = e.state.with_bar(crossing);
    let m = match_loops(source, target);
    let mut carried = 0u64;
    for (j, k) in m.kept.iter().enumerate() {
        if let Some(k) = *k {
            if e.marks >> k & 1 == 1 {
                carried |= 1 << j;
            }
        }
    }
    let loops = target.loops.len();
    let emit = |marks: u64, kind: SaddleKind, coefficient: Coefficient| Component {
        target: EnhancedState { state, loops, marks },
        crossing,
        kind,
        coefficient,
    };
    let minus = |j: usize| e.marks >> j & 1 == 1;
    use Coefficient::*;
    match (m.removed.as_slice(), m.created.as_slice()) {
        ([a, b], [c]) => match (minus(*a), minus(*b)) {
            (false, false) => vec![emit(carried, SaddleKind::Merge, Unit)],
            (true, true) => vec![],
            _ => vec![emit(carried | 1 << c, SaddleKind::Merge, Unit)],
        },
        ([a], [c, d]) => {
            let (c, d) = (1u64 << c, 1u64 << d);
            if minus(*a) {
                vec![emit(carried | c | d, SaddleKind::Split, Unit)]
            } else {
                vec![emit(carried | d, SaddleKind::Split, Unit), emit(carried | c, SaddleKind::Split, Unit)]
            }
        }
        ([a], []) => {
            let coefficient = if minus(*a) { Dotted } else { Unit };
            vec![emit(carried, SaddleKind::LoopIntoArc, coefficient)]
        }
        ([], [c]) => vec![
            emit(carried | 1 << c, SaddleKind::ArcSplitsLoop, Unit),
            emit(carried, SaddleKind::ArcSplitsLoop, Dotted),
        ],
        ([], []) => vec![emit(carried, SaddleKind::ArcArc, Unit)],
        (removed, created) => unreachable!(
            "a saddle at crossing {crossing} removed {} and created {} loops",
            removed.len(),
            created.len()
        ),
    }
}

/// Uncached form of [`StateSpace::differential_components`].
pub fn differential_components(b: &BraidWord, e: &EnhancedState) -> Vec<Component> {
    let source = resolve(b, e.state);
    e.state
        .unbarred_crossings()
        .flat_map(|c| saddle_components(e, c, &source, &resolve(b, e.state.with_bar(c))))
        .collect()
}

/// All states of one braid with their resolutions computed once.
pub struct StateSpace {
    braid: BraidWord,
    convention: GradingConvention,
    states: Vec<KauffmanState>,
    /// Indexed by bar mask.
    resolutions: Vec<Resolution>,
}

impl StateSpace {
    pub fn new(braid: BraidWord, convention: GradingConvention) -> Result<Self> {
        let states = enumerate_states(&braid)?;
        let t = braid.len();
        let resolutions =
            (0..1u64 << t).into_par_iter().map(|bars| resolve(&braid, KauffmanState { crossings: t, bars })).collect();
        Ok(StateSpace { braid, convention, states, resolutions })
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn convention(&self) -> GradingConvention {
        self.convention
    }

    /// States in the canonical order.
    pub fn states(&self) -> &[KauffmanState] {
        &self.states
    }

    pub fn resolution(&self, s: KauffmanState) -> &Resolution {
        &self.resolutions[s.bars() as usize]
    }

    pub fn enhanced(&self, s: KauffmanState) -> impl Iterator<Item = EnhancedState> {
        let loops = self.resolution(s).loops.len();
        markings(loops).map(move |marks| EnhancedState { state: s, loops, marks })
    }

    /// Every enhanced state in the canonical order.
    pub fn enhanced_states(&self) -> Vec<EnhancedState> {
        self.states.iter().flat_map(|&s| self.enhanced(s)).collect()
    }

    pub fn enhanced_count(&self) -> usize {
        self.resolutions.iter().map(|r| 1usize << r.loops.len()).sum()
    }

    pub fn gradings(&self, e: &EnhancedState) -> (i64, i64) {
        gradings(&self.braid, e, self.convention)
    }

    /// Empty when `crossing` is already barred.
    pub fn components_at(&self, e: &EnhancedState, crossing: usize) -> Vec<Component> {
        if e.state.is_barred(crossing) {
            return Vec::new();
        }
        saddle_components(e, crossing, self.resolution(e.state), self.resolution(e.state.with_bar(crossing)))
    }

    pub fn differential_components(&self, e: &EnhancedState) -> Vec<Component> {
        e.state.unbarred_crossings().flat_map(|c| self.components_at(e, c)).collect()
    }
}
