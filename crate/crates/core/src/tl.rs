//! The Temperley-Lieb monoid `TL_n` at `δ = 1`.
//!
//! Words are sequences of generator indices `e_1 .. e_{n-1}`. Two words are
//! equivalent exactly when they evaluate to the same crossingless pairing of
//! the `2n` boundary points; closed loops are counted but never scale a word.
//! Rewriting is done with the seven local moves `a±`, `b±^{±1}` and `c`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::braid::{parse_indices, write_indices};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TlWord {
    strands: usize,
    gens: Vec<usize>,
}

impl TlWord {
    pub fn new(strands: usize, gens: Vec<usize>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::domain(format!("TL_n needs n >= 2, got {strands}")));
        }
        if let Some(&bad) = gens.iter().find(|&&g| g == 0 || g >= strands) {
            return Err(Error::domain(format!("generator e_{bad} out of range for TL_{strands}")));
        }
        Ok(TlWord { strands, gens })
    }

    pub fn identity(strands: usize) -> Self {
        TlWord { strands, gens: Vec::new() }
    }

    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        TlWord::new(strands, parse_indices(text)?)
    }

    pub(crate) fn from_raw(strands: usize, gens: Vec<usize>) -> Self {
        debug_assert!(gens.iter().all(|&g| g >= 1 && g < strands));
        TlWord { strands, gens }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for TlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("1");
        }
        write_indices(f, &self.gens)
    }
}

/// A crossingless matching of the `2n` boundary points of an `n`-strand
/// diagram. Left points are `0..n`, right points `n..2n`, both numbered from
/// the bottom strand up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pairing(Vec<usize>);

impl Pairing {
    pub fn identity(n: usize) -> Self {
        Pairing((0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect())
    }

    /// The pairing of the single generator `e_i`.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut p = Pairing::identity(n);
        let (lo, hi) = (i - 1, i);
        p.0[lo] = hi;
        p.0[hi] = lo;
        p.0[n + lo] = n + hi;
        p.0[n + hi] = n + lo;
        p
    }

    pub fn from_partners(partners: Vec<usize>) -> Result<Self> {
        let len = partners.len();
        if !len.is_multiple_of(2) || len == 0 {
            return Err(Error::domain("pairing needs an even, nonzero number of points"));
        }
        for (a, &b) in partners.iter().enumerate() {
            if b >= len || b == a || partners[b] != a {
                return Err(Error::domain("pairing is not a fixed-point-free involution"));
            }
        }
        Ok(Pairing(partners))
    }

    pub fn strands(&self) -> usize {
        self.0.len() / 2
    }

    pub fn partner(&self, point: usize) -> usize {
        self.0[point]
    }

    pub fn partners(&self) -> &[usize] {
        &self.0
    }

    /// Number of through strands (arcs joining a left point to a right point).
    pub fn through_strands(&self) -> usize {
        let n = self.strands();
        (0..n).filter(|&p| self.0[p] >= n).count()
    }

    /// True when no two arcs cross with points placed around a circle
    /// (left column bottom to top, then right column top to bottom).
    pub fn is_planar(&self) -> bool {
        let n = self.strands();
        let around = |p: usize| if p < n { p } else { 3 * n - 1 - p };
        let arcs: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&p| p < self.0[p])
            .map(|p| {
                let (a, b) = (around(p), around(self.0[p]));
                (a.min(b), a.max(b))
            })
            .collect();
        arcs.iter().all(|&(a, b)| arcs.iter().all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b))))
    }

    /// Number of circles obtained by joining right point `i` to left point `i`
    /// for every strand (the trace closure).
    pub fn closure_cycles(&self) -> usize {
        let n = self.strands();
        let mut seen = vec![false; 2 * n];
        let mut cycles = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.0[p];
                seen[q] = true;
                // leave through the closure strand
                p = if q < n { q + n } else { q - n };
                if seen[p] {
                    break;
                }
            }
        }
        cycles
    }
}

/// The evaluation of a word: its pairing plus the closed loops produced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TlDiagram {
    pub pairing: Pairing,
    pub loops: usize,
}

impl TlDiagram {
    pub fn identity(n: usize) -> Self {
        TlDiagram { pairing: Pairing::identity(n), loops: 0 }
    }

    pub fn strands(&self) -> usize {
        self.pairing.strands()
    }

    /// Stacks `self` to the left of `other`: the right boundary of `self` is
    /// glued to the left boundary of `other`.
    pub fn compose(&self, other: &TlDiagram) -> TlDiagram {
        let n = self.strands();
        assert_eq!(n, other.strands(), "composing diagrams on different strand counts");
        let a = &self.pairing.0;
        let b = &other.pairing.0;
        // External points: 0..n are a's left points, n..2n are b's right points.
        // Middle points m in 0..n are a's right point n+m == b's left point m.
        let mut result = vec![usize::MAX; 2 * n];
        let mut middle_seen = vec![false; n];
        for start in 0..2 * n {
            if result[start] != usize::MAX {
                continue;
            }
            // (in_a, point) where point is in that diagram's own numbering
            let (mut in_a, mut p) = if start < n { (true, start) } else { (false, start) };
            let end = loop {
                if in_a {
                    let q = a[p];
                    if q < n {
                        break q;
                    }
                    middle_seen[q - n] = true;
                    in_a = false;
                    p = q - n;
                } else {
                    let q = b[p];
                    if q >= n {
                        break q;
                    }
                    middle_seen[q] = true;
                    in_a = true;
                    p = q + n;
                }
            };
            result[start] = end;
            result[end] = start;
        }
        // Any middle point untouched by an external path lies on a closed loop.
        let mut loops = 0;
        for m0 in 0..n {
            if middle_seen[m0] {
                continue;
            }
            loops += 1;
            let mut m = m0;
            loop {
                middle_seen[m] = true;
                let left = a[m + n];
                debug_assert!(left >= n);
                let m1 = left - n;
                middle_seen[m1] = true;
                let right = b[m1];
                debug_assert!(right < n);
                m = right;
                if middle_seen[m] {
                    break;
                }
            }
        }
        TlDiagram { pairing: Pairing(result), loops: self.loops + other.loops + loops }
    }
}

/// Planar evaluation of a word, composing generators left to right.
pub fn evaluate(w: &TlWord) -> TlDiagram {
    let n = w.strands;
    w.gens
        .iter()
        .fold(TlDiagram::identity(n), |d, &i| d.compose(&TlDiagram { pairing: Pairing::generator(n, i), loops: 0 }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// `e_i → e_i e_i`
    APlus,
    /// `e_i e_i → e_i`
    AMinus,
    /// `e_i → e_i e_{i+1} e_i`
    BPlusUp,
    /// `e_i e_{i+1} e_i → e_i`
    BMinusUp,
    /// `e_i → e_i e_{i-1} e_i`
    BPlusDown,
    /// `e_i e_{i-1} e_i → e_i`
    BMinusDown,
    /// `e_i e_j → e_j e_i` for `|i - j| >= 2`
    Commute,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::APlus,
        MoveKind::AMinus,
        MoveKind::BPlusUp,
        MoveKind::BMinusUp,
        MoveKind::BPlusDown,
        MoveKind::BMinusDown,
        MoveKind::Commute,
    ];

    /// Change in word length caused by the move.
    pub fn length_change(self) -> isize {
        match self {
            MoveKind::APlus => 1,
            MoveKind::AMinus => -1,
            MoveKind::BPlusUp | MoveKind::BPlusDown => 2,
            MoveKind::BMinusUp | MoveKind::BMinusDown => -2,
            MoveKind::Commute => 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            MoveKind::APlus => "a+",
            MoveKind::AMinus => "a-",
            MoveKind::BPlusUp => "b+^1",
            MoveKind::BMinusUp => "b-^1",
            MoveKind::BPlusDown => "b+^-1",
            MoveKind::BMinusDown => "b-^-1",
            MoveKind::Commute => "c",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A move applied at a 1-based word position (the left end of its pattern).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TlMove {
    pub kind: MoveKind,
    pub site: usize,
}

impl TlMove {
    pub fn new(kind: MoveKind, site: usize) -> Self {
        TlMove { kind, site }
    }
}

impl fmt::Display for TlMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.site)
    }
}

/// Rewrites `gens` in place; `p` is 0-based. Returns false when the left-hand
/// side of the move is not present.
fn rewrite(gens: &mut Vec<usize>, n: usize, kind: MoveKind, p: usize) -> bool {
    let at = |q: usize| gens.get(q).copied();
    match kind {
        MoveKind::APlus => match at(p) {
            Some(i) => {
                gens.insert(p, i);
                true
            }
            None => false,
        },
        MoveKind::AMinus => match (at(p), at(p + 1)) {
            (Some(i), Some(j)) if i == j => {
                gens.remove(p);
                true
            }
            _ => false,
        },
        MoveKind::BPlusUp => match at(p) {
            Some(i) if i + 1 < n => {
                gens.splice(p + 1..p + 1, [i + 1, i]);
                true
            }
            _ => false,
        },
        MoveKind::BPlusDown => match at(p) {
            Some(i) if i >= 2 => {
                gens.splice(p + 1..p + 1, [i - 1, i]);
                true
            }
            _ => false,
        },
        MoveKind::BMinusUp => match (at(p), at(p + 1), at(p + 2)) {
            (Some(i), Some(j), Some(k)) if i == k && j == i + 1 => {
                gens.drain(p + 1..p + 3);
                true
            }
            _ => false,
        },
        MoveKind::BMinusDown => match (at(p), at(p + 1), at(p + 2)) {
            (Some(i), Some(j), Some(k)) if i == k && j + 1 == i => {
                gens.drain(p + 1..p + 3);
                true
            }
            _ => false,
        },
        MoveKind::Commute => match (at(p), at(p + 1)) {
            (Some(i), Some(j)) if i.abs_diff(j) >= 2 => {
                gens.swap(p, p + 1);
                true
            }
            _ => false,
        },
    }
}

pub fn apply_move(w: &TlWord, m: TlMove) -> Result<TlWord> {
    let mut gens = w.gens.clone();
    if m.site == 0 || !rewrite(&mut gens, w.strands, m.kind, m.site - 1) {
        return Err(Error::MoveInapplicable { kind: m.kind.to_string(), site: m.site, word: w.to_string() });
    }
    Ok(TlWord { strands: w.strands, gens })
}

/// Every move applicable to `w`, ordered by site and then kind.
pub fn applicable_moves(w: &TlWord) -> Vec<TlMove> {
    let mut out = Vec::new();
    for site in 1..=w.len() {
        for kind in MoveKind::ALL {
            let mut g = w.gens.clone();
            if rewrite(&mut g, w.strands, kind, site - 1) {
                out.push(TlMove::new(kind, site));
            }
        }
    }
    out
}

/// Decreasing runs `(i_ℓ, j_ℓ)` certifying that a word is in Jones normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JnfTuple {
    pub runs: Vec<(usize, usize)>,
}

impl JnfTuple {
    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(i, j)| i - j + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let ok_bounds = self.runs.iter().all(|&(i, j)| 0 < j && j <= i && i < n);
        let increasing = self.runs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        ok_bounds && increasing
    }

    pub fn word(&self, n: usize) -> TlWord {
        let gens = self.runs.iter().flat_map(|&(i, j)| (j..=i).rev()).collect();
        TlWord::from_raw(n, gens)
    }
}

/// Splits `w` into maximal decreasing runs and checks the normal-form
/// inequalities. The identity word is in normal form with no runs.
pub fn is_jnf(w: &TlWord) -> Option<JnfTuple> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &g in &w.gens {
        match runs.last_mut() {
            Some(run) if run.1 == g + 1 => run.1 = g,
            _ => runs.push((g, g)),
        }
    }
    let tuple = JnfTuple { runs };
    tuple.is_valid(w.strands).then_some(tuple)
}

/// A sequence of words, each obtained from the previous one by one move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TlPath {
    pub words: Vec<TlWord>,
    pub moves: Vec<TlMove>,
}

impl TlPath {
    pub fn trivial(w: TlWord) -> Self {
        TlPath { words: vec![w], moves: Vec::new() }
    }

    pub fn start(&self) -> &TlWord {
        &self.words[0]
    }

    pub fn end(&self) -> &TlWord {
        self.words.last().expect("path has at least one word")
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_monotone_decreasing(&self) -> bool {
        self.words.windows(2).all(|w| w[1].len() <= w[0].len())
    }

    /// Replays every move and checks it reproduces the recorded words.
    pub fn is_consistent(&self) -> bool {
        self.words.len() == self.moves.len() + 1
            && self
                .moves
                .iter()
                .zip(self.words.windows(2))
                .all(|(&m, w)| apply_move(&w[0], m).is_ok_and(|next| next == w[1]))
    }
}

impl fmt::Display for TlPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.words[0])?;
        for (m, w) in self.moves.iter().zip(&self.words[1..]) {
            write!(f, "\n{m}\t{w}")?;
        }
        Ok(())
    }
}

/// Builds a path by mutating one working word and recording every move.
struct Reducer {
    n: usize,
    word: Vec<usize>,
    path: TlPath,
}

impl Reducer {
    fn new(w: &TlWord) -> Self {
        Reducer { n: w.strands, word: w.gens.clone(), path: TlPath::trivial(w.clone()) }
    }

    fn apply(&mut self, kind: MoveKind, p: usize) {
        let ok = rewrite(&mut self.word, self.n, kind, p);
        assert!(ok, "internal reduction step {kind} at {} on {:?}", p + 1, self.word);
        self.path.moves.push(TlMove::new(kind, p + 1));
        self.path.words.push(TlWord::from_raw(self.n, self.word.clone()));
    }

    /// Applies `e_i e_i → e_i` and `e_i e_{i±1} e_i → e_i` inside `[lo, hi)`
    /// until neither pattern remains. Returns the new end of the segment.
    #[allow(clippy::mut_range_bound)] // every mutation restarts the scan
    fn greedy(&mut self, lo: usize, mut hi: usize) -> usize {
        'scan: loop {
            for p in lo..hi {
                let x = self.word[p];
                if p + 1 < hi && self.word[p + 1] == x {
                    self.apply(MoveKind::AMinus, p);
                    hi -= 1;
                    continue 'scan;
                }
                if p + 2 < hi && self.word[p + 2] == x {
                    let y = self.word[p + 1];
                    if y == x + 1 {
                        self.apply(MoveKind::BMinusUp, p);
                        hi -= 2;
                        continue 'scan;
                    }
                    if y + 1 == x {
                        self.apply(MoveKind::BMinusDown, p);
                        hi -= 2;
                        continue 'scan;
                    }
                }
            }
            return hi;
        }
    }

    /// Brings the segment `[lo, hi)`, whose letters are all `<= top`, into
    /// normal form. Induction on `top`: the `e_top` letters are collapsed to
    /// at most one, which is then pushed right onto the final decreasing run.
    fn normalize(&mut self, lo: usize, hi: usize, top: usize) -> usize {
        if top == 0 || lo >= hi {
            debug_assert!(lo >= hi);
            return hi;
        }
        let mut hi = self.greedy(lo, hi);
        loop {
            let tops: Vec<usize> = (lo..hi).filter(|&p| self.word[p] == top).collect();
            match tops.as_slice() {
                [] => return self.normalize(lo, hi, top - 1),
                [p] => {
                    let mut p = *p;
                    if top == 1 {
                        return hi;
                    }
                    hi = self.normalize(p + 1, hi, top - 1);
                    while p + 1 < hi && self.word[p + 1] + 2 <= top {
                        self.apply(MoveKind::Commute, p);
                        p += 1;
                    }
                    let head_end = self.normalize(lo, p, top - 1);
                    hi -= p - head_end;
                    p = head_end;
                    // [lo, p) is normal in TL_top; [p, hi) = e_top e_{top-1} ⋯ e_j.
                    if p == lo {
                        return hi;
                    }
                    let tail_low = self.word[hi - 1];
                    let head_low = self.word[p - 1];
                    if head_low < tail_low {
                        return hi;
                    }
                    // e_{head_low} slides right to meet e_{head_low+1} e_{head_low}.
                    let mut x = p - 1;
                    while self.word[x + 1] >= head_low + 2 {
                        self.apply(MoveKind::Commute, x);
                        x += 1;
                    }
                    self.apply(MoveKind::BMinusUp, x);
                    hi -= 2;
                }
                [p1, p2, ..] => {
                    let (p1, p2) = (*p1, *p2);
                    let mid_end = self.normalize(p1 + 1, p2, top - 1);
                    hi -= p2 - mid_end;
                    let p2 = mid_end;
                    match (p1 + 1..p2).find(|&x| self.word[x] == top - 1) {
                        Some(r) => {
                            let mut a = p1;
                            while a + 1 < r {
                                self.apply(MoveKind::Commute, a);
                                a += 1;
                            }
                            let mut b = p2;
                            while b > r + 1 {
                                self.apply(MoveKind::Commute, b - 1);
                                b -= 1;
                            }
                            self.apply(MoveKind::BMinusDown, r - 1);
                            hi -= 2;
                        }
                        None => {
                            let mut b = p2;
                            while b > p1 + 1 {
                                self.apply(MoveKind::Commute, b - 1);
                                b -= 1;
                            }
                            self.apply(MoveKind::AMinus, p1);
                            hi -= 1;
                        }
                    }
                }
            }
        }
    }
}

/// A monotone decreasing path from `w` to its Jones normal form.
pub fn reduce_to_jnf(w: &TlWord) -> TlPath {
    let mut r = Reducer::new(w);
    let top = w.gens.iter().copied().max().unwrap_or(0);
    let end = r.normalize(0, w.len(), top);
    debug_assert_eq!(end, r.word.len());
    r.path
}

pub fn jnf(w: &TlWord) -> TlWord {
    reduce_to_jnf(w).end().clone()
}

/// The moves allowed in the restricted reduction: `e_{n-1}^2 → e_{n-1}`,
/// distant commutation, and `e_i e_{i-1} e_i → e_i`.
pub fn d_moves(w: &TlWord) -> Vec<TlMove> {
    let n = w.strands;
    let g = &w.gens;
    let mut out = Vec::new();
    for p in 0..g.len() {
        if p + 1 < g.len() {
            if g[p] == n - 1 && g[p + 1] == n - 1 {
                out.push(TlMove::new(MoveKind::AMinus, p + 1));
            }
            if g[p].abs_diff(g[p + 1]) >= 2 {
                out.push(TlMove::new(MoveKind::Commute, p + 1));
            }
        }
        if p + 2 < g.len() && g[p] == g[p + 2] && g[p] >= 2 && g[p + 1] + 1 == g[p] {
            out.push(TlMove::new(MoveKind::BMinusDown, p + 1));
        }
    }
    out
}

/// Breadth-first search for a path to normal form using only the restricted
/// moves. Ties are broken by the smallest site.
pub fn d_move_reduce(w: &TlWord) -> Option<TlPath> {
    if is_jnf(w).is_some() {
        return Some(TlPath::trivial(w.clone()));
    }
    let mut parent: HashMap<TlWord, (TlWord, TlMove)> = HashMap::new();
    let mut seen: HashSet<TlWord> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for m in d_moves(&cur) {
            let next = apply_move(&cur, m).expect("d-move was generated as applicable");
            if !seen.insert(next.clone()) {
                continue;
            }
            parent.insert(next.clone(), (cur.clone(), m));
            if is_jnf(&next).is_some() {
                let mut words = vec![next.clone()];
                let mut moves = Vec::new();
                let mut at = next;
                while let Some((prev, m)) = parent.get(&at) {
                    moves.push(*m);
                    words.push(prev.clone());
                    at = prev.clone();
                }
                words.reverse();
                moves.reverse();
                return Some(TlPath { words, moves });
            }
            queue.push_back(next);
        }
    }
    None
}

/// All words of length `h` in Jones normal form on `n` strands, generated
/// directly from admissible run tuples.
pub fn enumerate_jnf(n: usize, h: usize) -> Vec<TlWord> {
    fn extend(n: usize, remaining: usize, runs: &mut Vec<(usize, usize)>, out: &mut Vec<TlWord>) {
        if remaining == 0 {
            out.push(JnfTuple { runs: runs.clone() }.word(n));
            return;
        }
        let (last_i, last_j) = runs.last().copied().unwrap_or((0, 0));
        for i in last_i + 1..n {
            for j in last_j + 1..=i {
                let len = i - j + 1;
                if len > remaining {
                    continue;
                }
                runs.push((i, j));
                extend(n, remaining - len, runs, out);
                runs.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, h, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    let mut c = BigUint::from(1u32);
    for i in 0..n {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

/// Distinct pairings reachable from the identity by composing generators.
pub fn all_pairings(n: usize) -> HashSet<Pairing> {
    let gens: Vec<TlDiagram> = (1..n).map(|i| TlDiagram { pairing: Pairing::generator(n, i), loops: 0 }).collect();
    let id = Pairing::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        let d = TlDiagram { pairing: p, loops: 0 };
        for g in &gens {
            let next = d.compose(g).pairing;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}
