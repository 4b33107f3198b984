//! Integer Khovanov homology of a braid closure, computed directly from the
//! cube of resolutions. This path shares nothing with the whittler beyond
//! the braid word and is used to check it.

mod laurent;
pub mod snf;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::states::{enumerate_states, GradingConvention, KauffmanState};
use crate::tl::{evaluate, Pairing};

pub use laurent::LaurentPoly;
use snf::{smith, SparseMatrix};

/// Circles of the closed-up resolution of one state.
///
/// Nodes are the points `(column, row)` of the braid between consecutive
/// crossings, `column` in `0..=t`; circle `j` is the `j`-th component when
/// components are ordered by their smallest node.
#[derive(Clone, Debug)]
pub struct ClosureState {
    pub state: KauffmanState,
    pub circles: usize,
    /// Circle id of every node, indexed by `column * n + row`.
    node_circle: Vec<usize>,
}

impl ClosureState {
    pub fn circle_at(&self, n: usize, column: usize, row: usize) -> usize {
        self.node_circle[column * n + row]
    }
}

pub fn closure_state(b: &BraidWord, s: KauffmanState) -> ClosureState {
    let n = b.strands();
    let t = b.len();
    let node = |c: usize, r: usize| c * n + r;
    let mut uf = UnionFind::<usize>::new((t + 1) * n);
    for p in 1..=t {
        let i = b.generator(p);
        for r in 0..n {
            if r != i - 1 && r != i {
                uf.union(node(p - 1, r), node(p, r));
            }
        }
        if s.is_barred(p) {
            uf.union(node(p - 1, i - 1), node(p - 1, i));
            uf.union(node(p, i - 1), node(p, i));
        } else {
            uf.union(node(p - 1, i - 1), node(p, i - 1));
            uf.union(node(p - 1, i), node(p, i));
        }
    }
    for r in 0..n {
        uf.union(node(0, r), node(t, r));
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let node_circle = (0..(t + 1) * n)
        .map(|x| {
            let next = ids.len();
            *ids.entry(uf.find(x)).or_insert(next)
        })
        .collect();
    ClosureState { state: s, circles: ids.len(), node_circle }
}

/// A generator of the closure complex: a state and a sign on each circle
/// (bit `j` set means circle `j` carries `v_−`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosureGen {
    pub state_index: usize,
    pub marks: u64,
}

pub type Grading = (i64, i64);

pub struct IntComplex {
    pub braid: BraidWord,
    pub convention: GradingConvention,
    pub states: Vec<ClosureState>,
    /// Basis of each `(h, q)` slice.
    pub basis: BTreeMap<Grading, Vec<ClosureGen>>,
    /// `d: C^{h,q} → C^{h+1,q}` keyed by the source grading; rows index the
    /// target slice.
    pub differentials: BTreeMap<Grading, SparseMatrix>,
}

impl IntComplex {
    pub fn dimension(&self, h: i64) -> usize {
        self.basis.iter().filter(|((hh, _), _)| *hh == h).map(|(_, v)| v.len()).sum()
    }

    pub fn total_dimension(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut hs: Vec<i64> = self.basis.keys().map(|&(h, _)| h).collect();
        hs.dedup();
        hs
    }

    /// Checks `d^{h+1} ∘ d^h = 0` on every slice.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&(h, q), d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(h + 1, q)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::Internal(format!("d∘d ≠ 0 at (h, q) = ({h}, {q})")));
                }
            }
        }
        Ok(())
    }
}

fn closure_gradings(b: &BraidWord, s: KauffmanState, circles: usize, marks: u64, conv: GradingConvention) -> Grading {
    let r = s.barred_count() as i64;
    let cp = b.positive_crossings() as i64;
    let cm = b.negative_crossings() as i64;
    let deg = circles as i64 - 2 * marks.count_ones() as i64;
    let h = r - cm;
    let q = match conv {
        GradingConvention::Printed => deg + h + cp - cm,
        GradingConvention::ModuleShift => deg + r + cp - 2 * cm,
    };
    (h, q)
}

/// Builds the signed cube complex of the closure and verifies `d∘d = 0`.
pub fn close_and_build(b: &BraidWord, convention: GradingConvention) -> Result<IntComplex> {
    let n = b.strands();
    let states: Vec<ClosureState> = enumerate_states(b)?.into_par_iter().map(|s| closure_state(b, s)).collect();
    if states.iter().any(|c| c.circles > 62) {
        return Err(Error::Unsupported("more than 62 circles in one resolution".into()));
    }
    let index_of: HashMap<u64, usize> = states.iter().enumerate().map(|(j, c)| (c.state.bars(), j)).collect();

    let mut basis: BTreeMap<Grading, Vec<ClosureGen>> = BTreeMap::new();
    for (j, c) in states.iter().enumerate() {
        for marks in 0..1u64 << c.circles {
            let g = closure_gradings(b, c.state, c.circles, marks, convention);
            basis.entry(g).or_default().push(ClosureGen { state_index: j, marks });
        }
    }
    for v in basis.values_mut() {
        v.sort();
    }
    let position: HashMap<ClosureGen, usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(k, &g)| (g, k))).collect();

    // Each entry: (source grading, source position, target position, value).
    let entries: Vec<(Grading, usize, usize, i64)> = basis
        .par_iter()
        .flat_map_iter(|(&grading, gens)| {
            let mut out = Vec::new();
            for (col, g) in gens.iter().enumerate() {
                let src = &states[g.state_index];
                for p in src.state.unbarred_crossings() {
                    let dst = &states[index_of[&src.state.with_bar(p).bars()]];
                    let sign = if (src.state.bars() & ((1u64 << (p - 1)) - 1)).count_ones().is_multiple_of(2) {
                        1
                    } else {
                        -1
                    };
                    for marks in saddle_images(n, p, b.generator(p), src, dst, g.marks) {
                        let target = ClosureGen { state_index: index_of[&dst.state.bars()], marks };
                        let tg = closure_gradings(b, dst.state, dst.circles, marks, convention);
                        debug_assert_eq!(tg, (grading.0 + 1, grading.1));
                        out.push((grading, col, position[&target], sign));
                    }
                }
            }
            out
        })
        .collect();
    let mut differentials: BTreeMap<Grading, SparseMatrix> = BTreeMap::new();
    for (&(h, q), gens) in &basis {
        let rows = basis.get(&(h + 1, q)).map_or(0, Vec::len);
        differentials.insert((h, q), SparseMatrix::new(rows, gens.len()));
    }
    for (g, col, row, v) in entries {
        differentials.get_mut(&g).expect("slice exists").add(row, col, v);
    }
    let complex = IntComplex { braid: b.clone(), convention, states, basis, differentials };
    complex.check_square_zero()?;
    Ok(complex)
}

/// Images of one generator under the saddle at crossing `p` (generator `i`),
/// using `m` for merges and `Δ` for splits. Circles away from the saddle keep
/// their sign.
fn saddle_images(n: usize, p: usize, i: usize, src: &ClosureState, dst: &ClosureState, marks: u64) -> Vec<u64> {
    // Before: the two strands through the crossing. After: cap and cup.
    let a = src.circle_at(n, p - 1, i - 1);
    let b = src.circle_at(n, p - 1, i);
    let cap = dst.circle_at(n, p - 1, i - 1);
    let cup = dst.circle_at(n, p, i - 1);
    // Carry untouched circles over through any of their nodes.
    let mut carried = 0u64;
    let mut seen = vec![false; src.circles];
    for (x, &c) in src.node_circle.iter().enumerate() {
        if c == a || c == b || seen[c] {
            continue;
        }
        seen[c] = true;
        if marks >> c & 1 == 1 {
            carried |= 1 << dst.node_circle[x];
        }
    }
    let minus = |c: usize| marks >> c & 1 == 1;
    if a != b {
        debug_assert_eq!(cap, cup);
        match (minus(a), minus(b)) {
            (false, false) => vec![carried],
            (true, true) => vec![],
            _ => vec![carried | 1 << cap],
        }
    } else {
        debug_assert_ne!(cap, cup);
        if minus(a) {
            vec![carried | 1 << cap | 1 << cup]
        } else {
            vec![carried | 1 << cup, carried | 1 << cap]
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SliceHomology {
    pub h: i64,
    pub q: i64,
    pub dimension: usize,
    pub rank: usize,
    #[serde(serialize_with = "decimal_list")]
    pub torsion: Vec<BigUint>,
}

fn decimal_list<S: serde::Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub slices: Vec<SliceHomology>,
}

impl HomologySummary {
    /// Free rank of `H^h`, summed over `q`.
    pub fn rank(&self, h: i64) -> usize {
        self.slices.iter().filter(|s| s.h == h).map(|s| s.rank).sum()
    }

    pub fn torsion(&self, h: i64) -> Vec<BigUint> {
        self.slices.iter().filter(|s| s.h == h).flat_map(|s| s.torsion.clone()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.slices.iter().map(|s| s.rank).sum()
    }

    pub fn ranks_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for s in &self.slices {
            *out.entry(s.h).or_default() += s.rank;
        }
        out
    }

    /// `Σ (−1)^h rank H^{h,q} q^q`.
    pub fn graded_euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for s in &self.slices {
            let sign = if s.h % 2 == 0 { 1 } else { -1 };
            p.add_term(sign * s.rank as i64, s.q);
        }
        p
    }
}

pub fn homology(c: &IntComplex) -> HomologySummary {
    let ranks: BTreeMap<Grading, snf::SmithSummary> = c.differentials.par_iter().map(|(&g, d)| (g, smith(d))).collect();
    let slices = c
        .basis
        .iter()
        .map(|(&(h, q), gens)| {
            let out = ranks.get(&(h, q)).map_or(0, |s| s.rank);
            let incoming = ranks.get(&(h - 1, q));
            SliceHomology {
                h,
                q,
                dimension: gens.len(),
                rank: gens.len() - out - incoming.map_or(0, |s| s.rank),
                torsion: incoming.map(|s| s.torsion.clone()).unwrap_or_default(),
            }
        })
        .collect();
    HomologySummary { slices }
}

/// State sum of `(−1)^h q^q` over enhanced states, computed from the
/// Temperley-Lieb evaluation of each resolution rather than the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerSum {
    Closed(LaurentPoly),
    /// One polynomial per through-pairing of the open tangle.
    Open(BTreeMap<Pairing, LaurentPoly>),
}

pub fn euler_state_sum(b: &BraidWord, closed: bool, convention: GradingConvention) -> Result<EulerSum> {
    let cp = b.positive_crossings() as i64;
    let cm = b.negative_crossings() as i64;
    let terms: Vec<(Pairing, LaurentPoly)> = enumerate_states(b)?
        .into_par_iter()
        .map(|s| {
            let word = crate::tl::TlWord::new(b.strands(), s.barred().map(|p| b.generator(p)).collect())
                .expect("braid letters are valid generators");
            let d = evaluate(&word);
            let r = s.barred_count() as i64;
            let h = r - cm;
            let shift = match convention {
                GradingConvention::Printed => h + cp - cm,
                GradingConvention::ModuleShift => r + cp - 2 * cm,
            };
            let circles = d.loops + if closed { d.pairing.closure_cycles() } else { 0 };
            let sign = if h % 2 == 0 { 1 } else { -1 };
            let poly = &LaurentPoly::circle_power(circles) * &LaurentPoly::monomial(sign, shift);
            (d.pairing, poly)
        })
        .collect();
    if closed {
        let mut total = LaurentPoly::zero();
        for (_, p) in &terms {
            total += p;
        }
        Ok(EulerSum::Closed(total))
    } else {
        let mut by_pairing: BTreeMap<Pairing, LaurentPoly> = BTreeMap::new();
        for (pairing, p) in &terms {
            *by_pairing.entry(pairing.clone()).or_default() += p;
        }
        by_pairing.retain(|_, p| !p.is_zero());
        Ok(EulerSum::Open(by_pairing))
    }
}
