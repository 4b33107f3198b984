//! Distinguished Gaussian eliminations on the cube of a torus braid.
//!
//! A GE pair is a source/target pair of enhanced states joined by a unit
//! component of the differential that becomes an isomorphism after
//! delooping. Two patterns are recognised on a window `init .. init+n-1` of
//! crossings sharing a generator:
//!
//! * G1: `init` barred, `fin` unbarred, and barring `fin` closes a loop with
//!   ends `(init, fin)`; the target marks that loop `−`.
//! * G2: both barred, the loop `(init, fin)` exists and is marked `+`, and the
//!   crossing of generator `i+1` inside the window is unbarred; barring it
//!   absorbs the loop.
//!
//! One isomorphism is chosen per state by a left-to-right scan, degree by
//! degree. The eliminations are valid in any order compatible with the graph
//! of connecting maps, which is checked to be acyclic.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::states::{Coefficient, EnhancedState, GradingConvention, Mark, SaddleKind, StateSpace};
use crate::tl::Pairing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeKind {
    G1,
    G2,
}

impl fmt::Display for GeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeKind::G1 => "G1",
            GeKind::G2 => "G2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeIsomorphism {
    pub kind: GeKind,
    pub source: EnhancedState,
    pub target: EnhancedState,
    pub init: usize,
    pub fin: usize,
    /// The crossing barred by the differential component.
    pub active: usize,
}

impl fmt::Display for GeIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {} [{}..{} @{}]", self.kind, self.source, self.target, self.init, self.fin, self.active)
    }
}

/// Looks for a G1 or G2 isomorphism out of `e` on the window `(init, fin)`.
pub fn detect_iso_at(space: &StateSpace, e: &EnhancedState, init: usize, fin: usize) -> Result<Option<GeIsomorphism>> {
    let b = space.braid();
    let n = b.strands();
    if init == 0 || fin > b.len() || fin != init + n - 1 {
        return Err(Error::domain(format!(
            "window ({init}, {fin}) is not a pair of consecutive occurrences in a word of length {}",
            b.len()
        )));
    }
    let i = b.generator(init);
    if b.generator(fin) != i {
        return Err(Error::domain(format!("crossings {init} and {fin} carry different generators")));
    }
    if !e.state.is_barred(init) {
        return Err(Error::domain(format!("crossing {init} is not barred in {e}")));
    }
    if !e.state.is_barred(fin) {
        let target_res = space.resolution(e.state.with_bar(fin));
        let Some(created) = target_res.loop_with_ends(init, fin) else {
            return Ok(None);
        };
        let found = space
            .components_at(e, fin)
            .into_iter()
            .find(|c| c.coefficient == Coefficient::Unit && c.target.mark(created) == Mark::Minus);
        return Ok(found.map(|c| GeIsomorphism {
            kind: GeKind::G1,
            source: *e,
            target: c.target,
            init,
            fin,
            active: fin,
        }));
    }
    let source_res = space.resolution(e.state);
    let Some(lp) = source_res.loop_with_ends(init, fin) else {
        return Ok(None);
    };
    if e.mark(lp) != Mark::Plus || i + 1 >= n {
        return Ok(None);
    }
    let mut between = (init + 1..fin).filter(|&p| b.generator(p) == i + 1);
    let active = between.next().expect("a torus braid window contains every generator");
    assert!(between.next().is_none(), "generator {} repeats inside window ({init}, {fin})", i + 1);
    if e.state.is_barred(active) {
        return Ok(None);
    }
    let boundary = source_res.loops[lp].boundary;
    let target_res = space.resolution(e.state.with_bar(active));
    if target_res.loop_with_boundary(boundary).is_some() {
        return Ok(None);
    }
    let found = space
        .components_at(e, active)
        .into_iter()
        .find(|c| c.coefficient == Coefficient::Unit && matches!(c.kind, SaddleKind::Merge | SaddleKind::LoopIntoArc));
    Ok(found.map(|c| GeIsomorphism { kind: GeKind::G2, source: *e, target: c.target, init, fin, active }))
}

/// Every window `(init, init+n-1)` with `init` barred, left to right.
pub fn windows(space: &StateSpace, e: &EnhancedState) -> impl Iterator<Item = (usize, usize)> {
    let n = space.braid().strands();
    let len = space.braid().len();
    let bars: Vec<usize> = e.state.barred().collect();
    bars.into_iter().map(move |init| (init, init + n - 1)).filter(move |&(_, fin)| fin <= len)
}

fn require_torus(b: &BraidWord) -> Result<()> {
    if b.is_torus() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("`{b}` is not a torus braid word")))
    }
}

/// Scans states in canonical order and claims at most one isomorphism per
/// state. A state already used as a target is skipped; a window whose target
/// is already used is passed over.
pub fn select_distinguished(space: &StateSpace) -> Result<Vec<GeIsomorphism>> {
    require_torus(space.braid())?;
    let mut used: HashSet<EnhancedState> = HashSet::new();
    let mut chosen = Vec::new();
    for e in space.enhanced_states() {
        if used.contains(&e) {
            continue;
        }
        for (init, fin) in windows(space, &e) {
            let Some(iso) = detect_iso_at(space, &e, init, fin)? else {
                continue;
            };
            if used.contains(&iso.target) {
                log::warn!("{e}: window ({init}, {fin}) hits claimed target {}", iso.target);
                continue;
            }
            used.insert(iso.source);
            used.insert(iso.target);
            chosen.push(iso);
            break;
        }
    }
    Ok(chosen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub crossing: usize,
}

#[derive(Clone, Debug)]
pub struct WhittleGraph {
    pub vertices: Vec<GeIsomorphism>,
    pub edges: Vec<Edge>,
}

impl WhittleGraph {
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.from].push(e.to);
        }
        out
    }
}

/// Edge `α → β` whenever a nonzero component of `d(α.source)` lands on
/// `β.target` with `β ≠ α`.
pub fn build_graph(space: &StateSpace, isos: &[GeIsomorphism]) -> WhittleGraph {
    let by_target: HashMap<EnhancedState, usize> = isos.iter().enumerate().map(|(j, iso)| (iso.target, j)).collect();
    let mut edges: Vec<Edge> = isos
        .par_iter()
        .enumerate()
        .flat_map_iter(|(from, iso)| {
            let by_target = &by_target;
            space.differential_components(&iso.source).into_iter().filter_map(move |c| match by_target.get(&c.target) {
                Some(&to) if to != from => Some(Edge { from, to, crossing: c.crossing }),
                _ => None,
            })
        })
        .collect();
    edges.sort();
    edges.dedup_by_key(|e| (e.from, e.to));
    WhittleGraph { vertices: isos.to_vec(), edges }
}

/// Kahn's algorithm, always taking the smallest ready vertex. On a cycle the
/// error carries a witness `[v0, v1, …, v0]` following edge directions.
pub fn topological_order(vertex_count: usize, edges: &[Edge]) -> Result<Vec<usize>> {
    let mut succ = vec![Vec::new(); vertex_count];
    let mut pred = vec![Vec::new(); vertex_count];
    let mut indegree = vec![0usize; vertex_count];
    for e in edges {
        succ[e.from].push(e.to);
        pred[e.to].push(e.from);
        indegree[e.to] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..vertex_count).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(vertex_count);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == vertex_count {
        return Ok(order);
    }
    // Every leftover vertex has a leftover predecessor, so walking backwards
    // must revisit a vertex.
    let start = (0..vertex_count).find(|&v| indegree[v] > 0).expect("leftover vertex");
    let mut walk = vec![start];
    let mut pos = HashMap::from([(start, 0usize)]);
    let mut v = start;
    let cycle_start = loop {
        v = *pred[v].iter().find(|&&u| indegree[u] > 0).expect("leftover predecessor");
        if let Some(&at) = pos.get(&v) {
            break at;
        }
        pos.insert(v, walk.len());
        walk.push(v);
    };
    let mut cycle: Vec<usize> = walk[cycle_start..].iter().rev().copied().collect();
    let min_at = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(j, _)| j).unwrap_or(0);
    cycle.rotate_left(min_at);
    cycle.push(cycle[0]);
    Err(Error::CycleDetected(cycle))
}

/// The generators left after eliminating every distinguished pair.
pub struct WhittledComplex {
    pub space: StateSpace,
    /// Distinguished isomorphisms in selection order.
    pub isomorphisms: Vec<GeIsomorphism>,
    pub graph: WhittleGraph,
    /// Vertex indices in the order the eliminations are performed.
    pub elimination_order: Vec<usize>,
    /// Survivors grouped by homological degree, each group in canonical order.
    pub survivors: BTreeMap<i64, Vec<EnhancedState>>,
}

impl WhittledComplex {
    pub fn braid(&self) -> &BraidWord {
        self.space.braid()
    }

    pub fn cancelled(&self) -> impl Iterator<Item = &GeIsomorphism> {
        self.elimination_order.iter().map(|&j| &self.isomorphisms[j])
    }

    pub fn survivor_count(&self) -> usize {
        self.survivors.values().map(Vec::len).sum()
    }

    pub fn all_survivors(&self) -> impl Iterator<Item = &EnhancedState> {
        self.survivors.values().flatten()
    }
}

pub fn whittle(braid: &BraidWord, convention: GradingConvention) -> Result<WhittledComplex> {
    require_torus(braid)?;
    let space = StateSpace::new(braid.clone(), convention)?;
    let isomorphisms = select_distinguished(&space)?;
    let graph = build_graph(&space, &isomorphisms);
    let elimination_order = topological_order(isomorphisms.len(), &graph.edges)?;
    let paired: HashSet<EnhancedState> = isomorphisms.iter().flat_map(|iso| [iso.source, iso.target]).collect();
    let mut survivors: BTreeMap<i64, Vec<EnhancedState>> = BTreeMap::new();
    for e in space.enhanced_states() {
        if !paired.contains(&e) {
            survivors.entry(space.gradings(&e).0).or_default().push(e);
        }
    }
    log::info!(
        "{braid}: {} generators, {} eliminations, {} edges, {} survivors",
        space.enhanced_count(),
        isomorphisms.len(),
        graph.edges.len(),
        space.enhanced_count() - paired.len()
    );
    Ok(WhittledComplex { space, isomorphisms, graph, elimination_order, survivors })
}

/// Signed counts `Σ (−1)^h` keyed by through-pairing of the resolution and
/// quantum degree.
pub fn signed_counts<'a>(
    space: &StateSpace,
    states: impl IntoIterator<Item = &'a EnhancedState>,
) -> BTreeMap<(Pairing, i64), i64> {
    let mut out: BTreeMap<(Pairing, i64), i64> = BTreeMap::new();
    for e in states {
        let (h, q) = space.gradings(e);
        let sign = if h % 2 == 0 { 1 } else { -1 };
        *out.entry((space.resolution(e.state).through.clone(), q)).or_default() += sign;
    }
    out.retain(|_, v| *v != 0);
    out
}
