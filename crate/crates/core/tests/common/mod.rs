//! Brute-force reference implementations used by the integration tests.
//!
//! Everything here works on plain node graphs of the diagram and dense
//! matrices, independent of the sweep and sparse code in the library.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use petgraph::unionfind::UnionFind;

/// Resolution of a braid word under a bar pattern, computed on the node
/// graph `(column, row)`, `column` in `0..=t`.
pub struct OracleResolution {
    pub n: usize,
    pub t: usize,
    /// Barred crossings (1-based) on each loop; loops sorted by their last crossing.
    pub loops: Vec<BTreeSet<usize>>,
    /// Partner of each boundary point: left `0..n`, right `n..2n`.
    pub partners: Vec<usize>,
    comp_of_node: Vec<usize>,
    loop_of_comp: HashMap<usize, usize>,
}

impl OracleResolution {
    pub fn loop_at(&self, column: usize, row: usize) -> Option<usize> {
        self.loop_of_comp.get(&self.comp_of_node[column * self.n + row]).copied()
    }

    pub fn comp_at(&self, column: usize, row: usize) -> usize {
        self.comp_of_node[column * self.n + row]
    }
}

pub fn resolve(n: usize, letters: &[usize], bars: &[bool]) -> OracleResolution {
    let t = letters.len();
    let node = |c: usize, r: usize| c * n + r;
    let mut uf = UnionFind::<usize>::new((t + 1) * n);
    for (j, &i) in letters.iter().enumerate() {
        let p = j + 1;
        for r in (0..n).filter(|&r| r + 1 != i && r != i) {
            uf.union(node(p - 1, r), node(p, r));
        }
        if bars[j] {
            uf.union(node(p - 1, i - 1), node(p - 1, i));
            uf.union(node(p, i - 1), node(p, i));
        } else {
            uf.union(node(p - 1, i - 1), node(p, i - 1));
            uf.union(node(p - 1, i), node(p, i));
        }
    }
    let comp_of_node: Vec<usize> = (0..(t + 1) * n).map(|x| uf.find(x)).collect();
    let boundary_points: Vec<(usize, usize)> = (0..n)
        .map(|r| (comp_of_node[node(0, r)], r))
        .chain((0..n).map(|r| (comp_of_node[node(t, r)], n + r)))
        .collect();
    let open: HashSet<usize> = boundary_points.iter().map(|&(c, _)| c).collect();
    let mut partners = vec![usize::MAX; 2 * n];
    let mut pending: HashMap<usize, usize> = HashMap::new();
    for (c, point) in boundary_points {
        if let Some(other) = pending.remove(&c) {
            partners[other] = point;
            partners[point] = other;
        } else {
            pending.insert(c, point);
        }
    }
    assert!(pending.is_empty(), "every arc has two ends");

    let mut crossings_of: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (j, &i) in letters.iter().enumerate() {
        if bars[j] {
            let p = j + 1;
            for c in [comp_of_node[node(p - 1, i - 1)], comp_of_node[node(p, i - 1)]] {
                crossings_of.entry(c).or_default().insert(p);
            }
        }
    }
    let mut loops: Vec<(usize, BTreeSet<usize>)> =
        crossings_of.into_iter().filter(|(c, _)| !open.contains(c)).collect();
    loops.sort_by_key(|(_, b)| *b.iter().next_back().expect("a loop meets a crossing"));
    let loop_of_comp = loops.iter().enumerate().map(|(j, (c, _))| (*c, j)).collect();
    OracleResolution { n, t, loops: loops.into_iter().map(|(_, b)| b).collect(), partners, comp_of_node, loop_of_comp }
}

/// One component of the differential: `(target bars, target marks, crossing, dotted)`
/// with `true` marks meaning `−`.
pub type OracleComponent = (Vec<bool>, Vec<bool>, usize, bool);

/// Differential of the open tangle complex read off the saddle case table.
pub fn differential(n: usize, letters: &[usize], bars: &[bool], marks: &[bool]) -> Vec<OracleComponent> {
    let src = resolve(n, letters, bars);
    assert_eq!(src.loops.len(), marks.len());
    let mut out = Vec::new();
    for (j, &i) in letters.iter().enumerate() {
        if bars[j] {
            continue;
        }
        let p = j + 1;
        let mut tbars = bars.to_vec();
        tbars[j] = true;
        let tgt = resolve(n, letters, &tbars);

        let same = src.comp_at(p - 1, i - 1) == src.comp_at(p - 1, i);
        let mut before: Vec<usize> = [src.loop_at(p - 1, i - 1), src.loop_at(p - 1, i)].into_iter().flatten().collect();
        before.dedup();
        let mut after: Vec<usize> = [tgt.loop_at(p - 1, i - 1), tgt.loop_at(p, i - 1)].into_iter().flatten().collect();
        after.dedup();

        // Untouched loops keep their marks.
        let mut base = vec![false; tgt.loops.len()];
        for (l, boundary) in tgt.loops.iter().enumerate() {
            if after.contains(&l) {
                continue;
            }
            let s = src.loops.iter().position(|b| b == boundary).expect("untouched loop persists");
            base[l] = marks[s];
        }
        let with = |sets: &[(usize, bool)], dotted: bool| {
            let mut m = base.clone();
            for &(l, v) in sets {
                m[l] = v;
            }
            (tbars.clone(), m, p, dotted)
        };
        match (same, before.len(), after.len()) {
            // merge of two loops
            (false, 2, 1) => match (marks[before[0]], marks[before[1]]) {
                (true, true) => {}
                (a, b) => out.push(with(&[(after[0], a || b)], false)),
            },
            // loop joins an arc
            (false, 1, 0) => out.push(with(&[], marks[before[0]])),
            // two arcs join
            (false, 0, 0) => out.push(with(&[], false)),
            // loop splits in two
            (true, 1, 2) => {
                if marks[before[0]] {
                    out.push(with(&[(after[0], true), (after[1], true)], false));
                } else {
                    out.push(with(&[(after[0], false), (after[1], true)], false));
                    out.push(with(&[(after[0], true), (after[1], false)], false));
                }
            }
            // an arc throws off a loop
            (true, 0, 1) => {
                out.push(with(&[(after[0], true)], false));
                out.push(with(&[(after[0], false)], true));
            }
            other => panic!("impossible saddle {other:?} at crossing {p}"),
        }
    }
    out
}

/// `h` and `q` of an enhanced state of a positive braid.
pub fn gradings(t: usize, bars: &[bool], marks: &[bool]) -> (i64, i64) {
    let h = bars.iter().filter(|&&b| b).count() as i64;
    let minus = marks.iter().filter(|&&m| m).count() as i64;
    let deg = marks.len() as i64 - 2 * minus;
    (h, deg + h + t as i64)
}

pub fn bits(mask: u64, len: usize) -> Vec<bool> {
    (0..len).map(|j| mask >> j & 1 == 1).collect()
}

/// Dense closure complex: for each `(h, q)` the dimension and the matrix of
/// `d` into `(h + 1, q)` (rows index the target).
pub struct DenseComplex {
    pub dims: BTreeMap<(i64, i64), usize>,
    pub d: BTreeMap<(i64, i64), Vec<Vec<i64>>>,
}

/// Closure circles of a resolution by node union-find with both ends glued.
fn closure_circles(n: usize, letters: &[usize], bars: &[bool]) -> (usize, Vec<usize>) {
    let t = letters.len();
    let node = |c: usize, r: usize| c * n + r;
    let mut uf = UnionFind::<usize>::new((t + 1) * n);
    for (j, &i) in letters.iter().enumerate() {
        let p = j + 1;
        for r in 0..n {
            let crossing_rows = r + 1 == i || r == i;
            if !crossing_rows {
                uf.union(node(p - 1, r), node(p, r));
            }
        }
        if bars[j] {
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
    let mut label: HashMap<usize, usize> = HashMap::new();
    let ids: Vec<usize> = (0..(t + 1) * n)
        .map(|x| {
            let next = label.len();
            *label.entry(uf.find(x)).or_insert(next)
        })
        .collect();
    (label.len(), ids)
}

pub fn closure_complex(n: usize, letters: &[usize]) -> DenseComplex {
    let t = letters.len();
    let states: Vec<Vec<bool>> = (0..1u64 << t).map(|m| bits(m, t)).collect();
    let circles: Vec<(usize, Vec<usize>)> = states.iter().map(|b| closure_circles(n, letters, b)).collect();
    let grade = |s: usize, marks: u64| {
        let (c, _) = &circles[s];
        let h = states[s].iter().filter(|&&b| b).count() as i64;
        (h, *c as i64 - 2 * marks.count_ones() as i64 + h + t as i64)
    };
    let mut basis: BTreeMap<(i64, i64), Vec<(usize, u64)>> = BTreeMap::new();
    for s in 0..states.len() {
        for m in 0..1u64 << circles[s].0 {
            basis.entry(grade(s, m)).or_default().push((s, m));
        }
    }
    let index: HashMap<(usize, u64), usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(j, &g)| (g, j))).collect();
    let mut d = BTreeMap::new();
    for (&(h, q), gens) in &basis {
        let rows = basis.get(&(h + 1, q)).map_or(0, Vec::len);
        let mut mat = vec![vec![0i64; gens.len()]; rows];
        for (col, &(s, marks)) in gens.iter().enumerate() {
            for (j, &i) in letters.iter().enumerate() {
                if states[s][j] {
                    continue;
                }
                let sign = if states[s][..j].iter().filter(|&&b| b).count() % 2 == 0 { 1 } else { -1 };
                let ts = s | 1 << j;
                let (sc, sid) = &circles[s];
                let (_, tid) = &circles[ts];
                let a = sid[j * n + i - 1];
                let b = sid[j * n + i];
                let up = tid[j * n + i - 1];
                let down = tid[(j + 1) * n + i - 1];
                // carry the untouched circles
                let mut carried = 0u64;
                for c in 0..*sc {
                    if c == a || c == b || marks >> c & 1 == 0 {
                        continue;
                    }
                    let x = sid.iter().position(|&y| y == c).expect("circle has a node");
                    carried |= 1 << tid[x];
                }
                let minus = |c: usize| marks >> c & 1 == 1;
                let images: Vec<u64> = if a != b {
                    match (minus(a), minus(b)) {
                        (true, true) => vec![],
                        (false, false) => vec![carried],
                        _ => vec![carried | 1 << up],
                    }
                } else if minus(a) {
                    vec![carried | 1 << up | 1 << down]
                } else {
                    vec![carried | 1 << up, carried | 1 << down]
                };
                for m in images {
                    mat[index[&(ts, m)]][col] += sign;
                }
            }
        }
        d.insert((h, q), mat);
    }
    DenseComplex { dims: basis.iter().map(|(&g, v)| (g, v.len())).collect(), d }
}

/// Rank of an integer matrix over `Z/p`.
pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: i64| {
        // Fermat inverse, p prime
        let (mut base, mut e, mut acc) = (x, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, r);
        let f = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * f % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let g = a[r][c];
                for x in 0..cols {
                    a[r][x] = (a[r][x] - g * a[rank][x]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of a dense complex over `Z/p`, keyed by `(h, q)`.
pub fn betti_mod(c: &DenseComplex, p: i64) -> BTreeMap<(i64, i64), usize> {
    let rank = |g: (i64, i64)| c.d.get(&g).map_or(0, |m| rank_mod(m, p));
    c.dims.iter().map(|(&(h, q), &dim)| ((h, q), dim - rank((h, q)) - rank((h - 1, q)))).collect()
}

/// All compositions of `n` into `k` positive parts, by brute force over cut sets.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if n == 0 {
        return vec![vec![]];
    }
    if k == 0 {
        return vec![];
    }
    (1..n)
        .combinations(k - 1)
        .map(|cuts| {
            let mut parts = Vec::with_capacity(k);
            let mut last = 0;
            for c in cuts.into_iter().chain([n]) {
                parts.push(c - last);
                last = c;
            }
            parts
        })
        .collect()
}

/// Every `TL_n` word of length up to `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Through-pairing of a TL word by composing generator pictures point by
/// point: follow each boundary point through the stacked layers.
pub fn word_pairing(n: usize, word: &[usize]) -> Vec<usize> {
    let letters = word.to_vec();
    let bars = vec![true; letters.len()];
    resolve(n, &letters, &bars).partners
}

/// Distinct through-pairings reachable from the identity by stacking
/// generators, found breadth first with one witness word per pairing.
pub fn tl_diagram_count(n: usize) -> usize {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    seen.insert(word_pairing(n, &[]), vec![]);
    let mut frontier = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..n {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                let key = word_pairing(n, &v);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

/// An enhanced state as `(bars, marks)` with `true` meaning barred or `−`.
pub type OracleState = (Vec<bool>, Vec<bool>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleIso {
    pub g2: bool,
    pub source: OracleState,
    pub target: OracleState,
    pub init: usize,
    pub fin: usize,
    pub active: usize,
}

fn all_enhanced(n: usize, letters: &[usize]) -> Vec<OracleState> {
    let t = letters.len();
    let mut out = Vec::new();
    for m in 0..1u64 << t {
        let bars = bits(m, t);
        let loops = resolve(n, letters, &bars).loops.len();
        for marks in 0..1u64 << loops {
            out.push((bars.clone(), bits(marks, loops)));
        }
    }
    // degree, then bars with crossing 1 first and 0 < 1, then marks with + < −
    out.sort_by_key(|(b, m)| (b.iter().filter(|&&x| x).count(), b.clone(), m.clone()));
    out
}

fn detect(n: usize, letters: &[usize], e: &OracleState, init: usize, fin: usize) -> Option<OracleIso> {
    let (bars, marks) = e;
    let i = letters[init - 1];
    if !bars[fin - 1] {
        let mut tb = bars.clone();
        tb[fin - 1] = true;
        let tgt = resolve(n, letters, &tb);
        let l = tgt.loops.iter().position(|b| b.first() == Some(&init) && b.last() == Some(&fin))?;
        let (t_bars, t_marks, _, _) = differential(n, letters, bars, marks)
            .into_iter()
            .find(|(tb2, tm, p, dotted)| *p == fin && !dotted && tb2 == &tb && tm[l])?;
        return Some(OracleIso { g2: false, source: e.clone(), target: (t_bars, t_marks), init, fin, active: fin });
    }
    let src = resolve(n, letters, bars);
    let l = src.loops.iter().position(|b| b.first() == Some(&init) && b.last() == Some(&fin))?;
    if marks[l] || i + 1 >= n {
        return None;
    }
    let active = (init + 1..fin).find(|&p| letters[p - 1] == i + 1)?;
    if bars[active - 1] {
        return None;
    }
    let j = i + 1;
    let (a, b) = (src.comp_at(active - 1, j - 1), src.comp_at(active - 1, j));
    let touches = [src.loop_at(active - 1, j - 1), src.loop_at(active - 1, j)].contains(&Some(l));
    if a == b || !touches {
        return None;
    }
    let mut tb = bars.clone();
    tb[active - 1] = true;
    let (t_bars, t_marks, _, _) = differential(n, letters, bars, marks)
        .into_iter()
        .find(|(tb2, _, p, dotted)| *p == active && !dotted && tb2 == &tb)?;
    Some(OracleIso { g2: true, source: e.clone(), target: (t_bars, t_marks), init, fin, active })
}

/// The left-to-right selection of isomorphisms, run on oracle data.
pub fn select(n: usize, letters: &[usize]) -> Vec<OracleIso> {
    let t = letters.len();
    let mut used: HashSet<OracleState> = HashSet::new();
    let mut chosen = Vec::new();
    for e in all_enhanced(n, letters) {
        if used.contains(&e) {
            continue;
        }
        for init in (1..=t).filter(|&p| e.0[p - 1]) {
            let fin = init + n - 1;
            if fin > t {
                break;
            }
            if let Some(iso) = detect(n, letters, &e, init, fin) {
                if used.contains(&iso.target) {
                    continue;
                }
                used.insert(iso.source.clone());
                used.insert(iso.target.clone());
                chosen.push(iso);
                break;
            }
        }
    }
    chosen
}

/// Pairwise edges `α → β` of the connecting-map graph, smallest crossing per pair.
pub fn graph_edges(n: usize, letters: &[usize], isos: &[OracleIso]) -> BTreeSet<(usize, usize, usize)> {
    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, alpha) in isos.iter().enumerate() {
        let comps = differential(n, letters, &alpha.source.0, &alpha.source.1);
        for (b, beta) in isos.iter().enumerate() {
            if a == b {
                continue;
            }
            for (tb, tm, p, _) in &comps {
                if (tb, tm) == (&beta.target.0, &beta.target.1) {
                    let slot = best.entry((a, b)).or_insert(*p);
                    *slot = (*slot).min(*p);
                }
            }
        }
    }
    best.into_iter().map(|((a, b), p)| (a, b, p)).collect()
}
