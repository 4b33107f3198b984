//! Runs the whittler on a range of torus braids and checks its output
//! against the independent oracles.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::counting::{classify_survivor, count_bound, SurvivorForm};
use crate::error::{Error, Result};
use crate::homology::{close_and_build, euler_state_sum, homology, EulerSum, LaurentPoly};
use crate::states::{Coefficient, EnhancedState, GradingConvention, StateSpace};
use crate::tl::enumerate_jnf;
use crate::whittle::{detect_iso_at, signed_counts, whittle, windows, WhittledComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// The connecting-map graph is acyclic and the elimination order respects it.
    Acyclic,
    /// Signed state counts per pairing class and `q` survive whittling.
    Euler,
    /// Survivor counts stay below the counting bound.
    Bound,
    /// Every elimination is a legal unit cancellation and no legal one is left.
    Deflate,
    /// Closure homology agrees with the state sum and fits in the survivors.
    Homology,
    /// Every survivor has one of the two normal shapes.
    Jnf,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Acyclic, Check::Euler, Check::Bound, Check::Deflate, Check::Homology, Check::Jnf];

    pub fn name(self) -> &'static str {
        match self {
            Check::Acyclic => "acyclic",
            Check::Euler => "euler",
            Check::Bound => "bound",
            Check::Deflate => "deflate",
            Check::Homology => "homology",
            Check::Jnf => "jnf",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: (usize, usize),
    pub k: (usize, usize),
    pub checks: BTreeSet<Check>,
    /// Where the report and exports go; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
    pub convention: GradingConvention,
}

impl RunConfig {
    pub fn new(n: (usize, usize), k: (usize, usize)) -> Self {
        RunConfig {
            n,
            k,
            checks: Check::ALL.into_iter().collect(),
            out_dir: None,
            convention: GradingConvention::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.0 > self.n.1 || self.k.0 > self.k.1 {
            return Err(Error::domain("empty range"));
        }
        if self.n.0 < 2 {
            return Err(Error::domain("n must be at least 2"));
        }
        if self.k.0 < 1 {
            return Err(Error::domain("k must be at least 1"));
        }
        if self.checks.is_empty() {
            return Err(Error::domain("no checks selected"));
        }
        Ok(())
    }

    pub fn instances(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.n.0..=self.n.1).flat_map(move |n| (self.k.0..=self.k.1).map(move |k| (n, k)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub counters: BTreeMap<String, i64>,
    /// Human-readable notes on failures and diagnostics.
    pub notes: Vec<String>,
}

impl CheckResult {
    fn new(check: Check) -> Self {
        CheckResult { check, passed: true, counters: BTreeMap::new(), notes: Vec::new() }
    }

    fn count(&mut self, key: &str, value: impl TryInto<i64>) {
        self.counters.insert(key.to_string(), value.try_into().unwrap_or(i64::MAX));
    }

    fn fail(&mut self, note: String) {
        self.passed = false;
        self.notes.push(note);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub n: usize,
    pub k: usize,
    pub generators: usize,
    pub isomorphisms: usize,
    pub edges: usize,
    pub survivors: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, c: Check) -> Option<&CheckResult> {
        self.checks.iter().find(|r| r.check == c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub convention: String,
    pub instances: Vec<InstanceReport>,
    pub passed: bool,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    /// First check that failed anywhere, in the fixed check order.
    pub fn first_failure(&self) -> Option<Check> {
        Check::ALL.into_iter().find(|&c| self.instances.iter().any(|i| i.check(c).is_some_and(|r| !r.passed)))
    }
}

pub fn run_verify(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut instances = Vec::new();
    for (n, k) in cfg.instances() {
        let report = verify_instance(n, k, &cfg.checks, cfg.convention, cfg.out_dir.as_ref())?;
        log::info!("ft_{n}^{k}: {}", if report.passed() { "pass" } else { "FAIL" });
        instances.push(report);
    }
    let report = VerificationReport {
        checks: cfg.checks.iter().copied().collect(),
        convention: format!("{:?}", cfg.convention),
        passed: instances.iter().all(InstanceReport::passed),
        instances,
        elapsed_ms: start.elapsed().as_millis(),
    };
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
        let file = std::fs::File::create(dir.join("report.json"))?;
        serde_json::to_writer_pretty(file, &report)?;
    }
    Ok(report)
}

pub fn verify_instance(
    n: usize,
    k: usize,
    checks: &BTreeSet<Check>,
    convention: GradingConvention,
    out_dir: Option<&PathBuf>,
) -> Result<InstanceReport> {
    let start = Instant::now();
    let braid = BraidWord::torus(n, k)?;
    let w = whittle(&braid, convention)?;
    if let Some(dir) = out_dir {
        crate::export::export_whittled(&w, &dir.join(format!("ft_{n}_{k}")))?;
    }
    let mut results = Vec::new();
    for &c in checks {
        results.push(match c {
            Check::Acyclic => check_acyclic(&w),
            Check::Euler => check_euler(&w)?,
            Check::Bound => check_bound(&w),
            Check::Deflate => check_deflate(&w)?,
            Check::Homology => check_homology(&w)?,
            Check::Jnf => check_jnf(&w),
        });
    }
    Ok(InstanceReport {
        n,
        k,
        generators: w.space.enhanced_count(),
        isomorphisms: w.isomorphisms.len(),
        edges: w.graph.edges.len(),
        survivors: w.survivor_count(),
        checks: results,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn check_acyclic(w: &WhittledComplex) -> CheckResult {
    let mut r = CheckResult::new(Check::Acyclic);
    r.count("vertices", w.isomorphisms.len());
    r.count("edges", w.graph.edges.len());
    let mut position = vec![usize::MAX; w.isomorphisms.len()];
    for (j, &v) in w.elimination_order.iter().enumerate() {
        position[v] = j;
    }
    if position.contains(&usize::MAX) || w.elimination_order.len() != w.isomorphisms.len() {
        r.fail("elimination order is not a permutation of the vertices".into());
    }
    for e in &w.graph.edges {
        if position[e.from] >= position[e.to] {
            r.fail(format!("edge {} -> {} runs against the order", e.from, e.to));
        }
    }
    r
}

pub fn check_euler(w: &WhittledComplex) -> Result<CheckResult> {
    let mut r = CheckResult::new(Check::Euler);
    let space = &w.space;
    let all = space.enhanced_states();
    let before = signed_counts(space, &all);
    let after = signed_counts(space, w.all_survivors());
    r.count("classes", before.len());
    if before != after {
        let differing = before.keys().chain(after.keys()).filter(|key| before.get(*key) != after.get(*key)).count();
        r.fail(format!("{differing} (pairing, q) classes differ"));
    }
    let closed_all = match euler_state_sum(space.braid(), true, space.convention())? {
        EulerSum::Closed(p) => p,
        EulerSum::Open(_) => unreachable!("closed sum requested"),
    };
    let closed_survivors = closed_sum(space, w.all_survivors());
    if closed_all != closed_survivors {
        r.fail(format!("closed sum {closed_all} over all states, {closed_survivors} over survivors"));
    }
    Ok(r)
}

/// `Σ (−1)^h q^q (q + q^{-1})^c` over `states`, `c` the closure cycles of the
/// through-pairing.
pub fn closed_sum<'a>(space: &StateSpace, states: impl IntoIterator<Item = &'a EnhancedState>) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for e in states {
        let (h, q) = space.gradings(e);
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let cycles = space.resolution(e.state).through.closure_cycles();
        total += &(&LaurentPoly::circle_power(cycles) * &LaurentPoly::monomial(sign, q));
    }
    total
}

pub fn check_bound(w: &WhittledComplex) -> CheckResult {
    let mut r = CheckResult::new(Check::Bound);
    let n = w.braid().strands();
    let k = w.braid().torus_power().unwrap_or(0);
    let t = w.braid().len() as i64;
    let mut worst_slack: Option<i64> = None;
    let mut formula_gaps = 0;
    for h in 0..=t {
        let count = w.survivors.get(&h).map_or(0, Vec::len);
        let terms = count_bound(n as u64, k as u64, h as u64);
        let count_big = BigUint::from(count);
        if count_big > terms.total {
            r.fail(format!("h={h}: {count} survivors exceed the bound {}", terms.total));
        } else {
            let slack = i64::try_from(&terms.total - &count_big).unwrap_or(i64::MAX);
            worst_slack = Some(worst_slack.map_or(slack, |s| s.min(slack)));
        }
        if count_big > terms.total_with_pk2 {
            r.notes.push(format!("h={h}: {count} survivors exceed the p(k,2) variant {}", terms.total_with_pk2));
        }
        let brute = BigUint::from(enumerate_jnf(n, h as usize).len());
        if brute != terms.formula_n {
            formula_gaps += 1;
        }
        if brute > terms.formula_n {
            r.notes.push(format!("h={h}: N(n,h) = {} below the {brute} normal-form words", terms.formula_n));
        }
    }
    r.count("survivors", w.survivor_count());
    r.count("formula_n_gaps", formula_gaps);
    if let Some(s) = worst_slack {
        r.count("min_slack", s);
    }
    r
}

pub fn check_deflate(w: &WhittledComplex) -> Result<CheckResult> {
    let mut r = CheckResult::new(Check::Deflate);
    let space = &w.space;
    r.count("isomorphisms", w.isomorphisms.len());
    let mut seen = HashSet::new();
    for iso in &w.isomorphisms {
        for e in [iso.source, iso.target] {
            if !seen.insert(e) {
                r.fail(format!("{e} is used by two isomorphisms"));
            }
        }
        let (h0, q0) = space.gradings(&iso.source);
        let (h1, q1) = space.gradings(&iso.target);
        if (h1 - h0, q1 - q0) != (1, 0) {
            r.fail(format!("{iso}: shift ({}, {})", h1 - h0, q1 - q0));
        }
        let unit = space
            .components_at(&iso.source, iso.active)
            .iter()
            .any(|c| c.target == iso.target && c.coefficient == Coefficient::Unit);
        if !unit {
            r.fail(format!("{iso} is not a unit component of the differential"));
        }
    }
    // No unclaimed GE pair may remain between survivors.
    let survivors: HashSet<EnhancedState> = w.all_survivors().copied().collect();
    let mut residual = 0;
    for e in &survivors {
        for (init, fin) in windows(space, e) {
            if let Some(iso) = detect_iso_at(space, e, init, fin)? {
                if survivors.contains(&iso.target) {
                    residual += 1;
                    if residual <= 5 {
                        r.fail(format!("survivors still joined: {iso}"));
                    } else {
                        r.passed = false;
                    }
                }
            }
        }
    }
    r.count("residual_pairs", residual);
    Ok(r)
}

pub fn check_homology(w: &WhittledComplex) -> Result<CheckResult> {
    let mut r = CheckResult::new(Check::Homology);
    let space = &w.space;
    let complex = match close_and_build(space.braid(), space.convention()) {
        Ok(c) => c,
        Err(Error::Internal(msg)) => {
            r.fail(msg);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let hom = homology(&complex);
    r.count("closure_dimension", complex.total_dimension());
    r.count("total_rank", hom.total_rank());
    let torsion: usize = hom.slices.iter().map(|s| s.torsion.len()).sum();
    r.count("torsion_factors", torsion);
    match euler_state_sum(space.braid(), true, space.convention())? {
        EulerSum::Closed(p) if p == hom.graded_euler() => {}
        EulerSum::Closed(p) => r.fail(format!("graded Euler {} but state sum {p}", hom.graded_euler())),
        EulerSum::Open(_) => unreachable!("closed sum requested"),
    }
    let mut capacity: HashMap<i64, usize> = HashMap::new();
    for (&h, states) in &w.survivors {
        capacity.insert(h, states.iter().map(|e| 1usize << space.resolution(e.state).through.closure_cycles()).sum());
    }
    for (h, rank) in hom.ranks_by_degree() {
        let cap = capacity.get(&h).copied().unwrap_or(0);
        if rank > cap {
            r.fail(format!("h={h}: rank {rank} exceeds survivor capacity {cap}"));
        }
    }
    Ok(r)
}

pub fn check_jnf(w: &WhittledComplex) -> CheckResult {
    let mut r = CheckResult::new(Check::Jnf);
    let (mut form1, mut form2, mut none) = (0, 0, 0);
    for e in w.all_survivors() {
        match classify_survivor(&w.space.resolution(e.state).word) {
            Some(SurvivorForm::Form1 { .. }) => form1 += 1,
            Some(SurvivorForm::Form2 { .. }) => form2 += 1,
            None => {
                none += 1;
                if none <= 5 {
                    r.notes.push(format!("unclassified survivor {e}"));
                }
            }
        }
    }
    r.count("form1", form1);
    r.count("form2", form2);
    r.count("unclassified", none);
    if none > 0 {
        r.passed = false;
    }
    r
}
