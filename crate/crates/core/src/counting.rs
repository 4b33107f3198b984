//! Counting formulas for whittled survivors and the two survivor shapes.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::tl::{catalan, d_move_reduce, TlPath, TlWord};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// Compositions of `n` into `k` positive parts, `binom(n-1, k-1)`, with the
/// conventions `p(0, m) = 1` and `p(n, 0) = 0` for `n >= 1`.
pub fn ordered_partitions(n: u64, k: u64) -> BigUint {
    match (n, k) {
        (0, _) => BigUint::one(),
        (_, 0) => BigUint::zero(),
        _ => binomial(n - 1, k - 1),
    }
}

/// `N(n, h) = Σ_{k <= h} binom(n-1, k) p(h, k)`, an upper bound for the
/// number of length-`h` normal-form words on `n` strands.
pub fn formula_n(n: u64, h: u64) -> BigUint {
    (0..=h).map(|k| binomial(n - 1, k) * ordered_partitions(h, k)).sum()
}

/// Big integers go out as decimal strings.
pub(crate) fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// The terms of the survivor bound at one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerms {
    pub n: u64,
    pub k: u64,
    pub h: u64,
    /// `Σ_{m <= h} p(h, m)`
    #[serde(serialize_with = "decimal")]
    pub partitions: BigUint,
    /// `N(n, h)`
    #[serde(serialize_with = "decimal")]
    pub formula_n: BigUint,
    /// `(p(n, 2) + 2) C_n`
    #[serde(serialize_with = "decimal")]
    pub catalan_term: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total: BigUint,
    /// The same bound with `p(k, 2)` in place of `p(n, 2)`.
    #[serde(serialize_with = "decimal")]
    pub total_with_pk2: BigUint,
}

pub fn count_bound(n: u64, k: u64, h: u64) -> BoundTerms {
    let partitions: BigUint = (0..=h).map(|m| ordered_partitions(h, m)).sum();
    let formula_n = formula_n(n, h);
    let c = catalan(n);
    let catalan_term = (ordered_partitions(n, 2) + 2u32) * &c;
    let total = &partitions + &formula_n + &catalan_term;
    let total_with_pk2 = &partitions + &formula_n + (ordered_partitions(k, 2) + 2u32) * &c;
    BoundTerms { n, k, h, partitions, formula_n, catalan_term, total, total_with_pk2 }
}

/// The two shapes a surviving resolution word can take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurvivorForm {
    /// `e_{n-1}^{k_0} V_0 e_{n-1}^{k_1} V_1 ⋯`, every `k_j >= 2`, each tail
    /// `V_j = e_a e_{a+1} ⋯ e_{n-1}` ascending.
    Form1 { exponents: Vec<usize>, tails: Vec<TlWord> },
    /// Reduces to normal form using only the restricted moves.
    Form2 { path: TlPath },
}

impl SurvivorForm {
    pub fn name(&self) -> &'static str {
        match self {
            SurvivorForm::Form1 { .. } => "form1",
            SurvivorForm::Form2 { .. } => "form2",
        }
    }
}

/// Structural parse: maximal blocks `e_{n-1}^{k}` with `k >= 2`, separated by
/// nonempty ascending runs `e_a e_{a+1} ⋯ e_{n-2}`. A run may also open or
/// close the word (as in `e_1 e_2^{k_1} e_1` on three strands); at least one
/// run and one block are required. Each run followed by a block gives a tail
/// `V_j` ending in `e_{n-1}`; a closing run is reported without it.
pub fn parse_form1(w: &TlWord) -> Option<(Vec<usize>, Vec<TlWord>)> {
    let n = w.strands();
    let top = n - 1;
    let g = w.gens();
    let mut exponents = Vec::new();
    let mut tails = Vec::new();
    let mut p = 0;
    while p < g.len() {
        let start = p;
        if g[p] == top {
            while p < g.len() && g[p] == top {
                p += 1;
            }
            if p - start < 2 {
                return None;
            }
            exponents.push(p - start);
            continue;
        }
        while p < g.len() && g[p] != top {
            if p > start && g[p] != g[p - 1] + 1 {
                return None;
            }
            p += 1;
        }
        if g[p - 1] != top - 1 {
            return None;
        }
        let mut tail = g[start..p].to_vec();
        if p < g.len() {
            tail.push(top);
        }
        tails.push(TlWord::from_raw(n, tail));
    }
    (!tails.is_empty() && !exponents.is_empty()).then_some((exponents, tails))
}

pub fn classify_survivor(w: &TlWord) -> Option<SurvivorForm> {
    if let Some((exponents, tails)) = parse_form1(w) {
        return Some(SurvivorForm::Form1 { exponents, tails });
    }
    d_move_reduce(w).map(|path| SurvivorForm::Form2 { path })
}
