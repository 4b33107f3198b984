//! Positive braid words and the torus braids `(σ_1 σ_2 ⋯ σ_{n-1})^k`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A positive braid word on `strands` strands. Letter `i` stands for the
/// crossing `σ_i` between strands `i` and `i + 1`; positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::domain(format!("braid needs at least 2 strands, got {strands}")));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l >= strands) {
            return Err(Error::domain(format!(
                "generator {bad} out of range 1..={} for {strands} strands",
                strands - 1
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    /// `ft_n^k`: `k` copies of `σ_1 σ_2 ⋯ σ_{n-1}`.
    pub fn torus(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("torus braid needs n >= 2, got {n}")));
        }
        if k < 1 {
            return Err(Error::domain(format!("torus braid needs k >= 1, got {k}")));
        }
        let letters = (0..k).flat_map(|_| 1..n).collect();
        Ok(BraidWord { strands: n, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generator index of the crossing at 1-based position `p`.
    pub fn generator(&self, p: usize) -> usize {
        self.letters[p - 1]
    }

    pub fn positive_crossings(&self) -> usize {
        self.letters.len()
    }

    pub fn negative_crossings(&self) -> usize {
        0
    }

    /// `(horizontal, vertical)` position of the crossing at 1-based index `p`.
    pub fn crossing_position(&self, p: usize) -> Result<(usize, usize)> {
        if p == 0 || p > self.len() {
            return Err(Error::domain(format!("crossing index {p} out of range 1..={}", self.len())));
        }
        Ok((p, self.letters[p - 1]))
    }

    /// Number of full `σ_1 ⋯ σ_{n-1}` factors if this word is a torus braid.
    pub fn torus_power(&self) -> Option<usize> {
        let period = self.strands - 1;
        if self.letters.is_empty() || !self.letters.len().is_multiple_of(period) {
            return None;
        }
        let cyclic = self.letters.iter().enumerate().all(|(p, &l)| l == p % period + 1);
        cyclic.then(|| self.letters.len() / period)
    }

    pub fn is_torus(&self) -> bool {
        self.torus_power().is_some()
    }

    /// Concatenation of two braids on the same number of strands.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::domain("cannot concatenate braids on different strand counts"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// 1-based position of the next occurrence of the generator at `p`, if any.
    pub fn next_occurrence(&self, p: usize) -> Option<usize> {
        let g = self.generator(p);
        (p + 1..=self.len()).find(|&q| self.generator(q) == g)
    }

    /// Parses the space-separated text form, e.g. `"1 2 1 2"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = parse_indices(text)?;
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_indices(f, &self.letters)
    }
}

pub(crate) fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| usize::from_str(s).map_err(|_| Error::Parse(format!("bad generator index `{s}`"))))
        .collect()
}

pub(crate) fn write_indices(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (p, x) in xs.iter().enumerate() {
        if p > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
