//! Bounded search for roots escaping a subgroup: words `f ∉ H` with `f^m ∈ H`.
//!
//! A clean scan certifies isolation only up to its bounds.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::words::{reduced_word_count, reduced_words, Word};

pub const DEFAULT_EXPONENTS: [u32; 5] = [2, 3, 4, 5, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanBounds {
    max_len: usize,
    exponents: BTreeSet<u32>,
}

impl ScanBounds {
    pub fn new(max_len: usize, exponents: impl IntoIterator<Item = u32>) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidBounds("maximum word length must be at least 1".into()));
        }
        let exponents: BTreeSet<u32> = exponents.into_iter().collect();
        if let Some(&bad) = exponents.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidBounds(format!("exponent {bad} is below 2")));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidBounds("exponent set is empty".into()));
        }
        Ok(ScanBounds { max_len, exponents })
    }

    pub fn with_default_exponents(max_len: usize) -> Result<Self> {
        ScanBounds::new(max_len, DEFAULT_EXPONENTS)
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn exponents(&self) -> &BTreeSet<u32> {
        &self.exponents
    }

    /// Number of candidate roots: all reduced words with `1 ≤ |f| ≤ max_len`.
    pub fn word_count(&self, rank: usize) -> u128 {
        (1..=self.max_len).map(|l| reduced_word_count(rank, l)).sum()
    }
}

/// `root^exponent ∈ H` while `root ∉ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub root: Word,
    pub exponent: u32,
    pub power_in_subgroup: bool,
    pub root_in_subgroup: bool,
}

impl Violation {
    /// Recomputes the evidence against `g`.
    pub fn reverify(&self, g: &SubgroupGraph) -> bool {
        self.power_in_subgroup
            && !self.root_in_subgroup
            && g.contains(&self.root.power(i64::from(self.exponent)))
            && !g.contains(&self.root)
    }
}

/// Checks every reduced word `1 ≤ |f| ≤ L` against every exponent in the bounds.
///
/// Output is ordered by word length, then lexicographically, then by exponent,
/// independent of how the work is split across threads.
pub fn isolation_scan(g: &SubgroupGraph, bounds: &ScanBounds) -> Vec<Violation> {
    let rank = g.alphabet().rank();
    let exponents: Vec<u32> = bounds.exponents.iter().copied().collect();
    let mut out = Vec::new();
    for len in 1..=bounds.max_len {
        let words: Vec<Word> = reduced_words(rank, len).collect();
        let found: Vec<Vec<Violation>> = words
            .par_iter()
            .map(|f| violations_for(g, f, &exponents))
            .collect();
        out.extend(found.into_iter().flatten());
    }
    out
}

fn violations_for(g: &SubgroupGraph, f: &Word, exponents: &[u32]) -> Vec<Violation> {
    if g.contains(f) {
        return Vec::new();
    }
    exponents
        .iter()
        .filter(|&&m| g.contains(&f.power(i64::from(m))))
        .map(|&m| Violation {
            root: f.clone(),
            exponent: m,
            power_in_subgroup: true,
            root_in_subgroup: false,
        })
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The exponents a p′-isolation scan uses: primes `q ≠ p` from the bounds.
pub fn p_prime_exponents(p: u64, bounds: &ScanBounds) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(bounds
        .exponents
        .iter()
        .copied()
        .filter(|&q| is_prime(u64::from(q)) && u64::from(q) != p)
        .collect())
}

/// [`isolation_scan`] restricted to prime exponents `q ≠ p`.
pub fn p_prime_isolation_scan(g: &SubgroupGraph, p: u64, bounds: &ScanBounds) -> Result<Vec<Violation>> {
    let exponents = p_prime_exponents(p, bounds)?;
    if exponents.is_empty() {
        return Ok(Vec::new());
    }
    let restricted = ScanBounds::new(bounds.max_len, exponents)?;
    Ok(isolation_scan(g, &restricted))
}
