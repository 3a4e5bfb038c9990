//! Truncated Magnus expansion with integer coefficients.
//!
//! `g ↦ 1 + X_g` embeds the free group into the units of the noncommutative
//! power series ring. A word lies in the `d`-th lower central series term
//! exactly when its expansion minus one has no terms of degree below `d`, so
//! truncating at degree `n` decides membership in `γ_n` for every `n` up to
//! the cap.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::{Word, DEFAULT_NAMES};

/// A noncommutative monomial: generator indices, left to right.
pub type Monomial = Vec<u8>;

/// Integer series truncated above degree `cap`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    cap: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn one(cap: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigInt::one());
        TruncatedSeries { cap, terms }
    }

    /// Collects terms, summing repeats and dropping zeros and monomials above the cap.
    pub fn from_terms(cap: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if m.len() <= cap {
                *map.entry(m).or_default() += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        TruncatedSeries { cap, terms: map }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Terms in lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, monomial: &[u8]) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(One::is_one)
    }

    /// Lowest degree among nonzero non-constant terms.
    pub fn min_nonconstant_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).filter(|&d| d > 0).min()
    }

    /// Truncated product.
    pub fn series_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        let cap = self.cap;
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > cap {
                    continue;
                }
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                *out.entry(m).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries { cap, terms: out })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = DEFAULT_NAMES.chars().map(|c| c.to_ascii_uppercase()).collect();
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigInt::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for &g in m {
                write!(f, "{}", names.get(g as usize).copied().unwrap_or('?'))?;
            }
        }
        Ok(())
    }
}

/// Dense coefficient table over all monomials of length `≤ cap` in `rank` variables.
///
/// Monomials of length `k` are stored at `offsets[k] + v`, where `v` reads the
/// monomial as a base-`rank` number with the leftmost variable most significant.
struct DenseSeries {
    rank: usize,
    cap: usize,
    offsets: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl DenseSeries {
    fn one(rank: usize, cap: usize) -> Self {
        let mut offsets = Vec::with_capacity(cap + 2);
        let mut total = 0usize;
        let mut block = 1usize;
        for _ in 0..=cap {
            offsets.push(total);
            total += block;
            block *= rank;
        }
        offsets.push(total);
        let mut coeffs = vec![BigInt::zero(); total];
        coeffs[0] = BigInt::one();
        DenseSeries {
            rank,
            cap,
            offsets,
            coeffs,
        }
    }

    /// `self ← self · (1 + X_g)` or `self ← self · (1 + X_g)⁻¹`.
    fn mul_letter(&mut self, generator: usize, inverse: bool) {
        let rank = self.rank;
        let step = |coeffs: &mut [BigInt], offsets: &[usize], len: usize| {
            let (lo, hi) = coeffs.split_at_mut(offsets[len + 1]);
            let src = &lo[offsets[len]..];
            for (v, c) in src.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let dst = &mut hi[v * rank + generator];
                if inverse {
                    *dst -= c;
                } else {
                    *dst += c;
                }
            }
        };
        if inverse {
            // t[m·g] = s[m·g] − t[m], shortest monomials first.
            for len in 0..self.cap {
                step(&mut self.coeffs, &self.offsets, len);
            }
        } else {
            // s[m·g] += s[m], longest first so each source is read before it changes.
            for len in (0..self.cap).rev() {
                step(&mut self.coeffs, &self.offsets, len);
            }
        }
    }

    fn into_series(self) -> TruncatedSeries {
        let mut terms = BTreeMap::new();
        for len in 0..=self.cap {
            let start = self.offsets[len];
            let end = self.offsets[len + 1];
            for (v, c) in self.coeffs[start..end].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut m = vec![0u8; len];
                let mut rest = v;
                for slot in m.iter_mut().rev() {
                    *slot = (rest % self.rank) as u8;
                    rest /= self.rank;
                }
                terms.insert(m, c.clone());
            }
        }
        TruncatedSeries {
            cap: self.cap,
            terms,
        }
    }
}

/// Magnus expansion of `w` truncated above degree `cap`.
pub fn magnus(w: &Word, cap: usize) -> TruncatedSeries {
    let rank = w.max_generator().map_or(1, |g| g + 1);
    let mut dense = DenseSeries::one(rank, cap);
    for l in w.letters() {
        dense.mul_letter(l.generator(), l.is_inverse());
    }
    dense.into_series()
}

/// Lower-central-series weight of a word relative to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// `w ∈ γ_d \ γ_{d+1}` with `d` below the cap.
    Exact(usize),
    /// `w ∈ γ_n` for the cap `n`; finer information was not computed.
    AtLeast(usize),
}

impl Weight {
    /// A lower bound on the weight that is exact for `Exact`.
    pub fn value(self) -> usize {
        match self {
            Weight::Exact(d) | Weight::AtLeast(d) => d,
        }
    }

    pub fn is_at_least(self, n: usize) -> bool {
        match self {
            Weight::Exact(d) => d >= n,
            Weight::AtLeast(d) => d >= n,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(d) => write!(f, "{d}"),
            Weight::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// Smallest degree of a nonzero non-constant term of the expansion, or `AtLeast(n)`.
pub fn lcs_weight(w: &Word, n: usize) -> Result<Weight> {
    if n < 2 {
        return Err(Error::InvalidCap { min: 2, got: n });
    }
    // A term of degree n would still report AtLeast(n), so cap n − 1 suffices.
    Ok(match magnus(w, n - 1).min_nonconstant_degree() {
        Some(d) => Weight::Exact(d),
        None => Weight::AtLeast(n),
    })
}

/// `w ∈ γ_n F`.
pub fn in_gamma(w: &Word, n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    matches!(lcs_weight(w, n), Ok(Weight::AtLeast(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Letter};
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Alphabet::standard(3).unwrap().parse(text).unwrap()
    }

    fn series(cap: usize, terms: &[(&[u8], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(cap, terms.iter().map(|(m, c)| (m.to_vec(), BigInt::from(*c))))
    }

    /// Signed count of embeddings of `monomial` into `w`, where an inverse
    /// letter may absorb a run of `t ≥ 1` equal variables with sign `(−1)^t`.
    fn coefficient_by_embedding(w: &Word, monomial: &[u8]) -> BigInt {
        let k = monomial.len();
        let mut ways = vec![BigInt::zero(); k + 1];
        ways[0] = BigInt::one();
        for l in w.letters() {
            let g = l.generator() as u8;
            let prev = ways.clone();
            for j in 0..k {
                if prev[j].is_zero() {
                    continue;
                }
                if !l.is_inverse() {
                    if monomial[j] == g {
                        ways[j + 1] += &prev[j];
                    }
                } else {
                    let mut t = 0;
                    while j + t < k && monomial[j + t] == g {
                        t += 1;
                        if t % 2 == 1 {
                            ways[j + t] -= &prev[j];
                        } else {
                            ways[j + t] += &prev[j];
                        }
                    }
                }
            }
        }
        ways[k].clone()
    }

    fn all_monomials(rank: u8, cap: usize) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..cap {
            layer = layer
                .iter()
                .flat_map(|m: &Monomial| {
                    (0..rank).map(move |g| {
                        let mut n = m.clone();
                        n.push(g);
                        n
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn check_against_embedding_oracle(word: &Word, rank: u8, cap: usize) {
        let s = magnus(word, cap);
        for m in all_monomials(rank, cap) {
            assert_eq!(
                s.coefficient(&m),
                coefficient_by_embedding(word, &m),
                "{word} at {m:?}"
            );
        }
    }

    #[test]
    fn series_mul_examples() {
        let one = TruncatedSeries::one(2);
        assert!(one.series_mul(&one).unwrap().is_one());
        let a = series(2, &[(&[], 1), (&[0], 1)]);
        let b = series(2, &[(&[], 1), (&[0], -1), (&[0, 0], 1)]);
        assert!(a.series_mul(&b).unwrap().is_one());
        let c = series(2, &[(&[], 1), (&[1], 1)]);
        assert_eq!(
            a.series_mul(&c).unwrap(),
            series(2, &[(&[], 1), (&[0], 1), (&[1], 1), (&[0, 1], 1)])
        );
        assert_eq!(
            a.series_mul(&TruncatedSeries::one(3)),
            Err(Error::CapMismatch(2, 3))
        );
    }

    #[test]
    fn magnus_examples() {
        assert!(magnus(&Word::identity(), 4).is_one());
        assert_eq!(magnus(&w("x"), 2), series(2, &[(&[], 1), (&[0], 1)]));
        assert_eq!(
            magnus(&w("YXyx"), 2),
            series(2, &[(&[], 1), (&[1, 0], 1), (&[0, 1], -1)])
        );
        assert_eq!(magnus(&w("YXyx"), 2).to_string(), "1 - XY + YX");
        assert_eq!(
            magnus(&w("X"), 3),
            series(3, &[(&[], 1), (&[0], -1), (&[0, 0], 1), (&[0, 0, 0], -1)])
        );
    }

    #[test]
    fn magnus_matches_embedding_oracle() {
        for text in ["xYXyx", "YXyx", "XXyyxYzZx", "xxxYYYxxyXzyZ", "xyXYxyXY"] {
            check_against_embedding_oracle(&w(text), 3, 4);
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(lcs_weight(&w("x"), 5), Ok(Weight::Exact(1)));
        let yx = w("y").commutator(&w("x"));
        assert_eq!(lcs_weight(&yx, 5), Ok(Weight::Exact(2)));
        assert_eq!(lcs_weight(&yx.commutator(&w("x")), 5), Ok(Weight::Exact(3)));
        assert_eq!(lcs_weight(&yx, 2), Ok(Weight::AtLeast(2)));
        assert_eq!(lcs_weight(&Word::identity(), 6), Ok(Weight::AtLeast(6)));
        assert!(lcs_weight(&yx, 1).is_err());
    }

    #[test]
    fn gamma_examples() {
        let yx = w("y").commutator(&w("x"));
        assert!(in_gamma(&yx, 2));
        assert!(!in_gamma(&yx, 3));
        assert!(in_gamma(&Word::identity(), 100));
        assert!(in_gamma(&w("x"), 1));
        assert!(!in_gamma(&w("x"), 2));
    }

    #[test]
    fn coefficients_stay_exact_beyond_i64() {
        // coefficient of X^k in x^m is binomial(m, k)
        let x = Word::generator(0).power(400);
        let s = magnus(&x, 12);
        let expected: BigInt = (0..12u32).fold(BigInt::one(), |acc, i| acc * (400 - i) / (i + 1));
        assert_eq!(s.coefficient(&[0; 12]), expected);
        assert!(expected > BigInt::from(i64::MAX));
    }

    fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, any::<bool>()), 0..max)
            .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn homomorphism_law(u in word(2, 12), v in word(2, 12), n in 1usize..=6) {
            let lhs = magnus(&u.multiply(&v), n);
            let rhs = magnus(&u, n).series_mul(&magnus(&v, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_law(u in word(3, 12), n in 1usize..=5) {
            prop_assert!(magnus(&u, n).series_mul(&magnus(&u.inverse(), n)).unwrap().is_one());
        }

        #[test]
        fn dense_matches_oracle(u in word(2, 10)) {
            check_against_embedding_oracle(&u, 2, 4);
        }

        #[test]
        fn superadditive(u in word(2, 8), v in word(2, 8)) {
            let n = 7;
            let wu = lcs_weight(&u, n).unwrap().value();
            let wv = lcs_weight(&v, n).unwrap().value();
            let wc = lcs_weight(&u.commutator(&v), n).unwrap();
            prop_assert!(wc.is_at_least((wu + wv).min(n)));
        }

        #[test]
        fn conjugation_invariant(g in word(2, 6), u in word(2, 8)) {
            let conj = g.multiply(&u).multiply(&g.inverse());
            prop_assert_eq!(lcs_weight(&conj, 6).unwrap(), lcs_weight(&u, 6).unwrap());
        }

        #[test]
        fn weight_agrees_with_full_cap(u in word(2, 10), n in 2usize..=6) {
            let full = magnus(&u, n);
            let expected = match full.min_nonconstant_degree() {
                Some(d) if d < n => Weight::Exact(d),
                _ => Weight::AtLeast(n),
            };
            prop_assert_eq!(lcs_weight(&u, n).unwrap(), expected);
        }
    }
}
