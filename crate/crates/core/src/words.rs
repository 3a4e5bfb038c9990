//! Reduced words in a free group of finite rank.
//!
//! Letters are `(generator, sign)` pairs and words are flat letter vectors
//! that are kept freely reduced by every constructor. In text form each
//! generator is a single lowercase character and the uppercase character
//! denotes its inverse, so `xYXyx` is `x y⁻¹ x⁻¹ y x`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Names handed out by [`Alphabet::standard`], in order.
pub const DEFAULT_NAMES: &str = "xyzwvutsrqponmlkjihgfedcba";

/// Generator names of a free group of finite rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: impl IntoIterator<Item = char>) -> Result<Self> {
        let names: Vec<char> = names.into_iter().collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, &c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidName(c));
            }
            if names[..i].contains(&c) {
                return Err(Error::DuplicateName(c));
            }
        }
        Ok(Alphabet { names })
    }

    /// The alphabet `x, y, z, w, …` of the given rank.
    pub fn standard(rank: usize) -> Result<Self> {
        let max = DEFAULT_NAMES.len();
        if rank > max {
            return Err(Error::RankTooLarge { rank, max });
        }
        Alphabet::new(DEFAULT_NAMES.chars().take(rank))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> char {
        self.names[generator]
    }

    pub fn index_of(&self, name: char) -> Option<usize> {
        self.names.iter().position(|&c| c == name)
    }

    /// Parses uppercase-inverse word text. The result is freely reduced.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            let lower = ch.to_ascii_lowercase();
            let generator = match self.index_of(lower) {
                Some(g) if ch.is_ascii_alphabetic() => g,
                _ => return Err(Error::UnknownGenerator { ch, pos }),
            };
            letters.push(Letter::new(generator, ch.is_ascii_uppercase()));
        }
        Ok(Word::reduce(letters))
    }

    pub fn format(&self, word: &Word) -> String {
        word.letters()
            .iter()
            .map(|l| {
                let c = self.names[l.generator()];
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    /// Checks that every letter of `word` names a generator of this alphabet.
    pub fn check(&self, word: &Word) -> Result<()> {
        match word.max_generator() {
            Some(g) if g >= self.rank() => Err(Error::GeneratorOutOfRange {
                index: g,
                rank: self.rank(),
            }),
            _ => Ok(()),
        }
    }
}

/// A generator or its inverse.
///
/// The derived ordering (generator first, positive before inverse) is the
/// lexicographic letter order used by every enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub const fn generator(self) -> usize {
        self.generator
    }

    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub const fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Dense index `2·generator + (inverse as usize)`; inverse letters differ in the low bit.
    pub const fn index(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub const fn from_index(index: usize) -> Self {
        Letter::new(index / 2, index % 2 == 1)
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(generator: usize) -> Self {
        Word {
            letters: vec![Letter::pos(generator)],
        }
    }

    pub fn letter(letter: Letter) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    /// Free reduction of an arbitrary letter sequence (single stack pass).
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            push_reduced(&mut stack, l);
        }
        Word { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // Only the seam can cancel.
        let mut overlap = 0;
        while overlap < self.len()
            && overlap < other.len()
            && self.letters[self.len() - 1 - overlap].cancels(other.letters[overlap])
        {
            overlap += 1;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^m`; negative exponents use the inverse and `m = 0` gives the identity.
    pub fn power(&self, m: i64) -> Word {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let m = m.unsigned_abs() as usize;
        if m == 0 || base.is_empty() {
            return Word::identity();
        }
        let (core, conjugator) = base.cyclically_reduce();
        let mut letters = Vec::with_capacity(2 * conjugator.len() + m * core.len());
        letters.extend_from_slice(&conjugator.letters);
        for _ in 0..m {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conjugator.letters.iter().rev().map(|l| l.inv()));
        Word { letters }
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(&self, other: &Word) -> Word {
        Word::reduce(
            self.inverse()
                .letters
                .into_iter()
                .chain(other.inverse().letters)
                .chain(self.letters.iter().copied())
                .chain(other.letters.iter().copied()),
        )
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].cancels(self.letters[n - 1 - k]) {
            k += 1;
        }
        (
            Word {
                letters: self.letters[k..n - k].to_vec(),
            },
            Word {
                letters: self.letters[..k].to_vec(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || !a.cancels(b),
            _ => true,
        }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl fmt::Display for Word {
    /// Prints with the standard names (`x, y, z, …`); use [`Alphabet::format`] for others.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = DEFAULT_NAMES.chars().collect();
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            let c = names.get(l.generator()).copied().unwrap_or('?');
            let c = if l.is_inverse() {
                c.to_ascii_uppercase()
            } else {
                c
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    match stack.last() {
        Some(&top) if top.cancels(l) => {
            stack.pop();
        }
        _ => stack.push(l),
    }
}

/// Substitutes `images[g]` for each letter `g` (inverse image for `g⁻¹`) and reduces.
pub fn apply_endomorphism(images: &[Word], w: &Word) -> Result<Word> {
    let mut stack = Vec::new();
    for &l in w.letters() {
        let image = images.get(l.generator()).ok_or(Error::GeneratorOutOfRange {
            index: l.generator(),
            rank: images.len(),
        })?;
        if l.is_inverse() {
            for &m in image.letters().iter().rev() {
                push_reduced(&mut stack, m.inv());
            }
        } else {
            for &m in image.letters() {
                push_reduced(&mut stack, m);
            }
        }
    }
    Ok(Word { letters: stack })
}

/// Generators `x·[y,x], y, z_j (j ∈ passive)` of the isolated subgroup that no
/// nilpotent quotient separates from `x`.
///
/// `passive` lists extra generator indices (each ≥ 2) that are included as-is.
pub fn isolated_subgroup_generators(alphabet: &Alphabet, passive: &[usize]) -> Result<Vec<Word>> {
    let rank = alphabet.rank();
    if rank < 2 {
        return Err(Error::RankTooSmall(rank));
    }
    let x = Word::generator(0);
    let y = Word::generator(1);
    let mut gens = vec![x.multiply(&y.commutator(&x)), y];
    for &j in passive {
        if j < 2 || j >= rank {
            return Err(Error::GeneratorOutOfRange { index: j, rank });
        }
        gens.push(Word::generator(j));
    }
    Ok(gens)
}

/// All reduced words of exactly `len` letters over `rank` generators, in
/// lexicographic order of [`Letter`].
pub fn reduced_words(rank: usize, len: usize) -> ReducedWords {
    ReducedWords::new(rank, len)
}

/// All reduced words with `1 ≤ |w| ≤ max_len`, ordered by length then lexicographically.
pub fn reduced_words_up_to(rank: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (1..=max_len).flat_map(move |len| reduced_words(rank, len))
}

/// Number of reduced words of length `len` over `rank` generators: `2r(2r−1)^(len−1)`.
pub fn reduced_word_count(rank: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let r = rank as u128;
    2 * r * (2 * r - 1).pow(len as u32 - 1)
}

/// Odometer over letter indices, skipping digits that would cancel the previous letter.
pub struct ReducedWords {
    alphabet_size: usize,
    digits: Option<Vec<usize>>,
}

impl ReducedWords {
    fn new(rank: usize, len: usize) -> Self {
        let alphabet_size = 2 * rank;
        let digits = if rank == 0 && len > 0 {
            None
        } else {
            let mut d = Vec::with_capacity(len);
            for i in 0..len {
                let prev = if i == 0 { None } else { Some(d[i - 1]) };
                d.push(smallest_after(prev, 0, alphabet_size).expect("rank >= 1"));
            }
            Some(d)
        };
        ReducedWords {
            alphabet_size,
            digits,
        }
    }

    fn advance(&mut self) {
        let Some(digits) = self.digits.as_mut() else {
            return;
        };
        let n = digits.len();
        let mut pos = n;
        loop {
            if pos == 0 {
                self.digits = None;
                return;
            }
            pos -= 1;
            let prev = if pos == 0 { None } else { Some(digits[pos - 1]) };
            if let Some(next) = smallest_after(prev, digits[pos] + 1, self.alphabet_size) {
                digits[pos] = next;
                for i in pos + 1..n {
                    digits[i] = smallest_after(Some(digits[i - 1]), 0, self.alphabet_size)
                        .expect("rank >= 1");
                }
                return;
            }
        }
    }
}

fn smallest_after(prev: Option<usize>, start: usize, size: usize) -> Option<usize> {
    (start..size).find(|&d| prev.is_none_or(|p| d != (p ^ 1)))
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let word = Word {
            letters: self
                .digits
                .as_ref()?
                .iter()
                .map(|&d| Letter::from_index(d))
                .collect(),
        };
        self.advance();
        Some(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Alphabet::standard(4).unwrap().parse(text).unwrap()
    }

    fn raw(text: &str) -> Vec<Letter> {
        let a = Alphabet::standard(4).unwrap();
        text.chars()
            .map(|c| {
                Letter::new(
                    a.index_of(c.to_ascii_lowercase()).unwrap(),
                    c.is_ascii_uppercase(),
                )
            })
            .collect()
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce(vec![]).is_empty());
        assert_eq!(Word::reduce(raw("xyY")), w("x"));
        // a·[x,y] = x
        assert_eq!(Word::reduce(raw("xYXyxXYxy")), w("x"));
    }

    #[test]
    fn group_operation_examples() {
        assert!(w("x").multiply(&w("X")).is_empty());
        assert_eq!(w("x").power(3).letters(), raw("xxx").as_slice());
        assert_eq!(w("Yx").power(2).letters(), raw("YxYx").as_slice());
        assert_eq!(w("xyX").power(3), w("xyyyX"));
        assert_eq!(w("xy").power(-2), w("YXYX"));
        assert!(w("xy").power(0).is_empty());
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(w("y").commutator(&w("x")), w("YXyx"));
        assert!(w("x").commutator(&w("x")).is_empty());
        assert_eq!(w("x").commutator(&w("y")), w("XYxy"));
        assert_eq!(w("x").commutator(&w("y")), w("y").commutator(&w("x")).inverse());
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(w("xyX").cyclically_reduce(), (w("y"), w("x")));
        assert_eq!(w("Yxy").cyclically_reduce(), (w("x"), w("Y")));
        assert_eq!(Word::identity().cyclically_reduce(), (w(""), w("")));
        assert_eq!(w("xyxY").cyclically_reduce(), (w("xyxY"), w("")));
    }

    #[test]
    fn subgroup_generator_examples() {
        let a2 = Alphabet::standard(2).unwrap();
        assert_eq!(
            isolated_subgroup_generators(&a2, &[]).unwrap(),
            vec![w("xYXyx"), w("y")]
        );
        let a3 = Alphabet::standard(3).unwrap();
        assert_eq!(
            isolated_subgroup_generators(&a3, &[2]).unwrap(),
            vec![w("xYXyx"), w("y"), w("z")]
        );
        let a1 = Alphabet::standard(1).unwrap();
        assert_eq!(
            isolated_subgroup_generators(&a1, &[]),
            Err(Error::RankTooSmall(1))
        );
        assert!(isolated_subgroup_generators(&a3, &[1]).is_err());
    }

    #[test]
    fn endomorphism_examples() {
        let id = vec![w("x"), w("y")];
        assert_eq!(apply_endomorphism(&id, &w("xYXyyx")).unwrap(), w("xYXyyx"));
        // x ↦ a in [y,x] = y⁻¹x⁻¹yx gives [y,a]
        let sub = vec![w("xYXyx"), w("y")];
        let got = apply_endomorphism(&sub, &w("YXyx")).unwrap();
        assert_eq!(got, w("y").commutator(&w("xYXyx")));
        assert_eq!(got, w("YXYxyXyxYXyx"));
        let kill = vec![Word::identity(), Word::identity()];
        assert!(apply_endomorphism(&kill, &w("xyXY")).unwrap().is_empty());
        assert!(apply_endomorphism(&id, &w("z")).is_err());
    }

    #[test]
    fn parse_and_format() {
        let a = Alphabet::standard(2).unwrap();
        assert_eq!(a.format(&a.parse("xYXyx").unwrap()), "xYXyx");
        assert_eq!(a.parse("xX").unwrap(), Word::identity());
        assert_eq!(
            a.parse("xyz"),
            Err(Error::UnknownGenerator { ch: 'z', pos: 2 })
        );
        assert_eq!(
            a.parse("x1"),
            Err(Error::UnknownGenerator { ch: '1', pos: 1 })
        );
        assert!(Alphabet::new("xx".chars()).is_err());
        assert!(Alphabet::new("xY".chars()).is_err());
        assert!(Alphabet::new([]).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        for rank in 1..=3 {
            for len in 0..=5 {
                let words: Vec<Word> = reduced_words(rank, len).collect();
                assert_eq!(words.len() as u128, reduced_word_count(rank, len));
                assert!(words.windows(2).all(|p| p[0] < p[1]));
                assert!(words.iter().all(|w| w.len() == len
                    && Word::reduce(w.letters().iter().copied()) == *w));
            }
        }
        let first: Vec<String> = reduced_words(2, 2).take(4).map(|w| w.to_string()).collect();
        assert_eq!(first, ["xx", "xy", "xY", "XX"]);
    }

    /// Every nonempty reduced word over {a, b} expands to an X-word containing y or y⁻¹.
    #[test]
    fn subgroup_words_always_contain_y() {
        let images = isolated_subgroup_generators(&Alphabet::standard(2).unwrap(), &[]).unwrap();
        for len in 1..=4 {
            for aw in reduced_words(2, len) {
                let xw = apply_endomorphism(&images, &aw).unwrap();
                assert!(xw.letters().iter().any(|l| l.generator() == 1), "{aw}");
            }
        }
        // with a passive z
        let images3 =
            isolated_subgroup_generators(&Alphabet::standard(3).unwrap(), &[2]).unwrap();
        for len in 1..=4 {
            for aw in reduced_words(3, len) {
                let xw = apply_endomorphism(&images3, &aw).unwrap();
                assert!(!xw.is_empty());
                assert_ne!(xw, Word::generator(0));
            }
        }
    }

    fn letters(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..rank, any::<bool>()), 0..max)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
        letters(rank, max).prop_map(Word::reduce)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(s in letters(3, 30)) {
            let r = Word::reduce(s);
            prop_assert_eq!(Word::reduce(r.letters().iter().copied()), r);
        }

        #[test]
        fn multiply_matches_reduction(u in word(3, 20), v in word(3, 20)) {
            let uv = u.multiply(&v);
            prop_assert!(uv.len() <= u.len() + v.len());
            prop_assert_eq!(&uv, &Word::reduce(u.letters().iter().chain(v.letters()).copied()));
            prop_assert!(u.multiply(&u.inverse()).is_empty());
        }

        #[test]
        fn power_recurrence(u in word(2, 12), m in -5i64..=5) {
            prop_assert_eq!(u.power(m + 1), u.power(m).multiply(&u));
        }

        #[test]
        fn cyclic_reduction_reassembles(f in word(2, 20)) {
            let (core, conj) = f.cyclically_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(conj.multiply(&core).multiply(&conj.inverse()), f);
        }

        #[test]
        fn endomorphism_is_multiplicative(u in word(2, 10), v in word(2, 10),
                                          i0 in word(2, 6), i1 in word(2, 6)) {
            let images = vec![i0, i1];
            let lhs = apply_endomorphism(&images, &u.multiply(&v)).unwrap();
            let rhs = apply_endomorphism(&images, &u).unwrap()
                .multiply(&apply_endomorphism(&images, &v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
