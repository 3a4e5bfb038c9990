//! Small concrete p-groups and exhaustive homomorphism scans from a free group.
//!
//! Since `F` is free, every assignment of target elements to generators is a
//! homomorphism. A scan enumerates all of them and counts those that send the
//! excluded word outside the image of the subgroup.

use std::collections::{HashSet, VecDeque};
use std::fmt::{self, Debug};
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isolation::is_prime;
use crate::stallings::{invert_permutation, PermutationRep};
use crate::words::Word;

/// Default cap on `|G|^(active generators)` per target.
pub const DEFAULT_HOM_BUDGET: u128 = 1_000_000;

/// A finite group given by its multiplication.
pub trait Group {
    type Element: Clone + Eq + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
}

/// Canonical element code: a residue for cyclic groups, the above-diagonal
/// entries read as a base-`p` number for unitriangular matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub u64);

/// The scan targets: `ℤ/p^k` and upper unitriangular `n×n` matrices over `ℤ/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteGroup {
    Cyclic { p: u64, k: u32 },
    Unitriangular { n: usize, p: u64 },
}

const MAX_DIM: usize = 4;
type Matrix = [[u64; MAX_DIM]; MAX_DIM];

impl FiniteGroup {
    pub fn cyclic(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || p.checked_pow(k).is_none_or(|o| o > 1 << 32) {
            return Err(Error::UnsupportedGroup(format!("cyclic group of order {p}^{k}")));
        }
        Ok(FiniteGroup::Cyclic { p, k })
    }

    pub fn unitriangular(n: usize, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(3..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedGroup(format!(
                "unitriangular matrices of size {n} (supported: 3, 4)"
            )));
        }
        if p > 1 << 10 {
            return Err(Error::UnsupportedGroup(format!("UT({n},{p}) is too large")));
        }
        Ok(FiniteGroup::Unitriangular { n, p })
    }

    /// The Heisenberg group mod `p`.
    pub fn heisenberg(p: u64) -> Result<Self> {
        FiniteGroup::unitriangular(3, p)
    }

    pub fn prime(&self) -> u64 {
        match *self {
            FiniteGroup::Cyclic { p, .. } | FiniteGroup::Unitriangular { p, .. } => p,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            FiniteGroup::Cyclic { p, k } => p.pow(k),
            FiniteGroup::Unitriangular { n, p } => p.pow((n * (n - 1) / 2) as u32),
        }
    }

    pub fn element(&self, code: u64) -> Option<Element> {
        (code < self.order()).then_some(Element(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order()).map(Element)
    }

    /// Row-major entries: `[residue]` or the full `n×n` matrix.
    pub fn entries(&self, e: Element) -> Vec<u64> {
        match *self {
            FiniteGroup::Cyclic { .. } => vec![e.0],
            FiniteGroup::Unitriangular { n, p } => {
                let m = decode(n, p, e.0);
                (0..n).flat_map(|i| (0..n).map(move |j| m[i][j])).collect()
            }
        }
    }

    pub fn from_entries(&self, entries: &[u64]) -> Result<Element> {
        let bad = |reason: String| Error::InvalidElement {
            group: self.to_string(),
            reason,
        };
        match *self {
            FiniteGroup::Cyclic { .. } => match entries {
                [r] if *r < self.order() => Ok(Element(*r)),
                _ => Err(bad(format!("expected one residue below {}", self.order()))),
            },
            FiniteGroup::Unitriangular { n, p } => {
                if entries.len() != n * n {
                    return Err(bad(format!("expected {} entries", n * n)));
                }
                let mut m: Matrix = [[0; MAX_DIM]; MAX_DIM];
                for i in 0..n {
                    for j in 0..n {
                        let e = entries[i * n + j];
                        let want = match i.cmp(&j) {
                            std::cmp::Ordering::Equal => Some(1),
                            std::cmp::Ordering::Greater => Some(0),
                            std::cmp::Ordering::Less => None,
                        };
                        if want.is_some_and(|w| w != e) || e >= p {
                            return Err(bad(format!("entry ({i},{j}) = {e} is not unitriangular mod {p}")));
                        }
                        m[i][j] = e;
                    }
                }
                Ok(Element(encode(n, p, &m)))
            }
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteGroup::Cyclic { p, k } => write!(f, "C({p}^{k})"),
            FiniteGroup::Unitriangular { n, p } => write!(f, "UT({n},{p})"),
        }
    }
}

fn decode(n: usize, p: u64, mut code: u64) -> Matrix {
    let mut m: Matrix = [[0; MAX_DIM]; MAX_DIM];
    for i in (0..n).rev() {
        m[i][i] = 1;
        for j in (i + 1..n).rev() {
            m[i][j] = code % p;
            code /= p;
        }
    }
    m
}

fn encode(n: usize, p: u64, m: &Matrix) -> u64 {
    let mut code = 0;
    for i in 0..n {
        for j in i + 1..n {
            code = code * p + m[i][j];
        }
    }
    code
}

impl Group for FiniteGroup {
    type Element = Element;

    fn identity(&self) -> Element {
        Element(0)
    }

    fn compose(&self, a: &Element, b: &Element) -> Element {
        match *self {
            FiniteGroup::Cyclic { .. } => Element((a.0 + b.0) % self.order()),
            FiniteGroup::Unitriangular { n, p } => {
                let (x, y) = (decode(n, p, a.0), decode(n, p, b.0));
                let mut z: Matrix = [[0; MAX_DIM]; MAX_DIM];
                for i in 0..n {
                    z[i][i] = 1;
                    for j in i + 1..n {
                        z[i][j] = (i..=j).map(|k| x[i][k] * y[k][j]).sum::<u64>() % p;
                    }
                }
                Element(encode(n, p, &z))
            }
        }
    }

    fn invert(&self, a: &Element) -> Element {
        match *self {
            FiniteGroup::Cyclic { .. } => Element((self.order() - a.0) % self.order()),
            FiniteGroup::Unitriangular { n, p } => {
                // Back substitution on (I + N)·Y = I, column by column.
                let x = decode(n, p, a.0);
                let mut y: Matrix = [[0; MAX_DIM]; MAX_DIM];
                for j in 0..n {
                    y[j][j] = 1;
                    for i in (0..j).rev() {
                        let s: u64 = (i + 1..=j).map(|k| x[i][k] * y[k][j] % p).sum::<u64>() % p;
                        y[i][j] = (p - s) % p;
                    }
                }
                Element(encode(n, p, &y))
            }
        }
    }
}

/// `Sym(degree)`; permutations act on the right, so `compose(a, b)` applies `a` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricGroup {
    pub degree: usize,
}

impl Group for SymmetricGroup {
    type Element = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        (0..self.degree).collect()
    }

    fn compose(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        a.iter().map(|&i| b[i]).collect()
    }

    fn invert(&self, a: &Vec<usize>) -> Vec<usize> {
        invert_permutation(a).expect("valid permutation")
    }
}

/// A homomorphism from the free group, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism<G: Group> {
    pub target: G,
    pub images: Vec<G::Element>,
}

impl<G: Group> Homomorphism<G> {
    pub fn new(target: G, images: Vec<G::Element>) -> Self {
        Homomorphism { target, images }
    }

    /// Multiplicative extension to words. Generators beyond `images` map to the identity.
    pub fn evaluate(&self, w: &Word) -> G::Element {
        let g = &self.target;
        w.letters().iter().fold(g.identity(), |acc, l| {
            let Some(img) = self.images.get(l.generator()) else {
                return acc;
            };
            if l.is_inverse() {
                g.compose(&acc, &g.invert(img))
            } else {
                g.compose(&acc, img)
            }
        })
    }

    /// `φ(f) ∉ ⟨φ(gens)⟩`.
    pub fn separates(&self, gens: &[Word], f: &Word) -> bool {
        let images: Vec<G::Element> = gens.iter().map(|w| self.evaluate(w)).collect();
        !closure(&self.target, &images).contains(&self.evaluate(f))
    }
}

impl From<&PermutationRep> for Homomorphism<SymmetricGroup> {
    fn from(rep: &PermutationRep) -> Self {
        Homomorphism::new(
            SymmetricGroup {
                degree: rep.degree(),
            },
            rep.images().to_vec(),
        )
    }
}

/// The subgroup generated by `elems`, by breadth-first search from the identity.
pub fn closure<G: Group>(group: &G, elems: &[G::Element]) -> HashSet<G::Element> {
    let mut steps: Vec<G::Element> = elems.to_vec();
    steps.extend(elems.iter().map(|e| group.invert(e)));
    let id = group.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in &steps {
            let next = group.compose(&e, s);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Outcome of scanning one target group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetResult {
    pub group: FiniteGroup,
    pub homs_total: u128,
    pub homs_separating: u128,
    /// The separating homomorphism that comes first in enumeration order.
    pub first_separating: Option<Homomorphism<FiniteGroup>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub generators: Vec<Word>,
    pub excluded: Word,
    /// Generators that received images; all others map to the identity.
    pub active_generators: Vec<usize>,
    pub targets: Vec<TargetResult>,
}

impl SeparabilityReport {
    pub fn homs_total(&self) -> u128 {
        self.targets.iter().map(|t| t.homs_total).sum()
    }

    pub fn homs_separating(&self) -> u128 {
        self.targets.iter().map(|t| t.homs_separating).sum()
    }

    pub fn first_separating(&self) -> Option<&Homomorphism<FiniteGroup>> {
        self.targets.iter().find_map(|t| t.first_separating.as_ref())
    }
}

/// Enumerates every homomorphism `F → G` for each target `G` and counts those
/// with `φ(f) ∉ ⟨φ(gens)⟩`.
///
/// Only generators occurring in `gens` or `f` get images. Assignments are
/// enumerated as base-`|G|` numbers with the lowest active generator most
/// significant; fails before scanning if any target exceeds `budget`.
pub fn separability_scan(
    gens: &[Word],
    f: &Word,
    targets: &[FiniteGroup],
    budget: u128,
) -> Result<SeparabilityReport> {
    let mut active: Vec<usize> = gens
        .iter()
        .chain([f])
        .flat_map(|w| w.letters().iter().map(|l| l.generator()))
        .collect();
    active.sort_unstable();
    active.dedup();
    let rank = active.last().map_or(0, |g| g + 1);

    for &t in targets {
        let required = u128::from(t.order()).pow(active.len() as u32);
        if required > budget {
            return Err(Error::BudgetExceeded {
                group: t.to_string(),
                required,
                budget,
            });
        }
    }

    let results = targets
        .iter()
        .map(|&group| scan_target(group, gens, f, &active, rank))
        .collect();
    Ok(SeparabilityReport {
        generators: gens.to_vec(),
        excluded: f.clone(),
        active_generators: active,
        targets: results,
    })
}

fn assignment(group: FiniteGroup, active: &[usize], rank: usize, mut index: u128) -> Homomorphism<FiniteGroup> {
    let order = u128::from(group.order());
    let mut images = vec![group.identity(); rank];
    for &g in active.iter().rev() {
        images[g] = Element((index % order) as u64);
        index /= order;
    }
    Homomorphism::new(group, images)
}

fn scan_target(group: FiniteGroup, gens: &[Word], f: &Word, active: &[usize], rank: usize) -> TargetResult {
    let total = u128::from(group.order()).pow(active.len() as u32);
    let (count, first) = (0..total as u64)
        .into_par_iter()
        .map(|i| {
            let hom = assignment(group, active, rank, u128::from(i));
            if hom.separates(gens, f) {
                (1u128, Some(i))
            } else {
                (0, None)
            }
        })
        .reduce(
            || (0, None),
            |(c1, f1), (c2, f2)| {
                let first = match (f1, f2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (c1 + c2, first)
            },
        );
    TargetResult {
        group,
        homs_total: total,
        homs_separating: count,
        first_separating: first.map(|i| assignment(group, active, rank, u128::from(i))),
    }
}
