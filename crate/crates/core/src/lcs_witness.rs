//! Explicit certificates that `x` and the subgroup `H = ⟨x·[y,x], y⟩` have the
//! same image in every free nilpotent quotient `F/γ_n F`.
//!
//! With `a = x·[y,x]` and `b = y` one has `x = a·[x,y]`. The words
//! `W_2 = a`, `W_{k+1} = a·[W_k, b]` over `{a, b}` then satisfy
//! `W_n ≡ x (mod γ_n F)`. Nothing here trusts that argument: each witness is
//! expanded over `{x, y}` and checked with the Magnus criterion.

use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magnus::{lcs_weight, Weight};
use crate::words::{apply_endomorphism, isolated_subgroup_generators, Alphabet, Word};

/// Exponent-sum vector, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianVector(pub Vec<i64>);

impl AbelianVector {
    pub fn zero(rank: usize) -> Self {
        AbelianVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl Add for &AbelianVector {
    type Output = AbelianVector;

    fn add(self, rhs: &AbelianVector) -> AbelianVector {
        let n = self.0.len().max(rhs.0.len());
        AbelianVector(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

/// Image of `w` in `F/γ_2 F = ℤ^rank`.
pub fn abelianize(w: &Word, rank: usize) -> AbelianVector {
    let mut v = vec![0i64; rank.max(w.max_generator().map_or(0, |g| g + 1))];
    for l in w.letters() {
        v[l.generator()] += l.sign();
    }
    AbelianVector(v)
}

/// Whether `v` is an integer combination of `basis`, by exact Hermite-style row reduction.
pub fn lattice_contains(basis: &[AbelianVector], v: &AbelianVector) -> bool {
    let width = basis
        .iter()
        .map(AbelianVector::rank)
        .chain([v.rank()])
        .max()
        .unwrap_or(0);
    let widen = |a: &AbelianVector| -> Vec<BigInt> {
        (0..width)
            .map(|i| BigInt::from(a.0.get(i).copied().unwrap_or(0)))
            .collect()
    };
    let mut rows: Vec<Vec<BigInt>> = basis.iter().map(widen).collect();
    let pivots = echelonize(&mut rows);

    let mut target = widen(v);
    let mut next = 0;
    for col in 0..width {
        if next < pivots.len() && pivots[next] == col {
            let row = &rows[next];
            let (q, r) = target[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (t, e) in target.iter_mut().zip(row) {
                *t -= &q * e;
            }
            next += 1;
        } else if !target[col].is_zero() {
            return false;
        }
    }
    true
}

/// Integer row echelon form in place; returns the pivot column of each nonzero row.
fn echelonize(rows: &mut Vec<Vec<BigInt>>) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        loop {
            // Smallest nonzero entry at or below `top` becomes the pivot candidate.
            let best = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut clean = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                let (head, tail) = rows.split_at_mut(r);
                for (e, p) in tail[0].iter_mut().zip(&head[top]) {
                    *e -= &q * p;
                }
                clean &= rows[r][col].is_zero();
            }
            if clean {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for e in rows[top].iter_mut() {
                    *e = -&*e;
                }
            }
            pivots.push(col);
            top += 1;
        }
    }
    rows.truncate(top);
    pivots
}

/// A certified witness that `φ_n(x) ∈ φ_n(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub n: usize,
    /// `W_n` over the subgroup generators (`a` = generator 0, `b` = generator 1).
    pub witness: Word,
    /// `W_n` written over `{x, y}`.
    pub expanded: Word,
    /// Weight of `expanded⁻¹ · x`, checked at cap `n`.
    pub discrepancy_weight: Weight,
}

/// Alphabet `{a, b}` used to print witnesses over the subgroup generators.
pub fn witness_alphabet() -> Alphabet {
    Alphabet::new(['a', 'b']).expect("static alphabet")
}

/// `W_2 = a`, `W_{k+1} = a·[W_k, b]`, for `k` up to `n`; the result is `W_n`.
pub fn witness_word(n: usize) -> Result<Word> {
    if n < 2 {
        return Err(Error::ClassTooSmall(n));
    }
    let a = Word::generator(0);
    let b = Word::generator(1);
    let mut w = a.clone();
    for _ in 2..n {
        w = a.multiply(&w.commutator(&b));
    }
    Ok(w)
}

/// The images `a ↦ x·[y,x]`, `b ↦ y` that expand witnesses over `{x, y}`.
pub fn subgroup_images() -> Vec<Word> {
    isolated_subgroup_generators(&Alphabet::standard(2).expect("rank 2"), &[])
        .expect("rank 2 construction")
}

/// Verifies an expanded witness: `lcs_weight(expanded⁻¹·x, n) ≥ n`.
pub fn certify(expanded: &Word, n: usize) -> Result<Weight> {
    let discrepancy = expanded.inverse().multiply(&Word::generator(0));
    let weight = lcs_weight(&discrepancy, n)?;
    if weight.is_at_least(n) {
        Ok(weight)
    } else {
        Err(Error::CertificationFailed {
            n,
            weight: weight.value(),
        })
    }
}

pub fn witness(n: usize) -> Result<WitnessReport> {
    let witness = witness_word(n)?;
    let expanded = apply_endomorphism(&subgroup_images(), &witness)?;
    let discrepancy_weight = certify(&expanded, n)?;
    Ok(WitnessReport {
        n,
        witness,
        expanded,
        discrepancy_weight,
    })
}

/// Certified witnesses for every class `2 ≤ n ≤ n_max`, ordered by `n`.
pub fn nilpotent_image_equality(n_max: usize) -> Result<Vec<WitnessReport>> {
    if n_max < 2 {
        return Err(Error::ClassTooSmall(n_max));
    }
    (2..=n_max).into_par_iter().map(witness).collect()
}
