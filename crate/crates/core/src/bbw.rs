//! Finite-level Bott-Borel-Weil resolution via the dot action
//! w·λ = w(λ+ρ) − ρ: either λ+ρ lies on a wall and every cohomology group
//! vanishes, or there is a unique Weyl element moving λ+ρ into the open
//! dominant chamber, and the cohomology sits in the single degree l(w).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::weights::{rho_coeffs, ClassicalType, RankedWeight};
use crate::weyl::weyl_enumerate;
use crate::{Half, Result};

/// Outcome of resolving one weight at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "outcome", rename_all = "snake_case"))]
pub enum BBWOutcome {
    /// λ+ρ lies on a wall; all cohomology vanishes.
    Singular,
    /// Cohomology concentrated in `degree`, with the given dominant weight.
    Regular { degree: u64, weight: RankedWeight },
}

impl BBWOutcome {
    pub fn is_singular(&self) -> bool {
        matches!(self, BBWOutcome::Singular)
    }
}

/// Resolves a weight by the dot action.
///
/// The degree is computed combinatorially (inversions plus, for B/C/D, the
/// sign-change contributions), which equals the number of positive roots
/// pairing negatively with λ+ρ; debug builds cross-check it against an
/// explicit simple-reflection walk.
pub fn bbw_resolve(lambda: &RankedWeight) -> BBWOutcome {
    let ty = lambda.ty();
    let rank = lambda.rank();
    let rho = rho_coeffs(ty, rank);
    let v: Vec<Half> = lambda.coeffs().iter().zip(&rho).map(|(&a, &b)| a + b).collect();

    if is_singular(ty, &v) {
        return BBWOutcome::Singular;
    }

    let degree = dot_degree(ty, &v);
    let sorted = dominant_conjugate(ty, &v);

    #[cfg(debug_assertions)]
    {
        let (walk_steps, walk_sorted) = reflection_walk(ty, &v);
        debug_assert_eq!(walk_steps, degree, "reflection walk disagrees on the degree");
        debug_assert_eq!(walk_sorted, sorted, "reflection walk disagrees on the chamber image");
    }

    let coeffs: Vec<Half> = sorted.iter().zip(&rho).map(|(&a, &b)| a - b).collect();
    let weight = RankedWeight::new(ty, rank, coeffs)
        .expect("dominant conjugate minus rho has the input shape");
    debug_assert!(weight.is_dominant());
    BBWOutcome::Regular { degree, weight }
}

/// The wall test on v = λ+ρ. No other code path may declare singularity.
///
/// A: two equal entries. B: repeated absolute value or a zero entry (for
/// all-half-integer v the zero test is vacuous). C: repeated absolute value
/// or a zero entry. D: repeated absolute value, two zeros counting as a
/// repeat.
fn is_singular(ty: ClassicalType, v: &[Half]) -> bool {
    match ty {
        ClassicalType::A => {
            let mut seen = BTreeSet::new();
            v.iter().any(|&x| !seen.insert(x))
        }
        ClassicalType::B | ClassicalType::C => {
            let mut seen = BTreeSet::new();
            v.iter().any(|&x| x.is_zero() || !seen.insert(x.abs()))
        }
        // Two zeros share an absolute value, so the plain test covers the
        // two-zeros rule; a single zero entry is not a wall for D.
        ClassicalType::D => {
            let mut seen = BTreeSet::new();
            v.iter().any(|&x| !seen.insert(x.abs()))
        }
    }
}

/// Number of positive roots pairing strictly negatively with v; for regular
/// v this is the Coxeter length of the chamber-moving element.
fn dot_degree(ty: ClassicalType, v: &[Half]) -> u64 {
    let n = v.len();
    let mut count = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            if v[i] < v[j] {
                count += 1;
            }
            if !matches!(ty, ClassicalType::A) && (v[i] + v[j]) < Half::ZERO {
                count += 1;
            }
        }
    }
    if matches!(ty, ClassicalType::B | ClassicalType::C) {
        count += v.iter().filter(|&&x| x < Half::ZERO).count() as u64;
    }
    count
}

/// The unique strictly dominant vector in the Weyl orbit of regular v.
fn dominant_conjugate(ty: ClassicalType, v: &[Half]) -> Vec<Half> {
    match ty {
        ClassicalType::A => {
            let mut sorted = v.to_vec();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            sorted
        }
        ClassicalType::B | ClassicalType::C => {
            let mut sorted: Vec<Half> = v.iter().map(|x| x.abs()).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            sorted
        }
        ClassicalType::D => {
            let negatives = v.iter().filter(|&&x| x < Half::ZERO).count();
            let mut sorted: Vec<Half> = v.iter().map(|x| x.abs()).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            // Only an even number of sign changes is available in W(D).
            if negatives % 2 == 1 {
                let last = sorted.last_mut().expect("rank >= 2");
                *last = -*last;
            }
            sorted
        }
    }
}

/// Second internal oracle: sort v into the dominant chamber by simple
/// reflections, counting steps. For regular v the step count is the Coxeter
/// length of the sorting element.
pub(crate) fn reflection_walk(ty: ClassicalType, v: &[Half]) -> (u64, Vec<Half>) {
    let mut w = v.to_vec();
    let n = w.len();
    let mut steps = 0u64;
    loop {
        let mut acted = false;
        for i in 0..n - 1 {
            if w[i] < w[i + 1] {
                w.swap(i, i + 1);
                steps += 1;
                acted = true;
            }
        }
        match ty {
            ClassicalType::A => {}
            ClassicalType::B | ClassicalType::C => {
                if w[n - 1] < Half::ZERO {
                    w[n - 1] = -w[n - 1];
                    steps += 1;
                    acted = true;
                }
            }
            ClassicalType::D => {
                if w[n - 2] + w[n - 1] < Half::ZERO {
                    let (a, b) = (w[n - 2], w[n - 1]);
                    w[n - 2] = -b;
                    w[n - 1] = -a;
                    steps += 1;
                    acted = true;
                }
            }
        }
        if !acted {
            return (steps, w);
        }
    }
}

/// Brute-force resolution over the full Weyl group (ranks within the oracle
/// cap): singular iff no element sends λ+ρ strictly dominant, otherwise the
/// minimal length achieving a strictly dominant image.
pub fn bbw_resolve_oracle(lambda: &RankedWeight) -> Result<BBWOutcome> {
    let ty = lambda.ty();
    let rank = lambda.rank();
    let rho = rho_coeffs(ty, rank);
    let v: Vec<Half> = lambda.coeffs().iter().zip(&rho).map(|(&a, &b)| a + b).collect();

    let mut best: Option<(u64, Vec<Half>)> = None;
    for (w, length) in weyl_enumerate(ty, rank)? {
        let image = w.apply(&v);
        if is_strictly_dominant(ty, &image)
            && best.as_ref().map_or(true, |(l, _)| length < *l)
        {
            best = Some((length, image));
        }
    }
    Ok(match best {
        None => BBWOutcome::Singular,
        Some((degree, image)) => {
            let coeffs: Vec<Half> = image.iter().zip(&rho).map(|(&a, &b)| a - b).collect();
            let weight = RankedWeight::new(ty, rank, coeffs).expect("shape preserved");
            BBWOutcome::Regular { degree, weight }
        }
    })
}

fn is_strictly_dominant(ty: ClassicalType, v: &[Half]) -> bool {
    let n = v.len();
    if v.windows(2).any(|w| w[0] <= w[1]) {
        return false;
    }
    match ty {
        ClassicalType::A => true,
        ClassicalType::B | ClassicalType::C => v[n - 1] > Half::ZERO,
        ClassicalType::D => v[n - 2] + v[n - 1] > Half::ZERO,
    }
}

/// An irreducible P-module with Levi-dominant highest weight λ induces the
/// same cohomology as the G/B line bundle of weight λ; this checks the
/// Levi-dominance condition ⟨λ, α∨⟩ >= 0 on the given Levi simple roots
/// (1-based indices; the empty set is the Borel case).
pub fn parabolic_validity(lambda: &RankedWeight, levi_roots: &BTreeSet<u32>) -> Result<bool> {
    for &index in levi_roots {
        if lambda.simple_coroot_pairing(index)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
