//! Weights of the classical simple Lie algebras in ε-coordinates: dominance,
//! ρ-vectors, and the Weyl dimension formula, all in exact arithmetic.
//!
//! Conventions (Bourbaki ε-coordinates):
//! * type A, rank r: vectors of length r+1, read modulo the all-ones vector;
//!   the canonical representative has minimum entry 0;
//! * types B, C, D, rank r: vectors of length r; B and D admit all-integer or
//!   all-half-integer (spin) vectors, A and C are all-integer.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::{Error, Half, Result};

/// The four classical families of simple root systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ClassicalType {
    A,
    B,
    C,
    D,
}

impl ClassicalType {
    /// Smallest rank for which the type is accepted. D needs rank 2; a
    /// rank-1 "D" is not a simple root system and is rejected everywhere.
    pub fn min_rank(self) -> u32 {
        match self {
            ClassicalType::D => 2,
            _ => 1,
        }
    }

    /// Length of an ε-coordinate vector at the given rank.
    pub fn coord_count(self, rank: u32) -> usize {
        match self {
            ClassicalType::A => rank as usize + 1,
            _ => rank as usize,
        }
    }

    /// Number of positive roots at the given rank.
    pub fn positive_root_count(self, rank: u32) -> u64 {
        let r = rank as u64;
        match self {
            ClassicalType::A => r * (r + 1) / 2,
            ClassicalType::B | ClassicalType::C => r * r,
            ClassicalType::D => r * (r - 1),
        }
    }

    pub fn validate_rank(self, rank: u32) -> Result<()> {
        if rank < self.min_rank() {
            return Err(Error::InvalidRank { ty: self, rank });
        }
        Ok(())
    }

    /// True for the types whose weights may be half-integral (spin weights).
    pub fn allows_half_integers(self) -> bool {
        matches!(self, ClassicalType::B | ClassicalType::D)
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassicalType::A => "A",
            ClassicalType::B => "B",
            ClassicalType::C => "C",
            ClassicalType::D => "D",
        };
        f.write_str(s)
    }
}

/// A positive root, stored as its pairing recipe against an ε-coordinate
/// vector (indices are 0-based coordinate positions).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositiveRoot {
    /// ε_i − ε_j, i < j.
    Diff(usize, usize),
    /// ε_i + ε_j, i < j (types B, C, D).
    Sum(usize, usize),
    /// ε_i (type B).
    Short(usize),
    /// 2ε_i (type C).
    Long(usize),
}

impl PositiveRoot {
    /// ⟨v, α⟩ in the standard form where ⟨ε_i, ε_j⟩ = δ_ij.
    pub fn pair(self, v: &[Half]) -> Half {
        match self {
            PositiveRoot::Diff(i, j) => v[i] - v[j],
            PositiveRoot::Sum(i, j) => v[i] + v[j],
            PositiveRoot::Short(i) => v[i],
            PositiveRoot::Long(i) => v[i] * 2,
        }
    }
}

/// All positive roots of the type/rank, in a fixed deterministic order.
pub fn positive_roots(ty: ClassicalType, rank: u32) -> Vec<PositiveRoot> {
    let n = ty.coord_count(rank);
    let mut roots = Vec::with_capacity(ty.positive_root_count(rank) as usize);
    for i in 0..n {
        for j in (i + 1)..n {
            roots.push(PositiveRoot::Diff(i, j));
        }
    }
    if !matches!(ty, ClassicalType::A) {
        for i in 0..n {
            for j in (i + 1)..n {
                roots.push(PositiveRoot::Sum(i, j));
            }
        }
    }
    match ty {
        ClassicalType::B => roots.extend((0..n).map(PositiveRoot::Short)),
        ClassicalType::C => roots.extend((0..n).map(PositiveRoot::Long)),
        _ => {}
    }
    roots
}

/// A weight of a classical simple Lie algebra at a fixed type and rank.
///
/// Type A weights are stored in canonical form (minimum entry 0); equality is
/// therefore equality of sl-weight classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankedWeight {
    #[cfg_attr(feature = "serde", serde(rename = "type"))]
    ty: ClassicalType,
    rank: u32,
    coeffs: Vec<Half>,
}

impl RankedWeight {
    /// Validates shape and parity, and canonicalizes type A representatives.
    pub fn new(ty: ClassicalType, rank: u32, mut coeffs: Vec<Half>) -> Result<Self> {
        ty.validate_rank(rank)?;
        let expected = ty.coord_count(rank);
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount { expected, got: coeffs.len() });
        }
        match ty {
            ClassicalType::A | ClassicalType::C => {
                if coeffs.iter().any(|c| !c.is_integer()) {
                    return Err(Error::NonIntegerCoefficient);
                }
            }
            ClassicalType::B | ClassicalType::D => {
                let ints = coeffs.iter().filter(|c| c.is_integer()).count();
                if ints != 0 && ints != coeffs.len() {
                    return Err(Error::MixedParity);
                }
            }
        }
        if ty == ClassicalType::A {
            let min = *coeffs.iter().min().expect("nonempty");
            for c in coeffs.iter_mut() {
                *c -= min;
            }
        }
        Ok(RankedWeight { ty, rank, coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(ty: ClassicalType, rank: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(ty, rank, coeffs.iter().map(|&c| Half::int(c)).collect())
    }

    pub fn ty(&self) -> ClassicalType {
        self.ty
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn coeffs(&self) -> &[Half] {
        &self.coeffs
    }

    /// True for half-integer B/D weights.
    pub fn is_spin(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_integer())
    }

    /// The zero weight at the given type and rank.
    pub fn zero(ty: ClassicalType, rank: u32) -> Result<Self> {
        Self::new(ty, rank, alloc::vec![Half::ZERO; ty.coord_count(rank)])
    }

    /// B-dominance in ε-coordinates.
    ///
    /// A: entries weakly decreasing (representative-independent); B, C:
    /// weakly decreasing with last entry >= 0; D: weakly decreasing down to
    /// position r−1 with a_{r−1} >= |a_r|.
    pub fn is_dominant(&self) -> bool {
        let c = &self.coeffs;
        let down_to = match self.ty {
            ClassicalType::D => c.len() - 1,
            _ => c.len(),
        };
        if c[..down_to].windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        match self.ty {
            ClassicalType::A => true,
            ClassicalType::B | ClassicalType::C => *c.last().expect("nonempty") >= Half::ZERO,
            ClassicalType::D => c[c.len() - 2] >= c[c.len() - 1].abs(),
        }
    }

    /// ⟨λ, α_i∨⟩ for the i-th simple root (1-based).
    ///
    /// The pairing of an integral weight with a simple coroot is always an
    /// integer, also for spin weights.
    pub fn simple_coroot_pairing(&self, index: u32) -> Result<i64> {
        if index == 0 || index > self.rank {
            return Err(Error::InvalidSimpleRoot { index, rank: self.rank });
        }
        let i = index as usize - 1;
        let c = &self.coeffs;
        let doubled = match self.ty {
            ClassicalType::A => (c[i] - c[i + 1]).doubled(),
            ClassicalType::B if index == self.rank => 2 * c[i].doubled(),
            ClassicalType::C if index == self.rank => c[i].doubled(),
            ClassicalType::D if index == self.rank => (c[i - 1] + c[i]).doubled(),
            _ => (c[i] - c[i + 1]).doubled(),
        };
        debug_assert_eq!(doubled % 2, 0, "coroot pairings of integral weights are integers");
        Ok(doubled / 2)
    }

    /// Dimension of the irreducible module with this highest weight, by the
    /// Weyl dimension formula. Exact; errors on non-dominant input.
    pub fn dim_irrep(&self) -> Result<BigUint> {
        if !self.is_dominant() {
            return Err(Error::NotDominant);
        }
        let product = signed_weyl_product(self)?;
        match product.to_biguint() {
            Some(d) if !d.is_zero() => Ok(d),
            // Dominant weights pair strictly positively with every positive
            // root after the ρ-shift, so this is unreachable.
            _ => Err(Error::Inconsistency(alloc::format!(
                "Weyl dimension of a dominant weight came out nonpositive: {product}"
            ))),
        }
    }
}

impl fmt::Debug for RankedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}(", self.ty, self.rank)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The ρ-vector shape coincides with the weight shape at the same type/rank.
pub type RhoVector = RankedWeight;

/// Half-sum of the positive roots in ε-coordinates.
///
/// For type A the canonical shifted representative (r, r−1, …, 0) is
/// returned; for B it is (r−1/2, …, 1/2), for C (r, …, 1), for D (r−1, …, 0).
pub fn rho(ty: ClassicalType, rank: u32) -> Result<RhoVector> {
    ty.validate_rank(rank)?;
    let coeffs = rho_coeffs(ty, rank);
    RankedWeight::new(ty, rank, coeffs)
}

/// Raw ρ coefficients without constructing a weight (internal fast path).
pub(crate) fn rho_coeffs(ty: ClassicalType, rank: u32) -> Vec<Half> {
    let n = ty.coord_count(rank);
    (0..n)
        .map(|i| {
            let from_back = (n - 1 - i) as i64;
            match ty {
                ClassicalType::A | ClassicalType::D => Half::int(from_back),
                ClassicalType::C => Half::int(from_back + 1),
                ClassicalType::B => Half::new(2 * from_back + 1),
            }
        })
        .collect()
}

/// Evaluates the Weyl dimension product Π ⟨λ+ρ, α⟩ / ⟨ρ, α⟩ over the positive
/// roots, allowing negative and zero factors. The result is 0 exactly when
/// λ+ρ is singular, and ±dim of the dominant conjugate otherwise.
pub fn signed_weyl_product(weight: &RankedWeight) -> Result<BigInt> {
    let ty = weight.ty();
    let rank = weight.rank();
    let rho = rho_coeffs(ty, rank);
    let shifted: Vec<Half> =
        weight.coeffs().iter().zip(rho.iter()).map(|(&a, &b)| a + b).collect();
    // Work with doubled pairings so everything is an integer; the powers of
    // two cancel between numerator and denominator, root by root.
    let mut numerator = BigInt::one();
    let mut denominator = BigInt::one();
    for root in positive_roots(ty, rank) {
        numerator *= BigInt::from(root.pair(&shifted).doubled());
        denominator *= BigInt::from(root.pair(&rho).doubled());
    }
    if denominator.is_zero() {
        return Err(Error::Inconsistency(alloc::string::String::from(
            "rho pairs to zero against a positive root",
        )));
    }
    let (q, r) = num_integer_div_rem(&numerator, &denominator);
    if !r.is_zero() {
        return Err(Error::Inconsistency(alloc::string::String::from(
            "Weyl product is not an integer",
        )));
    }
    Ok(q)
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    use core::ops::Rem;
    let q = a / b;
    let r = a.rem(b);
    (q, r)
}

/// `true` when the signed Weyl product sign matches (−1)^degree.
pub fn sign_matches(product: &BigInt, degree: u64) -> bool {
    match product.sign() {
        Sign::Plus => degree % 2 == 0,
        Sign::Minus => degree % 2 == 1,
        Sign::NoSign => false,
    }
}
