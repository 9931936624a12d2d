//! One-step branching down the classical towers, iterated restriction, and
//! isotypic-component counting — the independent oracle behind the
//! integrability criteria.
//!
//! Rules implemented (integer weights only):
//! * SL: Gelfand-Tsetlin interlacing on the partition representative,
//!   results merged as sl-classes;
//! * SO: one-step interlacing, alternating B_m -> D_m and D_m -> B_{m-1}
//!   along the chain, multiplicity free, with the last-entry rules
//!   |μ_m| <= λ_m resp. μ_{m-1} >= |λ_m|;
//! * Sp: Zhelobenko double interlacing through an intermediate chain vector,
//!   yielding honest multiplicities.
//!
//! Diagonal branching (copies >= 2) needs Kronecker-type coefficients and is
//! deliberately not implemented; diagonal towers get criterion checking only.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::families::{TowerDescriptor, WeightFamily};
use crate::weights::{ClassicalType, RankedWeight};
use crate::{Error, Result};

/// Default cap on the dimension at the top of a restriction chain.
pub const DEFAULT_DIM_CAP: u64 = 1_000_000;

/// Decomposition of a restricted module: lower-level dominant weights with
/// multiplicities, deduplicated and kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BranchMultiset {
    entries: BTreeMap<RankedWeight, u64>,
}

impl BranchMultiset {
    fn insert(&mut self, weight: RankedWeight, multiplicity: u64) {
        *self.entries.entry(weight).or_insert(0) += multiplicity;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RankedWeight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Number of distinct isotypic components.
    pub fn component_count(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, weight: &RankedWeight) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    /// Σ multiplicity · dim over the components, exactly.
    pub fn total_dimension(&self) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (w, m) in self.entries() {
            total += w.dim_irrep()? * BigUint::from(m);
        }
        Ok(total)
    }
}

/// Restricts an irreducible from `level` to `level − 1` along the tower.
///
/// The weight must be the dominant integer weight of the tower's signature
/// at `level`; spin weights on the SO chain are rejected.
pub fn branch_once(
    weight: &RankedWeight,
    tower: &TowerDescriptor,
    level: u32,
) -> Result<BranchMultiset> {
    let (ty, rank) = tower.signature(level)?;
    if weight.ty() != ty || weight.rank() != rank {
        return Err(Error::LevelSignatureMismatch { level });
    }
    if level < 2 {
        return Err(Error::LevelNotBranchable { level });
    }
    if !weight.is_dominant() {
        return Err(Error::NotDominant);
    }
    if weight.is_spin() {
        return Err(Error::SpinUnsupported);
    }
    let lam: Vec<i64> = weight
        .coeffs()
        .iter()
        .map(|c| c.as_integer().expect("non-spin dominant weight"))
        .collect();

    let result = match tower {
        TowerDescriptor::SL => branch_gl(&lam, rank),
        TowerDescriptor::Sp => branch_sp(&lam, rank),
        TowerDescriptor::SO => {
            if ty == ClassicalType::B {
                branch_b_to_d(&lam, rank)
            } else {
                branch_d_to_b(&lam, rank)
            }
        }
        TowerDescriptor::DiagonalA { .. } => {
            return Err(Error::UnsupportedTower(alloc::string::String::from(
                "diagonal towers have no one-step branching oracle",
            )))
        }
    }?;

    #[cfg(debug_assertions)]
    {
        let upper = weight.dim_irrep()?;
        let lower = result.total_dimension()?;
        debug_assert_eq!(upper, lower, "branching must conserve dimension for {weight:?}");
    }
    Ok(result)
}

/// Gelfand-Tsetlin: μ interlaces the partition representative of λ; results
/// are merged as sl-classes.
fn branch_gl(lam: &[i64], rank: u32) -> Result<BranchMultiset> {
    let mut out = BranchMultiset::default();
    let n = lam.len(); // rank + 1 coordinates
    let mut mu = alloc::vec![0i64; n - 1];
    enumerate_interlacing(lam, 0, &mut mu, &mut |mu| {
        let weight = RankedWeight::from_ints(ClassicalType::A, rank - 1, mu)?;
        out.insert(weight, 1);
        Ok(())
    })?;
    Ok(out)
}

/// All μ with λ_1 >= μ_1 >= λ_2 >= μ_2 >= … >= μ_m >= λ_{m+1}, where m is
/// the length of `mu`.
fn enumerate_interlacing(
    lam: &[i64],
    idx: usize,
    mu: &mut Vec<i64>,
    sink: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if idx == mu.len() {
        return sink(mu);
    }
    for value in lam[idx + 1]..=lam[idx] {
        mu[idx] = value;
        enumerate_interlacing(lam, idx + 1, mu, sink)?;
    }
    Ok(())
}

/// Zhelobenko: sum over intermediate vectors x with
/// λ_1 >= x_1 >= λ_2 >= … >= λ_n >= x_n >= 0 of the μ interlacing x.
fn branch_sp(lam: &[i64], rank: u32) -> Result<BranchMultiset> {
    let n = lam.len();
    let mut out = BranchMultiset::default();
    let mut lam_ext = lam.to_vec();
    lam_ext.push(0); // encodes the trailing x_n >= 0 constraint
    let mut x = alloc::vec![0i64; n];
    enumerate_interlacing(&lam_ext, 0, &mut x, &mut |x| {
        let mut mu = alloc::vec![0i64; n - 1];
        let x_owned = x.to_vec();
        enumerate_interlacing(&x_owned, 0, &mut mu, &mut |mu| {
            let weight = RankedWeight::from_ints(ClassicalType::C, rank - 1, mu)?;
            out.insert(weight, 1);
            Ok(())
        })
    })?;
    Ok(out)
}

/// SO(2m+1) ↓ SO(2m): λ_1 >= μ_1 >= λ_2 >= … >= λ_m >= |μ_m|.
fn branch_b_to_d(lam: &[i64], rank: u32) -> Result<BranchMultiset> {
    let m = lam.len();
    let mut out = BranchMultiset::default();
    let mut prefix = alloc::vec![0i64; m - 1];
    enumerate_interlacing_prefix(lam, 0, &mut prefix, &mut |mu_prefix| {
        let mut mu_full = mu_prefix.to_vec();
        mu_full.push(0);
        for last in -lam[m - 1]..=lam[m - 1] {
            mu_full[m - 1] = last;
            let weight = RankedWeight::from_ints(ClassicalType::D, rank, &mu_full)?;
            out.insert(weight, 1);
        }
        Ok(())
    })?;
    Ok(out)
}

/// SO(2m) ↓ SO(2m−1): λ_1 >= μ_1 >= λ_2 >= … >= μ_{m−1} >= |λ_m|.
fn branch_d_to_b(lam: &[i64], rank: u32) -> Result<BranchMultiset> {
    let m = lam.len();
    let mut out = BranchMultiset::default();
    let mut prefix = alloc::vec![0i64; m - 2];
    let last_floor = lam[m - 1].abs();
    enumerate_interlacing_prefix(lam, 0, &mut prefix, &mut |mu_prefix| {
        let mut mu_full = mu_prefix.to_vec();
        mu_full.push(0);
        for last in last_floor..=lam[m - 2] {
            mu_full[m - 2] = last;
            let weight = RankedWeight::from_ints(ClassicalType::B, rank - 1, &mu_full)?;
            out.insert(weight, 1);
        }
        Ok(())
    })?;
    Ok(out)
}

/// Interlacing with μ shorter than the window of λ it interlaces: μ_i in
/// [λ_{i+1}, λ_i] for i up to μ's own length.
fn enumerate_interlacing_prefix(
    lam: &[i64],
    idx: usize,
    mu: &mut Vec<i64>,
    sink: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if idx == mu.len() {
        return sink(mu);
    }
    for value in lam[idx + 1]..=lam[idx] {
        mu[idx] = value;
        enumerate_interlacing_prefix(lam, idx + 1, mu, sink)?;
    }
    Ok(())
}

/// Iterates `branch_once` from level n+k down to level n, merging
/// multiplicities at each step. The dimension at the top of the chain must
/// stay below `dim_cap`; exceeding it reports a desk-scale limit, not a
/// mathematical outcome.
pub fn restrict_chain(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    n: u32,
    k: u32,
    dim_cap: u64,
) -> Result<BranchMultiset> {
    if n < family.first_level() {
        return Err(Error::LevelBelowFirst { level: n, first: family.first_level() });
    }
    if k < 1 {
        return Err(Error::LevelNotBranchable { level: n });
    }
    let top = family.weight_at_level(tower, n + k)?;
    if !top.is_dominant() {
        return Err(Error::NotDominant);
    }
    if top.dim_irrep()? > BigUint::from(dim_cap) {
        return Err(Error::DimCapExceeded { cap: dim_cap });
    }
    let mut current = BranchMultiset::default();
    current.insert(top, 1);
    for level in ((n + 1)..=(n + k)).rev() {
        let mut next = BranchMultiset::default();
        for (w, mult) in current.entries() {
            for (lower, m) in branch_once(w, tower, level)?.entries() {
                next.insert(lower.clone(), m * mult);
            }
        }
        current = next;
    }
    Ok(current)
}

/// Number of distinct level-n isotypic components of the restriction from
/// level n+k, for each k = 1…k_max.
pub fn count_isotypic(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    n: u32,
    k_max: u32,
    dim_cap: u64,
) -> Result<Vec<usize>> {
    (1..=k_max)
        .map(|k| Ok(restrict_chain(family, tower, n, k, dim_cap)?.component_count()))
        .collect()
}
