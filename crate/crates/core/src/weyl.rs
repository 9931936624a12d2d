//! Brute-force Weyl groups as (signed) permutations, with Coxeter lengths
//! computed straight from the definition: the number of positive roots an
//! element sends to negative roots.
//!
//! This module exists as a test oracle for the dot-action resolver; group
//! sizes are capped at desk scale (|W| <= 5040 for A6, 384 for B4/C4).

use alloc::vec::Vec;

use crate::weights::{positive_roots, ClassicalType, PositiveRoot};
use crate::{Error, Half, Result};

/// Enumeration caps: rank <= 6 for A, <= 4 for B/C/D.
pub fn oracle_rank_cap(ty: ClassicalType) -> u32 {
    match ty {
        ClassicalType::A => 6,
        _ => 4,
    }
}

/// A Weyl group element acting on ε-coordinates: basis vector ε_i is sent to
/// ±ε_{perm[i]}. Type A elements carry no sign flips; type D elements flip an
/// even number of signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl WeylElement {
    pub fn identity(coords: usize) -> Self {
        WeylElement { perm: (0..coords).collect(), flips: alloc::vec![false; coords] }
    }

    pub fn coords(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    /// Applies the element to a coordinate vector.
    pub fn apply(&self, v: &[Half]) -> Vec<Half> {
        let mut out = alloc::vec![Half::ZERO; v.len()];
        for (i, (&target, &flip)) in self.perm.iter().zip(&self.flips).enumerate() {
            out[target] = if flip { -v[i] } else { v[i] };
        }
        out
    }

    /// Image of a positive root as a coefficient vector over ε-coordinates.
    fn apply_root(&self, root: PositiveRoot, scratch: &mut [i64]) {
        scratch.fill(0);
        let mut put = |i: usize, c: i64| {
            let sign = if self.flips[i] { -1 } else { 1 };
            scratch[self.perm[i]] += sign * c;
        };
        match root {
            PositiveRoot::Diff(i, j) => {
                put(i, 1);
                put(j, -1);
            }
            PositiveRoot::Sum(i, j) => {
                put(i, 1);
                put(j, 1);
            }
            PositiveRoot::Short(i) => put(i, 1),
            PositiveRoot::Long(i) => put(i, 2),
        }
    }

    /// Coxeter length: the count of positive roots mapped to negative roots.
    /// A root of these systems is negative exactly when its first nonzero
    /// ε-coefficient is negative.
    pub fn length(&self, ty: ClassicalType, rank: u32) -> u64 {
        let mut scratch = alloc::vec![0i64; self.coords()];
        let mut inversions = 0;
        for root in positive_roots(ty, rank) {
            self.apply_root(root, &mut scratch);
            let leading = scratch.iter().find(|&&c| c != 0).copied().unwrap_or(0);
            if leading < 0 {
                inversions += 1;
            }
        }
        inversions
    }
}

/// Every Weyl group element of the type/rank with its Coxeter length, in a
/// deterministic order (lexicographic permutations, then sign masks).
pub fn weyl_enumerate(ty: ClassicalType, rank: u32) -> Result<Vec<(WeylElement, u64)>> {
    ty.validate_rank(rank)?;
    let cap = oracle_rank_cap(ty);
    if rank > cap {
        return Err(Error::RankAboveOracleCap { ty, rank, cap });
    }
    let coords = ty.coord_count(rank);
    let mut elements = Vec::new();
    for perm in permutations(coords) {
        match ty {
            ClassicalType::A => {
                elements.push(WeylElement { perm: perm.clone(), flips: alloc::vec![false; coords] })
            }
            ClassicalType::B | ClassicalType::C => {
                for mask in 0u32..(1 << coords) {
                    elements.push(WeylElement { perm: perm.clone(), flips: mask_to_flips(mask, coords) });
                }
            }
            ClassicalType::D => {
                for mask in 0u32..(1 << coords) {
                    if mask.count_ones() % 2 == 0 {
                        elements.push(WeylElement {
                            perm: perm.clone(),
                            flips: mask_to_flips(mask, coords),
                        });
                    }
                }
            }
        }
    }
    Ok(elements.into_iter().map(|w| {
        let l = w.length(ty, rank);
        (w, l)
    }).collect())
}

fn mask_to_flips(mask: u32, coords: usize) -> Vec<bool> {
    (0..coords).map(|i| mask & (1 << i) != 0).collect()
}

/// All permutations of {0, …, n−1} in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        // Next lexicographic permutation, or stop.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn group_orders() {
        assert_eq!(weyl_enumerate(ClassicalType::A, 1).unwrap().len(), 2);
        assert_eq!(weyl_enumerate(ClassicalType::A, 3).unwrap().len(), 24);
        assert_eq!(weyl_enumerate(ClassicalType::B, 2).unwrap().len(), 8);
        assert_eq!(weyl_enumerate(ClassicalType::C, 3).unwrap().len(), 48);
        assert_eq!(weyl_enumerate(ClassicalType::D, 2).unwrap().len(), 4);
        assert_eq!(weyl_enumerate(ClassicalType::D, 3).unwrap().len(), 24);
    }

    #[test]
    fn rank_cap_is_enforced() {
        assert!(matches!(
            weyl_enumerate(ClassicalType::B, 5),
            Err(Error::RankAboveOracleCap { cap: 4, .. })
        ));
        assert!(weyl_enumerate(ClassicalType::A, 6).is_ok());
        assert!(weyl_enumerate(ClassicalType::A, 7).is_err());
    }

    #[test]
    fn a1_lengths() {
        let elems = weyl_enumerate(ClassicalType::A, 1).unwrap();
        let mut lengths: Vec<u64> = elems.iter().map(|(_, l)| *l).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1]);
    }

    #[test]
    fn c2_length_multiset() {
        let elems = weyl_enumerate(ClassicalType::C, 2).unwrap();
        let mut lengths: Vec<u64> = elems.iter().map(|(_, l)| *l).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn d2_max_length() {
        let elems = weyl_enumerate(ClassicalType::D, 2).unwrap();
        assert_eq!(elems.iter().map(|(_, l)| *l).max(), Some(2));
    }

    #[test]
    fn unique_identity_and_longest_element() {
        for (ty, rank) in [
            (ClassicalType::A, 3),
            (ClassicalType::B, 3),
            (ClassicalType::C, 2),
            (ClassicalType::D, 3),
        ] {
            let elems = weyl_enumerate(ty, rank).unwrap();
            let top = ty.positive_root_count(rank);
            assert_eq!(elems.iter().filter(|(_, l)| *l == 0).count(), 1, "{ty}{rank}");
            assert_eq!(elems.iter().filter(|(_, l)| *l == top).count(), 1, "{ty}{rank}");
            assert!(elems.iter().all(|(_, l)| *l <= top));
        }
    }

    #[test]
    fn apply_permutes_and_flips() {
        // w: ε_0 -> -ε_1, ε_1 -> ε_0 acting on (5, 7) gives (7, -5).
        let w = WeylElement { perm: vec![1, 0], flips: vec![true, false] };
        let out = w.apply(&[Half::int(5), Half::int(7)]);
        assert_eq!(out, vec![Half::int(7), Half::int(-5)]);
    }
}
