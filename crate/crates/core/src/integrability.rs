//! Integrability criteria for duals of limit highest-weight modules, decided
//! exactly at the family level, plus cross-validation against the branching
//! oracle.
//!
//! Finitary towers get an iff-criterion: boundedness over n of a¹_n − a^{r+1}_n
//! (SL) or of a¹_n (SO/Sp). Every tower gets the sufficient condition:
//! boundedness of Σ|aⁱ_n| over representative-minimizing expressions. The
//! suprema are computed symbolically from the affine head forms, with a
//! 20-level numeric probe as a second route.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::branching::count_isotypic;
use crate::families::{TowerDescriptor, WeightFamily};
use crate::{Error, Half, Result};

const NUMERIC_PROBE_LEVELS: u32 = 20;

/// Verdict of an integrability check.
///
/// `Integrable`/`NotIntegrable` are reserved for finitary towers, where the
/// criterion is an iff. `ConditionHolds`/`ConditionFails` belong to the
/// sufficient condition: `ConditionFails` is inconclusive for integrability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum VerdictStatus {
    Integrable,
    NotIntegrable,
    ConditionHolds,
    ConditionFails,
}

/// Status plus, when the criterion quantity is bounded, its exact supremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IntegrabilityVerdict {
    pub status: VerdictStatus,
    pub bound: Option<Half>,
}

impl IntegrabilityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self.status, VerdictStatus::Integrable | VerdictStatus::ConditionHolds)
    }
}

/// The iff-criterion for the finitary towers: the dual of the limit module
/// is integrable exactly when sup_n (a¹_n − a^{r_n+1}_n) is finite (SL), or
/// sup_n a¹_n is finite (SO/Sp). Requires a dominant family.
pub fn check_dual_integrable_finitary(
    family: &WeightFamily,
    tower: &TowerDescriptor,
) -> Result<IntegrabilityVerdict> {
    if !tower.is_finitary() {
        return Err(Error::UnsupportedTower(String::from(
            "the iff-criterion applies to the finitary towers only",
        )));
    }
    if !family.is_dominant_family(tower)? {
        return Err(Error::NotDominantFamily);
    }
    // A dominant family has weakly decreasing head slopes, all nonnegative,
    // so the criterion quantity is bounded iff every slope vanishes.
    if !family.is_constant() {
        return Ok(IntegrabilityVerdict { status: VerdictStatus::NotIntegrable, bound: None });
    }
    let k = family.head().len() as u32;
    let first_entry = family.head().first().map(|f| f.constant).unwrap_or(family.tail());
    // From the first level with a tail coordinate on, the criterion value is
    // constant; earlier head-filled levels never exceed it since h_k >= tail
    // by dominance.
    let generic = match tower {
        TowerDescriptor::SL => tower
            .first_level_with_rank(k.max(1))
            .map(|level| (level, first_entry - family.tail())),
        _ => tower.first_level_with_rank(1).map(|level| (level, first_entry)),
    };
    let bound = exact_supremum(family, tower, finitary_criterion_value, generic)?;
    Ok(IntegrabilityVerdict { status: VerdictStatus::Integrable, bound: Some(bound) })
}

fn finitary_criterion_value(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    level: u32,
) -> Result<Half> {
    let w = family.weight_at_level(tower, level)?;
    let coeffs = w.coeffs();
    let first = *coeffs.first().expect("nonempty");
    Ok(match tower {
        TowerDescriptor::SL => first - *coeffs.last().expect("nonempty"),
        _ => first,
    })
}

/// The sufficient condition, valid on every tower: if some expression of
/// each μ_n has coefficient absolute values summing below a common bound,
/// the dual is integrable. Type A minimizes over constant shifts (the
/// optimal shift is a median); other types have a unique expression.
pub fn check_dual_integrable_diagonal(
    family: &WeightFamily,
    tower: &TowerDescriptor,
) -> Result<IntegrabilityVerdict> {
    if !family.is_dominant_family(tower)? {
        return Err(Error::NotDominantFamily);
    }
    let fails = IntegrabilityVerdict { status: VerdictStatus::ConditionFails, bound: None };
    if !family.is_constant() {
        return Ok(fails);
    }
    // Non-A towers: the tail contributes (rank − k)·|tail| at every level,
    // unbounded unless the tail is zero.
    if !tower.is_type_a() && !family.tail().is_zero() {
        return Ok(fails);
    }
    // The minimizing shift settles at the tail once tail coordinates are the
    // majority, so the supremum is Σ|h_i − tail|; earlier levels never
    // exceed it because the tail shift is one of their candidates.
    let k = family.head().len() as u32;
    let generic_value: Half =
        family.head().iter().map(|f| (f.constant - family.tail()).abs()).sum();
    let settle_rank = if tower.is_type_a() { (2 * k).max(1) } else { k.max(1) };
    let generic = tower.first_level_with_rank(settle_rank).map(|level| (level, generic_value));
    let bound = exact_supremum(family, tower, min_shift_abs_sum, generic)?;
    Ok(IntegrabilityVerdict { status: VerdictStatus::ConditionHolds, bound: Some(bound) })
}

/// Minimum over representatives of Σ|aⁱ| at one level.
fn min_shift_abs_sum(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    level: u32,
) -> Result<Half> {
    let w = family.weight_at_level(tower, level)?;
    let abs_sum =
        |coeffs: &[Half], shift: Half| coeffs.iter().map(|&c| (c - shift).abs()).sum::<Half>();
    if tower.is_type_a() {
        // L1-minimizing constant shift is a median of the coordinates.
        let mut sorted = w.coeffs().to_vec();
        sorted.sort_unstable();
        let median = sorted[sorted.len() / 2];
        let lower_median = sorted[(sorted.len() - 1) / 2];
        Ok(abs_sum(w.coeffs(), median).min(abs_sum(w.coeffs(), lower_median)))
    } else {
        Ok(abs_sum(w.coeffs(), Half::ZERO))
    }
}

/// Exact supremum over all levels of a per-level criterion that is constant
/// from `generic` on (when a generic regime exists), with a numeric probe of
/// at least 20 levels as a second route. Disagreement between the two routes
/// is a hard internal error.
fn exact_supremum(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    value_at: fn(&WeightFamily, &TowerDescriptor, u32) -> Result<Half>,
    generic: Option<(u32, Half)>,
) -> Result<Half> {
    let first = family.first_level();
    let mut end = first + NUMERIC_PROBE_LEVELS - 1;
    if let Some((level, _)) = generic {
        end = end.max(level.max(first) + 2);
    }
    let mut numeric: Option<Half> = None;
    let mut reached_generic = false;
    for level in first..=end {
        match value_at(family, tower, level) {
            Ok(v) => {
                numeric = numeric.max(Some(v));
                if generic.map_or(false, |(g, _)| level >= g) {
                    reached_generic = true;
                }
            }
            // Diagonal towers outgrow the evaluation cap quickly; the levels
            // probed so far are decisive for constant families.
            Err(Error::RankCapExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let numeric = numeric
        .ok_or_else(|| Error::Inconsistency(String::from("empty numeric probe window")))?;
    match generic {
        // Constant-rank tower: every level looks like the first.
        None => Ok(numeric),
        Some((_, symbolic)) => {
            if numeric > symbolic {
                return Err(Error::Inconsistency(format!(
                    "criterion value {numeric} exceeds the symbolic supremum {symbolic}"
                )));
            }
            if reached_generic && numeric < symbolic {
                return Err(Error::Inconsistency(format!(
                    "symbolic supremum {symbolic} not attained by the numeric probe"
                )));
            }
            Ok(symbolic)
        }
    }
}

/// Report of the consistency check between the finitary criterion and the
/// branching oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CrossValidationReport {
    pub verdict: IntegrabilityVerdict,
    pub isotypic_counts: Vec<usize>,
    pub consistent: bool,
}

/// Compares the finitary verdict with the observed isotypic counts:
/// integrable must co-occur with a count that has stabilized by the end of
/// the window, non-integrable with a strict increase somewhere in it. A
/// mismatch is a hard error — by construction it means an implementation
/// bug, not a mathematical discovery.
pub fn cross_validate(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    n: u32,
    k_max: u32,
    dim_cap: u64,
) -> Result<CrossValidationReport> {
    if k_max < 2 {
        return Err(Error::ProbeWindowTooSmall { probe_levels: k_max, min: 2 });
    }
    let verdict = check_dual_integrable_finitary(family, tower)?;
    let counts = count_isotypic(family, tower, n, k_max, dim_cap)?;
    let stabilized = counts[counts.len() - 1] == counts[counts.len() - 2];
    let strictly_grew = counts.windows(2).any(|w| w[1] > w[0]);
    let consistent = match verdict.status {
        VerdictStatus::Integrable => stabilized,
        VerdictStatus::NotIntegrable => strictly_grew,
        _ => unreachable!("finitary check returns iff-verdicts"),
    };
    if !consistent {
        return Err(Error::Inconsistency(format!(
            "verdict {:?} against isotypic counts {:?}",
            verdict.status, counts
        )));
    }
    Ok(CrossValidationReport { verdict, isotypic_counts: counts, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::DEFAULT_DIM_CAP;
    use crate::families::AffineForm;
    use alloc::vec;

    fn slope_one(tower: &TowerDescriptor) -> WeightFamily {
        WeightFamily::new(
            tower,
            1,
            vec![AffineForm { constant: Half::ZERO, slope: Half::ONE }],
            Half::ZERO,
        )
        .unwrap()
    }

    #[test]
    fn natural_family_is_integrable_with_bound_one() {
        let tower = TowerDescriptor::SL;
        let natural = WeightFamily::from_ints(&tower, 1, &[1], 0).unwrap();
        let v = check_dual_integrable_finitary(&natural, &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::Integrable);
        assert_eq!(v.bound, Some(Half::int(1)));
    }

    #[test]
    fn slope_family_is_not_integrable_on_sp() {
        let tower = TowerDescriptor::Sp;
        let v = check_dual_integrable_finitary(&slope_one(&tower), &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::NotIntegrable);
        assert_eq!(v.bound, None);
    }

    #[test]
    fn zero_family_is_integrable_with_bound_zero() {
        let tower = TowerDescriptor::SL;
        let zero = WeightFamily::from_ints(&tower, 1, &[], 0).unwrap();
        let v = check_dual_integrable_finitary(&zero, &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::Integrable);
        assert_eq!(v.bound, Some(Half::ZERO));
    }

    #[test]
    fn diagonal_condition_examples() {
        let diag = TowerDescriptor::DiagonalA { copies: 2, padding: 0, base_rank: 2 };
        let f = WeightFamily::from_ints(&diag, 1, &[1, 1], 0).unwrap();
        let v = check_dual_integrable_diagonal(&f, &diag).unwrap();
        assert_eq!(v.status, VerdictStatus::ConditionHolds);
        assert_eq!(v.bound, Some(Half::int(2)));

        // Constant tail 1 on an SL-shaped tower: the shift by −1 gives the
        // zero family.
        let tower = TowerDescriptor::SL;
        let shifted = WeightFamily::from_ints(&tower, 1, &[], 1).unwrap();
        let v = check_dual_integrable_diagonal(&shifted, &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::ConditionHolds);
        assert_eq!(v.bound, Some(Half::ZERO));

        let v = check_dual_integrable_diagonal(&slope_one(&tower), &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::ConditionFails);
    }

    #[test]
    fn nonzero_tail_off_type_a_fails_the_sufficient_condition() {
        let tower = TowerDescriptor::Sp;
        let f = WeightFamily::from_ints(&tower, 1, &[2], 1).unwrap();
        let v = check_dual_integrable_diagonal(&f, &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::ConditionFails);
        // ... while the iff-criterion accepts it.
        let v = check_dual_integrable_finitary(&f, &tower).unwrap();
        assert_eq!(v.status, VerdictStatus::Integrable);
        assert_eq!(v.bound, Some(Half::int(2)));
    }

    #[test]
    fn finitary_verdict_is_shift_invariant_on_sl() {
        let tower = TowerDescriptor::SL;
        let a = WeightFamily::from_ints(&tower, 1, &[3, 1], 0).unwrap();
        let b = WeightFamily::from_ints(&tower, 1, &[7, 5], 4).unwrap();
        let va = check_dual_integrable_finitary(&a, &tower).unwrap();
        let vb = check_dual_integrable_finitary(&b, &tower).unwrap();
        assert_eq!(va, vb);
    }

    #[test]
    fn sufficient_condition_implies_iff_condition() {
        for tower in [TowerDescriptor::SL, TowerDescriptor::SO, TowerDescriptor::Sp] {
            for head in [&[][..], &[1][..], &[2, 1][..], &[3, 3, 1][..]] {
                let Ok(f) = WeightFamily::from_ints(&tower, 1, head, 0) else {
                    continue;
                };
                if !f.is_dominant_family(&tower).unwrap() {
                    continue;
                }
                let diag = check_dual_integrable_diagonal(&f, &tower).unwrap();
                if diag.status == VerdictStatus::ConditionHolds {
                    let fin = check_dual_integrable_finitary(&f, &tower).unwrap();
                    assert_eq!(fin.status, VerdictStatus::Integrable);
                    assert!(fin.bound.unwrap() <= diag.bound.unwrap());
                }
            }
        }
    }

    #[test]
    fn cross_validation_of_the_three_reference_families() {
        let tower = TowerDescriptor::SL;
        let natural = WeightFamily::from_ints(&tower, 1, &[1], 0).unwrap();
        let report = cross_validate(&natural, &tower, 2, 4, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Integrable);
        assert_eq!(report.isotypic_counts, vec![2, 2, 2, 2]);

        let slope = slope_one(&tower);
        let report = cross_validate(&slope, &tower, 1, 3, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::NotIntegrable);
        assert!(report.isotypic_counts.windows(2).all(|w| w[1] > w[0]));

        let zero = WeightFamily::from_ints(&tower, 1, &[], 0).unwrap();
        let report = cross_validate(&zero, &tower, 2, 3, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Integrable);
        assert_eq!(report.isotypic_counts, vec![1, 1, 1]);
    }

    #[test]
    fn finitary_check_rejects_diagonal_towers_and_non_dominant_families() {
        let diag = TowerDescriptor::DiagonalA { copies: 2, padding: 0, base_rank: 1 };
        let f = WeightFamily::from_ints(&diag, 1, &[1], 0).unwrap();
        assert!(matches!(
            check_dual_integrable_finitary(&f, &diag),
            Err(Error::UnsupportedTower(_))
        ));
        let tower = TowerDescriptor::SL;
        let bad = WeightFamily::from_ints(&tower, 1, &[0, 2], 0).unwrap();
        assert!(matches!(
            check_dual_integrable_finitary(&bad, &tower),
            Err(Error::NotDominantFamily)
        ));
    }
}
