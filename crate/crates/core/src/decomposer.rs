//! Strong-finiteness checking for filtered bundles and enumeration of the
//! possible limit cohomology decompositions.
//!
//! The weight-level input cannot see the extension cocycle of the filtered
//! module, so whether a connecting homomorphism vanishes is not decidable
//! here. It is, however, always one of exactly two cases (zero or
//! injective), so the enumerator branches on both and returns every
//! case-consistent outcome.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::families::{
    bbw_limit, LimitCohomology, LimitModule, ParabolicDescriptor, TowerDescriptor, WeightFamily,
};
use crate::integrability::{
    check_dual_integrable_diagonal, check_dual_integrable_finitary, IntegrabilityVerdict,
};
use crate::{Error, Result};

/// A filtered module over the parabolic: the ordered highest weights of the
/// simple constituents, position 0 being the deepest submodule of the
/// filtration. The induced bundle is the one attached to the dual module, so
/// the order encodes which exact sequences the induction peels off.
#[derive(Clone, Debug)]
pub struct FilteredModule {
    pub tower: TowerDescriptor,
    pub parabolic: ParabolicDescriptor,
    pub constituents: Vec<WeightFamily>,
}

impl FilteredModule {
    pub fn length(&self) -> usize {
        self.constituents.len()
    }
}

/// How one constituent entered the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CaseTag {
    /// Zero connecting homomorphism: the cohomology enters as a summand.
    Case1,
    /// Injective connecting homomorphism: it cancels an adjacent-degree
    /// summand of the same limit module.
    Case2,
    /// The constituent's limit cohomology vanishes.
    Vanished,
}

/// One cohomology summand: degree, originating constituent, and the dominant
/// family of the limit module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Summand {
    pub degree: u64,
    pub constituent: usize,
    pub weight: WeightFamily,
}

/// One possible limit decomposition: a multiset of summands plus the case
/// tag of every constituent (indexed like the filtration).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Scenario {
    pub summands: Vec<Summand>,
    pub provenance: Vec<CaseTag>,
}

impl Scenario {
    fn insert(&mut self, summand: Summand) {
        let pos = self.summands.partition_point(|s| *s <= summand);
        self.summands.insert(pos, summand);
    }

    pub fn distinct_degrees(&self) -> usize {
        let degrees: BTreeSet<u64> = self.summands.iter().map(|s| s.degree).collect();
        degrees.len()
    }
}

/// Per-constituent outcome of the strong-finiteness check.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConstituentReport {
    pub index: usize,
    pub limit: LimitCohomology,
    pub verdict: Option<IntegrabilityVerdict>,
    pub passes: bool,
}

/// Outcome of `strong_finiteness_check`.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StrongFinitenessReport {
    pub passes: bool,
    pub constituents: Vec<ConstituentReport>,
}

/// A filtered module is strongly finite when every simple constituent either
/// has vanishing limit cohomology or the dual of its limit cohomology is
/// integrable: on finitary towers the iff-criterion decides that, on
/// diagonal towers the sufficient condition stands in. A non-stable limit
/// diagnostic makes the check inconclusive and is propagated as an error.
pub fn strong_finiteness_check(
    module: &FilteredModule,
    probe_levels: u32,
) -> Result<StrongFinitenessReport> {
    let mut constituents = Vec::with_capacity(module.length());
    let mut all = true;
    for (index, family) in module.constituents.iter().enumerate() {
        let limit = bbw_limit(family, &module.tower, &module.parabolic, probe_levels)?;
        let (verdict, passes) = match &limit {
            LimitCohomology::Vanishing => (None, true),
            LimitCohomology::NonStable { diagnostic } => {
                return Err(Error::NonStableLimit { diagnostic: diagnostic.clone() })
            }
            LimitCohomology::Stable { weight, .. } => {
                let verdict = if module.tower.is_finitary() {
                    check_dual_integrable_finitary(weight, &module.tower)?
                } else {
                    check_dual_integrable_diagonal(weight, &module.tower)?
                };
                (Some(verdict), verdict.is_positive())
            }
        };
        all &= passes;
        constituents.push(ConstituentReport { index, limit, verdict, passes });
    }
    Ok(StrongFinitenessReport { passes: all, constituents })
}

/// Enumerates every decomposition scenario consistent with the two-case
/// dichotomy of the connecting homomorphisms.
///
/// The induction peels the deepest constituent off the filtration, so the
/// enumeration starts from the top quotient (last index) and incorporates
/// constituents downwards. A constituent with limit cohomology (q, μ) either
/// joins every current scenario as a new summand (Case 1), or — when a
/// summand of the same limit module sits at degree q+1 — cancels that
/// summand (Case 2).
pub fn decompose_enumerate(
    module: &FilteredModule,
    probe_levels: u32,
) -> Result<BTreeSet<Scenario>> {
    let check = strong_finiteness_check(module, probe_levels)?;
    if !check.passes {
        let index = check
            .constituents
            .iter()
            .find(|c| !c.passes)
            .map(|c| c.index)
            .unwrap_or(0);
        return Err(Error::NotStronglyFinite { constituent: index });
    }
    let n = module.length();
    let limits: Vec<Option<(u64, WeightFamily)>> = check
        .constituents
        .into_iter()
        .map(|c| match c.limit {
            LimitCohomology::Stable { degree, weight } => Some((degree, weight)),
            _ => None,
        })
        .collect();

    let mut scenarios = BTreeSet::new();
    scenarios.insert(Scenario { summands: Vec::new(), provenance: alloc::vec![CaseTag::Case1; n] });
    for index in (0..n).rev() {
        let mut next = BTreeSet::new();
        match &limits[index] {
            None => {
                for mut scenario in scenarios {
                    scenario.provenance[index] = CaseTag::Vanished;
                    next.insert(scenario);
                }
            }
            Some((degree, weight)) => {
                let key = weight.limit_key();
                for scenario in scenarios {
                    // Case 1: the connecting homomorphism is zero.
                    let mut with = scenario.clone();
                    with.provenance[index] = CaseTag::Case1;
                    with.insert(Summand {
                        degree: *degree,
                        constituent: index,
                        weight: weight.clone(),
                    });
                    next.insert(with);
                    // Case 2: it is injective, which needs a summand of the
                    // same module one degree up; the first match in
                    // canonical order is removed.
                    let target = scenario.summands.iter().position(|s| {
                        s.degree == degree + 1 && s.weight.limit_key() == key
                    });
                    if let Some(pos) = target {
                        let mut without = scenario.clone();
                        without.provenance[index] = CaseTag::Case2;
                        without.summands.remove(pos);
                        next.insert(without);
                    }
                }
            }
        }
        scenarios = next;
    }
    Ok(scenarios)
}

/// Alternating sum Σ (−1)^q over the summands, collected per limit module.
/// Zero coefficients are dropped.
pub fn euler_characteristic(scenario: &Scenario) -> BTreeMap<LimitModule, i64> {
    let mut out: BTreeMap<LimitModule, i64> = BTreeMap::new();
    for summand in &scenario.summands {
        let sign = if summand.degree % 2 == 0 { 1 } else { -1 };
        *out.entry(summand.weight.limit_key()).or_insert(0) += sign;
    }
    out.retain(|_, coeff| *coeff != 0);
    out
}

/// Summary statistics asserted by `verify_theorem_bounds`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundsReport {
    pub scenario_count: usize,
    pub max_distinct_degrees: usize,
    pub max_summands: usize,
    pub euler_invariant: bool,
}

/// Asserts the decomposition bounds on an enumerated scenario set: no
/// scenario uses more than N distinct degrees or more than N summands, and
/// the Euler characteristic is the same in every scenario. A violation is an
/// internal inconsistency, never a mathematical outcome.
pub fn verify_theorem_bounds(
    scenarios: &BTreeSet<Scenario>,
    filtration_length: usize,
) -> Result<BoundsReport> {
    let mut max_degrees = 0;
    let mut max_summands = 0;
    let mut euler: Option<BTreeMap<LimitModule, i64>> = None;
    for scenario in scenarios {
        let degrees = scenario.distinct_degrees();
        let summands = scenario.summands.len();
        if degrees > filtration_length || summands > filtration_length {
            return Err(Error::Inconsistency(alloc::format!(
                "scenario with {summands} summands in {degrees} degrees exceeds the \
                 filtration length {filtration_length}"
            )));
        }
        max_degrees = max_degrees.max(degrees);
        max_summands = max_summands.max(summands);
        let chi = euler_characteristic(scenario);
        match &euler {
            None => euler = Some(chi),
            Some(reference) => {
                if *reference != chi {
                    return Err(Error::Inconsistency(alloc::string::String::from(
                        "Euler characteristic differs between scenarios",
                    )));
                }
            }
        }
    }
    Ok(BoundsReport {
        scenario_count: scenarios.len(),
        max_distinct_degrees: max_degrees,
        max_summands,
        euler_invariant: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sl_module(constituents: Vec<WeightFamily>) -> FilteredModule {
        FilteredModule {
            tower: TowerDescriptor::SL,
            parabolic: ParabolicDescriptor::Borel,
            constituents,
        }
    }

    fn family(head: &[i64]) -> WeightFamily {
        WeightFamily::from_ints(&TowerDescriptor::SL, 1, head, 0).unwrap()
    }

    #[test]
    fn single_constituent_single_scenario() {
        let module = sl_module(vec![family(&[0, 2])]);
        let scenarios = decompose_enumerate(&module, 8).unwrap();
        assert_eq!(scenarios.len(), 1);
        let scenario = scenarios.first().unwrap();
        assert_eq!(scenario.summands.len(), 1);
        assert_eq!(scenario.summands[0].degree, 1);
        assert_eq!(scenario.summands[0].weight.limit_key(), family(&[1, 1]).limit_key());
        assert_eq!(scenario.provenance, vec![CaseTag::Case1]);
    }

    #[test]
    fn two_step_module_splits_into_the_case_dichotomy() {
        // Deepest constituent dominant (1,1); quotient (0,2) resolves to
        // degree 1 with the same limit module.
        let module = sl_module(vec![family(&[1, 1]), family(&[0, 2])]);
        let scenarios = decompose_enumerate(&module, 8).unwrap();
        assert_eq!(scenarios.len(), 2);
        let mu = family(&[1, 1]).limit_key();
        let mut shapes: Vec<Vec<(u64, LimitModule)>> = scenarios
            .iter()
            .map(|s| s.summands.iter().map(|x| (x.degree, x.weight.limit_key())).collect())
            .collect();
        shapes.sort();
        assert_eq!(shapes, vec![vec![], vec![(0, mu.clone()), (1, mu.clone())]]);
        // Both scenarios have the same (empty) Euler characteristic.
        let report = verify_theorem_bounds(&scenarios, 2).unwrap();
        assert!(report.euler_invariant);
        for s in &scenarios {
            assert!(euler_characteristic(s).is_empty());
        }
    }

    #[test]
    fn vanishing_constituent_keeps_the_other_scenario() {
        // Head (-2) vanishes at every sufficiently large level.
        let module = sl_module(vec![family(&[-2]), family(&[3, 1])]);
        let scenarios = decompose_enumerate(&module, 10).unwrap();
        assert_eq!(scenarios.len(), 1);
        let scenario = scenarios.first().unwrap();
        assert_eq!(scenario.summands.len(), 1);
        assert_eq!(scenario.summands[0].degree, 0);
        assert_eq!(scenario.provenance, vec![CaseTag::Vanished, CaseTag::Case1]);
    }

    #[test]
    fn euler_characteristic_shapes() {
        let mu = family(&[1, 1]);
        let single = Scenario {
            summands: vec![Summand { degree: 1, constituent: 0, weight: mu.clone() }],
            provenance: vec![CaseTag::Case1],
        };
        let chi = euler_characteristic(&single);
        assert_eq!(chi.get(&mu.limit_key()), Some(&-1));
        let cancelling = Scenario {
            summands: vec![
                Summand { degree: 0, constituent: 0, weight: mu.clone() },
                Summand { degree: 1, constituent: 1, weight: mu.clone() },
            ],
            provenance: vec![CaseTag::Case1, CaseTag::Case1],
        };
        assert!(euler_characteristic(&cancelling).is_empty());
    }

    #[test]
    fn distinct_limits_give_one_scenario() {
        // Dominant families with distinct limit modules: no Case 2 is ever
        // available, so the full direct sum is the only scenario.
        let module = sl_module(vec![family(&[2, 1]), family(&[1]), family(&[3, 3])]);
        let scenarios = decompose_enumerate(&module, 8).unwrap();
        assert_eq!(scenarios.len(), 1);
        let scenario = scenarios.first().unwrap();
        assert_eq!(scenario.summands.len(), 3);
        assert!(scenario.summands.iter().all(|s| s.degree == 0));
        assert_eq!(scenario.distinct_degrees(), 1);
    }

    #[test]
    fn strong_finiteness_details() {
        let module = sl_module(vec![family(&[0, 2]), family(&[-2])]);
        let report = strong_finiteness_check(&module, 10).unwrap();
        assert!(report.passes);
        assert!(report.constituents[0].verdict.unwrap().is_positive());
        // The vanishing constituent passes vacuously, without a verdict.
        assert!(report.constituents[1].verdict.is_none());
        assert!(report.constituents[1].passes);
    }

    #[test]
    fn scenario_count_is_bounded_by_two_to_the_n_minus_one() {
        // Four constituents engineered so Case 2 fires repeatedly.
        let module = sl_module(vec![
            family(&[1, 1]),
            family(&[0, 2]),
            family(&[1, 1]),
            family(&[0, 2]),
        ]);
        let scenarios = decompose_enumerate(&module, 8).unwrap();
        assert!(scenarios.len() <= 8, "got {}", scenarios.len());
        verify_theorem_bounds(&scenarios, 4).unwrap();
    }
}
