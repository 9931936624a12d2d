//! Property tests: dimension conservation under branching, dominance of
//! branch outputs, stabilization of constant-family probes, and the scenario
//! bounds of the decomposer.

use indbbw::branching::{branch_once, restrict_chain, DEFAULT_DIM_CAP};
use indbbw::decomposer::{
    decompose_enumerate, euler_characteristic, verify_theorem_bounds, FilteredModule,
};
use indbbw::families::{
    bbw_limit, check_projective_compatibility, suggested_probe_levels, LimitCohomology,
    ParabolicDescriptor, TowerDescriptor, WeightFamily,
};
use indbbw::weights::{ClassicalType, RankedWeight};
use indbbw::Half;
use proptest::prelude::*;

/// A dominant integer weight of the tower signature at `level`, with small
/// entries so the dimensions stay at desk scale.
fn dominant_weight_at(
    tower: &TowerDescriptor,
    level: u32,
    raw: &[u8],
) -> Option<RankedWeight> {
    let (ty, rank) = tower.signature(level).ok()?;
    let coords = ty.coord_count(rank);
    let mut entries: Vec<i64> = raw.iter().cycle().take(coords).map(|&b| (b % 4) as i64).collect();
    entries.sort_unstable_by(|a, b| b.cmp(a));
    if ty == ClassicalType::A {
        let min = *entries.last().unwrap();
        for e in entries.iter_mut() {
            *e -= min;
        }
    }
    RankedWeight::from_ints(ty, rank, &entries).ok()
}

fn tower_strategy() -> impl Strategy<Value = TowerDescriptor> {
    prop_oneof![
        Just(TowerDescriptor::SL),
        Just(TowerDescriptor::SO),
        Just(TowerDescriptor::Sp),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branching_conserves_dimension(
        tower in tower_strategy(),
        level in 2u32..=6,
        raw in proptest::collection::vec(any::<u8>(), 6),
    ) {
        if let Some(w) = dominant_weight_at(&tower, level, &raw) {
            let branched = branch_once(&w, &tower, level).unwrap();
            prop_assert_eq!(
                branched.total_dimension().unwrap(),
                w.dim_irrep().unwrap()
            );
            for (lower, mult) in branched.entries() {
                prop_assert!(lower.is_dominant());
                prop_assert!(mult >= 1);
            }
        }
    }

    #[test]
    fn constant_families_stabilize_past_the_threshold(
        tower in tower_strategy(),
        head in proptest::collection::vec(-4i64..=4, 0..=3),
        tail in 0i64..=2,
    ) {
        let Ok(family) = WeightFamily::from_ints(&tower, 1, &head, tail) else {
            return Ok(());
        };
        prop_assume!(check_projective_compatibility(&family, &tower));
        let probe = suggested_probe_levels(&family, &tower);
        let out = bbw_limit(&family, &tower, &ParabolicDescriptor::Borel, probe).unwrap();
        // A window sized by the suggestion never reports non-stable.
        let nonstable = matches!(out, LimitCohomology::NonStable { .. });
        prop_assert!(!nonstable);
        // A wider window agrees.
        let wide = bbw_limit(&family, &tower, &ParabolicDescriptor::Borel, probe + 5).unwrap();
        match (out, wide) {
            (LimitCohomology::Vanishing, LimitCohomology::Vanishing) => {}
            (
                LimitCohomology::Stable { degree: q1, weight: w1 },
                LimitCohomology::Stable { degree: q2, weight: w2 },
            ) => {
                prop_assert_eq!(q1, q2);
                prop_assert_eq!(w1.limit_key(), w2.limit_key());
            }
            (a, b) => prop_assert!(false, "window widening changed {:?} into {:?}", a, b),
        }
    }

    #[test]
    fn type_a_families_are_shift_invariant(
        head in proptest::collection::vec(-4i64..=4, 0..=3),
        shift in -3i64..=3,
        level in 4u32..=8,
    ) {
        let tower = TowerDescriptor::SL;
        let base = WeightFamily::from_ints(&tower, 4, &head, 0);
        let shifted_head: Vec<i64> = head.iter().map(|h| h + shift).collect();
        let shifted = WeightFamily::from_ints(&tower, 4, &shifted_head, shift);
        if let (Ok(base), Ok(shifted)) = (base, shifted) {
            prop_assert_eq!(&base, &shifted);
            prop_assert_eq!(
                base.weight_at_level(&tower, level).unwrap(),
                shifted.weight_at_level(&tower, level).unwrap()
            );
        }
    }

    #[test]
    fn decomposer_respects_theorem_bounds(
        heads in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 0..=2), 1..=4
        ),
    ) {
        let tower = TowerDescriptor::SL;
        let constituents: Vec<WeightFamily> = heads
            .iter()
            .map(|h| WeightFamily::from_ints(&tower, 1, h, 0).unwrap())
            .collect();
        let n = constituents.len();
        let probe = constituents
            .iter()
            .map(|f| suggested_probe_levels(f, &tower))
            .max()
            .unwrap();
        let module = FilteredModule {
            tower,
            parabolic: ParabolicDescriptor::Borel,
            constituents,
        };
        let scenarios = decompose_enumerate(&module, probe).unwrap();
        prop_assert!(!scenarios.is_empty());
        prop_assert!(scenarios.len() <= 1usize << (n.saturating_sub(1)));
        let report = verify_theorem_bounds(&scenarios, n).unwrap();
        prop_assert!(report.euler_invariant);
        prop_assert!(report.max_summands <= n);
        // Every summand is the limit of some constituent, never invented.
        let limits: Vec<_> = module
            .constituents
            .iter()
            .filter_map(|f| {
                match bbw_limit(f, &module.tower, &module.parabolic, probe).unwrap() {
                    LimitCohomology::Stable { degree, weight } => {
                        Some((degree, weight.limit_key()))
                    }
                    _ => None,
                }
            })
            .collect();
        for scenario in &scenarios {
            for summand in &scenario.summands {
                prop_assert!(
                    limits.contains(&(summand.degree, summand.weight.limit_key()))
                );
            }
        }
        let _ = scenarios.iter().map(euler_characteristic).collect::<Vec<_>>();
    }

    #[test]
    fn restriction_chains_conserve_dimension(
        head in proptest::collection::vec(0i64..=2, 0..=2),
        k in 1u32..=3,
    ) {
        let tower = TowerDescriptor::SL;
        let mut sorted = head.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let family = WeightFamily::from_ints(&tower, 2, &sorted, 0).unwrap();
        prop_assume!(family.is_dominant_family(&tower).unwrap());
        let restricted = restrict_chain(&family, &tower, 2, k, DEFAULT_DIM_CAP).unwrap();
        let top = family.weight_at_level(&tower, 2 + k).unwrap();
        prop_assert_eq!(
            restricted.total_dimension().unwrap(),
            top.dim_irrep().unwrap()
        );
    }
}

#[test]
fn spin_rho_shift_keeps_exactness() {
    // Half-integer weights flow through the whole pipeline exactly.
    let spin = RankedWeight::new(
        ClassicalType::D,
        3,
        vec![Half::new(5), Half::new(3), Half::new(-1)],
    )
    .unwrap();
    assert!(spin.is_dominant());
    let dim = spin.dim_irrep().unwrap();
    assert!(dim > num_bigint::BigUint::from(1u32));
}
