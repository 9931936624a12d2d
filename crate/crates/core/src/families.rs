//! Finite descriptors for towers of classical groups, parabolic subgroups,
//! and projective systems of weights, plus per-level evaluation and limit
//! stabilization of dot-action outcomes.
//!
//! A weight family stores an affine head (entries p + q·n in the level
//! parameter n) over a constant tail. Projectively compatible systems on the
//! finitary towers are exactly the constant ones; the affine language exists
//! so that the integrability criteria have something to discriminate.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bbw::{bbw_resolve, parabolic_validity, BBWOutcome};
use crate::weights::{ClassicalType, RankedWeight};
use crate::{Error, Half, Result};

/// Hard cap on the coordinate count of any evaluated level. Diagonal towers
/// grow geometrically; this keeps evaluation at desk scale.
pub const EVAL_COORD_CAP: u64 = 8192;

/// Which tower of classical groups the computation runs along.
///
/// Level n carries: SL -> (A, n); Sp -> (C, n); SO -> SO(n+2), i.e. (B, (n+1)/2)
/// at odd levels and (D, (n+2)/2) at even levels, alternating along the chain
/// SO(n) ⊂ SO(n+1). A diagonal type-A tower multiplies the natural module:
/// each step sends the natural representation to `copies` naturals plus
/// `padding` trivials, so coordinate counts satisfy L(n+1) = copies·L(n) + padding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind"))]
pub enum TowerDescriptor {
    SL,
    SO,
    Sp,
    DiagonalA { copies: u32, padding: u32, base_rank: u32 },
}

impl TowerDescriptor {
    pub fn validate(&self) -> Result<()> {
        if let TowerDescriptor::DiagonalA { copies, base_rank, .. } = self {
            if *copies < 1 {
                return Err(Error::InvalidTower(String::from("copies must be >= 1")));
            }
            if *base_rank < 1 {
                return Err(Error::InvalidTower(String::from("base_rank must be >= 1")));
            }
        }
        Ok(())
    }

    /// Finitary towers are the SL/SO/Sp chains.
    pub fn is_finitary(&self) -> bool {
        !matches!(self, TowerDescriptor::DiagonalA { .. })
    }

    /// Towers whose levels are all of type A.
    pub fn is_type_a(&self) -> bool {
        matches!(self, TowerDescriptor::SL | TowerDescriptor::DiagonalA { .. })
    }

    /// Type and rank at the given level (levels start at 1).
    pub fn signature(&self, level: u32) -> Result<(ClassicalType, u32)> {
        self.validate()?;
        if level < 1 {
            return Err(Error::LevelBelowFirst { level, first: 1 });
        }
        match self {
            TowerDescriptor::SL => Ok((ClassicalType::A, level)),
            TowerDescriptor::Sp => Ok((ClassicalType::C, level)),
            TowerDescriptor::SO => {
                if level % 2 == 1 {
                    Ok((ClassicalType::B, (level + 1) / 2))
                } else {
                    Ok((ClassicalType::D, (level + 2) / 2))
                }
            }
            TowerDescriptor::DiagonalA { copies, padding, base_rank } => {
                let mut coords = *base_rank as u64 + 1;
                for _ in 1..level {
                    coords = coords * *copies as u64 + *padding as u64;
                    if coords > EVAL_COORD_CAP {
                        return Err(Error::RankCapExceeded { level, coords, cap: EVAL_COORD_CAP });
                    }
                }
                Ok((ClassicalType::A, coords as u32 - 1))
            }
        }
    }

    /// Coordinate count at the level.
    pub fn coord_count(&self, level: u32) -> Result<usize> {
        let (ty, rank) = self.signature(level)?;
        Ok(ty.coord_count(rank))
    }

    /// First level whose rank is at least `rank`, or `None` when the tower
    /// never reaches it (only possible for a constant-rank diagonal tower).
    pub fn first_level_with_rank(&self, rank: u32) -> Option<u32> {
        match self {
            TowerDescriptor::SL | TowerDescriptor::Sp => Some(rank.max(1)),
            TowerDescriptor::SO => {
                if rank <= 1 {
                    Some(1)
                } else {
                    Some(2 * rank - 2)
                }
            }
            TowerDescriptor::DiagonalA { copies, padding, base_rank } => {
                if *base_rank >= rank {
                    return Some(1);
                }
                if *copies == 1 && *padding == 0 {
                    return None;
                }
                let mut coords = *base_rank as u64 + 1;
                let mut level = 1u32;
                while coords < rank as u64 + 1 {
                    coords = coords * *copies as u64 + *padding as u64;
                    level += 1;
                    if coords > EVAL_COORD_CAP {
                        return None;
                    }
                }
                Some(level)
            }
        }
    }
}

/// A parabolic subgroup compatible with the exhaustion, given by a stable
/// front-anchored set of crossed-out simple roots. The Levi part at each
/// level consists of all simple roots not crossed out; `Borel` crosses out
/// everything.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParabolicDescriptor {
    Borel,
    Crossed(BTreeSet<u32>),
}

impl ParabolicDescriptor {
    /// Simple roots of the Levi part at the given rank (1-based indices).
    /// Errors when a crossed position does not index a simple root at this
    /// rank.
    pub fn levi_roots(&self, rank: u32) -> Result<BTreeSet<u32>> {
        match self {
            ParabolicDescriptor::Borel => Ok(BTreeSet::new()),
            ParabolicDescriptor::Crossed(crossed) => {
                for &p in crossed {
                    if p == 0 || p > rank {
                        return Err(Error::InvalidSimpleRoot { index: p, rank });
                    }
                }
                Ok((1..=rank).filter(|i| !crossed.contains(i)).collect())
            }
        }
    }
}

/// One entry of a family head: the affine form `constant + slope·n` in the
/// level parameter n. Serialized as the pair [p, q] of half-integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub constant: Half,
    pub slope: Half,
}

#[cfg(feature = "serde")]
impl serde::Serialize for AffineForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        (self.constant, self.slope).serialize(serializer)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for AffineForm {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> core::result::Result<Self, D::Error> {
        let (constant, slope) = <(Half, Half)>::deserialize(deserializer)?;
        Ok(AffineForm { constant, slope })
    }
}

impl AffineForm {
    pub const fn constant(value: Half) -> Self {
        AffineForm { constant: value, slope: Half::ZERO }
    }

    pub fn at(&self, level: u32) -> Half {
        self.constant + self.slope * level as i64
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

/// Finite descriptor of a projective system of weights: affine head forms in
/// the leading coordinates, a constant tail everywhere else, valid from
/// `first_level` on.
///
/// Canonical form: on type-A towers the tail is 0 (constant shifts are
/// absorbed); on B/C/D towers the tail is nonnegative. Trailing head entries
/// identical to the tail are stripped, so structural equality of constant
/// families coincides with level-wise equality of the weights they produce.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WeightFamily {
    first_level: u32,
    head: Vec<AffineForm>,
    tail: Half,
}

impl WeightFamily {
    pub fn new(
        tower: &TowerDescriptor,
        first_level: u32,
        mut head: Vec<AffineForm>,
        mut tail: Half,
    ) -> Result<Self> {
        tower.validate()?;
        if first_level < 1 {
            return Err(Error::LevelBelowFirst { level: first_level, first: 1 });
        }
        let (ty0, rank0) = tower.signature(first_level)?;
        let coords0 = ty0.coord_count(rank0);
        if head.len() > coords0 {
            return Err(Error::HeadTooLong { level: first_level, head: head.len(), coords: coords0 });
        }
        if tower.is_type_a() {
            // Absorb the trace ambiguity: subtract the constant tail.
            let shift = tail;
            for form in head.iter_mut() {
                form.constant -= shift;
            }
            tail = Half::ZERO;
        } else if tail < Half::ZERO {
            return Err(Error::NegativeTail);
        }
        // Level-wise well-formedness for every level at once: slopes must be
        // integers, and heads must sit in the same parity class as the tail.
        for form in &head {
            if !form.slope.is_integer() {
                return Err(Error::MixedParity);
            }
            if !(form.constant - tail).is_integer() {
                return Err(Error::MixedParity);
            }
        }
        if !tower.is_type_a() && !matches!(tower, TowerDescriptor::SO) && !tail.is_integer() {
            // Sp towers are type C: integer weights only.
            return Err(Error::NonIntegerCoefficient);
        }
        if tower.is_type_a() && head.iter().any(|f| !f.constant.is_integer()) {
            return Err(Error::NonIntegerCoefficient);
        }
        while head.last().map_or(false, |f| f.is_constant() && f.constant == tail) {
            head.pop();
        }
        Ok(WeightFamily { first_level, head, tail })
    }

    /// Family with constant head entries.
    pub fn from_constants(
        tower: &TowerDescriptor,
        first_level: u32,
        head: &[Half],
        tail: Half,
    ) -> Result<Self> {
        Self::new(tower, first_level, head.iter().map(|&h| AffineForm::constant(h)).collect(), tail)
    }

    /// Integer convenience constructor: `head` are constants.
    pub fn from_ints(
        tower: &TowerDescriptor,
        first_level: u32,
        head: &[i64],
        tail: i64,
    ) -> Result<Self> {
        let head: Vec<Half> = head.iter().map(|&h| Half::int(h)).collect();
        Self::from_constants(tower, first_level, &head, Half::int(tail))
    }

    pub fn first_level(&self) -> u32 {
        self.first_level
    }

    pub fn head(&self) -> &[AffineForm] {
        &self.head
    }

    pub fn tail(&self) -> Half {
        self.tail
    }

    pub fn is_constant(&self) -> bool {
        self.head.iter().all(AffineForm::is_constant)
    }

    /// The level-independent content: what the family converges to. Two
    /// stable families describe the same limit module exactly when their
    /// limit keys agree.
    pub fn limit_key(&self) -> LimitModule {
        LimitModule { head: self.head.clone(), tail: self.tail }
    }

    /// Evaluates the family at a level: head forms at n in the leading
    /// coordinates, tail everywhere else.
    pub fn weight_at_level(&self, tower: &TowerDescriptor, level: u32) -> Result<RankedWeight> {
        if level < self.first_level {
            return Err(Error::LevelBelowFirst { level, first: self.first_level });
        }
        let (ty, rank) = tower.signature(level)?;
        let coords = ty.coord_count(rank);
        if self.head.len() > coords {
            return Err(Error::HeadTooLong { level, head: self.head.len(), coords });
        }
        let mut coeffs = Vec::with_capacity(coords);
        coeffs.extend(self.head.iter().map(|f| f.at(level)));
        coeffs.resize(coords, self.tail);
        RankedWeight::new(ty, rank, coeffs)
    }

    /// Exact symbolic dominance over all levels >= first_level: a numeric
    /// check over the prefix where the head still touches the end of the
    /// vector, then affine-form inequalities for the generic regime.
    pub fn is_dominant_family(&self, tower: &TowerDescriptor) -> Result<bool> {
        let k = self.head.len();
        let generic = tower.first_level_with_rank(k as u32 + 2);
        let prefix_end = match generic {
            // Constant-rank tower: every level looks like the first.
            None => self.first_level,
            Some(g) => g.max(self.first_level) + 1,
        };
        for level in self.first_level..=prefix_end {
            if !self.weight_at_level(tower, level)?.is_dominant() {
                return Ok(false);
            }
        }
        if generic.is_none() {
            return Ok(true);
        }
        // Generic regime: consecutive head entries, then head against tail.
        // An affine form is nonnegative on [start, ∞) iff its slope is
        // nonnegative and its value at start is nonnegative.
        let nonneg_from = |constant: Half, slope: Half, start: u32| -> bool {
            slope >= Half::ZERO && constant + slope * start as i64 >= Half::ZERO
        };
        for pair in self.head.windows(2) {
            let c = pair[0].constant - pair[1].constant;
            let s = pair[0].slope - pair[1].slope;
            if !nonneg_from(c, s, self.first_level) {
                return Ok(false);
            }
        }
        if let Some(last) = self.head.last() {
            let start = tower
                .first_level_with_rank(k as u32 + 1)
                .expect("growing tower")
                .max(self.first_level);
            if !nonneg_from(last.constant - self.tail, last.slope, start) {
                return Ok(false);
            }
        }
        Ok(self.tail >= Half::ZERO)
    }
}

/// Level-independent description of a limit module (head forms plus tail,
/// with the onset level forgotten).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LimitModule {
    pub head: Vec<AffineForm>,
    pub tail: Half,
}

/// Projective compatibility of the family along the tower.
///
/// Restriction along the standard embeddings truncates ε-coordinates, so on
/// the finitary towers a family is a projective system exactly when every
/// head form is constant in n (for type A, after the canonical shift already
/// applied at construction). On diagonal towers the restriction is not a
/// coordinate truncation and only head/tail shape stability is required,
/// which construction guarantees.
pub fn check_projective_compatibility(family: &WeightFamily, tower: &TowerDescriptor) -> bool {
    match tower {
        TowerDescriptor::DiagonalA { .. } => true,
        _ => family.is_constant(),
    }
}

/// Limit of the level-wise cohomology along the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "limit", rename_all = "snake_case"))]
pub enum LimitCohomology {
    /// Singular at every sufficiently large probed level.
    Vanishing,
    /// The probe window could not certify stabilization. Reported as a
    /// distinct diagnostic: the underlying limit is not asserted to vanish.
    NonStable { diagnostic: String },
    /// Degree and weight family stabilized (and provably stay fixed).
    Stable { degree: u64, weight: WeightFamily },
}

/// Probes dot-action outcomes along the tower and decides the limit.
///
/// Requires a projectively compatible family and Levi-dominance of the
/// weight at every probed level. Stabilization is declared after three
/// consecutive agreeing levels past the symbolic threshold beyond which the
/// interleaving of the head with ρ can no longer change; a window that ends
/// before that threshold yields the `NonStable` diagnostic.
pub fn bbw_limit(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    parabolic: &ParabolicDescriptor,
    probe_levels: u32,
) -> Result<LimitCohomology> {
    if probe_levels < 3 {
        return Err(Error::ProbeWindowTooSmall { probe_levels, min: 3 });
    }
    if !check_projective_compatibility(family, tower) {
        return Err(Error::IncompatibleFamily);
    }

    let first = family.first_level();
    let levels: Vec<u32> = (first..=first + probe_levels).collect();
    let mut outcomes = Vec::with_capacity(levels.len());
    for &level in &levels {
        let weight = family.weight_at_level(tower, level)?;
        let (_, rank) = tower.signature(level)?;
        let levi = parabolic.levi_roots(rank)?;
        if !parabolic_validity(&weight, &levi)? {
            return Err(Error::ParabolicInvalid { level });
        }
        outcomes.push(bbw_resolve(&weight));
    }

    // Dominant families resolve at the identity on every level.
    if family.is_dominant_family(tower)? {
        for (&level, outcome) in levels.iter().zip(&outcomes) {
            let expected = family.weight_at_level(tower, level)?;
            if !matches!(outcome, BBWOutcome::Regular { degree: 0, weight } if *weight == expected)
            {
                return Err(Error::Inconsistency(format!(
                    "dominant family did not resolve at the identity at level {level}"
                )));
            }
        }
        return Ok(LimitCohomology::Stable { degree: 0, weight: family.clone() });
    }

    if family.is_constant() {
        stabilize_constant_family(family, tower, &levels, &outcomes)
    } else {
        // Non-constant families reach this point only on diagonal towers.
        // Without a symbolic certificate we trust an all-singular suffix and
        // refuse to certify anything else.
        let suffix = agreeing_singular_suffix(&outcomes);
        if suffix >= 3 {
            Ok(LimitCohomology::Vanishing)
        } else {
            Ok(LimitCohomology::NonStable {
                diagnostic: String::from(
                    "non-constant family on a diagonal tower: stabilization is not \
                     symbolically certifiable from the probe window",
                ),
            })
        }
    }
}

fn agreeing_singular_suffix(outcomes: &[BBWOutcome]) -> usize {
    outcomes.iter().rev().take_while(|o| o.is_singular()).count()
}

/// Level beyond which the outcome pattern of a constant family is provably
/// fixed: the head entries of λ+ρ have settled strictly positive (B/C/D)
/// and every head-against-tail crossing position lies inside the vector, so
/// the sort pattern, wall collisions, and sign counts are level-independent.
fn stability_threshold(family: &WeightFamily, tower: &TowerDescriptor) -> u32 {
    debug_assert!(family.is_constant());
    let k = family.head.len() as i64;
    let c = family.tail;
    let mut need_rank: i64 = k + 2;
    for (idx, form) in family.head.iter().enumerate() {
        let i1 = idx as i64 + 1;
        let h = form.constant;
        // Positivity of the shifted head entry (threshold for all ρ offsets).
        need_rank = need_rank.max((Half::int(i1) - h).ceil() + 1);
        // Crossing position of the head entry inside the tail run.
        need_rank = need_rank.max((Half::int(i1) + c - h).ceil() + 1);
    }
    let min_rank = need_rank.clamp(1, u32::MAX as i64) as u32;
    match tower.first_level_with_rank(min_rank) {
        Some(level) => level.max(family.first_level()),
        // Constant-rank tower: every level is identical.
        None => family.first_level(),
    }
}

fn stabilize_constant_family(
    family: &WeightFamily,
    tower: &TowerDescriptor,
    levels: &[u32],
    outcomes: &[BBWOutcome],
) -> Result<LimitCohomology> {
    let threshold = stability_threshold(family, tower);
    let confirm: Vec<usize> =
        (0..levels.len()).filter(|&i| levels[i] >= threshold).collect();
    if confirm.len() < 3 {
        let first = family.first_level();
        let needed = threshold.saturating_sub(first) + 3;
        return Ok(LimitCohomology::NonStable {
            diagnostic: format!(
                "probe window ends before the stabilization threshold (level {threshold}); \
                 rerun with probe_levels >= {needed}"
            ),
        });
    }

    let singular = outcomes[confirm[0]].is_singular();
    for &i in &confirm {
        if outcomes[i].is_singular() != singular {
            return Err(Error::Inconsistency(format!(
                "singularity pattern changed past the stabilization threshold {threshold}"
            )));
        }
    }
    if singular {
        return Ok(LimitCohomology::Vanishing);
    }

    // Reconstruct the output family from the topmost confirmed outcome:
    // strip the trailing constant run, keep the front window as constants.
    let &top = confirm.last().expect("nonempty");
    let BBWOutcome::Regular { degree, weight: top_weight } = &outcomes[top] else {
        unreachable!("non-singular confirmed outcome");
    };
    let coeffs = top_weight.coeffs();
    let tail = *coeffs.last().expect("nonempty weight");
    let window_len = coeffs.len() - coeffs.iter().rev().take_while(|&&x| x == tail).count();
    let window: Vec<Half> = coeffs[..window_len].to_vec();

    // Earliest probed level from which every outcome already matches.
    for (pos, &onset) in levels.iter().enumerate() {
        let Ok(candidate) = WeightFamily::from_constants(tower, onset, &window, tail) else {
            continue;
        };
        let matches = (pos..levels.len()).try_fold(true, |acc, i| -> Result<bool> {
            if !acc {
                return Ok(false);
            }
            let expected = candidate.weight_at_level(tower, levels[i])?;
            Ok(match &outcomes[i] {
                BBWOutcome::Regular { degree: q, weight } => *q == *degree && *weight == expected,
                BBWOutcome::Singular => false,
            })
        })?;
        if matches {
            if !candidate.is_dominant_family(tower)? {
                return Err(Error::Inconsistency(String::from(
                    "stabilized output family is not dominant",
                )));
            }
            return Ok(LimitCohomology::Stable { degree: *degree, weight: candidate });
        }
        if onset >= threshold {
            return Err(Error::Inconsistency(format!(
                "outcomes past the stabilization threshold {threshold} do not assemble \
                 into a constant family"
            )));
        }
    }
    Err(Error::Inconsistency(String::from("no onset level matched its own probe window")))
}

/// Probe window large enough for `bbw_limit` to certify the family: the
/// distance from the first level to the stabilization threshold plus the
/// three confirmation levels, with one level of slack.
pub fn suggested_probe_levels(family: &WeightFamily, tower: &TowerDescriptor) -> u32 {
    let base = if family.is_constant() {
        stability_threshold(family, tower).saturating_sub(family.first_level()) + 4
    } else {
        8
    };
    base.max(4)
}
