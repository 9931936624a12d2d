use alloc::string::String;
use core::fmt;

use crate::weights::ClassicalType;

/// Errors reported by the core operations.
///
/// `Inconsistency` is special: it signals that two independent computations
/// of the same quantity disagreed, which is an implementation bug by
/// construction, never a mathematical outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Rank outside the valid range for the type (D needs rank >= 2).
    InvalidRank { ty: ClassicalType, rank: u32 },
    /// Coefficient vector length does not match the type/rank rule.
    CoefficientCount { expected: usize, got: usize },
    /// B/D coefficients must be all-integer or all-half-integer, never mixed.
    MixedParity,
    /// A/C weights must have integer coefficients.
    NonIntegerCoefficient,
    /// Rank exceeds the brute-force enumeration cap.
    RankAboveOracleCap { ty: ClassicalType, rank: u32, cap: u32 },
    /// Operation requires a dominant weight.
    NotDominant,
    /// Spin (half-integer) weights are unsupported here.
    SpinUnsupported,
    /// Level is below the first valid level of a family or tower.
    LevelBelowFirst { level: u32, first: u32 },
    /// Branching needs a level with a lower neighbour in the tower.
    LevelNotBranchable { level: u32 },
    /// Weight does not match the tower's type/rank at the given level.
    LevelSignatureMismatch { level: u32 },
    /// Family head is longer than the coordinate count at some level.
    HeadTooLong { level: u32, head: usize, coords: usize },
    /// Tower rank at the requested level exceeds the evaluation cap.
    RankCapExceeded { level: u32, coords: u64, cap: u64 },
    /// Tail of a B/C/D family must be nonnegative in canonical form.
    NegativeTail,
    /// Family descriptor invalid (empty diagonal signature, zero base rank, ...).
    InvalidTower(String),
    /// Simple-root index out of range for the type/rank.
    InvalidSimpleRoot { index: u32, rank: u32 },
    /// Weight fails Levi dominance for the parabolic at some level.
    ParabolicInvalid { level: u32 },
    /// Operation requires a projectively compatible family.
    IncompatibleFamily,
    /// Operation requires a dominant family.
    NotDominantFamily,
    /// Probe window too small for stabilization detection.
    ProbeWindowTooSmall { probe_levels: u32, min: u32 },
    /// Operation unsupported on this tower kind.
    UnsupportedTower(String),
    /// Dimension at the top of a restriction chain exceeds the configured cap.
    DimCapExceeded { cap: u64 },
    /// A filtered module failed the strong-finiteness check.
    NotStronglyFinite { constituent: usize },
    /// A limit computation returned a non-stable diagnostic.
    NonStableLimit { diagnostic: String },
    /// Two independent computations disagreed: an implementation bug.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank { ty, rank } => {
                write!(f, "rank {rank} is invalid for type {ty}")
            }
            Error::CoefficientCount { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            Error::MixedParity => {
                write!(f, "coefficients must be all-integer or all-half-integer")
            }
            Error::NonIntegerCoefficient => {
                write!(f, "types A and C require integer coefficients")
            }
            Error::RankAboveOracleCap { ty, rank, cap } => {
                write!(f, "rank {rank} of type {ty} exceeds the oracle cap {cap}")
            }
            Error::NotDominant => write!(f, "weight is not dominant"),
            Error::SpinUnsupported => write!(f, "spin weights are not supported here"),
            Error::LevelBelowFirst { level, first } => {
                write!(f, "level {level} is below the first valid level {first}")
            }
            Error::LevelNotBranchable { level } => {
                write!(f, "level {level} has no lower level to branch to")
            }
            Error::LevelSignatureMismatch { level } => {
                write!(f, "weight does not match the tower signature at level {level}")
            }
            Error::HeadTooLong { level, head, coords } => {
                write!(
                    f,
                    "family head of length {head} exceeds {coords} coordinates at level {level}"
                )
            }
            Error::RankCapExceeded { level, coords, cap } => {
                write!(
                    f,
                    "level {level} needs {coords} coordinates, above the evaluation cap {cap}"
                )
            }
            Error::NegativeTail => {
                write!(f, "canonical families on B/C/D towers need a nonnegative tail")
            }
            Error::InvalidTower(msg) => write!(f, "invalid tower descriptor: {msg}"),
            Error::InvalidSimpleRoot { index, rank } => {
                write!(f, "simple-root index {index} out of range at rank {rank}")
            }
            Error::ParabolicInvalid { level } => {
                write!(f, "weight fails Levi dominance for the parabolic at level {level}")
            }
            Error::IncompatibleFamily => {
                write!(f, "family is not a projectively compatible system")
            }
            Error::NotDominantFamily => write!(f, "family is not dominant at every level"),
            Error::ProbeWindowTooSmall { probe_levels, min } => {
                write!(f, "probe window {probe_levels} too small, need at least {min}")
            }
            Error::UnsupportedTower(msg) => write!(f, "unsupported tower: {msg}"),
            Error::DimCapExceeded { cap } => {
                write!(f, "dimension exceeds the configured cap {cap}")
            }
            Error::NotStronglyFinite { constituent } => {
                write!(f, "constituent {constituent} fails the strong-finiteness check")
            }
            Error::NonStableLimit { diagnostic } => {
                write!(f, "limit did not stabilize: {diagnostic}")
            }
            Error::Inconsistency(msg) => {
                write!(f, "internal inconsistency (implementation bug): {msg}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    /// True for errors that signal an implementation bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
