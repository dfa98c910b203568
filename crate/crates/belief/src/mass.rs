//! Mass functions (basic belief assignments) over a frame.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};

/// Validation tolerance on the unit-sum constraint.
pub const MASS_TOL: f64 = 1e-9;

/// A mass function: a sparse map from subsets of a frame to strictly
/// positive masses summing to one. Mass on the empty set is allowed
/// (the conjunctive rule is unnormalized).
#[derive(Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focals: BTreeMap<u32, f64>,
}

impl MassFunction {
    /// Validates and builds a mass function. Zero-mass entries are
    /// dropped, so every stored entry is a focal element.
    pub fn new(frame: Frame, assignments: &[(Subset, f64)]) -> Result<Self> {
        if assignments.is_empty() {
            return Err(Error::EmptyAssignments);
        }
        let mut focals = BTreeMap::new();
        let mut sum = 0.0;
        for &(subset, mass) in assignments {
            frame.check_subset(subset)?;
            if mass < 0.0 {
                return Err(Error::NegativeMass { mass });
            }
            sum += mass;
            if mass == 0.0 {
                continue;
            }
            if focals.insert(subset.bits(), mass).is_some() {
                return Err(Error::DuplicateSubset {
                    bits: subset.bits(),
                });
            }
        }
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NonUnitSum { sum });
        }
        Ok(MassFunction { frame, focals })
    }

    /// Total ignorance: all mass on the full frame.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_set();
        let mut focals = BTreeMap::new();
        focals.insert(full.bits(), 1.0);
        MassFunction { frame, focals }
    }

    /// All mass on one subset (which may be the empty set).
    pub fn categorical(frame: Frame, subset: Subset) -> Result<Self> {
        frame.check_subset(subset)?;
        let mut focals = BTreeMap::new();
        focals.insert(subset.bits(), 1.0);
        Ok(MassFunction { frame, focals })
    }

    /// Assembles a mass function from an operator's accumulator,
    /// dropping non-positive entries. The caller guarantees the sum.
    pub(crate) fn from_accumulated(frame: Frame, acc: BTreeMap<u32, f64>) -> Self {
        let focals: BTreeMap<u32, f64> = acc.into_iter().filter(|&(_, v)| v > 0.0).collect();
        debug_assert!(
            (focals.values().sum::<f64>() - 1.0).abs() <= MASS_TOL,
            "operator broke normalization"
        );
        MassFunction { frame, focals }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Mass of a subset (0 for non-focal subsets).
    pub fn mass(&self, subset: Subset) -> f64 {
        self.focals.get(&subset.bits()).copied().unwrap_or(0.0)
    }

    /// Focal elements with their masses, in ascending bitmask order.
    pub fn focals(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.focals.iter().map(|(&b, &v)| (Subset::from_bits(b), v))
    }

    pub fn focal_count(&self) -> usize {
        self.focals.len()
    }

    pub fn total(&self) -> f64 {
        self.focals.values().sum()
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal_count() == 1 && self.mass(self.frame.full_set()) == 1.0
    }

    pub(crate) fn check_same_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .focals()
            .map(|(s, v)| format!("{}: {v}", self.frame.format_subset(s)))
            .collect();
        write!(f, "m[{}]", parts.join(", "))
    }
}

/// Pignistic probability distribution over the singletons of a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct PignisticDistribution {
    frame: Frame,
    probs: Vec<f64>,
}

impl PignisticDistribution {
    pub(crate) fn new(frame: Frame, probs: Vec<f64>) -> Self {
        debug_assert_eq!(frame.len(), probs.len());
        PignisticDistribution { frame, probs }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Probability of element `i`.
    pub fn prob(&self, element: usize) -> f64 {
        self.probs[element]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Index of the most probable element; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }
}
