//! Classical belief-function operators: conjunctive / disjunctive /
//! mean combination, conditioning and deconditioning, discounting,
//! the pignistic transform and the Jousselme distance.
//!
//! All operators are pure; every returned mass function keeps the unit
//! sum of its inputs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::mass::{MassFunction, PignisticDistribution};

impl MassFunction {
    /// Unnormalized conjunctive combination: intersects every focal
    /// pair, so conflict shows up as mass on the empty set.
    pub fn conjunctive(&self, other: &Self) -> Result<Self> {
        self.check_same_frame(other)?;
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (b, vb) in self.focals() {
            for (c, vc) in other.focals() {
                *acc.entry(b.intersect(c).bits()).or_insert(0.0) += vb * vc;
            }
        }
        Ok(MassFunction::from_accumulated(self.frame().clone(), acc))
    }

    /// Disjunctive combination: unions every focal pair.
    pub fn disjunctive(&self, other: &Self) -> Result<Self> {
        self.check_same_frame(other)?;
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (b, vb) in self.focals() {
            for (c, vc) in other.focals() {
                *acc.entry(b.union(c).bits()).or_insert(0.0) += vb * vc;
            }
        }
        Ok(MassFunction::from_accumulated(self.frame().clone(), acc))
    }

    /// Conditions on a certain hypothesis `a`: each focal's mass moves
    /// to its intersection with `a`. Equals the conjunctive combination
    /// with the categorical mass on `a`.
    pub fn condition(&self, a: Subset) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyConditioner);
        }
        self.frame().check_subset(a)?;
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (f, v) in self.focals() {
            *acc.entry(f.intersect(a).bits()).or_insert(0.0) += v;
        }
        Ok(MassFunction::from_accumulated(self.frame().clone(), acc))
    }

    /// Least-committed inverse of conditioning on `a`: every focal `C`
    /// (which must lie inside `a`) moves to `C ∪ a^c`.
    pub fn decondition(&self, a: Subset) -> Result<Self> {
        self.frame().check_subset(a)?;
        let complement = self.frame().complement(a);
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (f, v) in self.focals() {
            if !f.is_subset_of(a) {
                return Err(Error::FocalOutsideConditioner { bits: f.bits() });
            }
            *acc.entry(f.union(complement).bits()).or_insert(0.0) += v;
        }
        Ok(MassFunction::from_accumulated(self.frame().clone(), acc))
    }

    /// Reliability discounting: strict subsets of the frame keep
    /// `alpha` of their mass, the rest moves to total ignorance.
    pub fn discount(&self, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        let full = self.frame().full_set();
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (f, v) in self.focals() {
            if f != full {
                *acc.entry(f.bits()).or_insert(0.0) += alpha * v;
            }
        }
        // 1 - alpha*(1 - m(full)), written so alpha = 0 and 1 are exact.
        *acc.entry(full.bits()).or_insert(0.0) += (1.0 - alpha) + alpha * self.mass(full);
        Ok(MassFunction::from_accumulated(self.frame().clone(), acc))
    }

    /// Pignistic transform: splits each focal mass uniformly over its
    /// elements, renormalizing by `1 - m(∅)`.
    pub fn pignistic(&self) -> Result<PignisticDistribution> {
        let denom = 1.0 - self.mass(Subset::EMPTY);
        if denom <= 0.0 {
            return Err(Error::TotalConflict);
        }
        let mut probs = vec![0.0; self.frame().len()];
        for (f, v) in self.focals() {
            if f.is_empty() {
                continue;
            }
            let share = v / (f.card() as f64 * denom);
            for e in f.elements() {
                probs[e] += share;
            }
        }
        Ok(PignisticDistribution::new(self.frame().clone(), probs))
    }

    /// Jousselme distance, using the Jaccard similarity of focal pairs
    /// as the weighting matrix. The matrix is evaluated lazily per
    /// focal pair and never materialized.
    pub fn jousselme(&self, other: &Self) -> Result<f64> {
        self.check_same_frame(other)?;
        let mut diff: BTreeMap<u32, f64> = BTreeMap::new();
        for (f, v) in self.focals() {
            *diff.entry(f.bits()).or_insert(0.0) += v;
        }
        for (f, v) in other.focals() {
            *diff.entry(f.bits()).or_insert(0.0) -= v;
        }
        diff.retain(|_, v| *v != 0.0);
        let mut quad = 0.0;
        for (&a, &va) in &diff {
            for (&b, &vb) in &diff {
                quad += va * vb * jaccard(a, b);
            }
        }
        // Rounding can push the quadratic form a hair below zero.
        Ok((0.5 * quad).max(0.0).sqrt())
    }

    /// Arithmetic mean of the given mass functions, per subset.
    ///
    /// Idempotent and independent of input order: per-subset values are
    /// summed in sorted order, and an all-equal column short-circuits to
    /// the common value.
    pub fn mean_combine(masses: &[MassFunction]) -> Result<MassFunction> {
        let first = masses.first().ok_or(Error::EmptyList)?;
        for m in &masses[1..] {
            first.check_same_frame(m)?;
        }
        let count = masses.len() as f64;
        let keys: BTreeSet<u32> = masses
            .iter()
            .flat_map(|m| m.focals().map(|(s, _)| s.bits()))
            .collect();
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        let mut column = Vec::with_capacity(masses.len());
        for key in keys {
            column.clear();
            column.extend(masses.iter().map(|m| m.mass(Subset::from_bits(key))));
            let value = if column.iter().all(|&v| v == column[0]) {
                column[0]
            } else {
                column.sort_by(f64::total_cmp);
                column.iter().sum::<f64>() / count
            };
            acc.insert(key, value);
        }
        Ok(MassFunction::from_accumulated(first.frame().clone(), acc))
    }
}

/// Jaccard similarity of two bitmask-encoded subsets, with the
/// convention that two empty sets have similarity 1.
pub(crate) fn jaccard(a: u32, b: u32) -> f64 {
    if a == 0 && b == 0 {
        return 1.0;
    }
    let inter = (a & b).count_ones();
    let union = (a | b).count_ones();
    inter as f64 / union as f64
}
