//! Frames of discernment and bitmask-encoded subsets.
//!
//! A [`Frame`] is the ordered set of exclusive hypotheses; a [`Subset`]
//! is a bitmask over its elements (bit `i` set means element `i` is in
//! the set). Frames are capped at 16 elements, which keeps every subset
//! a small integer and makes the set algebra branch-free.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on frame cardinality so every subset fits a `u32` mask.
pub const MAX_ELEMENTS: usize = 16;

/// An ordered frame of discernment.
///
/// Cheap to clone (the label list is shared). Two frames are equal when
/// their label lists are equal.
#[derive(Clone, Eq)]
pub struct Frame {
    inner: Arc<Vec<String>>,
}

impl Frame {
    /// Builds a frame from unique, non-empty labels.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_ELEMENTS {
            return Err(Error::InvalidFrame { got: labels.len() });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || labels[..i].contains(label) {
                return Err(Error::InvalidLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(Frame {
            inner: Arc::new(labels),
        })
    }

    /// Frame with generated labels `w1..wn`.
    pub fn of_size(n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|i| format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.inner
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.iter().position(|l| l == label)
    }

    /// The empty subset.
    pub fn empty_set(&self) -> Subset {
        Subset(0)
    }

    /// The full frame as a subset.
    pub fn full_set(&self) -> Subset {
        Subset(((1u64 << self.len()) - 1) as u32)
    }

    /// Singleton `{element}`.
    pub fn singleton(&self, element: usize) -> Result<Subset> {
        if element >= self.len() {
            return Err(Error::SubsetOutOfRange {
                bits: 1 << element.min(31),
                n_elems: self.len(),
            });
        }
        Ok(Subset(1 << element))
    }

    /// Subset from element indices.
    pub fn subset_of(&self, elements: &[usize]) -> Result<Subset> {
        let mut bits = 0u32;
        for &e in elements {
            bits |= self.singleton(e)?.0;
        }
        Ok(Subset(bits))
    }

    /// Whether `s` fits this frame.
    pub fn contains(&self, s: Subset) -> bool {
        u64::from(s.0) < (1u64 << self.len())
    }

    pub(crate) fn check_subset(&self, s: Subset) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                bits: s.0,
                n_elems: self.len(),
            })
        }
    }

    /// Complement within this frame.
    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full_set().0 & !s.0)
    }

    /// Iterates over all `2^n` subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..(1u64 << self.len())).map(|b| Subset(b as u32))
    }

    /// Renders a subset with element labels, e.g. `{w1 w3}`.
    pub fn format_subset(&self, s: Subset) -> String {
        let names: Vec<&str> = s.elements().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(" "))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({})", self.inner.join(", "))
    }
}

/// A subset of a frame, encoded as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Cardinality of the set.
    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains_element(self, element: usize) -> bool {
        element < 32 && self.0 & (1 << element) != 0
    }

    /// Indices of the elements in the set, ascending.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32u32)
            .filter(move |i| bits & (1 << i) != 0)
            .map(|i| i as usize)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b})", self.0)
    }
}
