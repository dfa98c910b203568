//! Product-space machinery over a binary product Ω×Θ: vacuous
//! extension, ballooning deconditioning, marginalization, and the two
//! pipelines built on them (reliability discounting and the
//! independence adjustment of a source's mass before fusion).
//!
//! Product subsets are ordinary bitmask subsets of the pair frame, so
//! non-rectangular sets such as `(A×I) ∪ (Ω×{P,~P})` need no special
//! representation.

use crate::dependence::{dependence_frame, DependenceMass, INDEPENDENT, NEGATIVE};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset, MAX_ELEMENTS};
use crate::mass::MassFunction;
use std::collections::BTreeMap;

/// A binary product frame Ω×Θ. Pair `(ω_i, θ_j)` has element index
/// `i * |Θ| + j` and label `"ω_i|θ_j"`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductFrame {
    left: Frame,
    right: Frame,
    product: Frame,
}

impl ProductFrame {
    pub fn new(left: Frame, right: Frame) -> Result<Self> {
        let total = left.len() * right.len();
        if total > MAX_ELEMENTS {
            return Err(Error::FrameTooLarge { got: total });
        }
        let labels = left
            .labels()
            .iter()
            .flat_map(|l| right.labels().iter().map(move |r| format!("{l}|{r}")));
        let product = Frame::new(labels)?;
        Ok(ProductFrame {
            left,
            right,
            product,
        })
    }

    pub fn left(&self) -> &Frame {
        &self.left
    }

    pub fn right(&self) -> &Frame {
        &self.right
    }

    /// The product as a plain frame over pair elements.
    pub fn frame(&self) -> &Frame {
        &self.product
    }

    /// The rectangle A×X as a product subset.
    pub fn rectangle(&self, a: Subset, x: Subset) -> Subset {
        let mut bits = 0u32;
        for i in a.elements() {
            for j in x.elements() {
                bits |= 1 << (i * self.right.len() + j);
            }
        }
        Subset::from_bits(bits)
    }

    /// Projection of a product subset onto Ω: the left elements that
    /// appear in at least one pair.
    pub fn project_left(&self, y: Subset) -> Subset {
        let row = (1u32 << self.right.len()) - 1;
        let mut bits = 0u32;
        for i in 0..self.left.len() {
            if y.bits() & (row << (i * self.right.len())) != 0 {
                bits |= 1 << i;
            }
        }
        Subset::from_bits(bits)
    }

    /// Vacuous extension of a mass over Θ: each focal X becomes Ω×X.
    pub fn vacuous_extension(&self, m_right: &MassFunction) -> Result<MassFunction> {
        if *m_right.frame() != self.right {
            return Err(Error::FrameMismatch);
        }
        let full = self.left.full_set();
        let assignments: Vec<(Subset, f64)> = m_right
            .focals()
            .map(|(x, v)| (self.rectangle(full, x), v))
            .collect();
        MassFunction::new(self.product.clone(), &assignments)
    }

    /// Ballooning deconditioning of a conditional mass `m[θ_true]`
    /// over Ω: each focal A becomes `(A×θ_true) ∪ (Ω×(Θ∖θ_true))`.
    pub fn decondition_to_product(
        &self,
        m_cond: &MassFunction,
        theta_true: Subset,
    ) -> Result<MassFunction> {
        if *m_cond.frame() != self.left {
            return Err(Error::FrameMismatch);
        }
        if theta_true.is_empty() {
            return Err(Error::EmptyConditioner);
        }
        self.right.check_subset(theta_true)?;
        let base = self.rectangle(self.left.full_set(), self.right.complement(theta_true));
        let assignments: Vec<(Subset, f64)> = m_cond
            .focals()
            .map(|(a, v)| (self.rectangle(a, theta_true).union(base), v))
            .collect();
        MassFunction::new(self.product.clone(), &assignments)
    }

    /// Marginalizes a product mass back onto Ω by left projection.
    pub fn marginalize_left(&self, m: &MassFunction) -> Result<MassFunction> {
        if *m.frame() != self.product {
            return Err(Error::FrameMismatch);
        }
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (y, v) in m.focals() {
            *acc.entry(self.project_left(y).bits()).or_insert(0.0) += v;
        }
        Ok(MassFunction::from_accumulated(self.left.clone(), acc))
    }
}

/// Discounting routed through the product space Ω×{F,~F}: build the
/// reliability mass, extend it, decondition `m` as `m[F]`, combine
/// conjunctively and marginalize. Equals [`MassFunction::discount`].
pub fn reliability_discount(m: &MassFunction, alpha: f64) -> Result<MassFunction> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    let reliability = Frame::new(["F", "~F"])?;
    let pf = ProductFrame::new(m.frame().clone(), reliability.clone())?;
    let reliable = reliability.singleton(0)?;
    let m_rel = MassFunction::new(
        reliability.clone(),
        &[(reliable, alpha), (reliability.full_set(), 1.0 - alpha)],
    )?;
    let extended = pf.vacuous_extension(&m_rel)?;
    let deconditioned = pf.decondition_to_product(m, reliable)?;
    pf.marginalize_left(&extended.conjunctive(&deconditioned)?)
}

/// All intermediates of the independence adjustment, for inspection.
pub struct AdjustTrace {
    pub product: ProductFrame,
    /// `m_dep` vacuously extended onto Ω×Θ.
    pub extended: MassFunction,
    /// The source mass deconditioned as `m[I]`.
    pub decond_independent: MassFunction,
    /// The empty-categorical mass deconditioned as `m[~P]`.
    pub decond_negative: MassFunction,
    /// Conjunctive combination of the three product masses.
    pub combined: MassFunction,
    /// The combination marginalized back onto Ω.
    pub marginal: MassFunction,
}

/// Folds an estimated dependence mass into a source's mass before
/// fusion. The source mass plays the conditional `m[I]`, certain
/// conflict plays `m[~P]` (the deconditioned `m[P]` is the exact
/// neutral element and is omitted), and the extended dependence mass
/// weights them in Ω×Θ.
pub fn independence_adjust(m: &MassFunction, dep: &DependenceMass) -> Result<MassFunction> {
    Ok(independence_adjust_trace(m, dep)?.marginal)
}

/// Same pipeline as [`independence_adjust`], returning every stage.
pub fn independence_adjust_trace(m: &MassFunction, dep: &DependenceMass) -> Result<AdjustTrace> {
    let theta = dependence_frame();
    let pf = ProductFrame::new(m.frame().clone(), theta.clone())?;
    let extended = pf.vacuous_extension(&dep.to_mass())?;
    let decond_independent = pf.decondition_to_product(m, theta.singleton(INDEPENDENT)?)?;
    let conflict = MassFunction::categorical(m.frame().clone(), Subset::EMPTY)?;
    let decond_negative = pf.decondition_to_product(&conflict, theta.singleton(NEGATIVE)?)?;
    let combined = extended
        .conjunctive(&decond_independent)?
        .conjunctive(&decond_negative)?;
    let marginal = pf.marginalize_left(&combined)?;
    Ok(AdjustTrace {
        product: pf,
        extended,
        decond_independent,
        decond_negative,
        combined,
        marginal,
    })
}

/// Closed form of [`independence_adjust`]: with `k = m(I) + m(I∪~P)`,
///
/// ```text
/// m'(∅) = m(~P) + k·m(∅)
/// m'(A) = k·m(A)                       for ∅ ≠ A ⊂ Ω
/// m'(Ω) = k·m(Ω) + m(P) + m(I∪P) + m(Θ)
/// ```
///
/// Kept as an independent dual route for the pipeline above.
pub fn closed_form_adjust(m: &MassFunction, dep: &DependenceMass) -> Result<MassFunction> {
    let k = dep.independent() + dep.ind_or_neg();
    let full = m.frame().full_set();
    let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
    for (f, v) in m.focals() {
        *acc.entry(f.bits()).or_insert(0.0) += k * v;
    }
    *acc.entry(Subset::EMPTY.bits()).or_insert(0.0) += dep.negative();
    *acc.entry(full.bits()).or_insert(0.0) += dep.positive() + dep.ind_or_pos() + dep.ignorance();
    Ok(MassFunction::from_accumulated(m.frame().clone(), acc))
}
