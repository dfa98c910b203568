//! Masses over the independence frames.
//!
//! Two small frames carry the estimator's output: `{I, ~I}` for plain
//! independence versus dependence, and its refinement `{I, P, ~P}`
//! where the dependence hypothesis splits into positive (`P`) and
//! negative (`~P`) dependence. `~I` maps to `{P, ~P}` in the refined
//! frame.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::{MassFunction, MASS_TOL};

/// Element order of the refined dependence frame.
pub const INDEPENDENT: usize = 0;
pub const POSITIVE: usize = 1;
pub const NEGATIVE: usize = 2;

/// The shared three-element frame `{I, P, ~P}`.
pub fn dependence_frame() -> Frame {
    static FRAME: OnceLock<Frame> = OnceLock::new();
    FRAME
        .get_or_init(|| Frame::new(["I", "P", "~P"]).expect("static frame is valid"))
        .clone()
}

fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::RateOutOfRange { name, value })
    }
}

fn check_components(components: &[f64]) -> Result<()> {
    let mut sum = 0.0;
    for &v in components {
        if v < 0.0 {
            return Err(Error::NegativeMass { mass: v });
        }
        sum += v;
    }
    if (sum - 1.0).abs() > MASS_TOL {
        return Err(Error::NonUnitSum { sum });
    }
    Ok(())
}

/// Sorted summation so the mean is independent of input order, with an
/// all-equal short-circuit so it is exactly idempotent.
fn component_mean(values: &mut [f64]) -> f64 {
    if values.iter().all(|&v| v == values[0]) {
        return values[0];
    }
    let n = values.len() as f64;
    values.sort_by(f64::total_cmp);
    values.iter().sum::<f64>() / n
}

/// A mass over `{I, ~I}`: how independent one source is of another.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndependenceMass {
    independent: f64,
    dependent: f64,
    ignorance: f64,
}

impl IndependenceMass {
    pub fn new(independent: f64, dependent: f64, ignorance: f64) -> Result<Self> {
        check_components(&[independent, dependent, ignorance])?;
        Ok(IndependenceMass {
            independent,
            dependent,
            ignorance,
        })
    }

    /// Mass induced by one matched cluster pair: similarity `beta`
    /// feeds the dependence hypothesis, attenuation `alpha` feeds
    /// ignorance. `m(I) = α(1-β)`, `m(~I) = αβ`, `m(I∪~I) = 1-α`.
    pub fn from_link(alpha: f64, beta: f64) -> Result<Self> {
        check_rate("alpha", alpha)?;
        check_rate("beta", beta)?;
        Ok(IndependenceMass {
            independent: alpha * (1.0 - beta),
            dependent: alpha * beta,
            ignorance: 1.0 - alpha,
        })
    }

    pub fn independent(&self) -> f64 {
        self.independent
    }

    pub fn dependent(&self) -> f64 {
        self.dependent
    }

    pub fn ignorance(&self) -> f64 {
        self.ignorance
    }

    /// Pignistic degrees `(I_d, ~I_d)`; they sum to one.
    pub fn degrees(&self) -> (f64, f64) {
        (
            self.independent + 0.5 * self.ignorance,
            self.dependent + 0.5 * self.ignorance,
        )
    }

    /// Componentwise mean over matched pairs.
    pub fn mean(masses: &[IndependenceMass]) -> Result<IndependenceMass> {
        if masses.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut i: Vec<f64> = masses.iter().map(|m| m.independent).collect();
        let mut d: Vec<f64> = masses.iter().map(|m| m.dependent).collect();
        let mut g: Vec<f64> = masses.iter().map(|m| m.ignorance).collect();
        Ok(IndependenceMass {
            independent: component_mean(&mut i),
            dependent: component_mean(&mut d),
            ignorance: component_mean(&mut g),
        })
    }

    /// Restates this mass on the refined frame `{I, P, ~P}`, mapping
    /// `~I` to `{P, ~P}`.
    pub fn refine(&self) -> MassFunction {
        let f = dependence_frame();
        let i = f.singleton(INDEPENDENT).unwrap();
        let p_or_n = f.subset_of(&[POSITIVE, NEGATIVE]).unwrap();
        MassFunction::new(
            f.clone(),
            &[
                (i, self.independent),
                (p_or_n, self.dependent),
                (f.full_set(), self.ignorance),
            ],
        )
        .expect("components validated at construction")
    }
}

/// A mass over the refined frame `{I, P, ~P}` restricted to the focal
/// sets the estimator produces: the three singletons, `I∪P`, `I∪~P`
/// and full ignorance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DependenceMass {
    independent: f64,
    positive: f64,
    negative: f64,
    ind_or_pos: f64,
    ind_or_neg: f64,
    ignorance: f64,
}

impl DependenceMass {
    pub fn new(
        independent: f64,
        positive: f64,
        negative: f64,
        ind_or_pos: f64,
        ind_or_neg: f64,
        ignorance: f64,
    ) -> Result<Self> {
        check_components(&[
            independent,
            positive,
            negative,
            ind_or_pos,
            ind_or_neg,
            ignorance,
        ])?;
        Ok(DependenceMass {
            independent,
            positive,
            negative,
            ind_or_pos,
            ind_or_neg,
            ignorance,
        })
    }

    /// Mass on the three singletons only (the remainder, if any, goes
    /// to full ignorance).
    pub fn from_singletons(independent: f64, positive: f64, negative: f64) -> Result<Self> {
        let sum = independent + positive + negative;
        if sum > 1.0 + MASS_TOL {
            return Err(Error::NonUnitSum { sum });
        }
        let rest = 1.0 - sum;
        let ignorance = if rest.abs() <= MASS_TOL { 0.0 } else { rest };
        DependenceMass::new(independent, positive, negative, 0.0, 0.0, ignorance)
    }

    /// Certain independence `{I: 1}` — the neutral adjustment.
    pub fn certain_independent() -> Self {
        DependenceMass {
            independent: 1.0,
            positive: 0.0,
            negative: 0.0,
            ind_or_pos: 0.0,
            ind_or_neg: 0.0,
            ignorance: 0.0,
        }
    }

    /// Closed form of the combined pair mass, parameterized by the
    /// attenuation `alpha`, the dependence rate `beta` and the negative
    /// rate `gamma` (the inter-cluster conflict plays the role of
    /// `gamma` for a matched pair):
    ///
    /// ```text
    /// m(I)    = α(1-β)        m(I∪P)  = (1-α)(1-γ)
    /// m(P)    = αβ(1-γ)       m(I∪~P) = (1-α)γ
    /// m(~P)   = αβγ
    /// ```
    pub fn from_rates(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        check_rate("alpha", alpha)?;
        check_rate("beta", beta)?;
        check_rate("gamma", gamma)?;
        Ok(DependenceMass {
            independent: alpha * (1.0 - beta),
            positive: alpha * beta * (1.0 - gamma),
            negative: alpha * beta * gamma,
            ind_or_pos: (1.0 - alpha) * (1.0 - gamma),
            ind_or_neg: (1.0 - alpha) * gamma,
            ignorance: 0.0,
        })
    }

    pub fn independent(&self) -> f64 {
        self.independent
    }

    pub fn positive(&self) -> f64 {
        self.positive
    }

    pub fn negative(&self) -> f64 {
        self.negative
    }

    pub fn ind_or_pos(&self) -> f64 {
        self.ind_or_pos
    }

    pub fn ind_or_neg(&self) -> f64 {
        self.ind_or_neg
    }

    pub fn ignorance(&self) -> f64 {
        self.ignorance
    }

    /// The same mass as a `MassFunction` over [`dependence_frame`].
    pub fn to_mass(&self) -> MassFunction {
        let f = dependence_frame();
        let i = f.singleton(INDEPENDENT).unwrap();
        let p = f.singleton(POSITIVE).unwrap();
        let n = f.singleton(NEGATIVE).unwrap();
        MassFunction::new(
            f.clone(),
            &[
                (i, self.independent),
                (p, self.positive),
                (n, self.negative),
                (i.union(p), self.ind_or_pos),
                (i.union(n), self.ind_or_neg),
                (f.full_set(), self.ignorance),
            ],
        )
        .expect("components validated at construction")
    }

    /// Pignistic degrees `(BetP(I), BetP(P), BetP(~P))`.
    pub fn betp(&self) -> (f64, f64, f64) {
        let third = self.ignorance / 3.0;
        (
            self.independent + 0.5 * (self.ind_or_pos + self.ind_or_neg) + third,
            self.positive + 0.5 * self.ind_or_pos + third,
            self.negative + 0.5 * self.ind_or_neg + third,
        )
    }

    /// Componentwise mean over matched pairs.
    pub fn mean(masses: &[DependenceMass]) -> Result<DependenceMass> {
        if masses.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut cols: [Vec<f64>; 6] = Default::default();
        for m in masses {
            cols[0].push(m.independent);
            cols[1].push(m.positive);
            cols[2].push(m.negative);
            cols[3].push(m.ind_or_pos);
            cols[4].push(m.ind_or_neg);
            cols[5].push(m.ignorance);
        }
        Ok(DependenceMass {
            independent: component_mean(&mut cols[0]),
            positive: component_mean(&mut cols[1]),
            negative: component_mean(&mut cols[2]),
            ind_or_pos: component_mean(&mut cols[3]),
            ind_or_neg: component_mean(&mut cols[4]),
            ignorance: component_mean(&mut cols[5]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_mass_from_the_correspondence_example() {
        // beta = 2/5 with full attenuation.
        let m = IndependenceMass::from_link(1.0, 0.4).unwrap();
        assert!((m.independent() - 0.6).abs() < 1e-12);
        assert!((m.dependent() - 0.4).abs() < 1e-12);
        assert_eq!(m.ignorance(), 0.0);
        let (i_d, d_d) = m.degrees();
        assert!((i_d - 0.6).abs() < 1e-12);
        assert!((i_d + d_d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_attenuation_gives_total_ignorance() {
        let m = IndependenceMass::from_link(0.0, 0.7).unwrap();
        assert_eq!(m.ignorance(), 1.0);
        let (i_d, d_d) = m.degrees();
        assert_eq!((i_d, d_d), (0.5, 0.5));
    }

    #[test]
    fn full_similarity_is_certain_dependence() {
        let m = IndependenceMass::from_link(1.0, 1.0).unwrap();
        assert_eq!(m.dependent(), 1.0);
        assert_eq!(m.degrees().0, 0.0);
    }

    #[test]
    fn mean_is_idempotent_and_commutative() {
        let a = IndependenceMass::from_link(1.0, 0.2).unwrap();
        let b = IndependenceMass::from_link(1.0, 0.4).unwrap();
        let same = IndependenceMass::mean(&[a, a, a]).unwrap();
        assert_eq!(same, a);
        let ab = IndependenceMass::mean(&[a, b]).unwrap();
        let ba = IndependenceMass::mean(&[b, a]).unwrap();
        assert_eq!(ab, ba);
        assert!((ab.independent() - 0.7).abs() < 1e-12);
        assert!((ab.dependent() - 0.3).abs() < 1e-12);
        assert!(matches!(IndependenceMass::mean(&[]), Err(Error::EmptyList)));
    }

    #[test]
    fn refine_moves_dependence_to_the_pair() {
        let m = IndependenceMass::new(0.3, 0.5, 0.2).unwrap();
        let r = m.refine();
        let f = dependence_frame();
        assert_eq!(r.mass(f.singleton(INDEPENDENT).unwrap()), 0.3);
        assert_eq!(r.mass(f.subset_of(&[POSITIVE, NEGATIVE]).unwrap()), 0.5);
        assert_eq!(r.mass(f.full_set()), 0.2);
    }

    #[test]
    fn rates_produce_the_closed_form() {
        let m = DependenceMass::from_rates(1.0, 0.8, 0.25).unwrap();
        assert!((m.independent() - 0.2).abs() < 1e-12);
        assert!((m.positive() - 0.6).abs() < 1e-12);
        assert!((m.negative() - 0.2).abs() < 1e-12);
        assert_eq!(m.ind_or_pos(), 0.0);
        assert_eq!(m.ind_or_neg(), 0.0);

        assert_eq!(
            DependenceMass::from_rates(1.0, 1.0, 0.0)
                .unwrap()
                .positive(),
            1.0
        );
        assert_eq!(
            DependenceMass::from_rates(1.0, 1.0, 1.0)
                .unwrap()
                .negative(),
            1.0
        );
        assert!(matches!(
            DependenceMass::from_rates(1.2, 0.0, 0.0),
            Err(Error::RateOutOfRange { .. })
        ));
    }

    #[test]
    fn betp_sums_to_one() {
        let m = DependenceMass::new(0.1, 0.2, 0.3, 0.15, 0.15, 0.1).unwrap();
        let (i, p, n) = m.betp();
        assert!((i + p + n - 1.0).abs() < 1e-12);
        assert!((i - (0.1 + 0.15 + 0.1 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn dependence_mean_matches_componentwise_average() {
        let a = DependenceMass::from_singletons(0.0, 1.0, 0.0).unwrap();
        let b = DependenceMass::from_singletons(0.0, 0.0, 1.0).unwrap();
        let m = DependenceMass::mean(&[a, b]).unwrap();
        assert_eq!(m.positive(), 0.5);
        assert_eq!(m.negative(), 0.5);
        assert_eq!(DependenceMass::mean(&[a, a]).unwrap(), a);
    }

    #[test]
    fn singleton_constructor_fills_ignorance() {
        let m = DependenceMass::from_singletons(0.2, 0.3, 0.1).unwrap();
        assert!((m.ignorance() - 0.4).abs() < 1e-12);
        assert!(matches!(
            DependenceMass::from_singletons(0.9, 0.9, 0.0),
            Err(Error::NonUnitSum { .. })
        ));
    }
}
