//! Belief-function (evidence theory) toolkit.
//!
//! The crate covers three layers:
//!
//! - **Operators** — frames, bitmask subsets and mass functions with
//!   the classical machinery: conjunctive / disjunctive / mean
//!   combination, conditioning and deconditioning, discounting, the
//!   pignistic transform and the Jousselme distance
//!   ([`frame`], [`mass`], [`ops`]).
//! - **Independence estimation** — a statistical estimate of how
//!   independent two sources are, from their assessments alone: each
//!   source's mass functions are clustered, the clusters are matched
//!   greedily, and the matched pairs' similarities and conflicts
//!   become masses over `{I, ~I}` and the refined `{I, P, ~P}`
//!   (independent, positively dependent, negatively dependent), with
//!   pignistic degrees per direction ([`cluster`], [`independence`],
//!   [`dependence`]).
//! - **Adjustment before fusion** — product-space machinery (vacuous
//!   extension, ballooning, marginalization) that folds an estimated
//!   dependence mass into a source's mass function, so dependent
//!   sources stop biasing a conjunctive combination; negative
//!   dependence surfaces as mass on the empty set ([`product`]).
//!
//! [`datagen`] draws seeded datasets for the three dependence
//! scenarios and [`io`] defines the portable JSON records used by the
//! command-line tools.
//!
//! Everything is a pure function over immutable values: results are
//! deterministic given inputs and seeds, and values can be shared
//! freely across threads.

pub mod cluster;
pub mod datagen;
pub mod dependence;
pub mod error;
pub mod frame;
pub mod independence;
pub mod io;
pub mod mass;
pub mod ops;
pub mod product;

pub use dependence::{dependence_frame, DependenceMass, IndependenceMass};
pub use error::{Error, Result};
pub use frame::{Frame, Subset};
pub use independence::{analyze, AlphaPolicy, AnalyzeConfig, DirectionReport, IndependenceReport};
pub use mass::{MassFunction, PignisticDistribution};
pub use product::{
    closed_form_adjust, independence_adjust, independence_adjust_trace, reliability_discount,
    AdjustTrace, ProductFrame,
};
