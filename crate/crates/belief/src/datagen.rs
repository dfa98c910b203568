//! Seeded generation of mass-function datasets: independent pairs,
//! positively dependent pairs and negatively dependent pairs.
//!
//! All draws are uniform and all randomness flows from one seed
//! through per-source generator streams, so a dataset is a pure
//! function of its configuration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;

/// Dependence shape of a generated source pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Independent,
    Positive,
    Negative,
}

/// Configuration for [`generate`].
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub frame_size: usize,
    pub n: usize,
    pub seed: u64,
    pub scenario: Scenario,
    /// Element-index derangement used by the negative scenario;
    /// defaults to the cyclic shift.
    pub contradiction: Option<Vec<usize>>,
}

/// One random mass: the focal count is uniform on `[1, 2^|Ω|-1]`, the
/// focal sets are distinct non-empty subsets drawn uniformly without
/// replacement, and the masses are the segment lengths cut from
/// `[0, 1]` by `|F|-1` uniform points.
pub fn random_mass<R: Rng + ?Sized>(frame: &Frame, rng: &mut R) -> MassFunction {
    let max_focals = (1u32 << frame.len()) - 1;
    let count = rng.random_range(1..=max_focals as usize);
    let picked = rand::seq::index::sample(rng, max_focals as usize, count);
    let mut cuts: Vec<f64> = (0..count - 1).map(|_| rng.random::<f64>()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.push(1.0);
    let mut prev = 0.0;
    let assignments: Vec<(Subset, f64)> = picked
        .iter()
        .zip(cuts)
        .map(|(index, cut)| {
            let mass = cut - prev;
            prev = cut;
            // Index i stands for the non-empty subset with bits i+1.
            (Subset::from_bits(index as u32 + 1), mass)
        })
        .collect();
    MassFunction::new(frame.clone(), &assignments).expect("segments of [0,1] sum to one")
}

/// `n` random masses from one generator stream.
pub fn random_masses<R: Rng + ?Sized>(frame: &Frame, n: usize, rng: &mut R) -> Vec<MassFunction> {
    (0..n).map(|_| random_mass(frame, rng)).collect()
}

/// The singleton with maximal pignistic probability; ties break to
/// the lowest element index.
pub fn decision_class(m: &MassFunction) -> Result<Subset> {
    let p = m.pignistic()?;
    m.frame().singleton(p.argmax())
}

/// Reinforces each mass toward its own decision class: every focal
/// becomes its union with the decision class, coinciding focals
/// summed. The decision class of each output equals the input's.
pub fn make_positive(masses: &[MassFunction]) -> Result<Vec<MassFunction>> {
    masses
        .iter()
        .map(|m| Ok(union_focals_with(m, decision_class(m)?)))
        .collect()
}

/// Turns each mass against a target decision: every focal of
/// `masses[i]` becomes its union with `contradiction(decision_i)`
/// minus `decision_i`, where `decision_i` is the other source's
/// decision class for object `i`.
pub fn make_negative(
    masses: &[MassFunction],
    decisions_other: &[Subset],
    contradiction: &[usize],
) -> Result<Vec<MassFunction>> {
    if masses.len() != decisions_other.len() {
        return Err(Error::LengthMismatch {
            left: masses.len(),
            right: decisions_other.len(),
        });
    }
    let frame = match masses.first() {
        Some(m) => m.frame().clone(),
        None => return Ok(Vec::new()),
    };
    check_derangement(contradiction, frame.len())?;
    masses
        .iter()
        .zip(decisions_other)
        .map(|(m, &decision)| {
            let element = singleton_element(decision)?;
            let contrary = frame.singleton(contradiction[element])?;
            let mut acc = std::collections::BTreeMap::new();
            for (f, v) in m.focals() {
                let moved = f.union(contrary).difference(decision);
                *acc.entry(moved.bits()).or_insert(0.0) += v;
            }
            Ok(MassFunction::from_accumulated(m.frame().clone(), acc))
        })
        .collect()
}

/// The cyclic derangement `k -> k+1 (mod n)`.
pub fn cyclic_contradiction(n_elems: usize) -> Vec<usize> {
    (0..n_elems).map(|k| (k + 1) % n_elems).collect()
}

/// Generates the two aligned sources of a scenario.
pub fn generate(config: &GenConfig) -> Result<(Vec<MassFunction>, Vec<MassFunction>)> {
    if config.n == 0 {
        return Err(Error::EmptyList);
    }
    let frame = Frame::of_size(config.frame_size)?;
    let mut stream1 = source_rng(config.seed, 0);
    let mut stream2 = source_rng(config.seed, 1);
    match config.scenario {
        Scenario::Independent => Ok((
            random_masses(&frame, config.n, &mut stream1),
            random_masses(&frame, config.n, &mut stream2),
        )),
        Scenario::Positive => {
            // Dependent sources share a belief corpus: the second
            // source mixes the first source's mass with a private
            // random one, and both are reinforced toward one shared
            // decision class per object, so the paired decision
            // classes coincide.
            let base = random_masses(&frame, config.n, &mut stream1);
            let first = make_positive(&base)?;
            let decisions: Vec<Subset> = base.iter().map(decision_class).collect::<Result<_>>()?;
            let second = base
                .iter()
                .zip(&decisions)
                .map(|(shared, &d)| reinforced_mass_deciding(&frame, shared, d, &mut stream2))
                .collect::<Result<_>>()?;
            Ok((first, second))
        }
        Scenario::Negative => {
            // The first source keeps its decision-centered beliefs;
            // the second is forced toward the contradictory class and
            // away from the first source's decision for every object.
            let base = random_masses(&frame, config.n, &mut stream1);
            let first = make_positive(&base)?;
            let raw = random_masses(&frame, config.n, &mut stream2);
            let decisions: Vec<Subset> = first.iter().map(decision_class).collect::<Result<_>>()?;
            let contradiction = match &config.contradiction {
                Some(map) => map.clone(),
                None => cyclic_contradiction(config.frame_size),
            };
            let second = make_negative(&raw, &decisions, &contradiction)?;
            Ok((first, second))
        }
    }
}

fn source_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The mean of the shared mass with a private random draw, reinforced
/// toward `class`, constrained to decide `class`. Reinforcing toward
/// a foreign class can leave a pignistic tie that the lowest-index
/// rule resolves elsewhere, so such draws are rejected and redrawn.
fn reinforced_mass_deciding<R: Rng + ?Sized>(
    frame: &Frame,
    shared: &MassFunction,
    class: Subset,
    rng: &mut R,
) -> Result<MassFunction> {
    for _ in 0..1000 {
        let private = random_mass(frame, rng);
        let mixed = MassFunction::mean_combine(&[shared.clone(), private])?;
        let candidate = union_focals_with(&mixed, class);
        if decision_class(&candidate)? == class {
            return Ok(candidate);
        }
    }
    // Unreachable in practice; the shared mass alone always qualifies.
    Ok(union_focals_with(shared, class))
}

fn union_focals_with(m: &MassFunction, class: Subset) -> MassFunction {
    let mut acc = std::collections::BTreeMap::new();
    for (f, v) in m.focals() {
        *acc.entry(f.union(class).bits()).or_insert(0.0) += v;
    }
    MassFunction::from_accumulated(m.frame().clone(), acc)
}

fn singleton_element(s: Subset) -> Result<usize> {
    if s.card() != 1 {
        return Err(Error::NotASingleton { bits: s.bits() });
    }
    Ok(s.elements().next().expect("one element"))
}

fn check_derangement(map: &[usize], n_elems: usize) -> Result<()> {
    if map.len() != n_elems {
        return Err(Error::NotADerangement);
    }
    let mut seen = vec![false; n_elems];
    for (from, &to) in map.iter().enumerate() {
        if to >= n_elems || to == from || seen[to] {
            return Err(Error::NotADerangement);
        }
        seen[to] = true;
    }
    Ok(())
}
