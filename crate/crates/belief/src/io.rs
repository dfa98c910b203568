//! Text serialization of masses and datasets.
//!
//! Subsets travel as sorted element-index lists (never raw bitmasks)
//! next to the frame's ordered label list, so records stay portable:
//!
//! ```json
//! {"frame": ["w1", "w2"], "focals": [{"set": [0], "mass": 0.4},
//!                                    {"set": [0, 1], "mass": 0.6}]}
//! ```
//!
//! A dataset holds one source's object-indexed mass functions in a
//! single record.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::Frame;
use crate::mass::MassFunction;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FocalRecord {
    pub set: Vec<usize>,
    pub mass: f64,
}

/// One mass function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MassRecord {
    pub frame: Vec<String>,
    pub focals: Vec<FocalRecord>,
}

/// One source: `masses[i]` values object `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub frame: Vec<String>,
    pub masses: Vec<Vec<FocalRecord>>,
}

fn focal_records(m: &MassFunction) -> Vec<FocalRecord> {
    m.focals()
        .map(|(s, mass)| FocalRecord {
            set: s.elements().collect(),
            mass,
        })
        .collect()
}

fn mass_from_focals(frame: &Frame, focals: &[FocalRecord]) -> Result<MassFunction> {
    let assignments = focals
        .iter()
        .map(|f| Ok((frame.subset_of(&f.set)?, f.mass)))
        .collect::<Result<Vec<_>>>()?;
    MassFunction::new(frame.clone(), &assignments)
}

pub fn to_mass_record(m: &MassFunction) -> MassRecord {
    MassRecord {
        frame: m.frame().labels().to_vec(),
        focals: focal_records(m),
    }
}

pub fn from_mass_record(record: &MassRecord) -> Result<MassFunction> {
    let frame = Frame::new(record.frame.iter().cloned())?;
    mass_from_focals(&frame, &record.focals)
}

pub fn to_dataset_record(masses: &[MassFunction]) -> Result<DatasetRecord> {
    let first = masses.first().ok_or(crate::error::Error::EmptyList)?;
    for m in &masses[1..] {
        first.check_same_frame(m)?;
    }
    Ok(DatasetRecord {
        frame: first.frame().labels().to_vec(),
        masses: masses.iter().map(focal_records).collect(),
    })
}

pub fn from_dataset_record(record: &DatasetRecord) -> Result<Vec<MassFunction>> {
    let frame = Frame::new(record.frame.iter().cloned())?;
    record
        .masses
        .iter()
        .map(|focals| mass_from_focals(&frame, focals))
        .collect()
}

/// Pretty JSON with a trailing newline; byte-identical for equal data.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    Ok(out)
}

pub fn mass_to_json(m: &MassFunction) -> Result<String> {
    to_json(&to_mass_record(m))
}

pub fn mass_from_json(text: &str) -> Result<MassFunction> {
    from_mass_record(&serde_json::from_str(text)?)
}

pub fn dataset_to_json(masses: &[MassFunction]) -> Result<String> {
    to_json(&to_dataset_record(masses)?)
}

pub fn dataset_from_json(text: &str) -> Result<Vec<MassFunction>> {
    from_dataset_record(&serde_json::from_str(text)?)
}

/// Product-space intermediates of an adjustment, with pair elements
/// labeled `"ω|θ"` through the product frame's own labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdjustTraceRecord {
    pub extended: MassRecord,
    pub decond_independent: MassRecord,
    pub decond_negative: MassRecord,
    pub combined: MassRecord,
    pub marginal: MassRecord,
}

pub fn adjust_trace_to_json(trace: &crate::product::AdjustTrace) -> Result<String> {
    to_json(&AdjustTraceRecord {
        extended: to_mass_record(&trace.extended),
        decond_independent: to_mass_record(&trace.decond_independent),
        decond_negative: to_mass_record(&trace.decond_negative),
        combined: to_mass_record(&trace.combined),
        marginal: to_mass_record(&trace.marginal),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::random_masses;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mass_round_trips_bit_exactly() {
        let f = Frame::of_size(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in random_masses(&f, 50, &mut rng) {
            let text = mass_to_json(&m).unwrap();
            let back = mass_from_json(&text).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn dataset_round_trips_bit_exactly() {
        let f = Frame::of_size(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let masses = random_masses(&f, 20, &mut rng);
        let text = dataset_to_json(&masses).unwrap();
        assert_eq!(dataset_from_json(&text).unwrap(), masses);
        // Identical data serializes identically.
        assert_eq!(dataset_to_json(&masses).unwrap(), text);
    }

    #[test]
    fn sets_are_sorted_index_lists() {
        let f = Frame::of_size(3).unwrap();
        let m = MassFunction::new(
            f.clone(),
            &[(f.subset_of(&[2, 0]).unwrap(), 0.5), (f.full_set(), 0.5)],
        )
        .unwrap();
        let record = to_mass_record(&m);
        assert_eq!(record.focals[0].set, vec![0, 2]);
        assert_eq!(record.focals[1].set, vec![0, 1, 2]);
        let text = mass_to_json(&m).unwrap();
        assert!(text.contains("\"frame\""));
        assert!(!text.contains("bits"));
    }

    #[test]
    fn bad_records_are_rejected() {
        assert!(mass_from_json("{\"frame\": [\"a\"], \"focals\": []}").is_err());
        assert!(mass_from_json("not json").is_err());
        // Out-of-range index.
        let text = "{\"frame\": [\"a\"], \"focals\": [{\"set\": [3], \"mass\": 1.0}]}";
        assert!(mass_from_json(text).is_err());
    }
}
