//! Pinned reference values for the `reproduce` command and the
//! acceptance suite: the three-element worked example, its adjustment
//! trace, the nine-configuration combination grid and the scenario
//! regime checks.

use belief::{DependenceMass, Frame, MassFunction, Subset};

/// Comparison tolerance for values printed with six significant
/// digits: half a print ulp for cells at or above 0.1, plus a cushion
/// far below it for the decimal boundary cases.
pub const PRINT_TOL: f64 = 5e-7 + 1e-12;

/// Exact-arithmetic tolerance for the worked example.
pub const EXACT_TOL: f64 = 1e-9;

pub fn frame3() -> Frame {
    Frame::of_size(3).unwrap()
}

/// First source of the worked example.
pub fn source1(f: &Frame) -> MassFunction {
    MassFunction::new(
        f.clone(),
        &[
            (f.singleton(0).unwrap(), 0.2),
            (f.subset_of(&[0, 1]).unwrap(), 0.5),
            (f.full_set(), 0.3),
        ],
    )
    .unwrap()
}

/// Second source of the worked example.
pub fn source2(f: &Frame) -> MassFunction {
    MassFunction::new(
        f.clone(),
        &[
            (f.singleton(1).unwrap(), 0.1),
            (f.subset_of(&[0, 1]).unwrap(), 0.6),
            (f.full_set(), 0.3),
        ],
    )
    .unwrap()
}

/// Dependence estimate applied to the first source in the worked
/// example: strong positive dependence.
pub fn dependence1() -> DependenceMass {
    DependenceMass::from_singletons(0.26, 0.56, 0.18).unwrap()
}

/// Dependence rates applied to the second source before the combined
/// column of the marginalization table: `(alpha, beta, gamma)`.
pub const DEPENDENCE2_RATES: (f64, f64, f64) = (1.0, 0.9, 0.1);

/// The worked-example conjunctive baseline (no adjustment).
pub fn baseline_conjunctive(f: &Frame) -> Vec<(Subset, f64)> {
    vec![
        (Subset::EMPTY, 0.02),
        (f.singleton(0).unwrap(), 0.18),
        (f.singleton(1).unwrap(), 0.08),
        (f.subset_of(&[0, 1]).unwrap(), 0.63),
        (f.full_set(), 0.09),
    ]
}

/// Adjusted first source, marginalized back onto the frame.
pub fn adjusted_marginal(f: &Frame) -> Vec<(Subset, f64)> {
    vec![
        (Subset::EMPTY, 0.18),
        (f.singleton(0).unwrap(), 0.052),
        (f.subset_of(&[0, 1]).unwrap(), 0.13),
        (f.full_set(), 0.638),
    ]
}

/// Conjunctive combination of the two adjusted sources.
pub fn adjusted_combined(f: &Frame) -> Vec<(Subset, f64)> {
    vec![
        (Subset::EMPTY, 0.25432),
        (f.singleton(0).unwrap(), 0.0468),
        (f.singleton(1).unwrap(), 0.00768),
        (f.subset_of(&[0, 1]).unwrap(), 0.15528),
        (f.full_set(), 0.53592),
    ]
}

/// Expected cells of the product-space trace table, as
/// `(left set, theta set, column, value)` with columns `0..4` being
/// extended / deconditioned-as-independent / deconditioned-as-conflict
/// / combined. Non-rectangular focals are `(A x theta) u (Omega x rest)`.
pub struct ProductCell {
    pub left: Vec<usize>,
    pub theta: Vec<usize>,
    pub ballooned: bool,
    pub column: usize,
    pub value: f64,
}

pub fn product_trace_cells() -> Vec<ProductCell> {
    let rect = |left: &[usize], theta: &[usize], column: usize, value: f64| ProductCell {
        left: left.to_vec(),
        theta: theta.to_vec(),
        ballooned: false,
        column,
        value,
    };
    let balloon = |left: &[usize], theta: &[usize], column: usize, value: f64| ProductCell {
        left: left.to_vec(),
        theta: theta.to_vec(),
        ballooned: true,
        column,
        value,
    };
    vec![
        // Extended dependence mass: cylinders over the frame.
        rect(&[0, 1, 2], &[0], 0, 0.26),
        rect(&[0, 1, 2], &[1], 0, 0.56),
        rect(&[0, 1, 2], &[2], 0, 0.18),
        // Source deconditioned as m[I].
        balloon(&[0], &[0], 1, 0.2),
        balloon(&[0, 1], &[0], 1, 0.5),
        rect(&[0, 1, 2], &[0, 1, 2], 1, 0.3),
        // Conflict deconditioned as m[~P].
        rect(&[0, 1, 2], &[0, 1], 2, 1.0),
        // Conjunctive combination in the product space.
        rect(&[], &[], 3, 0.18),
        rect(&[0], &[0], 3, 0.052),
        rect(&[0, 1], &[0], 3, 0.13),
        rect(&[0, 1, 2], &[0], 3, 0.078),
        rect(&[0, 1, 2], &[1], 3, 0.56),
    ]
}

/// One source case of the combination grid: adjustment rates and the
/// expected marginal masses `(empty, w1 or w2, w1w2, full)`.
pub struct SourceCase {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub marginal: [f64; 4],
}

/// The three cases for the first source. The singleton column is w1.
pub fn source1_cases() -> [SourceCase; 3] {
    [
        SourceCase {
            alpha: 0.95,
            beta: 0.95,
            gamma: 0.05,
            marginal: [0.045125, 0.01, 0.025, 0.919875],
        },
        SourceCase {
            alpha: 0.95,
            beta: 0.05,
            gamma: 0.95,
            marginal: [0.045125, 0.19, 0.475, 0.289875],
        },
        SourceCase {
            alpha: 0.95,
            beta: 0.05,
            gamma: 0.05,
            marginal: [0.002375, 0.181, 0.4525, 0.364125],
        },
    ]
}

/// The three cases for the second source. The singleton column is w2.
pub fn source2_cases() -> [SourceCase; 3] {
    [
        SourceCase {
            alpha: 0.9,
            beta: 0.9,
            gamma: 0.1,
            marginal: [0.081, 0.01, 0.06, 0.849],
        },
        SourceCase {
            alpha: 0.9,
            beta: 0.1,
            gamma: 0.9,
            marginal: [0.081, 0.09, 0.54, 0.289],
        },
        SourceCase {
            alpha: 0.9,
            beta: 0.1,
            gamma: 0.1,
            marginal: [0.009, 0.082, 0.492, 0.417],
        },
    ]
}

/// Expected combined masses, `grid[i][j]` for source-1 case `i`
/// against source-2 case `j`, as `(empty, w1, w2, w1w2, full)`.
/// Every column sums to one.
pub fn combined_grid() -> [[[f64; 5]; 3]; 3] {
    [
        [
            [0.12257, 0.00909, 0.00944875, 0.0779175, 0.780974],
            [0.12337, 0.00829, 0.0850388, 0.517457, 0.265844],
            [0.0545389, 0.00909, 0.0774798, 0.475303, 0.383588],
        ],
        [
            [0.12437, 0.17271, 0.00764875, 0.449167, 0.246104],
            [0.13957, 0.15751, 0.0688388, 0.550307, 0.0837739],
            [0.0692989, 0.17271, 0.0627198, 0.574394, 0.120878],
        ],
        [
            [0.0849926, 0.164529, 0.00816625, 0.43317, 0.309142],
            [0.0994726, 0.150049, 0.0734962, 0.57175, 0.105232],
            [0.0261956, 0.164529, 0.0669633, 0.590472, 0.15184],
        ],
    ]
}

/// Seed for the pinned scenario runs of the regime table.
pub const SCENARIO_SEED: u64 = 42;
/// Seeds averaged for the independent-scenario band check.
pub const BAND_SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
/// The mean independence degree over the band seeds must land here.
pub const BAND_RANGE: (f64, f64) = (0.55, 0.9);
/// Scenario size: objects per source and frame cardinality.
pub const SCENARIO_N: usize = 100;
pub const SCENARIO_FRAME: usize = 5;
