//! Golden reproduction: re-runs the pinned reference tables and
//! figure sweeps and diffs every value, printing one PASS/FAIL line
//! per check. Any mismatch exits with code 1.

use belief::datagen::{self, GenConfig, Scenario};
use belief::{
    analyze, closed_form_adjust, independence_adjust, independence_adjust_trace, AnalyzeConfig,
    DependenceMass, MassFunction, Subset,
};

use crate::commands::{sweep_csv, write_output};
use crate::golden::{self, EXACT_TOL, PRINT_TOL};
use crate::render::{csv, sig6, strings};
use crate::{CliError, CliResult, ReproduceArgs, EXIT_BAD_FLAGS, EXIT_GOLDEN_MISMATCH};

/// One comparison against a pinned value.
struct Check {
    label: String,
    expected: f64,
    actual: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        (self.expected - self.actual).abs() <= self.tolerance
    }
}

fn report(checks: &[Check], out: Option<&std::path::Path>) -> CliResult<()> {
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status}  {}: got {}, expected {}",
            c.label,
            sig6(c.actual),
            sig6(c.expected)
        );
    }
    if let Some(path) = out {
        let rows: Vec<Vec<String>> = checks
            .iter()
            .map(|c| {
                vec![
                    c.label.clone(),
                    c.expected.to_string(),
                    c.actual.to_string(),
                    if c.passed() { "pass" } else { "fail" }.to_string(),
                ]
            })
            .collect();
        let text = csv(&strings(&["check", "expected", "actual", "status"]), &rows);
        write_output(Some(path), &text)?;
    }
    let failures = checks.iter().filter(|c| !c.passed()).count();
    if failures > 0 {
        return Err(CliError::new(
            EXIT_GOLDEN_MISMATCH,
            format!("{failures} of {} checks failed", checks.len()),
        ));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}

pub fn reproduce(args: &ReproduceArgs) -> CliResult<()> {
    let started = std::time::Instant::now();
    let result = match (args.table, args.figure) {
        (Some(1), None) => table1(args.out.as_deref()),
        (Some(2), None) => table2(args.out.as_deref()),
        (Some(3), None) => table3(args.out.as_deref()),
        (Some(4), None) => table4(args.out.as_deref()),
        (None, Some(1)) => figure1(args.out.as_deref()),
        (None, Some(2)) => figure2(args.out.as_deref()),
        _ => {
            return Err(CliError::new(
                EXIT_BAD_FLAGS,
                "expected --table 1..=4 or --figure 1..=2",
            ))
        }
    };
    println!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    result
}

fn check_focals(
    checks: &mut Vec<Check>,
    prefix: &str,
    mass: &MassFunction,
    expected: &[(Subset, f64)],
    tolerance: f64,
) {
    for &(s, v) in expected {
        checks.push(Check {
            label: format!("{prefix} m({})", mass.frame().format_subset(s)),
            expected: v,
            actual: mass.mass(s),
            tolerance,
        });
    }
}

/// Scenario regime table: degrees for the independent pair, dependence
/// masses for the positive and negative pairs, plus the seed band.
fn table1(out: Option<&std::path::Path>) -> CliResult<()> {
    let mut checks = Vec::new();
    let run = |scenario| -> CliResult<belief::IndependenceReport> {
        let (s1, s2) = datagen::generate(&GenConfig {
            frame_size: golden::SCENARIO_FRAME,
            n: golden::SCENARIO_N,
            seed: golden::SCENARIO_SEED,
            scenario,
            contradiction: None,
        })
        .map_err(CliError::param)?;
        let config = AnalyzeConfig {
            clusters: Some(golden::SCENARIO_FRAME),
            seed: golden::SCENARIO_SEED,
            ..Default::default()
        };
        analyze(&s1, &s2, &config).map_err(CliError::data)
    };

    let independent = run(Scenario::Independent)?;
    println!(
        "independent: I_d(S1,S2)={}, I_d(S2,S1)={}",
        sig6(independent.forward.independence_degree),
        sig6(independent.backward.independence_degree)
    );
    for (name, d) in [
        ("independent I_d(S1,S2) > 0.5", &independent.forward),
        ("independent I_d(S2,S1) > 0.5", &independent.backward),
    ] {
        checks.push(Check {
            label: name.to_string(),
            expected: 1.0,
            actual: f64::from(d.independence_degree > 0.5),
            tolerance: 0.0,
        });
    }

    for (scenario, expect_positive) in [(Scenario::Positive, true), (Scenario::Negative, false)] {
        let report = run(scenario)?;
        let tag = if expect_positive {
            "positive"
        } else {
            "negative"
        };
        for (direction, d) in [
            ("S1 vs S2", &report.forward),
            ("S2 vs S1", &report.backward),
        ] {
            println!(
                "{tag} {direction}: BetP(I)={}, BetP(P)={}, BetP(~P)={}",
                sig6(d.betp_independent),
                sig6(d.betp_positive),
                sig6(d.betp_negative)
            );
            let degrees = [d.betp_independent, d.betp_positive, d.betp_negative];
            let argmax = degrees
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
            let expected = if expect_positive { 1 } else { 2 };
            checks.push(Check {
                label: format!("{tag} {direction}: argmax pignistic degree"),
                expected: expected as f64,
                actual: argmax as f64,
                tolerance: 0.0,
            });
        }
    }

    // Mean independent-scenario degree over the seed band.
    let mut total = 0.0;
    let mut count = 0.0;
    for seed in golden::BAND_SEEDS {
        let (s1, s2) = datagen::generate(&GenConfig {
            frame_size: golden::SCENARIO_FRAME,
            n: golden::SCENARIO_N,
            seed,
            scenario: Scenario::Independent,
            contradiction: None,
        })
        .map_err(CliError::param)?;
        let config = AnalyzeConfig {
            clusters: Some(golden::SCENARIO_FRAME),
            seed,
            ..Default::default()
        };
        let report = analyze(&s1, &s2, &config).map_err(CliError::data)?;
        total += report.forward.independence_degree + report.backward.independence_degree;
        count += 2.0;
    }
    let mean = total / count;
    println!("independent band: mean I_d over seeds = {}", sig6(mean));
    let (low, high) = golden::BAND_RANGE;
    checks.push(Check {
        label: format!("mean independent I_d in [{low}, {high}]"),
        expected: 1.0,
        actual: f64::from(mean >= low && mean <= high),
        tolerance: 0.0,
    });

    report(&checks, out)
}

/// Product-space trace of the worked-example adjustment.
fn table2(out: Option<&std::path::Path>) -> CliResult<()> {
    let f = golden::frame3();
    let trace = independence_adjust_trace(&golden::source1(&f), &golden::dependence1())
        .map_err(CliError::data)?;
    let pf = &trace.product;
    let theta = belief::dependence_frame();
    let columns = [
        &trace.extended,
        &trace.decond_independent,
        &trace.decond_negative,
        &trace.combined,
    ];
    let names = ["extended", "decond[I]", "decond[~P]", "combined"];
    let mut checks = Vec::new();
    for cell in golden::product_trace_cells() {
        let left = f.subset_of(&cell.left).map_err(CliError::param)?;
        let th = theta.subset_of(&cell.theta).map_err(CliError::param)?;
        let mut subset = pf.rectangle(left, th);
        if cell.ballooned {
            subset = subset.union(pf.rectangle(f.full_set(), theta.complement(th)));
        }
        checks.push(Check {
            label: format!(
                "{} m({})",
                names[cell.column],
                pf.frame().format_subset(subset)
            ),
            expected: cell.value,
            actual: columns[cell.column].mass(subset),
            tolerance: EXACT_TOL,
        });
    }
    // Each stage keeps the unit sum.
    for (name, mass) in names.iter().zip(columns) {
        checks.push(Check {
            label: format!("{name} total mass"),
            expected: 1.0,
            actual: mass.total(),
            tolerance: EXACT_TOL,
        });
    }
    report(&checks, out)
}

/// Marginalization of the adjusted source and combination with the
/// second source (adjusted with the pinned rates).
fn table3(out: Option<&std::path::Path>) -> CliResult<()> {
    let f = golden::frame3();
    let adjusted1 = independence_adjust(&golden::source1(&f), &golden::dependence1())
        .map_err(CliError::data)?;
    let (alpha, beta, gamma) = golden::DEPENDENCE2_RATES;
    let dep2 = DependenceMass::from_rates(alpha, beta, gamma).map_err(CliError::param)?;
    let adjusted2 = independence_adjust(&golden::source2(&f), &dep2).map_err(CliError::data)?;
    let combined = adjusted1.conjunctive(&adjusted2).map_err(CliError::data)?;

    let mut checks = Vec::new();
    check_focals(
        &mut checks,
        "marginal",
        &adjusted1,
        &golden::adjusted_marginal(&f),
        EXACT_TOL,
    );
    check_focals(
        &mut checks,
        "combined",
        &combined,
        &golden::adjusted_combined(&f),
        EXACT_TOL,
    );
    report(&checks, out)
}

/// The nine-configuration combination grid.
fn table4(out: Option<&std::path::Path>) -> CliResult<()> {
    let f = golden::frame3();
    let w1 = f.singleton(0).map_err(CliError::param)?;
    let w2 = f.singleton(1).map_err(CliError::param)?;
    let w12 = f.subset_of(&[0, 1]).map_err(CliError::param)?;
    let full = f.full_set();

    let adjusted = |source: &MassFunction, case: &golden::SourceCase| -> CliResult<MassFunction> {
        let dep = DependenceMass::from_rates(case.alpha, case.beta, case.gamma)
            .map_err(CliError::param)?;
        independence_adjust(source, &dep).map_err(CliError::data)
    };

    let mut checks = Vec::new();
    let source1 = golden::source1(&f);
    let source2 = golden::source2(&f);

    let adjusted1: Vec<MassFunction> = golden::source1_cases()
        .iter()
        .map(|case| adjusted(&source1, case))
        .collect::<CliResult<_>>()?;
    for (i, (case, mass)) in golden::source1_cases().iter().zip(&adjusted1).enumerate() {
        let expected = [
            (Subset::EMPTY, case.marginal[0]),
            (w1, case.marginal[1]),
            (w12, case.marginal[2]),
            (full, case.marginal[3]),
        ];
        check_focals(
            &mut checks,
            &format!("m1 case {}", i + 1),
            mass,
            &expected,
            PRINT_TOL,
        );
    }

    let adjusted2: Vec<MassFunction> = golden::source2_cases()
        .iter()
        .map(|case| adjusted(&source2, case))
        .collect::<CliResult<_>>()?;
    for (j, (case, mass)) in golden::source2_cases().iter().zip(&adjusted2).enumerate() {
        let expected = [
            (Subset::EMPTY, case.marginal[0]),
            (w2, case.marginal[1]),
            (w12, case.marginal[2]),
            (full, case.marginal[3]),
        ];
        check_focals(
            &mut checks,
            &format!("m2 case {}", j + 1),
            mass,
            &expected,
            PRINT_TOL,
        );
    }

    let grid = golden::combined_grid();
    for (i, m1) in adjusted1.iter().enumerate() {
        for (j, m2) in adjusted2.iter().enumerate() {
            let combined = m1.conjunctive(m2).map_err(CliError::data)?;
            let cells = grid[i][j];
            let expected = [
                (Subset::EMPTY, cells[0]),
                (w1, cells[1]),
                (w2, cells[2]),
                (w12, cells[3]),
                (full, cells[4]),
            ];
            check_focals(
                &mut checks,
                &format!("combined case {}x{}", i + 1, j + 1),
                &combined,
                &expected,
                PRINT_TOL,
            );
        }
    }
    report(&checks, out)
}

/// A dogmatic conflict-free mass used by both figure sweeps.
fn dogmatic_mass() -> MassFunction {
    let f = golden::frame3();
    MassFunction::new(
        f.clone(),
        &[
            (f.singleton(0).unwrap(), 0.2),
            (f.subset_of(&[0, 1]).unwrap(), 0.8),
        ],
    )
    .unwrap()
}

/// Empty-set mass against the dependence rates: for a conflict-free
/// mass at full attenuation it is exactly beta*gamma, nondecreasing in
/// both rates.
fn figure1(out: Option<&std::path::Path>) -> CliResult<()> {
    let mass = dogmatic_mass();
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let mut checks = Vec::new();
    let mut previous_by_gamma = vec![-1.0f64; grid.len()];
    for &beta in &grid {
        let mut previous = -1.0f64;
        for (gi, &gamma) in grid.iter().enumerate() {
            let dep = DependenceMass::from_rates(1.0, beta, gamma).map_err(CliError::param)?;
            let adjusted = independence_adjust(&mass, &dep).map_err(CliError::data)?;
            let empty = adjusted.mass(Subset::EMPTY);
            checks.push(Check {
                label: format!("empty-set mass at beta={beta}, gamma={gamma}"),
                expected: beta * gamma,
                actual: empty,
                tolerance: 1e-12,
            });
            // Monotone along both axes.
            checks.push(Check {
                label: format!("nondecreasing in gamma at beta={beta}, gamma={gamma}"),
                expected: 1.0,
                actual: f64::from(empty >= previous),
                tolerance: 0.0,
            });
            checks.push(Check {
                label: format!("nondecreasing in beta at beta={beta}, gamma={gamma}"),
                expected: 1.0,
                actual: f64::from(empty >= previous_by_gamma[gi]),
                tolerance: 0.0,
            });
            previous = empty;
            previous_by_gamma[gi] = empty;
        }
    }
    // An independent reliable source is untouched at every gamma.
    for &gamma in &grid {
        let dep = DependenceMass::from_rates(1.0, 0.0, gamma).map_err(CliError::param)?;
        let adjusted = independence_adjust(&mass, &dep).map_err(CliError::data)?;
        checks.push(Check {
            label: format!("identity at beta=0, gamma={gamma}"),
            expected: 1.0,
            actual: f64::from(adjusted == mass),
            tolerance: 0.0,
        });
    }
    print_figure_summary(&checks);
    if let Some(path) = out {
        let text = sweep_csv(&mass, "0:1:0.05", Some(1.0), None, None)?;
        write_output(Some(path), &text)?;
    }
    report_quiet(&checks)
}

/// Ignorance mass with the negative rate pinned to 1: the sweep is
/// emitted and the pipeline is checked against its closed form (no
/// external reference values exist for this surface).
fn figure2(out: Option<&std::path::Path>) -> CliResult<()> {
    let mass = dogmatic_mass();
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let mut checks = Vec::new();
    for &alpha in &grid {
        for &beta in &grid {
            let dep = DependenceMass::from_rates(alpha, beta, 1.0).map_err(CliError::param)?;
            let adjusted = independence_adjust(&mass, &dep).map_err(CliError::data)?;
            let closed = closed_form_adjust(&mass, &dep).map_err(CliError::data)?;
            let worst = mass
                .frame()
                .subsets()
                .map(|s| (adjusted.mass(s) - closed.mass(s)).abs())
                .fold(0.0, f64::max);
            checks.push(Check {
                label: format!("pipeline matches closed form at alpha={alpha}, beta={beta}"),
                expected: 0.0,
                actual: worst,
                tolerance: 1e-12,
            });
            checks.push(Check {
                label: format!("unit sum at alpha={alpha}, beta={beta}"),
                expected: 1.0,
                actual: adjusted.total(),
                tolerance: 1e-9,
            });
        }
    }
    print_figure_summary(&checks);
    if let Some(path) = out {
        let text = sweep_csv(&mass, "0:1:0.05", None, None, Some(1.0))?;
        write_output(Some(path), &text)?;
    }
    report_quiet(&checks)
}

fn print_figure_summary(checks: &[Check]) {
    let failures = checks.iter().filter(|c| !c.passed()).count();
    println!("{} grid checks, {} failed", checks.len(), failures);
}

/// Like [`report`] but only prints failures (figure grids are large).
fn report_quiet(checks: &[Check]) -> CliResult<()> {
    let failures: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    for c in &failures {
        println!(
            "FAIL  {}: got {}, expected {}",
            c.label,
            sig6(c.actual),
            sig6(c.expected)
        );
    }
    if !failures.is_empty() {
        return Err(CliError::new(
            EXIT_GOLDEN_MISMATCH,
            format!("{} of {} checks failed", failures.len(), checks.len()),
        ));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}
