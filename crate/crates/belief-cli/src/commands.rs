//! Implementations of the data-facing subcommands.

use std::path::Path;

use belief::datagen::{self, GenConfig, Scenario};
use belief::io;
use belief::{
    analyze as run_analyze, independence_adjust, AlphaPolicy, AnalyzeConfig, DependenceMass,
    DirectionReport, MassFunction, Subset,
};

use crate::render::{csv, sig6, strings, table, write_atomic};
use crate::{
    AdjustArgs, AlphaPolicyArg, AnalyzeArgs, CliError, CliResult, CombineArgs, FormatArg,
    GenerateArgs, RuleArg, ScenarioArg, SweepArgs, EXIT_BAD_FLAGS,
};

pub(crate) fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(e, path))
}

pub(crate) fn write_output(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(path) => write_atomic(path, contents).map_err(|e| CliError::io(e, path)),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn generate(args: &GenerateArgs) -> CliResult<()> {
    let scenario = match args.scenario {
        ScenarioArg::Independent => Scenario::Independent,
        ScenarioArg::Positive => Scenario::Positive,
        ScenarioArg::Negative => Scenario::Negative,
    };
    let config = GenConfig {
        frame_size: args.frame_size,
        n: args.n,
        seed: args.seed,
        scenario,
        contradiction: None,
    };
    let (s1, s2) = datagen::generate(&config).map_err(CliError::param)?;
    let stem = args.out.to_string_lossy();
    for (suffix, masses) in [("s1", &s1), ("s2", &s2)] {
        let path = std::path::PathBuf::from(format!("{stem}-{suffix}.json"));
        let text = io::dataset_to_json(masses).map_err(CliError::data)?;
        write_atomic(&path, &text).map_err(|e| CliError::io(e, &path))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn read_dataset(path: &Path) -> CliResult<Vec<MassFunction>> {
    io::dataset_from_json(&read_file(path)?).map_err(CliError::data)
}

fn read_mass(path: &Path) -> CliResult<MassFunction> {
    io::mass_from_json(&read_file(path)?).map_err(CliError::data)
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let s1 = read_dataset(&args.source1)?;
    let s2 = read_dataset(&args.source2)?;
    let config = AnalyzeConfig {
        clusters: args.clusters,
        seed: args.seed,
        alpha_policy: match args.alpha_policy {
            AlphaPolicyArg::One => AlphaPolicy::One,
            AlphaPolicyArg::ClusterSize => AlphaPolicy::ClusterSize,
        },
    };
    let report = run_analyze(&s1, &s2, &config).map_err(CliError::data)?;
    let rendered = match args.format {
        FormatArg::Text => render_report_text(&report, args.seed),
        FormatArg::Csv => render_report_csv(&report),
    };
    write_output(args.out.as_deref(), &rendered)
}

fn direction_row(name: &str, d: &DirectionReport) -> Vec<String> {
    vec![
        name.to_string(),
        sig6(d.independence_degree),
        sig6(d.dependence_degree),
        sig6(d.independence.independent()),
        sig6(d.independence.dependent()),
        sig6(d.independence.ignorance()),
        sig6(d.dependence.independent()),
        sig6(d.dependence.positive()),
        sig6(d.dependence.negative()),
        sig6(d.dependence.ind_or_pos()),
        sig6(d.dependence.ind_or_neg()),
        sig6(d.dependence.ignorance()),
        sig6(d.betp_independent),
        sig6(d.betp_positive),
        sig6(d.betp_negative),
    ]
}

fn report_header() -> Vec<String> {
    strings(&[
        "direction",
        "I_d",
        "~I_d",
        "mI(I)",
        "mI(~I)",
        "mI(Iu~I)",
        "mPos(I)",
        "mPos(P)",
        "mPos(~P)",
        "mPos(IuP)",
        "mPos(Iu~P)",
        "mPos(IuPu~P)",
        "BetP(I)",
        "BetP(P)",
        "BetP(~P)",
    ])
}

fn render_report_text(report: &belief::IndependenceReport, seed: u64) -> String {
    let mut out = format!(
        "independence analysis: n={}, clusters={}, seed={}\n\n",
        report.n_objects, report.n_clusters, seed
    );
    out.push_str(&table(
        &report_header(),
        &[
            direction_row("S1 vs S2", &report.forward),
            direction_row("S2 vs S1", &report.backward),
        ],
    ));
    for (name, d) in [
        ("S1 vs S2", &report.forward),
        ("S2 vs S1", &report.backward),
    ] {
        out.push_str(&format!("\nmatched pairs ({name}):\n"));
        let rows: Vec<Vec<String>> = d
            .links
            .iter()
            .map(|l| {
                vec![
                    format!("{} -> {}", l.referent_cluster + 1, l.other_cluster + 1),
                    sig6(l.beta),
                    sig6(l.alpha),
                    sig6(l.conf),
                ]
            })
            .collect();
        out.push_str(&table(&strings(&["pair", "beta", "alpha", "conf"]), &rows));
    }
    out
}

fn render_report_csv(report: &belief::IndependenceReport) -> String {
    csv(
        &report_header(),
        &[
            direction_row("S1 vs S2", &report.forward),
            direction_row("S2 vs S1", &report.backward),
        ],
    )
}

/// Builds the dependence mass requested by the adjust/sweep flag
/// surface: either singleton masses or the rate parameterization.
pub(crate) fn dependence_from_flags(args: &AdjustArgs) -> CliResult<DependenceMass> {
    let singles = [args.independent, args.positive, args.negative];
    let rates = [args.alpha, args.beta, args.gamma];
    let any_single = singles.iter().any(Option::is_some);
    let any_rate = rates.iter().any(Option::is_some);
    match (any_single, any_rate) {
        (true, false) => DependenceMass::from_singletons(
            args.independent.unwrap_or(0.0),
            args.positive.unwrap_or(0.0),
            args.negative.unwrap_or(0.0),
        )
        .map_err(CliError::param),
        (false, true) => match (args.alpha, args.beta, args.gamma) {
            (Some(alpha), Some(beta), Some(gamma)) => {
                DependenceMass::from_rates(alpha, beta, gamma).map_err(CliError::param)
            }
            _ => Err(CliError::new(
                EXIT_BAD_FLAGS,
                "--alpha, --beta and --gamma must be given together",
            )),
        },
        _ => Err(CliError::new(
            EXIT_BAD_FLAGS,
            "provide either --I/--P/--N or --alpha/--beta/--gamma",
        )),
    }
}

pub fn adjust(args: &AdjustArgs) -> CliResult<()> {
    let dep = dependence_from_flags(args)?;
    let text = read_file(&args.mass)?;
    // A file is either one mass record or a whole dataset.
    if let Ok(mass) = io::mass_from_json(&text) {
        let trace = belief::independence_adjust_trace(&mass, &dep).map_err(CliError::data)?;
        if let Some(path) = &args.trace {
            let dump = io::adjust_trace_to_json(&trace).map_err(CliError::data)?;
            write_atomic(path, &dump).map_err(|e| CliError::io(e, path))?;
        }
        let out = io::mass_to_json(&trace.marginal).map_err(CliError::data)?;
        return write_output(args.out.as_deref(), &out);
    }
    if args.trace.is_some() {
        return Err(CliError::new(
            EXIT_BAD_FLAGS,
            "--trace requires a single-mass file",
        ));
    }
    let masses = io::dataset_from_json(&text).map_err(CliError::data)?;
    let adjusted = masses
        .iter()
        .map(|m| independence_adjust(m, &dep))
        .collect::<belief::Result<Vec<_>>>()
        .map_err(CliError::data)?;
    let out = io::dataset_to_json(&adjusted).map_err(CliError::data)?;
    write_output(args.out.as_deref(), &out)
}

pub fn combine(args: &CombineArgs) -> CliResult<()> {
    let masses = args
        .masses
        .iter()
        .map(|p| read_mass(p))
        .collect::<CliResult<Vec<_>>>()?;
    let combined = match args.rule {
        RuleArg::Conjunctive => fold_pairwise(&masses, MassFunction::conjunctive)?,
        RuleArg::Disjunctive => fold_pairwise(&masses, MassFunction::disjunctive)?,
        RuleArg::Mean => MassFunction::mean_combine(&masses).map_err(CliError::data)?,
    };
    let out = io::mass_to_json(&combined).map_err(CliError::data)?;
    write_output(args.out.as_deref(), &out)
}

fn fold_pairwise(
    masses: &[MassFunction],
    op: fn(&MassFunction, &MassFunction) -> belief::Result<MassFunction>,
) -> CliResult<MassFunction> {
    let mut iter = masses.iter();
    let mut acc = iter.next().expect("clap enforces two files").clone();
    for m in iter {
        acc = op(&acc, m).map_err(CliError::data)?;
    }
    Ok(acc)
}

/// Parses a `start:stop:step` grid into its inclusive sample points.
pub(crate) fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::new(EXIT_BAD_FLAGS, format!("malformed grid {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || !step.is_finite() || stop < start {
        return Err(bad());
    }
    let mut points = Vec::new();
    let mut k = 0u32;
    loop {
        let value = start + f64::from(k) * step;
        if value > stop + step * 1e-9 {
            break;
        }
        points.push(value.min(stop));
        k += 1;
    }
    Ok(points)
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let mass = read_mass(&args.mass)?;
    let text = sweep_csv(&mass, &args.grid, args.alpha, args.beta, args.gamma)?;
    write_output(args.out.as_deref(), &text)
}

/// One CSV row per grid point over the unpinned rates, carrying the
/// full adjusted marginal.
pub fn sweep_csv(
    mass: &MassFunction,
    grid: &str,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
) -> CliResult<String> {
    let points = parse_grid(grid)?;
    let axis = |pin: Option<f64>| pin.map(|v| vec![v]).unwrap_or_else(|| points.clone());
    let frame = mass.frame();
    let mut columns: Vec<Subset> = vec![Subset::EMPTY];
    columns.extend(mass.focals().map(|(s, _)| s).filter(|s| !s.is_empty()));
    if !columns.contains(&frame.full_set()) {
        columns.push(frame.full_set());
    }
    columns.sort();
    columns.dedup();
    let mut header = vec!["alpha".to_string(), "beta".to_string(), "gamma".to_string()];
    header.extend(
        columns
            .iter()
            .map(|&s| format!("m({})", frame.format_subset(s))),
    );
    let mut rows = Vec::new();
    for &a in &axis(alpha) {
        for &b in &axis(beta) {
            for &g in &axis(gamma) {
                let dep = DependenceMass::from_rates(a, b, g).map_err(CliError::param)?;
                let adjusted = independence_adjust(mass, &dep).map_err(CliError::data)?;
                let mut row = vec![a.to_string(), b.to_string(), g.to_string()];
                row.extend(columns.iter().map(|&s| adjusted.mass(s).to_string()));
                rows.push(row);
            }
        }
    }
    Ok(csv(&header, &rows))
}
