//! Implementations of the CLI verbs. Each returns its report text.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use fedpir_core::analysis::{rate_table, Figure, RateConfig};
use fedpir_core::audit::{
    default_suite, negative_controls, AuditCase, CaseResult, Check, CorrectnessVariant, DataVariant,
    FederatorVariant, MicroConfig, ObjectiveVariant,
};
use fedpir_core::protocol::{run_end_to_end, validate_assignment, validate_labels};
use fedpir_core::randomness::SeededCoins;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::formats;

pub struct SimulateOptions<'a> {
    pub config: &'a Path,
    pub out: &'a Path,
    pub symmetric: bool,
    pub seed: Option<u64>,
}

/// Runs the protocol once and writes `transcript.csv` and `result.csv`.
pub fn simulate(opts: &SimulateOptions<'_>) -> Result<String, CliError> {
    let mut run = RunConfig::load(opts.config)?;
    run.symmetric |= opts.symmetric;
    if let Some(seed) = opts.seed {
        run.seed = seed;
    }
    let cfg = run.protocol()?;
    let assignment = run.task_assignment()?;
    validate_assignment(&cfg, &assignment)?;
    let labels = run.label_set(&assignment)?;
    validate_labels(&cfg, &assignment, &labels)?;
    if run.j >= cfg.objectives() {
        return Err(CliError::Invalid(format!(
            "j = {} exceeds T = {}",
            run.j + 1,
            cfg.objectives()
        )));
    }
    // label coins and protocol coins come from distinct seeds
    let mut coins = SeededCoins::new(run.seed.wrapping_add(1));
    let (sums, ledger) = run_end_to_end(&cfg, &assignment, &labels, run.j, run.symmetric, &mut coins)?;
    let expected = labels
        .direct_sum(&assignment, run.j)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    if sums != expected {
        return Err(CliError::Runtime("reconstructed sums differ from the direct sum".into()));
    }

    std::fs::create_dir_all(opts.out).map_err(|e| CliError::io(opts.out, e))?;
    formats::write_file(&opts.out.join("transcript.csv"), &formats::transcript_csv(&ledger)?)?;
    formats::write_file(&opts.out.join("result.csv"), &formats::result_csv(&sums)?)?;

    let mut report = String::new();
    let mode = if run.symmetric { "symmetric" } else { "plain" };
    let _ = writeln!(
        report,
        "q = {}, k_C = {}, P = {}, objective j = {}, mode = {mode}",
        cfg.modulus(),
        cfg.k_c(),
        cfg.partition_count(),
        run.j + 1
    );
    let _ = writeln!(report, "sharing symbols: {}", ledger.sharing_symbols);
    let _ = writeln!(report, "query symbols:   {}", ledger.query_symbols);
    let _ = writeln!(report, "answer symbols:  {}", ledger.answer_symbols);
    let _ = writeln!(report, "wrote {}", opts.out.join("transcript.csv").display());
    let _ = writeln!(report, "wrote {}", opts.out.join("result.csv").display());
    Ok(report)
}

/// Closed-form rates and costs for the configured `(n, T, rho, z_s, z_q)`.
pub fn rates(config: &Path, out: Option<&Path>) -> Result<String, CliError> {
    let run = RunConfig::load(config)?;
    let p = &run.params;
    let table = rate_table(&[RateConfig {
        n: p.clients,
        objectives: p.objectives,
        rho: p.replication,
        z_s: p.z_s,
        z_q: p.z_q,
    }]);
    let csv = formats::figure_csv(&table)?;
    match out {
        Some(path) => {
            formats::write_file(path, &csv)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(csv),
    }
}

/// Parses `a..b` (inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Invalid(format!("bad range '{text}', expected a..b"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
}

/// Writes `figN.csv` for the selected figures.
pub fn sweep(figure: Option<u32>, out: &Path, rhos: Option<RangeInclusive<usize>>) -> Result<String, CliError> {
    let figures: Vec<Figure> = match figure {
        Some(n) => vec![Figure::from_number(n)
            .ok_or_else(|| CliError::Invalid(format!("unknown figure {n}, expected 3 to 7")))?],
        None => (3..=7).filter_map(Figure::from_number).collect(),
    };
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let mut report = String::new();
    for fig in figures {
        let entries = fig.entries_with(rhos.clone().or_else(|| fig.default_rhos()));
        let path = out.join(format!("fig{}.csv", fig.number()));
        formats::write_file(&path, &formats::figure_csv(&entries)?)?;
        let infeasible = entries.iter().filter(|e| e.report().is_none()).count();
        let _ = writeln!(
            report,
            "wrote {} ({} rows, {infeasible} infeasible)",
            path.display(),
            entries.len()
        );
    }
    Ok(report)
}

fn config_cases(run: &RunConfig) -> Result<Vec<AuditCase>, CliError> {
    let cfg = run.protocol()?;
    let assignment = run.task_assignment()?;
    let mc = MicroConfig::new(cfg, assignment)?;
    let p = &run.params;
    let target = 0;
    let data_colluders: Vec<usize> = (1..=p.z_s.min(p.clients - 1)).collect();
    let query_colluders: Vec<usize> = (0..p.z_q.min(p.clients)).collect();
    let case = |check| AuditCase {
        config: mc.clone(),
        check,
    };
    Ok(vec![
        case(Check::Data {
            colluders: data_colluders,
            target,
            variant: DataVariant::Honest,
        }),
        case(Check::Objective {
            colluders: query_colluders,
            variant: ObjectiveVariant::Honest,
        }),
        case(Check::Federator(FederatorVariant::Symmetric)),
        case(Check::Correctness(CorrectnessVariant::Honest)),
    ])
}

fn describe(check: &Check) -> String {
    let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    match check {
        Check::Data {
            colluders,
            target,
            variant,
        } => format!("colluders={{{}}} target={} variant={variant:?}", one_based(colluders), target + 1),
        Check::Objective { colluders, variant } => {
            format!("colluders={{{}}} variant={variant:?}", one_based(colluders))
        }
        Check::Federator(v) => format!("variant={v:?}"),
        Check::Correctness(v) => format!("variant={v:?}"),
    }
}

/// Writes one report line per case as it finishes, then a summary.
/// Returns whether every case passed. All guards are checked before the
/// first case runs.
pub fn audit(config: Option<&Path>, with_controls: bool, out: &mut dyn std::io::Write) -> Result<bool, CliError> {
    let mut cases = match config {
        Some(path) => config_cases(&RunConfig::load(path)?)?,
        None => default_suite()?,
    };
    if with_controls {
        cases.extend(negative_controls()?);
    }
    for case in &cases {
        case.check_guard()?;
    }
    let io = |e| CliError::Runtime(format!("cannot write report: {e}"));
    let mut failures = 0;
    for case in &cases {
        let result = case.run()?;
        let passed = case.passes(&result);
        failures += usize::from(!passed);
        writeln!(out, "{}", report_line(case, &result, passed)).map_err(io)?;
    }
    writeln!(out, "{} cases, {} failed", cases.len(), failures).map_err(io)?;
    Ok(failures == 0)
}

pub fn report_line(case: &AuditCase, result: &CaseResult, passed: bool) -> String {
    let verdict = match (passed, case.check.is_control()) {
        (true, true) => "PASS-of-control",
        (true, false) => "PASS",
        (false, true) => "FAIL-of-control",
        (false, false) => "FAIL",
    };
    let detail = match result {
        CaseResult::Leakage(o) if o.leakage.exact_zero => format!(
            "states={} evaluations={} MI=0 bits (exact)",
            o.state_space, o.evaluations
        ),
        CaseResult::Leakage(o) => format!(
            "states={} evaluations={} MI={:.6} bits",
            o.state_space, o.evaluations, o.leakage.bits
        ),
        CaseResult::Correct(ok) => format!("decodes={}", if *ok { "always" } else { "not always" }),
    };
    format!(
        "{verdict:<16} {:<18} {} {} {detail}",
        case.check.definition().to_string(),
        case.config,
        describe(&case.check)
    )
}

/// Derived parameters of a config file.
pub fn validate(config: &Path) -> Result<String, CliError> {
    let run = RunConfig::load(config)?;
    let cfg = run.protocol()?;
    let assignment = run.task_assignment()?;
    validate_assignment(&cfg, &assignment)?;
    if run.labels.is_some() {
        let labels = run.label_set(&assignment)?;
        validate_labels(&cfg, &assignment, &labels)?;
    }
    let mut report = String::new();
    let _ = writeln!(report, "k_C = {}", cfg.k_c());
    let _ = writeln!(report, "k_C - z_s = {}", cfg.width());
    let _ = writeln!(report, "q = {}", cfg.modulus());
    let _ = writeln!(report, "alpha = {}", cfg.field().generator().value());
    let _ = writeln!(report, "P = {}", cfg.partition_count());
    let _ = writeln!(report, "mask terms = {}", cfg.mask_terms());
    let _ = writeln!(report, "row weights = {:?}", assignment.row_weights());
    Ok(report)
}
