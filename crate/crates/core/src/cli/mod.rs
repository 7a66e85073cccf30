//! The `ncgraded` front end: configuration, the run loop and exit codes.

pub mod checks;
pub mod pipeline;
pub mod report;
pub mod scan;

use std::path::PathBuf;

use thiserror::Error;

use crate::duality::invariant_report;
use crate::exactla::FieldSpec;
use crate::groebner::GroebnerError;
use crate::hilbert::{HilbertError, RationalFunction};
use crate::presentation::{builtin_names, corpus_entry, parse_with_field, PresentationError};
pub use checks::{Check, CheckContext, CheckRegistry};
pub use pipeline::Pipeline;
pub use report::Report;
pub use scan::{normal_element_scan, NormalScan, ScanError};

pub const DEFAULT_FIELD: FieldSpec = FieldSpec::Prime(32003);
pub const DEFAULT_CHECKS: [&str; 2] = ["hilbert", "betti"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("claim: {0}")]
    Claim(HilbertError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("unknown builtin `{name}` (available: {known})")]
    UnknownBuiltin { name: String, known: String },
    #[error("unknown check `{name}` (known: {known})")]
    UnknownCheck { name: String, known: String },
    #[error("{0}")]
    BadBounds(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Scan(#[from] ScanError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: InputSource,
    /// Overrides the field of the input; builtins default to `F_32003`.
    pub field: Option<FieldSpec>,
    pub degree_bound: u32,
    pub homological_bound: usize,
    pub checks: Vec<String>,
    pub claim: Option<String>,
    pub json: Option<PathBuf>,
    pub seed: u64,
    pub scan_degree: u32,
}

impl RunConfig {
    pub fn builtin(name: &str) -> Self {
        RunConfig {
            input: InputSource::Builtin(name.to_string()),
            field: None,
            degree_bound: 8,
            homological_bound: 5,
            checks: DEFAULT_CHECKS.iter().map(|s| s.to_string()).collect(),
            claim: None,
            json: None,
            seed: 0,
            scan_degree: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Mismatch = 1,
    InputError = 2,
}

pub struct RunOutcome {
    pub status: ExitStatus,
    pub text: String,
    pub report: Option<Report>,
}

impl RunOutcome {
    fn input_error(e: CliError) -> Self {
        RunOutcome { status: ExitStatus::InputError, text: format!("error: {e}\n"), report: None }
    }
}

/// Run the requested checks. Never panics on bad input: input problems
/// come back as exit status 2 with a message.
pub fn run(cfg: &RunConfig, registry: &CheckRegistry) -> RunOutcome {
    match run_inner(cfg, registry) {
        Ok(o) => o,
        Err(e) => RunOutcome::input_error(e),
    }
}

fn run_inner(cfg: &RunConfig, registry: &CheckRegistry) -> Result<RunOutcome, CliError> {
    if cfg.degree_bound < 2 {
        return Err(CliError::BadBounds(format!("degree bound must be at least 2, got {}", cfg.degree_bound)));
    }
    if cfg.homological_bound < 1 {
        return Err(CliError::BadBounds("homological bound must be at least 1".into()));
    }
    let mut requested = cfg.checks.clone();
    // a claim is always checked, even without `--check hilbert`
    if cfg.claim.is_some() && !requested.iter().any(|c| c == "hilbert") {
        requested.push("hilbert".into());
    }
    let selected = registry.select(&requested)?;
    let claim = cfg.claim.as_deref().map(RationalFunction::parse).transpose().map_err(CliError::Claim)?;

    let (presentation, entry) = match &cfg.input {
        InputSource::Builtin(name) => {
            let entry = corpus_entry(name).ok_or_else(|| CliError::UnknownBuiltin {
                name: name.clone(),
                known: builtin_names().join(", "),
            })?;
            (entry.build(cfg.field.unwrap_or(DEFAULT_FIELD))?, Some(entry))
        }
        InputSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            (parse_with_field(&text, cfg.field)?, None)
        }
    };
    let top = presentation.max_relation_degree();
    if top > cfg.degree_bound {
        return Err(CliError::BadBounds(format!(
            "degree bound {} is below the largest relation degree {top}",
            cfg.degree_bound
        )));
    }

    let mut pipeline = Pipeline::new(presentation, cfg.degree_bound, cfg.homological_bound, cfg.seed);
    if let Some(e) = entry {
        pipeline.expectations = Some(e.expectations);
        pipeline.commentary = e.commentary.to_vec();
    }
    let p = &pipeline.presentation;
    let mut report = Report::new(
        &p.label,
        &p.field.to_string(),
        report::Bounds { degree: cfg.degree_bound, homological: cfg.homological_bound },
    );
    let mut lines = vec![format!(
        "algebra {} over {} ({} generators, {} relations; degree bound {}, homological bound {})",
        p.label,
        p.field,
        p.generators.len(),
        p.relations.len(),
        cfg.degree_bound,
        cfg.homological_bound
    )];

    let spot = pipeline.confluence_spot_check(24);
    let rs = pipeline.rewrite_system();
    let counts = rs.rule_counts();
    lines.push(format!(
        "groebner: {} rules ({}), {}; random-order reduction agreed on {}/{} samples (seed {})",
        rs.rules().len(),
        if counts.is_empty() {
            "none".to_string()
        } else {
            counts.iter().map(|(d, n)| format!("degree {d}: {n}")).collect::<Vec<_>>().join(", ")
        },
        if rs.is_globally_complete() {
            "complete".to_string()
        } else {
            format!("resolved through degree {}", rs.complete_below())
        },
        spot.agreeing,
        spot.samples,
        spot.seed
    ));
    let spot_ok = spot.agreeing == spot.samples;
    report.groebner = Some(report::GroebnerSection {
        rules_by_degree: counts,
        globally_complete: rs.is_globally_complete(),
        complete_below: rs.complete_below(),
        confluence_spot_check: spot,
    });
    if !spot_ok {
        report.mismatches.push("random-order reduction disagreed with the normal form".into());
    }

    for check in &selected {
        let mut ctx = CheckContext {
            pipeline: &mut pipeline,
            report: &mut report,
            lines: &mut lines,
            claim: claim.as_ref(),
            claim_text: cfg.claim.as_deref(),
            scan_degree: cfg.scan_degree,
        };
        check.run(&mut ctx)?;
    }

    let as_verdict = pipeline.computed_as().map(|c| c.verdict.clone());
    let rigidity = pipeline.computed_rigidity().cloned();
    if as_verdict.is_some() || rigidity.is_some() {
        let b = pipeline.betti()?.clone();
        let inv = invariant_report(as_verdict.as_ref(), rigidity.as_ref(), &b, &pipeline.commentary);
        for s in &inv.statements {
            lines.push(format!("invariants: {s}"));
        }
        for c in &inv.commentary {
            lines.push(format!("commentary: {c}"));
        }
        for h in &inv.unchecked_hypotheses {
            lines.push(format!("unchecked hypothesis: {h}"));
        }
        report.unchecked_hypotheses = inv.unchecked_hypotheses.clone();
        report.invariants = Some((&inv).into());
    }

    if let Some(path) = &cfg.json {
        let json = report.to_json();
        if path.as_os_str() == "-" {
            lines.push(json.trim_end().to_string());
        } else {
            std::fs::write(path, json).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
    }
    let status = if report.mismatches.is_empty() { ExitStatus::Ok } else { ExitStatus::Mismatch };
    lines.push(match status {
        ExitStatus::Ok => "status: ok".to_string(),
        _ => format!("status: {} mismatch(es)", report.mismatches.len()),
    });
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(RunOutcome { status, text, report: Some(report) })
}
