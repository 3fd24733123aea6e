use gradqem::sweep::{self, Execution};
use gradqem::{beam, oracle, plate};

use crate::config::{Case, RunConfig};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Qem,
    Oracle,
    Reference,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Qem => "qem",
            Source::Oracle => "oracle",
            Source::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub case_id: String,
    pub problem: String,
    pub bc: String,
    pub basis: String,
    pub n: usize,
    pub g_effective: f64,
    pub mode_index: usize,
    pub omega_bar: f64,
    pub source: Source,
}

pub fn case_id(case: &Case, n: usize, source: Source) -> String {
    match source {
        Source::Qem => format!("{}-{}-{}-n{}-g{}", case.problem(), case.bc_name(), case.basis_name(), n, case.g()),
        _ => format!("{}-{}-{}-g{}", case.problem(), case.bc_name(), source.as_str(), case.g()),
    }
}

fn rows(case: &Case, n: usize, source: Source, values: &[f64]) -> Vec<ResultRow> {
    let id = case_id(case, n, source);
    values
        .iter()
        .enumerate()
        .map(|(k, &w)| ResultRow {
            case_id: id.clone(),
            problem: case.problem().to_string(),
            bc: case.bc_name(),
            basis: if source == Source::Qem { case.basis_name() } else { "-".into() },
            n: if source == Source::Qem { n } else { 0 },
            g_effective: case.g(),
            mode_index: k + 1,
            omega_bar: w,
            source,
        })
        .collect()
}

/// Elastic frequencies of the quadrature element (rigid modes dropped).
pub fn qem_frequencies(case: &Case, n: usize, modes: usize) -> Result<Vec<f64>, CliError> {
    let w = match case {
        Case::Beam { bc, basis, model } => beam::beam_elastic_frequencies(model, *bc, *basis, n, modes)?,
        Case::Plate { bc, basis, model } => plate::plate_elastic_frequencies(model, *bc, *basis, n, modes)?,
    };
    Ok(w)
}

/// Exact frequencies where an oracle exists: every beam condition and the
/// simply supported plate.
pub fn oracle_frequencies(case: &Case, modes: usize) -> Result<Option<Vec<f64>>, CliError> {
    match case {
        Case::Beam { bc, model, .. } => {
            let r = oracle::first_beam_frequencies(model, *bc, modes)?;
            if !r.complete {
                return Err(CliError::Numerical(format!("oracle found only {} of {modes} roots", r.omega_bar.len())));
            }
            Ok(Some(r.omega_bar))
        }
        Case::Plate { bc: gradqem::PlateBc::Ssss, model, .. } => Ok(Some(oracle::ssss_plate_spectrum(model, modes))),
        Case::Plate { .. } => Ok(None),
    }
}

/// Quadrature rows, then oracle rows when requested; each group ordered by
/// mode index.
pub fn run(config: &RunConfig) -> Result<Vec<ResultRow>, CliError> {
    let mut out = rows(&config.case, config.n, Source::Qem, &qem_frequencies(&config.case, config.n, config.modes)?);
    if config.with_oracle {
        match oracle_frequencies(&config.case, config.modes)? {
            Some(w) => out.extend(rows(&config.case, config.n, Source::Oracle, &w)),
            None => return Err(CliError::Usage(format!("no oracle for {} {}", config.case.problem(), config.case.bc_name()))),
        }
    }
    Ok(out)
}

/// Oracle rows only.
pub fn run_oracle(config: &RunConfig) -> Result<Vec<ResultRow>, CliError> {
    match oracle_frequencies(&config.case, config.modes)? {
        Some(w) => Ok(rows(&config.case, config.n, Source::Oracle, &w)),
        None => Err(CliError::Usage(format!("no oracle for {} {}", config.case.problem(), config.case.bc_name()))),
    }
}

/// One group of rows per N, in ascending N; with `with_oracle` the exact
/// values follow once at the end.
pub fn convergence(config: &RunConfig, ns: &[usize], exec: Execution) -> Result<Vec<ResultRow>, CliError> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] < 6 {
        return Err(CliError::Usage("N range must be ascending and start at 6 or more".into()));
    }
    let per_n = sweep::map(exec, ns, |&n| qem_frequencies(&config.case, n, config.modes));
    let mut out = Vec::new();
    for (&n, w) in ns.iter().zip(per_n) {
        out.extend(rows(&config.case, n, Source::Qem, &w?));
    }
    if config.with_oracle {
        if let Some(w) = oracle_frequencies(&config.case, config.modes)? {
            out.extend(rows(&config.case, 0, Source::Oracle, &w));
        }
    }
    Ok(out)
}
