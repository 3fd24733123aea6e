//! Side-by-side reproduction of the reference frequency tables.

use gradqem::modal::distinct;
use gradqem::sweep::{self, Execution};
use gradqem::{oracle, plate, BeamBasis, BeamBc, BeamModel, PlateBasis, PlateBc, PlateModel};

use crate::config::Problem;
use crate::output::aligned;
use crate::reference::{self, Table};
use crate::run::{ResultRow, Source};
use crate::CliError;

/// Relative deviation allowed between a computed and a printed value.
pub const TOLERANCE: f64 = 5e-3;

/// How a printed g label maps to the g used in the computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reading {
    pub tag: &'static str,
    pub factor: f64,
    /// Whether deviations under this reading count as failures.
    pub checked: bool,
}

const BEAM_READINGS: [Reading; 2] = [
    Reading { tag: "g=label", factor: 1.0, checked: false },
    Reading { tag: "g=label/10", factor: 0.1, checked: true },
];
const PLATE_READINGS: [Reading; 1] = [Reading { tag: "g=label", factor: 1.0, checked: true }];

#[derive(Debug, Clone)]
pub struct Reproduction {
    pub text: String,
    pub rows: Vec<ResultRow>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
enum Method {
    Beam(BeamBasis),
    Plate(PlateBasis),
    Oracle,
}

fn method(problem: Problem, series: &str) -> Result<Method, CliError> {
    Ok(match (problem, series) {
        (Problem::Beam, "lagrange") => Method::Beam(BeamBasis::Lagrange),
        (Problem::Beam, "hermite") => Method::Beam(BeamBasis::Hermite),
        (Problem::Plate, "ll") => Method::Plate(PlateBasis::LL),
        (Problem::Plate, "lh") => Method::Plate(PlateBasis::LH),
        (_, "analytical") => Method::Oracle,
        _ => return Err(CliError::Numerical(format!("reference series '{series}' has no method"))),
    })
}

/// Relative gap below which two computed plate frequencies count as one
/// printed value. The LH element splits repeated frequencies by up to three
/// percent at large g, because its two directions use different bases; the
/// closest distinct pair in the tables is four percent apart.
fn collapse_tolerance(basis: PlateBasis) -> f64 {
    match basis {
        PlateBasis::LL => 1e-3,
        PlateBasis::LH | PlateBasis::LHNodal => 3.5e-2,
    }
}

/// Quadrature series first, in element order, then the exact values.
fn ordered_series(table: &Table) -> Vec<&str> {
    const ORDER: [&str; 5] = ["lagrange", "hermite", "ll", "lh", "analytical"];
    let mut names: Vec<&str> = table.series.keys().map(|s| s.as_str()).collect();
    names.sort_by_key(|s| ORDER.iter().position(|o| o == s).unwrap_or(ORDER.len()));
    names
}

struct Job<'a> {
    reading: usize,
    column: usize,
    series: &'a str,
    method: Method,
    g: f64,
}

fn compute(table: &Table, job: &Job, n: usize, modes: usize) -> Result<Vec<f64>, CliError> {
    let w = match (table.problem(), job.method) {
        (Problem::Beam, Method::Beam(basis)) => {
            let bc: BeamBc = table.bc.parse()?;
            gradqem::beam::beam_elastic_frequencies(&BeamModel::default().with_g(job.g), bc, basis, n, modes)?
        }
        (Problem::Beam, _) => {
            let bc: BeamBc = table.bc.parse()?;
            let r = oracle::first_beam_frequencies(&BeamModel::default().with_g(job.g), bc, modes)?;
            r.omega_bar
        }
        (Problem::Plate, Method::Plate(basis)) => {
            let bc: PlateBc = table.bc.parse()?;
            let w = plate::plate_elastic_frequencies(&PlateModel::default().with_g(job.g), bc, basis, n, 3 * modes)?;
            distinct(&w, collapse_tolerance(basis)).into_iter().take(modes).collect()
        }
        (Problem::Plate, _) => {
            let w = oracle::ssss_plate_spectrum(&PlateModel::default().with_g(job.g), 4 * modes);
            distinct(&w, 1e-9).into_iter().take(modes).collect()
        }
    };
    Ok(w)
}

/// Computes every printed cell of table `id` with the quadrature element at
/// `n` nodes (default 13 for beams, 11 for plates) and with the oracle.
/// Plate frequencies are compared as distinct values, since the printed
/// tables list each repeated frequency once.
pub fn reproduce_table(id: u32, n: Option<usize>, exec: Execution) -> Result<Reproduction, CliError> {
    let table = reference::table(id).ok_or_else(|| CliError::Usage(format!("no table {id}; tables are 1 to 8")))?;
    let problem = table.problem();
    let n = n.unwrap_or(match problem {
        Problem::Beam => 13,
        Problem::Plate => 11,
    });
    if n < 6 {
        return Err(CliError::Usage(format!("N must be at least 6, got {n}")));
    }
    let readings: &[Reading] = match problem {
        Problem::Beam => &BEAM_READINGS,
        Problem::Plate => &PLATE_READINGS,
    };
    let modes = table.mode_count();

    let mut jobs = Vec::new();
    for (r, reading) in readings.iter().enumerate() {
        for (c, label) in table.g_labels.iter().enumerate() {
            for series in ordered_series(table) {
                let m = method(problem, series)?;
                jobs.push(Job { reading: r, column: c, series, method: m, g: label * reading.factor });
            }
        }
    }
    let values = sweep::map(exec, &jobs, |job| compute(table, job, n, modes)).into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (r, reading) in readings.iter().enumerate() {
        text.push_str(&format!("Table {id}: {} ({}, N = {n})\n", table.title, reading.tag));
        for (c, label) in table.g_labels.iter().enumerate() {
            let g = label * reading.factor;
            text.push_str(&format!("\ng label {label} -> g = {g}\n"));
            let block: Vec<(&Job, &Vec<f64>)> =
                jobs.iter().zip(&values).filter(|(j, _)| j.reading == r && j.column == c).collect();
            let mut header = vec!["mode".to_string()];
            for (job, _) in &block {
                let computed = match job.method {
                    Method::Oracle => "oracle".to_string(),
                    _ => "qem".to_string(),
                };
                header.push(format!("{} ref", job.series));
                header.push(computed);
                header.push("dev%".into());
            }
            let mut body = Vec::new();
            for mode in 1..=modes {
                let mut line = vec![mode.to_string()];
                for (job, w) in &block {
                    let printed = table.value(job.series, mode, c);
                    let got = w.get(mode - 1).copied();
                    let flag = table.suspect(job.series, mode, c).is_some();
                    line.push(printed.map_or("-".into(), |p| format!("{p:.3}{}", if flag { "*" } else { "" })));
                    line.push(got.map_or("-".into(), |v| format!("{v:.3}")));
                    match (printed, got) {
                        (Some(p), Some(v)) => {
                            let dev = v / p - 1.0;
                            line.push(format!("{:+.3}", dev * 100.0));
                            if reading.checked && !flag && dev.abs() > TOLERANCE {
                                failures.push(format!(
                                    "table {id} g label {label} {} mode {mode}: {v:.4} vs {p} ({:+.3}%)",
                                    job.series,
                                    dev * 100.0
                                ));
                            }
                        }
                        (_, None) => {
                            line.push("-".into());
                            if reading.checked {
                                failures.push(format!("table {id} g label {label} {} mode {mode}: missing", job.series));
                            }
                        }
                        _ => line.push("-".into()),
                    }
                }
                body.push(line);
            }
            text.push_str(&aligned(&header, &body));

            for (job, w) in &block {
                let (source, basis, nn) = match job.method {
                    Method::Oracle => (Source::Oracle, "-".to_string(), 0),
                    _ => (Source::Qem, job.series.to_string(), n),
                };
                let case = format!("table{id}-{}-{}-g{g}", reading.tag.replace('=', ""), job.series);
                for (k, &v) in w.iter().enumerate() {
                    rows.push(row(&case, table, &basis, nn, g, k + 1, v, source));
                }
                if reading.checked {
                    for mode in 1..=modes {
                        if let Some(p) = table.value(job.series, mode, c) {
                            rows.push(row(&case, table, job.series, 0, g, mode, p, Source::Reference));
                        }
                    }
                }
            }
        }
        text.push('\n');
    }
    if !table.suspect.is_empty() {
        text.push_str("* doubtful printed value, not checked:\n");
        for s in &table.suspect {
            text.push_str(&format!("  {} mode {} column {}: {}\n", s.series, s.mode, s.column + 1, s.note));
        }
    }
    Ok(Reproduction { text, rows, failures })
}

#[allow(clippy::too_many_arguments)]
fn row(case: &str, table: &Table, basis: &str, n: usize, g: f64, mode: usize, w: f64, source: Source) -> ResultRow {
    ResultRow {
        case_id: case.to_string(),
        problem: table.problem.clone(),
        bc: table.bc.clone(),
        basis: basis.to_string(),
        n,
        g_effective: g,
        mode_index: mode,
        omega_bar: w,
        source,
    }
}
