use std::io::Write;

use crate::run::ResultRow;
use crate::CliError;

pub const CSV_HEADER: [&str; 9] =
    ["case_id", "problem", "bc", "basis", "N", "g_effective", "mode_index", "omega_bar", "source"];

/// Fixed-point with nine significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.8}");
    }
    // the exponent after rounding to nine digits, so carries are accounted for
    let sci = format!("{x:.8e}");
    let mag: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if !(-9..=15).contains(&mag) {
        return sci;
    }
    let decimals = (8 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_csv<W: Write>(rows: &[ResultRow], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        out.write_record([
            r.case_id.clone(),
            r.problem.clone(),
            r.bc.clone(),
            r.basis.clone(),
            r.n.to_string(),
            sig9(r.g_effective),
            r.mode_index.to_string(),
            sig9(r.omega_bar),
            r.source.as_str().to_string(),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn io(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Left-aligned first column, right-aligned rest.
pub fn aligned(header: &[String], body: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for row in std::iter::once(header).chain(body.iter().map(|r| r.as_slice())) {
        for (k, cell) in row.iter().enumerate().take(cols) {
            width[k] = width[k].max(cell.chars().count());
        }
    }
    let line = |row: &[String]| {
        let mut s = String::new();
        for (k, cell) in row.iter().enumerate().take(cols) {
            if k == 0 {
                s.push_str(&format!("{cell:<w$}", w = width[0]));
            } else {
                s.push_str(&format!("  {cell:>w$}", w = width[k]));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * (cols - 1)));
    out.push('\n');
    for row in body {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn rows_table(rows: &[ResultRow]) -> String {
    let header: Vec<String> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.case_id.clone(),
                r.problem.clone(),
                r.bc.clone(),
                r.basis.clone(),
                r.n.to_string(),
                format!("{}", r.g_effective),
                r.mode_index.to_string(),
                format!("{:.6}", r.omega_bar),
                r.source.as_str().to_string(),
            ]
        })
        .collect();
    aligned(&header, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::Source;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(9.869604401), "9.86960440");
        assert_eq!(sig9(1099.535131), "1099.53513");
        assert_eq!(sig9(0.05), "0.0500000000");
        assert_eq!(sig9(123456789.4), "123456789");
        assert_eq!(sig9(9.9999999999), "10.0000000");
        assert_eq!(sig9(0.0), "0.00000000");
        assert_eq!(sig9(1e-6), "0.00000100000000");
        assert_eq!(sig9(2.5e-12), "2.50000000e-12");
    }

    #[test]
    fn csv_layout() {
        let row = ResultRow {
            case_id: "beam-ss-hermite-n13-g0".into(),
            problem: "beam".into(),
            bc: "ss".into(),
            basis: "hermite".into(),
            n: 13,
            g_effective: 0.0,
            mode_index: 1,
            omega_bar: std::f64::consts::PI.powi(2),
            source: Source::Qem,
        };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "case_id,problem,bc,basis,N,g_effective,mode_index,omega_bar,source");
        assert_eq!(lines.next().unwrap(), "beam-ss-hermite-n13-g0,beam,ss,hermite,13,0.00000000,1,9.86960440,qem");
    }

    #[test]
    fn aligned_columns() {
        let t = aligned(&["a".into(), "bb".into()], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n-------\nxyz   1\n");
    }
}
