//! Reference frequencies, loaded from the versioned data file.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::config::Problem;

const DATA: &str = include_str!("../data/reference_values.json");

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub description: String,
    pub tables: BTreeMap<String, Table>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table {
    pub title: String,
    pub problem: String,
    pub bc: String,
    pub g_labels: Vec<f64>,
    /// series name -> rows of `[mode][column]`
    pub series: BTreeMap<String, Vec<Vec<f64>>>,
    #[serde(default)]
    pub suspect: Vec<Suspect>,
}

/// A printed value known to be a typo or misprint; excluded from checks.
#[derive(Debug, Clone, Deserialize)]
pub struct Suspect {
    pub series: String,
    pub mode: usize,
    pub column: usize,
    pub note: String,
}

impl Table {
    pub fn problem(&self) -> Problem {
        self.problem.parse().expect("reference data names beam or plate")
    }

    pub fn value(&self, series: &str, mode: usize, column: usize) -> Option<f64> {
        self.series.get(series)?.get(mode - 1)?.get(column).copied()
    }

    pub fn suspect(&self, series: &str, mode: usize, column: usize) -> Option<&Suspect> {
        self.suspect.iter().find(|s| s.series == series && s.mode == mode && s.column == column)
    }

    pub fn mode_count(&self) -> usize {
        self.series.values().map(|r| r.len()).max().unwrap_or(0)
    }
}

pub fn reference_data() -> &'static ReferenceData {
    static DATA_CELL: OnceLock<ReferenceData> = OnceLock::new();
    DATA_CELL.get_or_init(|| serde_json::from_str(DATA).expect("bundled reference data is valid"))
}

pub fn table(id: u32) -> Option<&'static Table> {
    reference_data().tables.get(&id.to_string())
}
