use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gradqem::{BeamBasis, BeamBc, BeamModel, PlateBasis, PlateBc, PlateModel};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Beam,
    Plate,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Beam => "beam",
            Problem::Plate => "plate",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "beam" => Ok(Problem::Beam),
            "plate" => Ok(Problem::Plate),
            _ => Err(format!("unknown problem '{s}' (beam, plate)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as clap::ValueEnum>::from_str(s, true)
    }
}

/// Boundary condition and basis, already checked against the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Case {
    Beam { bc: BeamBc, basis: BeamBasis, model: BeamModel },
    Plate { bc: PlateBc, basis: PlateBasis, model: PlateModel },
}

impl Case {
    pub fn problem(&self) -> Problem {
        match self {
            Case::Beam { .. } => Problem::Beam,
            Case::Plate { .. } => Problem::Plate,
        }
    }

    pub fn bc_name(&self) -> String {
        match self {
            Case::Beam { bc, .. } => bc.to_string(),
            Case::Plate { bc, .. } => bc.to_string(),
        }
    }

    pub fn basis_name(&self) -> String {
        match self {
            Case::Beam { basis, .. } => basis.to_string(),
            Case::Plate { basis, .. } => basis.to_string(),
        }
    }

    pub fn g(&self) -> f64 {
        match self {
            Case::Beam { model, .. } => model.g,
            Case::Plate { model, .. } => model.g,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: Case,
    pub n: usize,
    /// As given on the command line or in the file, before `g_scale`.
    pub g: f64,
    pub g_scale: f64,
    pub modes: usize,
    pub with_oracle: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn g_effective(&self) -> f64 {
        self.g * self.g_scale
    }
}

/// Optional settings from the command line or a config file. Command-line
/// values win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub problem: Option<String>,
    pub bc: Option<String>,
    pub basis: Option<String>,
    pub n: Option<usize>,
    pub g: Option<f64>,
    pub g_scale: Option<f64>,
    pub modes: Option<usize>,
    pub with_oracle: Option<bool>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub e: Option<f64>,
    pub nu: Option<f64>,
    pub rho: Option<f64>,
    pub h: Option<f64>,
    pub lx: Option<f64>,
    pub ly: Option<f64>,
    pub length: Option<f64>,
    pub area: Option<f64>,
    pub inertia: Option<f64>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f; } )*
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// `self` with every value present in `top` replaced.
    pub fn overlaid(mut self, top: Settings) -> Settings {
        overlay!(self, top, problem, bc, basis, n, g, g_scale, modes, with_oracle, format, out);
        overlay!(self, top, e, nu, rho, h, lx, ly, length, area, inertia);
        self
    }

    pub fn resolve(&self, problem: Problem) -> Result<RunConfig, CliError> {
        if let Some(p) = &self.problem {
            let p: Problem = p.parse().map_err(CliError::Usage)?;
            if p != problem {
                return Err(CliError::Usage(format!("config is for a {p}, command is {problem}")));
            }
        }
        let g = self.g.unwrap_or(0.0);
        let g_scale = self.g_scale.unwrap_or(1.0);
        if !(g.is_finite() && g >= 0.0 && g_scale.is_finite() && g_scale > 0.0) {
            return Err(CliError::Usage("g must be >= 0 and g-scale > 0".into()));
        }
        let g_eff = g * g_scale;
        let case = match problem {
            Problem::Beam => {
                let bc = parse_for::<BeamBc>(self.bc.as_deref().unwrap_or("ss"), problem)?;
                let basis = parse_for::<BeamBasis>(self.basis.as_deref().unwrap_or("hermite"), problem)?;
                let d = BeamModel::default();
                let model = BeamModel {
                    e: self.e.unwrap_or(d.e),
                    i: self.inertia.unwrap_or(d.i),
                    area: self.area.unwrap_or(d.area),
                    rho: self.rho.unwrap_or(d.rho),
                    length: self.length.unwrap_or(d.length),
                    g: g_eff,
                };
                reject_plate_only(self)?;
                model.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Case::Beam { bc, basis, model }
            }
            Problem::Plate => {
                let bc = parse_for::<PlateBc>(self.bc.as_deref().unwrap_or("ssss"), problem)?;
                let basis = parse_for::<PlateBasis>(self.basis.as_deref().unwrap_or("ll"), problem)?;
                let d = PlateModel::default();
                let model = PlateModel {
                    e: self.e.unwrap_or(d.e),
                    nu: self.nu.unwrap_or(d.nu),
                    h: self.h.unwrap_or(d.h),
                    rho: self.rho.unwrap_or(d.rho),
                    lx: self.lx.unwrap_or(d.lx),
                    ly: self.ly.unwrap_or(d.ly),
                    g: g_eff,
                };
                if self.length.is_some() || self.area.is_some() || self.inertia.is_some() {
                    return Err(CliError::Usage("length, area and inertia apply to beams only".into()));
                }
                model.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Case::Plate { bc, basis, model }
            }
        };
        let n = self.n.unwrap_or(match problem {
            Problem::Beam => 13,
            Problem::Plate => 11,
        });
        if n < 6 {
            return Err(CliError::Usage(format!("N must be at least 6, got {n}")));
        }
        let modes = self.modes.unwrap_or(6);
        if modes == 0 {
            return Err(CliError::Usage("modes must be at least 1".into()));
        }
        let format = match &self.format {
            Some(f) => f.parse().map_err(CliError::Usage)?,
            None => Format::Csv,
        };
        Ok(RunConfig {
            case,
            n,
            g,
            g_scale,
            modes,
            with_oracle: self.with_oracle.unwrap_or(false),
            format,
            out: self.out.clone(),
        })
    }
}

fn reject_plate_only(s: &Settings) -> Result<(), CliError> {
    if s.nu.is_some() || s.h.is_some() || s.lx.is_some() || s.ly.is_some() {
        return Err(CliError::Usage("nu, h, lx and ly apply to plates only".into()));
    }
    Ok(())
}

fn parse_for<T: FromStr>(s: &str, problem: Problem) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    s.parse::<T>().map_err(|e| CliError::Usage(format!("{problem}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Settings::default().resolve(Problem::Beam).unwrap();
        assert_eq!(c.n, 13);
        assert_eq!(c.modes, 6);
        let c = Settings::default().resolve(Problem::Plate).unwrap();
        assert_eq!(c.n, 11);
        match c.case {
            Case::Plate { model, .. } => assert_eq!(model, PlateModel::default()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn plate_bc_rejected_for_beam() {
        let s = Settings { bc: Some("cantilever".into()), ..Settings::default() };
        assert!(matches!(s.resolve(Problem::Plate), Err(CliError::Usage(_))));
        assert!(s.resolve(Problem::Beam).is_ok());
    }

    #[test]
    fn command_line_wins() {
        let file: Settings = serde_json::from_str(r#"{"n": 9, "g": 0.5, "e": 2e6}"#).unwrap();
        let cli = Settings { g: Some(0.05), ..Settings::default() };
        let c = file.overlaid(cli).resolve(Problem::Beam).unwrap();
        assert_eq!(c.n, 9);
        assert_eq!(c.g, 0.05);
        match c.case {
            Case::Beam { model, .. } => assert_eq!(model.e, 2e6),
            _ => unreachable!(),
        }
    }

    #[test]
    fn g_scale_applies() {
        let s = Settings { g: Some(0.5), g_scale: Some(0.1), ..Settings::default() };
        let c = s.resolve(Problem::Beam).unwrap();
        assert!((c.case.g() - 0.05).abs() < 1e-15);
        assert_eq!(c.g_effective(), c.case.g());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<Settings>(r#"{"gg": 1}"#).is_err());
    }
}
