//! Lagrange and Hermite weak-form quadrature elements for the gradient
//! Euler–Bernoulli beam.
//!
//! Dof layout over `N+4` entries: nodal deflections `0..N`, then
//! `w'_1, w'_N, w''_1, w''_N` in ξ-coordinates.

use std::fmt;
use std::str::FromStr;

use crate::basis::{self, End, HermiteBasisSet, ModifiedDerivativeSet};
use crate::error::{Error, Result};
use crate::gll::{self, NodeGrid};
use crate::linalg::RealMatrix;
use crate::modal::{self, AssembledSystem, ModalResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamModel {
    pub e: f64,
    pub i: f64,
    pub area: f64,
    pub rho: f64,
    pub length: f64,
    pub g: f64,
}

impl Default for BeamModel {
    fn default() -> Self {
        BeamModel { e: 3e6, i: 1.0 / 12.0, area: 1.0, rho: 1.0, length: 1.0, g: 0.0 }
    }
}

impl BeamModel {
    pub fn with_g(self, g: f64) -> Self {
        BeamModel { g, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.e, self.i, self.area, self.rho, self.length];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("beam properties must be positive and finite".into()));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::InvalidInput(format!("gradient length must be >= 0, got {}", self.g)));
        }
        Ok(())
    }

    /// `L²·√(ρA/EI)`, the factor turning `ω` into `ω̄`.
    pub fn frequency_scale(&self) -> f64 {
        self.length * self.length * (self.rho * self.area / (self.e * self.i)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamBc {
    SimplySupported,
    Clamped,
    FreeFree,
    Cantilever,
    ProppedCantilever,
}

impl BeamBc {
    pub const ALL: [BeamBc; 5] = [
        BeamBc::SimplySupported,
        BeamBc::Clamped,
        BeamBc::FreeFree,
        BeamBc::Cantilever,
        BeamBc::ProppedCantilever,
    ];

    /// Rigid-body modes the support admits.
    pub fn rigid_modes(self) -> usize {
        if self == BeamBc::FreeFree {
            2
        } else {
            0
        }
    }

    fn essential(self) -> &'static [BeamDof] {
        use BeamDof::*;
        match self {
            BeamBc::SimplySupported => &[W1, WN, C1, CN],
            BeamBc::Clamped => &[W1, WN, S1, SN, C1, CN],
            BeamBc::FreeFree => &[],
            BeamBc::Cantilever => &[W1, S1, C1],
            BeamBc::ProppedCantilever => &[W1, S1, C1, WN, CN],
        }
    }
}

impl fmt::Display for BeamBc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BeamBc::SimplySupported => "ss",
            BeamBc::Clamped => "clamped",
            BeamBc::FreeFree => "free",
            BeamBc::Cantilever => "cantilever",
            BeamBc::ProppedCantilever => "propped",
        })
    }
}

impl FromStr for BeamBc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ss" | "simply-supported" | "simplysupported" => Ok(BeamBc::SimplySupported),
            "cc" | "clamped" => Ok(BeamBc::Clamped),
            "ff" | "free" | "free-free" | "freefree" => Ok(BeamBc::FreeFree),
            "cf" | "cantilever" => Ok(BeamBc::Cantilever),
            "cs" | "propped" | "propped-cantilever" => Ok(BeamBc::ProppedCantilever),
            _ => Err(Error::InvalidInput(format!("unknown beam boundary condition '{s}'"))),
        }
    }
}

/// Beam interpolation. `Hermite` integrates the stiffness with `N+3` GLL
/// points; `HermiteNodal` uses the element nodes themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamBasis {
    Lagrange,
    Hermite,
    HermiteNodal,
}

impl fmt::Display for BeamBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BeamBasis::Lagrange => "lagrange",
            BeamBasis::Hermite => "hermite",
            BeamBasis::HermiteNodal => "hermite-nodal",
        })
    }
}

impl FromStr for BeamBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" | "lagrange" => Ok(BeamBasis::Lagrange),
            "h" | "hermite" => Ok(BeamBasis::Hermite),
            "hermite-nodal" | "hn" => Ok(BeamBasis::HermiteNodal),
            _ => Err(Error::InvalidInput(format!("unknown beam basis '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BeamDof {
    W1,
    WN,
    S1,
    SN,
    C1,
    CN,
}

impl BeamDof {
    fn index(self, n: usize) -> usize {
        match self {
            BeamDof::W1 => 0,
            BeamDof::WN => n - 1,
            BeamDof::S1 => basis::slope_col(n, End::First),
            BeamDof::SN => basis::slope_col(n, End::Last),
            BeamDof::C1 => basis::curvature_col(n, End::First),
            BeamDof::CN => basis::curvature_col(n, End::Last),
        }
    }

    fn is_curvature(self) -> bool {
        matches!(self, BeamDof::C1 | BeamDof::CN)
    }

    fn end_row(self, n: usize) -> usize {
        match self {
            BeamDof::W1 | BeamDof::S1 | BeamDof::C1 => 0,
            _ => n - 1,
        }
    }
}

fn lumped_mass(model: &BeamModel, grid: &NodeGrid) -> Vec<f64> {
    let n = grid.order();
    let mut m = vec![0.0; n + 4];
    let f = model.rho * model.area * model.length / 2.0;
    for (mi, h) in m.iter_mut().zip(&grid.weights) {
        *mi = f * h;
    }
    m
}

/// `Σ_k w_k (s·X)_ki (s·X)_kj` summed for two operators.
fn weighted_gram(w: &[f64], x: &RealMatrix, cx: f64, y: &RealMatrix, cy: f64) -> RealMatrix {
    let xw = RealMatrix::from_fn(x.nrows(), x.ncols(), |k, j| x[(k, j)] * w[k] * cx);
    let yw = RealMatrix::from_fn(y.nrows(), y.ncols(), |k, j| y[(k, j)] * w[k] * cy);
    let mut k = x.transpose() * xw + y.transpose() * yw;
    let sym = (&k + k.transpose()) * 0.5;
    k.copy_from(&sym);
    k
}

pub fn assemble_lagrange_beam(
    model: &BeamModel,
    grid: &NodeGrid,
    mods: &ModifiedDerivativeSet,
) -> AssembledSystem {
    let l = model.length;
    let ei = model.e * model.i;
    let k = weighted_gram(
        &grid.weights,
        &mods.b_bar,
        8.0 * ei / l.powi(3),
        &mods.c_bar,
        model.g * model.g * 32.0 * ei / l.powi(5),
    );
    AssembledSystem::unconstrained(k, lumped_mass(model, grid))
}

/// Hermite stiffness integrated on the points of `quad`, at which `herm`
/// must have been evaluated. The lumped mass still uses the element grid.
pub fn assemble_hermite_beam(
    model: &BeamModel,
    grid: &NodeGrid,
    quad: &NodeGrid,
    herm: &HermiteBasisSet,
) -> Result<AssembledSystem> {
    if herm.points != quad.nodes {
        return Err(Error::InvalidInput("Hermite basis not evaluated on the quadrature points".into()));
    }
    let l = model.length;
    let ei = model.e * model.i;
    let k = weighted_gram(
        &quad.weights,
        &herm.gamma[2],
        8.0 * ei / l.powi(3),
        &herm.gamma[3],
        model.g * model.g * 32.0 * ei / l.powi(5),
    );
    Ok(AssembledSystem::unconstrained(k, lumped_mass(model, grid)))
}

/// Imposes the essential conditions of `bc`.
///
/// With `ties` (the Lagrange element) every eliminated slope dof also
/// forces the interpolant's end slope `Ā_end · u = 0`, and every eliminated
/// curvature dof forces `B̄_end · u = 0`. At `g = 0` curvature conditions are
/// released: the Lagrange element drops its (stiffness-free) curvature dofs
/// and the Hermite element keeps them free.
pub fn apply_beam_bc(
    sys: AssembledSystem,
    bc: BeamBc,
    g: f64,
    ties: Option<&ModifiedDerivativeSet>,
) -> AssembledSystem {
    let n = sys.dof_count() - 4;
    let classical = g == 0.0;
    let mut gone = Vec::new();
    for &d in bc.essential() {
        if !(classical && d.is_curvature()) {
            gone.push(d.index(n));
        }
    }
    if classical && ties.is_some() {
        gone.push(BeamDof::C1.index(n));
        gone.push(BeamDof::CN.index(n));
    }
    let mut rows = Vec::new();
    if let Some(m) = ties {
        for &d in bc.essential() {
            let op = match d {
                BeamDof::S1 | BeamDof::SN => &m.a_bar,
                BeamDof::C1 | BeamDof::CN if !classical => &m.b_bar,
                _ => continue,
            };
            rows.push(op.row(d.end_row(n)).iter().copied().collect::<Vec<f64>>());
        }
    }
    let mut sys = sys.eliminate(&gone);
    for r in &mut rows {
        for &e in &sys.eliminated {
            r[e] = 0.0;
        }
    }
    sys.ties = rows;
    sys
}

/// Assembles and constrains the beam for one basis.
pub fn beam_system(model: &BeamModel, bc: BeamBc, basis: BeamBasis, n: usize) -> Result<AssembledSystem> {
    model.validate()?;
    if n < 6 {
        return Err(Error::InvalidInput(format!("beam element needs N >= 6, got {n}")));
    }
    let grid = gll::gll_grid(n)?;
    let d = basis::lagrange_derivatives(&grid)?;
    let sys = match basis {
        BeamBasis::Lagrange => {
            let mods = basis::modify_for_boundary_dofs(&d)?;
            let sys = assemble_lagrange_beam(model, &grid, &mods);
            return Ok(apply_beam_bc(sys, bc, model.g, Some(&mods)));
        }
        BeamBasis::Hermite => {
            let quad = gll::gll_grid(n + 3)?;
            let herm = basis::hermite_basis_at(&d, &quad.nodes)?;
            assemble_hermite_beam(model, &grid, &quad, &herm)?
        }
        BeamBasis::HermiteNodal => {
            let herm = basis::hermite_basis_at(&d, &grid.nodes)?;
            assemble_hermite_beam(model, &grid, &grid, &herm)?
        }
    };
    Ok(apply_beam_bc(sys, bc, model.g, None))
}

/// Lowest `mode_count` frequencies (rigid modes included).
pub fn beam_frequencies(
    model: &BeamModel,
    bc: BeamBc,
    basis: BeamBasis,
    n: usize,
    mode_count: usize,
) -> Result<ModalResult> {
    let sys = beam_system(model, bc, basis, n)?;
    let nondim = model.frequency_scale();
    Ok(modal::solve(&sys, nondim)?.truncate(mode_count))
}

/// Elastic frequencies only: the first `count` above the rigid modes.
pub fn beam_elastic_frequencies(
    model: &BeamModel,
    bc: BeamBc,
    basis: BeamBasis,
    n: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let r = beam_frequencies(model, bc, basis, n, usize::MAX)?;
    Ok(r.elastic().iter().take(count).copied().collect())
}
