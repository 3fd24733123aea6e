//! Shared eigen pipeline for assembled beam and plate systems.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, RealMatrix};

/// Stiffness, lumped mass and the boundary-condition partition of a
/// single element.
///
/// `mass` has one entry per dof; slope and curvature dofs carry zero
/// inertia. `ties` holds extra homogeneous constraints `t · u = 0` over the
/// full dof vector.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub k: RealMatrix,
    pub mass: Vec<f64>,
    pub eliminated: Vec<usize>,
    pub boundary: Vec<usize>,
    pub domain: Vec<usize>,
    pub ties: Vec<Vec<f64>>,
}

impl AssembledSystem {
    /// A system with every dof retained and classified by its mass.
    pub fn unconstrained(k: RealMatrix, mass: Vec<f64>) -> Self {
        let (domain, boundary): (Vec<usize>, Vec<usize>) =
            (0..mass.len()).partition(|&i| mass[i] > 0.0);
        AssembledSystem { k, mass, eliminated: Vec::new(), boundary, domain, ties: Vec::new() }
    }

    pub fn dof_count(&self) -> usize {
        self.mass.len()
    }

    /// Deletes the listed dofs and reclassifies the rest.
    pub fn eliminate(mut self, dofs: &[usize]) -> Self {
        let mut gone = vec![false; self.mass.len()];
        for &d in self.eliminated.iter().chain(dofs) {
            gone[d] = true;
        }
        self.eliminated = (0..gone.len()).filter(|&i| gone[i]).collect();
        self.boundary = (0..gone.len()).filter(|&i| !gone[i] && self.mass[i] == 0.0).collect();
        self.domain = (0..gone.len()).filter(|&i| !gone[i] && self.mass[i] > 0.0).collect();
        self
    }

    /// Stiffness restricted to retained dofs, in `boundary ++ domain` order.
    pub fn retained_stiffness(&self) -> RealMatrix {
        let kept: Vec<usize> = self.boundary.iter().chain(&self.domain).copied().collect();
        linalg::submatrix(&self.k, &kept, &kept)
    }
}

/// Frequencies (ascending, nondimensional) and mode shapes over the
/// domain displacement dofs.
#[derive(Debug, Clone)]
pub struct ModalResult {
    pub omega_bar: Vec<f64>,
    pub mode_shapes: RealMatrix,
    pub rigid_mode_count: usize,
}

impl ModalResult {
    /// Frequencies with the rigid-body zeros removed.
    pub fn elastic(&self) -> &[f64] {
        &self.omega_bar[self.rigid_mode_count.min(self.omega_bar.len())..]
    }

    pub fn truncate(mut self, count: usize) -> Self {
        let c = count.min(self.omega_bar.len());
        self.omega_bar.truncate(c);
        self.mode_shapes = self.mode_shapes.columns(0, c).into_owned();
        self
    }
}

/// Collapses repeated (degenerate) frequencies: a value within `rel_tol`
/// of the last kept one is skipped. Input must be ascending.
pub fn distinct(values: &[f64], rel_tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        match out.last() {
            Some(&l) if (v - l).abs() <= rel_tol * v.abs() => {}
            _ => out.push(v),
        }
    }
    out
}

const NEGATIVE_TOL: f64 = 1e-6;
const RIGID_RATIO: f64 = 1e-4;
const ELASTIC_FLOOR: f64 = 1e-2;
const MASSLESS_RATIO: f64 = 1e-12;

/// Rigid modes: `ω̄ < 1e-4 · max(ω̄_elastic,1, 1)` where the first elastic
/// frequency is the first one above `1e-2`.
pub fn count_rigid(omega_bar: &[f64]) -> usize {
    let first_elastic = omega_bar.iter().copied().find(|&w| w >= ELASTIC_FLOOR).unwrap_or(1.0);
    let cut = RIGID_RATIO * first_elastic.max(1.0);
    omega_bar.iter().filter(|&&w| w < cut).count()
}

/// Solves the free-vibration problem; `nondim` converts `√λ` to `ω̄`.
pub fn solve(sys: &AssembledSystem, nondim: f64) -> Result<ModalResult> {
    if sys.domain.is_empty() {
        return Err(Error::InvalidInput("no displacement dofs left after boundary conditions".into()));
    }
    let (lambda, shapes) = if sys.ties.is_empty() {
        solve_diagonal(sys)?
    } else {
        solve_tied(sys)?
    };
    let top = lambda.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let mut omega = Vec::with_capacity(lambda.len());
    for &l in &lambda {
        if l < -NEGATIVE_TOL * top.max(1.0) {
            return Err(Error::NegativeEigenvalue(l));
        }
        omega.push(l.max(0.0).sqrt() * nondim);
    }
    let rigid_mode_count = count_rigid(&omega);
    Ok(ModalResult { omega_bar: omega, mode_shapes: shapes, rigid_mode_count })
}

fn solve_diagonal(sys: &AssembledSystem) -> Result<(Vec<f64>, RealMatrix)> {
    let nb = sys.boundary.len();
    let nd = sys.domain.len();
    let k = sys.retained_stiffness();
    let b: Vec<usize> = (0..nb).collect();
    let d: Vec<usize> = (nb..nb + nd).collect();
    let kbar = linalg::static_condense(&k, &b, &d)?;
    let s: Vec<f64> = sys.domain.iter().map(|&i| 1.0 / sys.mass[i].sqrt()).collect();
    let scaled = RealMatrix::from_fn(nd, nd, |i, j| kbar[(i, j)] * s[i] * s[j]);
    let (lambda, v) = linalg::sym_eig(&scaled)?;
    let shapes = RealMatrix::from_fn(nd, nd, |i, j| v[(i, j)] * s[i]);
    Ok((lambda, shapes))
}

/// Constrained route: the retained dofs are parametrised by the null space
/// of the tie rows, the reduced mass is diagonalised, massless directions
/// are condensed out and the rest is mass-normalised.
fn solve_tied(sys: &AssembledSystem) -> Result<(Vec<f64>, RealMatrix)> {
    let kept: Vec<usize> = sys.boundary.iter().chain(&sys.domain).copied().collect();
    let n = kept.len();
    let t = RealMatrix::from_fn(sys.ties.len(), n, |r, c| sys.ties[r][kept[c]]);
    let z = null_space(&t)?;
    let r = z.ncols();

    let k = linalg::submatrix(&sys.k, &kept, &kept);
    let m_diag = DVector::from_iterator(n, kept.iter().map(|&i| sys.mass[i]));
    let kr = z.transpose() * &k * &z;
    let mr = z.transpose() * RealMatrix::from_diagonal(&m_diag) * &z;
    let mr = (&mr + mr.transpose()) * 0.5;
    let (mu, v) = linalg::sym_eig(&mr)?;
    let mu_max = mu.last().copied().unwrap_or(0.0);
    let massive: Vec<usize> = (0..r).filter(|&i| mu[i] > MASSLESS_RATIO * mu_max).collect();
    let massless: Vec<usize> = (0..r).filter(|&i| mu[i] <= MASSLESS_RATIO * mu_max).collect();

    let kt = v.transpose() * &kr * &v;
    let kt = (&kt + kt.transpose()) * 0.5;
    let order: Vec<usize> = massless.iter().chain(&massive).copied().collect();
    let kt = linalg::submatrix(&kt, &order, &order);
    let nb = massless.len();
    let nm = massive.len();
    let b: Vec<usize> = (0..nb).collect();
    let d: Vec<usize> = (nb..nb + nm).collect();
    let kbar = linalg::static_condense(&kt, &b, &d)?;
    let s: Vec<f64> = massive.iter().map(|&i| 1.0 / mu[i].sqrt()).collect();
    let scaled = RealMatrix::from_fn(nm, nm, |i, j| kbar[(i, j)] * s[i] * s[j]);
    let (lambda, w) = linalg::sym_eig(&scaled)?;

    // back to physical displacements over the domain dofs
    let ym = RealMatrix::from_fn(nm, nm, |i, j| w[(i, j)] * s[i]);
    let yb = if nb > 0 {
        let kbb = linalg::submatrix(&kt, &b, &b);
        let kbd = linalg::submatrix(&kt, &b, &d);
        -linalg::solve_linear(&kbb, &(kbd * &ym))?
    } else {
        RealMatrix::zeros(0, nm)
    };
    let vm = RealMatrix::from_fn(r, nm, |i, j| v[(i, massive[j])]);
    let vb = RealMatrix::from_fn(r, nb, |i, j| v[(i, massless[j])]);
    let full = &z * (vm * ym + vb * yb);
    let nbnd = sys.boundary.len();
    let shapes = full.rows(nbnd, sys.domain.len()).into_owned();
    Ok((lambda, shapes))
}

/// Orthonormal basis of `{x : T x = 0}`.
fn null_space(t: &RealMatrix) -> Result<RealMatrix> {
    let n = t.ncols();
    let gram = t.transpose() * t;
    let (l, v) = linalg::sym_eig(&gram)?;
    let top = l.last().copied().unwrap_or(0.0).max(1e-300);
    let keep: Vec<usize> = (0..n).filter(|&i| l[i] <= 1e-12 * top).collect();
    if keep.len() + t.nrows() != n {
        return Err(Error::InvalidInput("tie constraints are linearly dependent".into()));
    }
    Ok(RealMatrix::from_fn(n, keep.len(), |i, j| v[(i, keep[j])]))
}
