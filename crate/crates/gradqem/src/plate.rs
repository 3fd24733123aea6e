//! LL and LH weak-form quadrature elements for the gradient Kirchhoff plate.
//!
//! The element is the rectangle `[-lx/2, lx/2] x [-ly/2, ly/2]`, mapped to
//! `ξ = 2x/lx`, `η = 2y/ly`. Edge slope and curvature dofs are physical
//! normal derivatives (`w_x`, `w_xx` on left/right, `w_y`, `w_yy` on
//! bottom/top).

use std::fmt;
use std::str::FromStr;

use crate::basis::{self, DerivativeSet, ModifiedDerivativeSet};
use crate::error::{Error, Result};
use crate::gll::{self, NodeGrid};
use crate::linalg::RealMatrix;
use crate::modal::{self, AssembledSystem, ModalResult};
use crate::sweep::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateModel {
    pub e: f64,
    pub nu: f64,
    pub h: f64,
    pub rho: f64,
    pub lx: f64,
    pub ly: f64,
    pub g: f64,
}

impl Default for PlateModel {
    fn default() -> Self {
        PlateModel { e: 3e6, nu: 0.3, h: 0.01, rho: 1.0, lx: 1.0, ly: 1.0, g: 0.0 }
    }
}

impl PlateModel {
    pub fn with_g(self, g: f64) -> Self {
        PlateModel { g, ..self }
    }

    /// Flexural rigidity `E h³ / (12 (1 - ν²))`.
    pub fn rigidity(&self) -> f64 {
        self.e * self.h.powi(3) / (12.0 * (1.0 - self.nu * self.nu))
    }

    /// `lx²·√(ρh/D)`.
    pub fn frequency_scale(&self) -> f64 {
        self.lx * self.lx * (self.rho * self.h / self.rigidity()).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.e, self.h, self.rho, self.lx, self.ly];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("plate properties must be positive and finite".into()));
        }
        if !(0.0..0.5).contains(&self.nu) {
            return Err(Error::InvalidInput(format!("Poisson ratio must lie in [0, 0.5), got {}", self.nu)));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::InvalidInput(format!("gradient length must be >= 0, got {}", self.g)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlateBc {
    Ssss,
    Ffff,
    Ssff,
}

impl PlateBc {
    pub const ALL: [PlateBc; 3] = [PlateBc::Ssss, PlateBc::Ffff, PlateBc::Ssff];

    /// Simply supported edges.
    pub fn supported_edges(self) -> &'static [Edge] {
        match self {
            PlateBc::Ssss => &Edge::ALL,
            PlateBc::Ffff => &[],
            PlateBc::Ssff => &[Edge::Bottom, Edge::Right],
        }
    }

    pub fn rigid_modes(self) -> usize {
        if self == PlateBc::Ffff {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for PlateBc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlateBc::Ssss => "ssss",
            PlateBc::Ffff => "ffff",
            PlateBc::Ssff => "ssff",
        })
    }
}

impl FromStr for PlateBc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ssss" => Ok(PlateBc::Ssss),
            "ffff" => Ok(PlateBc::Ffff),
            "ssff" => Ok(PlateBc::Ssff),
            _ => Err(Error::InvalidInput(format!("unknown plate boundary condition '{s}'"))),
        }
    }
}

/// `LH` integrates η with `N+3` GLL points; `LHNodal` uses the element
/// nodes in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlateBasis {
    LL,
    LH,
    LHNodal,
}

impl fmt::Display for PlateBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlateBasis::LL => "ll",
            PlateBasis::LH => "lh",
            PlateBasis::LHNodal => "lh-nodal",
        })
    }
}

impl FromStr for PlateBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ll" => Ok(PlateBasis::LL),
            "lh" => Ok(PlateBasis::LH),
            "lh-nodal" | "lhn" => Ok(PlateBasis::LHNodal),
            _ => Err(Error::InvalidInput(format!("unknown plate basis '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top];

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlateDof {
    /// `w` at grid point (`i` along x, `j` along y).
    Deflection { i: usize, j: usize },
    /// Normal slope at node `n` of an edge (counted along the edge).
    Slope { edge: Edge, n: usize },
    /// Normal curvature at node `n` of an edge.
    Curvature { edge: Edge, n: usize },
}

/// Global numbering: row-major deflections, then slopes on L, R, B, T,
/// then curvatures in the same edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlateDofMap {
    pub n: usize,
}

impl PlateDofMap {
    pub fn new(n: usize) -> Self {
        PlateDofMap { n }
    }

    pub fn total(&self) -> usize {
        self.n * self.n + 8 * self.n
    }

    pub fn index(&self, dof: PlateDof) -> usize {
        let n = self.n;
        match dof {
            PlateDof::Deflection { i, j } => i * n + j,
            PlateDof::Slope { edge, n: k } => n * n + edge.slot() * n + k,
            PlateDof::Curvature { edge, n: k } => n * n + 4 * n + edge.slot() * n + k,
        }
    }

    pub fn label(&self, idx: usize) -> PlateDof {
        let n = self.n;
        if idx < n * n {
            return PlateDof::Deflection { i: idx / n, j: idx % n };
        }
        let r = idx - n * n;
        let edge = Edge::ALL[(r / n) % 4];
        if r < 4 * n {
            PlateDof::Slope { edge, n: r % n }
        } else {
            PlateDof::Curvature { edge, n: r % n }
        }
    }
}

/// Classical and gradient constitutive matrices on the strain orderings
/// `(w_xx, w_yy, w_xy)` and `(w_xxx, w_yyy, w_xxy, w_xyy)`.
#[derive(Debug, Clone)]
pub struct ConstitutiveMatrices {
    pub cl: RealMatrix,
    pub sg: RealMatrix,
}

impl ConstitutiveMatrices {
    pub fn new(nu: f64) -> Self {
        let cl = RealMatrix::from_row_slice(3, 3, &[1.0, nu, 0.0, nu, 1.0, 0.0, 0.0, 0.0, 2.0 * (1.0 - nu)]);
        let t = 3.0 - 2.0 * nu;
        #[rustfmt::skip]
        let sg = RealMatrix::from_row_slice(4, 4, &[
            1.0, 0.0, 0.0, nu,
            0.0, 1.0, nu, 0.0,
            0.0, nu, t, 0.0,
            nu, 0.0, 0.0, t,
        ]);
        ConstitutiveMatrices { cl, sg }
    }
}

/// One-dimensional operators and quadrature needed to evaluate plate
/// strains at the points `(ξ_i, η_q)`.
#[derive(Debug, Clone)]
pub struct PlateOperators {
    pub model: PlateModel,
    pub map: PlateDofMap,
    pub xi: NodeGrid,
    d: DerivativeSet,
    mods: ModifiedDerivativeSet,
    /// η quadrature points and weights.
    pub eta: NodeGrid,
    /// η-direction operators of order 0..3 over the `N+4` column dofs,
    /// evaluated at the η points.
    eta_ops: [RealMatrix; 4],
    /// Interpolation of x-edge dof values along η, and its derivative.
    eta_interp: [RealMatrix; 2],
}

impl PlateOperators {
    pub fn new(model: &PlateModel, basis: PlateBasis, n: usize) -> Result<Self> {
        model.validate()?;
        if n < 6 {
            return Err(Error::InvalidInput(format!("plate element needs N >= 6, got {n}")));
        }
        let xi = gll::gll_grid(n)?;
        let d = basis::lagrange_derivatives(&xi)?;
        let mods = basis::modify_for_boundary_dofs(&d)?;
        let (eta, eta_ops, eta_interp) = match basis {
            PlateBasis::LL => {
                let mut d0 = RealMatrix::zeros(n, n + 4);
                d0.view_mut((0, 0), (n, n)).fill_with_identity();
                let ops = [d0, mods.a_bar.clone(), mods.b_bar.clone(), mods.c_bar.clone()];
                (xi.clone(), ops, [RealMatrix::identity(n, n), d.a.clone()])
            }
            PlateBasis::LH | PlateBasis::LHNodal => {
                let eta = if basis == PlateBasis::LH { gll::gll_grid(n + 3)? } else { xi.clone() };
                let herm = basis::hermite_basis_at(&d, &eta.nodes)?;
                let interp = basis::lagrange_values_at(&d.nodes, &eta.nodes);
                let interp1 = &interp * &d.a;
                (eta, herm.gamma, [interp, interp1])
            }
        };
        Ok(PlateOperators { model: *model, map: PlateDofMap::new(n), xi, d, mods, eta, eta_ops, eta_interp })
    }

    pub fn order(&self) -> usize {
        self.xi.order()
    }

    /// Physical strain rows at `(ξ_i, η_q)`: classical `3 x dofs` and
    /// gradient `4 x dofs`.
    pub fn strain_rows(&self, i: usize, q: usize) -> (RealMatrix, RealMatrix) {
        let n = self.order();
        let nd = self.map.total();
        let (a, b) = (self.model.lx, self.model.ly);
        let (sx, sy) = (2.0 / a, 2.0 / b);
        let mut cl = RealMatrix::zeros(3, nd);
        let mut sg = RealMatrix::zeros(4, nd);

        let unit = {
            let mut r = vec![0.0; n + 4];
            r[i] = 1.0;
            r
        };
        let row = |m: &RealMatrix| -> Vec<f64> { m.row(i).iter().copied().collect() };
        let plain_a = {
            let mut r = row(&self.d.a);
            r.extend([0.0; 4]);
            r
        };
        let b_bar = row(&self.mods.b_bar);
        let c_bar = row(&self.mods.c_bar);

        self.add(&mut cl, 0, &b_bar, 0, sx * sx, q);
        self.add(&mut cl, 1, &unit, 2, sy * sy, q);
        self.add(&mut cl, 2, &plain_a, 1, sx * sy, q);
        self.add(&mut sg, 0, &c_bar, 0, sx.powi(3), q);
        self.add(&mut sg, 1, &unit, 3, sy.powi(3), q);
        self.add(&mut sg, 2, &b_bar, 1, sx * sx * sy, q);
        self.add(&mut sg, 3, &plain_a, 2, sx * sy * sy, q);
        (cl, sg)
    }

    /// Adds `scale · ∂ξ-operator(x_row) ⊗ ∂η^m` to row `r` of `out`.
    ///
    /// Interior columns `l < N` of `x_row` address the η-line through
    /// `x = x_l`, whose own edge dofs enter through the η operator. The
    /// augmented ξ columns address x-edge dofs, interpolated along η.
    fn add(&self, out: &mut RealMatrix, r: usize, x_row: &[f64], m: usize, scale: f64, q: usize) {
        let n = self.order();
        let map = &self.map;
        let hy = self.model.ly / 2.0;
        let hx = self.model.lx / 2.0;
        let op = &self.eta_ops[m];
        for (l, &xl) in x_row.iter().enumerate().take(n) {
            if xl == 0.0 {
                continue;
            }
            let f = scale * xl;
            for k in 0..n {
                out[(r, map.index(PlateDof::Deflection { i: l, j: k }))] += f * op[(q, k)];
            }
            let edge_dofs = [
                (PlateDof::Slope { edge: Edge::Bottom, n: l }, hy),
                (PlateDof::Slope { edge: Edge::Top, n: l }, hy),
                (PlateDof::Curvature { edge: Edge::Bottom, n: l }, hy * hy),
                (PlateDof::Curvature { edge: Edge::Top, n: l }, hy * hy),
            ];
            for (c, (dof, fac)) in edge_dofs.into_iter().enumerate() {
                out[(r, map.index(dof))] += f * fac * op[(q, n + c)];
            }
        }
        let x_edges = [
            (Edge::Left, false, hx),
            (Edge::Right, false, hx),
            (Edge::Left, true, hx * hx),
            (Edge::Right, true, hx * hx),
        ];
        for (c, (edge, curvature, fac)) in x_edges.into_iter().enumerate() {
            let xc = x_row[n + c];
            if xc == 0.0 {
                continue;
            }
            // mixed corner terms (augmented in both directions) are not dofs
            if m > 1 {
                continue;
            }
            let interp = &self.eta_interp[m];
            for k in 0..n {
                let dof = if curvature {
                    PlateDof::Curvature { edge, n: k }
                } else {
                    PlateDof::Slope { edge, n: k }
                };
                out[(r, map.index(dof))] += scale * xc * fac * interp[(q, k)];
            }
        }
    }

    /// Quadrature points `(i, q)` with physical weights `H_i Hη_q ab/4`.
    pub fn points(&self) -> Vec<(usize, usize, f64)> {
        let area = self.model.lx * self.model.ly / 4.0;
        let mut pts = Vec::with_capacity(self.order() * self.eta.order());
        for (i, hi) in self.xi.weights.iter().enumerate() {
            for (q, hq) in self.eta.weights.iter().enumerate() {
                pts.push((i, q, hi * hq * area));
            }
        }
        pts
    }
}

/// Lower Cholesky factor of a small SPD matrix, transposed (`Lᵀ`).
fn cholesky_upper(m: &RealMatrix) -> RealMatrix {
    m.clone()
        .cholesky()
        .expect("constitutive matrices are positive definite for 0 <= nu < 0.5")
        .l()
        .transpose()
}

const CHUNK_POINTS: usize = 16;

/// Assembles `K` and the lumped mass for any basis; see [`PlateBasis`].
pub fn assemble_plate(model: &PlateModel, basis: PlateBasis, n: usize) -> Result<AssembledSystem> {
    assemble_plate_with(model, basis, n, Execution::default())
}

/// As [`assemble_plate`] with an explicit execution mode. Weighted strain
/// rows are stacked per chunk of quadrature points and each chunk adds its
/// Gram matrix `BᵀB` to `K`.
pub fn assemble_plate_with(
    model: &PlateModel,
    basis: PlateBasis,
    n: usize,
    exec: Execution,
) -> Result<AssembledSystem> {
    let ops = PlateOperators::new(model, basis, n)?;
    let nd = ops.map.total();
    let d = model.rigidity();
    let c = ConstitutiveMatrices::new(model.nu);
    let ucl = cholesky_upper(&c.cl);
    let usg = cholesky_upper(&c.sg) * model.g;
    let with_sg = model.g > 0.0;
    let per_point = if with_sg { 7 } else { 3 };

    let points = ops.points();
    let chunks: Vec<&[(usize, usize, f64)]> = points.chunks(CHUNK_POINTS).collect();
    let grams = sweep::map(exec, &chunks, |chunk| {
        let mut b = RealMatrix::zeros(per_point * chunk.len(), nd);
        for (p, &(i, q, w)) in chunk.iter().enumerate() {
            let (fc, fs) = ops.strain_rows(i, q);
            let s = (w * d).sqrt();
            b.rows_mut(per_point * p, 3).copy_from(&(&ucl * fc * s));
            if with_sg {
                b.rows_mut(per_point * p + 3, 4).copy_from(&(&usg * fs * s));
            }
        }
        b.tr_mul(&b)
    });
    let mut k = RealMatrix::zeros(nd, nd);
    for g in grams {
        k += g;
    }
    let k = (&k + k.transpose()) * 0.5;

    let mut mass = vec![0.0; nd];
    let f = model.rho * model.h * model.lx * model.ly / 4.0;
    for i in 0..n {
        for j in 0..n {
            mass[ops.map.index(PlateDof::Deflection { i, j })] = f * ops.xi.weights[i] * ops.xi.weights[j];
        }
    }
    Ok(AssembledSystem::unconstrained(k, mass))
}

/// Eliminates the essential dofs of `bc`: on each simply supported edge the
/// deflections and normal curvatures, plus every corner slope that is
/// tangential to a simply supported edge.
///
/// At `g = 0` curvature conditions are released as for the beam: curvature
/// dofs without stiffness are dropped and the rest stay free.
pub fn apply_plate_bc(sys: AssembledSystem, bc: PlateBc, g: f64, map: &PlateDofMap) -> AssembledSystem {
    let n = map.n;
    let classical = g == 0.0;
    let last = n - 1;
    let s = bc.supported_edges();
    let mut gone = Vec::new();
    for &edge in s {
        for k in 0..n {
            let (i, j) = match edge {
                Edge::Left => (0, k),
                Edge::Right => (last, k),
                Edge::Bottom => (k, 0),
                Edge::Top => (k, last),
            };
            gone.push(map.index(PlateDof::Deflection { i, j }));
            if !classical {
                gone.push(map.index(PlateDof::Curvature { edge, n: k }));
            }
        }
    }
    if classical {
        let top = sys.k.diagonal().amax();
        gone.extend((n * n + 4 * n..map.total()).filter(|&i| sys.k[(i, i)] <= 1e-14 * top));
    }
    let corners = [
        (Edge::Left, Edge::Bottom, Edge::Top),
        (Edge::Right, Edge::Bottom, Edge::Top),
        (Edge::Bottom, Edge::Left, Edge::Right),
        (Edge::Top, Edge::Left, Edge::Right),
    ];
    for (edge, first, second) in corners {
        if s.contains(&first) {
            gone.push(map.index(PlateDof::Slope { edge, n: 0 }));
        }
        if s.contains(&second) {
            gone.push(map.index(PlateDof::Slope { edge, n: last }));
        }
    }
    sys.eliminate(&gone)
}

pub fn plate_system(model: &PlateModel, bc: PlateBc, basis: PlateBasis, n: usize) -> Result<AssembledSystem> {
    let sys = assemble_plate(model, basis, n)?;
    Ok(apply_plate_bc(sys, bc, model.g, &PlateDofMap::new(n)))
}

/// Lowest `mode_count` frequencies (rigid modes included).
pub fn plate_frequencies(
    model: &PlateModel,
    bc: PlateBc,
    basis: PlateBasis,
    n: usize,
    mode_count: usize,
) -> Result<ModalResult> {
    let sys = plate_system(model, bc, basis, n)?;
    Ok(modal::solve(&sys, model.frequency_scale())?.truncate(mode_count))
}

pub fn plate_elastic_frequencies(
    model: &PlateModel,
    bc: PlateBc,
    basis: PlateBasis,
    n: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let r = plate_frequencies(model, bc, basis, n, usize::MAX)?;
    Ok(r.elastic().iter().take(count).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    type Field = dyn Fn(f64, f64) -> [f64; 5];

    /// Dof vector of a field given as `[w, w_x, w_xx, w_y, w_yy]`.
    fn sample(ops: &PlateOperators, f: &Field) -> DVector<f64> {
        let n = ops.order();
        let (hx, hy) = (ops.model.lx / 2.0, ops.model.ly / 2.0);
        let x: Vec<f64> = ops.xi.nodes.iter().map(|e| e * hx).collect();
        let y: Vec<f64> = ops.xi.nodes.iter().map(|e| e * hy).collect();
        let map = ops.map;
        let mut v = DVector::zeros(map.total());
        for i in 0..n {
            for j in 0..n {
                v[map.index(PlateDof::Deflection { i, j })] = f(x[i], y[j])[0];
            }
        }
        for k in 0..n {
            for (edge, px, py, sl, cu) in [
                (Edge::Left, -hx, y[k], 1, 2),
                (Edge::Right, hx, y[k], 1, 2),
                (Edge::Bottom, x[k], -hy, 3, 4),
                (Edge::Top, x[k], hy, 3, 4),
            ] {
                let val = f(px, py);
                v[map.index(PlateDof::Slope { edge, n: k })] = val[sl];
                v[map.index(PlateDof::Curvature { edge, n: k })] = val[cu];
            }
        }
        v
    }

    fn strains(ops: &PlateOperators, v: &DVector<f64>, i: usize, q: usize) -> Vec<f64> {
        let (c, s) = ops.strain_rows(i, q);
        (c * v).iter().chain((s * v).iter()).copied().collect()
    }

    fn check(ops: &PlateOperators, f: &Field, expect: [f64; 7]) {
        let v = sample(ops, f);
        for i in 0..ops.order() {
            for q in 0..ops.eta.order() {
                let s = strains(ops, &v, i, q);
                for (a, e) in s.iter().zip(expect) {
                    assert!((a - e).abs() < 1e-8, "point ({i},{q}): {s:?}");
                }
            }
        }
    }

    fn all_ops() -> Vec<PlateOperators> {
        let m = PlateModel { lx: 1.3, ly: 0.7, ..PlateModel::default() };
        [PlateBasis::LL, PlateBasis::LH, PlateBasis::LHNodal]
            .iter()
            .map(|&b| PlateOperators::new(&m, b, 7).unwrap())
            .collect()
    }

    #[test]
    fn dof_map_round_trip() {
        for n in [5, 6, 11] {
            let m = PlateDofMap::new(n);
            for idx in 0..m.total() {
                assert_eq!(m.index(m.label(idx)), idx);
            }
        }
        assert_eq!(PlateDofMap::new(6).total(), 84);
        assert_eq!(PlateDofMap::new(5).total(), 65);
    }

    #[test]
    fn constant_field_has_no_strain() {
        for ops in all_ops() {
            check(&ops, &|_, _| [1.0, 0.0, 0.0, 0.0, 0.0], [0.0; 7]);
        }
    }

    #[test]
    fn cylindrical_quadratic() {
        for ops in all_ops() {
            check(&ops, &|x, _| [x * x, 2.0 * x, 2.0, 0.0, 0.0], [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
            check(&ops, &|_, y| [y * y, 0.0, 0.0, 2.0 * y, 2.0], [0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn bilinear_twist() {
        for ops in all_ops() {
            check(&ops, &|x, y| [x * y, y, 0.0, x, 0.0], [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        }
    }

    fn check_component(ops: &PlateOperators, f: &Field, c: usize, expect: &dyn Fn(f64, f64) -> f64) {
        let v = sample(ops, f);
        let (hx, hy) = (ops.model.lx / 2.0, ops.model.ly / 2.0);
        for i in 0..ops.order() {
            for q in 0..ops.eta.order() {
                let s = strains(ops, &v, i, q);
                let e = expect(ops.xi.nodes[i] * hx, ops.eta.nodes[q] * hy);
                assert!((s[c] - e).abs() < 1e-8, "component {c} at ({i},{q}): {} vs {e}", s[c]);
            }
        }
    }

    #[test]
    fn cubic_fields() {
        for ops in all_ops() {
            let f: &Field = &|x, _| [x.powi(3), 3.0 * x * x, 6.0 * x, 0.0, 0.0];
            check_component(&ops, f, 0, &|x, _| 6.0 * x);
            check_component(&ops, f, 3, &|_, _| 6.0);
            let f: &Field = &|_, y| [y.powi(3), 0.0, 0.0, 3.0 * y * y, 6.0 * y];
            check_component(&ops, f, 1, &|_, y| 6.0 * y);
            check_component(&ops, f, 4, &|_, _| 6.0);
            let f: &Field = &|x, y| [x * x * y, 2.0 * x * y, 2.0 * y, x * x, 0.0];
            check_component(&ops, f, 0, &|_, y| 2.0 * y);
            check_component(&ops, f, 2, &|x, _| 2.0 * x);
            check_component(&ops, f, 5, &|_, _| 2.0);
            let f: &Field = &|x, y| [x * y * y, y * y, 0.0, 2.0 * x * y, 2.0 * x];
            check_component(&ops, f, 6, &|_, _| 2.0);
        }
    }

    #[test]
    fn rigid_modes_have_no_energy() {
        let m = PlateModel { g: 0.1, ..PlateModel::default() };
        for basis in [PlateBasis::LL, PlateBasis::LH] {
            let ops = PlateOperators::new(&m, basis, 7).unwrap();
            let sys = assemble_plate(&m, basis, 7).unwrap();
            let norm = sys.k.amax();
            for f in [
                &(|_: f64, _: f64| [1.0, 0.0, 0.0, 0.0, 0.0]) as &Field,
                &|x, _| [x, 1.0, 0.0, 0.0, 0.0],
                &|_, y| [y, 0.0, 0.0, 1.0, 0.0],
            ] {
                let v = sample(&ops, f);
                assert!((&sys.k * v).amax() < 1e-8 * norm);
            }
        }
    }

    #[test]
    fn stiffness_is_symmetric() {
        let m = PlateModel { g: 0.05, ..PlateModel::default() };
        for basis in [PlateBasis::LL, PlateBasis::LH] {
            let sys = assemble_plate(&m, basis, 9).unwrap();
            assert!(crate::linalg::asymmetry(&sys.k) < 1e-9);
        }
    }

    #[test]
    fn boundary_partition_sizes() {
        let m = PlateModel::default().with_g(0.05);
        let n = 11;
        for (bc, nb, nd) in [(PlateBc::Ssss, 4 * n - 8, (n - 2) * (n - 2)), (PlateBc::Ffff, 8 * n, n * n)] {
            let s = plate_system(&m, bc, PlateBasis::LL, n).unwrap();
            assert_eq!((s.boundary.len(), s.domain.len()), (nb, nd), "{bc}");
        }
        let s = plate_system(&m, PlateBc::Ssff, PlateBasis::LL, n).unwrap();
        assert_eq!(s.boundary.len(), 6 * n - 4);
    }

    #[test]
    fn sequential_and_parallel_assembly_agree() {
        let m = PlateModel::default().with_g(0.1);
        let a = assemble_plate_with(&m, PlateBasis::LH, 8, Execution::Sequential).unwrap();
        let b = assemble_plate_with(&m, PlateBasis::LH, 8, Execution::Parallel).unwrap();
        assert!((&a.k - &b.k).amax() <= 1e-12 * b.k.amax());
    }

    #[test]
    fn classical_ssss() {
        let m = PlateModel::default().with_g(1e-5);
        let w = plate_elastic_frequencies(&m, PlateBc::Ssss, PlateBasis::LL, 11, 3).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        for (a, e) in w.iter().zip([2.0 * pi2, 5.0 * pi2, 5.0 * pi2]) {
            assert!((a / e - 1.0).abs() < 1e-3, "{w:?}");
        }
    }

    #[test]
    fn free_plate_rigid_modes() {
        let m = PlateModel::default().with_g(0.05);
        let r = plate_frequencies(&m, PlateBc::Ffff, PlateBasis::LL, 9, 6).unwrap();
        assert_eq!(r.rigid_mode_count, 3);
    }

    #[test]
    fn zero_g_releases_curvatures() {
        let eps = PlateModel::default().with_g(1e-5);
        for bc in PlateBc::ALL {
            for basis in [PlateBasis::LL, PlateBasis::LH] {
                let a = plate_elastic_frequencies(&PlateModel::default(), bc, basis, 9, 4).unwrap();
                let b = plate_elastic_frequencies(&eps, bc, basis, 9, 4).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!((x / y - 1.0).abs() < 1e-2, "{bc} {basis}: {a:?} {b:?}");
                }
            }
        }
    }
}
