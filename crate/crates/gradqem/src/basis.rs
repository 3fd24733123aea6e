//! Lagrange differentiation matrices, their boundary-augmented forms and
//! the C² Hermite basis.
//!
//! Augmented matrices are `N x (N+4)`. Columns `0..N` address nodal
//! displacements; columns `N, N+1` the end slopes `w'_1, w'_N`; columns
//! `N+2, N+3` the end curvatures `w''_1, w''_N`, all in ξ-coordinates.

use crate::error::{Error, Result};
use crate::gll::NodeGrid;
use crate::linalg::RealMatrix;

/// Column of `w'_1` in an augmented matrix of order `n`.
pub fn slope_col(n: usize, end: End) -> usize {
    match end {
        End::First => n,
        End::Last => n + 1,
    }
}

/// Column of `w''_1` in an augmented matrix of order `n`.
pub fn curvature_col(n: usize, end: End) -> usize {
    match end {
        End::First => n + 2,
        End::Last => n + 3,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    First,
    Last,
}

/// First, second and third derivative weighting matrices on a node set.
#[derive(Debug, Clone)]
pub struct DerivativeSet {
    pub nodes: Vec<f64>,
    pub a: RealMatrix,
    pub b: RealMatrix,
    pub c: RealMatrix,
}

impl DerivativeSet {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Builds `A`, `B = A·A`, `C = B·A` for the Lagrange basis on `grid`.
pub fn lagrange_derivatives(grid: &NodeGrid) -> Result<DerivativeSet> {
    derivatives_on(&grid.nodes)
}

/// As [`lagrange_derivatives`] for an arbitrary set of distinct nodes.
pub fn derivatives_on(nodes: &[f64]) -> Result<DerivativeSet> {
    let n = nodes.len();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if nodes[i] == nodes[j] {
                return Err(Error::InvalidInput(format!("duplicate node {}", nodes[i])));
            }
        }
    }
    let mut a = RealMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut num = 1.0;
            let mut den = 1.0;
            for k in 0..n {
                if k != j {
                    den *= nodes[j] - nodes[k];
                }
                if k != i && k != j {
                    num *= nodes[i] - nodes[k];
                }
            }
            a[(i, j)] = num / den;
            diag += 1.0 / (nodes[i] - nodes[j]);
        }
        a[(i, i)] = diag;
    }
    let b = &a * &a;
    let c = &b * &a;
    Ok(DerivativeSet { nodes: nodes.to_vec(), a, b, c })
}

/// Interpolation matrix `L_k(p_q)` of shape `points x nodes`.
pub fn lagrange_values_at(nodes: &[f64], points: &[f64]) -> RealMatrix {
    let n = nodes.len();
    RealMatrix::from_fn(points.len(), n, |q, k| {
        let p = points[q];
        let mut v = 1.0;
        for m in 0..n {
            if m != k {
                v *= (p - nodes[m]) / (nodes[k] - nodes[m]);
            }
        }
        v
    })
}

/// Augmented derivative matrices `Ā, B̄, C̄`.
#[derive(Debug, Clone)]
pub struct ModifiedDerivativeSet {
    pub a_bar: RealMatrix,
    pub b_bar: RealMatrix,
    pub c_bar: RealMatrix,
}

/// Augments `A, B, C` with end slope and end curvature columns.
///
/// Boundary rows of `B̄` differentiate a slope vector whose end entries are
/// the slope dofs; boundary rows of `C̄` differentiate a curvature vector
/// whose end entries are the curvature dofs: `C̄_ij = Σ_{k interior} A_ik B_kj`.
pub fn modify_for_boundary_dofs(d: &DerivativeSet) -> Result<ModifiedDerivativeSet> {
    let n = d.order();
    if n < 4 {
        return Err(Error::InvalidInput(format!("modified matrices need N >= 4, got {n}")));
    }
    let mut a_bar = RealMatrix::zeros(n, n + 4);
    let mut b_bar = RealMatrix::zeros(n, n + 4);
    let mut c_bar = RealMatrix::zeros(n, n + 4);
    a_bar.view_mut((0, 0), (n, n)).copy_from(&d.a);
    b_bar.view_mut((0, 0), (n, n)).copy_from(&d.b);
    c_bar.view_mut((0, 0), (n, n)).copy_from(&d.c);

    for i in [0, n - 1] {
        for j in 0..n {
            let mut bij = 0.0;
            let mut cij = 0.0;
            for k in 1..n - 1 {
                bij += d.a[(i, k)] * d.a[(k, j)];
                cij += d.a[(i, k)] * d.b[(k, j)];
            }
            b_bar[(i, j)] = bij;
            c_bar[(i, j)] = cij;
        }
        b_bar[(i, slope_col(n, End::First))] = d.a[(i, 0)];
        b_bar[(i, slope_col(n, End::Last))] = d.a[(i, n - 1)];
        c_bar[(i, curvature_col(n, End::First))] = d.a[(i, 0)];
        c_bar[(i, curvature_col(n, End::Last))] = d.a[(i, n - 1)];
    }
    Ok(ModifiedDerivativeSet { a_bar, b_bar, c_bar })
}

/// Dense polynomial in ascending powers; only used for the low-degree
/// Hermite factors.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn root(r: f64) -> Poly {
        Poly(vec![-r, 1.0])
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut c = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly(c)
    }

    fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(0.0);
        Poly((0..n).map(|i| get(self, i) - get(o, i)).collect())
    }

    fn deriv(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Values and first three derivatives of the `N+4` Hermite functions at a
/// set of evaluation points; `gamma[m]` has shape `points x (N+4)`.
#[derive(Debug, Clone)]
pub struct HermiteBasisSet {
    pub points: Vec<f64>,
    pub gamma: [RealMatrix; 4],
}

/// The Hermite basis evaluated at the element nodes.
pub fn hermite_basis(grid: &NodeGrid) -> Result<HermiteBasisSet> {
    let d = lagrange_derivatives(grid)?;
    hermite_basis_at(&d, &grid.nodes)
}

/// The Hermite basis evaluated at arbitrary points in [-1, 1].
///
/// Each function is `L_j(ξ)·P(ξ)` with a polynomial factor `P` of degree at
/// most four; derivatives follow from the product rule using exact Lagrange
/// derivatives `L_j^(m)(p) = Σ_k L_k(p) D^m_kj`.
pub fn hermite_basis_at(d: &DerivativeSet, points: &[f64]) -> Result<HermiteBasisSet> {
    let n = d.order();
    if n < 4 {
        return Err(Error::InvalidInput(format!("Hermite basis needs N >= 4, got {n}")));
    }
    let x = &d.nodes;
    let interp = lagrange_values_at(x, points);
    let ld = [interp.clone(), &interp * &d.a, &interp * &d.b, &interp * &d.c];
    let np = points.len();
    let mut gamma = [
        RealMatrix::zeros(np, n + 4),
        RealMatrix::zeros(np, n + 4),
        RealMatrix::zeros(np, n + 4),
        RealMatrix::zeros(np, n + 4),
    ];
    const BINOM: [[f64; 4]; 4] =
        [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];

    let mut add = |j: usize, p: &Poly, col: usize| {
        let pd = [p.clone(), p.deriv(), p.deriv().deriv(), p.deriv().deriv().deriv()];
        for (q, &pt) in points.iter().enumerate() {
            let pv: Vec<f64> = pd.iter().map(|f| f.eval(pt)).collect();
            for k in 0..4 {
                let mut s = 0.0;
                for m in 0..=k {
                    s += BINOM[k][m] * ld[m][(q, j)] * pv[k - m];
                }
                gamma[k][(q, col)] += s;
            }
        }
    };

    for (j, o, end) in [(0, n - 1, End::First), (n - 1, 0, End::Last)] {
        let dist = x[j] - x[o];
        let lp = d.a[(j, j)];
        let lpp = d.b[(j, j)];
        let sq_j = Poly::root(x[j]).mul(&Poly::root(x[j]));
        let sq_o = Poly::root(x[o]).mul(&Poly::root(x[o]));
        let curv = sq_j.mul(&sq_o).scale(1.0 / (2.0 * dist * dist));
        let slope = Poly::root(x[j])
            .mul(&sq_o)
            .scale(1.0 / (dist * dist))
            .sub(&curv.scale(2.0 * lp + 4.0 / dist));
        let disp = sq_o
            .scale(1.0 / (dist * dist))
            .sub(&slope.scale(lp + 2.0 / dist))
            .sub(&curv.scale(lpp + 4.0 * lp / dist + 2.0 / (dist * dist)));
        add(j, &curv, curvature_col(n, end));
        add(j, &slope, slope_col(n, end));
        add(j, &disp, j);
    }
    let ends = Poly::root(x[0])
        .mul(&Poly::root(x[0]))
        .mul(&Poly::root(x[n - 1]))
        .mul(&Poly::root(x[n - 1]));
    for j in 1..n - 1 {
        let s = (x[j] - x[0]).powi(2) * (x[j] - x[n - 1]).powi(2);
        add(j, &ends.scale(1.0 / s), j);
    }
    Ok(HermiteBasisSet { points: points.to_vec(), gamma })
}
