//! Small dense linear algebra layer: LU solve, symmetric eigenproblem,
//! Schur-complement condensation and an overflow-safe complex determinant.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

const PIVOT_RATIO: f64 = 1e-13;
const SYMMETRY_TOL: f64 = 1e-9;

/// Solves `A X = B` by LU with partial pivoting after row equilibration.
///
/// A pivot smaller than `1e-13` times the largest equilibrated entry is
/// reported as [`Error::Singular`].
pub fn solve_linear(a: &RealMatrix, b: &RealMatrix) -> Result<RealMatrix> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "solve_linear needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if b.nrows() != n {
        return Err(Error::InvalidInput(format!(
            "right-hand side has {} rows, expected {n}",
            b.nrows()
        )));
    }

    let mut a = a.clone();
    let mut b = b.clone();
    for i in 0..n {
        let s = a.row(i).amax();
        if s == 0.0 {
            return Err(Error::Singular { pivot: 0.0, threshold: 0.0 });
        }
        a.row_mut(i).scale_mut(1.0 / s);
        b.row_mut(i).scale_mut(1.0 / s);
    }

    let threshold = PIVOT_RATIO * a.amax();
    let lu = a.lu();
    let u = lu.u();
    for i in 0..n {
        let p = u[(i, i)].abs();
        if !(p > threshold) {
            return Err(Error::Singular { pivot: p, threshold });
        }
    }
    lu.solve(&b).ok_or(Error::Singular { pivot: 0.0, threshold })
}

/// Relative asymmetry `max|S - S^T| / max|S|`.
pub fn asymmetry(s: &RealMatrix) -> f64 {
    let scale = s.amax();
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0_f64;
    for i in 0..s.nrows() {
        for j in (i + 1)..s.ncols() {
            worst = worst.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    worst / scale
}

/// Symmetric eigen-decomposition with eigenvalues in ascending order.
///
/// Columns of the returned matrix are the matching orthonormal eigenvectors.
pub fn sym_eig(s: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    let n = s.nrows();
    if n == 0 || s.ncols() != n {
        return Err(Error::InvalidInput("sym_eig needs a non-empty square matrix".into()));
    }
    let asym = asymmetry(s);
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let sym = (s + s.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::try_new(sym, f64::EPSILON, 10_000)
        .ok_or(Error::NoConvergence)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = RealMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Extracts the submatrix `M[rows, cols]`.
pub fn submatrix(m: &RealMatrix, rows: &[usize], cols: &[usize]) -> RealMatrix {
    RealMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Static condensation `K̄ = k_dd - k_db k_bb⁻¹ k_bd`, symmetrised.
///
/// `b` and `d` must partition the index range of `k`.
pub fn static_condense(k: &RealMatrix, b: &[usize], d: &[usize]) -> Result<RealMatrix> {
    let n = k.nrows();
    if k.ncols() != n {
        return Err(Error::InvalidInput("static_condense needs a square matrix".into()));
    }
    let mut seen = vec![false; n];
    for &i in b.iter().chain(d) {
        if i >= n || seen[i] {
            return Err(Error::InvalidInput(
                "index sets must partition the dof set".into(),
            ));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput(
            "index sets must partition the dof set".into(),
        ));
    }

    let kdd = submatrix(k, d, d);
    if b.is_empty() {
        return Ok(kdd);
    }
    let kbb = submatrix(k, b, b);
    let kbd = submatrix(k, b, d);
    let x = solve_linear(&kbb, &kbd)?;
    let kdb = submatrix(k, d, b);
    let condensed = kdd - kdb * x;
    Ok((&condensed + condensed.transpose()) * 0.5)
}

/// A determinant held as `mantissa * 10^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub exponent: i64,
}

impl ScaledComplex {
    pub fn zero() -> Self {
        ScaledComplex { mantissa: Complex64::new(0.0, 0.0), exponent: 0 }
    }

    /// `log10 |value|`, or negative infinity for zero.
    pub fn log10_abs(&self) -> f64 {
        self.mantissa.norm().log10() + self.exponent as f64
    }

    /// Collapses to a plain complex number (may overflow to infinity).
    pub fn value(&self) -> Complex64 {
        self.mantissa * 10f64.powi(self.exponent.clamp(-400, 400) as i32)
    }

    fn renormalize(mut self) -> Self {
        let m = self.mantissa.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        let e = m.log10().floor() as i64;
        self.mantissa /= 10f64.powi(e as i32);
        self.exponent += e;
        self
    }
}

/// Complex determinant by Gaussian elimination with partial pivoting,
/// carrying the magnitude as a separate base-10 exponent.
pub fn complex_det(f: &ComplexMatrix) -> Result<ScaledComplex> {
    let n = f.nrows();
    if f.ncols() != n {
        return Err(Error::InvalidInput("complex_det needs a square matrix".into()));
    }
    let mut a = f.clone();
    let mut det = ScaledComplex { mantissa: Complex64::new(1.0, 0.0), exponent: 0 };
    for c in 0..n {
        let (p, pmax) = (c..n)
            .map(|r| (r, a[(r, c)].norm()))
            .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 {
            return Ok(ScaledComplex::zero());
        }
        if p != c {
            a.swap_rows(p, c);
            det.mantissa = -det.mantissa;
        }
        let pivot = a[(c, c)];
        det.mantissa *= pivot;
        det = det.renormalize();
        for r in (c + 1)..n {
            let factor = a[(r, c)] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in (c + 1)..n {
                let v = a[(c, k)];
                a[(r, k)] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Real determinant through [`complex_det`]; returns `(sign, log10|det|)`.
pub fn real_det_sign_log(m: &RealMatrix) -> Result<(f64, f64)> {
    let c = m.map(|x| Complex64::new(x, 0.0));
    let d = complex_det(&c)?;
    if d.mantissa.norm() == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    Ok((d.mantissa.re.signum(), d.log10_abs()))
}
