//! Analytical frequencies of the gradient beam from its 6x6 frequency
//! determinant, and Navier closed forms.
//!
//! Everything is nondimensional: `x̂ = x/L`, `ĝ = g/L`, `Ω = ω̄²`, so the
//! characteristic equation reads `k⁴ - ĝ²k⁶ = Ω` and, with `z = k²`,
//! `ĝ²z³ - z² + Ω = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::beam::{BeamBc, BeamModel};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, RealMatrix};
use crate::plate::PlateModel;
use crate::sweep::{self, Execution};

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// The six (or, for `g = 0`, four) roots `k` of the characteristic
/// equation for a trial circular frequency.
#[derive(Debug, Clone)]
pub struct CharacteristicRoots {
    pub omega: f64,
    pub beta_sq: f64,
    pub k: Vec<Complex64>,
}

impl CharacteristicRoots {
    /// `|k⁴ - g²k⁶ - ω²/β²|` for each root.
    pub fn residuals(&self, g: f64) -> Vec<f64> {
        let w = self.omega * self.omega / self.beta_sq;
        self.k
            .iter()
            .map(|k| (k.powu(4) - g * g * k.powu(6) - w).norm())
            .collect()
    }
}

/// Roots in physical units; `β² = EI/(ρA)`.
pub fn characteristic_roots(model: &BeamModel, omega: f64) -> Result<CharacteristicRoots> {
    model.validate()?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidInput(format!("trial frequency must be positive, got {omega}")));
    }
    let beta_sq = model.e * model.i / (model.rho * model.area);
    let zs = z_roots(model.g, omega * omega / beta_sq);
    let mut k = Vec::with_capacity(2 * zs.len());
    for z in zs {
        let r = z.sqrt();
        k.push(r);
        k.push(-r);
    }
    Ok(CharacteristicRoots { omega, beta_sq, k })
}

/// Roots `z` of `g²z³ - z² + w = 0` (two for `g = 0`).
fn z_roots(g: f64, w: f64) -> Vec<C> {
    if g == 0.0 {
        let s = w.sqrt();
        return vec![c(-s), c(s)];
    }
    let g2 = g * g;
    cubic_u(w * g2 * g2).into_iter().map(|u| u / g2).collect()
}

/// Roots of `u³ - u² + ε = 0`: Cardano with complex arithmetic, then
/// Newton polish.
fn cubic_u(eps: f64) -> [C; 3] {
    // u = t + 1/3  →  t³ + p t + q = 0
    let p = c(-1.0 / 3.0);
    let q = c(eps - 2.0 / 27.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut cc = (-q / 2.0 + disc).powf(1.0 / 3.0);
    if cc.norm() < 1e-300 {
        cc = (-q / 2.0 - disc).powf(1.0 / 3.0);
    }
    let rot = C::from_polar(1.0, 2.0 * PI / 3.0);
    let mut out = [c(0.0); 3];
    let mut ck = cc;
    for o in out.iter_mut() {
        *o = ck - p / (3.0 * ck) + 1.0 / 3.0;
        ck *= rot;
    }
    for u in out.iter_mut() {
        for _ in 0..30 {
            let f = (*u * *u * *u) - (*u * *u) + eps;
            let df = 3.0 * *u * *u - 2.0 * *u;
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            *u -= step;
            if step.norm() <= 1e-16 * u.norm() {
                break;
            }
        }
    }
    out
}

/// Sorted roots: the negative real root and the remaining pair, smaller
/// modulus first. The pair is either real or complex conjugate.
struct RootSet {
    zn: f64,
    za: C,
    zb: C,
    complex: bool,
}

fn classify(g: f64, w: f64) -> RootSet {
    let mut zs = cubic_u(w * g.powi(4));
    let g2 = g * g;
    for z in zs.iter_mut() {
        *z /= g2;
    }
    // the negative real root is the one with the smallest real part
    let neg = (0..3)
        .min_by(|&a, &b| zs[a].re.partial_cmp(&zs[b].re).unwrap())
        .unwrap();
    let rest: Vec<C> = (0..3).filter(|&i| i != neg).map(|i| zs[i]).collect();
    let imag = rest[0].im.abs().max(rest[1].im.abs());
    let scale = rest[0].norm().max(rest[1].norm());
    if imag > 1e-12 * scale {
        let m = if rest[0].im >= 0.0 { rest[0] } else { rest[1] };
        let re = 0.5 * (rest[0].re + rest[1].re);
        let im = m.im.abs();
        RootSet { zn: zs[neg].re, za: C::new(re, im), zb: C::new(re, -im), complex: true }
    } else {
        let (a, b) = if rest[0].re <= rest[1].re { (rest[0].re, rest[1].re) } else { (rest[1].re, rest[0].re) };
        RootSet { zn: zs[neg].re, za: c(a), zb: c(b), complex: false }
    }
}

#[derive(Debug, Clone, Copy)]
enum Part {
    Start,
    End,
}

#[derive(Debug, Clone, Copy)]
enum Term {
    One,
    K,
    K2,
    K3,
    K4,
    /// shear `k³ - g²k⁵`
    Q,
    /// moment `k² - g²k⁴`
    R,
}

use Part::{End as E, Start as S};
use Term::*;

fn rows(bc: BeamBc, gradient: bool) -> &'static [(Part, Term)] {
    if gradient {
        match bc {
            BeamBc::SimplySupported => &[(S, One), (E, One), (S, K2), (E, K2), (S, K4), (E, K4)],
            BeamBc::Clamped => &[(S, One), (S, K), (S, K2), (E, One), (E, K), (E, K2)],
            BeamBc::Cantilever => &[(S, One), (S, K), (S, K2), (E, Q), (E, R), (E, K3)],
            BeamBc::ProppedCantilever => &[(S, One), (S, K), (S, K2), (E, One), (E, K2), (E, R)],
            BeamBc::FreeFree => &[(S, Q), (S, R), (S, K3), (E, Q), (E, R), (E, K3)],
        }
    } else {
        match bc {
            BeamBc::SimplySupported => &[(S, One), (E, One), (S, K2), (E, K2)],
            BeamBc::Clamped => &[(S, One), (S, K), (E, One), (E, K)],
            BeamBc::Cantilever => &[(S, One), (S, K), (E, K2), (E, K3)],
            BeamBc::ProppedCantilever => &[(S, One), (S, K), (E, One), (E, K2)],
            BeamBc::FreeFree => &[(S, K2), (S, K3), (E, K2), (E, K3)],
        }
    }
}

/// Boundary term; `Q` and `R` use the identities `q = Ω/k`, `r = Ω/k²`
/// unless `printed` asks for the literal polynomial forms.
fn term(t: Term, k: C, g: f64, w: f64, printed: bool) -> C {
    let g2 = g * g;
    match t {
        One => c(1.0),
        K => k,
        K2 => k * k,
        K3 => k * k * k,
        K4 => k.powu(4),
        Q if printed => k.powu(3) - g2 * k.powu(5),
        R if printed => k * k - g2 * k.powu(4),
        Q => w / k,
        R => w / (k * k),
    }
}

/// Column `f(k)·e^{-s}` for root `k`, evaluated without forming `e^k`.
fn column(spec: &[(Part, Term)], k: C, s: f64, g: f64, w: f64) -> Vec<C> {
    let at_start = (-s).exp();
    let at_end = (k - s).exp();
    spec.iter()
        .map(|&(p, t)| {
            let v = term(t, k, g, w, false);
            match p {
                Part::Start => v * at_start,
                Part::End => v * at_end,
            }
        })
        .collect()
}

/// Even/odd parts in `k` of the column pair `±√z`, both scaled by `e^{-s}`.
fn even_odd(spec: &[(Part, Term)], z: C, s: f64, g: f64, w: f64) -> (Vec<C>, Vec<C>) {
    let k = z.sqrt();
    let fp = column(spec, k, s, g, w);
    let fm = column(spec, -k, s, g, w);
    let ev = fp.iter().zip(&fm).map(|(a, b)| (a + b) / 2.0).collect();
    let od = fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * k)).collect();
    (ev, od)
}

fn real_columns(cols: &[Vec<C>]) -> RealMatrix {
    let n = cols.len();
    let mut m = RealMatrix::from_fn(n, n, |r, j| cols[j][r].re);
    for mut col in m.column_iter_mut() {
        let top = col.amax();
        if top > 0.0 {
            col /= top;
        }
    }
    m
}

/// A real function of `Ω` that changes sign exactly at the natural
/// frequencies and is continuous across root-coalescence points.
/// Returns `(sign, log10|value|)`.
pub fn sign_consistent_det(bc: BeamBc, g: f64, omega_sq: f64) -> Result<(f64, f64)> {
    let spec = rows(bc, g > 0.0);
    if g == 0.0 {
        let s = omega_sq.sqrt();
        let (en, on) = even_odd(spec, c(-s), 0.0, 0.0, omega_sq);
        let kp = s.sqrt();
        let cols = vec![en, on, column(spec, c(kp), kp, 0.0, omega_sq), column(spec, c(-kp), 0.0, 0.0, omega_sq)];
        let (sg, l) = linalg::real_det_sign_log(&real_columns(&cols))?;
        return Ok((-sg, l));
    }
    let r = classify(g, omega_sq);
    let (en, on) = even_odd(spec, c(r.zn), 0.0, g, omega_sq);
    let spread = (r.za - r.zb).norm();
    let close = spread < 0.25 * r.za.norm().max(r.zb.norm());
    if r.complex || close {
        let s = r.za.sqrt().re.max(r.zb.sqrt().re).max(0.0);
        let (ea, oa) = even_odd(spec, r.za, s, g, omega_sq);
        let (eb, ob) = even_odd(spec, r.zb, s, g, omega_sq);
        let dz = r.za - r.zb;
        let sum = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect::<Vec<C>>();
        let dd = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| (x - y) / dz).collect::<Vec<C>>();
        let cols = vec![en, on, sum(&ea, &eb), dd(&ea, &eb), sum(&oa, &ob), dd(&oa, &ob)];
        linalg::real_det_sign_log(&real_columns(&cols))
    } else {
        let ka = r.za.re.sqrt();
        let kb = r.zb.re.sqrt();
        let cols = vec![
            en,
            on,
            column(spec, c(ka), ka, g, omega_sq),
            column(spec, c(-ka), 0.0, g, omega_sq),
            column(spec, c(kb), kb, g, omega_sq),
            column(spec, c(-kb), 0.0, g, omega_sq),
        ];
        let (sg, l) = linalg::real_det_sign_log(&real_columns(&cols))?;
        Ok((-sg, l))
    }
}

/// The frequency matrix as printed: one column per root `k_i`, rows are the
/// boundary conditions at `x̂ = 0` and `x̂ = 1`.
#[derive(Debug, Clone)]
pub struct FrequencyMatrix {
    pub bc: BeamBc,
    pub f: ComplexMatrix,
    /// Factor each column was divided by.
    pub scaling: Vec<f64>,
}

/// Builds the frequency matrix at circular frequency `omega`. Columns with
/// `|k̂| > 30` are multiplied by `e^{-Re k̂}` before max-abs normalisation;
/// neither step moves the roots of the determinant.
pub fn frequency_matrix(model: &BeamModel, bc: BeamBc, omega: f64) -> Result<FrequencyMatrix> {
    let roots = characteristic_roots(model, omega)?;
    let l = model.length;
    let g = model.g / l;
    let w = (omega * model.frequency_scale()).powi(2);
    let spec = rows(bc, g > 0.0);
    let n = spec.len();
    let mut f = ComplexMatrix::zeros(n, n);
    let mut scaling = Vec::with_capacity(n);
    for (j, &kp) in roots.k.iter().enumerate() {
        let k = kp * l;
        let shift = if k.norm() > 30.0 { k.re } else { 0.0 };
        let end = (k - shift).exp();
        let start = (-shift).exp();
        for (r, &(p, t)) in spec.iter().enumerate() {
            let v = term(t, k, g, w, true);
            f[(r, j)] = match p {
                Part::Start => v * start,
                Part::End => v * end,
            };
        }
        let top = f.column(j).iter().fold(0.0_f64, |m, v| m.max(v.norm()));
        let top = if top > 0.0 { top } else { 1.0 };
        for r in 0..n {
            f[(r, j)] /= top;
        }
        scaling.push(top * shift.exp());
    }
    Ok(FrequencyMatrix { bc, f, scaling })
}

/// Oracle frequencies and whether `count` of them were found below the
/// search limit.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleFrequencies {
    pub omega_bar: Vec<f64>,
    pub complete: bool,
}

const SCAN_START: f64 = 0.1;
const SCAN_POINTS: usize = 2000;
const REFINE_TOL: f64 = 1e-10;

/// Natural frequencies `ω̄ < omega_bar_max` from sign changes of the
/// frequency determinant on a geometric grid, refined by bisection.
/// Rigid-body zeros at `ω = 0` are not reported.
pub fn beam_natural_frequencies(
    model: &BeamModel,
    bc: BeamBc,
    omega_bar_max: f64,
    count: usize,
) -> Result<OracleFrequencies> {
    beam_natural_frequencies_with(model, bc, omega_bar_max, count, Execution::default())
}

pub fn beam_natural_frequencies_with(
    model: &BeamModel,
    bc: BeamBc,
    omega_bar_max: f64,
    count: usize,
    exec: Execution,
) -> Result<OracleFrequencies> {
    model.validate()?;
    if !(omega_bar_max.is_finite() && omega_bar_max > SCAN_START) {
        return Err(Error::InvalidInput(format!("search limit must exceed {SCAN_START}")));
    }
    let g = model.g / model.length;
    let ratio = (omega_bar_max / SCAN_START).ln() / SCAN_POINTS as f64;
    let grid: Vec<f64> = (0..=SCAN_POINTS).map(|i| SCAN_START * (ratio * i as f64).exp()).collect();
    let signs = sweep::try_map(exec, &grid, |&wb| sign_consistent_det(bc, g, wb * wb).map(|s| s.0))?;

    let mut brackets = Vec::new();
    for i in 0..SCAN_POINTS {
        if signs[i] == 0.0 {
            brackets.push((grid[i], grid[i]));
        } else if signs[i] * signs[i + 1] < 0.0 {
            brackets.push((grid[i], grid[i + 1]));
        }
    }
    let mut roots = sweep::try_map(exec, &brackets, |&(lo, hi)| refine(bc, g, lo, hi))?;
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs());
    let complete = roots.len() >= count;
    roots.truncate(count);
    Ok(OracleFrequencies { omega_bar: roots, complete })
}

/// First `count` frequencies, widening the search window as needed.
pub fn first_beam_frequencies(model: &BeamModel, bc: BeamBc, count: usize) -> Result<OracleFrequencies> {
    let g = model.g / model.length;
    let n = (count + 1) as f64 * PI;
    let mut limit = 1.5 * n * n * (1.0 + g * g * n * n).sqrt();
    for _ in 0..6 {
        let r = beam_natural_frequencies(model, bc, limit, count)?;
        if r.complete {
            return Ok(r);
        }
        limit *= 2.0;
    }
    beam_natural_frequencies(model, bc, limit, count)
}

fn refine(bc: BeamBc, g: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    if lo == hi {
        return Ok(lo);
    }
    let s_lo = sign_consistent_det(bc, g, lo * lo)?.0;
    while hi - lo > REFINE_TOL * hi {
        let mid = 0.5 * (lo + hi);
        let s = sign_consistent_det(bc, g, mid * mid)?.0;
        if s == 0.0 {
            return Ok(mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `ω̄_n = (nπ)²·√(1 + ĝ²(nπ)²)` for the simply supported beam.
pub fn ss_beam_frequency(g_over_l: f64, n: usize) -> f64 {
    let a = (n as f64 * PI).powi(2);
    a * (1.0 + g_over_l * g_over_l * a).sqrt()
}

/// Navier frequency of the simply supported rectangular plate, mode `(m, n)`.
pub fn ssss_plate_frequency(model: &PlateModel, m: usize, n: usize) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("mode numbers start at 1".into()));
    }
    let a = m as f64 * PI / model.lx;
    let b = n as f64 * PI / model.ly;
    let s = a * a + b * b;
    Ok(model.lx * model.lx * s * (1.0 + model.g * model.g * s).sqrt())
}

/// The lowest `count` Navier frequencies, sorted.
pub fn ssss_plate_spectrum(model: &PlateModel, count: usize) -> Vec<f64> {
    let span = count + 2;
    let mut all: Vec<f64> = (1..=span)
        .flat_map(|m| (1..=span).map(move |n| (m, n)))
        .map(|(m, n)| ssss_plate_frequency(model, m, n).unwrap())
        .collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all.truncate(count);
    all
}
