//! Gauss–Lobatto–Legendre nodes and weights on [-1, 1].

use crate::error::{Error, Result};

/// GLL abscissas (ascending) and weights of order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl NodeGrid {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Applies the quadrature rule to `f`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        // endpoint value P_n'(±1) = (±1)^(n+1) n(n+1)/2
        x.powi(n as i32 + 1) * nf * (nf + 1.0) / 2.0
    } else {
        nf * (p0 - x * p1) / (1.0 - x * x)
    };
    (p1, dp)
}

/// Builds the `N`-point GLL rule.
///
/// Interior nodes are roots of `P'_{N-1}`, found by Newton from
/// Chebyshev–Gauss–Lobatto guesses; weights are `2 / (N(N-1) P_{N-1}(ξ)²)`.
pub fn gll_grid(n: usize) -> Result<NodeGrid> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("GLL order must be at least 3, got {n}")));
    }
    let m = n - 1;
    let mf = m as f64;
    let mut nodes = vec![0.0; n];
    nodes[0] = -1.0;
    nodes[m] = 1.0;
    for i in 1..m {
        let mut x = -(std::f64::consts::PI * i as f64 / mf).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            // (1-x²) P'' = 2x P' - m(m+1) P
            let d2p = (2.0 * x * dp - mf * (mf + 1.0) * p) / (1.0 - x * x);
            let step = dp / d2p;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
    }
    // enforce exact antisymmetry
    for i in 0..n / 2 {
        let v = 0.5 * (nodes[m - i] - nodes[i]);
        nodes[i] = -v;
        nodes[m - i] = v;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _) = legendre(m, x);
            2.0 / (n as f64 * mf * p * p)
        })
        .collect();
    Ok(NodeGrid { nodes, weights })
}
