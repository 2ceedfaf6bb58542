//! Gaussian quadrature rules via Golub–Welsch.
//!
//! Nodes and weights come from the eigendecomposition of the orthogonal
//! polynomial recurrence matrix; weights are `μ₀` times the squared first
//! eigenvector components.

use super::eigen::{symtri_eigen_first_components, SymTriMatrix};
use crate::error::Error;
use crate::specfun::{lgamma_pos, Kahan};
use crate::Result;

/// Weight-function family of a rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    /// weight 1 on [-1, 1]
    Legendre,
    /// weight x^alpha e^{-x} on [0, ∞)
    Laguerre { alpha: f64 },
    /// weight (1-x)^alpha (1+x)^beta on [-1, 1]
    Jacobi { alpha: f64, beta: f64 },
}

/// Nodes and weights of a Gaussian rule; exact for polynomials of degree
/// 2n-1 against the kind's weight function.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `Σ w_i f(x_i)`, compensated.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut sum = Kahan::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            sum.add(w * f(x));
        }
        sum.value()
    }
}

/// Total mass of the weight function, `μ₀ = ∫ w(x) dx`.
fn weight_mass(kind: QuadratureKind) -> f64 {
    match kind {
        QuadratureKind::Legendre => 2.0,
        QuadratureKind::Laguerre { alpha } => lgamma_pos(alpha + 1.0).exp(),
        QuadratureKind::Jacobi { alpha, beta } => ((alpha + beta + 1.0) * 2.0_f64.ln()
            + lgamma_pos(alpha + 1.0)
            + lgamma_pos(beta + 1.0)
            - lgamma_pos(alpha + beta + 2.0))
        .exp(),
    }
}

/// Recurrence matrix of the monic orthogonal polynomials, in symmetrized
/// (Jacobi-matrix) form.
fn recurrence_matrix(kind: QuadratureKind, n: usize) -> Result<SymTriMatrix> {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1.min(n)];
    off.resize(n.saturating_sub(1), 0.0);
    match kind {
        QuadratureKind::Legendre => {
            for (k, o) in off.iter_mut().enumerate() {
                let m = (k + 1) as f64;
                *o = m / (4.0 * m * m - 1.0).sqrt();
            }
        }
        QuadratureKind::Laguerre { alpha } => {
            if alpha <= -1.0 {
                return Err(Error::domain(format!(
                    "golub_welsch: Laguerre alpha = {alpha} must be > -1"
                )));
            }
            for (k, d) in diag.iter_mut().enumerate() {
                *d = 2.0 * k as f64 + alpha + 1.0;
            }
            for (k, o) in off.iter_mut().enumerate() {
                let m = (k + 1) as f64;
                *o = (m * (m + alpha)).sqrt();
            }
        }
        QuadratureKind::Jacobi { alpha, beta } => {
            if alpha <= -1.0 || beta <= -1.0 {
                return Err(Error::domain(format!(
                    "golub_welsch: Jacobi exponents ({alpha}, {beta}) must be > -1"
                )));
            }
            let (a, b) = (alpha, beta);
            diag[0] = (b - a) / (a + b + 2.0);
            for (k, d) in diag.iter_mut().enumerate().skip(1) {
                let m = k as f64;
                *d = (b * b - a * a) / ((2.0 * m + a + b) * (2.0 * m + a + b + 2.0));
            }
            for (k, o) in off.iter_mut().enumerate() {
                let m = (k + 1) as f64;
                *o = if k == 0 {
                    2.0 / (a + b + 2.0) * ((a + 1.0) * (b + 1.0) / (a + b + 3.0)).sqrt()
                } else {
                    let q = 2.0 * m + a + b;
                    2.0 / q
                        * (m * (m + a) * (m + b) * (m + a + b)
                            / ((q + 1.0) * (q - 1.0)))
                        .sqrt()
                };
            }
        }
    }
    SymTriMatrix::new(diag, off)
}

/// Build an n-point Gaussian rule of the given kind.
pub fn golub_welsch(kind: QuadratureKind, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::domain("golub_welsch: order must be >= 1"));
    }
    let t = recurrence_matrix(kind, n)?;
    let (nodes, firsts) = symtri_eigen_first_components(&t)?;
    let mass = weight_mass(kind);
    let weights = firsts.iter().map(|z| mass * z * z).collect();
    Ok(QuadratureRule { kind, nodes, weights })
}
