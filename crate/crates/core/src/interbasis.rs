//! Expansion coefficients connecting the double-polar and Eulerian bases.
//!
//! Two independent closed forms are provided: a direct ₃F₂ expression and an
//! analytically continued SU(2) Clebsch-Gordan coefficient. Both refer to the
//! unit-normalized wavefunctions, so they also coincide, sign included, with
//! the brute quadrature overlaps of [`crate::oracle`].
//!
//! The coefficient table `W` maps Eulerian components to double-polar states,
//! `ψ_{N1 N2} = Σ_j W[N1][j] ψ_{N j}`; it is real orthogonal, so the inverse
//! expansion is the transpose.

use crate::error::Error;
use crate::model::{list_euler_states, list_polar_states, EulerQN, PolarQN, SectorParams, SystemParams};
use crate::oracle::w_table_quadrature;
use crate::specfun::{clebsch_gordan_continued, hyp3f2_signlog, lgamma_pos};
use crate::Result;

/// Backend used to fill a [`CoefficientTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ThreeF2,
    Cg,
    Quadrature,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::ThreeF2 => "3f2",
            Method::Cg => "cg",
            Method::Quadrature => "quad",
        }
    }
}

fn check_pair(polar: &PolarQN, euler: &EulerQN, sector: &SectorParams) -> Result<()> {
    if euler.m != sector.m || euler.s != sector.s {
        return Err(Error::domain(
            "euler state belongs to a different sector".to_string(),
        ));
    }
    if polar.big_m1 != sector.big_m1 || polar.big_m2 != sector.big_m2 {
        return Err(Error::domain(
            "polar state belongs to a different sector".to_string(),
        ));
    }
    if polar.principal_n() != euler.n {
        return Err(Error::domain(format!(
            "states live at different levels: N_polar = {}, N_euler = {}",
            polar.principal_n(),
            euler.n
        )));
    }
    if !euler.j.integer_above(sector.m_plus)
        || !crate::specfun::HalfInt::from_twice(i32::try_from(euler.n).unwrap())
            .integer_above(euler.j)
    {
        return Err(Error::domain(format!(
            "inadmissible euler state: N = {}, j = {}",
            euler.n, euler.j
        )));
    }
    Ok(())
}

/// The ₃F₂ closed form of the expansion coefficient
/// `W^{jms}_{N1 N2 M1 M2}`.
pub fn w_coeff_3f2(polar: &PolarQN, euler: &EulerQN, sector: &SectorParams) -> Result<f64> {
    check_pair(polar, euler, sector)?;
    let j = euler.j.to_f64();
    let d = sector.delta_sum();
    let (m1, m2) = (sector.m1, sector.m2);
    let (mp, mm) = (sector.m_plus_f64(), sector.m_minus_f64());
    let half_n = f64::from(euler.n) / 2.0;
    let g = f64::from(euler.jacobi_degree(sector));
    let n_r = f64::from(euler.radial_degree());
    let (n1, n2) = (f64::from(polar.n1), f64::from(polar.n2));

    let ln_root1 = 0.5
        * ((2.0 * j + d + 1.0).ln() + lgamma_pos(n1 + m1 + 1.0) + lgamma_pos(n2 + m2 + 1.0)
            - lgamma_pos(n1 + 1.0)
            - lgamma_pos(n2 + 1.0)
            - lgamma_pos(n_r + 1.0)
            - lgamma_pos(g + 1.0)
            - lgamma_pos(j - mm + sector.delta2 + 1.0));
    let ln_mid = lgamma_pos(half_n - mp + 1.0) - lgamma_pos(m1 + 1.0);
    let ln_root2 = 0.5
        * (lgamma_pos(j + mm + sector.delta1 + 1.0) + lgamma_pos(j + mp + d + 1.0)
            - lgamma_pos(half_n + j + d + 2.0));
    let series = hyp3f2_signlog(-n1, -g, j + mp + d + 1.0, m1 + 1.0, mp - half_n)?;
    Ok(sector.z_phase() * series.sign * (series.ln + ln_root1 + ln_mid + ln_root2).exp())
}

/// The same coefficient as an analytically continued Clebsch-Gordan
/// coefficient:
/// `W = (-1)^{N1 + (m-s+|m-s|)/2} C^{c γ}_{a α; b β}` with
/// `a = (N - 2m₋ + 2δ2)/4`, `α = (m2 + N2 - N1)/2`,
/// `b = (N + 2m₋ + 2δ1)/4`, `β = (m1 + N1 - N2)/2`,
/// `c = j + (δ1+δ2)/2`, `γ = (m1+m2)/2`.
pub fn w_coeff_cg(polar: &PolarQN, euler: &EulerQN, sector: &SectorParams) -> Result<f64> {
    check_pair(polar, euler, sector)?;
    let n = f64::from(euler.n);
    let (n1, n2) = (f64::from(polar.n1), f64::from(polar.n2));
    let (m1, m2) = (sector.m1, sector.m2);
    let mm = sector.m_minus_f64();
    let a = (n - 2.0 * mm + 2.0 * sector.delta2) / 4.0;
    let alpha = (m2 + n2 - n1) / 2.0;
    let b = (n + 2.0 * mm + 2.0 * sector.delta1) / 4.0;
    let beta = (m1 + n1 - n2) / 2.0;
    let c = euler.j.to_f64() + 0.5 * sector.delta_sum();
    let gamma = (m1 + m2) / 2.0;
    let exponent = i64::from(polar.n1) + i64::from(sector.big_m2.max(0));
    let phase = if exponent % 2 == 0 { 1.0 } else { -1.0 };
    Ok(phase * clebsch_gordan_continued(a, alpha, b, beta, c, gamma)?)
}

/// Coefficient of the inverse expansion `ψ_{Njms} = Σ_{N1} W̃ ψ_{N1 N2}`.
/// Orthogonality forces `W̃ = Wᵀ`.
pub fn w_inverse(euler: &EulerQN, polar: &PolarQN, sector: &SectorParams) -> Result<f64> {
    w_coeff_cg(polar, euler, sector)
}

/// The full interbasis matrix for one level and sector.
///
/// Rows are indexed by the polar states (ascending N1), columns by the
/// Eulerian states (ascending j).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub n: u32,
    pub sector: SectorParams,
    pub method: Method,
    pub polar_states: Vec<PolarQN>,
    pub euler_states: Vec<EulerQN>,
    pub values: Vec<Vec<f64>>,
    /// last node-doubling delta of the quadrature backend, when used
    pub quadrature_delta: Option<f64>,
}

impl CoefficientTable {
    pub fn dim(&self) -> usize {
        self.euler_states.len()
    }

    /// `max(‖WWᵀ - I‖_max, ‖WᵀW - I‖_max)`.
    pub fn orthogonality_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..dim {
            for k in 0..dim {
                let want = if i == k { 1.0 } else { 0.0 };
                let rows: f64 = (0..dim).map(|c| self.values[i][c] * self.values[k][c]).sum();
                let cols: f64 = (0..dim).map(|r| self.values[r][i] * self.values[r][k]).sum();
                worst = worst.max((rows - want).abs()).max((cols - want).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CoefficientTable) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Copy of `self` with each column's global sign aligned to `reference`
    /// (numerically normalized states carry an undetermined overall sign).
    pub fn aligned_to(&self, reference: &CoefficientTable) -> CoefficientTable {
        let mut out = self.clone();
        for c in 0..self.dim() {
            let dot: f64 = (0..self.dim())
                .map(|r| self.values[r][c] * reference.values[r][c])
                .sum();
            if dot < 0.0 {
                for row in &mut out.values {
                    row[c] = -row[c];
                }
            }
        }
        out
    }
}

/// Build the coefficient table with the chosen backend. An empty multiplet
/// yields an empty table, not an error.
pub fn coefficient_table(
    n: u32,
    sector: &SectorParams,
    params: &SystemParams,
    method: Method,
) -> Result<CoefficientTable> {
    let euler_states = list_euler_states(n, sector);
    let polar_states = list_polar_states(n, sector);
    let (values, quadrature_delta) = match method {
        Method::ThreeF2 | Method::Cg => {
            let f = if method == Method::ThreeF2 { w_coeff_3f2 } else { w_coeff_cg };
            let mut values = Vec::with_capacity(polar_states.len());
            for p in &polar_states {
                let mut row = Vec::with_capacity(euler_states.len());
                for e in &euler_states {
                    row.push(f(p, e, sector)?);
                }
                values.push(row);
            }
            (values, None)
        }
        Method::Quadrature => {
            let (values, delta) = w_table_quadrature(n, sector, params)?;
            (values, Some(delta))
        }
    };
    Ok(CoefficientTable {
        n,
        sector: sector.clone(),
        method,
        polar_states,
        euler_states,
        values,
        quadrature_delta,
    })
}
