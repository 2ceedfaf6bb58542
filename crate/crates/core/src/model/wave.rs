//! Eulerian and double-polar bound-state wavefunctions.
//!
//! Normalization constants are fixed numerically (the printed constants carry
//! typos; their ratios to the numerical ones are reported by the verification
//! suite). Constructors do the quadrature once; evaluation is then cheap.

use super::{EulerQN, PolarQN, SectorParams, SystemParams};
use super::coords::{DoublePolarCoords, EulerCoords};
use crate::error::Error;
use crate::oracle::{normalize_numeric, NormalizeKind, PolarAxis};
use crate::specfun::{hyp1f1_terminating, jacobi_p, HalfInt};
use crate::Result;

use num_complex::Complex64;
use std::f64::consts::PI;

/// Radial factor `R(u) = C (au)^{2j+δ1+δ2} e^{-a²u²/2} F(-N/2+j; 2j+δ1+δ2+2; a²u²)`.
#[derive(Debug, Clone)]
pub struct RadialWave {
    pub n: u32,
    pub j: HalfInt,
    pub norm: f64,
    degree: u32,
    exponent: f64,
    series_c: f64,
    a: f64,
}

impl RadialWave {
    pub fn new(n: u32, j: HalfInt, sector: &SectorParams, params: &SystemParams) -> Result<Self> {
        let norm = normalize_numeric(NormalizeKind::Radial { n, j }, sector, params)?;
        let d = sector.delta_sum();
        let q = EulerQN { n, j, m: sector.m, s: sector.s };
        Ok(RadialWave {
            n,
            j,
            norm,
            degree: q.radial_degree(),
            exponent: 2.0 * j.to_f64() + d,
            series_c: 2.0 * j.to_f64() + d + 2.0,
            a: params.a(),
        })
    }

    /// Polynomial part `F(-deg; c; x)` in `x = a²u²`.
    pub fn series(&self, x: f64) -> f64 {
        hyp1f1_terminating(self.degree, self.series_c, x).expect("validated at construction")
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        if u < 0.0 {
            return Err(Error::domain(format!("radial coordinate u = {u} < 0")));
        }
        let au = self.a * u;
        let x = au * au;
        // powf(0, 0) = 1 gives the exact limit at the axis
        Ok(self.norm * au.powf(self.exponent) * (-0.5 * x).exp() * self.series(x))
    }
}

/// Angular factor `Z(α, β, γ)` with the sector phase `(-1)^{(m-s+|m-s|)/2}`
/// applied to the positive numerical constant.
#[derive(Debug, Clone)]
pub struct AngularWave {
    pub j: HalfInt,
    pub norm: f64,
    m: f64,
    s: f64,
    m1: f64,
    m2: f64,
    degree: u32,
    phase: f64,
}

impl AngularWave {
    pub fn new(j: HalfInt, sector: &SectorParams, params: &SystemParams) -> Result<Self> {
        let norm = normalize_numeric(NormalizeKind::Angular { j }, sector, params)?;
        Ok(AngularWave {
            j,
            norm,
            m: sector.m.to_f64(),
            s: sector.s.to_f64(),
            m1: sector.m1,
            m2: sector.m2,
            degree: ((j - sector.m_plus).twice() / 2) as u32,
            phase: sector.z_phase(),
        })
    }

    /// β-dependent part at `t = cos β`, phases and azimuthal factors stripped.
    pub fn reduced(&self, t: f64) -> f64 {
        self.phase
            * self.norm
            * (0.5 * (1.0 + t)).powf(0.5 * self.m1)
            * (0.5 * (1.0 - t)).powf(0.5 * self.m2)
            * jacobi_p(self.degree, self.m2, self.m1, t).expect("validated at construction")
    }

    pub fn eval(&self, alpha: f64, beta: f64, gamma: f64) -> Result<Complex64> {
        if !(0.0..=PI).contains(&beta) {
            return Err(Error::domain(format!("beta = {beta} outside [0, pi]")));
        }
        let phase = Complex64::from_polar(1.0, self.m * alpha + self.s * gamma);
        Ok(self.reduced(beta.cos()) * phase)
    }
}

/// One circular-oscillator mode `Φ(ρ) = C x^{(|M|+δ)/2} e^{-x/2} F(-N_a; |M|+δ+1; x)`,
/// `x = a²ρ²`.
#[derive(Debug, Clone)]
pub struct PolarRadialMode {
    pub n_a: u32,
    pub norm: f64,
    index: f64,
    a: f64,
}

impl PolarRadialMode {
    pub fn new(
        n_a: u32,
        axis: PolarAxis,
        sector: &SectorParams,
        params: &SystemParams,
    ) -> Result<Self> {
        let norm = normalize_numeric(NormalizeKind::Polar { n_a, axis }, sector, params)?;
        Ok(PolarRadialMode { n_a, norm, index: axis.index(sector), a: params.a() })
    }

    /// Evaluate directly in `x = a²ρ²`.
    pub fn eval_x(&self, x: f64) -> f64 {
        self.norm
            * x.powf(0.5 * self.index)
            * (-0.5 * x).exp()
            * hyp1f1_terminating(self.n_a, self.index + 1.0, x).expect("validated at construction")
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        if rho < 0.0 {
            return Err(Error::domain(format!("polar radius rho = {rho} < 0")));
        }
        Ok(self.eval_x((self.a * rho).powi(2)))
    }
}

/// A full Eulerian bound state `ψ = R(u) Z(α, β, γ)`.
#[derive(Debug, Clone)]
pub struct EulerWave {
    pub qn: EulerQN,
    pub radial: RadialWave,
    pub angular: AngularWave,
}

impl EulerWave {
    pub fn new(qn: &EulerQN, sector: &SectorParams, params: &SystemParams) -> Result<Self> {
        if qn.m != sector.m || qn.s != sector.s {
            return Err(Error::domain(
                "euler quantum numbers belong to a different sector".to_string(),
            ));
        }
        Ok(EulerWave {
            qn: *qn,
            radial: RadialWave::new(qn.n, qn.j, sector, params)?,
            angular: AngularWave::new(qn.j, sector, params)?,
        })
    }

    pub fn eval(&self, c: &EulerCoords) -> Result<Complex64> {
        Ok(self.radial.eval(c.u)? * self.angular.eval(c.alpha, c.beta, c.gamma)?)
    }
}

/// A full double-polar bound state
/// `ψ = (1/2π) Φ1(ρ1) Φ2(ρ2) e^{iM1φ1} e^{iM2φ2}`.
#[derive(Debug, Clone)]
pub struct PolarWave {
    pub qn: PolarQN,
    pub mode1: PolarRadialMode,
    pub mode2: PolarRadialMode,
    big_m1: f64,
    big_m2: f64,
}

impl PolarWave {
    pub fn new(qn: &PolarQN, sector: &SectorParams, params: &SystemParams) -> Result<Self> {
        if qn.big_m1 != sector.big_m1 || qn.big_m2 != sector.big_m2 {
            return Err(Error::domain(
                "polar quantum numbers belong to a different sector".to_string(),
            ));
        }
        Ok(PolarWave {
            qn: *qn,
            mode1: PolarRadialMode::new(qn.n1, PolarAxis::First, sector, params)?,
            mode2: PolarRadialMode::new(qn.n2, PolarAxis::Second, sector, params)?,
            big_m1: f64::from(qn.big_m1),
            big_m2: f64::from(qn.big_m2),
        })
    }

    pub fn eval(&self, c: &DoublePolarCoords) -> Result<Complex64> {
        let radial = self.mode1.eval(c.rho1)? * self.mode2.eval(c.rho2)? / (2.0 * PI);
        let phase = Complex64::from_polar(1.0, self.big_m1 * c.phi1 + self.big_m2 * c.phi2);
        Ok(radial * phase)
    }
}

/// One-shot evaluation of an Eulerian state (builds the normalization, then
/// evaluates; use [`EulerWave`] for batches).
pub fn psi_euler(
    coords: &EulerCoords,
    qn: &EulerQN,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<Complex64> {
    EulerWave::new(qn, sector, params)?.eval(coords)
}

/// One-shot evaluation of a double-polar state.
pub fn psi_polar(
    coords: &DoublePolarCoords,
    qn: &PolarQN,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<Complex64> {
    PolarWave::new(qn, sector, params)?.eval(coords)
}
