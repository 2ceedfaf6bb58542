//! Physical parameters, quantum-number bookkeeping, coordinate systems,
//! wavefunctions and the spectra of the commuting integrals of motion.

mod coords;
mod wave;

pub use coords::{ks_map, DoublePolarCoords, EulerCoords, KsImage, Point4, SpheroidalCoords};
pub use wave::{psi_euler, psi_polar, AngularWave, EulerWave, PolarRadialMode, PolarWave, RadialWave};

use crate::error::Error;
use crate::specfun::{lgamma_pos, HalfInt};
use crate::Result;

use std::f64::consts::PI;

/// Mass, frequency, action quantum and the two singular-term strengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub mu: f64,
    pub omega: f64,
    pub hbar: f64,
    /// strength of the c/(u0²+u1²) term, >= 0
    pub c1: f64,
    /// strength of the c/(u2²+u3²) term, >= 0
    pub c2: f64,
}

impl SystemParams {
    pub fn new(mu: f64, omega: f64, hbar: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(mu > 0.0 && omega > 0.0 && hbar > 0.0) {
            return Err(Error::InvalidSector(format!(
                "mu, omega, hbar must be positive, got ({mu}, {omega}, {hbar})"
            )));
        }
        if c1 < 0.0 || c2 < 0.0 {
            return Err(Error::InvalidSector(format!(
                "singular strengths must be nonnegative, got ({c1}, {c2})"
            )));
        }
        Ok(SystemParams { mu, omega, hbar, c1, c2 })
    }

    /// Natural units mu = omega = hbar = 1.
    pub fn natural(c1: f64, c2: f64) -> Result<Self> {
        SystemParams::new(1.0, 1.0, 1.0, c1, c2)
    }

    /// Inverse oscillator length a = sqrt(mu omega / hbar).
    pub fn a(&self) -> f64 {
        (self.mu * self.omega / self.hbar).sqrt()
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams { mu: 1.0, omega: 1.0, hbar: 1.0, c1: 0.0, c2: 0.0 }
    }
}

/// Conserved azimuthal charges (m, s) together with the derived sector data:
/// the integer pair (M1, M2) = (m+s, m-s), the singularity shifts delta_a and
/// the modified indices m1, m2, m_plus, m_minus.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorParams {
    pub m: HalfInt,
    pub s: HalfInt,
    pub big_m1: i32,
    pub big_m2: i32,
    pub delta1: f64,
    pub delta2: f64,
    /// m1 = |M1| + delta1
    pub m1: f64,
    /// m2 = |M2| + delta2
    pub m2: f64,
    /// (|M1| + |M2|)/2, exact
    pub m_plus: HalfInt,
    /// (|M1| - |M2|)/2, exact
    pub m_minus: HalfInt,
}

impl SectorParams {
    pub fn delta_sum(&self) -> f64 {
        self.delta1 + self.delta2
    }

    pub fn m_plus_f64(&self) -> f64 {
        self.m_plus.to_f64()
    }

    pub fn m_minus_f64(&self) -> f64 {
        self.m_minus.to_f64()
    }

    /// Sign carried by the angular normalization constant,
    /// `(-1)^{(m-s+|m-s|)/2}` = (-1)^{max(M2, 0)}.
    pub fn z_phase(&self) -> f64 {
        if self.big_m2.max(0) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Build the sector for azimuthal quantum numbers (m, s).
///
/// delta_a = sqrt(M_a² + 2 mu c_a / hbar²) - |M_a|, exactly zero when c_a = 0.
pub fn sector(params: &SystemParams, m: HalfInt, s: HalfInt) -> Result<SectorParams> {
    if !(m + s).is_integer() {
        return Err(Error::InvalidSector(format!(
            "m + s must be an integer; got m = {m}, s = {s}"
        )));
    }
    let big_m1 = (m + s).as_integer().unwrap();
    let big_m2 = (m - s).as_integer().unwrap();
    let shift = |big_m: i32, c: f64| -> f64 {
        let am = f64::from(big_m.abs());
        if c == 0.0 {
            0.0
        } else {
            (am * am + 2.0 * params.mu * c / (params.hbar * params.hbar)).sqrt() - am
        }
    };
    let delta1 = shift(big_m1, params.c1);
    let delta2 = shift(big_m2, params.c2);
    Ok(SectorParams {
        m,
        s,
        big_m1,
        big_m2,
        delta1,
        delta2,
        m1: f64::from(big_m1.abs()) + delta1,
        m2: f64::from(big_m2.abs()) + delta2,
        m_plus: HalfInt::from_twice(big_m1.abs() + big_m2.abs()),
        m_minus: HalfInt::from_twice(big_m1.abs() - big_m2.abs()),
    })
}

/// Quantum numbers of an Eulerian bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EulerQN {
    pub n: u32,
    pub j: HalfInt,
    pub m: HalfInt,
    pub s: HalfInt,
}

impl EulerQN {
    /// Degree of the Jacobi polynomial, j - m_plus.
    pub fn jacobi_degree(&self, sector: &SectorParams) -> u32 {
        ((self.j - sector.m_plus).twice() / 2) as u32
    }

    /// Degree of the radial confluent series, N/2 - j.
    pub fn radial_degree(&self) -> u32 {
        ((i32::try_from(self.n).unwrap() - self.j.twice()) / 2) as u32
    }
}

/// Quantum numbers of a double-polar bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarQN {
    pub n1: u32,
    pub n2: u32,
    pub big_m1: i32,
    pub big_m2: i32,
}

impl PolarQN {
    /// Principal quantum number N = 2N1 + 2N2 + |M1| + |M2|.
    pub fn principal_n(&self) -> u32 {
        2 * self.n1 + 2 * self.n2 + self.big_m1.unsigned_abs() + self.big_m2.unsigned_abs()
    }
}

/// Bound-state energy E_N = hbar omega (N + delta1 + delta2 + 2).
pub fn energy(params: &SystemParams, n: u32, sector: &SectorParams) -> f64 {
    params.hbar * params.omega * (f64::from(n) + sector.delta_sum() + 2.0)
}

/// Eigenvalue of the Eulerian integral of motion,
/// lambda = (j + (d1+d2)/2)(j + (d1+d2)/2 + 1).
pub fn lambda_eigenvalue(j: HalfInt, sector: &SectorParams) -> f64 {
    let x = j.to_f64() + 0.5 * sector.delta_sum();
    x * (x + 1.0)
}

/// Dimensionless eigenvalue of the double-polar integral of motion,
/// `Ω̃ = 2(N1 - N2) + m1 - m2`. The physical eigenvalue is `Ω = 2a² Ω̃`.
///
/// Rederived from the N1, N2 definitions by eliminating the energy; the
/// printed eigenvalue differs (see `printed_omega_eigenvalue`).
pub fn omega_tilde(polar: &PolarQN, sector: &SectorParams) -> f64 {
    2.0 * (f64::from(polar.n1) - f64::from(polar.n2)) + sector.m1 - sector.m2
}

/// Physical Omega eigenvalue, 2 a² Ω̃.
pub fn omega_physical(polar: &PolarQN, sector: &SectorParams, params: &SystemParams) -> f64 {
    2.0 * params.a().powi(2) * omega_tilde(polar, sector)
}

/// The eigenvalue expression exactly as printed,
/// `(2μω/ħ)(2N1 - 2N2 - |M1| + |M2| - δ1 + δ2)`. Reported for the typo
/// ledger; not used by any computation.
pub fn printed_omega_eigenvalue(
    polar: &PolarQN,
    sector: &SectorParams,
    params: &SystemParams,
) -> f64 {
    2.0 * params.mu * params.omega / params.hbar
        * (2.0 * f64::from(polar.n1) - 2.0 * f64::from(polar.n2)
            - f64::from(polar.big_m1.abs())
            + f64::from(polar.big_m2.abs())
            - sector.delta1
            + sector.delta2)
}

/// Eulerian states of the level-N multiplet: j = m_plus, m_plus+1, ..., N/2,
/// ascending. Empty when N/2 - m_plus is not a nonnegative integer.
pub fn list_euler_states(n: u32, sector: &SectorParams) -> Vec<EulerQN> {
    let n_i = i32::try_from(n).unwrap();
    let half_n = HalfInt::from_twice(n_i); // N/2
    if !half_n.integer_above(sector.m_plus) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut j = sector.m_plus;
    while j <= half_n {
        out.push(EulerQN { n, j, m: sector.m, s: sector.s });
        j = j + HalfInt::from_int(1);
    }
    out
}

/// Double-polar states of the level-N multiplet: N1 = 0 ... (N-|M1|-|M2|)/2,
/// ascending, with N2 fixed by the level constraint.
pub fn list_polar_states(n: u32, sector: &SectorParams) -> Vec<PolarQN> {
    let n_i = i32::try_from(n).unwrap();
    let t = n_i - sector.big_m1.abs() - sector.big_m2.abs();
    if t < 0 || t % 2 != 0 {
        return Vec::new();
    }
    let half = (t / 2) as u32;
    (0..=half)
        .map(|n1| PolarQN {
            n1,
            n2: half - n1,
            big_m1: sector.big_m1,
            big_m2: sector.big_m2,
        })
        .collect()
}

/// Multiplet dimension, N/2 - m_plus + 1 (0 when the sector is empty at N).
pub fn multiplet_dim(n: u32, sector: &SectorParams) -> usize {
    list_euler_states(n, sector).len()
}

// ---------------------------------------------------------------------------
// Printed normalization constants. The artifact normalizes numerically; these
// are evaluated only to report their ratio to the numerical constants.
// ---------------------------------------------------------------------------

/// Magnitude of the printed angular constant N_jms (its phase is
/// [`SectorParams::z_phase`]).
pub fn printed_n_jms(j: HalfInt, sector: &SectorParams) -> f64 {
    let jf = j.to_f64();
    let d = sector.delta_sum();
    let g = (j - sector.m_plus).twice() as f64 / 2.0;
    (0.5 * ((2.0 * jf + d + 2.0).ln() + lgamma_pos(g + 1.0)
        + lgamma_pos(jf + sector.m_plus_f64() + d + 1.0)
        - (16.0 * PI * PI).ln()
        - lgamma_pos(jf + sector.m_minus_f64() + sector.delta1 + 1.0)
        - lgamma_pos(jf - sector.m_minus_f64() + sector.delta2 + 1.0)))
    .exp()
}

/// Printed radial constant C_Nj.
pub fn printed_c_nj(n: u32, j: HalfInt, sector: &SectorParams, params: &SystemParams) -> f64 {
    let jf = j.to_f64();
    let d = sector.delta_sum();
    let deg = f64::from(n) / 2.0 - jf;
    4.0 * params.a().powi(2)
        * (0.5 * (lgamma_pos(f64::from(n) / 2.0 + jf + d + 2.0) - lgamma_pos(deg + 1.0))
            - lgamma_pos(2.0 * jf + d + 2.0))
        .exp()
}

/// Printed polar-mode prefactor (which agrees with the unit-norm constant).
pub fn printed_phi_prefactor(na: u32, big_ma: i32, delta_a: f64, params: &SystemParams) -> f64 {
    let ma = f64::from(big_ma.abs()) + delta_a;
    params.a()
        * (0.5 * (2.0_f64.ln() + lgamma_pos(f64::from(na) + ma + 1.0) - lgamma_pos(f64::from(na) + 1.0))
            - lgamma_pos(ma + 1.0))
        .exp()
}

/// Printed hypermomentum orthogonality constant 2a²/(2j + δ1 + δ2 + 2);
/// the measured constant is a²/(2j + δ1 + δ2 + 1).
pub fn printed_hypermomentum_constant(
    j: HalfInt,
    sector: &SectorParams,
    params: &SystemParams,
) -> f64 {
    2.0 * params.a().powi(2) / (2.0 * j.to_f64() + sector.delta_sum() + 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn sector_shifts() {
        let p = SystemParams::default();
        let sec = sector(&p, h(2), h(0)).unwrap();
        assert_eq!((sec.delta1, sec.delta2), (0.0, 0.0));
        assert_eq!((sec.m1, sec.m2), (1.0, 1.0));

        // 2 mu c1 / hbar^2 = 3, M1 = 1 -> delta1 = sqrt(4) - 1 = 1
        let p = SystemParams::natural(1.5, 0.0).unwrap();
        let sec = sector(&p, h(2), h(0)).unwrap();
        assert_abs_diff_eq!(sec.delta1, 1.0, epsilon = 1e-15);
        assert_eq!(sec.delta2, 0.0);

        // m = s = 1/2, 2 mu c2 / hbar^2 = 4 -> M2 = 0, delta2 = 2
        let p = SystemParams::natural(0.0, 2.0).unwrap();
        let sec = sector(&p, h(1), h(1)).unwrap();
        assert_eq!(sec.big_m2, 0);
        assert_abs_diff_eq!(sec.delta2, 2.0, epsilon = 1e-15);

        assert!(sector(&p, h(1), h(0)).is_err()); // m + s not an integer
    }

    #[test]
    fn energy_spectrum() {
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        assert_eq!(energy(&p, 0, &sec), 2.0);
        for n in 0..8 {
            assert_abs_diff_eq!(
                energy(&p, n + 1, &sec) - energy(&p, n, &sec),
                p.hbar * p.omega,
                epsilon = 1e-15
            );
        }
        // N = 4, delta1 = 1, delta2 = 0.5 -> 7.5 hbar omega
        let sec = SectorParams { delta1: 1.0, delta2: 0.5, ..sector(&p, h(0), h(0)).unwrap() };
        assert_abs_diff_eq!(energy(&p, 4, &sec), 7.5, epsilon = 1e-14);
    }

    #[test]
    fn lambda_values() {
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        assert_eq!(lambda_eigenvalue(h(0), &sec), 0.0);
        assert_eq!(lambda_eigenvalue(h(2), &sec), 2.0);
        let sec = SectorParams { delta1: 0.6, delta2: 0.4, ..sec };
        assert_abs_diff_eq!(lambda_eigenvalue(h(1), &sec), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn omega_tilde_values() {
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let q = PolarQN { n1: 1, n2: 1, big_m1: 0, big_m2: 0 };
        assert_eq!(omega_tilde(&q, &sec), 0.0);
        let q = PolarQN { n1: 1, n2: 0, big_m1: 0, big_m2: 0 };
        assert_eq!(omega_tilde(&q, &sec), 2.0);
        // N1 = N2 = 0, m1 = 3, m2 = 1 -> 2
        let sec = SectorParams { m1: 3.0, m2: 1.0, ..sec };
        let q = PolarQN { n1: 0, n2: 0, big_m1: 2, big_m2: 0 };
        assert_eq!(omega_tilde(&q, &sec), 2.0);
    }

    #[test]
    fn state_lists() {
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let states = list_euler_states(0, &sec);
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].j, h(0));
        assert!(list_euler_states(1, &sec).is_empty()); // parity mismatch

        let sec = sector(&p, h(2), h(0)).unwrap();
        let js: Vec<HalfInt> = list_euler_states(4, &sec).iter().map(|q| q.j).collect();
        assert_eq!(js, vec![h(2), h(4)]);

        let ps = list_polar_states(4, &sec);
        assert_eq!(ps.len(), 2);
        assert_eq!((ps[0].n1, ps[0].n2), (0, 1));
        assert_eq!((ps[1].n1, ps[1].n2), (1, 0));
        for q in &ps {
            assert_eq!(q.principal_n(), 4);
        }

        // dimension match between the two separations
        for (tm, ts) in [(0, 0), (2, 0), (1, 1), (3, -1), (4, 2)] {
            let sec = sector(&p, h(tm), h(ts)).unwrap();
            for n in 0..=9 {
                assert_eq!(
                    list_euler_states(n, &sec).len(),
                    list_polar_states(n, &sec).len()
                );
            }
        }
    }

    #[test]
    fn multiplet_count_formula() {
        let p = SystemParams::default();
        for (tm, ts, n) in [(0, 0, 6u32), (2, 2, 8), (1, 1, 5), (3, 1, 7)] {
            let sec = sector(&p, h(tm), h(ts)).unwrap();
            let count = multiplet_dim(n, &sec);
            let want = (i32::try_from(n).unwrap() - sec.m_plus.twice()) / 2 + 1;
            assert_eq!(count, usize::try_from(want.max(0)).unwrap());
        }
    }

    #[test]
    fn oscillator_degeneracy_by_sector_enumeration() {
        // delta = 0: summing multiplet sizes over all sectors recovers the
        // 4D oscillator degeneracy, counted independently as the number of
        // quadruples (n0..n3) with n0+n1+n2+n3 = N.
        let p = SystemParams::default();
        for n in 0..=8u32 {
            let mut total = 0usize;
            let n_i = i32::try_from(n).unwrap();
            for tm in -n_i..=n_i {
                for ts in -n_i..=n_i {
                    if (tm + ts) % 2 != 0 {
                        continue;
                    }
                    let sec = sector(&p, h(tm), h(ts)).unwrap();
                    total += multiplet_dim(n, &sec);
                }
            }
            let mut brute = 0usize;
            for a in 0..=n {
                for b in 0..=n - a {
                    for c in 0..=n - a - b {
                        let _d = n - a - b - c;
                        brute += 1;
                    }
                }
            }
            assert_eq!(total, brute, "degeneracy mismatch at N={n}");
            let formula = (n + 1) * (n + 2) * (n + 3) / 6;
            assert_eq!(brute, formula as usize);
        }
    }

    #[test]
    fn printed_constants_evaluate() {
        let p = SystemParams::natural(0.5, 2.0).unwrap();
        let sec = sector(&p, h(0), h(0)).unwrap();
        assert!(printed_n_jms(h(2), &sec) > 0.0);
        assert!(printed_c_nj(4, h(2), &sec, &p) > 0.0);
        assert_relative_eq!(
            printed_hypermomentum_constant(h(0), &sec, &p),
            2.0 / (sec.delta_sum() + 2.0),
            max_relative = 1e-14
        );
    }
}
