//! The three coordinate systems on R⁴ and the Kustaanheimo-Stiefel map.

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;
const FOUR_PI: f64 = 4.0 * PI;

fn wrap(x: f64, period: f64) -> f64 {
    let mut y = x % period;
    if y < 0.0 {
        y += period;
    }
    y
}

/// A point of R⁴ in Cartesian coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point4 {
    pub u: [f64; 4],
}

impl Point4 {
    pub fn new(u0: f64, u1: f64, u2: f64, u3: f64) -> Self {
        Point4 { u: [u0, u1, u2, u3] }
    }

    pub fn norm_sq(&self) -> f64 {
        self.u.iter().map(|x| x * x).sum()
    }

    pub fn max_abs_diff(&self, other: &Point4) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Radius u plus SU(2) Euler angles:
/// `u0 + i u1 = u cos(β/2) e^{i(α+γ)/2}`, `u2 + i u3 = u sin(β/2) e^{i(α-γ)/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerCoords {
    pub u: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerCoords {
    pub fn new(u: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if u < 0.0 || !(0.0..=PI).contains(&beta) || !(0.0..TWO_PI).contains(&alpha)
            || !(0.0..FOUR_PI).contains(&gamma)
        {
            return Err(Error::domain(format!(
                "Euler coordinates out of range: u={u}, alpha={alpha}, beta={beta}, gamma={gamma}"
            )));
        }
        Ok(EulerCoords { u, alpha, beta, gamma })
    }

    pub fn to_cartesian(&self) -> Point4 {
        let (hc, hs) = ((0.5 * self.beta).cos(), (0.5 * self.beta).sin());
        let p1 = 0.5 * (self.alpha + self.gamma);
        let p2 = 0.5 * (self.alpha - self.gamma);
        Point4::new(
            self.u * hc * p1.cos(),
            self.u * hc * p1.sin(),
            self.u * hs * p2.cos(),
            self.u * hs * p2.sin(),
        )
    }

    pub fn from_cartesian(p: &Point4) -> Self {
        let dp = DoublePolarCoords::from_cartesian(p);
        Self::from_double_polar(&dp)
    }

    /// Change of chart ρ1 = u cos(β/2), ρ2 = u sin(β/2), φ1 = (α+γ)/2,
    /// φ2 = (α-γ)/2, inverted on the canonical ranges.
    pub fn from_double_polar(dp: &DoublePolarCoords) -> Self {
        let u = dp.rho1.hypot(dp.rho2);
        let beta = 2.0 * dp.rho2.atan2(dp.rho1);
        let sum = dp.phi1 + dp.phi2;
        // when α = φ1+φ2 wraps past 2π, shift γ by 2π so both half-angle
        // phases move together
        let (alpha, extra) = if sum >= TWO_PI { (sum - TWO_PI, TWO_PI) } else { (sum, 0.0) };
        let gamma = wrap(dp.phi1 - dp.phi2 + extra, FOUR_PI);
        EulerCoords { u, alpha, beta, gamma }
    }
}

/// Two independent polar pairs: `u0 + i u1 = ρ1 e^{iφ1}`, `u2 + i u3 = ρ2 e^{iφ2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublePolarCoords {
    pub rho1: f64,
    pub rho2: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl DoublePolarCoords {
    pub fn new(rho1: f64, rho2: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if rho1 < 0.0 || rho2 < 0.0 || !(0.0..TWO_PI).contains(&phi1) || !(0.0..TWO_PI).contains(&phi2)
        {
            return Err(Error::domain(format!(
                "double-polar coordinates out of range: rho=({rho1}, {rho2}), phi=({phi1}, {phi2})"
            )));
        }
        Ok(DoublePolarCoords { rho1, rho2, phi1, phi2 })
    }

    pub fn to_cartesian(&self) -> Point4 {
        Point4::new(
            self.rho1 * self.phi1.cos(),
            self.rho1 * self.phi1.sin(),
            self.rho2 * self.phi2.cos(),
            self.rho2 * self.phi2.sin(),
        )
    }

    pub fn from_cartesian(p: &Point4) -> Self {
        DoublePolarCoords {
            rho1: p.u[0].hypot(p.u[1]),
            rho2: p.u[2].hypot(p.u[3]),
            phi1: wrap(p.u[1].atan2(p.u[0]), TWO_PI),
            phi2: wrap(p.u[3].atan2(p.u[2]), TWO_PI),
        }
    }

    pub fn from_euler(e: &EulerCoords) -> Self {
        DoublePolarCoords {
            rho1: e.u * (0.5 * e.beta).cos(),
            rho2: e.u * (0.5 * e.beta).sin(),
            phi1: wrap(0.5 * (e.alpha + e.gamma), TWO_PI),
            phi2: wrap(0.5 * (e.alpha - e.gamma), TWO_PI),
        }
    }
}

/// Prolate spheroidal coordinates with interfocus distance d:
/// `u0 + i u1 = (d/2)√((ξ+1)(1+η)) e^{i(α+γ)/2}`,
/// `u2 + i u3 = (d/2)√((ξ-1)(1-η)) e^{i(α-γ)/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpheroidalCoords {
    pub xi: f64,
    pub eta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub d: f64,
}

impl SpheroidalCoords {
    pub fn new(xi: f64, eta: f64, alpha: f64, gamma: f64, d: f64) -> Result<Self> {
        if xi < 1.0 || !(-1.0..=1.0).contains(&eta) || d <= 0.0
            || !(0.0..TWO_PI).contains(&alpha) || !(0.0..FOUR_PI).contains(&gamma)
        {
            return Err(Error::domain(format!(
                "spheroidal coordinates out of range: xi={xi}, eta={eta}, alpha={alpha}, gamma={gamma}, d={d}"
            )));
        }
        Ok(SpheroidalCoords { xi, eta, alpha, gamma, d })
    }

    pub fn to_cartesian(&self) -> Point4 {
        let r1 = 0.5 * self.d * ((self.xi + 1.0) * (1.0 + self.eta)).sqrt();
        let r2 = 0.5 * self.d * ((self.xi - 1.0) * (1.0 - self.eta)).sqrt();
        let p1 = 0.5 * (self.alpha + self.gamma);
        let p2 = 0.5 * (self.alpha - self.gamma);
        Point4::new(r1 * p1.cos(), r1 * p1.sin(), r2 * p2.cos(), r2 * p2.sin())
    }

    /// Inverse chart at fixed interfocus distance.
    pub fn from_cartesian(p: &Point4, d: f64) -> Result<Self> {
        if d <= 0.0 {
            return Err(Error::domain(format!("interfocus distance d={d} must be positive")));
        }
        let e = EulerCoords::from_cartesian(p);
        let dp = DoublePolarCoords::from_cartesian(p);
        // ξ+η and ξη from ρ1² ± ρ2²
        let s = 2.0 * (dp.rho1 * dp.rho1 + dp.rho2 * dp.rho2) / (d * d);
        let prod = 2.0 * (dp.rho1 * dp.rho1 - dp.rho2 * dp.rho2) / (d * d) - 1.0;
        let disc = (s * s - 4.0 * prod).max(0.0).sqrt();
        let xi = 0.5 * (s + disc);
        let eta = (s - xi).clamp(-1.0, 1.0);
        Ok(SpheroidalCoords { xi: xi.max(1.0), eta, alpha: e.alpha, gamma: e.gamma, d })
    }
}

/// Image of the generalized Kustaanheimo-Stiefel transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsImage {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// fiber angle, reported modulo 2π
    pub gamma: f64,
}

/// The quadratic map R⁴ → R³ plus fiber angle:
/// `x + iy = 2(u0+iu1)(u2+iu3)`, `z = u0²+u1²-u2²-u3²`,
/// `γ = (i/2) ln[(u0-iu1)(u2+iu3) / ((u0+iu1)(u2-iu3))]`,
/// which satisfies `x²+y²+z² = (u·u)²`.
pub fn ks_map(p: &Point4) -> KsImage {
    let [u0, u1, u2, u3] = p.u;
    // 2 (u0 + i u1)(u2 + i u3)
    let x = 2.0 * (u0 * u2 - u1 * u3);
    let y = 2.0 * (u0 * u3 + u1 * u2);
    let z = u0 * u0 + u1 * u1 - u2 * u2 - u3 * u3;
    // (i/2) ln of a unimodular ratio reduces to arg(w1) - arg(w2)
    let gamma = wrap(u1.atan2(u0) - u3.atan2(u2), TWO_PI);
    KsImage { x, y, z, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &Point4, b: &Point4, scale: f64) -> bool {
        a.max_abs_diff(b) <= 1e-12 * scale.max(1.0)
    }

    #[test]
    fn euler_beta_zero_plane() {
        let e = EulerCoords::new(2.0, 1.0, 0.0, 3.0).unwrap();
        let p = e.to_cartesian();
        assert_eq!(p.u[2], 0.0);
        assert_eq!(p.u[3], 0.0);
    }

    #[test]
    fn chart_relation_rho_from_euler() {
        let e = EulerCoords::new(1.7, 0.8, 1.1, 4.4).unwrap();
        let dp = DoublePolarCoords::from_euler(&e);
        assert!((dp.rho1 - e.u * (0.5 * e.beta).cos()).abs() < 1e-15);
        assert!((dp.rho2 - e.u * (0.5 * e.beta).sin()).abs() < 1e-15);
        assert!((dp.rho1 * dp.rho1 + dp.rho2 * dp.rho2 - e.u * e.u).abs() < 1e-14);
    }

    #[test]
    fn spheroidal_endpoints() {
        // η → 1 and ξ → 1 both degenerate to the u2 = u3 = 0 plane;
        // η → -1 to the u0 = u1 = 0 plane.
        let sc = SpheroidalCoords::new(2.5, 1.0, 0.3, 0.7, 1.3).unwrap();
        let p = sc.to_cartesian();
        assert_eq!((p.u[2], p.u[3]), (0.0, 0.0));
        let sc = SpheroidalCoords::new(1.0, 0.3, 0.3, 0.7, 1.3).unwrap();
        let p = sc.to_cartesian();
        assert_eq!((p.u[2], p.u[3]), (0.0, 0.0));
        let sc = SpheroidalCoords::new(2.5, -1.0, 0.3, 0.7, 1.3).unwrap();
        let p = sc.to_cartesian();
        assert_eq!((p.u[0], p.u[1]), (0.0, 0.0));
    }

    #[test]
    fn range_validation() {
        assert!(EulerCoords::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(EulerCoords::new(1.0, 0.0, 3.5, 0.0).is_err());
        assert!(DoublePolarCoords::new(1.0, 1.0, -0.1, 0.0).is_err());
        assert!(SpheroidalCoords::new(0.9, 0.0, 0.0, 0.0, 1.0).is_err());
        assert!(SpheroidalCoords::new(1.5, 0.0, 0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn ks_gamma_matches_euler_gamma_mod_2pi() {
        let e = EulerCoords::new(1.3, 2.0, 1.4, 5.5).unwrap();
        let ks = ks_map(&e.to_cartesian());
        let want = e.gamma % TWO_PI;
        assert!((ks.gamma - want).abs() < 1e-12 || (ks.gamma - want).abs() > TWO_PI - 1e-12);
    }

    proptest! {
        #[test]
        fn cartesian_round_trip_euler(
            u0 in -3.0..3.0f64, u1 in -3.0..3.0f64, u2 in -3.0..3.0f64, u3 in -3.0..3.0f64
        ) {
            let p = Point4::new(u0, u1, u2, u3);
            prop_assume!(u0.hypot(u1) > 1e-6 && u2.hypot(u3) > 1e-6);
            let e = EulerCoords::from_cartesian(&p);
            prop_assert!(close(&e.to_cartesian(), &p, p.norm_sq().sqrt()));
        }

        #[test]
        fn cartesian_round_trip_double_polar(
            u0 in -3.0..3.0f64, u1 in -3.0..3.0f64, u2 in -3.0..3.0f64, u3 in -3.0..3.0f64
        ) {
            let p = Point4::new(u0, u1, u2, u3);
            let dp = DoublePolarCoords::from_cartesian(&p);
            prop_assert!(close(&dp.to_cartesian(), &p, p.norm_sq().sqrt()));
        }

        #[test]
        fn cartesian_round_trip_spheroidal(
            u0 in -3.0..3.0f64, u1 in -3.0..3.0f64, u2 in -3.0..3.0f64, u3 in -3.0..3.0f64,
            d in 0.3..4.0f64
        ) {
            let p = Point4::new(u0, u1, u2, u3);
            prop_assume!(u0.hypot(u1) > 1e-4 && u2.hypot(u3) > 1e-4);
            let sc = SpheroidalCoords::from_cartesian(&p, d).unwrap();
            prop_assert!(close(&sc.to_cartesian(), &p, p.norm_sq().sqrt().max(d)));
        }

        #[test]
        fn double_polar_to_euler_chart_change(
            rho1 in 0.01..3.0f64, rho2 in 0.01..3.0f64,
            phi1 in 0.0..TWO_PI, phi2 in 0.0..TWO_PI
        ) {
            let dp = DoublePolarCoords::new(rho1, rho2, phi1, phi2).unwrap();
            let e = EulerCoords::from_double_polar(&dp);
            prop_assert!((0.0..TWO_PI).contains(&e.alpha));
            prop_assert!((0.0..FOUR_PI).contains(&e.gamma));
            prop_assert!(close(&e.to_cartesian(), &dp.to_cartesian(), rho1.max(rho2)));
        }

        #[test]
        fn ks_identity(
            u0 in -5.0..5.0f64, u1 in -5.0..5.0f64, u2 in -5.0..5.0f64, u3 in -5.0..5.0f64
        ) {
            let p = Point4::new(u0, u1, u2, u3);
            let ks = ks_map(&p);
            let lhs = ks.x * ks.x + ks.y * ks.y + ks.z * ks.z;
            let rhs = p.norm_sq() * p.norm_sq();
            prop_assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON * rhs.max(1.0));
        }
    }
}
