//! Numerical overlap integrals and normalization constants.
//!
//! The angular and azimuthal integrations are always done analytically; what
//! remains is a polynomial against a Laguerre weight `x^ν e^{-x}` in the
//! radial direction and a Jacobi weight `(1-t)^{m2}(1+t)^{m1}` in `t = cos β`,
//! so the Gaussian rules converge at the first node-doubling check.

use super::quadrature::{golub_welsch, QuadratureKind, QuadratureRule};
use crate::error::Error;
use crate::model::{
    lambda_eigenvalue, list_euler_states, list_polar_states, omega_tilde, EulerQN, PolarQN,
    SectorParams, SystemParams,
};
use crate::specfun::{hyp1f1_terminating, jacobi_p, HalfInt, Kahan};
use crate::Result;

use std::f64::consts::PI;

/// Project-wide quadrature convergence protocol: start at 64 nodes, double
/// until successive values differ by less than the tolerance, cap at 1024.
pub const CONVERGENCE_TOL: f64 = 1e-10;
const START_ORDER: usize = 64;
const CAP_ORDER: usize = 1024;

/// Value of a converged quadrature together with its last doubling delta.
#[derive(Debug, Clone, Copy)]
pub struct Overlap {
    pub value: f64,
    pub error_estimate: f64,
    pub nodes: usize,
}

fn converge<F: Fn(usize) -> Result<f64>>(context: &str, eval: F) -> Result<Overlap> {
    let mut prev = eval(START_ORDER)?;
    let mut order = 2 * START_ORDER;
    let mut delta = f64::INFINITY;
    while order <= CAP_ORDER {
        let next = eval(order)?;
        delta = (next - prev).abs();
        if delta < CONVERGENCE_TOL {
            return Ok(Overlap { value: next, error_estimate: delta, nodes: order });
        }
        prev = next;
        order *= 2;
    }
    Err(Error::NonConvergence {
        context: context.to_string(),
        last_value: prev,
        last_delta: delta,
        cap: CAP_ORDER,
    })
}

/// Which normalization constant to fix numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizeKind {
    /// radial factor of an Eulerian state, unit norm in ∫ u³ R² du
    Radial { n: u32, j: HalfInt },
    /// one circular-oscillator mode, unit norm in ∫ Φ² ρ dρ
    Polar { n_a: u32, axis: PolarAxis },
    /// angular factor, unit norm in (1/8)∫ sinβ |Z|² dβ dα dγ
    Angular { j: HalfInt },
}

/// Which of the two polar planes a mode lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarAxis {
    First,
    Second,
}

impl PolarAxis {
    pub(crate) fn index(self, sector: &SectorParams) -> f64 {
        match self {
            PolarAxis::First => sector.m1,
            PolarAxis::Second => sector.m2,
        }
    }
}

fn confluent(n: u32, c: f64, x: f64) -> f64 {
    hyp1f1_terminating(n, c, x).expect("series parameters validated by caller")
}

fn jacobi(g: u32, a: f64, b: f64, t: f64) -> f64 {
    jacobi_p(g, a, b, t).expect("Jacobi parameters validated by caller")
}

/// Positive constant that gives the selected factor unit norm in its measure.
pub fn normalize_numeric(
    kind: NormalizeKind,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<f64> {
    let a = params.a();
    let outcome = match kind {
        NormalizeKind::Radial { n, j } => {
            let q = EulerQN { n, j, m: sector.m, s: sector.s };
            check_euler_admissible(&q, sector)?;
            let deg = q.radial_degree();
            let c = 2.0 * j.to_f64() + sector.delta_sum() + 2.0;
            // ∫ u³ R_shape² du = (1/2a⁴) ∫ x^{c-1} e^{-x} F² dx
            converge("radial normalization", |order| {
                let rule = golub_welsch(QuadratureKind::Laguerre { alpha: c - 1.0 }, order)?;
                Ok(rule.integrate(|x| confluent(deg, c, x).powi(2)) / (2.0 * a.powi(4)))
            })?
        }
        NormalizeKind::Polar { n_a, axis } => {
            let ma = axis.index(sector);
            // ∫ Φ_shape² ρ dρ = (1/2a²) ∫ x^{ma} e^{-x} F² dx
            converge("polar normalization", |order| {
                let rule = golub_welsch(QuadratureKind::Laguerre { alpha: ma }, order)?;
                Ok(rule.integrate(|x| confluent(n_a, ma + 1.0, x).powi(2)) / (2.0 * a * a))
            })?
        }
        NormalizeKind::Angular { j } => {
            if !j.integer_above(sector.m_plus) {
                return Err(Error::domain(format!(
                    "angular normalization: j = {j} below m_plus = {}",
                    sector.m_plus
                )));
            }
            let g = ((j - sector.m_plus).twice() / 2) as u32;
            let (m1, m2) = (sector.m1, sector.m2);
            // (1/8)∫ sinβ dβ dα dγ → π² 2^{-(m1+m2)} ∫ (1-t)^{m2}(1+t)^{m1} P² dt
            converge("angular normalization", |order| {
                let rule =
                    golub_welsch(QuadratureKind::Jacobi { alpha: m2, beta: m1 }, order)?;
                Ok(rule.integrate(|t| jacobi(g, m2, m1, t).powi(2))
                    * PI
                    * PI
                    * (2.0_f64).powf(-(m1 + m2)))
            })?
        }
    };
    if outcome.value <= 0.0 {
        return Err(Error::domain(format!(
            "normalization integral came out nonpositive: {}",
            outcome.value
        )));
    }
    Ok(1.0 / outcome.value.sqrt())
}

fn check_euler_admissible(q: &EulerQN, sector: &SectorParams) -> Result<()> {
    if q.m != sector.m || q.s != sector.s {
        return Err(Error::domain(format!(
            "euler state (m={}, s={}) does not belong to the sector (m={}, s={})",
            q.m, q.s, sector.m, sector.s
        )));
    }
    if !q.j.integer_above(sector.m_plus) {
        return Err(Error::domain(format!(
            "j = {} must exceed m_plus = {} by an integer",
            q.j, sector.m_plus
        )));
    }
    let half_n = HalfInt::from_twice(i32::try_from(q.n).unwrap());
    if !half_n.integer_above(q.j) {
        return Err(Error::domain(format!(
            "N/2 - j must be a nonnegative integer; got N = {}, j = {}",
            q.n, q.j
        )));
    }
    Ok(())
}

/// Per-state data needed to assemble the polar–Euler overlap integrand.
struct OverlapParts {
    nu: f64,
    m1: f64,
    m2: f64,
    deg1: u32,
    deg2: u32,
    deg_r: u32,
    c_r: f64,
    g: u32,
    prefactor: f64,
}

fn overlap_parts(
    polar: &PolarQN,
    euler: &EulerQN,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<OverlapParts> {
    let a = params.a();
    let jf = euler.j.to_f64();
    let d = sector.delta_sum();
    let nu = jf + sector.m_plus_f64() + d;
    let norm_z = normalize_numeric(NormalizeKind::Angular { j: euler.j }, sector, params)?;
    let norm_r =
        normalize_numeric(NormalizeKind::Radial { n: euler.n, j: euler.j }, sector, params)?;
    let phi1 = normalize_numeric(
        NormalizeKind::Polar { n_a: polar.n1, axis: PolarAxis::First },
        sector,
        params,
    )?;
    let phi2 = normalize_numeric(
        NormalizeKind::Polar { n_a: polar.n2, axis: PolarAxis::Second },
        sector,
        params,
    )?;
    let prefactor = sector.z_phase() * (PI / 2.0) * norm_z * norm_r * phi1 * phi2
        * (2.0_f64).powf(-(sector.m1 + sector.m2))
        / (2.0 * a.powi(4));
    Ok(OverlapParts {
        nu,
        m1: sector.m1,
        m2: sector.m2,
        deg1: polar.n1,
        deg2: polar.n2,
        deg_r: euler.radial_degree(),
        c_r: 2.0 * jf + d + 2.0,
        g: euler.jacobi_degree(sector),
        prefactor,
    })
}

fn overlap_tensor_sum(
    parts: &OverlapParts,
    radial_rule: &QuadratureRule,
    angular_rule: &QuadratureRule,
) -> f64 {
    let mut total = Kahan::new();
    for (&x, &wx) in radial_rule.nodes.iter().zip(&radial_rule.weights) {
        let fr = confluent(parts.deg_r, parts.c_r, x);
        let mut inner = Kahan::new();
        for (&t, &wt) in angular_rule.nodes.iter().zip(&angular_rule.weights) {
            let v = confluent(parts.deg1, parts.m1 + 1.0, 0.5 * x * (1.0 + t))
                * confluent(parts.deg2, parts.m2 + 1.0, 0.5 * x * (1.0 - t))
                * jacobi(parts.g, parts.m2, parts.m1, t);
            inner.add(wt * v);
        }
        total.add(wx * fr * inner.value());
    }
    parts.prefactor * total.value()
}

/// The literal overlap `∫ ψ*_polar ψ_euler dV`, reduced analytically over the
/// phases to a 2D Laguerre × Jacobi quadrature.
///
/// States from different sectors or different levels are orthogonal
/// analytically; the integral is never evaluated for them and the result is
/// exactly zero.
pub fn overlap_polar_euler(
    polar: &PolarQN,
    euler: &EulerQN,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<Overlap> {
    check_euler_admissible(euler, sector)?;
    if polar.big_m1 != sector.big_m1
        || polar.big_m2 != sector.big_m2
        || polar.principal_n() != euler.n
    {
        return Ok(Overlap { value: 0.0, error_estimate: 0.0, nodes: 0 });
    }
    let parts = overlap_parts(polar, euler, sector, params)?;
    converge("polar-euler overlap", |order| {
        let radial =
            golub_welsch(QuadratureKind::Laguerre { alpha: parts.nu + 1.0 }, order)?;
        let angular = golub_welsch(
            QuadratureKind::Jacobi { alpha: parts.m2, beta: parts.m1 },
            order,
        )?;
        Ok(overlap_tensor_sum(&parts, &radial, &angular))
    })
}

/// The whole quadrature coefficient table for a level, with rules shared
/// across matrix elements per doubling step. Returns the matrix (rows indexed
/// by ascending N1, columns by ascending j) and the largest per-element
/// doubling delta.
pub fn w_table_quadrature(
    n: u32,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<(Vec<Vec<f64>>, f64)> {
    let eulers = list_euler_states(n, sector);
    let polars = list_polar_states(n, sector);
    if eulers.is_empty() {
        return Ok((Vec::new(), 0.0));
    }
    let parts: Vec<Vec<OverlapParts>> = polars
        .iter()
        .map(|p| {
            eulers
                .iter()
                .map(|e| overlap_parts(p, e, sector, params))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let eval_all = |order: usize| -> Result<Vec<Vec<f64>>> {
        let angular = golub_welsch(
            QuadratureKind::Jacobi { alpha: sector.m2, beta: sector.m1 },
            order,
        )?;
        // one Laguerre rule per distinct euler column
        let radial_rules: Vec<QuadratureRule> = eulers
            .iter()
            .enumerate()
            .map(|(c, _)| {
                golub_welsch(
                    QuadratureKind::Laguerre { alpha: parts[0][c].nu + 1.0 },
                    order,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, p)| overlap_tensor_sum(p, &radial_rules[c], &angular))
                    .collect()
            })
            .collect())
    };

    let mut prev = eval_all(START_ORDER)?;
    let mut order = 2 * START_ORDER;
    let mut delta = f64::INFINITY;
    while order <= CAP_ORDER {
        let next = eval_all(order)?;
        delta = prev
            .iter()
            .flatten()
            .zip(next.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if delta < CONVERGENCE_TOL {
            return Ok((next, delta));
        }
        prev = next;
        order *= 2;
    }
    Err(Error::NonConvergence {
        context: format!("quadrature W table at N={n}"),
        last_value: f64::NAN,
        last_delta: delta,
        cap: CAP_ORDER,
    })
}

/// Operators whose matrix elements the oracle can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Lambda,
    Omega,
}

/// Basis in which the matrix elements are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Euler,
    Polar,
}

/// Matrix elements of Λ̂ or the dimensionless Ω̃ in either basis, computed
/// spectrally: the operator's own basis is diagonal with the known
/// eigenvalues, the other basis is reached through the quadrature-derived
/// coefficient table (no closed forms involved). Mirrored so the result is
/// exactly symmetric.
pub fn matrix_element_numeric(
    op: Operator,
    basis: Basis,
    n: u32,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<Vec<Vec<f64>>> {
    let eulers = list_euler_states(n, sector);
    let polars = list_polar_states(n, sector);
    let dim = eulers.len();
    let lambda: Vec<f64> = eulers
        .iter()
        .map(|q| lambda_eigenvalue(q.j, sector))
        .collect();
    let omega: Vec<f64> = polars.iter().map(|q| omega_tilde(q, sector)).collect();
    match (op, basis) {
        (Operator::Lambda, Basis::Euler) => Ok(diagonal(&lambda)),
        (Operator::Omega, Basis::Polar) => Ok(diagonal(&omega)),
        (Operator::Omega, Basis::Euler) => {
            let (w, _) = w_table_quadrature(n, sector, params)?;
            Ok(congruence_columns(&w, &omega, dim))
        }
        (Operator::Lambda, Basis::Polar) => {
            let (w, _) = w_table_quadrature(n, sector, params)?;
            Ok(congruence_rows(&w, &lambda, dim))
        }
    }
}

fn diagonal(values: &[f64]) -> Vec<Vec<f64>> {
    let n = values.len();
    (0..n)
        .map(|i| (0..n).map(|k| if i == k { values[i] } else { 0.0 }).collect())
        .collect()
}

/// `Wᵀ diag(d) W` over the column index, mirrored to exact symmetry.
pub(crate) fn congruence_columns(w: &[Vec<f64>], d: &[f64], dim: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for k in i..dim {
            let mut s = Kahan::new();
            for (r, row) in w.iter().enumerate() {
                s.add(row[i] * d[r] * row[k]);
            }
            out[i][k] = s.value();
            out[k][i] = s.value();
        }
    }
    out
}

/// `W diag(d) Wᵀ` over the row index, mirrored to exact symmetry.
pub(crate) fn congruence_rows(w: &[Vec<f64>], d: &[f64], dim: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for k in i..dim {
            let mut s = Kahan::new();
            for (c, &dc) in d.iter().enumerate() {
                s.add(w[i][c] * dc * w[k][c]);
            }
            out[i][k] = s.value();
            out[k][i] = s.value();
        }
    }
    out
}

/// `∫ u³ R_{N_a j} R_{N_b j} du` with numerically normalized radial factors.
pub fn radial_overlap(
    n_a: u32,
    n_b: u32,
    j: HalfInt,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<f64> {
    let a = params.a();
    let c = 2.0 * j.to_f64() + sector.delta_sum() + 2.0;
    let qa = EulerQN { n: n_a, j, m: sector.m, s: sector.s };
    let qb = EulerQN { n: n_b, j, m: sector.m, s: sector.s };
    check_euler_admissible(&qa, sector)?;
    check_euler_admissible(&qb, sector)?;
    let (da, db) = (qa.radial_degree(), qb.radial_degree());
    let ca = normalize_numeric(NormalizeKind::Radial { n: n_a, j }, sector, params)?;
    let cb = normalize_numeric(NormalizeKind::Radial { n: n_b, j }, sector, params)?;
    let out = converge("radial overlap", |order| {
        let rule = golub_welsch(QuadratureKind::Laguerre { alpha: c - 1.0 }, order)?;
        Ok(rule.integrate(|x| confluent(da, c, x) * confluent(db, c, x)))
    })?;
    Ok(ca * cb * out.value / (2.0 * a.powi(4)))
}

/// Reduced angular overlap of `Z_j` and `Z_j'` at fixed (m, s); equals
/// `δ_{jj'}` for the numerically normalized factors.
pub fn angular_overlap(
    ja: HalfInt,
    jb: HalfInt,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<f64> {
    let (m1, m2) = (sector.m1, sector.m2);
    for j in [ja, jb] {
        if !j.integer_above(sector.m_plus) {
            return Err(Error::domain(format!("j = {j} inadmissible in this sector")));
        }
    }
    let ga = ((ja - sector.m_plus).twice() / 2) as u32;
    let gb = ((jb - sector.m_plus).twice() / 2) as u32;
    let na = normalize_numeric(NormalizeKind::Angular { j: ja }, sector, params)?;
    let nb = normalize_numeric(NormalizeKind::Angular { j: jb }, sector, params)?;
    let out = converge("angular overlap", |order| {
        let rule = golub_welsch(QuadratureKind::Jacobi { alpha: m2, beta: m1 }, order)?;
        Ok(rule.integrate(|t| jacobi(ga, m2, m1, t) * jacobi(gb, m2, m1, t)))
    })?;
    Ok(na * nb * out.value * PI * PI * (2.0_f64).powf(-(m1 + m2)))
}

/// `∫ Φ_{N_a} Φ_{N_b} ρ dρ` for modes of one polar plane.
pub fn polar_mode_overlap(
    n_a: u32,
    n_b: u32,
    axis: PolarAxis,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<f64> {
    let a = params.a();
    let ma = axis.index(sector);
    let ca = normalize_numeric(NormalizeKind::Polar { n_a, axis }, sector, params)?;
    let cb = normalize_numeric(NormalizeKind::Polar { n_a: n_b, axis }, sector, params)?;
    let out = converge("polar mode overlap", |order| {
        let rule = golub_welsch(QuadratureKind::Laguerre { alpha: ma }, order)?;
        Ok(rule.integrate(|x| confluent(n_a, ma + 1.0, x) * confluent(n_b, ma + 1.0, x)))
    })?;
    Ok(ca * cb * out.value / (2.0 * a * a))
}

/// The hypermomentum overlap matrix `∫ R_{Nj'} R_{Nj} u du` over the level-N
/// multiplet. Diagonal in exact arithmetic; the measured diagonal constant is
/// compared against the printed one elsewhere.
pub fn hypermomentum_matrix(
    n: u32,
    sector: &SectorParams,
    params: &SystemParams,
) -> Result<Vec<Vec<f64>>> {
    let a = params.a();
    let d = sector.delta_sum();
    let states = list_euler_states(n, sector);
    let dim = states.len();
    let alpha = sector.m_plus_f64() * 2.0 + d;
    let norms: Vec<f64> = states
        .iter()
        .map(|q| normalize_numeric(NormalizeKind::Radial { n, j: q.j }, sector, params))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for k in i..dim {
            let (ji, jk) = (states[i].j, states[k].j);
            let power = ((ji + jk - sector.m_plus - sector.m_plus).twice() / 2) as i32;
            let (di, dk) = (states[i].radial_degree(), states[k].radial_degree());
            let (ci, ck) = (
                2.0 * ji.to_f64() + d + 2.0,
                2.0 * jk.to_f64() + d + 2.0,
            );
            let val = converge("hypermomentum overlap", |order| {
                let rule = golub_welsch(QuadratureKind::Laguerre { alpha }, order)?;
                Ok(rule.integrate(|x| {
                    x.powi(power) * confluent(di, ci, x) * confluent(dk, ck, x)
                }))
            })?;
            let v = norms[i] * norms[k] * val.value / (2.0 * a * a);
            out[i][k] = v;
            out[k][i] = v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sector;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn gaussian_ground_state_norm() {
        // delta = 0, N = j = 0: C² ∫ u³ e^{-a²u²} du = 1 ⇒ C = √2 a²
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let c = normalize_numeric(NormalizeKind::Radial { n: 0, j: h(0) }, &sec, &p).unwrap();
        assert_relative_eq!(c, 2.0_f64.sqrt(), max_relative = 1e-12);

        let p2 = SystemParams::new(2.0, 3.0, 0.7, 0.0, 0.0).unwrap();
        let sec2 = sector(&p2, h(0), h(0)).unwrap();
        let c2 = normalize_numeric(NormalizeKind::Radial { n: 0, j: h(0) }, &sec2, &p2).unwrap();
        assert_relative_eq!(c2, 2.0_f64.sqrt() * p2.a().powi(2), max_relative = 1e-12);
    }

    #[test]
    fn polar_ground_state_norm_matches_closed_form() {
        let p = SystemParams::natural(0.0, 2.0).unwrap();
        let sec = sector(&p, h(1), h(1)).unwrap(); // M2 = 0, delta2 = 2
        let c = normalize_numeric(
            NormalizeKind::Polar { n_a: 0, axis: PolarAxis::Second },
            &sec,
            &p,
        )
        .unwrap();
        // closed form a √(2Γ(ma+1)/0!)/Γ(ma+1) = a √(2/Γ(ma+1))
        let want = (2.0 / crate::specfun::ln_gamma(sec.m2 + 1.0).unwrap().exp()).sqrt();
        assert_relative_eq!(c, want, max_relative = 1e-12);
    }

    #[test]
    fn overlap_single_state_is_unit() {
        let p = SystemParams::natural(0.5, 2.0).unwrap();
        for (tm, ts) in [(0, 0), (1, 1), (2, 0)] {
            let sec = sector(&p, h(tm), h(ts)).unwrap();
            let n = sec.m_plus.twice() as u32;
            let euler = &list_euler_states(n, &sec)[0];
            let polar = &list_polar_states(n, &sec)[0];
            let ov = overlap_polar_euler(polar, euler, &sec, &p).unwrap();
            assert_abs_diff_eq!(ov.value.abs(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn overlap_mismatched_level_is_exactly_zero() {
        let p = SystemParams::default();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let euler = list_euler_states(2, &sec)[0];
        let polar = list_polar_states(4, &sec)[0];
        let ov = overlap_polar_euler(&polar, &euler, &sec, &p).unwrap();
        assert_eq!(ov.value, 0.0);
        assert_eq!(ov.nodes, 0);
    }

    #[test]
    fn quadrature_table_is_orthogonal() {
        let p = SystemParams::natural(0.5, 2.0).unwrap();
        let sec = sector(&p, h(2), h(0)).unwrap();
        let (w, delta) = w_table_quadrature(6, &sec, &p).unwrap();
        assert!(delta < CONVERGENCE_TOL);
        let dim = w.len();
        for i in 0..dim {
            for k in 0..dim {
                let dot: f64 = (0..dim).map(|c| w[i][c] * w[k][c]).sum();
                let want = if i == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn operator_matrices_diagonal_in_their_own_basis() {
        let p = SystemParams::natural(0.5, 2.0).unwrap();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let lam = matrix_element_numeric(Operator::Lambda, Basis::Euler, 4, &sec, &p).unwrap();
        let states = list_euler_states(4, &sec);
        for (i, row) in lam.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                let want = if i == k {
                    lambda_eigenvalue(states[i].j, &sec)
                } else {
                    0.0
                };
                assert_eq!(v, want);
            }
        }
        let om = matrix_element_numeric(Operator::Omega, Basis::Polar, 4, &sec, &p).unwrap();
        let polars = list_polar_states(4, &sec);
        for (i, row) in om.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                let want = if i == k { omega_tilde(&polars[i], &sec) } else { 0.0 };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn hypermomentum_is_diagonal_with_derived_constant() {
        let p = SystemParams::natural(0.5, 2.0).unwrap();
        let sec = sector(&p, h(0), h(0)).unwrap();
        let m = hypermomentum_matrix(6, &sec, &p).unwrap();
        let states = list_euler_states(6, &sec);
        for (i, row) in m.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if i == k {
                    let want = 1.0 / (2.0 * states[i].j.to_f64() + sec.delta_sum() + 1.0);
                    assert_relative_eq!(v, want, max_relative = 1e-10);
                } else {
                    assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn basis_overlaps_are_kronecker() {
        let p = SystemParams::natural(2.0, 0.5).unwrap();
        let sec = sector(&p, h(1), h(-1)).unwrap();
        for (ja, jb) in [(h(2), h(2)), (h(2), h(4)), (h(4), h(6))] {
            let v = angular_overlap(ja, jb, &sec, &p).unwrap();
            let want = if ja == jb { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v, want, epsilon = 1e-10);
        }
        for (na, nb) in [(0, 0), (0, 2), (1, 3)] {
            let j = h(2);
            let v = radial_overlap(2 * na + 2, 2 * nb + 2, j, &sec, &p).unwrap();
            let want = if na == nb { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v, want, epsilon = 1e-10);
        }
        for (na, nb) in [(0, 0), (0, 1), (2, 5)] {
            let v = polar_mode_overlap(na, nb, PolarAxis::First, &sec, &p).unwrap();
            let want = if na == nb { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v, want, epsilon = 1e-10);
        }
    }
}
