//! End-to-end verification suite.
//!
//! Every check pins its tolerance here, runs at desk scale, and reports a
//! measured value against its bound. The CLI `verify` command and the
//! acceptance test target both run [`run_all`].

use crate::interbasis::{coefficient_table, CoefficientTable, Method};
use crate::model::{
    self, energy, lambda_eigenvalue, list_euler_states, list_polar_states, multiplet_dim,
    sector, DoublePolarCoords, EulerCoords, EulerWave, Point4, PolarWave, SectorParams,
    SystemParams,
};
use crate::oracle::{
    self, angular_overlap, golub_welsch, hypermomentum_matrix, polar_mode_overlap,
    radial_overlap, sturm_count, symtri_eigen, PolarAxis, QuadratureKind, SymTriMatrix,
};
use crate::specfun::HalfInt;
use crate::spheroidal::{
    build_q_matrix, lambda_matrix_polar, omega_matrix_euler, recursion_residual,
    solve_spheroidal, MatrixSource, QBasis, RecursionSource,
};
use crate::Result;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Couplings used throughout the verification grids.
const C_GRID: [f64; 4] = [0.0, 0.5, 2.0, 7.3];

/// Configuration of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// When set, replaces the bound of every check.
    pub tol_override: Option<f64>,
    /// Seed for the random samples (points, matrices).
    pub seed: u64,
    /// Harness-sanity knob: added to one CG coefficient inside the
    /// cross-formula check so tests can confirm that a broken value is
    /// detected. Zero in any real run.
    pub cg_perturbation: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tol_override: None, seed: 20260810, cg_perturbation: 0.0 }
    }
}

/// Outcome of a single named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the whole suite.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ctx {
    cfg: VerifyConfig,
    checks: Vec<CheckResult>,
}

impl Ctx {
    fn push(&mut self, name: &str, measured: f64, default_bound: f64, detail: String) {
        let bound = self.cfg.tol_override.unwrap_or(default_bound);
        // NaN never passes
        let pass = measured <= bound;
        self.checks.push(CheckResult { name: name.to_string(), measured, bound, pass, detail });
    }
}

/// Pairs (2m, 2s) with |m|, |s| <= max_twice/2 and m+s integral.
fn sector_shapes(max_twice: i32) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for tm in -max_twice..=max_twice {
        for ts in -max_twice..=max_twice {
            if (tm + ts) % 2 == 0 {
                out.push((tm, ts));
            }
        }
    }
    out
}

fn grid_sectors(max_twice: i32) -> Result<Vec<(usize, usize, SystemParams, SectorParams)>> {
    let mut out = Vec::new();
    for (i1, &c1) in C_GRID.iter().enumerate() {
        for (i2, &c2) in C_GRID.iter().enumerate() {
            let params = SystemParams::natural(c1, c2)?;
            for (tm, ts) in sector_shapes(max_twice) {
                let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
                out.push((i1, i2, params, sec));
            }
        }
    }
    Ok(out)
}

/// Run the complete acceptance suite.
pub fn run_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut ctx = Ctx { cfg: cfg.clone(), checks: Vec::new() };
    check_cg_identity(&mut ctx)?;
    check_quadrature_ground_truth(&mut ctx)?;
    check_orthogonality(&mut ctx)?;
    check_pointwise_expansion(&mut ctx)?;
    check_basis_orthonormality(&mut ctx)?;
    check_oscillator_limit(&mut ctx)?;
    check_spheroidal(&mut ctx)?;
    check_recursions(&mut ctx)?;
    check_numerics_substrate(&mut ctx)?;
    check_ks_identity(&mut ctx)?;
    let passed = ctx.checks.iter().all(|c| c.pass);
    Ok(VerifyReport { checks: ctx.checks, passed })
}

// -------------------------------------------------------------------------
// criterion 1: the CG identity, both formulas, sign included
// -------------------------------------------------------------------------
fn check_cg_identity(ctx: &mut Ctx) -> Result<()> {
    let mut worst = 0.0_f64;
    let mut at = String::new();
    let mut tables = 0usize;
    for (_, _, params, sec) in grid_sectors(3)? {
        for n in 0..=8u32 {
            if multiplet_dim(n, &sec) == 0 {
                continue;
            }
            let t3 = coefficient_table(n, &sec, &params, Method::ThreeF2)?;
            let mut tc = coefficient_table(n, &sec, &params, Method::Cg)?;
            if ctx.cfg.cg_perturbation != 0.0 {
                tc.values[0][0] += ctx.cfg.cg_perturbation;
            }
            let d = t3.max_abs_diff(&tc);
            tables += 1;
            if d > worst {
                worst = d;
                at = format!("N={n}, m={}, s={}, c=({}, {})", sec.m, sec.s, params.c1, params.c2);
            }
        }
    }
    ctx.push(
        "cg_identity_3f2_vs_cg",
        worst,
        1e-10,
        format!("max |W_3F2 - W_CG| over {tables} tables (N<=8, |m|,|s|<=3/2, c in {C_GRID:?}); worst at {at}"),
    );
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 2 & 3(quad): quadrature ground truth and its orthogonality
// -------------------------------------------------------------------------
type QuadKey = (u32, u32, u32, bool, usize, usize);

fn quad_tables_n_le_6(
    ctx: &Ctx,
) -> Result<(Vec<(CoefficientTable, CoefficientTable)>, usize)> {
    let _ = ctx;
    // The quadrature table depends on the sector only through
    // (|M1|, |M2|, parity of max(M2,0), c1, c2); memoize on that key so the
    // full sector grid stays cheap while every sector is still compared.
    let mut memo: HashMap<QuadKey, CoefficientTable> = HashMap::new();
    let mut pairs = Vec::new();
    let mut quadratures = 0usize;
    for (i1, i2, params, sec) in grid_sectors(3)? {
        for n in 0..=6u32 {
            if multiplet_dim(n, &sec) == 0 {
                continue;
            }
            let key: QuadKey = (
                n,
                sec.big_m1.unsigned_abs(),
                sec.big_m2.unsigned_abs(),
                sec.big_m2.max(0) % 2 == 1,
                i1,
                i2,
            );
            let tq = match memo.get(&key) {
                Some(t) => t.clone(),
                None => {
                    let t = coefficient_table(n, &sec, &params, Method::Quadrature)?;
                    quadratures += 1;
                    memo.insert(key, t.clone());
                    t
                }
            };
            let tc = coefficient_table(n, &sec, &params, Method::Cg)?;
            pairs.push((tc, tq));
        }
    }
    Ok((pairs, quadratures))
}

fn check_quadrature_ground_truth(ctx: &mut Ctx) -> Result<()> {
    let (pairs, quadratures) = quad_tables_n_le_6(ctx)?;
    let mut worst = 0.0_f64;
    let mut worst_orth_quad = 0.0_f64;
    for (tc, tq) in &pairs {
        let aligned = tq.aligned_to(tc);
        worst = worst.max(tc.max_abs_diff(&aligned));
        worst_orth_quad = worst_orth_quad.max(tq.orthogonality_residual());
    }
    ctx.push(
        "w_quadrature_ground_truth",
        worst,
        1e-8,
        format!(
            "max |W_CG - W_quad| after sign alignment over {} comparisons ({} distinct quadrature tables, N<=6)",
            pairs.len(),
            quadratures
        ),
    );
    ctx.push(
        "orthogonality_quadrature",
        worst_orth_quad,
        1e-8,
        "max ||W Wᵀ - I||_max over the pure-quadrature tables (no closed forms involved)"
            .to_string(),
    );
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 3 (closed form)
// -------------------------------------------------------------------------
fn check_orthogonality(ctx: &mut Ctx) -> Result<()> {
    let mut worst = 0.0_f64;
    let mut tables = 0usize;
    for (_, _, params, sec) in grid_sectors(4)? {
        for n in 0..=12u32 {
            if multiplet_dim(n, &sec) == 0 {
                continue;
            }
            let t = coefficient_table(n, &sec, &params, Method::Cg)?;
            worst = worst.max(t.orthogonality_residual());
            tables += 1;
        }
    }
    ctx.push(
        "orthogonality_closed_form",
        worst,
        1e-10,
        format!("max ||W Wᵀ - I||_max over {tables} closed-form tables (N<=12, |m|,|s|<=2)"),
    );
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 4: pointwise expansion and its inverse
// -------------------------------------------------------------------------
fn check_pointwise_expansion(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let mut worst_forward = 0.0_f64;
    let mut worst_inverse = 0.0_f64;
    let mut multiplets = 0usize;
    for &c1 in &[0.0, 0.5, 2.0] {
        for &c2 in &[0.0, 0.5, 2.0] {
            let params = SystemParams::natural(c1, c2)?;
            for (tm, ts) in sector_shapes(3) {
                let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
                for n in 0..=4u32 {
                    if multiplet_dim(n, &sec) == 0 {
                        continue;
                    }
                    multiplets += 1;
                    let t = coefficient_table(n, &sec, &params, Method::Cg)?;
                    let eulers: Vec<EulerWave> = t
                        .euler_states
                        .iter()
                        .map(|q| EulerWave::new(q, &sec, &params))
                        .collect::<Result<_>>()?;
                    let polars: Vec<PolarWave> = t
                        .polar_states
                        .iter()
                        .map(|q| PolarWave::new(q, &sec, &params))
                        .collect::<Result<_>>()?;
                    for _ in 0..50 {
                        let ec = EulerCoords::new(
                            rng.gen_range(0.15..2.5),
                            rng.gen_range(0.0..2.0 * PI),
                            rng.gen_range(0.1..PI - 0.1),
                            rng.gen_range(0.0..4.0 * PI),
                        )?;
                        let dp = DoublePolarCoords::from_euler(&ec);
                        let psi_e: Vec<Complex64> = eulers
                            .iter()
                            .map(|w| w.eval(&ec))
                            .collect::<Result<_>>()?;
                        let psi_p: Vec<Complex64> = polars
                            .iter()
                            .map(|w| w.eval(&dp))
                            .collect::<Result<_>>()?;
                        let dim = psi_e.len();
                        for r in 0..dim {
                            let lhs = psi_p[r];
                            let mut rhs = Complex64::new(0.0, 0.0);
                            let mut scale = lhs.norm();
                            for c in 0..dim {
                                rhs += t.values[r][c] * psi_e[c];
                                scale = scale.max(t.values[r][c].abs() * psi_e[c].norm());
                            }
                            worst_forward =
                                worst_forward.max((lhs - rhs).norm() / scale.max(1e-6));
                        }
                        for c in 0..dim {
                            let lhs = psi_e[c];
                            let mut rhs = Complex64::new(0.0, 0.0);
                            let mut scale = lhs.norm();
                            for r in 0..dim {
                                rhs += t.values[r][c] * psi_p[r];
                                scale = scale.max(t.values[r][c].abs() * psi_p[r].norm());
                            }
                            worst_inverse =
                                worst_inverse.max((lhs - rhs).norm() / scale.max(1e-6));
                        }
                    }
                }
            }
        }
    }
    let detail = format!("50 random points per multiplet, {multiplets} multiplets (N<=4)");
    ctx.push("pointwise_expansion", worst_forward, 1e-8, detail.clone());
    ctx.push("pointwise_inverse_expansion", worst_inverse, 1e-8, detail);
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 5: basis orthonormality by quadrature
// -------------------------------------------------------------------------
fn check_basis_orthonormality(ctx: &mut Ctx) -> Result<()> {
    let sectors = [
        (0.0, 0.0, 0, 0),
        (0.5, 2.0, 0, 0),
        (2.0, 0.5, 2, 0),
        (0.5, 2.0, 1, 1),
        (7.3, 0.5, 1, -3),
    ];
    let mut worst_ang = 0.0_f64;
    let mut worst_rad = 0.0_f64;
    let mut worst_pol = 0.0_f64;
    let mut worst_hyper_off = 0.0_f64;
    let mut hyper_detail = String::new();
    for &(c1, c2, tm, ts) in &sectors {
        let params = SystemParams::natural(c1, c2)?;
        let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
        let base = sec.m_plus.twice();

        // angular pairs over j
        let js: Vec<HalfInt> = (0..4).map(|k| HalfInt::from_twice(base + 2 * k)).collect();
        for &ja in &js {
            for &jb in &js {
                let v = angular_overlap(ja, jb, &sec, &params)?;
                let want = if ja == jb { 1.0 } else { 0.0 };
                worst_ang = worst_ang.max((v - want).abs());
            }
        }

        // radial pairs over N at fixed j
        let j = HalfInt::from_twice(base);
        let ns: Vec<u32> = (0..4).map(|k| (base + 2 * k) as u32).collect();
        for &na in &ns {
            for &nb in &ns {
                let v = radial_overlap(na, nb, j, &sec, &params)?;
                let want = if na == nb { 1.0 } else { 0.0 };
                worst_rad = worst_rad.max((v - want).abs());
            }
        }

        // polar modes on both axes
        for axis in [PolarAxis::First, PolarAxis::Second] {
            for na in 0..4u32 {
                for nb in 0..4u32 {
                    let v = polar_mode_overlap(na, nb, axis, &sec, &params)?;
                    let want = if na == nb { 1.0 } else { 0.0 };
                    worst_pol = worst_pol.max((v - want).abs());
                }
            }
        }

        // hypermomentum relation at one level per sector
        let n = (base + 6) as u32;
        let m = hypermomentum_matrix(n, &sec, &params)?;
        let states = list_euler_states(n, &sec);
        for (i, row) in m.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                if i != k {
                    worst_hyper_off = worst_hyper_off.max(v.abs());
                }
            }
            let measured = row[i];
            let derived = 1.0 / (2.0 * states[i].j.to_f64() + sec.delta_sum() + 1.0);
            let printed =
                model::printed_hypermomentum_constant(states[i].j, &sec, &params);
            hyper_detail.push_str(&format!(
                "[c=({c1},{c2}) m={tm}/2 s={ts}/2 N={n} j={}] measured={measured:.12e} derived a²/(2j+δ+1)={derived:.12e} printed 2a²/(2j+δ+2)={printed:.12e}; ",
                states[i].j
            ));
        }
    }
    ctx.push(
        "angular_orthonormality",
        worst_ang,
        1e-10,
        "reduced beta-integral pairwise over j, five sectors".to_string(),
    );
    ctx.push(
        "radial_orthonormality",
        worst_rad,
        1e-10,
        "∫u³ R R' du pairwise over N at fixed j, five sectors".to_string(),
    );
    ctx.push(
        "polar_orthonormality",
        worst_pol,
        1e-10,
        "∫Φ Φ' ρ dρ pairwise over N_a, both axes, five sectors".to_string(),
    );
    ctx.push("hypermomentum_diagonality", worst_hyper_off, 1e-8, hyper_detail);
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 6: oscillator limit
// -------------------------------------------------------------------------
fn check_oscillator_limit(ctx: &mut Ctx) -> Result<()> {
    let params = SystemParams::default();
    let mut worst_energy = 0.0_f64;
    let mut degeneracy_mismatches = 0usize;
    let mut detail = String::new();
    for n in 0..=8u32 {
        let n_i = i32::try_from(n).unwrap();
        let mut total = 0usize;
        for tm in -n_i..=n_i {
            for ts in -n_i..=n_i {
                if (tm + ts) % 2 != 0 {
                    continue;
                }
                let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
                worst_energy =
                    worst_energy.max((energy(&params, n, &sec) - f64::from(n) - 2.0).abs());
                total += multiplet_dim(n, &sec);
            }
        }
        let formula = ((n + 1) * (n + 2) * (n + 3) / 6) as usize;
        if total != formula {
            degeneracy_mismatches += 1;
        }
        detail.push_str(&format!("N={n}: {total} states (formula {formula}); "));
    }
    ctx.push(
        "oscillator_limit_energy",
        worst_energy,
        1e-14,
        "max |E_N/ħω - (N+2)| at δ=0".to_string(),
    );
    ctx.push(
        "oscillator_limit_degeneracy",
        degeneracy_mismatches as f64,
        0.5,
        detail,
    );
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 7: spheroidal consistency
// -------------------------------------------------------------------------
fn tridiag_of(m: &[Vec<f64>]) -> Result<SymTriMatrix> {
    let dim = m.len();
    SymTriMatrix::new(
        (0..dim).map(|i| m[i][i]).collect(),
        (0..dim - 1).map(|i| 0.5 * (m[i][i + 1] + m[i + 1][i])).collect(),
    )
}

fn check_spheroidal(ctx: &mut Ctx) -> Result<()> {
    let mut worst_similarity = 0.0_f64;
    let mut worst_r0 = 0.0_f64;
    let mut solves = 0usize;
    for (_, _, params, sec) in grid_sectors(4)? {
        let _ = params;
        for n in 0..=10u32 {
            let dim = multiplet_dim(n, &sec);
            if dim == 0 {
                continue;
            }
            for &r in &[0.0, 0.1, 1.0, 10.0] {
                let qe = build_q_matrix(n, &sec, r, QBasis::Euler)?;
                let qp = build_q_matrix(n, &sec, r, QBasis::Polar)?;
                if dim == 1 {
                    worst_similarity = worst_similarity.max((qe[0][0] - qp[0][0]).abs());
                    continue;
                }
                let ee = symtri_eigen(&tridiag_of(&qe)?)?;
                let ep = symtri_eigen(&tridiag_of(&qp)?)?;
                for (a, b) in ee.values.iter().zip(&ep.values) {
                    worst_similarity = worst_similarity.max((a - b).abs());
                }
                if r == 0.0 {
                    for (q, e) in list_euler_states(n, &sec).iter().enumerate() {
                        worst_r0 = worst_r0
                            .max((ee.values[q] - lambda_eigenvalue(e.j, &sec)).abs());
                    }
                }
                solves += 1;
            }
        }
    }
    ctx.push(
        "spheroidal_spectrum_similarity",
        worst_similarity,
        1e-10,
        format!("Euler vs polar Q spectra over {solves} solves (N<=10, R in {{0, 0.1, 1, 10}})"),
    );
    ctx.push(
        "spheroidal_r_zero_limit",
        worst_r0,
        1e-12,
        "max |Q_q(0) - λ_j|".to_string(),
    );

    // perturbation slope: |Q_q(R) - λ| must scale linearly where the
    // first-order coefficient is nonzero (needs c1 != c2 so m1 != m2)
    let params = SystemParams::natural(0.5, 2.0)?;
    let sec = sector(&params, HalfInt::from_twice(0), HalfInt::from_twice(0))?;
    let n = 6;
    let omega_e = omega_matrix_euler(n, &sec, MatrixSource::Oracle)?;
    let min_diag = omega_e
        .iter()
        .enumerate()
        .map(|(i, row)| row[i].abs())
        .fold(f64::INFINITY, f64::min);
    let lambdas: Vec<f64> = list_euler_states(n, &sec)
        .iter()
        .map(|q| lambda_eigenvalue(q.j, &sec))
        .collect();
    let rs = [1e-2, 1e-3, 1e-4];
    let mut shifts = vec![Vec::new(); lambdas.len()];
    for &r in &rs {
        let sol = solve_spheroidal(n, &sec, r)?;
        for (q, &qv) in sol.q_values.iter().enumerate() {
            shifts[q].push((qv - lambdas[q]).abs());
        }
    }
    let mut worst_exponent_dev = 0.0_f64;
    for shift in &shifts {
        // least-squares slope of ln d against ln R
        let xs: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
        let ys: Vec<f64> = shift.iter().map(|d| d.ln()).collect();
        let xm = xs.iter().sum::<f64>() / xs.len() as f64;
        let ym = ys.iter().sum::<f64>() / ys.len() as f64;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - xm) * (y - ym))
            .sum::<f64>()
            / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
        worst_exponent_dev = worst_exponent_dev.max((slope - 1.0).abs());
    }
    ctx.push(
        "spheroidal_perturbation_slope",
        worst_exponent_dev,
        0.05,
        format!(
            "fitted |Q_q(R) - λ| exponent over R in {rs:?} at c=(0.5, 2.0), N={n}; min first-order coefficient {min_diag:.3e}"
        ),
    );
    Ok(())
}

// -------------------------------------------------------------------------
// criterion 8: recursion residuals and the typo-ledger report
// -------------------------------------------------------------------------
fn check_recursions(ctx: &mut Ctx) -> Result<()> {
    let mut worst_oracle = 0.0_f64;
    for &(c1, c2, tm, ts) in &[(0.0, 0.0, 0, 0), (0.5, 2.0, 0, 0), (2.0, 0.5, 2, 0), (0.5, 2.0, 1, 1)]
    {
        let params = SystemParams::natural(c1, c2)?;
        let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
        for n in 0..=10u32 {
            if multiplet_dim(n, &sec) == 0 {
                continue;
            }
            for &r in &[0.0, 0.1, 1.0, 10.0] {
                let sol = solve_spheroidal(n, &sec, r)?;
                let rep = recursion_residual(&sol, RecursionSource::OracleConsistent)?;
                worst_oracle = worst_oracle.max(rep.max_u).max(rep.max_v);
            }
        }
    }
    ctx.push(
        "recursion_oracle_residual",
        worst_oracle,
        1e-10,
        "three-term recursion with oracle-consistent coefficients, every eigenvector".to_string(),
    );

    let report_a = typo_ledger_report()?;
    let report_b = typo_ledger_report()?;
    let deterministic = report_a == report_b;
    ctx.push(
        "recursion_typo_ledger_report",
        if deterministic { 0.0 } else { 1.0 },
        0.5,
        report_a,
    );
    Ok(())
}

/// The printed-formula comparison report: printed tridiagonal matrices and
/// recursion coefficients against the oracle, plus the printed normalization
/// constants against the numerical ones.
pub fn typo_ledger_report() -> Result<String> {
    let mut out = String::from("typo ledger: printed closed forms vs oracle\n");
    let cases = [(0.0_f64, 0.0_f64, 0, 0), (0.5, 2.0, 0, 0), (2.0, 0.5, 2, 0), (0.5, 2.0, 1, 1)];
    for &(c1, c2, tm, ts) in &cases {
        let params = SystemParams::natural(c1, c2)?;
        let sec = sector(&params, HalfInt::from_twice(tm), HalfInt::from_twice(ts))?;
        let n = (sec.m_plus.twice() + 6) as u32;
        let dim = multiplet_dim(n, &sec);
        let fmt = |x: f64| {
            if x.is_nan() {
                "NaN".to_string()
            } else {
                format!("{x:.6e}")
            }
        };
        let max_delta = |a: &[Vec<f64>], b: &[Vec<f64>]| -> String {
            let mut worst = 0.0_f64;
            let mut nan = 0usize;
            for (ra, rb) in a.iter().zip(b) {
                for (x, y) in ra.iter().zip(rb) {
                    let d = (x - y).abs();
                    if d.is_nan() {
                        nan += 1;
                    } else {
                        worst = worst.max(d);
                    }
                }
            }
            format!("max|printed-oracle|={} nan_entries={nan}", fmt(worst))
        };
        let om_p = omega_matrix_euler(n, &sec, MatrixSource::ClosedForm)?;
        let om_o = omega_matrix_euler(n, &sec, MatrixSource::Oracle)?;
        let lm_p = lambda_matrix_polar(n, &sec, MatrixSource::ClosedForm)?;
        let lm_o = lambda_matrix_polar(n, &sec, MatrixSource::Oracle)?;
        out.push_str(&format!(
            "sector c=({c1},{c2}) m={tm}/2 s={ts}/2 N={n} dim={dim}\n  omega_euler: {}\n  lambda_polar: {}\n",
            max_delta(&om_p, &om_o),
            max_delta(&lm_p, &lm_o)
        ));
        for &r in &[0.1, 1.0] {
            let sol = solve_spheroidal(n, &sec, r)?;
            let rep = recursion_residual(&sol, RecursionSource::PaperPrinted)?;
            out.push_str(&format!(
                "  printed recursions at R={r}: max_u={} max_v={} nan={}\n",
                fmt(rep.max_u),
                fmt(rep.max_v),
                rep.nan_count
            ));
        }
        // printed normalization constants vs numerical
        for q in list_euler_states(n, &sec) {
            let num_z = oracle::normalize_numeric(
                oracle::NormalizeKind::Angular { j: q.j },
                &sec,
                &params,
            )?;
            let num_r = oracle::normalize_numeric(
                oracle::NormalizeKind::Radial { n, j: q.j },
                &sec,
                &params,
            )?;
            out.push_str(&format!(
                "  j={}: N_jms printed/numeric={} C_Nj printed/numeric={}\n",
                q.j,
                fmt(model::printed_n_jms(q.j, &sec) / num_z),
                fmt(model::printed_c_nj(n, q.j, &sec, &params) / num_r)
            ));
        }
        let phi_num = oracle::normalize_numeric(
            oracle::NormalizeKind::Polar { n_a: 1, axis: PolarAxis::First },
            &sec,
            &params,
        )?;
        out.push_str(&format!(
            "  Phi prefactor printed/numeric={}\n",
            fmt(model::printed_phi_prefactor(1, sec.big_m1, sec.delta1, &params) / phi_num)
        ));
        let polar0 = list_polar_states(n, &sec)[0];
        out.push_str(&format!(
            "  omega eigenvalue: used 2a²Ω̃={} printed={}\n",
            fmt(model::omega_physical(&polar0, &sec, &params)),
            fmt(model::printed_omega_eigenvalue(&polar0, &sec, &params))
        ));
    }
    Ok(out)
}

// -------------------------------------------------------------------------
// criterion 9: numerics substrate
// -------------------------------------------------------------------------
fn check_numerics_substrate(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed ^ 0x9e3779b97f4a7c15);

    // quadrature exactness on random monomials
    let mut worst_quad = 0.0_f64;
    let kinds = [
        QuadratureKind::Legendre,
        QuadratureKind::Laguerre { alpha: 0.0 },
        QuadratureKind::Laguerre { alpha: 1.8 },
        QuadratureKind::Jacobi { alpha: 0.6, beta: 2.1 },
    ];
    for kind in kinds {
        for &n in &[4usize, 16, 64] {
            let rule = golub_welsch(kind, n)?;
            for _ in 0..20 {
                let k = rng.gen_range(0..=(2 * n as u32 - 1));
                let got = rule.integrate(|x| x.powi(k as i32));
                let want = exact_moment(kind, k);
                worst_quad = worst_quad.max((got - want).abs() / want.abs().max(1.0));
            }
        }
    }
    ctx.push(
        "quadrature_monomial_exactness",
        worst_quad,
        1e-12,
        "random monomial degrees <= 2n-1, relative".to_string(),
    );

    // eigen residuals and Sturm agreement on 20 random matrices
    let mut worst_resid = 0.0_f64;
    let mut sturm_mismatches = 0usize;
    for _ in 0..20 {
        let dim = rng.gen_range(2..=14);
        let t = SymTriMatrix::new(
            (0..dim).map(|_| rng.gen_range(-4.0..4.0)).collect(),
            (0..dim - 1).map(|_| rng.gen_range(-3.0..3.0)).collect(),
        )?;
        let scale = t.norm_inf().max(1.0);
        let eig = symtri_eigen(&t)?;
        for (k, v) in eig.vectors.iter().enumerate() {
            let r: f64 = t
                .apply(v)
                .iter()
                .zip(v)
                .map(|(tv, vi)| (tv - eig.values[k] * vi).powi(2))
                .sum::<f64>()
                .sqrt();
            worst_resid = worst_resid.max(r / scale);
            let eps = 1e-8 * scale;
            if sturm_count(&t, eig.values[k] - eps) > k
                || sturm_count(&t, eig.values[k] + eps) < k + 1
            {
                sturm_mismatches += 1;
            }
        }
    }
    ctx.push(
        "tridiagonal_eigen_residual",
        worst_resid,
        1e-12,
        "||Tv - λv||₂ / ||T|| on 20 random matrices".to_string(),
    );
    ctx.push(
        "sturm_count_agreement",
        sturm_mismatches as f64,
        0.5,
        "bisection-counted intervals bracket every eigenvalue".to_string(),
    );
    Ok(())
}

fn exact_moment(kind: QuadratureKind, k: u32) -> f64 {
    use crate::specfun::ln_gamma;
    match kind {
        QuadratureKind::Legendre => {
            if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            }
        }
        QuadratureKind::Laguerre { alpha } => ln_gamma(alpha + 1.0 + k as f64).unwrap().exp(),
        QuadratureKind::Jacobi { alpha, beta } => {
            let mut total = 0.0;
            let mut binom = 1.0;
            for i in 0..=k {
                if i > 0 {
                    binom *= (k - i + 1) as f64 / i as f64;
                }
                let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
                let ln_b = ln_gamma(beta + 1.0 + i as f64).unwrap()
                    + ln_gamma(alpha + 1.0).unwrap()
                    - ln_gamma(alpha + beta + 2.0 + i as f64).unwrap();
                total += binom * sign * 2.0_f64.powi(i as i32) * ln_b.exp();
            }
            total * 2.0_f64.powf(alpha + beta + 1.0)
        }
    }
}

// -------------------------------------------------------------------------
// criterion 10: the Kustaanheimo-Stiefel identity
// -------------------------------------------------------------------------
fn check_ks_identity(ctx: &mut Ctx) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed ^ 0x00ff00ff00ff00ff);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let p = Point4::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let ks = model::ks_map(&p);
        let lhs = ks.x * ks.x + ks.y * ks.y + ks.z * ks.z;
        let rhs = p.norm_sq() * p.norm_sq();
        worst = worst.max((lhs - rhs).abs() / (f64::EPSILON * rhs.max(f64::MIN_POSITIVE)));
    }
    ctx.push(
        "ks_map_identity",
        worst,
        8.0,
        "x²+y²+z² = (u·u)² on 1000 random points, in units of ε·(u·u)²".to_string(),
    );
    Ok(())
}
