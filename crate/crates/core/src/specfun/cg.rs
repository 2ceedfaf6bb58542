//! Analytically continued SU(2) Clebsch-Gordan coefficient.
//!
//! Single-sum form with the phase convention `(-1)^{a-α}` built in. All
//! factorials are read as `Γ(x+1)`, which is what extends the coefficient to
//! real arguments with integer differences.

use super::{lgamma_pos, near_nonneg_int, signlog_sum, SignLog};
use crate::error::Error;
use crate::Result;

/// Clebsch-Gordan coefficient `C^{c γ}_{a α; b β}`, continued to real
/// arguments whose pairwise differences are integers.
///
/// Returns 0 when `γ ≠ α + β`. Requires `a - α` to be a nonnegative integer
/// (that is what terminates the sum) and every gamma argument outside the
/// terminating sum to be positive; anything else is a domain error.
///
/// The `(a+b-γ)!` prefactor is folded into the sum term by term,
/// `(a+b-γ)! / (γ-a-b)_k = (-1)^k Γ(a+b-γ+1-k)`, which keeps the expression
/// finite on the stretched boundary `c = a + b` where the two factors are
/// separately singular.
pub fn clebsch_gordan_continued(
    a: f64,
    alpha: f64,
    b: f64,
    beta: f64,
    c: f64,
    gamma: f64,
) -> Result<f64> {
    let scale = [a, b, c, alpha, beta, gamma]
        .iter()
        .fold(1.0_f64, |acc, x| acc.max(x.abs()));
    if (alpha + beta - gamma).abs() > 1e-9 * scale {
        return Ok(0.0);
    }

    let k_a = near_nonneg_int(a - alpha).ok_or_else(|| {
        Error::domain(format!(
            "clebsch_gordan_continued: a - α = {} is not a nonnegative integer",
            a - alpha
        ))
    })?;
    let mut k_max = k_a;
    if let Some(kc) = near_nonneg_int(c - gamma) {
        k_max = k_max.min(kc);
    }

    if 2.0 * c + 1.0 <= 0.0 {
        return Err(Error::domain(format!(
            "clebsch_gordan_continued: 2c+1 = {} <= 0",
            2.0 * c + 1.0
        )));
    }
    let gamma_args = [
        ("b-a+c+1", b - a + c + 1.0),
        ("a+α+1", a + alpha + 1.0),
        ("b+β+1", b + beta + 1.0),
        ("c+γ+1", c + gamma + 1.0),
        ("b-β+1", b - beta + 1.0),
        ("c-γ+1", c - gamma + 1.0),
        ("a+b-c+1", a + b - c + 1.0),
        ("a-b+c+1", a - b + c + 1.0),
        ("a+b+c+2", a + b + c + 2.0),
    ];
    for (name, v) in gamma_args {
        if v <= 0.0 {
            return Err(Error::domain(format!(
                "clebsch_gordan_continued: gamma argument {name} = {v} <= 0"
            )));
        }
    }
    // a+b-γ+1-k stays positive for k <= k_max because a+b-γ >= (a-α) + (b-β)
    // with b-β > -1; guard anyway for pathological continued inputs.
    let w = a + b - gamma;
    if w + 1.0 - k_max as f64 <= 0.0 {
        return Err(Error::domain(format!(
            "clebsch_gordan_continued: a+b-γ = {w} too small for the {k_max}-term sum"
        )));
    }
    // 1/Γ(b-a+γ+1+k) must be meaningful for every k: positive arguments are
    // fine, nonpositive integers give an exact zero (that is the regularized
    // reading of (b-a+γ)! (b-a+γ+1)_k), anything else is out of domain.
    let y = b - a + gamma;
    let y_neg_int = if y > -0.5 {
        None
    } else if let Some(p) = super::near_nonpos_int(y) {
        Some(p)
    } else {
        return Err(Error::domain(format!(
            "clebsch_gordan_continued: b-a+γ = {y} negative and not an integer"
        )));
    };

    let ln_pre = 0.5
        * ((2.0 * c + 1.0).ln()
            + lgamma_pos(b - a + c + 1.0)
            + lgamma_pos(a + alpha + 1.0)
            + lgamma_pos(b + beta + 1.0)
            + lgamma_pos(c + gamma + 1.0)
            - lgamma_pos(b - beta + 1.0)
            - lgamma_pos(c - gamma + 1.0)
            - lgamma_pos(a + b - c + 1.0)
            - lgamma_pos(a - b + c + 1.0)
            - lgamma_pos(a + b + c + 2.0)
            - lgamma_pos(a - alpha + 1.0));
    let sign_pre = if k_a % 2 == 0 { 1.0 } else { -1.0 };

    // Σ_k (-1)^k Γ(w+1-k) / Γ(y+1+k) · (α-a)_k (c+γ+1)_k (γ-c)_k / k!
    let mut terms = Vec::with_capacity(k_max as usize + 1);
    let mut poch = SignLog::one();
    for k in 0..=k_max {
        let kf = k as f64;
        let term = match y_neg_int {
            Some(p) if k < p => SignLog::zero(),
            Some(p) => poch.mul_gamma(w + 1.0 - kf).div_gamma(kf - p as f64 + 1.0),
            None => poch.mul_gamma(w + 1.0 - kf).div_gamma(y + 1.0 + kf),
        };
        let term = if k % 2 == 0 { term } else { term.mul_value(-1.0) };
        terms.push(term);
        if k < k_max {
            poch = poch
                .mul_value(alpha - a + kf)
                .mul_value(c + gamma + 1.0 + kf)
                .mul_value(gamma - c + kf)
                .div_value(kf + 1.0);
        }
    }
    let sum = signlog_sum(&terms);
    Ok(sign_pre * sum.sign * (sum.ln + ln_pre).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::HalfInt;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn cg(
        a: HalfInt,
        alpha: HalfInt,
        b: HalfInt,
        beta: HalfInt,
        c: HalfInt,
        gamma: HalfInt,
    ) -> f64 {
        clebsch_gordan_continued(
            a.to_f64(),
            alpha.to_f64(),
            b.to_f64(),
            beta.to_f64(),
            c.to_f64(),
            gamma.to_f64(),
        )
        .unwrap()
    }

    /// Brute-force Racah sum, the independent oracle for standard arguments.
    fn cg_racah(ta: i32, talpha: i32, tb: i32, tbeta: i32, tc: i32, tgamma: i32) -> f64 {
        if talpha + tbeta != tgamma {
            return 0.0;
        }
        if talpha.abs() > ta || tbeta.abs() > tb || tgamma.abs() > tc {
            return 0.0;
        }
        if tc < (ta - tb).abs() || tc > ta + tb || (ta + tb + tc) % 2 != 0 {
            return 0.0;
        }
        let fact = |t: i32| -> f64 {
            assert!(t >= 0 && t % 2 == 0, "factorial of {t}/2");
            let mut p = 1.0;
            for i in 1..=(t / 2) {
                p *= i as f64;
            }
            p
        };
        let delta = ((fact(ta + tb - tc) * fact(ta - tb + tc) * fact(-ta + tb + tc))
            / fact(ta + tb + tc + 2))
        .sqrt();
        let root = ((tc + 1) as f64
            * fact(ta + talpha)
            * fact(ta - talpha)
            * fact(tb + tbeta)
            * fact(tb - tbeta)
            * fact(tc + tgamma)
            * fact(tc - tgamma))
        .sqrt();
        let k_lo = 0.max((-(tc - tb + talpha)) / 2).max((-(tc - ta - tbeta)) / 2);
        let k_hi = ((ta + tb - tc) / 2)
            .min((ta - talpha) / 2)
            .min((tb + tbeta) / 2);
        let mut s = 0.0;
        for k in k_lo..=k_hi {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign
                / (fact(2 * k)
                    * fact(ta + tb - tc - 2 * k)
                    * fact(ta - talpha - 2 * k)
                    * fact(tb + tbeta - 2 * k)
                    * fact(tc - tb + talpha + 2 * k)
                    * fact(tc - ta - tbeta + 2 * k));
        }
        delta * root * s
    }

    #[test]
    fn trivial_coupling() {
        assert_eq!(cg_racah(0, 0, 0, 0, 0, 0), 1.0);
        assert_relative_eq!(
            clebsch_gordan_continued(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn projection_selection_rule() {
        assert_eq!(
            clebsch_gordan_continued(1.0, 1.0, 1.0, -1.0, 2.0, 1.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn half_spin_frozen_values() {
        let h = HalfInt::from_twice;
        // oracle first, then freeze
        assert_relative_eq!(cg_racah(1, 1, 1, -1, 2, 0), 0.5_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            cg(h(1), h(1), h(1), h(-1), h(2), h(0)),
            0.5_f64.sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            cg(h(1), h(-1), h(1), h(1), h(0), h(0)),
            -(0.5_f64.sqrt()),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            cg(h(2), h(0), h(2), h(0), h(4), h(0)),
            (2.0_f64 / 3.0).sqrt(),
            max_relative = 1e-13
        );
        assert_abs_diff_eq!(cg(h(2), h(0), h(2), h(0), h(2), h(0)), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn matches_racah_oracle_up_to_j4() {
        for ta in 0..=8i32 {
            for tb in 0..=8i32 {
                if (ta + tb) % 2 != 0 && false {
                    continue;
                }
                for tc in (ta - tb).abs()..=(ta + tb) {
                    if (ta + tb + tc) % 2 != 0 {
                        continue;
                    }
                    for talpha in (-ta..=ta).step_by(2) {
                        for tbeta in (-tb..=tb).step_by(2) {
                            let tgamma = talpha + tbeta;
                            if tgamma.abs() > tc {
                                continue;
                            }
                            let want = cg_racah(ta, talpha, tb, tbeta, tc, tgamma);
                            let got = clebsch_gordan_continued(
                                ta as f64 / 2.0,
                                talpha as f64 / 2.0,
                                tb as f64 / 2.0,
                                tbeta as f64 / 2.0,
                                tc as f64 / 2.0,
                                tgamma as f64 / 2.0,
                            )
                            .unwrap();
                            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        // a - α not a nonnegative integer
        assert!(clebsch_gordan_continued(1.0, 0.5, 1.0, -0.5, 2.0, 0.0).is_err());
        // out of triangle: (a+b-c)! at a negative integer
        assert!(clebsch_gordan_continued(1.0, 0.0, 1.0, 0.0, 3.0, 0.0).is_err());
        // |β| > b reaches Γ(b-β+1) at a nonpositive point
        assert!(clebsch_gordan_continued(3.0, 1.0, 1.0, -2.0, 3.0, -1.0).is_err());
    }

    #[test]
    fn orthonormality_first_kind() {
        // Σ_{α+β=γ} C^{cγ} C^{c'γ} = δ_{cc'} for all a, b <= 6
        let mut worst = 0.0_f64;
        for ta in 0..=12i32 {
            for tb in 0..=12i32 {
                for tgamma in -(ta + tb)..=(ta + tb) {
                    if (tgamma - ta - tb) % 2 != 0 {
                        continue;
                    }
                    let tc_lo = tgamma.abs().max((ta - tb).abs());
                    let tcs: Vec<i32> = (tc_lo..=(ta + tb)).step_by(2).collect();
                    if tcs.is_empty() {
                        continue;
                    }
                    // rows: c values, cols: α values with β = γ - α admissible
                    let mut table: Vec<Vec<f64>> = Vec::new();
                    for &tc in &tcs {
                        let mut row = Vec::new();
                        for talpha in (-ta..=ta).step_by(2) {
                            let tbeta = tgamma - talpha;
                            if tbeta.abs() > tb {
                                continue;
                            }
                            row.push(
                                clebsch_gordan_continued(
                                    ta as f64 / 2.0,
                                    talpha as f64 / 2.0,
                                    tb as f64 / 2.0,
                                    tbeta as f64 / 2.0,
                                    tc as f64 / 2.0,
                                    tgamma as f64 / 2.0,
                                )
                                .unwrap(),
                            );
                        }
                        table.push(row);
                    }
                    for (i, ri) in table.iter().enumerate() {
                        for (k, rk) in table.iter().enumerate() {
                            let dot: f64 = ri.iter().zip(rk).map(|(x, y)| x * y).sum();
                            let want = if i == k { 1.0 } else { 0.0 };
                            worst = worst.max((dot - want).abs());
                        }
                    }
                }
            }
        }
        assert!(worst < 1e-12, "worst orthonormality defect {worst:e}");
    }

    #[test]
    fn orthonormality_second_kind() {
        // Σ_c C^{cγ}_{aα;bβ} C^{cγ}_{aα';bβ'} = δ_{αα'} (with β = γ-α)
        for (ta, tb) in [(2, 2), (3, 1), (5, 3), (12, 8), (7, 7)] {
            for tgamma in [-1i32, 0, 2] {
                if (tgamma - ta - tb) % 2 != 0 {
                    continue;
                }
                let tas: Vec<i32> = (-ta..=ta)
                    .step_by(2)
                    .filter(|&x| (tgamma - x).abs() <= tb)
                    .collect();
                let tc_lo = tgamma.abs().max((ta - tb).abs());
                for &ta1 in &tas {
                    for &ta2 in &tas {
                        let mut dot = 0.0;
                        for tc in (tc_lo..=(ta + tb)).step_by(2) {
                            let c1 = clebsch_gordan_continued(
                                ta as f64 / 2.0,
                                ta1 as f64 / 2.0,
                                tb as f64 / 2.0,
                                (tgamma - ta1) as f64 / 2.0,
                                tc as f64 / 2.0,
                                tgamma as f64 / 2.0,
                            )
                            .unwrap();
                            let c2 = clebsch_gordan_continued(
                                ta as f64 / 2.0,
                                ta2 as f64 / 2.0,
                                tb as f64 / 2.0,
                                (tgamma - ta2) as f64 / 2.0,
                                tc as f64 / 2.0,
                                tgamma as f64 / 2.0,
                            )
                            .unwrap();
                            dot += c1 * c2;
                        }
                        let want = if ta1 == ta2 { 1.0 } else { 0.0 };
                        assert_abs_diff_eq!(dot, want, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    /// Both three-term recurrences, on standard and continued arguments.
    mod recurrences {
        use super::*;

        fn cgv(a: f64, al: f64, b: f64, be: f64, c: f64, ga: f64) -> Option<f64> {
            clebsch_gordan_continued(a, al, b, be, c, ga).ok()
        }

        /// residual of the projection-shift recurrence at fixed c
        fn rec_projection_residual(a: f64, al: f64, b: f64, be: f64, c: f64) -> Option<f64> {
            let ga = al + be;
            let lhs = (c * (c + 1.0) - a * (a + 1.0) - b * (b + 1.0) - 2.0 * al * be)
                * cgv(a, al, b, be, c, ga)?;
            let w1 = (a + al) * (a - al + 1.0) * (b - be) * (b + be + 1.0);
            let w2 = (a - al) * (a + al + 1.0) * (b + be) * (b - be + 1.0);
            let t1 = if w1.abs() < 1e-12 {
                0.0
            } else {
                w1.sqrt() * cgv(a, al - 1.0, b, be + 1.0, c, ga)?
            };
            let t2 = if w2.abs() < 1e-12 {
                0.0
            } else {
                w2.sqrt() * cgv(a, al + 1.0, b, be - 1.0, c, ga)?
            };
            Some(lhs - t1 - t2)
        }

        /// residual of the c-lowering recurrence
        fn rec_c_lowering_residual(a: f64, al: f64, b: f64, be: f64, c: f64) -> Option<f64> {
            let ga = al + be;
            let outer = 4.0 * c * c * (2.0 * c + 1.0) * (2.0 * c - 1.0)
                / ((c + ga)
                    * (c - ga)
                    * (b - a + c)
                    * (a - b + c)
                    * (a + b - c + 1.0)
                    * (a + b + c + 1.0));
            if outer <= 0.0 {
                return None;
            }
            let inner = (c - ga - 1.0) * (c + ga - 1.0) * (b - a + c - 1.0) * (a - b + c - 1.0)
                * (a + b - c + 2.0)
                * (a + b + c)
                / (4.0 * (c - 1.0).powi(2) * (2.0 * c - 3.0) * (2.0 * c - 1.0));
            if inner < 0.0 {
                return None;
            }
            let lhs = cgv(a, al, b, be, c, ga)?;
            let c2 = cgv(a, al, b, be, c - 2.0, ga)?;
            let c1 = cgv(a, al, b, be, c - 1.0, ga)?;
            let mid = ((al - be) * c * (c - 1.0) - ga * a * (a + 1.0) + ga * b * (b + 1.0))
                / (2.0 * c * (c - 1.0));
            Some(lhs + outer.sqrt() * (inner.sqrt() * c2 - mid * c1))
        }

        #[test]
        fn standard_arguments() {
            let mut checked = 0;
            for ta in 1..=8i32 {
                for tb in 1..=8i32 {
                    for tc in ((ta - tb).abs()..=(ta + tb)).step_by(2) {
                        for tal in (-ta..=ta).step_by(2) {
                            for tbe in (-tb..=tb).step_by(2) {
                                if (tal + tbe).abs() > tc {
                                    continue;
                                }
                                let (a, al, b, be, c) = (
                                    ta as f64 / 2.0,
                                    tal as f64 / 2.0,
                                    tb as f64 / 2.0,
                                    tbe as f64 / 2.0,
                                    tc as f64 / 2.0,
                                );
                                if let Some(r) = rec_projection_residual(a, al, b, be, c) {
                                    assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);
                                    checked += 1;
                                }
                                if c >= 2.0 && (tal + tbe).abs() <= tc - 4 {
                                    if let Some(r) = rec_c_lowering_residual(a, al, b, be, c) {
                                        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);
                                        checked += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            assert!(checked > 500, "only {checked} recurrence instances checked");
        }

        #[test]
        fn continued_arguments() {
            // the argument families that arise from the interbasis map:
            // a,b carry irrational shifts, all differences stay integral
            let mut checked = 0;
            for &(d1, d2) in &[(0.37_f64, 1.93_f64), (2.0_f64.sqrt(), 0.5)] {
                for n_half in 3..=6_i32 {
                    for tmm in [-1_i32, 0, 1, 2] {
                        let mm = tmm as f64 / 2.0;
                        let a = (2.0 * n_half as f64 - 2.0 * mm + 2.0 * d2) / 4.0;
                        let b = (2.0 * n_half as f64 + 2.0 * mm + 2.0 * d1) / 4.0;
                        let ga = a + b - (n_half as f64) + 2.0; // a+b-γ = N/2-2 >= 0
                        for dal in -1..=1 {
                            let al = a - 1.0 + dal as f64; // keeps a-α a small integer
                            let be = ga - al;
                            for dc in 0..=2 {
                                let c = ga + dc as f64;
                                if let Some(r) = rec_projection_residual(a, al, b, be, c) {
                                    assert!(
                                        r.abs() < 1e-10,
                                        "projection residual {r:e} at a={a} α={al} b={b} β={be} c={c}"
                                    );
                                    checked += 1;
                                }
                                if let Some(r) = rec_c_lowering_residual(a, al, b, be, c) {
                                    assert!(
                                        r.abs() < 1e-10,
                                        "c-lowering residual {r:e} at a={a} α={al} b={b} β={be} c={c}"
                                    );
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
            assert!(checked > 50, "only {checked} continued instances checked");
        }
    }
}
