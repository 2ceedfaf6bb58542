//! Special-function kernel: log-gamma, Pochhammer symbols, Jacobi polynomials,
//! terminating hypergeometric sums and the analytically continued SU(2)
//! Clebsch-Gordan coefficient.
//!
//! Terminating series are evaluated with sign-tracked log-magnitude terms and
//! compensated summation, so Pochhammer products stay usable well past the
//! point where they overflow a plain double.

mod cg;
mod half_int;

pub use cg::clebsch_gordan_continued;
pub use half_int::HalfInt;

use crate::error::Error;
use crate::Result;

/// Relative slack when deciding that a real parameter is an integer.
const INT_TOL: f64 = 1e-9;

// Lanczos approximation, g = 7, n = 9 (Godfrey coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918938533204672741780329736406;

fn lanczos_ln_gamma(x: f64) -> f64 {
    // valid for x >= 0.5; series written for Γ(z+1) with z = x-1, so the
    // partial-fraction denominators start at x itself
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G - 0.5;
    HALF_LN_TWO_PI + (x - 0.5) * t.ln() - t + sum.ln()
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma_pos(x))
}

/// Internal log-gamma for arguments already known positive.
pub(crate) fn lgamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "lgamma_pos called with {x}");
    if x < 0.5 {
        // lnΓ(x) = lnΓ(x+1) - ln x keeps the Lanczos sum in its sweet spot
        lanczos_ln_gamma(x + 1.0) - x.ln()
    } else {
        lanczos_ln_gamma(x)
    }
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence in `n`.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::domain(format!(
            "jacobi_p requires a, b > -1, got a={a}, b={b}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut pm1 = 1.0;
    let mut p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for k in 2..=n {
        let k = k as f64;
        let c0 = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (c0 - 2.0);
        let c2 = (c0 - 1.0) * (a * a - b * b);
        let c3 = (c0 - 2.0) * (c0 - 1.0) * c0;
        let c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c0;
        let next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// Terminating confluent hypergeometric sum `F(-n; c; x)`.
pub fn hyp1f1_terminating(n: u32, c: f64, x: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::domain(format!(
            "hyp1f1_terminating requires c > 0, got c={c}"
        )));
    }
    let mut sum = Kahan::new();
    let mut term = 1.0;
    for k in 0..=n {
        sum.add(term);
        if k < n {
            let kf = k as f64;
            term *= (kf - n as f64) * x / ((c + kf) * (kf + 1.0));
        }
    }
    Ok(sum.value())
}

/// Gauss hypergeometric function at unit argument.
///
/// Terminating series when `a` or `b` is a nonpositive integer; otherwise the
/// Gauss summation `Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`, which requires a
/// convergent series (`c - a - b > 0`) and positive gamma arguments.
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64) -> Result<f64> {
    let term_a = near_nonpos_int(a);
    let term_b = near_nonpos_int(b);
    if term_a.is_some() || term_b.is_some() {
        let n = match (term_a, term_b) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => unreachable!(),
        };
        if let Some(p) = near_nonpos_int(c) {
            if p < n {
                return Err(Error::domain(format!(
                    "gauss_2f1_unit: pole of (c)_k inside the sum, c={c}"
                )));
            }
        }
        let mut terms = Vec::with_capacity(n as usize + 1);
        let mut t = SignLog::one();
        for k in 0..=n {
            terms.push(t);
            if k < n {
                let kf = k as f64;
                t = t
                    .mul_value(a + kf)
                    .mul_value(b + kf)
                    .div_value((c + kf) * (kf + 1.0));
            }
        }
        return Ok(signlog_sum(&terms).to_f64());
    }
    if c - a - b <= 0.0 {
        return Err(Error::domain(format!(
            "gauss_2f1_unit diverges: c-a-b = {} <= 0 with nonterminating series",
            c - a - b
        )));
    }
    for (name, v) in [("c", c), ("c-a", c - a), ("c-b", c - b)] {
        if v <= 0.0 {
            return Err(Error::domain(format!(
                "gauss_2f1_unit: gamma argument {name} = {v} <= 0"
            )));
        }
    }
    Ok((lgamma_pos(c) + lgamma_pos(c - a - b) - lgamma_pos(c - a) - lgamma_pos(c - b)).exp())
}

/// Terminating `₃F₂{a1, a2, a3; b1, b2 | 1}`.
///
/// At least one upper parameter must be a nonpositive integer; the sum runs to
/// the smallest such termination index. Lower-parameter poles inside the sum
/// range are domain errors.
pub fn hyp3f2_unit_terminating(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    Ok(hyp3f2_signlog(a1, a2, a3, b1, b2)?.to_f64())
}

pub(crate) fn hyp3f2_signlog(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<SignLog> {
    let k_max = [a1, a2, a3]
        .iter()
        .filter_map(|&a| near_nonpos_int(a))
        .min()
        .ok_or_else(|| {
            Error::domain(format!(
                "hyp3f2_unit_terminating: no nonpositive-integer upper parameter in ({a1}, {a2}, {a3})"
            ))
        })?;
    for &b in &[b1, b2] {
        if let Some(p) = near_nonpos_int(b) {
            if p < k_max {
                return Err(Error::domain(format!(
                    "hyp3f2_unit_terminating: pole of ({b})_k inside the sum range 0..={k_max}"
                )));
            }
        }
    }
    let mut terms = Vec::with_capacity(k_max as usize + 1);
    let mut t = SignLog::one();
    for k in 0..=k_max {
        terms.push(t);
        if k < k_max {
            let kf = k as f64;
            t = t
                .mul_value(a1 + kf)
                .mul_value(a2 + kf)
                .mul_value(a3 + kf)
                .div_value((b1 + kf) * (b2 + kf) * (kf + 1.0));
        }
    }
    Ok(signlog_sum(&terms))
}

/// Rounds `x` to a nonpositive integer if it is within tolerance of one,
/// returning the magnitude.
pub(crate) fn near_nonpos_int(x: f64) -> Option<u32> {
    let r = x.round();
    if (x - r).abs() <= INT_TOL * x.abs().max(1.0) && r <= 0.0 {
        Some((-r) as u32)
    } else {
        None
    }
}

/// Rounds `x` to a nonnegative integer if it is within tolerance of one.
pub(crate) fn near_nonneg_int(x: f64) -> Option<u32> {
    let r = x.round();
    if (x - r).abs() <= INT_TOL * x.abs().max(1.0) && r >= 0.0 {
        Some(r as u32)
    } else {
        None
    }
}

/// Compensated (Kahan) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A real number carried as sign and log-magnitude.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SignLog {
    pub sign: f64,
    pub ln: f64,
}

impl SignLog {
    pub fn one() -> Self {
        SignLog { sign: 1.0, ln: 0.0 }
    }

    pub fn zero() -> Self {
        SignLog { sign: 0.0, ln: f64::NEG_INFINITY }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    pub fn mul_value(self, x: f64) -> Self {
        if x == 0.0 || self.is_zero() {
            return SignLog::zero();
        }
        SignLog { sign: self.sign * x.signum(), ln: self.ln + x.abs().ln() }
    }

    pub fn div_value(self, x: f64) -> Self {
        debug_assert!(x != 0.0);
        if self.is_zero() {
            return self;
        }
        SignLog { sign: self.sign * x.signum(), ln: self.ln - x.abs().ln() }
    }

    /// Multiply by `Γ(x)`, `x > 0`.
    pub fn mul_gamma(self, x: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        SignLog { sign: self.sign, ln: self.ln + lgamma_pos(x) }
    }

    /// Divide by `Γ(x)`, `x > 0`.
    pub fn div_gamma(self, x: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        SignLog { sign: self.sign, ln: self.ln - lgamma_pos(x) }
    }

    pub fn to_f64(self) -> f64 {
        self.sign * self.ln.exp()
    }
}

/// Sum of sign-log terms: scale out the largest magnitude, then a compensated
/// sum of the rescaled terms.
pub(crate) fn signlog_sum(terms: &[SignLog]) -> SignLog {
    let m = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.ln)
        .fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return SignLog::zero();
    }
    let mut sum = Kahan::new();
    for t in terms {
        if !t.is_zero() {
            sum.add(t.sign * (t.ln - m).exp());
        }
    }
    let s = sum.value();
    if s == 0.0 {
        SignLog::zero()
    } else {
        SignLog { sign: s.signum(), ln: m + s.abs().ln() }
    }
}
