//! q-arithmetic and basic hypergeometric primitives.
//!
//! Products of q-Pochhammer factors grow like `q^{-j²}` and overflow binary64
//! long before the representations get large, so real products are carried
//! as [`LogSigned`] values and only converted to linear scale at the end.
//! Factors of the form `1 − q^e` are evaluated with `expm1`, which keeps them
//! accurate to full relative precision as `q → 1`.
//!
//! `q = 1` is never reached by taking limits at runtime: every function that
//! has a removable singularity there dispatches to the classical formula.

use std::fmt;
use std::ops::{Div, DivAssign, Mul, MulAssign, Neg};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Deformation parameter `q ∈ (0, 1]` together with `κ = −ln q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QParam {
    q: f64,
    kappa: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::QOutOfRange(q));
        }
        // q - 1 is exact for q in [0.5, 1], so ln_1p keeps κ accurate near q = 1.
        let kappa = if q == 1.0 { 0.0 } else { -(q - 1.0).ln_1p() };
        Ok(Self { q, kappa })
    }

    /// The undeformed case `q = 1`.
    pub fn classical() -> Self {
        Self { q: 1.0, kappa: 0.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn is_classical(&self) -> bool {
        self.kappa == 0.0
    }

    /// `q²`, used for the q²-binomials in the ground state.
    pub fn squared(&self) -> Self {
        Self {
            q: self.q * self.q,
            kappa: 2.0 * self.kappa,
        }
    }

    /// `q^e` for real `e`.
    pub fn pow(&self, e: f64) -> f64 {
        if e == 0.0 {
            1.0
        } else {
            (-e * self.kappa).exp()
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// A real number stored as `sign · exp(log_abs)`.
///
/// Products and quotients are exact in the sign and additive in `log_abs`.
/// Zero has `sign = 0` and `log_abs = −∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSigned {
    sign: i8,
    log_abs: f64,
}

impl LogSigned {
    pub const ZERO: Self = Self {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };
    pub const ONE: Self = Self {
        sign: 1,
        log_abs: 0.0,
    };

    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    /// Positive value `exp(log_abs)`.
    pub fn from_ln(log_abs: f64) -> Self {
        Self { sign: 1, log_abs }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Square root of a non-negative value.
    pub fn sqrt(self) -> Self {
        debug_assert!(self.sign >= 0, "sqrt of negative LogSigned");
        Self {
            sign: self.sign,
            log_abs: 0.5 * self.log_abs,
        }
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let sign = if n % 2 == 0 {
            self.sign.abs()
        } else {
            self.sign
        };
        Self::new(sign, self.log_abs * f64::from(n))
    }
}

impl Mul for LogSigned {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.log_abs + rhs.log_abs)
    }
}

impl MulAssign for LogSigned {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Div for LogSigned {
    type Output = Self;
    /// Division by zero yields an infinite magnitude with the numerator's sign.
    fn div(self, rhs: Self) -> Self {
        if rhs.sign == 0 {
            return Self {
                sign: self.sign,
                log_abs: f64::INFINITY,
            };
        }
        Self::new(self.sign * rhs.sign, self.log_abs - rhs.log_abs)
    }
}

impl DivAssign for LogSigned {
    fn div_assign(&mut self, rhs: Self) {
        *self = *self / rhs;
    }
}

impl Neg for LogSigned {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            log_abs: self.log_abs,
        }
    }
}

/// `[r]_q = sinh(½rκ)/sinh(½κ)`; equals `r` at `q = 1`.
pub fn q_number(r: f64, qp: QParam) -> f64 {
    if qp.is_classical() {
        return r;
    }
    let k = qp.kappa();
    (0.5 * r * k).sinh() / (0.5 * k).sinh()
}

/// `{n}_q = (qⁿ − 1)/(q − 1) = 1 + q + … + q^{n−1}`.
pub fn q_brace_number(n: u32, qp: QParam) -> f64 {
    if qp.is_classical() {
        return f64::from(n);
    }
    let k = qp.kappa();
    (-f64::from(n) * k).exp_m1() / (-k).exp_m1()
}

/// Chebyshev polynomial of the second kind by the three-term recurrence.
pub fn chebyshev_u(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `1 − σ q^e` for `σ = ±1`, accurate to full relative precision.
pub fn one_minus_signed_power(sign: f64, exponent: f64, qp: QParam) -> f64 {
    if sign > 0.0 {
        -(-exponent * qp.kappa()).exp_m1()
    } else {
        1.0 + qp.pow(exponent)
    }
}

/// `(σ q^e; q)_n` in log domain. Negative `n` uses
/// `(a; q)_{−n} = 1/(a q^{−n}; q)_n`.
pub fn q_pochhammer_power(sign: f64, exponent: f64, qp: QParam, n: i64) -> LogSigned {
    if n < 0 {
        return LogSigned::ONE / q_pochhammer_power(sign, exponent + n as f64, qp, -n);
    }
    let mut acc = LogSigned::ONE;
    for k in 0..n {
        acc *= LogSigned::from_f64(one_minus_signed_power(sign, exponent + k as f64, qp));
    }
    acc
}

/// `(z; q)_n = ∏_{k<n} (1 − z q^k)`, with `(z; q)_0 = 1`.
pub fn q_pochhammer(z: Complex64, qp: QParam, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut zk = z;
    for _ in 0..n {
        acc *= 1.0 - zk;
        zk *= qp.q();
    }
    acc
}

/// Complex logarithm of `(z; q)_n`, including negative `n`. The real part is
/// `−∞` when a factor vanishes.
pub fn q_pochhammer_ln(z: Complex64, qp: QParam, n: i64) -> Complex64 {
    if n < 0 {
        return -q_pochhammer_ln(z * qp.pow(n as f64), qp, -n);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zk = z;
    for _ in 0..n {
        acc += (1.0 - zk).ln();
        zk *= qp.q();
    }
    acc
}

/// A truncated infinite product `(z; q)_∞`.
#[derive(Clone, Copy, Debug)]
pub struct InfiniteProduct {
    pub value: Complex64,
    /// Number of factors multiplied.
    pub factors: usize,
    /// Bound on `|tail − 1|`, where `tail` is the omitted product.
    pub tail_bound: f64,
}

const INFINITE_PRODUCT_CUTOFF: f64 = 1e-16;
const INFINITE_PRODUCT_MAX_FACTORS: usize = 1_000_000;

/// `(z; q)_∞` truncated once the omitted tail is below `1e-16`.
pub fn q_pochhammer_inf(z: Complex64, qp: QParam) -> Result<InfiniteProduct> {
    if qp.is_classical() {
        return Err(domain("infinite q-Pochhammer product requires q < 1"));
    }
    let q = qp.q();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut zk = z;
    let mut k = 0;
    // Σ_{i≥k} |z q^i| = |z q^k|/(1 − q) bounds ln of the omitted tail.
    while zk.norm() >= INFINITE_PRODUCT_CUTOFF * (1.0 - q) {
        if k == INFINITE_PRODUCT_MAX_FACTORS {
            return Err(Error::NonTermination(k));
        }
        acc *= 1.0 - zk;
        zk *= q;
        k += 1;
    }
    let tail = zk.norm() / (1.0 - q);
    Ok(InfiniteProduct {
        value: acc,
        factors: k,
        tail_bound: tail.exp_m1() * (1.0 + tail),
    })
}

/// Gaussian binomial `(q;q)_m / ((q;q)_n (q;q)_{m−n})`, always positive.
pub fn q_binomial(m: u32, n: u32, qp: QParam) -> Result<LogSigned> {
    if n > m {
        return Err(domain(format!("q-binomial lower index {n} exceeds {m}")));
    }
    if qp.is_classical() {
        let n = n.min(m - n);
        let ln: f64 = (1..=n)
            .map(|k| (f64::from(m - n + k) / f64::from(k)).ln())
            .sum();
        return Ok(LogSigned::from_ln(ln));
    }
    let num = q_pochhammer_power(1.0, 1.0, qp, i64::from(m));
    let den = q_pochhammer_power(1.0, 1.0, qp, i64::from(n))
        * q_pochhammer_power(1.0, 1.0, qp, i64::from(m - n));
    Ok(num / den)
}

/// The second form of the Gaussian binomial,
/// `(−1)ⁿ q^{mn − n(n−1)/2} (q^{−m}; q)_n / (q; q)_n`.
pub fn q_binomial_alternate(m: u32, n: u32, qp: QParam) -> Result<LogSigned> {
    if n > m {
        return Err(domain(format!("q-binomial lower index {n} exceeds {m}")));
    }
    if qp.is_classical() {
        return q_binomial(m, n, qp);
    }
    let (mf, nf) = (f64::from(m), f64::from(n));
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let power = LogSigned::new(sign, -(mf * nf - 0.5 * nf * (nf - 1.0)) * qp.kappa());
    Ok(power * q_pochhammer_power(1.0, -mf, qp, i64::from(n))
        / q_pochhammer_power(1.0, 1.0, qp, i64::from(n)))
}

/// Terms of the terminating ₃φ₂ that defines the dual q-Kravchuk polynomial
/// with `c = −1`:
///
/// ```text
/// Σ_k (q^{−n};q)_k (q^{−ξ};q)_k (−q^{ξ−2j};q)_k / (q^{−2j};q)_k · q^k/(q;q)_k
/// ```
///
/// At `q = 1` each term is the classical Kravchuk term
/// `(−n)_k (−ξ)_k 2^k / ((−2j)_k k!)`.
pub fn phi32_dual_kravchuk_terms(n: u32, xi: u32, twoj: u32, qp: QParam) -> Result<Vec<LogSigned>> {
    if n > twoj || xi > twoj {
        return Err(domain(format!(
            "dual q-Kravchuk indices n = {n}, xi = {xi} must not exceed 2j = {twoj}"
        )));
    }
    let top = n.min(xi);
    let mut terms = Vec::with_capacity(top as usize + 1);
    if qp.is_classical() {
        let mut term = LogSigned::ONE;
        terms.push(term);
        for k in 0..top {
            let kf = f64::from(k);
            let ratio = (kf - f64::from(n)) * (kf - f64::from(xi)) * 2.0
                / ((kf - f64::from(twoj)) * (kf + 1.0));
            term *= LogSigned::from_f64(ratio);
            terms.push(term);
        }
        return Ok(terms);
    }
    let (nf, xif, tj) = (f64::from(n), f64::from(xi), f64::from(twoj));
    for k in 0..=i64::from(top) {
        let term = q_pochhammer_power(1.0, -nf, qp, k)
            * q_pochhammer_power(1.0, -xif, qp, k)
            * q_pochhammer_power(-1.0, xif - tj, qp, k)
            / q_pochhammer_power(1.0, -tj, qp, k)
            * LogSigned::from_ln(-(k as f64) * qp.kappa())
            / q_pochhammer_power(1.0, 1.0, qp, k);
        terms.push(term);
    }
    Ok(terms)
}

/// The dual q-Kravchuk ₃φ₂ sum, terminating at `k = min(n, ξ)`.
///
/// The sum alternates in sign and loses relative precision roughly like
/// `q^{−j²}`; use it for single evaluations at moderate `j`. Tables are
/// built from the eigen-equation instead (see `oscillator`).
pub fn phi32_dual_kravchuk_sum(n: u32, xi: u32, twoj: u32, qp: QParam) -> Result<f64> {
    let terms = phi32_dual_kravchuk_terms(n, xi, twoj, qp)?;
    Ok(neumaier_sum(terms.into_iter().map(LogSigned::to_f64)))
}

/// Compensated summation.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

const TERMINATION_REL_TOL: f64 = 1e-12;
const CONVERGENCE_REL_TOL: f64 = 1e-17;

/// If `p = q^{−N}` for a non-negative integer `N` (to relative `1e-12` in the
/// exponent), returns `N`.
pub fn terminating_index(p: Complex64, qp: QParam) -> Option<usize> {
    if qp.is_classical() || p.re <= 0.0 || p.im.abs() > TERMINATION_REL_TOL * p.norm() {
        return None;
    }
    let n = p.re.ln() / qp.kappa();
    let rounded = n.round();
    if rounded >= 0.0 && (n - rounded).abs() <= TERMINATION_REL_TOL * rounded.max(1.0) {
        Some(rounded as usize)
    } else {
        None
    }
}

/// Very-well-poised ₈W₇:
///
/// ```text
/// Σ_k (1 − a q^{2k})/(1 − a) · (a, b, c, d, e, f; q)_k z^k
///                             / (q, qa/b, qa/c, qa/d, qa/e, qa/f; q)_k
/// ```
///
/// `params` holds `[b, c, d, e, f]`. The sum stops at the smallest `N` for
/// which some parameter equals `q^{−N}`; otherwise it runs until the terms
/// fall below `1e-17` of the partial sum, failing after `max_terms`.
pub fn w8_7(
    a: Complex64,
    params: [Complex64; 5],
    qp: QParam,
    z: Complex64,
    max_terms: usize,
) -> Result<Complex64> {
    if qp.is_classical() {
        return Err(domain("the 8W7 series requires q < 1"));
    }
    let q = qp.q();
    let stop = params
        .iter()
        .filter_map(|&p| terminating_index(p, qp))
        .min();
    let last = match stop {
        Some(n) => n,
        None => max_terms,
    };
    let dens: Vec<Complex64> = params.iter().map(|&p| q * a / p).collect();
    let one = Complex64::new(1.0, 0.0);
    let well_poised_base = one - a;
    if well_poised_base.norm() == 0.0 {
        return Err(Error::SingularSeries(0));
    }

    let mut ratio_product = one;
    let mut qk = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    for k in 0..=last {
        let term = (one - a * qk * qk) / well_poised_base * ratio_product;
        sum += term;
        if stop.is_none() {
            if term.norm() <= CONVERGENCE_REL_TOL * sum.norm() {
                small_run += 1;
                if small_run >= 3 {
                    return Ok(sum);
                }
            } else {
                small_run = 0;
            }
        }
        if k == last {
            break;
        }
        let mut num = (one - a * qk) * z;
        let mut den = Complex64::new(1.0 - q * qk, 0.0);
        for (p, d) in params.iter().zip(&dens) {
            num *= one - p * qk;
            den *= one - d * qk;
        }
        if den.norm() == 0.0 {
            if num.norm() == 0.0 {
                break;
            }
            return Err(Error::SingularSeries(k + 1));
        }
        ratio_product *= num / den;
        qk *= q;
    }
    match stop {
        Some(_) => Ok(sum),
        None => Err(Error::NonTermination(max_terms)),
    }
}

/// Terminating ₄φ₃ with argument `z`, summed over `k = 0..=n`:
/// `Σ (a₁,a₂,a₃,a₄; q)_k / (b₁,b₂,b₃, q; q)_k · z^k`.
pub fn phi43_terminating(
    nums: [Complex64; 4],
    dens: [Complex64; 3],
    qp: QParam,
    z: Complex64,
    n: usize,
) -> Result<Complex64> {
    phi43_terminating_with_scale(nums, dens, qp, z, n).map(|(sum, _)| sum)
}

/// As [`phi43_terminating`], also returning `Σ |term|`, the scale against
/// which cancellation in the sum is measured.
pub fn phi43_terminating_with_scale(
    nums: [Complex64; 4],
    dens: [Complex64; 3],
    qp: QParam,
    z: Complex64,
    n: usize,
) -> Result<(Complex64, f64)> {
    let q = qp.q();
    let one = Complex64::new(1.0, 0.0);
    let mut term = one;
    let mut sum = one;
    let mut scale = 1.0;
    let mut qk = 1.0;
    for k in 0..n {
        let mut num = z;
        let mut den = Complex64::new(1.0 - q * qk, 0.0);
        for a in &nums {
            num *= one - a * qk;
        }
        for b in &dens {
            den *= one - b * qk;
        }
        if den.norm() == 0.0 {
            return Err(Error::SingularSeries(k + 1));
        }
        term *= num / den;
        sum += term;
        scale += term.norm();
        qk *= q;
    }
    Ok((sum, scale))
}
