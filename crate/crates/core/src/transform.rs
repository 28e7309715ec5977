//! Fractional Fourier-q-Kravchuk transform of finite signals.
//!
//! The kernel of power `a` is `K = Φᵀ diag(e^{−iπna/2}) Φ` with `Φ` the wave
//! table. The closed form in terms of a very-well-poised ₈W₇ series is kept
//! as an independent evaluator.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{position_momentum_hamiltonian, Irrep};
use crate::error::{domain, Error, Result};
use crate::oscillator::{gamma, position_spectrum, wave_table};
use crate::qcore::{phi43_terminating_with_scale, q_pochhammer_inf, q_pochhammer_ln, w8_7, QParam};
use crate::report::Report;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const W87_MAX_TERMS: usize = 10_000;

/// How a kernel matrix was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelRoute {
    /// Bilinear sum over the wave table.
    Spectral,
    /// Prefactors times the terminating ₈W₇ (or its ₄φ₃ reduction).
    ClosedForm,
    /// `a ≡ 0 (mod 4)`, where the closed-form products degenerate.
    Identity,
    /// `a ≡ 2 (mod 4)`: the reflection `s → −s`.
    Parity,
    /// `q = 1`: phased Wigner little-d matrix.
    LittleD,
}

/// `K^{(a)}` as a matrix over the sensor points `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub irrep: Irrep,
    pub qp: QParam,
    pub a: f64,
    pub matrix: DMatrix<Complex64>,
    pub route: KernelRoute,
}

impl Kernel {
    pub fn apply(&self, signal: &Signal) -> Result<Signal> {
        apply(self, signal)
    }

    /// `max |K K† − 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        complex_identity_residual(&(&self.matrix * self.matrix.adjoint()))
    }
}

/// Complex samples on the sensor points, ascending in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    pub irrep: Irrep,
    pub values: Vec<Complex64>,
}

impl Signal {
    pub fn new(irrep: Irrep, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != irrep.dim() {
            return Err(Error::DimensionMismatch {
                expected: irrep.dim(),
                found: values.len(),
            });
        }
        Ok(Self { irrep, values })
    }

    /// Infers `2j` from the number of samples.
    pub fn from_samples(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("a signal needs at least one sample"));
        }
        let irrep = Irrep::new(values.len() as u32 - 1);
        Ok(Self { irrep, values })
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `Φ̃(x_r) = Σ_s K_{r,s} Φ(x_s)`.
pub fn apply(kernel: &Kernel, signal: &Signal) -> Result<Signal> {
    if kernel.irrep != signal.irrep {
        return Err(Error::DimensionMismatch {
            expected: kernel.irrep.dim(),
            found: signal.irrep.dim(),
        });
    }
    let v = DVector::from_column_slice(&signal.values);
    let out = &kernel.matrix * v;
    Ok(Signal {
        irrep: signal.irrep,
        values: out.iter().copied().collect(),
    })
}

pub(crate) fn complex_identity_residual(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let target = if r == c {
                ONE
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((m[(r, c)] - target).norm());
        }
    }
    worst
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `e^{−iπna/2}` with `a` reduced into `[0, 4)` first.
fn mode_phase(n: usize, a: f64) -> Complex64 {
    let ar = a.rem_euclid(4.0);
    // reduce the product too, keeping the argument bounded
    let turns = (n as f64 * ar).rem_euclid(4.0);
    Complex64::from_polar(1.0, -PI * turns / 2.0)
}

/// Spectral kernel; `a ≡ 0 (mod 4)` gives the identity exactly.
pub fn kernel_spectral(irrep: Irrep, qp: QParam, a: f64) -> Result<Kernel> {
    let table = wave_table(irrep, qp)?;
    if a.rem_euclid(4.0) == 0.0 {
        let d = irrep.dim();
        return Ok(Kernel {
            irrep,
            qp,
            a,
            matrix: DMatrix::identity(d, d),
            route: KernelRoute::Spectral,
        });
    }
    let phi = table.phi.map(|v| Complex64::new(v, 0.0));
    let d = irrep.dim();
    let mut weighted = phi.clone();
    for n in 0..d {
        let ph = mode_phase(n, a);
        weighted.row_mut(n).iter_mut().for_each(|z| *z *= ph);
    }
    Ok(Kernel {
        irrep,
        qp,
        a,
        matrix: phi.transpose() * weighted,
        route: KernelRoute::Spectral,
    })
}

/// Which representation of the prefactor `β_{s,s'}(t)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BetaForm {
    /// Ratio of ten infinite products (requires `q < 1`).
    Infinite,
    /// Ratio of five finite products; a negative length `−n` means
    /// `1/(a q^{−n}; q)_n`.
    #[default]
    Finite,
}

/// Which series to sum for each element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SeriesForm {
    /// The terminating ₈W₇ directly.
    #[default]
    Direct,
    /// Watson's reduction to a balanced ₄φ₃ with the shorter length.
    Watson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ClosedFormOptions {
    pub beta: BetaForm,
    pub series: SeriesForm,
}

fn qpow(qp: QParam, e: f64) -> Complex64 {
    Complex64::new(qp.pow(e), 0.0)
}

/// `ln β_{s,s'}(t)` (complex log).
pub fn ln_beta(
    twos: i32,
    twos2: i32,
    irrep: Irrep,
    qp: QParam,
    t: Complex64,
    form: BetaForm,
) -> Result<Complex64> {
    let j = irrep.j();
    let (s, s2) = (0.5 * f64::from(twos), 0.5 * f64::from(twos2));
    match form {
        BetaForm::Finite => {
            let len = |x: f64| x.round() as i64;
            Ok(q_pochhammer_ln(qpow(qp, s - j) * t, qp, len(j - s2))
                + q_pochhammer_ln(qpow(qp, s2 - j) * t, qp, len(j - s))
                + q_pochhammer_ln(-qpow(qp, -j - s2) * t, qp, len(j - s))
                + q_pochhammer_ln(-qpow(qp, -j - s) * t, qp, len(j + 2.0 * s + s2))
                - q_pochhammer_ln(-qpow(qp, -2.0 * j) * t, qp, i64::from(irrep.twoj())))
        }
        BetaForm::Infinite => {
            let ln_inf =
                |z: Complex64| -> Result<Complex64> { Ok(q_pochhammer_inf(z, qp)?.value.ln()) };
            let num = [
                qpow(qp, s - j) * t,
                -qpow(qp, -j - s) * t,
                qpow(qp, s2 - j) * t,
                -qpow(qp, -j - s2) * t,
                -t,
            ];
            let den = [
                qpow(qp, s - s2) * t,
                -qpow(qp, s + s2) * t,
                qpow(qp, s2 - s) * t,
                -qpow(qp, -s - s2) * t,
                -qpow(qp, -2.0 * j) * t,
            ];
            let mut acc = Complex64::new(0.0, 0.0);
            for z in num {
                acc += ln_inf(z)?;
            }
            for z in den {
                acc -= ln_inf(z)?;
            }
            Ok(acc)
        }
    }
}

/// The terminating ₈W₇ of the closed-form kernel element.
pub fn kernel_series_direct(
    twos: i32,
    twos2: i32,
    irrep: Irrep,
    qp: QParam,
    t: Complex64,
) -> Result<Complex64> {
    let j = irrep.j();
    let (s, s2) = (0.5 * f64::from(twos), 0.5 * f64::from(twos2));
    let a = -qpow(qp, -2.0 * j - 1.0) * t;
    let params = [
        qpow(qp, s - j),
        -qpow(qp, -j - s),
        qpow(qp, s2 - j),
        -qpow(qp, -j - s2),
        -t,
    ];
    w8_7(a, params, qp, -t, W87_MAX_TERMS)
}

/// The same ₈W₇ through Watson's transformation, oriented so that the
/// ₄φ₃ runs over `j − max(s, s')` terms:
///
/// ```text
/// (−q^{−2j}t, −q^{−j+s'}; q)_n / (q^{−j+s'}t, q^{−2j}; q)_n
///   · ₄φ₃(q^{−j+s'}, −q^{−j−s'}, t, −t; −q^{−j−s}t, q^{−j+s}t, −q; q, q),  n = j − s'.
/// ```
///
/// Near `q = 1` the ₄φ₃ cancels heavily against a large prefactor, so this
/// route is a check of the identity rather than an evaluator.
pub fn kernel_series_watson(
    twos: i32,
    twos2: i32,
    irrep: Irrep,
    qp: QParam,
    t: Complex64,
) -> Result<Complex64> {
    kernel_series_watson_with_scale(twos, twos2, irrep, qp, t).map(|(v, _)| v)
}

/// Value of [`kernel_series_watson`] and `|prefactor| · Σ |₄φ₃ term|`.
pub fn kernel_series_watson_with_scale(
    twos: i32,
    twos2: i32,
    irrep: Irrep,
    qp: QParam,
    t: Complex64,
) -> Result<(Complex64, f64)> {
    let (lo, hi) = if twos <= twos2 {
        (twos, twos2)
    } else {
        (twos2, twos)
    };
    let j = irrep.j();
    let (s, s2) = (0.5 * f64::from(lo), 0.5 * f64::from(hi));
    let n = (j - s2).round() as i64;
    let ln_pref = q_pochhammer_ln(-qpow(qp, -2.0 * j) * t, qp, n)
        + q_pochhammer_ln(-qpow(qp, -j + s2), qp, n)
        - q_pochhammer_ln(qpow(qp, -j + s2) * t, qp, n)
        - q_pochhammer_ln(qpow(qp, -2.0 * j), qp, n);
    let (sum, scale) = phi43_terminating_with_scale(
        [qpow(qp, -j + s2), -qpow(qp, -j - s2), t, -t],
        [-qpow(qp, -j - s) * t, qpow(qp, -j + s) * t, -qpow(qp, 1.0)],
        qp,
        qpow(qp, 1.0),
        n as usize,
    )?;
    let pref = ln_pref.exp();
    Ok((pref * sum, pref.norm() * scale))
}

/// `max |₈W₇ − Watson| / (|prefactor| Σ|term|)` over all elements at `t`.
pub fn watson_residual(irrep: Irrep, qp: QParam, t: Complex64) -> Result<f64> {
    let twos: Vec<i32> = irrep.twos_values().collect();
    let mut worst = 0.0_f64;
    for (r, &a) in twos.iter().enumerate() {
        for &b in &twos[r..] {
            let direct = kernel_series_direct(a, b, irrep, qp, t)?;
            let (w, scale) = kernel_series_watson_with_scale(a, b, irrep, qp, t)?;
            worst = worst.max((direct - w).norm() / scale);
        }
    }
    Ok(worst)
}

/// `K = γ_s γ_{s'} β_{s,s'}(t) ₈W₇(…)` at `t = e^{−iπa/2}`.
///
/// `a ≡ 0` and `a ≡ 2 (mod 4)` return the identity and the reflection
/// directly, and `q = 1` returns the phased little-d matrix; `route` says
/// which branch ran.
pub fn kernel_closed_form(irrep: Irrep, qp: QParam, a: f64) -> Result<Kernel> {
    kernel_closed_form_with(irrep, qp, a, ClosedFormOptions::default())
}

pub fn kernel_closed_form_with(
    irrep: Irrep,
    qp: QParam,
    a: f64,
    opts: ClosedFormOptions,
) -> Result<Kernel> {
    let d = irrep.dim();
    let ar = a.rem_euclid(4.0);
    let build = |matrix, route| Kernel {
        irrep,
        qp,
        a,
        matrix,
        route,
    };
    if ar == 0.0 {
        return Ok(build(DMatrix::identity(d, d), KernelRoute::Identity));
    }
    if ar == 2.0 {
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            m[(i, d - 1 - i)] = ONE;
        }
        return Ok(build(m, KernelRoute::Parity));
    }
    if qp.is_classical() {
        return Ok(build(phased_little_d(irrep, ar)?, KernelRoute::LittleD));
    }

    let t = Complex64::from_polar(1.0, -PI * ar / 2.0);
    let g = gamma(irrep, qp)?.gamma;
    let twos: Vec<i32> = irrep.twos_values().collect();
    let mut m = DMatrix::zeros(d, d);
    for r in 0..d {
        for c in r..d {
            let series = match opts.series {
                SeriesForm::Direct => kernel_series_direct(twos[r], twos[c], irrep, qp, t)?,
                SeriesForm::Watson => kernel_series_watson(twos[r], twos[c], irrep, qp, t)?,
            };
            let beta = ln_beta(twos[r], twos[c], irrep, qp, t, opts.beta)?.exp();
            let v = g[r] * g[c] * beta * series;
            m[(r, c)] = v;
            m[(c, r)] = v;
        }
    }
    Ok(build(m, KernelRoute::ClosedForm))
}

fn ln_factorial(n: i64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Wigner little-d `d^j_{m′m}(β)` with `m′ = twos/2`, `m = twos2/2`:
///
/// ```text
/// Σ_k (−1)^{k+m′−m} √((j+m′)!(j−m′)!(j+m)!(j−m)!)
///     / ((j+m−k)! k! (j−k−m′)! (k+m′−m)!) · cos^{2j−2k+m−m′}(β/2) sin^{2k+m′−m}(β/2)
/// ```
pub fn wigner_little_d(twoj: u32, twos: i32, twos2: i32, beta: f64) -> Result<f64> {
    let irrep = Irrep::new(twoj);
    irrep.index_of(twos)?;
    irrep.index_of(twos2)?;
    let tj = twoj as i64;
    let (mp, m) = (i64::from(twos), i64::from(twos2));
    // doubled quantities halve exactly here because of the parity checks
    let (jpm, jmm, jpmp, jmmp) = ((tj + m) / 2, (tj - m) / 2, (tj + mp) / 2, (tj - mp) / 2);
    let diff = (mp - m) / 2;
    let ln_root =
        0.5 * (ln_factorial(jpm) + ln_factorial(jmm) + ln_factorial(jpmp) + ln_factorial(jmmp));
    let (c, s) = ((0.5 * beta).cos(), (0.5 * beta).sin());
    let mut total = 0.0;
    for k in 0..=tj {
        let facts = [jpm - k, k, jmmp - k, k + diff];
        if facts.iter().any(|&f| f < 0) {
            continue;
        }
        let ln_den: f64 = facts.iter().map(|&f| ln_factorial(f)).sum();
        let sign = if (k + diff).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        let cos_pow = (tj - 2 * k - diff) as i32;
        let sin_pow = (2 * k + diff) as i32;
        total += sign * (ln_root - ln_den).exp() * c.powi(cos_pow) * s.powi(sin_pow);
    }
    Ok(total)
}

/// `e^{−iπja/2} (−i)^{s−s′} d^j_{s,s′}(πa/2)`: the `q = 1` kernel.
pub fn phased_little_d(irrep: Irrep, a: f64) -> Result<DMatrix<Complex64>> {
    let d = irrep.dim();
    let twos: Vec<i32> = irrep.twos_values().collect();
    let global = Complex64::from_polar(1.0, -PI * irrep.j() * a / 2.0);
    let mut m = DMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let diff = (twos[r] - twos[c]) / 2;
            let ph = Complex64::new(0.0, -1.0).powi(diff.rem_euclid(4));
            m[(r, c)] =
                global * ph * wigner_little_d(irrep.twoj(), twos[r], twos[c], PI * a / 2.0)?;
        }
    }
    Ok(m)
}

/// Columns `g̃_r` (ascending `r`) with `P g̃_r = −Y_r g̃_r`, `Y_r = ½[2r]_q`,
/// expressed over the mode basis.
///
/// `g̃_r` is the quarter-turn image `K(1) g_r` of the position eigenvector.
pub fn momentum_eigvecs(irrep: Irrep, qp: QParam) -> Result<DMatrix<Complex64>> {
    let table = wave_table(irrep, qp)?;
    let d = irrep.dim();
    let mut m = DMatrix::zeros(d, d);
    for c in 0..d {
        for n in 0..d {
            m[(n, c)] = mode_phase(n, 1.0) * table.phi[(n, c)];
        }
    }
    Ok(m)
}

/// `max_r |P g̃_r + Y_r g̃_r|`.
pub fn momentum_residual(irrep: Irrep, qp: QParam) -> Result<f64> {
    let g = momentum_eigvecs(irrep, qp)?;
    let p = position_momentum_hamiltonian(irrep, qp).p;
    let y = position_spectrum(irrep, qp).x;
    let pg = p.entries() * &g;
    let mut worst = 0.0_f64;
    for c in 0..irrep.dim() {
        for n in 0..irrep.dim() {
            worst = worst.max((pg[(n, c)] + g[(n, c)] * y[c]).norm());
        }
    }
    Ok(worst)
}

/// Powers sampled by the transform checks.
pub const A_GRID: [f64; 5] = [0.1, 0.5, 1.0, 1.9, 3.3];
/// Powers at which the closed form is compared with the spectral kernel.
pub const CLOSED_FORM_GRID: [f64; 3] = [0.3, 1.0, 2.7];

/// Residuals of unitarity, the group law, periodicity, the closed form, the
/// metaplectic sign and parity conservation.
pub fn verify_transform(irrep: Irrep, qp: QParam, tol: f64) -> Report {
    let mut report = Report::new("transform", irrep.twoj(), qp.q());
    let d = irrep.dim();
    let kernels: Result<Vec<Kernel>> = A_GRID
        .iter()
        .map(|&a| kernel_spectral(irrep, qp, a))
        .collect();
    let kernels = match kernels {
        Ok(k) => k,
        Err(e) => {
            report.push(format!("spectral kernel ({e})"), f64::NAN, tol);
            return report;
        }
    };
    let spectral = |a: f64| kernel_spectral(irrep, qp, a).expect("table built above");

    let unitarity = kernels
        .iter()
        .map(Kernel::unitarity_residual)
        .fold(0.0, f64::max);
    report.push("unitarity K K^+ = 1", unitarity, tol);

    let mut group = 0.0_f64;
    for k1 in &kernels {
        for k2 in &kernels {
            let both = spectral(k1.a + k2.a);
            group = group.max(max_abs_diff(&(&k1.matrix * &k2.matrix), &both.matrix));
        }
    }
    report.push("group law K(a)K(b) = K(a+b)", group, tol);

    let k1 = &kernels[2].matrix;
    let k4 = k1 * k1 * k1 * k1;
    report.push("K(1)^4 = 1", complex_identity_residual(&k4), tol);

    let periodic = kernels
        .iter()
        .map(|k| max_abs_diff(&k.matrix, &spectral(k.a + 4.0).matrix))
        .fold(0.0, f64::max);
    report.push("K(a+4) = K(a)", periodic, tol);

    let mut closed = 0.0_f64;
    let mut betas = 0.0_f64;
    let mut watson = 0.0_f64;
    for &a in &CLOSED_FORM_GRID {
        let s = spectral(a);
        let direct = kernel_closed_form(irrep, qp, a);
        closed = closed.max(
            direct
                .as_ref()
                .map_or(f64::NAN, |c| max_abs_diff(&c.matrix, &s.matrix)),
        );
        if !qp.is_classical() {
            let inf = kernel_closed_form_with(
                irrep,
                qp,
                a,
                ClosedFormOptions {
                    beta: BetaForm::Infinite,
                    series: SeriesForm::Direct,
                },
            );
            betas = betas.max(match (&direct, &inf) {
                (Ok(p), Ok(q)) => max_abs_diff(&p.matrix, &q.matrix),
                _ => f64::NAN,
            });
            let t = Complex64::from_polar(1.0, -PI * a / 2.0);
            watson = watson.max(watson_residual(irrep, qp, t).unwrap_or(f64::NAN));
        }
    }
    report.push("closed form = spectral", closed, tol);
    if !qp.is_classical() {
        report.push("finite beta = infinite beta", betas, tol);
        report.push("Watson 4phi3 = 8W7 (scaled)", watson, tol);
    }

    // U(π/2) = exp(−i π/2 H), H = n + ½
    let u = DMatrix::from_diagonal(&DVector::from_iterator(
        d,
        (0..d).map(|n| Complex64::from_polar(1.0, -PI / 2.0 * (n as f64 + 0.5))),
    ));
    let u4 = &u * &u * &u * &u;
    report.push("U(pi/2)^4 = -1", complex_identity_residual(&(-u4)), tol);

    let mut parity = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        parity[(i, d - 1 - i)] = ONE;
    }
    let par = kernels
        .iter()
        .map(|k| max_abs_diff(&(&k.matrix * &parity), &(&parity * &k.matrix)))
        .fold(0.0, f64::max);
    report.push("[K, parity] = 0", par, tol);

    let scale = position_spectrum(irrep, qp)
        .x
        .last()
        .map_or(1.0, |x| x.abs().max(1.0));
    let mom = momentum_residual(irrep, qp).map_or(f64::NAN, |r| r / scale);
    report.push("P g~_r = -Y_r g~_r", mom, tol);
    report
}
