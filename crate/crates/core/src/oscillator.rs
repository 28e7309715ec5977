//! Position grid, dual q-Kravchuk wavefunctions and their oracles.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{position_momentum_hamiltonian, Irrep};
use crate::error::{domain, Error, Result};
use crate::qcore::{
    phi32_dual_kravchuk_sum, q_binomial, q_number, q_pochhammer_power, LogSigned, QParam,
};
use crate::report::Report;

/// `x = ½[2s]_q` for any half-integer `s = twos/2`, on or off the grid.
pub fn position_value(twos: i32, qp: QParam) -> f64 {
    0.5 * q_number(f64::from(twos), qp)
}

/// Position eigenvalues, ascending in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionGrid {
    pub irrep: Irrep,
    pub x: Vec<f64>,
}

impl PositionGrid {
    /// `x_s` for the label `twos/2`.
    pub fn at(&self, twos: i32) -> Result<f64> {
        Ok(self.x[self.irrep.index_of(twos)?])
    }
}

pub fn position_spectrum(irrep: Irrep, qp: QParam) -> PositionGrid {
    PositionGrid {
        irrep,
        x: irrep.twos_values().map(|t| position_value(t, qp)).collect(),
    }
}

fn check_mode(n: u32, irrep: Irrep) -> Result<()> {
    if n > irrep.twoj() {
        return Err(domain(format!(
            "mode n = {n} exceeds 2j = {}",
            irrep.twoj()
        )));
    }
    Ok(())
}

/// `ln(1 + e^x)` without overflow.
fn ln_one_plus_exp(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// ln of `q^{(j+s)/2} √([2j, j+s]_{q²} (1+q^{−2s}) / (2(−q;q)_{2j}))`.
fn ln_gamma(twos: i32, irrep: Irrep, qp: QParam) -> Result<f64> {
    let tj = irrep.twoj();
    let jps = ((tj as i32 + twos) / 2) as u32;
    let s = 0.5 * f64::from(twos);
    let k = qp.kappa();
    let binom = q_binomial(tj, jps, qp.squared())?;
    let neg_q = q_pochhammer_power(-1.0, 1.0, qp, i64::from(tj));
    Ok(-0.5 * f64::from(jps) * k
        + 0.5
            * (binom.log_abs() + ln_one_plus_exp(2.0 * s * k)
                - std::f64::consts::LN_2
                - neg_q.log_abs()))
}

/// Ground-state amplitudes `γ_s = Φ₀(x_s)`, all positive, unit norm.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaVector {
    pub irrep: Irrep,
    pub qp: QParam,
    pub gamma: Vec<f64>,
}

pub fn gamma(irrep: Irrep, qp: QParam) -> Result<GammaVector> {
    let gamma = irrep
        .twos_values()
        .map(|t| ln_gamma(t, irrep, qp).map(f64::exp))
        .collect::<Result<_>>()?;
    Ok(GammaVector { irrep, qp, gamma })
}

/// Dual q-Kravchuk polynomial `Kₙ(λ(j−s))` as the terminating ₃φ₂ with
/// `ξ = j − s`.
pub fn dual_q_kravchuk(n: u32, twos: i32, irrep: Irrep, qp: QParam) -> Result<f64> {
    check_mode(n, irrep)?;
    let idx = irrep.index_of(twos)?;
    let xi = irrep.twoj() - idx as u32;
    phi32_dual_kravchuk_sum(n, xi, irrep.twoj(), qp)
}

/// `Φₙ(x_s)` from the explicit prefactor times the ₃φ₂ sum.
///
/// The sum cancels badly once `j` grows (the loss is roughly `q^{−j²}` in
/// relative terms); for tables use [`wave_table`].
pub fn wavefunction(n: u32, twos: i32, irrep: Irrep, qp: QParam) -> Result<f64> {
    let poly = dual_q_kravchuk(n, twos, irrep, qp)?;
    let nf = f64::from(n);
    let ln_pref = ln_gamma(twos, irrep, qp)? - 0.25 * nf * (nf - 1.0) * qp.kappa()
        + 0.5 * q_binomial(irrep.twoj(), n, qp)?.log_abs();
    Ok(ln_pref.exp() * poly)
}

/// The mode ↔ position change of basis, `phi[(n, s-index)] = Φₙ(x_s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveTable {
    pub irrep: Irrep,
    pub qp: QParam,
    pub phi: DMatrix<f64>,
}

impl WaveTable {
    pub fn get(&self, n: u32, twos: i32) -> Result<f64> {
        check_mode(n, self.irrep)?;
        Ok(self.phi[(n as usize, self.irrep.index_of(twos)?)])
    }

    /// `max |ΦᵀΦ − 1|`: orthonormality in `n`.
    pub fn orthonormality_residual(&self) -> f64 {
        identity_residual(&(self.phi.transpose() * &self.phi))
    }

    /// `max |ΦΦᵀ − 1|`: completeness over `s`.
    pub fn completeness_residual(&self) -> f64 {
        identity_residual(&(&self.phi * self.phi.transpose()))
    }

    /// `max |Φₙ(x_{−s}) − (−1)ⁿ Φₙ(x_s)|`.
    pub fn parity_residual(&self) -> f64 {
        let d = self.irrep.dim();
        let mut worst = 0.0_f64;
        for n in 0..d {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for c in 0..d {
                worst = worst.max((self.phi[(n, d - 1 - c)] - sign * self.phi[(n, c)]).abs());
            }
        }
        worst
    }
}

pub(crate) fn identity_residual(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((m[(r, c)] - target).abs());
        }
    }
    worst
}

/// Off-diagonal of the tridiagonal position matrix:
/// `Q_{n+1,n} = ½ q^{(2(n−j)+1)/4} √([n+1]_q [2j−n]_q)`.
fn position_offdiagonal(irrep: Irrep, qp: QParam) -> Vec<f64> {
    let tj = irrep.twoj();
    (0..tj)
        .map(|n| {
            let m = irrep.m(n as usize);
            0.5 * qp.pow(0.5 * m + 0.25)
                * (q_number(f64::from(n + 1), qp) * q_number(f64::from(tj - n), qp)).sqrt()
        })
        .collect()
}

/// Unit eigenvector of the zero-diagonal symmetric tridiagonal matrix with
/// off-diagonal `e`, at the (known, simple) eigenvalue `x`, by twisted
/// factorisation. The first component is made non-negative.
fn twisted_eigenvector(e: &[f64], x: f64) -> Vec<f64> {
    let size = e.len() + 1;
    let d = -x;
    let tiny = f64::MIN_POSITIVE * e.iter().fold(1.0_f64, |m, v| m.max(v * v));
    let guard = |v: f64| if v == 0.0 { tiny } else { v };

    let mut top = vec![0.0; size];
    let mut bottom = vec![0.0; size];
    top[0] = d;
    for i in 1..size {
        top[i] = d - e[i - 1] * e[i - 1] / guard(top[i - 1]);
    }
    bottom[size - 1] = d;
    for i in (0..size - 1).rev() {
        bottom[i] = d - e[i] * e[i] / guard(bottom[i + 1]);
    }
    let twist = (0..size)
        .min_by(|&a, &b| {
            let ga = (top[a] + bottom[a] - d).abs();
            let gb = (top[b] + bottom[b] - d).abs();
            ga.total_cmp(&gb)
        })
        .unwrap_or(0);

    let mut z = vec![0.0; size];
    z[twist] = 1.0;
    for i in (0..twist).rev() {
        z[i] = -(e[i] / guard(top[i])) * z[i + 1];
    }
    for i in twist + 1..size {
        z[i] = -(e[i - 1] / guard(bottom[i])) * z[i - 1];
    }
    let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    let sign = if z[0] < 0.0 { -1.0 } else { 1.0 };
    z.iter_mut().for_each(|v| *v *= sign / norm);
    z
}

/// Full table of `Φₙ(x_s)`.
///
/// Each column is the eigenvector of the position matrix at `x_s`, normalised
/// and signed so that `Φ₀(x_s) > 0`. Columns with `s < 0` are filled by
/// parity, so `Φₙ(x_{−s}) = (−1)ⁿ Φₙ(x_s)` holds bit for bit.
pub fn wave_table(irrep: Irrep, qp: QParam) -> Result<WaveTable> {
    let d = irrep.dim();
    let e = position_offdiagonal(irrep, qp);
    let mut phi = DMatrix::zeros(d, d);
    for c in d / 2..d {
        let twos = irrep.twos_values().nth(c).expect("column in range");
        let col = twisted_eigenvector(&e, position_value(twos, qp));
        for (n, v) in col.iter().enumerate() {
            let mirrored = if n % 2 == 0 { *v } else { -*v };
            if c == d - 1 - c {
                // centre column: odd modes vanish
                phi[(n, c)] = if n % 2 == 0 { *v } else { 0.0 };
            } else {
                phi[(n, c)] = *v;
                phi[(n, d - 1 - c)] = mirrored;
            }
        }
    }
    if let Some(bad) = (0..d).find(|&c| phi[(0, c)] <= 0.0 || !phi[(0, c)].is_finite()) {
        return Err(Error::NonPositiveGroundState(bad));
    }
    Ok(WaveTable { irrep, qp, phi })
}

/// Table built cell by cell from [`wavefunction`]; an independent but
/// cancellation-prone route, fine for small `j`.
pub fn wave_table_explicit(irrep: Irrep, qp: QParam) -> Result<WaveTable> {
    let d = irrep.dim();
    let twos: Vec<i32> = irrep.twos_values().collect();
    let mut phi = DMatrix::zeros(d, d);
    for n in 0..d {
        for (c, &t) in twos.iter().enumerate() {
            phi[(n, c)] = wavefunction(n as u32, t, irrep, qp)?;
        }
    }
    Ok(WaveTable { irrep, qp, phi })
}

/// Coefficients of the position eigenfunction
/// `g_s(x) = γ_s (a x; q)_{j−s} (−a x; q)_{j+s}`, `a = q^{(1−2j)/4}`,
/// over the standard basis `f_m(x) = q^{(m²−j²)/4} √[2j, j+m]_q x^{j+m}`.
///
/// Entry `n` equals `Φₙ(x_s)`. The polynomial is multiplied out in linear
/// scale, which is adequate up to `2j ≈ 20`.
pub fn position_eigvec_product_form(twos: i32, irrep: Irrep, qp: QParam) -> Result<Vec<f64>> {
    let idx = irrep.index_of(twos)?;
    let tj = irrep.twoj();
    let a = qp.pow(0.25 * (1.0 - f64::from(tj)));
    let mut poly = vec![1.0];
    let mut mul_linear = |c: f64| {
        // poly *= (1 + c x)
        poly.push(0.0);
        for i in (1..poly.len()).rev() {
            poly[i] += c * poly[i - 1];
        }
    };
    let j_minus_s = tj as usize - idx;
    for k in 0..j_minus_s {
        mul_linear(-a * qp.pow(k as f64));
    }
    for k in 0..idx {
        mul_linear(a * qp.pow(k as f64));
    }
    let g = ln_gamma(twos, irrep, qp)?.exp();
    let j = irrep.j();
    (0..=tj)
        .map(|n| {
            let m = irrep.m(n as usize);
            let constant = qp.pow(0.25 * (m * m - j * j)) * q_binomial(tj, n, qp)?.sqrt().to_f64();
            Ok(g * poly[n as usize] / constant)
        })
        .collect()
}

/// Classical Kravchuk function
/// `2^{−j} √(C(2j, j+s) C(2j, n)) Kₙ(j−s; ½, 2j)`.
pub fn classical_kravchuk_wavefunction(n: u32, twos: i32, twoj: u32) -> Result<f64> {
    let irrep = Irrep::new(twoj);
    check_mode(n, irrep)?;
    let idx = irrep.index_of(twos)? as u32;
    let qp = QParam::classical();
    let k = phi32_dual_kravchuk_sum(n, twoj - idx, twoj, qp)?;
    let ln_binoms = q_binomial(twoj, idx, qp)?.log_abs() + q_binomial(twoj, n, qp)?.log_abs();
    let pref = LogSigned::from_ln(0.5 * ln_binoms - 0.5 * f64::from(twoj) * std::f64::consts::LN_2);
    Ok(pref.to_f64() * k)
}

/// Largest `2j` for which the linear-scale product-form oracle is run.
pub const PRODUCT_FORM_MAX_TWOJ: u32 = 20;

/// Residuals of the wave table: orthogonality, parity, the ground state, the
/// position eigen-equation and agreement with the product-form expansion.
pub fn verify_oscillator(irrep: Irrep, qp: QParam, tol: f64) -> Report {
    let mut report = Report::new("oscillator", irrep.twoj(), qp.q());
    let mut run = || -> Result<()> {
        let table = wave_table(irrep, qp)?;
        report.push("orthonormality in n", table.orthonormality_residual(), tol);
        report.push("completeness in s", table.completeness_residual(), tol);
        report.push("parity", table.parity_residual(), tol);
        let g = gamma(irrep, qp)?;
        let ground = (0..irrep.dim())
            .map(|c| (table.phi[(0, c)] - g.gamma[c]).abs())
            .fold(0.0, f64::max);
        report.push("Phi_0 = gamma", ground, tol);

        let q_op = position_momentum_hamiltonian(irrep, qp).q.real_part();
        let grid = position_spectrum(irrep, qp);
        let scale = grid.x.last().map_or(1.0, |x| x.abs().max(1.0));
        let eig = (&q_op * &table.phi
            - &table.phi * DMatrix::from_diagonal(&DVector::from_vec(grid.x.clone())))
        .amax();
        report.push("Q Phi = x Phi", eig / scale, tol);

        if irrep.twoj() <= PRODUCT_FORM_MAX_TWOJ {
            let mut worst = 0.0_f64;
            for (c, twos) in irrep.twos_values().enumerate() {
                let v = position_eigvec_product_form(twos, irrep, qp)?;
                for (n, x) in v.iter().enumerate() {
                    worst = worst.max((x - table.phi[(n, c)]).abs());
                }
            }
            report.push("product form = table", worst, tol);
        }
        Ok(())
    };
    if let Err(e) = run() {
        report.push(format!("oscillator ({e})"), f64::NAN, tol);
    }
    report
}
