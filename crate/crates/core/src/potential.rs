//! Equivalent potentials read off a nodeless ground state.
//!
//! On a grid `x_s` the discrete Schrödinger relation
//! `(1/(2ψ(s) Δ_s)) (∇_R − ∇_L) ψ(s) = V(x_s) − E₀`, with
//! `Δ_s = x_{s+½} − x_{s−½}`, fixes the potential up to the ground energy.
//! Every function here returns `V − E₀`.

use crate::algebra::Irrep;
use crate::error::{Error, Result};
use crate::oscillator::{gamma, position_value};
use crate::qcore::QParam;
use crate::report::Report;

/// Ground-state samples on the grid, with the grid extended by one point at
/// each end (where `ψ` vanishes).
#[derive(Clone, Debug, PartialEq)]
pub struct GroundStateProfile {
    pub irrep: Irrep,
    pub qp: QParam,
    pub psi: Vec<f64>,
    /// `x_s` for `s = −j−1, …, j+1`.
    pub x_extended: Vec<f64>,
    /// `x_{s+½} − x_{s−½}` for `s = −j, …, j`.
    pub half_spacings: Vec<f64>,
}

impl GroundStateProfile {
    /// Profile of the finite q-oscillator ground state `Φ₀ = γ`.
    pub fn oscillator(irrep: Irrep, qp: QParam) -> Result<Self> {
        Self::from_samples(irrep, qp, gamma(irrep, qp)?.gamma)
    }

    /// Profile from arbitrary samples on the q-grid; every sample must be
    /// positive.
    pub fn from_samples(irrep: Irrep, qp: QParam, psi: Vec<f64>) -> Result<Self> {
        if psi.len() != irrep.dim() {
            return Err(Error::DimensionMismatch {
                expected: irrep.dim(),
                found: psi.len(),
            });
        }
        if let Some(i) = psi.iter().position(|&v| v.is_nan() || v <= 0.0) {
            return Err(Error::NonPositiveGroundState(i));
        }
        let tj = irrep.twoj() as i32;
        let x_extended = (-tj - 2..=tj + 2)
            .step_by(2)
            .map(|t| position_value(t, qp))
            .collect();
        let half_spacings = irrep
            .twos_values()
            .map(|t| position_value(t + 1, qp) - position_value(t - 1, qp))
            .collect();
        Ok(Self {
            irrep,
            qp,
            psi,
            x_extended,
            half_spacings,
        })
    }
}

/// `V(x_s) − E₀` at every grid point. Beyond `±j` the ground state is taken
/// as zero, so the endpoints use a one-sided difference.
pub fn equivalent_potential_from_ground_state(profile: &GroundStateProfile) -> Result<Vec<f64>> {
    let d = profile.irrep.dim();
    if let Some(i) = profile.psi.iter().position(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::NonPositiveGroundState(i));
    }
    let psi_ext = |i: usize| {
        if i == 0 || i == d + 1 {
            0.0
        } else {
            profile.psi[i - 1]
        }
    };
    let x = &profile.x_extended;
    Ok((0..d)
        .map(|k| {
            let i = k + 1;
            let right = (psi_ext(i + 1) - psi_ext(i)) / (x[i + 1] - x[i]);
            let left = (psi_ext(i) - psi_ext(i - 1)) / (x[i] - x[i - 1]);
            (right - left) / (2.0 * psi_ext(i) * profile.half_spacings[k])
        })
        .collect())
}

fn half_label(twos: i32, irrep: Irrep) -> Result<f64> {
    irrep.index_of(twos)?;
    Ok(0.5 * f64::from(twos))
}

/// Kravchuk potential
/// `[√((j+s)(j+s+1)) + √((j−s)(j−s+1))] / (2√((j+1)² − s²)) − 1`.
pub fn kravchuk_potential(twos: i32, twoj: u32) -> Result<f64> {
    let irrep = Irrep::new(twoj);
    let s = half_label(twos, irrep)?;
    let j = irrep.j();
    Ok(
        (((j + s) * (j + s + 1.0)).sqrt() + ((j - s) * (j - s + 1.0)).sqrt())
            / (2.0 * ((j + 1.0).powi(2) - s * s).sqrt())
            - 1.0,
    )
}

/// The q-oscillator potential in closed form:
///
/// ```text
/// 1/(2 q^{½} cosh(s+½)κ cosh(s−½)κ) · {
///     q^{s}  cosh(s+½)κ/cosh sκ · √(cosh(s−1)κ/cosh sκ · sinh(j+s)κ/sinh(j−s+1)κ)
///   + q^{−s} cosh(s−½)κ/cosh sκ · √(cosh(s+1)κ/cosh sκ · sinh(j−s)κ/sinh(j+s+1)κ)
///   − 2 q^{½} cosh ½κ }
/// ```
///
/// `q = 1` dispatches to [`kravchuk_potential`].
pub fn q_potential_closed_form(twos: i32, irrep: Irrep, qp: QParam) -> Result<f64> {
    if qp.is_classical() {
        return kravchuk_potential(twos, irrep.twoj());
    }
    let s = half_label(twos, irrep)?;
    let j = irrep.j();
    let k = qp.kappa();
    let ch = |v: f64| (v * k).cosh();
    let sh = |v: f64| (v * k).sinh();
    let sqrt_half = qp.pow(0.5);
    let lower = qp.pow(s) * ch(s + 0.5) / ch(s)
        * (ch(s - 1.0) / ch(s) * sh(j + s) / sh(j - s + 1.0)).sqrt();
    let upper = qp.pow(-s) * ch(s - 0.5) / ch(s)
        * (ch(s + 1.0) / ch(s) * sh(j - s) / sh(j + s + 1.0)).sqrt();
    Ok((lower + upper - 2.0 * sqrt_half * ch(0.5)) / (2.0 * sqrt_half * ch(s + 0.5) * ch(s - 0.5)))
}

/// `ψ(s+1)/ψ(s) = q^{−s−½} √(cosh(s+1)κ/cosh sκ · sinh(j−s)κ/sinh(j+s+1)κ)`,
/// `√((j−s)/(j+s+1))` at `q = 1`. Valid for `−j ≤ s ≤ j`; zero at `s = j`.
pub fn ground_state_ratio(twos: i32, irrep: Irrep, qp: QParam) -> Result<f64> {
    let s = half_label(twos, irrep)?;
    let j = irrep.j();
    if qp.is_classical() {
        return Ok(((j - s) / (j + s + 1.0)).sqrt());
    }
    let k = qp.kappa();
    Ok(qp.pow(-s - 0.5)
        * (((s + 1.0) * k).cosh() / (s * k).cosh() * ((j - s) * k).sinh()
            / ((j + s + 1.0) * k).sinh())
        .sqrt())
}

/// True when the samples rise and then fall (no interior dip). Ground
/// states with raised wings fail this.
pub fn acceptable_ground_state(psi: &[f64]) -> bool {
    let mut falling = false;
    for w in psi.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// `V − E₀` over the whole grid from the closed form.
pub fn q_potential_table(irrep: Irrep, qp: QParam) -> Result<Vec<f64>> {
    irrep
        .twos_values()
        .map(|t| q_potential_closed_form(t, irrep, qp))
        .collect()
}

/// Residuals tying the closed form, the ratio formula and the grid
/// difference together.
pub fn verify_potential(irrep: Irrep, qp: QParam, tol: f64) -> Report {
    let mut report = Report::new("potential", irrep.twoj(), qp.q());
    let mut run = || -> Result<()> {
        let prof = GroundStateProfile::oscillator(irrep, qp)?;
        let grid = equivalent_potential_from_ground_state(&prof)?;
        let closed = q_potential_table(irrep, qp)?;
        let worst = grid
            .iter()
            .zip(&closed)
            .map(|(g, c)| (g - c).abs() / c.abs().max(1.0))
            .fold(0.0, f64::max);
        let twos: Vec<i32> = irrep.twos_values().collect();
        let mut ratio = 0.0_f64;
        let mut telescoped = 1.0;
        for (i, &t) in twos[..irrep.dim() - 1].iter().enumerate() {
            let r = ground_state_ratio(t, irrep, qp)?;
            telescoped *= r;
            ratio = ratio.max((r - prof.psi[i + 1] / prof.psi[i]).abs() / r);
        }
        let ends = prof.psi[irrep.dim() - 1] / prof.psi[0];
        let spacing = twos
            .iter()
            .zip(&prof.half_spacings)
            .map(|(&t, h)| (h - (0.5 * f64::from(t) * qp.kappa()).cosh()).abs() / h)
            .fold(0.0, f64::max);
        report.push("closed form = grid difference", worst, tol);
        report.push("psi(s+1)/psi(s) = ratio formula", ratio, tol);
        report.push(
            "telescoped ratios = psi(j)/psi(-j)",
            (telescoped / ends - 1.0).abs(),
            tol,
        );
        report.push("half spacing = cosh(s kappa)", spacing, tol);
        report.note("unimodal_ground_state", acceptable_ground_state(&prof.psi));
        Ok(())
    };
    if let Err(e) = run() {
        report.push(format!("potential ({e})"), f64::NAN, tol);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn qp(q: f64) -> QParam {
        QParam::new(q).unwrap()
    }

    #[test]
    fn constant_profile_on_uniform_grid() {
        let r = Irrep::new(6);
        let p = GroundStateProfile::from_samples(r, QParam::classical(), vec![0.3; 7]).unwrap();
        let v = equivalent_potential_from_ground_state(&p).unwrap();
        assert!(v[1..6].iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn rejects_non_positive_samples() {
        let r = Irrep::new(2);
        let e = GroundStateProfile::from_samples(r, qp(0.5), vec![0.2, 0.0, 0.2]).unwrap_err();
        assert_eq!(e, Error::NonPositiveGroundState(1));
    }

    #[test]
    fn kravchuk_examples() {
        assert_relative_eq!(
            kravchuk_potential(0, 2).unwrap() + 1.0,
            0.5f64.sqrt(),
            max_relative = 1e-15
        );
        // s = j: only the first square root survives
        let j: f64 = 2.0;
        assert_relative_eq!(
            kravchuk_potential(4, 4).unwrap() + 1.0,
            (2.0 * j * (2.0 * j + 1.0)).sqrt() / (2.0 * (2.0 * j + 1.0).sqrt()),
            max_relative = 1e-15
        );
        let r = Irrep::new(8);
        let prof = GroundStateProfile::oscillator(r, QParam::classical()).unwrap();
        let v = equivalent_potential_from_ground_state(&prof).unwrap();
        for (i, t) in r.twos_values().enumerate() {
            assert!(
                (v[i] - kravchuk_potential(t, 8).unwrap()).abs() < 1e-13,
                "{t}"
            );
        }
    }

    #[test]
    fn closed_form_matches_grid_difference() {
        for (twoj, q) in [(6, 0.8), (4, 0.8), (9, 0.5), (16, 0.99)] {
            let r = Irrep::new(twoj);
            let prof = GroundStateProfile::oscillator(r, qp(q)).unwrap();
            let v = equivalent_potential_from_ground_state(&prof).unwrap();
            for (i, t) in r.twos_values().enumerate() {
                let c = q_potential_closed_form(t, r, qp(q)).unwrap();
                assert!(
                    (v[i] - c).abs() < 1e-10 * c.abs().max(1.0),
                    "2j={twoj} q={q} 2s={t}: {} vs {c}",
                    v[i]
                );
            }
        }
    }

    #[test]
    fn half_spacing_is_cosh() {
        let p = qp(0.6);
        let prof = GroundStateProfile::oscillator(Irrep::new(5), p).unwrap();
        for (i, t) in Irrep::new(5).twos_values().enumerate() {
            assert_relative_eq!(
                prof.half_spacings[i],
                (0.5 * f64::from(t) * p.kappa()).cosh(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn ratio_matches_gamma() {
        let r = Irrep::new(6);
        for p in [qp(0.5), QParam::classical()] {
            let g = gamma(r, p).unwrap().gamma;
            for (i, t) in r.twos_values().enumerate().take(6) {
                let ratio = ground_state_ratio(t, r, p).unwrap();
                assert_relative_eq!(ratio, g[i + 1] / g[i], max_relative = 1e-11);
            }
            assert_eq!(ground_state_ratio(6, r, p).unwrap(), 0.0);
        }
    }

    #[test]
    fn near_classical_limit() {
        for twoj in 1..=10 {
            let r = Irrep::new(twoj);
            for t in r.twos_values() {
                let a = q_potential_closed_form(t, r, qp(1.0 - 1e-6)).unwrap();
                let b = kravchuk_potential(t, twoj).unwrap();
                assert!((a - b).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn verify_suite() {
        for (twoj, q) in [(0, 0.5), (1, 1.0), (8, 0.5), (16, 0.99)] {
            let rep = verify_potential(Irrep::new(twoj), qp(q), 1e-10);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn unimodality_flag() {
        assert!(acceptable_ground_state(&[0.1, 0.5, 0.9, 0.5, 0.1]));
        assert!(!acceptable_ground_state(&[0.6, 0.3, 0.2, 0.3, 0.6]));
        assert!(acceptable_ground_state(&[1.0]));
    }
}
