//! Scaled operators `w_j Q`, `w_j P` and their large-`j` behaviour on the
//! lowest modes.

use num_complex::Complex64;

use crate::algebra::{commutator, position_momentum_hamiltonian, Irrep, OperatorMatrix};
use crate::error::{domain, Result};
use crate::oscillator::position_value;
use crate::qcore::{q_brace_number, QParam};
use crate::report::Report;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Relative slack allowed when checking that deviations do not grow.
pub const TREND_SLACK: f64 = 0.10;
/// Target for the last commutator deviation.
pub const FINAL_DEV_TARGET: f64 = 0.05;
/// Allowed relative gap between `w_j x_j` and its limit at the last `j`.
pub const BOUND_TOLERANCE: f64 = 0.02;
/// Tolerance for the scaled Hamilton equations.
pub const HAMILTON_TOLERANCE: f64 = 1e-12;

/// `w_j = q^{(j+½)/2} / √x_j`, `x_j = ½[2j]_q`; `1/√j` at `q = 1`.
pub fn scale_factor(irrep: Irrep, qp: QParam) -> Result<f64> {
    if irrep.twoj() == 0 {
        return Err(domain("scale factor needs 2j >= 1 (x_j = 0 at j = 0)"));
    }
    let xj = position_value(irrep.twoj() as i32, qp);
    Ok(qp.pow(0.5 * (irrep.j() + 0.5)) / xj.sqrt())
}

/// `lim_{j→∞} w_j x_j = 1/√(2(q^{−1} − 1))`; unbounded at `q = 1`.
pub fn position_bound_limit(qp: QParam) -> Option<f64> {
    (!qp.is_classical()).then(|| 1.0 / (2.0 * (1.0 / qp.q() - 1.0)).sqrt())
}

#[derive(Clone, Debug)]
pub struct ScaledOperators {
    pub w: f64,
    pub q: OperatorMatrix,
    pub p: OperatorMatrix,
}

impl ScaledOperators {
    /// `A₊ = Q⁽ʲ⁾ − iP⁽ʲ⁾`.
    pub fn raising(&self) -> OperatorMatrix {
        &self.q - &self.p.scale(I)
    }

    /// `A₋ = Q⁽ʲ⁾ + iP⁽ʲ⁾`.
    pub fn lowering(&self) -> OperatorMatrix {
        &self.q + &self.p.scale(I)
    }
}

pub fn scaled_ops(irrep: Irrep, qp: QParam) -> Result<ScaledOperators> {
    let w = scale_factor(irrep, qp)?;
    let ops = position_momentum_hamiltonian(irrep, qp);
    Ok(ScaledOperators {
        w,
        q: ops.q.scale_real(w),
        p: ops.p.scale_real(w),
    })
}

/// Diagnostics for one representation.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionRow {
    pub twoj: u32,
    pub w: f64,
    /// `max |⟨n′|[Q⁽ʲ⁾,P⁽ʲ⁾]|n⟩ − i qⁿ δ|` over `n, n′ ≤ n_max`.
    pub dev: f64,
    /// Block max-norm of `A₋A₊ − qA₊A₋ − 1`.
    pub ladder_dev: f64,
    /// `max |⟨n+1|A₊|n⟩ − √{n+1}_q|` for `n < n_max`.
    pub raising_dev: f64,
    /// `⟨1|A₊|0⟩`.
    pub raising_01: f64,
    /// `Im ⟨0|[Q⁽ʲ⁾,P⁽ʲ⁾]|0⟩`.
    pub ground_commutator: f64,
    /// `w_j x_j`, the largest scaled position.
    pub bound: f64,
    /// Same block as `dev`, against `i((1+q)q^{2n} − qⁿ) δ`, which is what
    /// `w_j² F_q` tends to mode by mode.
    pub asymptote_dev: f64,
    /// Residual of `[H,Q⁽ʲ⁾] = −iP⁽ʲ⁾` and `[H,P⁽ʲ⁾] = iQ⁽ʲ⁾`.
    pub hamilton: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionReport {
    pub q: f64,
    pub twoj_list: Vec<u32>,
    pub n_max: usize,
    pub rows: Vec<ContractionRow>,
    pub bound_limit: Option<f64>,
}

fn block_max(m: &OperatorMatrix, n_max: usize, target: impl Fn(usize, usize) -> Complex64) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..=n_max {
        for c in 0..=n_max {
            worst = worst.max((m.get(r, c) - target(r, c)).norm());
        }
    }
    worst
}

fn diagonal_target(r: usize, c: usize, v: f64) -> Complex64 {
    if r == c {
        I * v
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn row(irrep: Irrep, qp: QParam, n_max: usize) -> Result<ContractionRow> {
    let ops = position_momentum_hamiltonian(irrep, qp);
    let s = scaled_ops(irrep, qp)?;
    let q = qp.q();
    let comm = commutator(&s.q, &s.p)?;
    let dev = block_max(&comm, n_max, |r, c| diagonal_target(r, c, q.powi(r as i32)));
    let asymptote_dev = block_max(&comm, n_max, |r, c| {
        diagonal_target(r, c, (1.0 + q) * q.powi(2 * r as i32) - q.powi(r as i32))
    });

    let (ap, am) = (s.raising(), s.lowering());
    let ladder = &(&am * &ap) - &(&ap * &am).scale_real(q);
    let ladder_dev = block_max(&ladder, n_max, |r, c| {
        Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
    });
    let raising_dev = (0..n_max)
        .map(|n| (ap.get(n + 1, n) - q_brace_number(n as u32 + 1, qp).sqrt()).norm())
        .fold(0.0, f64::max);

    let hq = &commutator(&ops.h, &s.q)? + &s.p.scale(I);
    let hp = &commutator(&ops.h, &s.p)? - &s.q.scale(I);
    Ok(ContractionRow {
        twoj: irrep.twoj(),
        w: s.w,
        dev,
        ladder_dev,
        raising_dev,
        raising_01: ap.get(1, 0).re,
        ground_commutator: comm.get(0, 0).im,
        bound: s.w * position_value(irrep.twoj() as i32, qp),
        asymptote_dev,
        hamilton: hq.max_abs().max(hp.max_abs()),
    })
}

/// Low-mode diagnostics along `twoj_list`. Each `2j` must be at least
/// `2 n_max + 2` so the block sits well inside the representation.
pub fn contraction_report(
    twoj_list: &[u32],
    qp: QParam,
    n_max: usize,
) -> Result<ContractionReport> {
    if twoj_list.is_empty() {
        return Err(domain("contraction needs at least one 2j value"));
    }
    let rows = twoj_list
        .iter()
        .map(|&tj| {
            if (tj as usize) < 2 * n_max + 2 {
                return Err(domain(format!(
                    "2j = {tj} is too small for a block of n_max = {n_max}"
                )));
            }
            row(Irrep::new(tj), qp, n_max)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionReport {
        q: qp.q(),
        twoj_list: twoj_list.to_vec(),
        n_max,
        rows,
        bound_limit: position_bound_limit(qp),
    })
}

/// Largest amount by which a sequence grows beyond `slack` between
/// neighbours; zero when it never does.
fn growth(values: impl Iterator<Item = f64> + Clone, slack: f64) -> f64 {
    let v: Vec<f64> = values.collect();
    v.windows(2)
        .map(|w| (w[1] - (1.0 + slack) * w[0]).max(0.0))
        .fold(0.0, f64::max)
}

impl ContractionReport {
    /// Trend and threshold checks.
    pub fn checks(&self) -> Report {
        let last = self.rows.last().expect("non-empty");
        let mut report = Report::new("contraction", last.twoj, self.q);
        report.push(
            "dev non-increasing (10% slack)",
            growth(self.rows.iter().map(|r| r.dev), TREND_SLACK),
            0.0,
        );
        report.push("final dev", last.dev, FINAL_DEV_TARGET);
        report.push(
            "ladder block non-increasing",
            growth(self.rows.iter().map(|r| r.ladder_dev), 0.0),
            0.0,
        );
        if let Some(limit) = self.bound_limit {
            report.push(
                "w_j x_j vs limit",
                (last.bound / limit - 1.0).abs(),
                BOUND_TOLERANCE,
            );
        }
        let ham = self.rows.iter().map(|r| r.hamilton).fold(0.0, f64::max);
        report.push("scaled Hamilton equations", ham, HAMILTON_TOLERANCE);
        report.note("final_asymptote_dev", format!("{:.3e}", last.asymptote_dev));
        report.note("final_raising_01", format!("{:.6}", last.raising_01));
        report
    }
}
