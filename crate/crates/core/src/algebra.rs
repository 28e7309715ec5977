//! Dense matrix representations of su_q(2) and the oscillator observables.
//!
//! All matrices act on the standard (mode) basis `f_m`, index `n = j + m`
//! running from the ground mode `m = −j` up to `m = +j`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::qcore::{q_number, QParam};
use crate::report::Report;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Irreducible representation label, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Irrep {
    twoj: u32,
}

impl Irrep {
    pub fn new(twoj: u32) -> Self {
        Self { twoj }
    }

    pub fn twoj(&self) -> u32 {
        self.twoj
    }

    pub fn j(&self) -> f64 {
        0.5 * f64::from(self.twoj)
    }

    pub fn dim(&self) -> usize {
        self.twoj as usize + 1
    }

    /// `2m` for mode index `n`.
    pub fn twom(&self, n: usize) -> i32 {
        2 * n as i32 - self.twoj as i32
    }

    pub fn m(&self, n: usize) -> f64 {
        0.5 * f64::from(self.twom(n))
    }

    /// `2s` values in ascending order: `−2j, −2j+2, …, 2j`.
    pub fn twos_values(&self) -> impl Iterator<Item = i32> {
        let tj = self.twoj as i32;
        (-tj..=tj).step_by(2)
    }

    /// Row/column index of the half-integer label `twos/2`.
    pub fn index_of(&self, twos: i32) -> Result<usize> {
        let tj = self.twoj as i32;
        if twos.abs() > tj || (twos + tj) % 2 != 0 {
            return Err(domain(format!(
                "2s = {twos} is not a label of the 2j = {} representation",
                self.twoj
            )));
        }
        Ok(((twos + tj) / 2) as usize)
    }
}

/// A complex `dim × dim` matrix in the mode basis of a fixed irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    irrep: Irrep,
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(irrep: Irrep, entries: DMatrix<Complex64>) -> Result<Self> {
        let d = irrep.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: entries.nrows().max(entries.ncols()),
            });
        }
        Ok(Self { irrep, entries })
    }

    pub fn zeros(irrep: Irrep) -> Self {
        let d = irrep.dim();
        Self {
            irrep,
            entries: DMatrix::zeros(d, d),
        }
    }

    pub fn identity(irrep: Irrep) -> Self {
        let d = irrep.dim();
        Self {
            irrep,
            entries: DMatrix::identity(d, d),
        }
    }

    pub fn from_real_diagonal(irrep: Irrep, diag: &[f64]) -> Self {
        debug_assert_eq!(diag.len(), irrep.dim());
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self {
            irrep,
            entries: DMatrix::from_diagonal(&v),
        }
    }

    pub fn irrep(&self) -> Irrep {
        self.irrep
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            irrep: self.irrep,
            entries: &self.entries * c,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.entries.diagonal().iter().copied().collect()
    }

    /// Largest off-diagonal entry modulus.
    pub fn off_diagonal_max(&self) -> f64 {
        let d = self.irrep.dim();
        let mut worst = 0.0_f64;
        for r in 0..d {
            for c in 0..d {
                if r != c {
                    worst = worst.max(self.entries[(r, c)].norm());
                }
            }
        }
        worst
    }

    pub fn adjoint(&self) -> Self {
        Self {
            irrep: self.irrep,
            entries: self.entries.adjoint(),
        }
    }

    /// Real part as a dense real matrix (for the symmetric eigensolver).
    pub fn real_part(&self) -> DMatrix<f64> {
        self.entries.map(|z| z.re)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.irrep != other.irrep {
            return Err(Error::DimensionMismatch {
                expected: self.irrep.dim(),
                found: other.irrep.dim(),
            });
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for &OperatorMatrix {
            type Output = OperatorMatrix;
            /// Panics if the operands belong to different irreps.
            fn $method(self, rhs: &OperatorMatrix) -> OperatorMatrix {
                assert_eq!(self.irrep, rhs.irrep, "operator irreps differ");
                OperatorMatrix {
                    irrep: self.irrep,
                    entries: &self.entries $op &rhs.entries,
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.check_same(b)?;
    Ok(OperatorMatrix {
        irrep: a.irrep,
        entries: &a.entries * &b.entries - &b.entries * &a.entries,
    })
}

/// Generators of su_q(2) in the standard basis.
#[derive(Clone, Debug)]
pub struct StandardGenerators {
    pub j3: OperatorMatrix,
    pub j_plus: OperatorMatrix,
    pub j_minus: OperatorMatrix,
    pub j1: OperatorMatrix,
    pub j2: OperatorMatrix,
}

/// `J₃ f_m = m f_m`, `J± f_m = √([j±m+1]_q [j∓m]_q) f_{m±1}`,
/// `J₁ = (J₊+J₋)/2`, `J₂ = (J₊−J₋)/(2i)`.
pub fn standard_generators(irrep: Irrep, qp: QParam) -> StandardGenerators {
    let d = irrep.dim();
    let j = irrep.j();
    let diag: Vec<f64> = (0..d).map(|n| irrep.m(n)).collect();
    let j3 = OperatorMatrix::from_real_diagonal(irrep, &diag);
    let mut plus = DMatrix::<Complex64>::zeros(d, d);
    for n in 0..d.saturating_sub(1) {
        let m = irrep.m(n);
        plus[(n + 1, n)] = Complex64::new(
            (q_number(j + m + 1.0, qp) * q_number(j - m, qp)).sqrt(),
            0.0,
        );
    }
    let minus = plus.transpose();
    let j1 = (&plus + &minus) * Complex64::new(0.5, 0.0);
    let j2 = (&plus - &minus) * Complex64::new(0.0, -0.5);
    StandardGenerators {
        j3,
        j_plus: OperatorMatrix {
            irrep,
            entries: plus,
        },
        j_minus: OperatorMatrix {
            irrep,
            entries: minus,
        },
        j1: OperatorMatrix { irrep, entries: j1 },
        j2: OperatorMatrix { irrep, entries: j2 },
    }
}

/// Casimir matrix with its eigenvalue `c_q = [j+½]_q² − ¼`.
#[derive(Clone, Debug)]
pub struct Casimir {
    pub matrix: OperatorMatrix,
    pub eigenvalue: f64,
}

/// `C_q = J₊J₋ + [J₃ − ½]_q² − ¼`.
pub fn casimir(irrep: Irrep, qp: QParam) -> Casimir {
    let gens = standard_generators(irrep, qp);
    let shift: Vec<f64> = (0..irrep.dim())
        .map(|n| q_number(irrep.m(n) - 0.5, qp).powi(2) - 0.25)
        .collect();
    let matrix =
        &(&gens.j_plus * &gens.j_minus) + &OperatorMatrix::from_real_diagonal(irrep, &shift);
    Casimir {
        matrix,
        eigenvalue: q_number(irrep.j() + 0.5, qp).powi(2) - 0.25,
    }
}

/// Position, momentum and Hamiltonian of the finite q-oscillator.
#[derive(Clone, Debug)]
pub struct OscillatorOperators {
    pub q: OperatorMatrix,
    pub p: OperatorMatrix,
    pub h: OperatorMatrix,
}

/// `Q = q^{J₃/4} J₁ q^{J₃/4}`, `P = −q^{J₃/4} J₂ q^{J₃/4}`, `H = J₃ + j + ½`.
pub fn position_momentum_hamiltonian(irrep: Irrep, qp: QParam) -> OscillatorOperators {
    let gens = standard_generators(irrep, qp);
    let d = irrep.dim();
    let conj: Vec<f64> = (0..d).map(|n| qp.pow(0.25 * irrep.m(n))).collect();
    let twist = |m: &OperatorMatrix, sign: f64| {
        let mut e = m.entries.clone();
        for r in 0..d {
            for c in 0..d {
                e[(r, c)] *= sign * conj[r] * conj[c];
            }
        }
        OperatorMatrix { irrep, entries: e }
    };
    let energies: Vec<f64> = (0..d).map(|n| n as f64 + 0.5).collect();
    OscillatorOperators {
        q: twist(&gens.j1, 1.0),
        p: twist(&gens.j2, -1.0),
        h: OperatorMatrix::from_real_diagonal(irrep, &energies),
    }
}

/// Diagonal of `F_q`, the operator with `[Q, P] = i F_q`:
/// `(e^{−2mκ} cosh ½κ − e^{−mκ} cosh (j+½)κ) / (2 sinh ½κ)`; `−m` at `q = 1`.
pub fn fq_diagonal(irrep: Irrep, qp: QParam) -> Vec<f64> {
    let j = irrep.j();
    (0..irrep.dim())
        .map(|n| {
            let m = irrep.m(n);
            if qp.is_classical() {
                return -m;
            }
            let k = qp.kappa();
            let e = (-m * k).exp();
            e * (e * (0.5 * k).cosh() - ((j + 0.5) * k).cosh()) / (2.0 * (0.5 * k).sinh())
        })
        .collect()
}

/// Diagonal of `Q² + P²` (the phase-space section at fixed `J₃`):
/// `q^m ([j+½]_q² cosh ½κ − [m+½]_q [m−½]_q − ½ q^m)`; `j(j+1) − m²` at `q = 1`.
pub fn phase_space_section(irrep: Irrep, qp: QParam) -> Vec<f64> {
    let j = irrep.j();
    let ch = (0.5 * qp.kappa()).cosh();
    (0..irrep.dim())
        .map(|n| {
            let m = irrep.m(n);
            let qm = qp.pow(m);
            qm * (q_number(j + 0.5, qp).powi(2) * ch
                - q_number(m + 0.5, qp) * q_number(m - 0.5, qp)
                - 0.5 * qm)
        })
        .collect()
}

/// `D_q(m)` in `C_q = sech ½κ (Q²+P²) e^{κJ₃} + D_q(J₃)`.
pub fn casimir_offset(irrep: Irrep, qp: QParam) -> Vec<f64> {
    let sech = 1.0 / (0.5 * qp.kappa()).cosh();
    (0..irrep.dim())
        .map(|n| {
            let m = irrep.m(n);
            -0.25 + sech * (q_number(m + 0.5, qp) * q_number(m - 0.5, qp) + 0.5 * qp.pow(m))
        })
        .collect()
}

/// Position spectrum `½[2s]_q` in ascending `s`.
pub(crate) fn algebraic_spectrum(irrep: Irrep, qp: QParam) -> Vec<f64> {
    irrep
        .twos_values()
        .map(|twos| 0.5 * q_number(f64::from(twos), qp))
        .collect()
}

/// Sign `σ` with `[Q, P] = σ i diag(F_q)`, chosen by the smaller residual.
pub fn fq_commutator_sign(irrep: Irrep, qp: QParam) -> (i8, f64) {
    let ops = position_momentum_hamiltonian(irrep, qp);
    let comm = &(&ops.q * &ops.p) - &(&ops.p * &ops.q);
    let fq = fq_diagonal(irrep, qp);
    let diag = comm.diagonal();
    let resid = |sign: f64| {
        diag.iter()
            .zip(&fq)
            .map(|(z, f)| (z - I * (sign * f)).norm())
            .fold(0.0, f64::max)
    };
    let (plus, minus) = (resid(1.0), resid(-1.0));
    if plus <= minus {
        (1, plus)
    } else {
        (-1, minus)
    }
}

fn rel(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Residuals of every relation among the generators and observables.
///
/// Each residual is a max-norm normalised by the natural scale of the
/// operators involved (floored at 1).
pub fn verify_algebra(irrep: Irrep, qp: QParam, tol: f64) -> Report {
    let mut report = Report::new("algebra", irrep.twoj(), qp.q());
    let g = standard_generators(irrep, qp);
    let ops = position_momentum_hamiltonian(irrep, qp);
    let d = irrep.dim();
    let comm = |a: &OperatorMatrix, b: &OperatorMatrix| commutator(a, b).expect("same irrep");
    let q2m: Vec<f64> = (0..d).map(|n| q_number(2.0 * irrep.m(n), qp)).collect();
    let q2m_op = OperatorMatrix::from_real_diagonal(irrep, &q2m);
    let jp_scale = g.j_plus.max_abs();

    report.push(
        "[J3,J+] = J+",
        rel((&comm(&g.j3, &g.j_plus) - &g.j_plus).max_abs(), jp_scale),
        tol,
    );
    report.push(
        "[J3,J-] = -J-",
        rel((&comm(&g.j3, &g.j_minus) + &g.j_minus).max_abs(), jp_scale),
        tol,
    );
    report.push(
        "[J+,J-] = [2J3]",
        rel(
            (&comm(&g.j_plus, &g.j_minus) - &q2m_op).max_abs(),
            jp_scale * jp_scale,
        ),
        tol,
    );
    report.push(
        "[J2,J3] = iJ1",
        rel((&comm(&g.j2, &g.j3) - &g.j1.scale(I)).max_abs(), jp_scale),
        tol,
    );
    report.push(
        "[J3,J1] = iJ2",
        rel((&comm(&g.j3, &g.j1) - &g.j2.scale(I)).max_abs(), jp_scale),
        tol,
    );
    report.push(
        "[J1,J2] = i/2 [2J3]",
        rel(
            (&comm(&g.j1, &g.j2) - &q2m_op.scale(I * 0.5)).max_abs(),
            jp_scale * jp_scale,
        ),
        tol,
    );

    let cas = casimir(irrep, qp);
    let cas_resid =
        (&cas.matrix - &OperatorMatrix::identity(irrep).scale_real(cas.eigenvalue)).max_abs();
    report.push("Casimir scalar", rel(cas_resid, cas.eigenvalue.abs()), tol);

    let q_scale = ops.q.max_abs();
    report.push(
        "[H,Q] = -iP",
        rel((&comm(&ops.h, &ops.q) + &ops.p.scale(I)).max_abs(), q_scale),
        tol,
    );
    report.push(
        "[H,P] = iQ",
        rel((&comm(&ops.h, &ops.p) - &ops.q.scale(I)).max_abs(), q_scale),
        tol,
    );

    let qp_comm = comm(&ops.q, &ops.p);
    let fq = fq_diagonal(irrep, qp);
    let (sign, fq_resid) = fq_commutator_sign(irrep, qp);
    let fq_scale = fq.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    report.push(
        "[Q,P] diagonal",
        rel(qp_comm.off_diagonal_max(), fq_scale),
        tol,
    );
    report.push("[Q,P] = i F_q", rel(fq_resid, fq_scale), tol);
    report.note("fq_sign", if sign > 0 { "+1" } else { "-1" });

    let section_op = &(&ops.q * &ops.q) + &(&ops.p * &ops.p);
    let section = phase_space_section(irrep, qp);
    let section_diag: Vec<f64> = section_op.diagonal().iter().map(|z| z.re).collect();
    let section_rel = section
        .iter()
        .zip(&section_diag)
        .map(|(pred, got)| (pred - got).abs() / pred.abs().max(1.0))
        .fold(0.0, f64::max);
    report.push(
        "Q^2+P^2 diagonal",
        rel(section_op.off_diagonal_max(), q_scale * q_scale),
        tol,
    );
    report.push("Q^2+P^2 section", section_rel, tol);
    report.push(
        "[J3,Q^2+P^2] = 0",
        rel(comm(&g.j3, &section_op).max_abs(), q_scale * q_scale),
        tol,
    );

    let k = qp.kappa();
    let exp_j3: Vec<f64> = (0..d).map(|n| (k * irrep.m(n)).exp()).collect();
    let cas_qp = &(&section_op * &OperatorMatrix::from_real_diagonal(irrep, &exp_j3))
        .scale_real(1.0 / (0.5 * k).cosh())
        + &OperatorMatrix::from_real_diagonal(irrep, &casimir_offset(irrep, qp));
    let cas_qp_resid =
        (&cas_qp - &OperatorMatrix::identity(irrep).scale_real(cas.eigenvalue)).max_abs();
    report.push(
        "Casimir in Q,P form",
        rel(cas_qp_resid, cas.eigenvalue.abs()),
        tol,
    );

    let jacobi = &(&comm(&ops.p, &comm(&ops.h, &ops.q)) + &comm(&ops.q, &comm(&ops.p, &ops.h)))
        + &comm(&ops.h, &comm(&ops.q, &ops.p));
    report.push(
        "Jacobi identity",
        rel(jacobi.max_abs(), q_scale * q_scale),
        tol,
    );

    let x = algebraic_spectrum(irrep, qp);
    let x_scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let q_eigs = {
        let mut ev: Vec<f64> = ops
            .q
            .real_part()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    };
    report.push(
        "spectrum Q = 1/2 [2s]",
        rel(max_deviation(&q_eigs, &x), x_scale),
        tol,
    );
    report.push(
        "spectrum P = spectrum Q",
        rel(max_deviation(&ops.p.hermitian_eigenvalues(), &x), x_scale),
        tol,
    );
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
    fn irrep_labels() {
        let r = Irrep::new(3);
        assert_eq!(r.dim(), 4);
        assert_eq!(r.twos_values().collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
        assert_eq!(r.index_of(1).unwrap(), 2);
        assert!(r.index_of(2).is_err());
        assert!(r.index_of(5).is_err());
        assert_eq!(r.twom(0), -3);
    }

    #[test]
    fn trivial_irrep_is_zero() {
        let g = standard_generators(Irrep::new(0), qp(0.4));
        for m in [&g.j3, &g.j_plus, &g.j_minus, &g.j1, &g.j2] {
            assert_eq!(m.max_abs(), 0.0);
        }
    }

    #[test]
    fn spin_half_classical_j1() {
        let g = standard_generators(Irrep::new(1), QParam::classical());
        assert_relative_eq!(g.j1.get(0, 1).re, 0.5);
        assert_relative_eq!(g.j1.get(1, 0).re, 0.5);
        assert_eq!(g.j1.get(0, 0).norm(), 0.0);
    }

    #[test]
    fn jplus_entry_twoj2() {
        let p = qp(0.5);
        let g = standard_generators(Irrep::new(2), p);
        let expected = (0.5f64.sqrt() + 0.5f64.powf(-0.5)).sqrt();
        assert_relative_eq!(g.j_plus.get(1, 0).re, expected, max_relative = 1e-14);
    }

    #[test]
    fn casimir_eigenvalues() {
        let p = qp(0.5);
        let c0 = casimir(Irrep::new(0), p);
        assert_relative_eq!(c0.eigenvalue, q_number(0.5, p).powi(2) - 0.25);
        let c1 = casimir(Irrep::new(1), QParam::classical());
        assert_relative_eq!(c1.eigenvalue, 0.75);
        let c2 = casimir(Irrep::new(2), p);
        assert_relative_eq!(c2.eigenvalue, q_number(1.5, p).powi(2) - 0.25);
        let resid = (&c2.matrix
            - &OperatorMatrix::identity(Irrep::new(2)).scale_real(c2.eigenvalue))
            .max_abs();
        assert!(resid < 1e-12 * c2.eigenvalue.abs());
    }

    #[test]
    fn hamiltonian_and_classical_position() {
        let r = Irrep::new(4);
        let ops = position_momentum_hamiltonian(r, qp(0.3));
        let e: Vec<f64> = ops.h.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(e, vec![0.5, 1.5, 2.5, 3.5, 4.5]);

        let classical = position_momentum_hamiltonian(r, QParam::classical());
        let g = standard_generators(r, QParam::classical());
        assert_eq!(classical.q, g.j1);
        assert_eq!(classical.p, g.j2.scale_real(-1.0));
    }

    #[test]
    fn position_eigenvalues_twoj2() {
        let p = qp(0.5);
        let ops = position_momentum_hamiltonian(Irrep::new(2), p);
        let ev = ops.q.hermitian_eigenvalues();
        let x1 = p.kappa().sinh() / (2.0 * (0.5 * p.kappa()).sinh());
        assert_relative_eq!(x1, 1.0606601717798212, max_relative = 1e-14);
        assert_relative_eq!(ev[0], -x1, max_relative = 1e-12);
        assert!(ev[1].abs() < 1e-12);
        assert_relative_eq!(ev[2], x1, max_relative = 1e-12);
    }

    #[test]
    fn fq_examples() {
        assert_eq!(fq_diagonal(Irrep::new(0), qp(0.6)), vec![0.0]);
        let near = fq_diagonal(Irrep::new(1), qp(0.99));
        assert!((near[1] + 0.5).abs() < 1e-2);
        let r = Irrep::new(4);
        let p = qp(0.5);
        let ops = position_momentum_hamiltonian(r, p);
        let c = commutator(&ops.q, &ops.p).unwrap();
        for (z, f) in c.diagonal().iter().zip(fq_diagonal(r, p)) {
            assert!((z.im - f).abs() < 1e-10 && z.re.abs() < 1e-12);
        }
        assert_eq!(fq_commutator_sign(r, p).0, 1);
        assert_eq!(fq_commutator_sign(r, QParam::classical()).0, 1);
    }

    #[test]
    fn commutator_examples() {
        let r = Irrep::new(3);
        let g = standard_generators(r, qp(0.7));
        assert_eq!(commutator(&g.j1, &g.j1).unwrap().max_abs(), 0.0);
        let c = commutator(&g.j3, &g.j_plus).unwrap();
        assert!((&c - &g.j_plus).max_abs() < 1e-14);

        let r2 = Irrep::new(2);
        let p = qp(0.5);
        let g2 = standard_generators(r2, p);
        let c = commutator(&g2.j1, &g2.j2).unwrap();
        for n in 0..3 {
            let expect = 0.5 * q_number(2.0 * r2.m(n), p);
            assert!((c.get(n, n) - Complex64::new(0.0, expect)).norm() < 1e-14);
        }
        let other = standard_generators(Irrep::new(1), p);
        assert!(matches!(
            commutator(&g2.j1, &other.j1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn verify_suite_passes() {
        let classical = verify_algebra(Irrep::new(2), QParam::classical(), 1e-12);
        assert!(classical.passed(), "{classical}");
        let deformed = verify_algebra(Irrep::new(8), qp(0.5), 1e-10);
        assert!(deformed.passed(), "{deformed}");
        let jac = deformed
            .checks
            .iter()
            .find(|c| c.name == "Jacobi identity")
            .unwrap();
        assert!(jac.residual < 1e-13);
        let trivial = verify_algebra(Irrep::new(0), qp(0.5), 1e-12);
        assert!(trivial.passed(), "{trivial}");
    }

    #[test]
    fn su_q2_relations_across_grid() {
        for twoj in [1, 2, 5, 12, 32] {
            for q in [0.3, 0.5, 0.9, 0.99, 1.0] {
                let r = Irrep::new(twoj);
                let p = qp(q);
                let g = standard_generators(r, p);
                let jp = g.j_plus.max_abs().max(1.0);
                let jp2 = jp * jp;
                assert!(
                    (&commutator(&g.j3, &g.j_plus).unwrap() - &g.j_plus).max_abs() <= 1e-14 * jp
                );
                assert!(
                    (&commutator(&g.j3, &g.j_minus).unwrap() + &g.j_minus).max_abs() <= 1e-14 * jp
                );
                let q2m: Vec<f64> = (0..r.dim()).map(|n| q_number(2.0 * r.m(n), p)).collect();
                let d = &commutator(&g.j_plus, &g.j_minus).unwrap()
                    - &OperatorMatrix::from_real_diagonal(r, &q2m);
                assert!(d.max_abs() <= 1e-10 * jp2.max(1.0), "2j={twoj} q={q}");
            }
        }
    }
}
