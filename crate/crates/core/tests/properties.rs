use num_complex::Complex64;
use proptest::prelude::*;
use qosc::oscillator::wave_table;
use qosc::qcore::{q_binomial, q_binomial_alternate, q_number};
use qosc::transform::{apply, kernel_spectral};
use qosc::{Irrep, QParam, Signal};

fn signal(irrep: Irrep, raw: &[(f64, f64)]) -> Signal {
    let v = raw
        .iter()
        .take(irrep.dim())
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    Signal::new(irrep, v).unwrap()
}

fn samples() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0, -1.0..1.0), 13)
}

proptest! {
    #[test]
    fn q_number_is_odd(r in -20.0..20.0_f64, q in 0.05..=1.0_f64) {
        let qp = QParam::new(q).unwrap();
        prop_assert!((q_number(-r, qp) + q_number(r, qp)).abs() <= 1e-12 * q_number(r, qp).abs().max(1.0));
    }

    #[test]
    fn q_binomial_symmetry(m in 0u32..30, k in 0u32..30, q in 0.05..=1.0_f64) {
        let n = k.min(m);
        let qp = QParam::new(q).unwrap();
        let a = q_binomial(m, n, qp).unwrap();
        let b = q_binomial(m, m - n, qp).unwrap();
        let c = q_binomial_alternate(m, n, qp).unwrap();
        prop_assert!((a.log_abs() - b.log_abs()).abs() < 1e-11);
        prop_assert!((a.log_abs() - c.log_abs()).abs() < 1e-11);
        prop_assert_eq!(a.sign(), 1);
    }

    #[test]
    fn kernel_group_law(tj in 0u32..=12, q in 0.3..=1.0_f64, a in -3.0..3.0_f64, b in -3.0..3.0_f64, raw in samples()) {
        let irrep = Irrep::new(tj);
        let qp = QParam::new(q).unwrap();
        let v = signal(irrep, &raw);
        let two = apply(&kernel_spectral(irrep, qp, a).unwrap(), &apply(&kernel_spectral(irrep, qp, b).unwrap(), &v).unwrap()).unwrap();
        let one = apply(&kernel_spectral(irrep, qp, a + b).unwrap(), &v).unwrap();
        for (x, y) in two.values.iter().zip(&one.values) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn kernel_preserves_norm(tj in 0u32..=12, q in 0.3..=1.0_f64, a in -4.0..4.0_f64, raw in samples()) {
        let irrep = Irrep::new(tj);
        let v = signal(irrep, &raw);
        let w = apply(&kernel_spectral(irrep, QParam::new(q).unwrap(), a).unwrap(), &v).unwrap();
        prop_assert!((w.norm() - v.norm()).abs() < 1e-11);
    }

    #[test]
    fn wavefunction_parity(tj in 0u32..=32, q in 0.3..=1.0_f64) {
        let t = wave_table(Irrep::new(tj), QParam::new(q).unwrap()).unwrap();
        prop_assert!(t.parity_residual() <= 1e-11);
        prop_assert!(t.orthonormality_residual() <= 1e-10);
    }
}
