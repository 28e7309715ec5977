//! One line per acceptance criterion. Exits non-zero on any failure other
//! than the listed known ones, and on a known failure that starts passing.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use qosc::algebra::{commutator, position_momentum_hamiltonian};
use qosc::contraction::contraction_report;
use qosc::oscillator::{
    classical_kravchuk_wavefunction, position_eigvec_product_form, position_spectrum, wave_table,
};
use qosc::potential::{
    equivalent_potential_from_ground_state, kravchuk_potential, q_potential_closed_form,
    GroundStateProfile,
};
use qosc::transform::{kernel_closed_form, kernel_spectral, phased_little_d};
use qosc::{Complex64, Irrep, QParam};

const Q_GRID: [f64; 3] = [0.5, 0.9, 1.0];
const A_VALUES: [f64; 4] = [0.3, 1.0, 1.7, 2.9];

/// Criteria that cannot be met, with the reason. The scaled commutator
/// `w_j² F_q` tends to `(1+q)q^{2n} − qⁿ` mode by mode, so its distance from
/// `qⁿ` levels off (0.625 at q = 0.5) instead of shrinking towards zero.
const KNOWN_FAILURES: [(&str, &str); 1] = [(
    "final commutator deviation",
    "deviation levels off at max_n |2qⁿ − (1+q)q^{2n}|",
)];

struct Line {
    id: &'static str,
    what: &'static str,
    worst: f64,
    tol: f64,
    detail: String,
}

impl Line {
    fn new(id: &'static str, what: &'static str, worst: f64, tol: f64) -> Self {
        Self {
            id,
            what,
            worst,
            tol,
            detail: String::new(),
        }
    }

    fn passed(&self) -> bool {
        self.worst <= self.tol
    }

    fn known_failure(&self) -> Option<&'static str> {
        KNOWN_FAILURES
            .iter()
            .find(|(w, _)| *w == self.what)
            .map(|(_, why)| *why)
    }
}

fn qp(q: f64) -> QParam {
    QParam::new(q).expect("q in range")
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn ac1() -> Line {
    let mut worst = 0.0_f64;
    for q in Q_GRID {
        for tj in 1..=16 {
            let irrep = Irrep::new(tj);
            let ev = position_momentum_hamiltonian(irrep, qp(q))
                .q
                .hermitian_eigenvalues();
            let x = position_spectrum(irrep, qp(q)).x;
            let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            for (e, xs) in ev.iter().zip(&x) {
                worst = worst.max((e - xs).abs() / scale);
            }
        }
    }
    Line::new(
        "AC1",
        "Q spectrum = 1/2 [2s]_q (relative to max|x|)",
        worst,
        1e-10,
    )
}

fn ac2() -> Line {
    let i = Complex64::new(0.0, 1.0);
    let mut worst = 0.0_f64;
    for q in Q_GRID {
        for tj in 1..=16 {
            let ops = position_momentum_hamiltonian(Irrep::new(tj), qp(q));
            let hq = &commutator(&ops.h, &ops.q).unwrap() + &ops.p.scale(i);
            let hp = &commutator(&ops.h, &ops.p).unwrap() - &ops.q.scale(i);
            worst = worst.max(hq.max_abs().max(hp.max_abs()) / ops.q.max_abs());
        }
    }
    Line::new("AC2", "Hamilton equations (relative to |Q|)", worst, 1e-10)
}

fn ac3() -> Vec<Line> {
    let (mut ortho, mut parity) = (0.0_f64, 0.0_f64);
    for q in Q_GRID {
        for tj in 0..=32 {
            let t = wave_table(Irrep::new(tj), qp(q)).unwrap();
            ortho = ortho
                .max(t.orthonormality_residual())
                .max(t.completeness_residual());
            parity = parity.max(t.parity_residual());
        }
    }
    vec![
        Line::new(
            "AC3",
            "wave table orthonormal and complete, 2j <= 32",
            ortho,
            1e-10,
        ),
        Line::new("AC3", "wave table parity, 2j <= 32", parity, 1e-11),
    ]
}

fn ac4() -> Line {
    let mut worst = 0.0_f64;
    for q in Q_GRID {
        for tj in 0..=16 {
            let irrep = Irrep::new(tj);
            let t = wave_table(irrep, qp(q)).unwrap();
            for (c, twos) in irrep.twos_values().enumerate() {
                let v = position_eigvec_product_form(twos, irrep, qp(q)).unwrap();
                for (n, x) in v.iter().enumerate() {
                    worst = worst.max((x - t.phi[(n, c)]).abs());
                }
            }
        }
    }
    Line::new(
        "AC4",
        "product-form expansion = wave table, 2j <= 16",
        worst,
        1e-10,
    )
}

fn ac5() -> Vec<Line> {
    let (mut unitary, mut group, mut fourth) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut closed = 0.0_f64;
    for q in Q_GRID {
        for tj in 0..=16 {
            let irrep = Irrep::new(tj);
            let k1 = kernel_spectral(irrep, qp(q), 1.0).unwrap();
            let k4 = &k1.matrix * &k1.matrix * &k1.matrix * &k1.matrix;
            for r in 0..irrep.dim() {
                for c in 0..irrep.dim() {
                    let id = if r == c { 1.0 } else { 0.0 };
                    fourth = fourth.max((k4[(r, c)] - id).norm());
                }
            }
            for a in A_VALUES {
                let ka = kernel_spectral(irrep, qp(q), a).unwrap();
                unitary = unitary.max(ka.unitarity_residual());
                for b in A_VALUES {
                    let kb = kernel_spectral(irrep, qp(q), b).unwrap();
                    let kab = kernel_spectral(irrep, qp(q), a + b).unwrap();
                    let prod = &ka.matrix * &kb.matrix;
                    group = group.max(max_diff(prod.as_slice(), kab.matrix.as_slice()));
                }
            }
        }
    }
    for q in [0.5, 0.9] {
        for tj in 0..=8 {
            let irrep = Irrep::new(tj);
            for a in [0.3, 1.0, 2.7] {
                let s = kernel_spectral(irrep, qp(q), a).unwrap();
                let c = kernel_closed_form(irrep, qp(q), a).unwrap();
                closed = closed.max(max_diff(s.matrix.as_slice(), c.matrix.as_slice()));
            }
        }
    }
    vec![
        Line::new("AC5", "kernel unitarity", unitary, 1e-10),
        Line::new("AC5", "kernel group law K(a)K(b) = K(a+b)", group, 1e-10),
        Line::new("AC5", "K(1)^4 = 1", fourth, 1e-10),
        Line::new(
            "AC5",
            "closed-form 8W7 kernel = spectral, 2j <= 8",
            closed,
            1e-8,
        ),
    ]
}

fn ac6() -> Vec<Line> {
    let near = qp(1.0 - 1e-6);
    let mut waves = 0.0_f64;
    for tj in 0..=12 {
        let irrep = Irrep::new(tj);
        let t = wave_table(irrep, near).unwrap();
        for n in 0..=tj {
            for (c, twos) in irrep.twos_values().enumerate() {
                let k = classical_kravchuk_wavefunction(n, twos, tj).unwrap();
                waves = waves.max((t.phi[(n as usize, c)] - k).abs());
            }
        }
    }
    let mut kernel = 0.0_f64;
    for tj in 0..=8 {
        let irrep = Irrep::new(tj);
        let k = kernel_spectral(irrep, near, 1.0).unwrap();
        let d = phased_little_d(irrep, 1.0).unwrap();
        kernel = kernel.max(max_diff(k.matrix.as_slice(), d.as_slice()));
    }
    vec![
        Line::new(
            "AC6",
            "q = 1-1e-6 wavefunctions = Kravchuk, 2j <= 12",
            waves,
            5e-5,
        ),
        Line::new(
            "AC6",
            "q = 1-1e-6 K(1) = phased little-d, 2j <= 8",
            kernel,
            5e-4,
        ),
    ]
}

fn ac7() -> Vec<Line> {
    let mut grid = 0.0_f64;
    for q in [0.5, 0.8, 0.99] {
        for tj in 0..=16 {
            let irrep = Irrep::new(tj);
            let profile = GroundStateProfile::oscillator(irrep, qp(q)).unwrap();
            let v = equivalent_potential_from_ground_state(&profile).unwrap();
            for (i, twos) in irrep.twos_values().enumerate() {
                grid =
                    grid.max((q_potential_closed_form(twos, irrep, qp(q)).unwrap() - v[i]).abs());
            }
        }
    }
    let near = qp(1.0 - 1e-6);
    let mut limit = 0.0_f64;
    for tj in 0..=16 {
        let irrep = Irrep::new(tj);
        for twos in irrep.twos_values() {
            let d = q_potential_closed_form(twos, irrep, near).unwrap()
                - kravchuk_potential(twos, tj).unwrap();
            limit = limit.max(d.abs());
        }
    }
    vec![
        Line::new(
            "AC7",
            "closed-form q-potential = grid difference, 2j <= 16",
            grid,
            1e-9,
        ),
        Line::new(
            "AC7",
            "q = 1-1e-6 potential = Kravchuk potential",
            limit,
            1e-4,
        ),
    ]
}

fn ac8() -> Vec<Line> {
    let mut lines = Vec::new();
    for q in [0.5, 0.8] {
        let rep = contraction_report(&[8, 16, 24, 32], qp(q), 2).unwrap();
        let devs: Vec<String> = rep.rows.iter().map(|r| format!("{:.4}", r.dev)).collect();
        for check in rep.checks().checks {
            let what: &'static str = match check.name.as_str() {
                "dev non-increasing (10% slack)" => "commutator deviation decreasing (10% slack)",
                "final dev" => "final commutator deviation",
                "w_j x_j vs limit" => "w_j x_j within 2% of limit, 2j = 32",
                _ => continue,
            };
            let mut line = Line::new("AC8", what, check.residual, check.tol);
            line.detail = format!("q={q} dev(8,16,24,32)=[{}]", devs.join(", "));
            lines.push(line);
        }
    }
    lines
}

fn run_qosc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qosc"))
        .args(args)
        .output()
        .expect("qosc binary runs")
}

fn read_samples(path: &Path) -> Vec<Complex64> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split(',').map(|v| v.trim().parse::<f64>().unwrap());
            Complex64::new(it.next().unwrap(), it.next().unwrap_or(0.0))
        })
        .collect()
}

fn ac9() -> Vec<Line> {
    let dir = tempfile::tempdir().unwrap();
    let mut worst = 0.0_f64;
    let mut ok = true;
    for (tj, q) in [(0_u32, 0.5), (5, 0.7), (12, 0.9), (9, 1.0)] {
        let input = dir.path().join(format!("in_{tj}.csv"));
        // real-only lines exercise the optional imaginary column
        let text: String = (0..=tj)
            .map(|k| {
                let t = f64::from(k);
                if k % 3 == 0 {
                    format!("{}\n", (1.3 * t).sin())
                } else {
                    format!("{},{}\n", (1.3 * t).sin(), (0.7 * t + 0.2).cos())
                }
            })
            .collect();
        std::fs::write(&input, text).unwrap();
        let mut current = input.clone();
        let qs = q.to_string();
        for step in 0..4 {
            let out = dir.path().join(format!("out_{tj}_{step}.csv"));
            let o = run_qosc(&[
                "transform",
                "--a",
                "1",
                "--q",
                &qs,
                "--input",
                current.to_str().unwrap(),
                "--output",
                out.to_str().unwrap(),
            ]);
            ok &= o.status.success();
            current = out;
        }
        worst = worst.max(max_diff(&read_samples(&input), &read_samples(&current)));
    }
    let verify = run_qosc(&["verify"]);
    let code = verify.status.code().unwrap_or(-1);
    let mut round = Line::new(
        "AC9",
        "four CLI transforms with a = 1 reproduce the signal",
        worst,
        1e-9,
    );
    if !ok {
        round.worst = f64::INFINITY;
        round.detail = "a transform invocation failed".into();
    }
    let mut v = Line::new(
        "AC9",
        "`qosc verify` exit code on the default grid",
        f64::from(code.abs()),
        0.0,
    );
    v.detail = format!("exit={code}");
    vec![round, v]
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = vec![ac1(), ac2()];
    lines.extend(ac3());
    lines.push(ac4());
    lines.extend(ac5());
    lines.extend(ac6());
    lines.extend(ac7());
    lines.extend(ac8());
    lines.extend(ac9());
    let (mut passed, mut unexpected) = (0, 0);
    for l in &lines {
        let known = l.known_failure();
        let verdict = match (l.passed(), known) {
            (true, None) => "PASS",
            (true, Some(_)) => "XPASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        if l.passed() {
            passed += 1;
        }
        if l.passed() == known.is_some() {
            unexpected += 1;
        }
        let mut notes: Vec<String> = Vec::new();
        if !l.detail.is_empty() {
            notes.push(l.detail.clone());
        }
        if let Some(why) = known {
            notes.push(why.to_owned());
        }
        let notes = if notes.is_empty() {
            String::new()
        } else {
            format!("  [{}]", notes.join("; "))
        };
        println!(
            "{} {verdict} {}: {:.3e} (tol {:.0e}){notes}",
            l.id, l.what, l.worst, l.tol
        );
    }
    println!(
        "acceptance: {passed} of {} lines pass, {unexpected} unexpected, {:.1}s",
        lines.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
