//! Browser bindings used by `www/index.html`. Every function returns flat
//! `Float64Array`s so the page can draw them without parsing.

use qosc::oscillator::{position_spectrum, wave_table};
use qosc::potential::{
    equivalent_potential_from_ground_state, q_potential_closed_form, GroundStateProfile,
};
use qosc::transform::{apply, kernel_spectral};
use qosc::{Complex64, Irrep, QParam, Signal};
use wasm_bindgen::prelude::*;

fn setup(twoj: u32, q: f64) -> Result<(Irrep, QParam), JsError> {
    Ok((Irrep::new(twoj), QParam::new(q)?))
}

/// Sensor points `x_s`, ascending in `s`.
#[wasm_bindgen]
pub fn positions(twoj: u32, q: f64) -> Result<Vec<f64>, JsError> {
    let (irrep, qp) = setup(twoj, q)?;
    Ok(position_spectrum(irrep, qp).x)
}

/// Row-major `Φₙ(x_s)`: `2j+1` rows of `2j+1` samples.
#[wasm_bindgen]
pub fn wavefunctions(twoj: u32, q: f64) -> Result<Vec<f64>, JsError> {
    let (irrep, qp) = setup(twoj, q)?;
    let t = wave_table(irrep, qp)?;
    Ok(t.phi.transpose().as_slice().to_vec())
}

/// Applies `K(a)` to the samples `re + i·im`; the result is interleaved
/// `re, im` pairs.
#[wasm_bindgen]
pub fn transform_signal(q: f64, a: f64, re: &[f64], im: &[f64]) -> Result<Vec<f64>, JsError> {
    if re.len() != im.len() {
        return Err(JsError::new("re and im must have the same length"));
    }
    let values = re
        .iter()
        .zip(im)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    let signal = Signal::from_samples(values)?;
    let kernel = kernel_spectral(signal.irrep, QParam::new(q)?, a)?;
    let out = apply(&kernel, &signal)?;
    Ok(out.values.iter().flat_map(|z| [z.re, z.im]).collect())
}

/// `|K(a)_{r,s}|`, row-major.
#[wasm_bindgen]
pub fn kernel_magnitude(twoj: u32, q: f64, a: f64) -> Result<Vec<f64>, JsError> {
    let (irrep, qp) = setup(twoj, q)?;
    let k = kernel_spectral(irrep, qp, a)?;
    Ok(k.matrix.transpose().iter().map(|z| z.norm()).collect())
}

/// Ground state followed by `V − E₀` from the grid difference and from the
/// closed form, each `2j+1` long.
#[wasm_bindgen]
pub fn potential(twoj: u32, q: f64) -> Result<Vec<f64>, JsError> {
    let (irrep, qp) = setup(twoj, q)?;
    let profile = GroundStateProfile::oscillator(irrep, qp)?;
    let grid = equivalent_potential_from_ground_state(&profile)?;
    let closed = irrep
        .twos_values()
        .map(|t| q_potential_closed_form(t, irrep, qp))
        .collect::<qosc::Result<Vec<f64>>>()?;
    Ok(profile
        .psi
        .iter()
        .chain(&grid)
        .chain(&closed)
        .copied()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // only success paths: JsError cannot be built off wasm32

    #[test]
    fn layouts() {
        let phi = wavefunctions(4, 0.6).unwrap_or_else(|_| unreachable!());
        assert_eq!(phi.len(), 25);
        // row n = 0 is the positive ground state
        assert!(phi[..5].iter().all(|&v| v > 0.0));
        let p = potential(4, 0.6).unwrap_or_else(|_| unreachable!());
        assert_eq!(p.len(), 15);
        for i in 0..5 {
            assert!((p[5 + i] - p[10 + i]).abs() < 1e-10);
        }
        assert_eq!(
            kernel_magnitude(3, 0.5, 0.0).unwrap_or_else(|_| unreachable!())[0],
            1.0
        );
    }

    #[test]
    fn four_transforms_return_the_signal() {
        let re = [0.3, -1.0, 0.5, 2.0];
        let mut cur: Vec<f64> = re.iter().flat_map(|&r| [r, 0.0]).collect();
        for _ in 0..4 {
            let (r, i): (Vec<f64>, Vec<f64>) = cur.chunks(2).map(|c| (c[0], c[1])).unzip();
            cur = transform_signal(0.8, 1.0, &r, &i).unwrap_or_else(|_| unreachable!());
        }
        for (k, &r) in re.iter().enumerate() {
            assert!((cur[2 * k] - r).abs() < 1e-12 && cur[2 * k + 1].abs() < 1e-12);
        }
    }
}
