//! Numerical model of the finite q-oscillator.
//!
//! The oscillator lives in the `2j+1` dimensional irreducible representation
//! of su_q(2). Its position operator has the non-uniform spectrum
//! `x_s = ½[2s]_q`, the Hamiltonian has the equally spaced spectrum `n + ½`,
//! and the change of basis between the two is given by dual q-Kravchuk
//! functions. Time evolution of a sampled signal is the fractional
//! Fourier-q-Kravchuk transform.
//!
//! Half-integer labels (`j`, `m`, `s`) are carried as doubled integers
//! (`twoj`, `twom`, `twos`) throughout.
//!
//! Modules, bottom-up:
//!
//! - [`qcore`]: q-numbers, q-Pochhammer symbols and basic hypergeometric sums,
//!   evaluated in log domain where products can overflow.
//! - [`algebra`]: dense matrices of the generators, position, momentum and
//!   Hamiltonian, plus a residual report for every commutation relation.
//! - [`oscillator`]: position grid, wavefunction tables and their oracles.
//! - [`transform`]: the fractional transform kernel (spectral and closed form).
//! - [`potential`]: equivalent potentials recovered from the ground state.
//! - [`contraction`]: scaled operators and the large-`j` diagnostics.

pub mod algebra;
pub mod contraction;
mod error;
pub mod oscillator;
pub mod potential;
pub mod qcore;
pub mod report;
pub mod transform;

pub use algebra::{Irrep, OperatorMatrix};
pub use error::{Error, Result};
pub use oscillator::{PositionGrid, WaveTable};
pub use qcore::{LogSigned, QParam};
pub use report::{Check, Report};
pub use transform::{Kernel, KernelRoute, Signal};

pub use num_complex::Complex64;
