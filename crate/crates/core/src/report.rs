//! Residual reports produced by the verification suites.

use std::fmt;

/// One numerical check: a residual compared against a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tol,
        }
    }

    /// NaN residuals never pass.
    pub fn passed(&self) -> bool {
        self.residual <= self.tol
    }
}

/// A named list of checks for one `(2j, q)` point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub suite: String,
    pub twoj: u32,
    pub q: f64,
    pub checks: Vec<Check>,
    /// Free-form facts recorded alongside the residuals.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(suite: impl Into<String>, twoj: u32, q: f64) -> Self {
        Self {
            suite: suite.into(),
            twoj,
            q,
            ..Self::default()
        }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.checks.push(Check::new(name, residual, tol));
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} 2j={} q={} {:<32} {:.3e} (tol {:.1e}) {}",
                self.suite,
                self.twoj,
                self.q,
                c.name,
                c.residual,
                c.tol,
                if c.passed() { "pass" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
