//! Library side of the `qosc` command: configuration, dispatch and the
//! CSV/JSON writers. `main.rs` only parses flags and maps exit codes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use qosc::contraction::{contraction_report, ContractionReport};
use qosc::oscillator::{position_spectrum, wave_table};
use qosc::potential::{
    acceptable_ground_state, equivalent_potential_from_ground_state, q_potential_table,
    GroundStateProfile,
};
use qosc::transform::{apply, kernel_closed_form, kernel_spectral};
use qosc::{Complex64, Irrep, QParam, Report, Signal};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Grid used by `verify` when neither `--twoj` nor `--q` is given.
pub const DEFAULT_TWOJ_GRID: std::ops::RangeInclusive<u32> = 0..=8;
pub const DEFAULT_Q_GRID: [f64; 3] = [0.5, 0.9, 1.0];
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_CONTRACTION_TWOJ: [u32; 4] = [8, 16, 24, 32];
pub const DEFAULT_N_MAX: usize = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qosc::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KernelMethod {
    #[default]
    Spectral,
    Closed,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Spectra,
    Wavefuncs,
    Kernel { method: KernelMethod },
    Transform,
    Potential,
    Verify,
    Contract { twoj_list: Vec<u32>, n_max: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Required except for `verify` (which then sweeps the default grid),
    /// `transform` (inferred from the signal length) and `contract`.
    pub twoj: Option<u32>,
    pub q: Option<f64>,
    pub a: f64,
    pub format: Format,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub tol: f64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            twoj: None,
            q: None,
            a: 1.0,
            format: Format::Csv,
            input_path: None,
            output_path: None,
            tol: DEFAULT_TOL,
        }
    }
}

/// Serialized output plus the exit status it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            status: EXIT_OK,
        }
    }
}

fn need_twoj(cfg: &RunConfig) -> Result<Irrep, CliError> {
    cfg.twoj
        .map(Irrep::new)
        .ok_or_else(|| CliError::Usage("--twoj is required for this command".into()))
}

fn need_q(cfg: &RunConfig) -> Result<QParam, CliError> {
    let q = cfg
        .q
        .ok_or_else(|| CliError::Usage("--q is required for this command".into()))?;
    Ok(QParam::new(q)?)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Spectra => spectra(cfg),
        Command::Wavefuncs => wavefuncs(cfg),
        Command::Kernel { method } => kernel(cfg, *method),
        Command::Transform => transform(cfg),
        Command::Potential => potential(cfg),
        Command::Verify => verify(cfg),
        Command::Contract { twoj_list, n_max } => contract(cfg, twoj_list, *n_max),
    }
}

#[derive(Serialize)]
struct C64 {
    re: f64,
    im: f64,
}

impl From<Complex64> for C64 {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct SpectraRow {
    twos: i32,
    x: f64,
    n: usize,
    energy: f64,
}

fn spectra(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let irrep = need_twoj(cfg)?;
    let qp = need_q(cfg)?;
    let grid = position_spectrum(irrep, qp);
    let rows: Vec<SpectraRow> = irrep
        .twos_values()
        .zip(&grid.x)
        .enumerate()
        .map(|(n, (twos, &x))| SpectraRow {
            twos,
            x,
            n,
            energy: n as f64 + 0.5,
        })
        .collect();
    let text = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("# position x_s by ascending twos = 2s; energy E_n = n + 1/2 by ascending n\ntwos,x,n,energy\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.twos, r.x, r.n, r.energy);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct WaveRow {
    n: usize,
    twos: i32,
    x: f64,
    phi: f64,
}

fn wavefuncs(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let irrep = need_twoj(cfg)?;
    let qp = need_q(cfg)?;
    let table = wave_table(irrep, qp)?;
    let grid = position_spectrum(irrep, qp);
    let twos: Vec<i32> = irrep.twos_values().collect();
    let mut rows = Vec::with_capacity(irrep.dim() * irrep.dim());
    for n in 0..irrep.dim() {
        for (c, &t) in twos.iter().enumerate() {
            rows.push(WaveRow {
                n,
                twos: t,
                x: grid.x[c],
                phi: table.phi[(n, c)],
            });
        }
    }
    let text = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from(
                "# Phi_n(x_s); rows by ascending n, then ascending twos = 2s\nn,twos,x,phi\n",
            );
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.n, r.twos, r.x, r.phi);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct KernelJson {
    twoj: u32,
    q: f64,
    a: f64,
    route: String,
    twos: Vec<i32>,
    /// Row-major, rows and columns by ascending twos.
    matrix: Vec<Vec<C64>>,
}

fn kernel(cfg: &RunConfig, method: KernelMethod) -> Result<Outcome, CliError> {
    let irrep = need_twoj(cfg)?;
    let qp = need_q(cfg)?;
    let k = match method {
        KernelMethod::Spectral => kernel_spectral(irrep, qp, cfg.a)?,
        KernelMethod::Closed => kernel_closed_form(irrep, qp, cfg.a)?,
    };
    let twos: Vec<i32> = irrep.twos_values().collect();
    let d = irrep.dim();
    let text = match cfg.format {
        Format::Json => json(&KernelJson {
            twoj: irrep.twoj(),
            q: qp.q(),
            a: cfg.a,
            route: format!("{:?}", k.route),
            twos: twos.clone(),
            matrix: (0..d)
                .map(|r| (0..d).map(|c| k.matrix[(r, c)].into()).collect())
                .collect(),
        })?,
        Format::Csv => {
            let mut s = format!(
                "# K(a={}) route {:?}; rows by ascending row twos, then ascending column twos\nrow_twos,col_twos,re,im\n",
                cfg.a, k.route
            );
            for (r, tr) in twos.iter().enumerate() {
                for (c, tc) in twos.iter().enumerate() {
                    let z = k.matrix[(r, c)];
                    let _ = writeln!(s, "{tr},{tc},{},{}", z.re, z.im);
                }
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// Reads one sample per line, `re` or `re,im`. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_signal(text: &str, path: &Path) -> Result<Vec<Complex64>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| CliError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let mut parts = line.split(',').map(str::trim);
        let num = |s: Option<&str>| -> Result<Option<f64>, CliError> {
            match s {
                None => Ok(None),
                Some(v) => v
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|e| err(format!("cannot parse {v:?}: {e}"))),
            }
        };
        let re = num(parts.next())?.ok_or_else(|| err("missing real part".into()))?;
        let im = num(parts.next())?.unwrap_or(0.0);
        if parts.next().is_some() {
            return Err(err("expected at most two columns (re,im)".into()));
        }
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SampleJson {
    twos: i32,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct TransformJson {
    twoj: u32,
    q: f64,
    a: f64,
    samples: Vec<SampleJson>,
}

fn transform(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let path = cfg
        .input_path
        .as_ref()
        .ok_or_else(|| CliError::Usage("transform needs --input <signal file>".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let values = parse_signal(&text, path)?;
    let signal = match cfg.twoj {
        Some(tj) => Signal::new(Irrep::new(tj), values)?,
        None => Signal::from_samples(values)?,
    };
    let qp = need_q(cfg)?;
    let k = kernel_spectral(signal.irrep, qp, cfg.a)?;
    let out = apply(&k, &signal)?;
    let twos: Vec<i32> = signal.irrep.twos_values().collect();
    let text = match cfg.format {
        Format::Json => json(&TransformJson {
            twoj: signal.irrep.twoj(),
            q: qp.q(),
            a: cfg.a,
            samples: twos
                .iter()
                .zip(&out.values)
                .map(|(&t, z)| SampleJson {
                    twos: t,
                    re: z.re,
                    im: z.im,
                })
                .collect(),
        })?,
        Format::Csv => {
            // same layout as the input so outputs can be fed back in
            let mut s = format!(
                "# transform a={} 2j={} q={}; one sample per line by ascending twos: re,im\n",
                cfg.a,
                signal.irrep.twoj(),
                qp.q()
            );
            for z in &out.values {
                let _ = writeln!(s, "{},{}", z.re, z.im);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct PotentialRow {
    twos: i32,
    x: f64,
    psi: f64,
    v_grid: f64,
    v_closed: f64,
}

#[derive(Serialize)]
struct PotentialJson {
    twoj: u32,
    q: f64,
    unimodal_ground_state: bool,
    rows: Vec<PotentialRow>,
}

fn potential(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let irrep = need_twoj(cfg)?;
    let qp = need_q(cfg)?;
    let prof = GroundStateProfile::oscillator(irrep, qp)?;
    let grid_v = equivalent_potential_from_ground_state(&prof)?;
    let closed = q_potential_table(irrep, qp)?;
    let x = position_spectrum(irrep, qp).x;
    let rows: Vec<PotentialRow> = irrep
        .twos_values()
        .enumerate()
        .map(|(i, t)| PotentialRow {
            twos: t,
            x: x[i],
            psi: prof.psi[i],
            v_grid: grid_v[i],
            v_closed: closed[i],
        })
        .collect();
    let unimodal = acceptable_ground_state(&prof.psi);
    let text = match cfg.format {
        Format::Json => json(&PotentialJson {
            twoj: irrep.twoj(),
            q: qp.q(),
            unimodal_ground_state: unimodal,
            rows,
        })?,
        Format::Csv => {
            let mut s = format!(
                "# V - E0 by ascending twos; grid difference and closed form; unimodal ground state: {unimodal}\ntwos,x,psi,v_grid,v_closed\n"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.twos, r.x, r.psi, r.v_grid, r.v_closed
                );
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// Every verification suite at one `(2j, q)` point.
pub fn verify_point(irrep: Irrep, qp: QParam, tol: f64) -> Vec<Report> {
    vec![
        qosc::algebra::verify_algebra(irrep, qp, tol),
        qosc::oscillator::verify_oscillator(irrep, qp, tol),
        qosc::transform::verify_transform(irrep, qp, tol),
        qosc::potential::verify_potential(irrep, qp, tol),
    ]
}

#[derive(Serialize)]
struct CheckJson<'a> {
    suite: &'a str,
    twoj: u32,
    q: f64,
    check: &'a str,
    residual: f64,
    tol: f64,
    pass: bool,
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let twojs: Vec<u32> = match cfg.twoj {
        Some(t) => vec![t],
        None => DEFAULT_TWOJ_GRID.collect(),
    };
    let qs: Vec<QParam> = match cfg.q {
        Some(q) => vec![QParam::new(q)?],
        None => DEFAULT_Q_GRID
            .iter()
            .map(|&q| QParam::new(q))
            .collect::<Result<_, _>>()?,
    };
    let mut reports = Vec::new();
    for &tj in &twojs {
        for &qp in &qs {
            reports.extend(verify_point(Irrep::new(tj), qp, cfg.tol));
        }
    }
    let passed = reports.iter().all(Report::passed);
    let checks: Vec<CheckJson> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| CheckJson {
                suite: &r.suite,
                twoj: r.twoj,
                q: r.q,
                check: &c.name,
                residual: c.residual,
                tol: c.tol,
                pass: c.passed(),
            })
        })
        .collect();
    let text = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct VerifyJson<'a> {
                passed: bool,
                checks: Vec<CheckJson<'a>>,
            }
            json(&VerifyJson { passed, checks })?
        }
        Format::Csv => {
            let mut s = String::from("suite,twoj,q,check,residual,tol,pass\n");
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{:e},{:e},{}",
                    c.suite, c.twoj, c.q, c.check, c.residual, c.tol, c.pass
                );
            }
            for r in &reports {
                for (k, v) in &r.notes {
                    let _ = writeln!(s, "# {} 2j={} q={} {k}={v}", r.suite, r.twoj, r.q);
                }
            }
            let _ = writeln!(s, "# overall: {}", if passed { "pass" } else { "FAIL" });
            s
        }
    };
    Ok(Outcome {
        text,
        status: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

#[derive(Serialize)]
struct ContractionRowJson {
    twoj: u32,
    w: f64,
    dev: f64,
    ladder_dev: f64,
    raising_dev: f64,
    raising_01: f64,
    ground_commutator: f64,
    bound: f64,
    asymptote_dev: f64,
    hamilton: f64,
}

fn contraction_rows(rep: &ContractionReport) -> Vec<ContractionRowJson> {
    rep.rows
        .iter()
        .map(|r| ContractionRowJson {
            twoj: r.twoj,
            w: r.w,
            dev: r.dev,
            ladder_dev: r.ladder_dev,
            raising_dev: r.raising_dev,
            raising_01: r.raising_01,
            ground_commutator: r.ground_commutator,
            bound: r.bound,
            asymptote_dev: r.asymptote_dev,
            hamilton: r.hamilton,
        })
        .collect()
}

fn contract(cfg: &RunConfig, twoj_list: &[u32], n_max: usize) -> Result<Outcome, CliError> {
    let qp = need_q(cfg)?;
    let rep = contraction_report(twoj_list, qp, n_max)?;
    let checks = rep.checks();
    let rows = contraction_rows(&rep);
    let text = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct ContractJson<'a> {
                q: f64,
                n_max: usize,
                bound_limit: Option<f64>,
                rows: Vec<ContractionRowJson>,
                checks: Vec<CheckJson<'a>>,
            }
            json(&ContractJson {
                q: rep.q,
                n_max,
                bound_limit: rep.bound_limit,
                rows,
                checks: checks
                    .checks
                    .iter()
                    .map(|c| CheckJson {
                        suite: &checks.suite,
                        twoj: checks.twoj,
                        q: checks.q,
                        check: &c.name,
                        residual: c.residual,
                        tol: c.tol,
                        pass: c.passed(),
                    })
                    .collect(),
            })?
        }
        Format::Csv => {
            let mut s = format!(
                "# low-mode block n <= {n_max}, q = {}; limit of w_j x_j: {}\ntwoj,w,dev,ladder_dev,raising_dev,raising_01,ground_commutator,bound,asymptote_dev,hamilton\n",
                rep.q,
                rep.bound_limit.map_or("unbounded".to_string(), |b| b.to_string())
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                    r.twoj,
                    r.w,
                    r.dev,
                    r.ladder_dev,
                    r.raising_dev,
                    r.raising_01,
                    r.ground_commutator,
                    r.bound,
                    r.asymptote_dev,
                    r.hamilton
                );
            }
            for c in &checks.checks {
                let _ = writeln!(
                    s,
                    "# check {}: {:e} (tol {:e}) {}",
                    c.name,
                    c.residual,
                    c.tol,
                    if c.passed() { "pass" } else { "FAIL" }
                );
            }
            for (k, v) in &checks.notes {
                let _ = writeln!(s, "# {k}={v}");
            }
            s
        }
    };
    Ok(Outcome {
        text,
        status: if checks.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_signal_formats() {
        let p = Path::new("sig.csv");
        let v = parse_signal("# header\n1,2\n\n 3 \n-0.5, 1e-3\n", p).unwrap();
        assert_eq!(
            v,
            vec![
                Complex64::new(1.0, 2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(-0.5, 1e-3)
            ]
        );
        let e = parse_signal("1,2\nx\n", p).unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
        assert!(parse_signal("1,2,3\n", p).is_err());
    }

    #[test]
    fn spectra_csv() {
        let mut cfg = RunConfig::new(Command::Spectra);
        cfg.twoj = Some(2);
        cfg.q = Some(0.5);
        let out = run(&cfg).unwrap();
        let rows: Vec<&str> = out.text.lines().skip(2).collect();
        let x: Vec<f64> = rows
            .iter()
            .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!((x[0] + 1.0606601717798212).abs() < 1e-15);
        assert_eq!(x[1], 0.0);
        assert!((x[2] - 1.0606601717798212).abs() < 1e-15);
    }

    #[test]
    fn missing_flags_are_usage_errors() {
        let cfg = RunConfig::new(Command::Spectra);
        assert!(matches!(run(&cfg), Err(CliError::Usage(_))));
        let mut cfg = RunConfig::new(Command::Wavefuncs);
        cfg.twoj = Some(2);
        cfg.q = Some(1.5);
        let e = run(&cfg).unwrap_err();
        assert!(e.to_string().contains("1/q"));
    }
}
