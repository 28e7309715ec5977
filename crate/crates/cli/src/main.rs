use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qosc_cli::{
    run, Command, Format, KernelMethod, RunConfig, DEFAULT_CONTRACTION_TWOJ, DEFAULT_N_MAX,
    DEFAULT_TOL, EXIT_USAGE,
};

/// Finite q-oscillator: spectra, wavefunctions, fractional transforms,
/// potentials and self-checks.
#[derive(Parser)]
#[command(name = "qosc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Twice the representation label j.
    #[arg(long, global = true)]
    twoj: Option<u32>,
    /// Deformation parameter, 0 < q <= 1.
    #[arg(long, global = true)]
    q: Option<f64>,
    /// Fractional power of the transform.
    #[arg(long, global = true, default_value_t = 1.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Signal file for `transform`: one `re,im` sample per line.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Spectral,
    Closed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Position grid x_s and energies n + 1/2.
    Spectra,
    /// Table of Phi_n(x_s).
    Wavefuncs,
    /// Fractional transform kernel K(a).
    Kernel {
        #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
        method: MethodArg,
    },
    /// Apply K(a) to a signal file.
    Transform,
    /// Equivalent potential V - E0 from the ground state.
    Potential,
    /// Run the verification suites (default grid: 2j in 0..=8, q in {0.5, 0.9, 1}).
    Verify,
    /// Large-j diagnostics of the scaled operators.
    Contract {
        /// Comma-separated 2j values.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CONTRACTION_TWOJ)]
        twoj_list: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Spectra => Command::Spectra,
        Cmd::Wavefuncs => Command::Wavefuncs,
        Cmd::Kernel { method } => Command::Kernel {
            method: match method {
                MethodArg::Spectral => KernelMethod::Spectral,
                MethodArg::Closed => KernelMethod::Closed,
            },
        },
        Cmd::Transform => Command::Transform,
        Cmd::Potential => Command::Potential,
        Cmd::Verify => Command::Verify,
        Cmd::Contract { twoj_list, n_max } => Command::Contract { twoj_list, n_max },
    };
    let c = cli.common;
    let cfg = RunConfig {
        command,
        twoj: c.twoj,
        q: c.q,
        a: c.a,
        format: match c.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        input_path: c.input,
        output_path: c.output,
        tol: c.tol,
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qosc: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let written = match &cfg.output_path {
        Some(p) => std::fs::write(p, &outcome.text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("qosc: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.status)
}
