//! Pseudo-spectral incompressible Navier-Stokes on the periodic box
//! `[0, 2pi)^3`, plus a dyadic-band (Littlewood-Paley style) diagnostics
//! engine for frequency- and time-localized regularity monitoring.
//!
//! The crate has two halves that share one spectral core:
//!
//! * a solver: integrating-factor RK4 on the vorticity-free spectral
//!   velocity, 2/3-rule dealiasing, exact viscous factor, divergence-free
//!   projection every step;
//! * a diagnostics engine: a smooth dyadic filter bank, shell/band
//!   energies and dissipations, band-to-band energy flux functionals with
//!   machine-verified algebraic identities, and a sliding-window ledger
//!   that evaluates frequency-localized regularity monitors over dyadic
//!   lookback windows `[T - 4^{-p}, T)`.
//!
//! Everything is deterministic: seeded ChaCha streams for random data,
//! fixed reduction orders, and bit-stable file formats. The binary `lpns`
//! exposes `run`, `analyze`, and `verify` subcommands; the examples
//! directory is the guided tour:
//!
//! ```text
//! cargo run --release --example taylor_green_decay   # exact solver decay
//! cargo run --release --example dyadic_shells        # filter bank anatomy
//! cargo run --release --example flux_identities      # flux functionals + identities
//! cargo run --release --example regularity_monitors  # windowed monitors on a run
//! cargo run --release --example decaying_turbulence  # full pipeline + reports
//! cargo run --release --example snapshots_and_reports # on-disk formats
//! ```

pub mod bank;
pub mod cli;
pub mod config;
pub mod fft;
pub mod field;
pub mod flux;
pub mod grid;
pub mod ic;
pub mod ledger;
pub mod norm;
pub mod ops;
pub mod report;
pub mod snapshot;
pub mod solver;
pub mod stats;
pub(crate) mod testutil;
pub mod verify;

pub use bank::{lambda, BandSide, DyadicFilterBank};
pub use cli::{analyze_snapshots, execute_run, RunOutcome};
pub use config::{IcKind, RunConfig};
pub use field::{PhysicalField, SpectralField};
pub use flux::{CetRemainder, FluxSample, ShellBalance};
pub use grid::Grid;
pub use ic::{ic_random_spectrum, ic_taylor_green};
pub use ledger::{CriterionReport, WindowLedger, Windowed};
pub use norm::Exponent;
pub use ops::TensorField;
pub use snapshot::{read_snapshot, write_snapshot, Snapshot};
pub use solver::{SolverState, Stepper};
pub use stats::{shell_statistics, ShellSpectrum};

use std::fmt;

/// Crate-wide error type. Variants map onto the CLI exit codes:
/// `Config` -> 1, `Numerical` -> 2, `Io`/`Format` -> 3.
#[derive(Debug)]
pub enum Error {
    /// Bad configuration, bad argument, or violated precondition that is
    /// reachable from user input.
    Config(String),
    /// The computation produced non-finite values.
    Numerical(String),
    /// Operating-system level I/O failure.
    Io { path: String, source: std::io::Error },
    /// A file was readable but malformed (bad magic, truncation, parse).
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            Error::Io { path, source } => write!(f, "i/o error on {path}: {source}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
