//! Command-line front end: `run` integrates a configured flow and writes
//! snapshots plus reports, `analyze` rebuilds the same reports offline from
//! a snapshot directory, `verify` runs the identity/oracle suite.

use std::path::{Path, PathBuf};

use crate::bank::DyadicFilterBank;
use crate::config::{IcKind, RunConfig};
use crate::flux::flux_samples;
use crate::grid::Grid;
use crate::ic::{ic_random_spectrum, ic_taylor_green};
use crate::ledger::{CriterionReport, WindowLedger};
use crate::report::write_reports;
use crate::snapshot::{read_snapshot, write_snapshot};
use crate::solver::{SolverState, Stepper};
use crate::stats::shell_statistics;
use crate::{Error, Result};

const USAGE: &str = "\
usage: lpns <subcommand> [flags]

  run     [--config FILE] [--n N --nu V --t-end T --dt H --ic KIND --seed S
           --p-min P --p-max P --b B --c-bkm C --m M --sample-every K
           --snapshot-every K --out-dir DIR ...]
          integrate a flow; write snapshots, time_series.csv, criteria.csv,
          run_meta into the output directory. Flags override config file
          keys of the same name (with underscores), which override defaults.

  analyze --snapshots DIR --out-dir DIR
          [--b B --c-bkm C --m M --p-min P --p-max P --t-ref T]
          rebuild the sample ledger from stored snapshots and write the same
          report files.

  verify  [--n 8|16|32] [--seed S]
          run the identity and oracle suite; exit 0 only if every check
          passes.

exit codes: 0 ok, 1 usage/config, 2 numerical failure, 3 I/O or format.";

/// Everything a completed run hands back to callers that drive it in-process.
pub struct RunOutcome {
    pub state: SolverState,
    pub ledger: WindowLedger,
    pub report: Option<CriterionReport>,
}

fn snapshot_path(dir: &Path, step: u64) -> PathBuf {
    dir.join(format!("snapshot_{step:08}.bin"))
}

/// Integrate per the configuration, recording statistics (and flux rows) at
/// the sample cadence and snapshots at the snapshot cadence; the final state
/// is always snapshotted. On a numerical failure the last finite state and
/// the partial reports are still written before the error surfaces.
pub fn execute_run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let grid = Grid::new(cfg.n)?;
    let bank = DyadicFilterBank::new(grid);
    let u = match cfg.ic {
        IcKind::TaylorGreen => ic_taylor_green(grid, cfg.amplitude),
        IcKind::Random => ic_random_spectrum(grid, cfg.seed, cfg.slope, cfg.k_peak),
    };
    let stepper = Stepper::new(grid, cfg.nu, cfg.dt)?;
    let mut state = SolverState::new(u);
    let mut ledger = WindowLedger::new(
        bank.q_max(),
        cfg.monitored(),
        cfg.b,
        cfg.c_bkm_resolved(),
        cfg.alpha,
        cfg.delta_bkm,
    )?;
    let exps = cfg.lp_exponents();
    let flux_ps: Vec<i64> = cfg.monitored().into_iter().filter(|&p| p >= 1).collect();

    let out = &cfg.out_dir;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out.display().to_string(), e))?;

    let record = |state: &SolverState, ledger: &mut WindowLedger| -> Result<()> {
        let spectrum = shell_statistics(&bank, &state.u, state.t, &exps)?;
        let flux = flux_samples(&bank, &state.u, state.t, &flux_ps, Some(&spectrum))?;
        ledger.push(spectrum, Some(flux))
    };

    let steps = (cfg.t_end / cfg.dt).round() as u64;
    record(&state, &mut ledger)?;
    if cfg.snapshot_every > 0 {
        write_snapshot(&snapshot_path(out, 0), &state.u, cfg.nu, state.t)?;
    }

    let mut failure: Option<Error> = None;
    for k in 0..steps {
        if let Err(e) = stepper.step(&mut state) {
            failure = Some(e);
            break;
        }
        let done = k + 1 == steps;
        if (k + 1) % cfg.sample_every == 0 || done {
            record(&state, &mut ledger)?;
        }
        if cfg.snapshot_every > 0 && ((k + 1) % cfg.snapshot_every == 0 || done) {
            write_snapshot(&snapshot_path(out, k + 1), &state.u, cfg.nu, state.t)?;
        }
    }
    if cfg.snapshot_every == 0 || failure.is_some() {
        write_snapshot(&snapshot_path(out, state.step_count), &state.u, cfg.nu, state.t)?;
    }
    let report = write_reports(out, cfg, &ledger, None)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(RunOutcome { state, ledger, report }),
    }
}

/// Rebuild a ledger by replaying stored snapshots through the same
/// statistics and flux paths a live run uses, then write the same reports.
pub fn analyze_snapshots(
    snap_dir: &Path,
    cfg: &RunConfig,
    t_ref: Option<f64>,
) -> Result<RunOutcome> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(snap_dir)
        .map_err(|e| Error::io(snap_dir.display().to_string(), e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|s| s.to_str())
                .map(|s| s.starts_with("snapshot_") && s.ends_with(".bin"))
                .unwrap_or(false)
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Config(format!(
            "no snapshot_*.bin files in {}",
            snap_dir.display()
        )));
    }

    let mut cfg = cfg.clone();
    let mut bank: Option<DyadicFilterBank> = None;
    let mut ledger: Option<WindowLedger> = None;
    let mut exps = Vec::new();
    let mut flux_ps = Vec::new();
    let mut last: Option<SolverState> = None;

    for path in &paths {
        let snap = read_snapshot(path)?;
        let mut u = snap.u;
        let n = u.grid().n();
        match &bank {
            None => {
                cfg.n = n;
                cfg.nu = snap.nu;
                if !(2.0..=3.0).contains(&cfg.m) {
                    return Err(Error::Config(format!(
                        "m must lie in [2, 3], got {}",
                        cfg.m
                    )));
                }
                let grid = Grid::new(n)?;
                let b = DyadicFilterBank::new(grid);
                ledger = Some(WindowLedger::new(
                    b.q_max(),
                    cfg.monitored(),
                    cfg.b,
                    cfg.c_bkm_resolved(),
                    cfg.alpha,
                    cfg.delta_bkm,
                )?);
                exps = cfg.lp_exponents();
                flux_ps = cfg.monitored().into_iter().filter(|&p| p >= 1).collect();
                bank = Some(b);
            }
            Some(b) if b.grid().n() != n => {
                return Err(Error::Format(format!(
                    "snapshot {} has n = {n}, expected {}",
                    path.display(),
                    b.grid().n()
                )));
            }
            Some(_) => {}
        }
        let bank = bank.as_ref().unwrap();
        // Stored states predate the flags a fresh field carries; reapply the
        // projections (idempotent on well-formed run output).
        crate::ops::dealias(&mut u);
        crate::ops::leray_project(&mut u);
        u.pin_mean_zero();

        let spectrum = shell_statistics(bank, &u, snap.t, &exps)?;
        let flux = flux_samples(bank, &u, snap.t, &flux_ps, Some(&spectrum))?;
        ledger.as_mut().unwrap().push(spectrum, Some(flux))?;
        last = Some(SolverState { u, t: snap.t, step_count: 0 });
    }

    let ledger = ledger.unwrap();
    let report = write_reports(&cfg.out_dir, &cfg, &ledger, t_ref)?;
    Ok(RunOutcome { state: last.unwrap(), ledger, report })
}

fn parse_flags(args: &[String]) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let Some(rest) = arg.strip_prefix("--") else {
            return Err(Error::Config(format!("unexpected argument `{arg}`")));
        };
        let (key, value) = match rest.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it.next().ok_or_else(|| {
                    Error::Config(format!("flag --{rest} needs a value"))
                })?;
                (rest.to_string(), v.clone())
            }
        };
        out.push((key.replace('-', "_"), value));
    }
    Ok(out)
}

fn cmd_run(args: &[String]) -> Result<()> {
    let flags = parse_flags(args)?;
    let mut cfg = match flags.iter().find(|(k, _)| k == "config") {
        Some((_, path)) => RunConfig::from_file(Path::new(path))?,
        None => RunConfig::default(),
    };
    for (key, value) in &flags {
        if key != "config" {
            cfg.set(key, value)?;
        }
    }
    let outcome = execute_run(&cfg)?;
    println!(
        "run: n = {}, nu = {}, {} steps to t = {:.6}, {} samples",
        cfg.n,
        cfg.nu,
        outcome.state.step_count,
        outcome.state.t,
        outcome.ledger.len()
    );
    println!(
        "final energy = {:.6e}, reports in {}",
        outcome.state.u.energy(),
        cfg.out_dir.display()
    );
    if let Some(report) = &outcome.report {
        if let Some(fit) = &report.alpha_fit {
            println!(
                "decay fit: alpha = {:.4} (residual {:.2e}, {} bands)",
                fit.alpha_est, fit.residual, fit.points
            );
        }
    }
    Ok(())
}

fn cmd_analyze(args: &[String]) -> Result<()> {
    let flags = parse_flags(args)?;
    let mut cfg = RunConfig::default();
    let mut snapshots: Option<PathBuf> = None;
    let mut t_ref = None;
    for (key, value) in &flags {
        match key.as_str() {
            "snapshots" => snapshots = Some(PathBuf::from(value)),
            "t_ref" => {
                t_ref = Some(value.parse::<f64>().map_err(|_| {
                    Error::Config(format!("flag --t-ref: invalid value `{value}`"))
                })?)
            }
            "out_dir" | "b" | "c_bkm" | "m" | "p_min" | "p_max" => {
                cfg.set(key, value)?
            }
            other => {
                return Err(Error::Config(format!("unknown analyze flag --{other}")));
            }
        }
    }
    let snap_dir = snapshots
        .ok_or_else(|| Error::Config("analyze needs --snapshots DIR".into()))?;
    let outcome = analyze_snapshots(&snap_dir, &cfg, t_ref)?;
    println!(
        "analyze: {} snapshots from {}, reports in {}",
        outcome.ledger.len(),
        snap_dir.display(),
        cfg.out_dir.display()
    );
    Ok(())
}

fn cmd_verify(args: &[String]) -> Result<()> {
    let flags = parse_flags(args)?;
    let mut n = 8usize;
    let mut seed = 1u64;
    for (key, value) in &flags {
        match key.as_str() {
            "n" => {
                n = value.parse().map_err(|_| {
                    Error::Config(format!("flag --n: invalid value `{value}`"))
                })?
            }
            "seed" => {
                seed = value.parse().map_err(|_| {
                    Error::Config(format!("flag --seed: invalid value `{value}`"))
                })?
            }
            other => {
                return Err(Error::Config(format!("unknown verify flag --{other}")));
            }
        }
    }
    let checks = crate::verify::run_suite(n, seed)?;
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for c in &checks {
        let status = if c.pass { "pass" } else { "FAIL" };
        println!("{status}  {:width$}  {}", c.name, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    println!("verify: {}/{} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(Error::Numerical(format!("{failed} verification checks failed")));
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => 1,
        Error::Numerical(_) => 2,
        Error::Io { .. } | Error::Format(_) => 3,
    }
}

/// Dispatch `argv[1..]`; returns the process exit code.
pub fn cli_main(args: &[String]) -> i32 {
    let Some(sub) = args.first() else {
        eprintln!("{USAGE}");
        return 1;
    };
    let rest = &args[1..];
    let res = match sub.as_str() {
        "run" => cmd_run(rest),
        "analyze" => cmd_analyze(rest),
        "verify" => cmd_verify(rest),
        "--help" | "help" => {
            println!("{USAGE}");
            Ok(())
        }
        other => {
            eprintln!("unknown subcommand `{other}`\n{USAGE}");
            return 1;
        }
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Config(_)) {
                eprintln!("{USAGE}");
            }
            exit_code(&e)
        }
    }
}
