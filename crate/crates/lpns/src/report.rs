//! Report files: per-sample series as `time_series.csv`, the windowed
//! criteria table as `criteria.csv`, and a `run_meta` echo of the resolved
//! configuration. All numeric cells carry 17 significant digits so a re-parse
//! recovers the exact float.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::RunConfig;
use crate::ledger::{CriterionReport, WindowLedger};
use crate::{Error, Result};

fn cell(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per recorded sample: time, the global norms, then five columns per
/// monitored band — band energy and dissipation, the low-band gradient sup,
/// the instantaneous Besov-type packet magnitude, and the low-band Lebesgue
/// norm at exponent `m`.
pub fn time_series_csv(ledger: &WindowLedger, m: f64) -> Result<String> {
    let mut out = String::from("t,energy,enstrophy,u_linf,grad_linf");
    for &p in ledger.monitored() {
        write!(
            out,
            ",band_e_{p},band_d_{p},g_{p},b1inf_{p},leray_m_{p}"
        )
        .unwrap();
    }
    out.push('\n');

    let mi = match ledger.spectra().first() {
        Some(first) => first
            .lp_exponents
            .iter()
            .position(|&x| (x - m).abs() <= 1e-12)
            .ok_or_else(|| {
                Error::Config(format!(
                    "Lebesgue exponent {m} was not recorded (have {:?})",
                    first.lp_exponents
                ))
            })?,
        None => return Ok(out),
    };

    let b = ledger.b();
    let q_max = ledger.q_max();
    for s in ledger.spectra() {
        write!(
            out,
            "{},{},{},{},{}",
            cell(s.t),
            cell(s.energy),
            cell(s.enstrophy),
            cell(s.u_inf),
            cell(s.grad_inf)
        )
        .unwrap();
        for &p in ledger.monitored() {
            let lo = (p - b - 1).max(-1);
            let hi = (p + b + 1).min(q_max);
            let mut packet = 0.0f64;
            for r in lo..=hi {
                packet = packet.max(s.shell_m[(r + 1) as usize]);
            }
            write!(
                out,
                ",{},{},{},{},{}",
                cell(s.band_e[p as usize]),
                cell(s.band_d[p as usize]),
                cell(s.g[p as usize]),
                cell(packet),
                cell(s.low_lp[mi][p as usize])
            )
            .unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// The criteria table at the report's reference time, one row per monitored
/// band plus an `alpha_fit` footer. `None` (an empty ledger) yields the
/// header alone.
pub fn criteria_csv(report: Option<&CriterionReport>) -> String {
    let mut out = String::from(
        "p,E_p,D_p,s_p,bkm_p,b1inf_p,flux_window_lhs,flux_window_rhs,\
         iteration_lhs,iteration_rhs,resolved\n",
    );
    let Some(report) = report else {
        return out;
    };
    for row in &report.rows {
        let (fw_lhs, fw_rhs, fw_ok) = match &row.flux_window {
            Some(f) => (f.lhs, f.rhs, f.resolved),
            None => (f64::NAN, f64::NAN, true),
        };
        let (it_lhs, it_rhs, it_ok) = match &row.iteration {
            Some(i) => (i.lhs, i.rhs, i.resolved),
            None => (f64::NAN, f64::NAN, true),
        };
        let resolved = row.e.resolved
            && row.d.resolved
            && row.bkm.resolved
            && row.b1inf.resolved
            && fw_ok
            && it_ok;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            row.p,
            cell(row.e.value),
            cell(row.d.value),
            cell(row.s),
            cell(row.bkm.value),
            cell(row.b1inf.value),
            cell(fw_lhs),
            cell(fw_rhs),
            cell(it_lhs),
            cell(it_rhs),
            u8::from(resolved)
        )
        .unwrap();
    }
    match &report.alpha_fit {
        Some(fit) => {
            writeln!(out, "alpha_fit,{},{}", cell(fit.alpha_est), cell(fit.residual))
                .unwrap()
        }
        None => writeln!(out, "alpha_fit,{},{}", cell(f64::NAN), cell(f64::NAN)).unwrap(),
    }
    out
}

/// Key = value echo of the resolved configuration plus provenance fields.
/// Deterministic: writing it twice for the same run is byte-identical.
pub fn run_meta_text(cfg: &RunConfig, ledger: &WindowLedger) -> String {
    let mut out = String::new();
    for (k, v) in cfg.echo() {
        writeln!(out, "{k} = {v}").unwrap();
    }
    writeln!(out, "rng = chacha12").unwrap();
    writeln!(out, "snapshot_format_version = 1").unwrap();
    writeln!(out, "version = {}", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(out, "samples = {}", ledger.len()).unwrap();
    if let Some(&t) = ledger.times().last() {
        writeln!(out, "t_final = {t}").unwrap();
    }
    out
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Emit all three report files into `out_dir`, creating it if needed, and
/// hand back the criteria table (when the ledger held any samples). The
/// criteria reference time defaults to the final sample.
pub fn write_reports(
    out_dir: &Path,
    cfg: &RunConfig,
    ledger: &WindowLedger,
    t_ref: Option<f64>,
) -> Result<Option<CriterionReport>> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::io(out_dir.display().to_string(), e))?;
    let report = if ledger.is_empty() {
        None
    } else {
        let t_ref = t_ref.unwrap_or_else(|| *ledger.times().last().unwrap());
        Some(ledger.criterion_report(t_ref)?)
    };
    write_file(out_dir, "time_series.csv", &time_series_csv(ledger, cfg.m)?)?;
    write_file(out_dir, "criteria.csv", &criteria_csv(report.as_ref()))?;
    write_file(out_dir, "run_meta", &run_meta_text(cfg, ledger))?;
    Ok(report)
}
