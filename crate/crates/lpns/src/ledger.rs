//! Time-ordered sample store with windowed queries: suprema and trapezoid
//! integrals of any recorded series over the dyadic lookback windows
//! `I_p(T) = [T - 4^{-p}, T)`, and the derived regularity monitors.

use crate::bank::lambda;
use crate::flux::FluxSample;
use crate::stats::ShellSpectrum;
use crate::{Error, Result};

/// A windowed scalar plus how trustworthy the quadrature was: the number of
/// samples the window contained and whether the window was fully inside the
/// recorded span with at least four of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windowed {
    pub value: f64,
    pub samples: usize,
    pub resolved: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct IterationCheck {
    pub p: i64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub resolved: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct FluxWindowCheck {
    pub p: i64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub delta_used: f64,
    pub resolved: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct DecayFit {
    /// Negated least-squares slope of `log2 max{E_p, D_p}` against `p`.
    pub alpha_est: f64,
    /// Root-mean-square misfit of the regression, in log2 units.
    pub residual: f64,
    pub points: usize,
}

/// Everything the criteria table needs for one monitored band.
#[derive(Debug, Clone)]
pub struct CriterionRow {
    pub p: i64,
    pub e: Windowed,
    pub d: Windowed,
    /// `lambda_p * D_p(T)`.
    pub s: f64,
    pub bkm: Windowed,
    pub b1inf: Windowed,
    pub iteration: Option<IterationCheck>,
    pub flux_window: Option<FluxWindowCheck>,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub t_ref: f64,
    pub rows: Vec<CriterionRow>,
    pub alpha_fit: Option<DecayFit>,
    /// One `(exponent, series of (t, value))` entry per recorded Lebesgue
    /// exponent.
    pub leray: Vec<(f64, Vec<(f64, f64)>)>,
}

/// Append-only store of per-sample statistics (and optionally flux samples),
/// queried through shrinking dyadic windows anchored at a reference time.
pub struct WindowLedger {
    q_max: i64,
    monitored: Vec<i64>,
    b: i64,
    c_bkm: f64,
    alpha: f64,
    delta_bkm: f64,
    times: Vec<f64>,
    spectra: Vec<ShellSpectrum>,
    flux: Vec<Option<Vec<FluxSample>>>,
}

const MIN_WINDOW_SAMPLES: usize = 4;

impl WindowLedger {
    pub fn new(
        q_max: i64,
        monitored: Vec<i64>,
        b: i64,
        c_bkm: f64,
        alpha: f64,
        delta_bkm: f64,
    ) -> Result<Self> {
        if q_max < 0 {
            return Err(Error::Config(format!("q_max must be >= 0, got {q_max}")));
        }
        let mut monitored = monitored;
        monitored.sort_unstable();
        monitored.dedup();
        if monitored.is_empty() {
            return Err(Error::Config("no monitored band indices".into()));
        }
        if let (Some(&lo), Some(&hi)) = (monitored.first(), monitored.last()) {
            if lo < 0 || hi > q_max {
                return Err(Error::Config(format!(
                    "monitored bands [{lo}, {hi}] outside [0, {q_max}]"
                )));
            }
        }
        if b < 1 {
            return Err(Error::Config(format!("window offset b must be >= 1, got {b}")));
        }
        if !(c_bkm > 0.0) || !c_bkm.is_finite() {
            return Err(Error::Config(format!("c_bkm must be positive, got {c_bkm}")));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Config(format!("alpha must be positive, got {alpha}")));
        }
        if !(delta_bkm >= 0.0) || !delta_bkm.is_finite() {
            return Err(Error::Config(format!("delta_bkm must be >= 0, got {delta_bkm}")));
        }
        Ok(WindowLedger {
            q_max,
            monitored,
            b,
            c_bkm,
            alpha,
            delta_bkm,
            times: Vec::new(),
            spectra: Vec::new(),
            flux: Vec::new(),
        })
    }

    pub fn push(
        &mut self,
        spectrum: ShellSpectrum,
        flux: Option<Vec<FluxSample>>,
    ) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if spectrum.t <= last {
                return Err(Error::Config(format!(
                    "sample times must increase strictly: {} after {last}",
                    spectrum.t
                )));
            }
        }
        let shells = (self.q_max + 2) as usize;
        let bands = (self.q_max + 1) as usize;
        if spectrum.e.len() != shells
            || spectrum.band_e.len() != bands
            || spectrum.band_d.len() != bands
            || spectrum.g.len() != bands
            || spectrum.low_lp.iter().any(|row| row.len() != bands)
        {
            return Err(Error::Config(format!(
                "sample shape does not match q_max = {}",
                self.q_max
            )));
        }
        if let Some(first) = self.spectra.first() {
            if first.lp_exponents != spectrum.lp_exponents {
                return Err(Error::Config(
                    "Lebesgue exponent list changed between samples".into(),
                ));
            }
        }
        self.times.push(spectrum.t);
        self.spectra.push(spectrum);
        self.flux.push(flux);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn monitored(&self) -> &[i64] {
        &self.monitored
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spectra(&self) -> &[ShellSpectrum] {
        &self.spectra
    }

    pub fn flux_records(&self) -> &[Option<Vec<FluxSample>>] {
        &self.flux
    }

    fn span_end_checked(&self, t1: f64) -> Result<f64> {
        let last = *self.times.last().ok_or_else(|| {
            Error::Config("ledger holds no samples".into())
        })?;
        let slack = 1e-9 * (1.0 + last.abs());
        if t1 > last + slack {
            return Err(Error::Config(format!(
                "query time {t1} beyond recorded span ending at {last}"
            )));
        }
        Ok(t1.min(last))
    }

    /// Linear interpolation of a series at `t`, which must lie inside the
    /// sampled span.
    fn interpolate(&self, f: &dyn Fn(usize) -> f64, t: f64) -> f64 {
        let j = self.times.partition_point(|&x| x < t);
        if j < self.times.len() && self.times[j] == t {
            return f(j);
        }
        let (i0, i1) = (j - 1, j);
        let w = (t - self.times[i0]) / (self.times[i1] - self.times[i0]);
        f(i0) + w * (f(i1) - f(i0))
    }

    /// Max of the samples falling in `[t0, t1]`.
    fn sup_over(&self, t0: f64, t1: f64, f: &dyn Fn(usize) -> f64) -> Result<Windowed> {
        let t1 = self.span_end_checked(t1)?;
        let first = self.times[0];
        let a = self.times.partition_point(|&x| x < t0);
        let z = self.times.partition_point(|&x| x <= t1);
        let mut value = 0.0f64;
        for i in a..z {
            value = value.max(f(i));
        }
        let samples = z.saturating_sub(a);
        Ok(Windowed {
            value,
            samples,
            resolved: samples >= MIN_WINDOW_SAMPLES && t0 >= first,
        })
    }

    /// Trapezoid integral over `[t0, t1]`, linearly interpolating the edges
    /// when they fall between samples; a window reaching before the first
    /// sample is clipped and flagged unresolved.
    fn int_over(&self, t0: f64, t1: f64, f: &dyn Fn(usize) -> f64) -> Result<Windowed> {
        let t1 = self.span_end_checked(t1)?;
        let first = self.times[0];
        let covered = t0 >= first;
        if t1 <= first {
            return Ok(Windowed { value: 0.0, samples: 0, resolved: false });
        }
        let lo = t0.max(first);

        let a = self.times.partition_point(|&x| x <= lo);
        let z = self.times.partition_point(|&x| x < t1);
        let mut sum = 0.0;
        let mut prev_t = lo;
        let mut prev_v = self.interpolate(f, lo);
        for i in a..z {
            sum += 0.5 * (prev_v + f(i)) * (self.times[i] - prev_t);
            prev_t = self.times[i];
            prev_v = f(i);
        }
        let end_v = self.interpolate(f, t1);
        sum += 0.5 * (prev_v + end_v) * (t1 - prev_t);

        let ca = self.times.partition_point(|&x| x < t0);
        let cz = self.times.partition_point(|&x| x <= t1);
        let samples = cz.saturating_sub(ca);
        Ok(Windowed {
            value: sum,
            samples,
            resolved: covered && samples >= MIN_WINDOW_SAMPLES,
        })
    }

    fn check_band(&self, p: i64, lo: i64) -> Result<()> {
        if p < lo || p > self.q_max {
            return Err(Error::Config(format!(
                "band index {p} outside [{lo}, {}]",
                self.q_max
            )));
        }
        Ok(())
    }

    /// `E_p(T)`: sup of `||u_{>=p}||_2^2` over `I_p(T)`.
    pub fn window_e(&self, p: i64, t_ref: f64) -> Result<Windowed> {
        self.check_band(p, 0)?;
        let w = lambda(p).powi(-2);
        self.sup_over(t_ref - w, t_ref, &|i| self.spectra[i].band_e[p as usize])
    }

    /// `D_p(T)`: integral of `||grad u_{>=p}||_2^2` over `I_p(T)`.
    pub fn window_d(&self, p: i64, t_ref: f64) -> Result<Windowed> {
        self.check_band(p, 0)?;
        let w = lambda(p).powi(-2);
        self.int_over(t_ref - w, t_ref, &|i| self.spectra[i].band_d[p as usize])
    }

    /// Integral of `||grad u_{<=p}||_inf` over the widened window
    /// `[T - c 4^{-p}, T)`.
    pub fn bkm_window(&self, p: i64, t_ref: f64) -> Result<Windowed> {
        self.check_band(p, 0)?;
        let w = self.c_bkm * lambda(p).powi(-2);
        self.int_over(t_ref - w, t_ref, &|i| self.spectra[i].g[p as usize])
    }

    /// Sup over `I_p(T)` of `max_{|r-p| <= b+1} lambda_r^{-1} ||u_r||_inf`,
    /// the Besov-type magnitude of the widened shell packet at `p`.
    pub fn b1inf_window(&self, p: i64, t_ref: f64) -> Result<Windowed> {
        self.check_band(p, 0)?;
        let w = lambda(p).powi(-2);
        let lo = (p - self.b - 1).max(-1);
        let hi = (p + self.b + 1).min(self.q_max);
        self.sup_over(t_ref - w, t_ref, &|i| {
            let s = &self.spectra[i];
            let mut best = 0.0f64;
            for r in lo..=hi {
                best = best.max(s.shell_m[(r + 1) as usize]);
            }
            best
        })
    }

    /// `s_p = lambda_p D_p(T)` for every monitored band.
    pub fn dissipation_seq(&self, t_ref: f64) -> Result<Vec<(i64, f64, Windowed)>> {
        let mut out = Vec::with_capacity(self.monitored.len());
        for &p in &self.monitored {
            let d = self.window_d(p, t_ref)?;
            out.push((p, lambda(p) * d.value, d));
        }
        Ok(out)
    }

    /// Absolute high-flux series for band `p`; errors if any sample lacks a
    /// recorded flux row at `p`.
    fn flux_abs_series(&self, p: i64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.flux.len());
        for (rec, &t) in self.flux.iter().zip(&self.times) {
            let row = rec
                .as_ref()
                .and_then(|v| v.iter().find(|s| s.p == p))
                .ok_or_else(|| {
                    Error::Config(format!("no flux recorded for band {p} at t = {t}"))
                })?;
            out.push(row.pi_high.abs());
        }
        Ok(out)
    }

    /// Discrete form of the window iteration inequality:
    /// `max{E_p, D_p} <= lambda_b^{-alpha} D_{p-b}(T) + int_{I_{p-b}} |Pi_{>=p}|`.
    pub fn iteration_check(&self, p: i64, t_ref: f64, alpha: f64) -> Result<IterationCheck> {
        self.check_band(p, self.b)?;
        let e = self.window_e(p, t_ref)?;
        let d = self.window_d(p, t_ref)?;
        let d_low = self.window_d(p - self.b, t_ref)?;
        let series = self.flux_abs_series(p)?;
        let w = lambda(p - self.b).powi(-2);
        let pi = self.int_over(t_ref - w, t_ref, &|i| series[i])?;

        let lhs = e.value.max(d.value);
        let rhs = lambda(self.b).powf(-alpha) * d_low.value + pi.value;
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Ok(IterationCheck {
            p,
            lhs,
            rhs,
            ratio,
            resolved: e.resolved && d.resolved && d_low.resolved && pi.resolved,
        })
    }

    /// Discrete form of the flux-window estimate: the same flux integral
    /// against `delta * sum_{r <= p-b} E_r(T) 4^{-(p-b-r)}`, where `delta` is
    /// the larger of twice the supplied threshold and the measured low-band
    /// gradient integral over `I_{p-b}` (the estimate's hypothesis).
    pub fn flux_window_check(
        &self,
        p: i64,
        t_ref: f64,
        delta_hyp: f64,
    ) -> Result<FluxWindowCheck> {
        self.check_band(p, self.b)?;
        let series = self.flux_abs_series(p)?;
        let w = lambda(p - self.b).powi(-2);
        let lhs = self.int_over(t_ref - w, t_ref, &|i| series[i])?;
        let g = self.int_over(t_ref - w, t_ref, &|i| self.spectra[i].g[p as usize])?;
        let delta_used = (2.0 * delta_hyp).max(g.value);

        let mut stack = 0.0;
        let mut resolved = lhs.resolved && g.resolved;
        for r in 0..=(p - self.b) {
            let e = self.window_e(r, t_ref)?;
            stack += e.value * lambda(p - self.b - r).powi(-2);
            resolved = resolved && e.resolved;
        }
        let rhs = delta_used * stack;
        let ratio = if rhs > 0.0 {
            lhs.value / rhs
        } else if lhs.value == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Ok(FluxWindowCheck { p, lhs: lhs.value, rhs, ratio, delta_used, resolved })
    }

    /// Lebesgue-norm blowup monitor: at each sample `t < T_ref` the band
    /// index follows the dyadic staircase `q(t) = floor(-log2(T_ref - t)/2)`
    /// clamped to `[0, q_max]`, and the value is
    /// `||u_{<=q(t)}||_m (T_ref - t)^{(m-3)/(2m)}`.
    pub fn leray_monitor(&self, t_ref: f64, m: f64) -> Result<Vec<(f64, f64)>> {
        let first = self.spectra.first().ok_or_else(|| {
            Error::Config("ledger holds no samples".into())
        })?;
        let mi = first
            .lp_exponents
            .iter()
            .position(|&x| (x - m).abs() <= 1e-12)
            .ok_or_else(|| {
                Error::Config(format!(
                    "Lebesgue exponent {m} was not recorded (have {:?})",
                    first.lp_exponents
                ))
            })?;
        let expo = (m - 3.0) / (2.0 * m);
        let mut out = Vec::new();
        for (i, &t) in self.times.iter().enumerate() {
            let gap = t_ref - t;
            if gap <= 0.0 {
                continue;
            }
            let q = (-0.5 * gap.log2()).floor().clamp(0.0, self.q_max as f64) as usize;
            out.push((t, self.spectra[i].low_lp[mi][q] * gap.powf(expo)));
        }
        Ok(out)
    }

    /// Least-squares decay exponent of `log2 max{E_p, D_p}` over the
    /// monitored bands that resolved with a positive value.
    pub fn decay_fit(&self, t_ref: f64) -> Result<DecayFit> {
        let mut pts = Vec::new();
        for &p in &self.monitored {
            let e = self.window_e(p, t_ref)?;
            let d = self.window_d(p, t_ref)?;
            let v = e.value.max(d.value);
            if e.resolved && d.resolved && v > 0.0 {
                pts.push((p as f64, v.log2()));
            }
        }
        if pts.len() < 3 {
            return Err(Error::Config(format!(
                "decay fit needs at least 3 resolved positive bands, found {}",
                pts.len()
            )));
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let mut ss = 0.0;
        for &(x, y) in &pts {
            let r = y - (slope * x + intercept);
            ss += r * r;
        }
        Ok(DecayFit {
            alpha_est: -slope,
            residual: (ss / n).sqrt(),
            points: pts.len(),
        })
    }

    /// The full criteria table at `T`: windowed energies, dissipations and
    /// monitors per monitored band, the iteration and flux-window checks
    /// where `p >= b`, the decay fit, and the Lebesgue monitor series for
    /// every recorded exponent.
    pub fn criterion_report(&self, t_ref: f64) -> Result<CriterionReport> {
        let mut rows = Vec::with_capacity(self.monitored.len());
        for &p in &self.monitored {
            let e = self.window_e(p, t_ref)?;
            let d = self.window_d(p, t_ref)?;
            let bkm = self.bkm_window(p, t_ref)?;
            let b1inf = self.b1inf_window(p, t_ref)?;
            // Both checks need flux rows at p; ledgers built without them
            // (statistics-only replays) simply leave these columns empty.
            let iteration = if p >= self.b {
                self.iteration_check(p, t_ref, self.alpha).ok()
            } else {
                None
            };
            let flux_window = if p >= self.b {
                self.flux_window_check(p, t_ref, self.delta_bkm).ok()
            } else {
                None
            };
            rows.push(CriterionRow {
                p,
                e,
                d,
                s: lambda(p) * d.value,
                bkm,
                b1inf,
                iteration,
                flux_window,
            });
        }
        let alpha_fit = self.decay_fit(t_ref).ok();
        let exps = self
            .spectra
            .first()
            .map(|s| s.lp_exponents.clone())
            .unwrap_or_default();
        let mut leray = Vec::new();
        for &m in &exps {
            leray.push((m, self.leray_monitor(t_ref, m)?));
        }
        Ok(CriterionReport { t_ref, rows, alpha_fit, leray })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blank(t: f64, q_max: i64, exps: &[f64]) -> ShellSpectrum {
        let shells = (q_max + 2) as usize;
        let bands = (q_max + 1) as usize;
        ShellSpectrum {
            t,
            e: vec![0.0; shells],
            d: vec![0.0; shells],
            shell_m: vec![0.0; shells],
            band_e: vec![0.0; bands],
            band_d: vec![0.0; bands],
            g: vec![0.0; bands],
            lp_exponents: exps.to_vec(),
            low_lp: vec![vec![0.0; bands]; exps.len()],
            energy: 0.0,
            enstrophy: 0.0,
            u_inf: 0.0,
            grad_inf: 0.0,
        }
    }

    fn ledger(q_max: i64, monitored: &[i64], b: i64) -> WindowLedger {
        WindowLedger::new(q_max, monitored.to_vec(), b, 1.0, 1.5, 0.0).unwrap()
    }

    fn fill(
        led: &mut WindowLedger,
        q_max: i64,
        steps: usize,
        dt: f64,
        mut f: impl FnMut(&mut ShellSpectrum),
    ) {
        for k in 0..=steps {
            let mut s = blank(k as f64 * dt, q_max, &[2.0]);
            f(&mut s);
            led.push(s, None).unwrap();
        }
    }

    #[test]
    fn constant_series_windows_are_exact() {
        let q_max = 5;
        let mut led = ledger(q_max, &[3], 1);
        fill(&mut led, q_max, 512, 1.0 / 512.0, |s| {
            s.band_e[3] = 7.0;
            s.band_d[3] = 3.0;
            s.g[3] = 2.0;
        });
        let e = led.window_e(3, 1.0).unwrap();
        assert_eq!(e.value, 7.0);
        assert!(e.resolved);
        assert_eq!(e.samples, 9); // window 1/64 at cadence 1/512, both edges

        let d = led.window_d(3, 1.0).unwrap();
        assert!((d.value - 3.0 / 64.0).abs() < 1e-15);
        let bkm = led.bkm_window(3, 1.0).unwrap();
        assert!((bkm.value - 2.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_integral_matches_the_closed_form() {
        let q_max = 5;
        for (steps, tol) in [(512usize, 1.5e-6), (1024, 0.4e-6)] {
            let mut led = ledger(q_max, &[3], 1);
            fill(&mut led, q_max, steps, 1.0 / steps as f64, |s| {
                s.band_d[3] = (-2.0 * s.t).exp();
            });
            let exact = ((-2.0 * (1.0 - 1.0 / 64.0f64)).exp() - (-2.0f64).exp()) / 2.0;
            let got = led.window_d(3, 1.0).unwrap();
            let rel = (got.value - exact).abs() / exact;
            assert!(rel < tol, "steps {steps}: rel {rel}");
        }
    }

    #[test]
    fn edge_interpolation_is_exact_for_linear_series() {
        // Cadence chosen so the window edges fall strictly between samples;
        // trapezoid plus linear edge interpolation integrates an affine
        // series exactly.
        let q_max = 4;
        let mut led = ledger(q_max, &[2], 1);
        fill(&mut led, q_max, 300, 0.013, |s| {
            s.band_d[2] = 3.0 * s.t + 1.0;
        });
        let t_ref = 3.4567;
        let w = 1.0 / 16.0;
        let exact = {
            let (a, b) = (t_ref - w, t_ref);
            1.5 * (b * b - a * a) + (b - a)
        };
        let got = led.window_d(2, t_ref).unwrap();
        assert!((got.value - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn decaying_band_windows_match_the_analytic_values() {
        let q_max = 5;
        let pi3 = std::f64::consts::PI.powi(3);
        let mut led = ledger(q_max, &[0], 1);
        fill(&mut led, q_max, 512, 1.0 / 512.0, |s| {
            s.band_e[0] = 4.0 * pi3 * (-4.0 * s.t).exp();
            s.band_d[0] = 8.0 * pi3 * (-4.0 * s.t).exp();
        });
        // Window I_0(1) = [0, 1): the sup sits at the left edge, and the
        // dissipation integral has a closed form.
        let e = led.window_e(0, 1.0).unwrap();
        assert!((e.value - 4.0 * pi3).abs() < 1e-12 * e.value);
        let d = led.window_d(0, 1.0).unwrap();
        let exact = 2.0 * pi3 * (1.0 - (-4.0f64).exp());
        assert!((d.value - exact).abs() < 1e-5 * exact);
    }

    #[test]
    fn leray_staircase_steps_at_dyadic_gaps() {
        let q_max = 4;
        let mut led = ledger(q_max, &[1], 1);
        // Dyadic cadence keeps every sample time and gap exact, so the
        // staircase boundaries are unambiguous. low_lp[0][q] = q + 10 tags
        // which band the monitor read.
        fill(&mut led, q_max, 1024, 1.0 / 1024.0, |s| {
            for q in 0..=q_max as usize {
                s.low_lp[0][q] = q as f64 + 10.0;
            }
        });
        let series = led.leray_monitor(1.0, 2.0).unwrap();
        let at = |t: f64| -> f64 {
            series
                .iter()
                .find(|(ts, _)| *ts == t)
                .expect("sampled time")
                .1
        };
        // value = (q + 10) * gap^{-1/4} at m = 2.
        let check = |t: f64, q: f64| {
            let gap: f64 = 1.0 - t;
            let expect = (q + 10.0) * gap.powf(-0.25);
            assert!((at(t) - expect).abs() < 1e-12 * expect, "t = {t}");
        };
        check(0.5, 0.0); // gap 1/2 -> q = 0
        check(0.75, 1.0); // gap exactly 1/4: lands on the step, q = 1
        check(0.8125, 1.0); // gap 3/16 -> q = 1
        check(0.9375, 2.0); // gap 1/16: next step, q = 2
        check(0.96875, 2.0); // gap 1/32 -> q = 2
        // gap 1/1024 would ask for band 5; clamped at q_max = 4.
        check(1.0 - 1.0 / 1024.0, 4.0);
        assert!(series.iter().all(|&(t, _)| t < 1.0));

        // m = 3 kills the gap factor entirely.
        let mut led3 = ledger(q_max, &[1], 1);
        for k in 0..=10 {
            let mut s = blank(k as f64 * 0.05, q_max, &[3.0]);
            for q in 0..=q_max as usize {
                s.low_lp[0][q] = 42.0;
            }
            led3.push(s, None).unwrap();
        }
        for (_, v) in led3.leray_monitor(0.9, 3.0).unwrap() {
            assert_eq!(v, 42.0);
        }
    }

    #[test]
    fn b1inf_collapses_to_the_occupied_shell() {
        let q_max = 8;
        let mut led = ledger(q_max, &[2, 6], 2);
        fill(&mut led, q_max, 600, 1e-3, |s| {
            s.shell_m[3] = 5.0; // shell r = 2 only
        });
        let hit = led.b1inf_window(2, 0.6).unwrap();
        assert_eq!(hit.value, 5.0);
        assert!(hit.resolved);
        // p = 6 reaches shells [3, 9]: empty.
        let miss = led.b1inf_window(6, 0.6).unwrap();
        assert_eq!(miss.value, 0.0);
    }

    #[test]
    fn frozen_series_checks_have_hand_computable_values() {
        let q_max = 6;
        let b = 2;
        let mut led = WindowLedger::new(q_max, vec![2, 3, 4], b, 4.0, 1.5, 0.0).unwrap();
        // band_d[p] = 4^p * 2^{-1.5 p}: windowed over I_p this gives
        // D_p = 2^{-1.5 p} exactly; band_e kept smaller so D_p wins the max.
        for k in 0..=4096 {
            let mut s = blank(k as f64 / 4096.0, q_max, &[2.0]);
            for p in 0..=q_max {
                s.band_d[p as usize] = lambda(p).powi(2) * lambda(p).powf(-1.5);
                s.band_e[p as usize] = 0.5 * lambda(p).powf(-1.5);
            }
            let flux: Vec<FluxSample> = [2i64, 3, 4]
                .iter()
                .map(|&p| FluxSample {
                    t: s.t,
                    p,
                    pi_high: 0.0,
                    pi_low: 0.0,
                    cross: 0.0,
                    identity_residual: 0.0,
                    bound_lhs: 0.0,
                    bound_rhs: 0.0,
                    ratio: 0.0,
                })
                .collect();
            led.push(s, Some(flux)).unwrap();
        }
        let t = 1.0;
        for p in [2i64, 3, 4] {
            let d = led.window_d(p, t).unwrap();
            let expect = lambda(p).powf(-1.5);
            assert!((d.value - expect).abs() < 1e-12 * expect, "p = {p}");
        }
        // Zero flux makes the iteration rhs exactly the damped coarse term.
        let it = led.iteration_check(4, t, 1.5).unwrap();
        let expect_rhs = lambda(b).powf(-1.5) * lambda(2).powf(-1.5);
        assert!((it.rhs - expect_rhs).abs() < 1e-12 * expect_rhs);
        assert!((it.lhs - lambda(4).powf(-1.5)).abs() < 1e-12 * it.lhs);
        assert!(it.resolved);
        // lhs = 2^{-6}, rhs = 2^{-3} * 2^{-3}: the discrete inequality is
        // sharp with ratio exactly one here.
        assert!((it.ratio - 1.0).abs() < 1e-9);

        let fit = led.decay_fit(t).unwrap();
        assert!((fit.alpha_est - 1.5).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
        assert_eq!(fit.points, 3);

        // Flux-window check: lhs = 0 (zero flux), rhs > 0 from the measured
        // gradient hypothesis... with g = 0 too the rhs collapses and the
        // ratio is defined as zero.
        let fw = led.flux_window_check(4, t, 0.0).unwrap();
        assert_eq!(fw.lhs, 0.0);
        assert_eq!(fw.ratio, 0.0);

        let report = led.criterion_report(t).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.alpha_fit.is_some());
        // E_p, D_p, s_p all non-increasing across the monitored bands.
        for w in report.rows.windows(2) {
            assert!(w[1].e.value <= w[0].e.value + 1e-15);
            assert!(w[1].d.value <= w[0].d.value + 1e-15);
            assert!(w[1].s <= w[0].s + 1e-15);
        }
    }

    #[test]
    fn window_nesting_bounds_the_fine_dissipation() {
        let q_max = 5;
        let mut led = ledger(q_max, &[3], 2);
        fill(&mut led, q_max, 2048, 1.0 / 2048.0, |s| {
            s.band_d[3] = 1.0 + (7.0 * s.t).sin().abs();
            s.band_d[1] = 2.0 + (7.0 * s.t).sin().abs();
        });
        // I_3 is contained in I_1 and the integrand at the coarser band
        // dominates, so the nested integral dominates too.
        let fine = led.window_d(3, 1.0).unwrap();
        let coarse = led.window_d(1, 1.0).unwrap();
        assert!(fine.value <= coarse.value);
    }

    #[test]
    fn unresolved_windows_are_flagged_and_bad_queries_rejected() {
        let q_max = 5;
        let mut led = ledger(q_max, &[0, 3], 1);
        fill(&mut led, q_max, 20, 1e-3, |s| {
            s.band_e[0] = 1.0;
        });
        // Span is [0, 0.02]: a band-0 window [t-1, t] reaches far earlier.
        let e = led.window_e(0, 0.02).unwrap();
        assert!(!e.resolved);
        assert_eq!(e.value, 1.0);
        // Beyond the recorded span: hard error.
        assert!(led.window_e(0, 0.5).is_err());
        assert!(led.window_e(99, 0.02).is_err());
        // Flux was never recorded.
        assert!(led.iteration_check(3, 0.02, 1.5).is_err());

        let mut empty = ledger(q_max, &[0], 1);
        assert!(empty.window_e(0, 0.0).is_err());
        assert!(empty.leray_monitor(1.0, 2.0).is_err());
        let s = blank(0.5, q_max, &[2.0]);
        empty.push(s, None).unwrap();
        let again = blank(0.5, q_max, &[2.0]);
        assert!(empty.push(again, None).is_err());
        let wrong = blank(0.7, 3, &[2.0]);
        assert!(empty.push(wrong, None).is_err());
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(WindowLedger::new(5, vec![], 1, 1.0, 1.5, 0.0).is_err());
        assert!(WindowLedger::new(5, vec![9], 1, 1.0, 1.5, 0.0).is_err());
        assert!(WindowLedger::new(5, vec![1], 0, 1.0, 1.5, 0.0).is_err());
        assert!(WindowLedger::new(5, vec![1], 1, 0.0, 1.5, 0.0).is_err());
        assert!(WindowLedger::new(5, vec![1], 1, 1.0, -1.0, 0.0).is_err());
        assert!(WindowLedger::new(5, vec![1], 1, 1.0, 1.5, f64::NAN).is_err());
    }
}
