//! Run configuration: a flat `key = value` text format, CLI overrides, and
//! validation. Precedence is flag > file > default.

use std::fmt;
use std::path::PathBuf;

use crate::bank::lambda;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcKind {
    TaylorGreen,
    Random,
}

impl IcKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "taylor_green" => Ok(IcKind::TaylorGreen),
            "random" => Ok(IcKind::Random),
            other => Err(Error::Config(format!(
                "ic must be `taylor_green` or `random`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for IcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IcKind::TaylorGreen => "taylor_green",
            IcKind::Random => "random",
        })
    }
}

/// Full description of a run. `p_max` and `c_bkm` stay unset until queried so
/// their defaults can depend on `n` and `b`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub nu: f64,
    pub t_end: f64,
    pub dt: f64,
    pub ic: IcKind,
    pub amplitude: f64,
    pub slope: f64,
    pub k_peak: f64,
    pub seed: u64,
    pub p_min: i64,
    pub p_max: Option<i64>,
    pub b: i64,
    pub c_bkm: Option<f64>,
    pub m: f64,
    pub alpha: f64,
    pub delta_bkm: f64,
    pub sample_every: u64,
    /// Snapshot cadence in steps; 0 writes only the final state.
    pub snapshot_every: u64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 32,
            nu: 1.0,
            t_end: 1.0,
            dt: 1e-3,
            ic: IcKind::TaylorGreen,
            amplitude: 1.0,
            slope: -5.0 / 3.0,
            k_peak: 4.0,
            seed: 1,
            p_min: 0,
            p_max: None,
            b: 2,
            c_bkm: None,
            m: 2.0,
            alpha: 1.5,
            delta_bkm: 0.01,
            sample_every: 1,
            snapshot_every: 0,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn q_max(&self) -> i64 {
        self.n.trailing_zeros() as i64
    }

    /// Monitored band ceiling; defaults to `min(3, q_max)`.
    pub fn p_max_resolved(&self) -> i64 {
        self.p_max.unwrap_or_else(|| 3.min(self.q_max()))
    }

    /// Width multiplier of the gradient lookback window; defaults to
    /// `lambda_b^2`, wide enough to contain the coarser comparison window.
    pub fn c_bkm_resolved(&self) -> f64 {
        self.c_bkm.unwrap_or_else(|| lambda(self.b).powi(2))
    }

    pub fn monitored(&self) -> Vec<i64> {
        (self.p_min..=self.p_max_resolved()).collect()
    }

    /// Lebesgue exponents recorded per sample: always 2, 2.5, 3 plus the
    /// configured `m`.
    pub fn lp_exponents(&self) -> Vec<f64> {
        let mut exps = vec![2.0, 2.5, 3.0];
        if !exps.iter().any(|&x| (x - self.m).abs() <= 1e-12) {
            exps.push(self.m);
            exps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        exps
    }

    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.trim().parse().map_err(|_| {
                Error::Config(format!("config key `{key}`: invalid value `{value}`"))
            })
        }
        let value = value.trim();
        match key {
            "n" => self.n = num(key, value)?,
            "nu" => self.nu = num(key, value)?,
            "t_end" => self.t_end = num(key, value)?,
            "dt" => self.dt = num(key, value)?,
            "ic" => self.ic = IcKind::parse(value)?,
            "amplitude" => self.amplitude = num(key, value)?,
            "slope" => self.slope = num(key, value)?,
            "k_peak" => self.k_peak = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "p_min" => self.p_min = num(key, value)?,
            "p_max" => self.p_max = Some(num(key, value)?),
            "b" => self.b = num(key, value)?,
            "c_bkm" => self.c_bkm = Some(num(key, value)?),
            "m" => self.m = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "delta_bkm" => self.delta_bkm = num(key, value)?,
            "sample_every" => self.sample_every = num(key, value)?,
            "snapshot_every" => self.snapshot_every = num(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            other => {
                return Err(Error::Config(format!("unknown config key `{other}`")));
            }
        }
        Ok(())
    }

    /// Apply a whole config file body. Lines are `key = value`; `#` starts a
    /// comment; blank lines are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("config line {}: expected `key = value`", idx + 1))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut cfg = RunConfig::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        crate::grid::Grid::new(self.n)?;
        let q_max = self.q_max();
        if !self.nu.is_finite() || self.nu < 0.0 {
            return Err(Error::Config(format!("nu must be >= 0, got {}", self.nu)));
        }
        if !self.t_end.is_finite() || self.t_end < 0.0 {
            return Err(Error::Config(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !self.amplitude.is_finite() || self.amplitude <= 0.0 {
            return Err(Error::Config(format!(
                "amplitude must be positive, got {}",
                self.amplitude
            )));
        }
        if !self.slope.is_finite() {
            return Err(Error::Config("slope must be finite".into()));
        }
        if !self.k_peak.is_finite()
            || self.k_peak <= 0.0
            || self.k_peak >= self.n as f64 / 3.0
        {
            return Err(Error::Config(format!(
                "k_peak must lie in (0, n/3) = (0, {}), got {}",
                self.n as f64 / 3.0,
                self.k_peak
            )));
        }
        let p_max = self.p_max_resolved();
        if self.p_min < 0 || self.p_min > p_max || p_max > q_max {
            return Err(Error::Config(format!(
                "band range [{}, {p_max}] outside [0, {q_max}]",
                self.p_min
            )));
        }
        if self.b < 1 {
            return Err(Error::Config(format!("b must be >= 1, got {}", self.b)));
        }
        let c_bkm = self.c_bkm_resolved();
        if !c_bkm.is_finite() || c_bkm <= 0.0 {
            return Err(Error::Config(format!("c_bkm must be positive, got {c_bkm}")));
        }
        if !self.m.is_finite() || !(2.0..=3.0).contains(&self.m) {
            return Err(Error::Config(format!(
                "m must lie in [2, 3], got {}",
                self.m
            )));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::Config(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !self.delta_bkm.is_finite() || self.delta_bkm < 0.0 {
            return Err(Error::Config(format!(
                "delta_bkm must be >= 0, got {}",
                self.delta_bkm
            )));
        }
        if self.sample_every == 0 {
            return Err(Error::Config("sample_every must be >= 1".into()));
        }
        // The finest monitored window must hold several samples or every
        // windowed quantity comes back unresolved.
        let sample_dt = self.dt * self.sample_every as f64;
        let finest = lambda(p_max).powi(-2) / 8.0;
        if sample_dt > finest * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "sampling interval {sample_dt} too coarse for band {p_max}: \
                 need <= {finest}"
            )));
        }
        Ok(())
    }

    /// Resolved settings as ordered pairs, for the run_meta echo.
    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("n".into(), self.n.to_string()),
            ("nu".into(), self.nu.to_string()),
            ("t_end".into(), self.t_end.to_string()),
            ("dt".into(), self.dt.to_string()),
            ("ic".into(), self.ic.to_string()),
            ("amplitude".into(), self.amplitude.to_string()),
            ("slope".into(), self.slope.to_string()),
            ("k_peak".into(), self.k_peak.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("p_min".into(), self.p_min.to_string()),
            ("p_max".into(), self.p_max_resolved().to_string()),
            ("b".into(), self.b.to_string()),
            ("c_bkm".into(), self.c_bkm_resolved().to_string()),
            ("m".into(), self.m.to_string()),
            ("alpha".into(), self.alpha.to_string()),
            ("delta_bkm".into(), self.delta_bkm.to_string()),
            ("sample_every".into(), self.sample_every.to_string()),
            ("snapshot_every".into(), self.snapshot_every.to_string()),
            ("out_dir".into(), self.out_dir.display().to_string()),
        ]
    }
}
