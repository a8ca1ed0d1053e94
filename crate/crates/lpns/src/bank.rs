//! Dyadic Littlewood-Paley machinery: the smooth cutoff and annular symbols,
//! shell / band / windowed projections, Besov sup-norms, and Bernstein-quotient
//! measurement.
//!
//! The cutoff is `chi(xi) = 1` for `xi <= 3/4`, `0` for `xi >= 1`, glued by a
//! quintic smoothstep in between; the annular profile is
//! `phi(xi) = chi(xi/2) - chi(xi)`. Shell q carries the symbol
//! `phi(|k| / 2^q)` against the Euclidean wavevector length, and the block
//! q = -1 carries `chi(|k|)` (only the pinned mean mode, in practice).
//!
//! Shell indices run up to `q_max = log2(n)`: the corner modes reach
//! `|k| = sqrt(3) n / 2 ~ 0.87 n`, and `q_max = log2(n)` is the smallest top
//! shell for which the telescoped partition of unity closes to exactly 1 on
//! every representable mode.

use crate::field::SpectralField;
use crate::grid::Grid;
use crate::norm::{norm_lp, Exponent};
use crate::ops::apply_multiplier;
use crate::{Error, Result};

/// `lambda_q = 2^q`.
pub fn lambda(q: i64) -> f64 {
    (2.0f64).powi(q as i32)
}

fn smoothstep(t: f64) -> f64 {
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

/// Smooth low-pass cutoff profile.
pub fn chi(xi: f64) -> f64 {
    if xi <= 0.75 {
        1.0
    } else if xi >= 1.0 {
        0.0
    } else {
        1.0 - smoothstep(4.0 * (xi - 0.75))
    }
}

/// Annular profile `chi(xi/2) - chi(xi)`, supported on `(3/4, 2)`.
pub fn phi(xi: f64) -> f64 {
    chi(0.5 * xi) - chi(xi)
}

/// Which side of a dyadic frequency split to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandSide {
    Low,
    High,
}

/// Immutable filter bank for one grid, with every shell symbol tabulated
/// eagerly per mode.
pub struct DyadicFilterBank {
    grid: Grid,
    q_max: i64,
    k_abs: Vec<f64>,
    shells: Vec<Vec<f64>>,
}

impl DyadicFilterBank {
    /// Evaluates one dyadic symbol: `chi(xi)` for `q = -1`, `phi(xi / 2^q)`
    /// for `q >= 0`.
    pub fn dyadic_symbol(q: i64, xi: f64) -> Result<f64> {
        if q < -1 {
            return Err(Error::Config(format!("shell index must be >= -1, got {q}")));
        }
        if !(xi >= 0.0) {
            return Err(Error::Config(format!(
                "symbol argument must be >= 0, got {xi}"
            )));
        }
        Ok(if q == -1 { chi(xi) } else { phi(xi / lambda(q)) })
    }

    pub fn new(grid: Grid) -> Self {
        let q_max = grid.n().trailing_zeros() as i64;
        let k_abs: Vec<f64> = grid.k_squared_table().iter().map(|&s| s.sqrt()).collect();
        let shells = (-1..=q_max)
            .map(|q| {
                k_abs
                    .iter()
                    .map(|&r| Self::dyadic_symbol(q, r).expect("valid shell index"))
                    .collect()
            })
            .collect();
        DyadicFilterBank {
            grid,
            q_max,
            k_abs,
            shells,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Largest shell index carrying any representable mode.
    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// Euclidean `|k|` per mode index.
    pub fn k_abs(&self) -> &[f64] {
        &self.k_abs
    }

    /// Tabulated symbol of shell `q` (one value per mode index).
    pub fn shell_symbol(&self, q: i64) -> Result<&[f64]> {
        if q < -1 || q > self.q_max {
            return Err(Error::Config(format!(
                "shell index {q} outside [-1, {}]",
                self.q_max
            )));
        }
        Ok(&self.shells[(q + 1) as usize])
    }

    /// Shell projection: multiply coefficients by the shell-`q` symbol.
    pub fn shell_project(&self, u: &SpectralField, q: i64) -> Result<SpectralField> {
        Ok(apply_multiplier(u, self.shell_symbol(q)?))
    }

    /// Tabulates the multiplier of `u_{<=p}` (`chi(|k|/2^{p+1})`, the
    /// telescoped sum of shells through `p`) or of `u_{>=p}`
    /// (`1 - chi(|k|/2^p)`, its exact complement at `p-1`).
    pub fn band_multiplier(&self, p: i64, side: BandSide) -> Vec<f64> {
        let scale = match side {
            BandSide::Low => 1.0 / lambda(p + 1),
            BandSide::High => 1.0 / lambda(p),
        };
        self.k_abs
            .iter()
            .map(|&r| {
                let c = chi(r * scale);
                match side {
                    BandSide::Low => c,
                    BandSide::High => 1.0 - c,
                }
            })
            .collect()
    }

    /// Band projection `u_{<=p}` or `u_{>=p}`.
    pub fn band_project(&self, u: &SpectralField, p: i64, side: BandSide) -> SpectralField {
        apply_multiplier(u, &self.band_multiplier(p, side))
    }

    /// Windowed projection: the sum of shell projections over
    /// `|r - p| <= half_width`, applied as one combined multiplier.
    pub fn tilde_project(&self, u: &SpectralField, p: i64, half_width: i64) -> SpectralField {
        debug_assert!(half_width >= 1 && p >= half_width);
        let mut w = vec![0.0f64; self.grid.len()];
        for r in (p - half_width)..=(p + half_width) {
            if r < -1 || r > self.q_max {
                continue;
            }
            for (acc, s) in w.iter_mut().zip(&self.shells[(r + 1) as usize]) {
                *acc += s;
            }
        }
        apply_multiplier(u, &w)
    }

    /// `max_q lambda_q^s ||shell_q u||_inf` over all shells, with the sup
    /// norm taken on a twice-oversampled grid and `lambda_{-1} := 1`.
    pub fn besov_norm(&self, u: &SpectralField, s: f64) -> f64 {
        let mut best = 0.0f64;
        for q in -1..=self.q_max {
            let table = &self.shells[(q + 1) as usize];
            let active = (0..3).any(|c| {
                u.comp(c)
                    .iter()
                    .zip(table)
                    .any(|(z, &w)| w != 0.0 && (z.re != 0.0 || z.im != 0.0))
            });
            if !active {
                continue;
            }
            let proj = apply_multiplier(u, table);
            let sup = norm_lp(&proj, Exponent::Inf, 2).expect("fixed valid arguments");
            let weight = if q == -1 { 1.0 } else { lambda(q).powf(s) };
            best = best.max(weight * sup);
        }
        best
    }

    /// Measured Bernstein quotient
    /// `||u||_r / (lambda_q^{3 (1/s - 1/r)} ||u||_s)` for a field supported
    /// in shell `q`. Expected O(1) with a grid-independent bound.
    pub fn bernstein_ratio(
        &self,
        u: &SpectralField,
        q: i64,
        s_exp: Exponent,
        r_exp: Exponent,
    ) -> Result<f64> {
        if s_exp.recip() < r_exp.recip() {
            return Err(Error::Config(
                "Bernstein quotient needs s <= r".to_string(),
            ));
        }
        let num = norm_lp(u, r_exp, 2)?;
        let den = lambda(q).powf(3.0 * (s_exp.recip() - r_exp.recip())) * norm_lp(u, s_exp, 2)?;
        if den <= f64::MIN_POSITIVE {
            return Err(Error::Numerical(
                "Bernstein quotient denominator vanished".to_string(),
            ));
        }
        Ok(num / den)
    }
}
