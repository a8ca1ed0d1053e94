//! Lebesgue, Sobolev, and gradient-sup norms of spectral velocity fields,
//! evaluated by grid quadrature on an optionally oversampled mesh.

use crate::fft::{oversampled_pair, oversampled_real};
use crate::field::SpectralField;
use crate::grid::TWO_PI;
use crate::ops::gradient;
use crate::{Error, Result};

/// Lebesgue exponent: a finite power `m >= 1` or the sup norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    P(f64),
    Inf,
}

impl Exponent {
    /// `1/m`, with `1/inf = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::P(m) => 1.0 / m,
            Exponent::Inf => 0.0,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Exponent::P(m) if m.is_finite() && m >= 1.0 => Ok(()),
            Exponent::Inf => Ok(()),
            Exponent::P(m) => Err(Error::Config(format!(
                "Lebesgue exponent must be >= 1, got {m}"
            ))),
        }
    }
}

fn check_oversample(oversample: usize) -> Result<()> {
    if matches!(oversample, 1 | 2 | 4) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "oversample must be 1, 2, or 4, got {oversample}"
        )))
    }
}

/// `||u||_m` over the torus: zero-pads the spectrum to an `(oversample * n)^3`
/// mesh, synthesizes, and sums `|u(x)|^m` (Euclidean vector magnitude) with
/// the fine-mesh cell weight; the sup norm takes the pointwise maximum
/// instead.
pub fn norm_lp(u: &SpectralField, m: Exponent, oversample: usize) -> Result<f64> {
    m.validate()?;
    check_oversample(oversample)?;
    let n = u.grid().n();
    let (v1, v2) = oversampled_pair(n, oversample, u.comp(0), u.comp(1));
    let v3 = oversampled_real(n, oversample, u.comp(2));
    let len = v1.len();
    match m {
        Exponent::Inf => {
            let mut best = 0.0f64;
            for x in 0..len {
                best = best.max(v1[x] * v1[x] + v2[x] * v2[x] + v3[x] * v3[x]);
            }
            Ok(best.sqrt())
        }
        Exponent::P(p) => {
            let w = TWO_PI.powi(3) / len as f64;
            let mut sum = 0.0;
            if p == 2.0 {
                for x in 0..len {
                    sum += v1[x] * v1[x] + v2[x] * v2[x] + v3[x] * v3[x];
                }
            } else if p == 1.0 {
                for x in 0..len {
                    sum += (v1[x] * v1[x] + v2[x] * v2[x] + v3[x] * v3[x]).sqrt();
                }
            } else {
                let half = 0.5 * p;
                for x in 0..len {
                    sum += (v1[x] * v1[x] + v2[x] * v2[x] + v3[x] * v3[x]).powf(half);
                }
            }
            Ok((sum * w).powf(1.0 / p))
        }
    }
}

/// Sobolev norm `((2 pi)^3 sum_{k != 0} |k|^{2s} |uhat(k)|^2)^{1/2}`. The mean
/// mode is excluded so negative `s` stays finite.
pub fn norm_hs(u: &SpectralField, s: f64) -> f64 {
    debug_assert!((-2.0..=4.0).contains(&s));
    let ksq = u.grid().k_squared_table();
    let mut sum = 0.0;
    for c in 0..3 {
        let src = u.comp(c);
        for idx in 1..src.len() {
            if ksq[idx] > 0.0 {
                sum += ksq[idx].powf(s) * src[idx].norm_sqr();
            }
        }
    }
    (sum * TWO_PI.powi(3)).sqrt()
}

/// Sup over the (oversampled) grid of the Frobenius norm of the velocity
/// gradient matrix.
pub fn grad_inf_norm(u: &SpectralField, oversample: usize) -> Result<f64> {
    check_oversample(oversample)?;
    let n = u.grid().n();
    let g = gradient(u);
    let mut sq: Vec<f64> = Vec::new();
    let mut pending: Option<&[rustfft::num_complex::Complex64]> = None;
    for i in 0..3 {
        for j in 0..3 {
            match pending.take() {
                None => pending = Some(g.comp(i, j)),
                Some(first) => {
                    let (a, b) = oversampled_pair(n, oversample, first, g.comp(i, j));
                    if sq.is_empty() {
                        sq = vec![0.0; a.len()];
                    }
                    for x in 0..a.len() {
                        sq[x] += a[x] * a[x] + b[x] * b[x];
                    }
                }
            }
        }
    }
    let last = oversampled_real(n, oversample, pending.expect("odd component count"));
    let mut best = 0.0f64;
    for x in 0..last.len() {
        best = best.max(sq[x] + last[x] * last[x]);
    }
    Ok(best.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PhysicalField;
    use crate::grid::Grid;

    fn single_cosine(n: usize) -> SpectralField {
        let grid = Grid::new(n).unwrap();
        PhysicalField::from_fn(grid, |x, _, _| [0.0, x.cos(), 0.0]).to_spectral()
    }

    fn taylor_green(n: usize, a: f64) -> SpectralField {
        let grid = Grid::new(n).unwrap();
        PhysicalField::from_fn(grid, |x, y, _| {
            [a * x.sin() * y.cos(), -a * x.cos() * y.sin(), 0.0]
        })
        .to_spectral()
    }

    #[test]
    fn cosine_field_norms_match_closed_forms() {
        let u = single_cosine(16);
        let l2 = norm_lp(&u, Exponent::P(2.0), 1).unwrap();
        let expect = (4.0 * std::f64::consts::PI.powi(3)).sqrt();
        assert!((l2 - expect).abs() < 1e-12 * expect);
        let linf = norm_lp(&u, Exponent::Inf, 2).unwrap();
        assert!((linf - 1.0).abs() < 1e-12);
        let ginf = grad_inf_norm(&u, 2).unwrap();
        assert!((ginf - 1.0).abs() < 1e-12);
    }

    #[test]
    fn taylor_green_norms_match_closed_forms() {
        let a = 1.0;
        let u = taylor_green(16, a);
        let pi = std::f64::consts::PI;
        let l2 = norm_lp(&u, Exponent::P(2.0), 1).unwrap();
        assert!((l2 * l2 - 4.0 * pi.powi(3)).abs() < 1e-11 * 4.0 * pi.powi(3));
        let linf = norm_lp(&u, Exponent::Inf, 2).unwrap();
        assert!((linf - a).abs() < 1e-12);
        let ginf = grad_inf_norm(&u, 2).unwrap();
        assert!((ginf - 2.0f64.sqrt() * a).abs() < 1e-12);
        let h1 = norm_hs(&u, 1.0);
        assert!((h1 - (8.0 * pi.powi(3)).sqrt()).abs() < 1e-11);
    }

    #[test]
    fn l2_norm_independent_of_oversampling() {
        let u = taylor_green(8, 0.7);
        let values: Vec<f64> = [1, 2, 4]
            .iter()
            .map(|&o| norm_lp(&u, Exponent::P(2.0), o).unwrap())
            .collect();
        for w in values.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-12 * values[0].max(1.0));
        }
        assert!((norm_hs(&u, 0.0) - values[0]).abs() < 1e-12 * values[0]);
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let grid = Grid::new(8).unwrap();
        let u = SpectralField::zeros(grid);
        for m in [Exponent::P(1.0), Exponent::P(2.0), Exponent::P(2.5), Exponent::Inf] {
            assert_eq!(norm_lp(&u, m, 2).unwrap(), 0.0);
        }
        assert_eq!(norm_hs(&u, -1.0), 0.0);
        assert_eq!(grad_inf_norm(&u, 1).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_exponent_and_oversample() {
        let u = single_cosine(8);
        assert!(norm_lp(&u, Exponent::P(0.5), 2).is_err());
        assert!(norm_lp(&u, Exponent::P(f64::NAN), 2).is_err());
        assert!(norm_lp(&u, Exponent::P(2.0), 3).is_err());
        assert!(grad_inf_norm(&u, 0).is_err());
    }

    #[test]
    fn fractional_exponents_interpolate_between_neighbours() {
        let u = taylor_green(16, 1.0);
        let l2 = norm_lp(&u, Exponent::P(2.0), 2).unwrap();
        let l25 = norm_lp(&u, Exponent::P(2.5), 2).unwrap();
        let l3 = norm_lp(&u, Exponent::P(3.0), 2).unwrap();
        let vol = TWO_PI.powi(3);
        // On a probability-normalized torus the L^m means are monotone in m.
        let mean = |lm: f64, m: f64| lm / vol.powf(1.0 / m);
        assert!(mean(l2, 2.0) <= mean(l25, 2.5) + 1e-12);
        assert!(mean(l25, 2.5) <= mean(l3, 3.0) + 1e-12);
    }
}
