//! Per-sample dyadic diagnostics: shell and band energies and dissipation
//! rates plus the physical-space sup and Lebesgue norms of shell and low-band
//! projections, gathered in one pass over the field.

use rustfft::num_complex::Complex64;

use crate::bank::{chi, lambda, DyadicFilterBank};
use crate::fft::{oversampled_pair, oversampled_real};
use crate::field::SpectralField;
use crate::grid::TWO_PI;
use crate::norm::grad_inf_norm;
use crate::{Error, Result};

const OVERSAMPLE: usize = 2;

/// One field's worth of dyadic statistics.
///
/// Shell-indexed vectors (`e`, `d`, `shell_m`) cover `q = -1..=q_max` at slot
/// `q + 1`; band-indexed vectors (`band_e`, `band_d`, `g`, `low_lp` rows)
/// cover `p = 0..=q_max` at slot `p`.
#[derive(Debug, Clone)]
pub struct ShellSpectrum {
    pub t: f64,
    /// `||u_q||_2^2`.
    pub e: Vec<f64>,
    /// `||grad u_q||_2^2`.
    pub d: Vec<f64>,
    /// `lambda_q^{-1} ||u_q||_inf` (weight 1 for the mean shell).
    pub shell_m: Vec<f64>,
    /// `||u_{>=p}||_2^2`.
    pub band_e: Vec<f64>,
    /// `||grad u_{>=p}||_2^2`.
    pub band_d: Vec<f64>,
    /// `||grad u_{<=p}||_inf`.
    pub g: Vec<f64>,
    /// Lebesgue exponents the `low_lp` rows were measured at.
    pub lp_exponents: Vec<f64>,
    /// `low_lp[i][p] = ||u_{<=p}||_{m_i}`.
    pub low_lp: Vec<Vec<f64>>,
    pub energy: f64,
    pub enstrophy: f64,
    pub u_inf: f64,
    pub grad_inf: f64,
}

/// Measures every [`ShellSpectrum`] field for one velocity snapshot.
///
/// Quadratic quantities are spectral sums. Sup and Lebesgue norms are taken
/// on a twice-oversampled mesh, building `u_{<=p}` by accumulating shells so
/// each empty shell costs nothing and each occupied one a fixed number of
/// transforms; `u_p` itself is the difference of consecutive partial sums.
pub fn shell_statistics(
    bank: &DyadicFilterBank,
    u: &SpectralField,
    t: f64,
    lp_exponents: &[f64],
) -> Result<ShellSpectrum> {
    let grid = u.grid();
    if bank.grid().n() != grid.n() {
        return Err(Error::Config(format!(
            "filter bank is for n = {}, field has n = {}",
            bank.grid().n(),
            grid.n()
        )));
    }
    for &m in lp_exponents {
        if !(m >= 1.0) || !m.is_finite() {
            return Err(Error::Config(format!(
                "Lebesgue exponent must be finite and >= 1, got {m}"
            )));
        }
    }
    let q_max = bank.q_max();
    let shells = (q_max + 2) as usize;
    let bands = (q_max + 1) as usize;
    let n = grid.n();
    let ksq = grid.k_squared_table();
    let vol = TWO_PI.powi(3);

    let mut mag2 = vec![0.0f64; grid.len()];
    for c in 0..3 {
        for (m2, z) in mag2.iter_mut().zip(u.comp(c)) {
            *m2 += z.norm_sqr();
        }
    }

    let mut e = vec![0.0f64; shells];
    let mut d = vec![0.0f64; shells];
    for q in -1..=q_max {
        let sym = bank.shell_symbol(q)?;
        let (mut se, mut sd) = (0.0, 0.0);
        for idx in 0..grid.len() {
            let wt = sym[idx] * sym[idx] * mag2[idx];
            se += wt;
            sd += ksq[idx] * wt;
        }
        e[(q + 1) as usize] = vol * se;
        d[(q + 1) as usize] = vol * sd;
    }

    let mut band_e = vec![0.0f64; bands];
    let mut band_d = vec![0.0f64; bands];
    let k_abs = bank.k_abs();
    for p in 0..=q_max {
        let scale = 1.0 / lambda(p);
        let (mut se, mut sd) = (0.0, 0.0);
        for idx in 0..grid.len() {
            let h = 1.0 - chi(k_abs[idx] * scale);
            let wt = h * h * mag2[idx];
            se += wt;
            sd += ksq[idx] * wt;
        }
        band_e[p as usize] = vol * se;
        band_d[p as usize] = vol * sd;
    }

    let mut shell_m = vec![0.0f64; shells];
    let mut g = vec![0.0f64; bands];
    let mut low_lp = vec![vec![0.0f64; bands]; lp_exponents.len()];

    let olen = OVERSAMPLE.pow(3) * grid.len();
    let cell = vol / olen as f64;
    let mut cum = [
        vec![Complex64::ZERO; grid.len()],
        vec![Complex64::ZERO; grid.len()],
        vec![Complex64::ZERO; grid.len()],
    ];
    let mut prev = [vec![0.0f64; olen], vec![0.0f64; olen], vec![0.0f64; olen]];
    let mut last_g = 0.0f64;
    let mut last_lp = vec![0.0f64; lp_exponents.len()];
    let mut last_sup = 0.0f64;

    for q in 0..=q_max {
        let slot = (q + 1) as usize;
        if e[slot] == 0.0 {
            g[q as usize] = last_g;
            for (row, &v) in low_lp.iter_mut().zip(&last_lp) {
                row[q as usize] = v;
            }
            continue;
        }

        let sym = bank.shell_symbol(q)?;
        for c in 0..3 {
            for (acc, (&s, z)) in cum[c].iter_mut().zip(sym.iter().zip(u.comp(c))) {
                *acc += *z * s;
            }
        }

        let (v1, v2) = oversampled_pair(n, OVERSAMPLE, &cum[0], &cum[1]);
        let v3 = oversampled_real(n, OVERSAMPLE, &cum[2]);
        let mut shell_sq = 0.0f64;
        let mut cum_sq = 0.0f64;
        let mut lp_sums = vec![0.0f64; lp_exponents.len()];
        for x in 0..olen {
            let s2 = v1[x] * v1[x] + v2[x] * v2[x] + v3[x] * v3[x];
            let (d1, d2, d3) = (v1[x] - prev[0][x], v2[x] - prev[1][x], v3[x] - prev[2][x]);
            shell_sq = shell_sq.max(d1 * d1 + d2 * d2 + d3 * d3);
            cum_sq = cum_sq.max(s2);
            for (sum, &m) in lp_sums.iter_mut().zip(lp_exponents) {
                if m == 2.0 {
                    *sum += s2;
                } else if m == 1.0 {
                    *sum += s2.sqrt();
                } else {
                    *sum += s2.powf(0.5 * m);
                }
            }
        }
        prev = [v1, v2, v3];

        shell_m[slot] = shell_sq.sqrt() / lambda(q);
        last_sup = cum_sq.sqrt();
        for (((row, sum), &m), last) in
            low_lp.iter_mut().zip(lp_sums).zip(lp_exponents).zip(last_lp.iter_mut())
        {
            let v = (sum * cell).powf(1.0 / m);
            row[q as usize] = v;
            *last = v;
        }

        let cum_field =
            SpectralField::from_comps(grid, [cum[0].clone(), cum[1].clone(), cum[2].clone()]);
        last_g = grad_inf_norm(&cum_field, OVERSAMPLE)?;
        g[q as usize] = last_g;
    }

    Ok(ShellSpectrum {
        t,
        e,
        d,
        shell_m,
        band_e,
        band_d,
        g,
        lp_exponents: lp_exponents.to_vec(),
        low_lp,
        energy: u.energy(),
        enstrophy: u.enstrophy(),
        u_inf: last_sup,
        grad_inf: last_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bank::BandSide;
    use crate::grid::Grid;
    use crate::ic::ic_taylor_green;
    use crate::norm::{norm_lp, Exponent};
    use crate::testutil::dense_field;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn statistics_match_the_projection_by_projection_norms() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = dense_field(grid);
        let s = shell_statistics(&bank, &u, 0.0, &[2.0, 2.5]).unwrap();

        for q in -1..=bank.q_max() {
            let slot = (q + 1) as usize;
            let shell = bank.shell_project(&u, q).unwrap();
            assert!(close(s.e[slot], shell.energy(), 1e-12), "e at q = {q}");
            assert!(close(s.d[slot], shell.enstrophy(), 1e-12), "d at q = {q}");
            let sup = norm_lp(&shell, Exponent::Inf, 2).unwrap();
            let w = if q == -1 { 1.0 } else { lambda(q) };
            assert!(close(s.shell_m[slot], sup / w, 1e-10), "shell_m at q = {q}");
        }
        for p in 0..=bank.q_max() {
            let high = bank.band_project(&u, p, BandSide::High);
            let low = bank.band_project(&u, p, BandSide::Low);
            assert!(close(s.band_e[p as usize], high.energy(), 1e-12));
            assert!(close(s.band_d[p as usize], high.enstrophy(), 1e-12));
            assert!(close(s.g[p as usize], grad_inf_norm(&low, 2).unwrap(), 1e-10));
            for (mi, &m) in [2.0, 2.5].iter().enumerate() {
                let direct = norm_lp(&low, Exponent::P(m), 2).unwrap();
                assert!(close(s.low_lp[mi][p as usize], direct, 1e-10));
            }
        }
        assert!(close(s.energy, u.energy(), 1e-15));
        assert!(close(s.enstrophy, u.enstrophy(), 1e-15));
        assert!(close(s.u_inf, norm_lp(&u, Exponent::Inf, 2).unwrap(), 1e-10));
        assert!(close(s.grad_inf, grad_inf_norm(&u, 2).unwrap(), 1e-10));
    }

    #[test]
    fn taylor_green_lives_entirely_in_shell_zero() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let a = 1.3;
        let u = ic_taylor_green(grid, a);
        let s = shell_statistics(&bank, &u, 0.5, &[2.0]).unwrap();

        let e0 = 4.0 * std::f64::consts::PI.powi(3) * a * a;
        assert!(close(s.e[1], e0, 1e-13));
        assert!(close(s.d[1], 2.0 * e0, 1e-13));
        for q in 1..=bank.q_max() {
            assert_eq!(s.e[(q + 1) as usize], 0.0);
            assert_eq!(s.shell_m[(q + 1) as usize], 0.0);
        }
        assert!(close(s.shell_m[1], a, 1e-12));

        assert!(close(s.band_e[0], e0, 1e-13));
        for p in 1..=bank.q_max() {
            assert_eq!(s.band_e[p as usize], 0.0);
            assert_eq!(s.band_d[p as usize], 0.0);
        }
        for p in 0..=bank.q_max() {
            assert!(close(s.g[p as usize], std::f64::consts::SQRT_2 * a, 1e-12));
            assert!(close(s.low_lp[0][p as usize], e0.sqrt(), 1e-12));
        }
        assert!(close(s.u_inf, a, 1e-12));
        assert!(close(s.grad_inf, std::f64::consts::SQRT_2 * a, 1e-12));
        assert_eq!(s.t, 0.5);

        // Rows above the last occupied shell are bit-for-bit copies.
        assert_eq!(s.g[0], s.g[3]);
        assert_eq!(s.low_lp[0][0], s.low_lp[0][3]);
    }

    #[test]
    fn zero_field_yields_all_zeros() {
        let grid = Grid::new(8).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = SpectralField::zeros(grid);
        let s = shell_statistics(&bank, &u, 0.0, &[2.0]).unwrap();
        assert!(s.e.iter().chain(&s.d).chain(&s.band_e).chain(&s.g).all(|&v| v == 0.0));
        assert_eq!(s.u_inf, 0.0);
        assert_eq!(s.grad_inf, 0.0);
    }

    #[test]
    fn shell_energies_bracket_the_total() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = dense_field(grid);
        let s = shell_statistics(&bank, &u, 0.0, &[2.0]).unwrap();
        let total: f64 = s.e.iter().sum();
        // At most two shells overlap any mode and their symbols sum to one,
        // so the squared-symbol sum sits between half the energy and all of it.
        assert!(total >= 0.5 * s.energy - 1e-12 && total <= s.energy + 1e-12);
    }

    #[test]
    fn band_series_are_monotone() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = dense_field(grid);
        let s = shell_statistics(&bank, &u, 0.0, &[2.0]).unwrap();
        for p in 1..s.band_e.len() {
            assert!(s.band_e[p] <= s.band_e[p - 1] + 1e-15);
            assert!(s.g[p] >= s.g[p - 1] - 1e-15);
            assert!(s.low_lp[0][p] >= s.low_lp[0][p - 1] - 1e-15);
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let g8 = Grid::new(8).unwrap();
        let bank = DyadicFilterBank::new(g8);
        let u16 = SpectralField::zeros(Grid::new(16).unwrap());
        assert!(shell_statistics(&bank, &u16, 0.0, &[2.0]).is_err());
        let u8 = SpectralField::zeros(g8);
        assert!(shell_statistics(&bank, &u8, 0.0, &[0.5]).is_err());
        assert!(shell_statistics(&bank, &u8, 0.0, &[f64::NAN]).is_err());
    }
}
