//! Dyadic energy-flux functionals and the algebraic identities they satisfy,
//! the low-pass remainder of the product (commutator form), and the exact
//! per-shell energy balance.

use rustfft::num_complex::Complex64;

use crate::bank::{lambda, BandSide, DyadicFilterBank};
use crate::fft::{fft_pair, ifft_pair, ifft_real, oversampled_pair, oversampled_real};
use crate::field::SpectralField;
use crate::grid::{Grid, TWO_PI};
use crate::norm::{grad_inf_norm, norm_lp, Exponent};
use crate::ops::{nonlinear_advection, weighted_inner_product, TensorField};
use crate::stats::ShellSpectrum;
use crate::{Error, Result};

/// Flux functionals of one field at one band index, with the residual of the
/// exact decomposition identity and both sides of the transfer bound.
#[derive(Debug, Clone)]
pub struct FluxSample {
    pub t: f64,
    pub p: i64,
    /// `int (u.grad)u . H_p^2 u`: energy flowing into frequencies `>= 2^p`.
    pub pi_high: f64,
    /// Same with the squared low multiplier at `p - 1`.
    pub pi_low: f64,
    /// Mixed term `int (u.grad)u . (H_p M_{<=p-1}) u`.
    pub cross: f64,
    /// `|pi_high + pi_low + 2 cross|` over the trilinear scale; zero up to
    /// rounding for solenoidal dealiased fields.
    pub identity_residual: f64,
    pub bound_lhs: f64,
    /// `[sum_{r<=p} 4^{r-p} ||u_r||_2^2 + sum_{r>p} ||u_r||_2^2] ||grad u_{<p}||_inf`.
    pub bound_rhs: f64,
    pub ratio: f64,
}

fn check_p(p: i64, lo: i64, hi: i64) -> Result<()> {
    if p < lo || p > hi {
        return Err(Error::Config(format!("band index {p} outside [{lo}, {hi}]")));
    }
    Ok(())
}

fn squared(w: Vec<f64>) -> Vec<f64> {
    w.into_iter().map(|v| v * v).collect()
}

/// `||u_q||_2^2` for `q = -1..=q_max`, slot `q + 1`.
fn shell_energies(bank: &DyadicFilterBank, u: &SpectralField) -> Vec<f64> {
    let grid = u.grid();
    let mut mag2 = vec![0.0f64; grid.len()];
    for c in 0..3 {
        for (m2, z) in mag2.iter_mut().zip(u.comp(c)) {
            *m2 += z.norm_sqr();
        }
    }
    (-1..=bank.q_max())
        .map(|q| {
            let sym = bank.shell_symbol(q).expect("in-range shell");
            let sum: f64 =
                sym.iter().zip(&mag2).map(|(&s, &m)| s * s * m).sum();
            TWO_PI.powi(3) * sum
        })
        .collect()
}

fn trilinear_scale(u: &SpectralField) -> f64 {
    let sup = norm_lp(u, Exponent::Inf, 2).expect("fixed oversample");
    u.energy().sqrt() * u.enstrophy().sqrt() * sup + f64::MIN_POSITIVE
}

/// `Pi_{>=p}`: the advection term integrated against the twice-applied high
/// multiplier, `int (u.grad)u . H_p^2 u dx`.
pub fn flux_high(bank: &DyadicFilterBank, u: &SpectralField, p: i64) -> Result<f64> {
    check_p(p, 1, bank.q_max())?;
    let adv = nonlinear_advection(u);
    Ok(weighted_inner_product(&adv, u, &squared(bank.band_multiplier(p, BandSide::High))))
}

/// `Pi_{<=p}`: same functional through the squared low multiplier. At
/// `p = q_max + 1` the multiplier is one everywhere and the value is the
/// total trilinear form, which cancels to rounding.
pub fn flux_low(bank: &DyadicFilterBank, u: &SpectralField, p: i64) -> Result<f64> {
    check_p(p, 0, bank.q_max() + 1)?;
    let adv = nonlinear_advection(u);
    Ok(weighted_inner_product(&adv, u, &squared(bank.band_multiplier(p, BandSide::Low))))
}

/// Evaluates [`FluxSample`] at each requested `p`, computing the advection
/// term once. Shell energies, the low-band gradient sup, and the field sup
/// are taken from `spectrum` when one is supplied, so a sampling loop that
/// already ran the shell statistics pays only the inner products here.
pub fn flux_samples(
    bank: &DyadicFilterBank,
    u: &SpectralField,
    t: f64,
    ps: &[i64],
    spectrum: Option<&ShellSpectrum>,
) -> Result<Vec<FluxSample>> {
    for &p in ps {
        check_p(p, 1, bank.q_max())?;
    }
    let adv = nonlinear_advection(u);
    let e = match spectrum {
        Some(s) => s.e.clone(),
        None => shell_energies(bank, u),
    };
    let scale = match spectrum {
        Some(s) => u.energy().sqrt() * u.enstrophy().sqrt() * s.u_inf + f64::MIN_POSITIVE,
        None => trilinear_scale(u),
    };

    let mut out = Vec::with_capacity(ps.len());
    for &p in ps {
        let hi = bank.band_multiplier(p, BandSide::High);
        let lo = bank.band_multiplier(p - 1, BandSide::Low);
        let w_hi: Vec<f64> = hi.iter().map(|&h| h * h).collect();
        let w_lo: Vec<f64> = lo.iter().map(|&l| l * l).collect();
        let w_x: Vec<f64> = hi.iter().zip(&lo).map(|(&h, &l)| h * l).collect();

        let pi_high = weighted_inner_product(&adv, u, &w_hi);
        let pi_low = weighted_inner_product(&adv, u, &w_lo);
        let cross = weighted_inner_product(&adv, u, &w_x);
        let identity_residual = (pi_high + pi_low + 2.0 * cross).abs() / scale;

        let g_low = match spectrum {
            Some(s) => s.g[(p - 1) as usize],
            None => grad_inf_norm(&bank.band_project(u, p - 1, BandSide::Low), 2)?,
        };
        let mut stack = 0.0;
        for r in -1..=bank.q_max() {
            let w = if r <= p { lambda(r - p).powi(2) } else { 1.0 };
            stack += w * e[(r + 1) as usize];
        }
        let bound_lhs = pi_high.abs();
        let bound_rhs = stack * g_low;
        let ratio = if bound_rhs > 0.0 {
            bound_lhs / bound_rhs
        } else if bound_lhs <= 1e-12 * scale {
            0.0
        } else {
            return Err(Error::Numerical(format!(
                "flux bound degenerate at p = {p}: lhs = {bound_lhs:.3e} with zero rhs"
            )));
        };
        out.push(FluxSample {
            t,
            p,
            pi_high,
            pi_low,
            cross,
            identity_residual,
            bound_lhs,
            bound_rhs,
            ratio,
        });
    }
    Ok(out)
}

/// `|Pi_{>=p} + Pi_{<=p-1} + 2 cross|` over the trilinear scale.
pub fn flux_identity_residual(
    bank: &DyadicFilterBank,
    u: &SpectralField,
    p: i64,
) -> Result<f64> {
    Ok(flux_samples(bank, u, 0.0, &[p], None)?.remove(0).identity_residual)
}

/// One fully populated [`FluxSample`] at `p`.
pub fn flux_bound_ratio(
    bank: &DyadicFilterBank,
    u: &SpectralField,
    p: i64,
) -> Result<FluxSample> {
    Ok(flux_samples(bank, u, 0.0, &[p], None)?.remove(0))
}

/// The low-pass product remainder at band `p` and the two halves of its
/// frequency split, with the recorded ratio against its stacked-shell bound.
pub struct CetRemainder {
    /// `r_p = M_{<=p}(u (x) u) + u_{>p} (x) u_{>p} - u_{<=p} (x) u_{<=p}`.
    pub r: TensorField,
    /// `||M_{<=p} r_p||_{L^1}` (Frobenius magnitude, oversampled quadrature).
    pub r1_l1: f64,
    /// `||(1 - M_{<=p}) r_p||_{L^1}`.
    pub r2_l1: f64,
    /// `r1_l1` over `sum_{r<=p} ||u_r||_2^2 4^{-(p-r)}`.
    pub bound_ratio: f64,
}

/// Collocation values of the three velocity components after an optional
/// spectral weight.
fn synth_weighted(u: &SpectralField, w: Option<(&[f64], bool)>) -> [Vec<f64>; 3] {
    let n = u.grid().n();
    let filter = |c: usize| -> Vec<Complex64> {
        match w {
            None => u.comp(c).to_vec(),
            Some((m, complement)) => u
                .comp(c)
                .iter()
                .zip(m)
                .map(|(z, &v)| *z * if complement { 1.0 - v } else { v })
                .collect(),
        }
    };
    let (a, b) = (filter(0), filter(1));
    let (v1, v2) = ifft_pair(n, &a, &b);
    let v3 = ifft_real(n, &filter(2));
    [v1, v2, v3]
}

/// Forward transforms of the six distinct products `v_i v_j`, mirrored into
/// all nine slots.
fn product_tensor(grid: Grid, v: &[Vec<f64>; 3]) -> TensorField {
    let n = grid.n();
    let len = grid.len();
    let prod = |i: usize, j: usize| -> Vec<f64> {
        (0..len).map(|x| v[i][x] * v[j][x]).collect()
    };
    let (t00, t01) = fft_pair(n, &prod(0, 0), &prod(0, 1));
    let (t02, t11) = fft_pair(n, &prod(0, 2), &prod(1, 1));
    let (t12, t22) = fft_pair(n, &prod(1, 2), &prod(2, 2));
    TensorField::from_comps(
        grid,
        [
            t00,
            t01.clone(),
            t02.clone(),
            t01,
            t11,
            t12.clone(),
            t02,
            t12,
            t22,
        ],
    )
}

/// Oversampled `L^1` norm of the Frobenius magnitude of a spectrally masked
/// tensor.
fn tensor_l1(t: &TensorField, mask: &[f64], complement: bool) -> f64 {
    let n = t.grid().n();
    let entry = |i: usize, j: usize| -> Vec<Complex64> {
        t.comp(i, j)
            .iter()
            .zip(mask)
            .map(|(z, &m)| *z * if complement { 1.0 - m } else { m })
            .collect()
    };
    let mut sq: Vec<f64> = Vec::new();
    let mut pending: Option<Vec<Complex64>> = None;
    for i in 0..3 {
        for j in 0..3 {
            let e = entry(i, j);
            match pending.take() {
                None => pending = Some(e),
                Some(first) => {
                    let (a, b) = oversampled_pair(n, 2, &first, &e);
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
    let last = oversampled_real(n, 2, &pending.expect("odd entry count"));
    let cell = TWO_PI.powi(3) / last.len() as f64;
    let mut sum = 0.0;
    for x in 0..last.len() {
        sum += (sq[x] + last[x] * last[x]).sqrt();
    }
    sum * cell
}

/// Builds `r_p` from its defining identity — the low-pass of the product
/// minus what the low-pass velocities account for — and splits it by the
/// complementary multipliers `M_{<=p}` and `1 - M_{<=p}`.
pub fn cet_remainder(
    bank: &DyadicFilterBank,
    u: &SpectralField,
    p: i64,
) -> Result<CetRemainder> {
    check_p(p, 1, bank.q_max())?;
    let grid = u.grid();
    let m = bank.band_multiplier(p, BandSide::Low);

    let t_full = product_tensor(grid, &synth_weighted(u, None));
    let t_high = product_tensor(grid, &synth_weighted(u, Some((&m, true))));
    let t_low = product_tensor(grid, &synth_weighted(u, Some((&m, false))));

    let mut comps: Vec<Vec<Complex64>> = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let row: Vec<Complex64> = (0..grid.len())
                .map(|idx| {
                    m[idx] * t_full.comp(i, j)[idx] + t_high.comp(i, j)[idx]
                        - t_low.comp(i, j)[idx]
                })
                .collect();
            comps.push(row);
        }
    }
    let arr: [Vec<Complex64>; 9] = comps.try_into().expect("nine tensor entries");
    let r = TensorField::from_comps(grid, arr);

    let r1_l1 = tensor_l1(&r, &m, false);
    let r2_l1 = tensor_l1(&r, &m, true);

    let e = shell_energies(bank, u);
    let mut bound = 0.0;
    for rr in -1..=p.min(bank.q_max()) {
        bound += e[(rr + 1) as usize] * lambda(p - rr).powi(-2);
    }
    let bound_ratio = r1_l1 / bound.max(f64::MIN_POSITIVE);

    Ok(CetRemainder { r, r1_l1, r2_l1, bound_ratio })
}

/// Trapezoid residual of the exact per-shell balance
/// `d/dt ||u_q||_2^2 + 2 nu ||grad u_q||_2^2 = -2 int (shell_q adv).(shell_q u)`
/// across one step, normalized by the largest term, plus the recorded ratio
/// of the measured transfer against its stacked-shell estimate.
pub struct ShellBalance {
    pub residual: f64,
    pub transfer_bound_ratio: f64,
}

pub fn shell_balance_residual(
    bank: &DyadicFilterBank,
    t1: f64,
    u1: &SpectralField,
    t2: f64,
    u2: &SpectralField,
    q: i64,
    nu: f64,
) -> Result<ShellBalance> {
    check_p(q, 0, bank.q_max())?;
    let grid = u1.grid();
    let sym = bank.shell_symbol(q)?;
    let w2: Vec<f64> = sym.iter().map(|&s| s * s).collect();
    let ksq = grid.k_squared_table();
    let wd: Vec<f64> = w2.iter().zip(&ksq).map(|(&w, &s)| w * s).collect();

    let gap = t2 - t1;
    let (e1, e2) = (
        weighted_inner_product(u1, u1, &w2),
        weighted_inner_product(u2, u2, &w2),
    );
    let (d1, d2) = (
        weighted_inner_product(u1, u1, &wd),
        weighted_inner_product(u2, u2, &wd),
    );
    let (adv1, adv2) = (nonlinear_advection(u1), nonlinear_advection(u2));
    let (tau1, tau2) = (
        weighted_inner_product(&adv1, u1, &w2),
        weighted_inner_product(&adv2, u2, &w2),
    );

    let a = e2 - e1;
    let b = gap * nu * (d1 + d2);
    let c = gap * (tau1 + tau2);
    let residual =
        (a + b + c).abs() / a.abs().max(b.abs()).max(c.abs()).max(f64::MIN_POSITIVE);

    let e = shell_energies(bank, u1);
    let s = |r: i64| e[(r + 1) as usize].sqrt();
    let sq_norm = s(q);
    let mut low_stack = 0.0;
    for r in -1..=q {
        low_stack += lambda(r).powf(2.5) * s(r);
    }
    let mut near = 0.0;
    for r in (q - 2).max(-1)..=(q + 2).min(bank.q_max()) {
        near += s(r);
    }
    let mut high_sq = 0.0;
    for r in (q - 2).max(-1)..=bank.q_max() {
        high_sq += e[(r + 1) as usize];
    }
    let denom = low_stack * near * sq_norm + lambda(q).powf(2.5) * high_sq * sq_norm;
    let transfer_bound_ratio = (tau1 + tau2).abs() / denom.max(f64::MIN_POSITIVE);

    Ok(ShellBalance { residual, transfer_bound_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::ic::{ic_random_spectrum, ic_taylor_green};
    use crate::ops::inner_product;
    use crate::solver::{SolverState, Stepper};
    use crate::testutil::dense_field;
    use crate::verify::advection_direct;

    #[test]
    fn high_flux_matches_the_direct_convolution_oracle() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = dense_field(grid);
        let oracle_adv = advection_direct(&u);
        for p in [1, 2, 3] {
            let direct = weighted_inner_product(
                &oracle_adv,
                &u,
                &squared(bank.band_multiplier(p, BandSide::High)),
            );
            let fast = flux_high(&bank, &u, p).unwrap();
            assert!(
                (fast - direct).abs() <= 1e-10 * direct.abs().max(1e-12),
                "p = {p}: {fast} vs {direct}"
            );
        }
    }

    #[test]
    fn identity_holds_and_the_total_flux_cancels() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        for seed in 1..=5 {
            let u = ic_random_spectrum(grid, seed, -5.0 / 3.0, 3.0);
            let ps: Vec<i64> = (1..=bank.q_max()).collect();
            for s in flux_samples(&bank, &u, 0.0, &ps, None).unwrap() {
                assert!(s.identity_residual <= 1e-9, "p = {}: {}", s.p, s.identity_residual);
                assert!(s.ratio.is_finite() && s.ratio >= 0.0);
            }
            let total = flux_low(&bank, &u, bank.q_max() + 1).unwrap();
            assert!(total.abs() <= 1e-10 * trilinear_scale(&u));
        }
    }

    #[test]
    fn taylor_green_fluxes_vanish() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = ic_taylor_green(grid, 1.0);
        // Every mode sits inside the lowest band, so each high multiplier is
        // exactly zero on the support.
        for p in 1..=bank.q_max() {
            assert_eq!(flux_high(&bank, &u, p).unwrap(), 0.0);
        }
        let scale = trilinear_scale(&u);
        for p in [0, 2, bank.q_max() + 1] {
            assert!(flux_low(&bank, &u, p).unwrap().abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn zero_field_samples_are_identically_zero() {
        let grid = Grid::new(8).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = SpectralField::zeros(grid);
        let s = flux_bound_ratio(&bank, &u, 2).unwrap();
        assert_eq!(s.pi_high, 0.0);
        assert_eq!(s.bound_rhs, 0.0);
        assert_eq!(s.ratio, 0.0);
        assert_eq!(s.identity_residual, 0.0);
    }

    #[test]
    fn samples_reuse_a_supplied_spectrum_consistently() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = ic_random_spectrum(grid, 3, -2.0, 3.0);
        let spec = crate::stats::shell_statistics(&bank, &u, 0.0, &[2.0]).unwrap();
        let with = flux_samples(&bank, &u, 0.0, &[2, 3], Some(&spec)).unwrap();
        let without = flux_samples(&bank, &u, 0.0, &[2, 3], None).unwrap();
        for (a, b) in with.iter().zip(&without) {
            assert!((a.pi_high - b.pi_high).abs() <= 1e-15 * a.pi_high.abs().max(1e-300));
            assert!((a.bound_rhs - b.bound_rhs).abs() <= 1e-9 * b.bound_rhs.abs());
        }
    }

    #[test]
    fn cet_split_is_exact_and_matches_the_direct_oracle() {
        let grid = Grid::new(8).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = dense_field(grid);
        let p = 2;
        let cet = cet_remainder(&bank, &u, p).unwrap();

        // Split exactness: multipliers are complementary, so the two halves
        // reassemble the remainder coefficient by coefficient.
        let m = bank.band_multiplier(p, BandSide::Low);
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for idx in 0..grid.len() {
                    let r = cet.r.comp(i, j)[idx];
                    let split = m[idx] * r + (1.0 - m[idx]) * r;
                    worst = worst.max((split - r).norm());
                    scale = scale.max(r.norm());
                }
            }
        }
        assert!(worst <= 1e-12 * scale.max(1e-300));

        // Direct circular-convolution oracle for all three terms.
        let n = grid.len();
        let side = grid.n() as i64;
        let conv = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
            // Collocation products alias: mode sums wrap modulo n per axis.
            let mut out = vec![Complex64::ZERO; n];
            for ia in 0..n {
                let ka = grid.wavevec(ia);
                for ib in 0..n {
                    let kb = grid.wavevec(ib);
                    let wrap = |v: i64| v.rem_euclid(side) as usize;
                    let target = grid.index(
                        wrap(ka[0] + kb[0]),
                        wrap(ka[1] + kb[1]),
                        wrap(ka[2] + kb[2]),
                    );
                    out[target] += a[ia] * b[ib];
                }
            }
            out
        };
        let filt = |c: usize, complement: bool| -> Vec<Complex64> {
            u.comp(c)
                .iter()
                .zip(&m)
                .map(|(z, &v)| *z * if complement { 1.0 - v } else { v })
                .collect()
        };
        let mut worst = 0.0f64;
        for (i, j) in [(0, 0), (0, 2), (1, 2)] {
            let full = conv(u.comp(i), u.comp(j));
            let high = conv(&filt(i, true), &filt(j, true));
            let low = conv(&filt(i, false), &filt(j, false));
            for idx in 0..n {
                let oracle = m[idx] * full[idx] + high[idx] - low[idx];
                worst = worst.max((cet.r.comp(i, j)[idx] - oracle).norm());
            }
        }
        let u_scale = u.max_coeff();
        assert!(worst <= 1e-12 * u_scale * u_scale * grid.len() as f64);
    }

    #[test]
    fn cet_remainder_collapses_for_well_separated_scales() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = ic_taylor_green(grid, 1.0);
        let cet = cet_remainder(&bank, &u, 3).unwrap();
        // All velocity modes and all product modes sit deep inside the band
        // where the low multiplier is one, so the identity telescopes away.
        let scale = u.energy();
        assert!(cet.r1_l1 + cet.r2_l1 <= 1e-12 * scale, "{} {}", cet.r1_l1, cet.r2_l1);
    }

    #[test]
    fn shell_balance_residual_is_second_order_on_taylor_green() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let nu = 1.0;
        let mut residuals = Vec::new();
        for &dt in &[1e-3, 5e-4] {
            let stepper = Stepper::new(grid, nu, dt).unwrap();
            let mut state = SolverState::new(ic_taylor_green(grid, 1.0));
            let u1 = state.u.clone();
            stepper.step(&mut state).unwrap();
            let out =
                shell_balance_residual(&bank, 0.0, &u1, state.t, &state.u, 0, nu).unwrap();
            residuals.push(out.residual);
        }
        assert!((residuals[0] - 4.0 / 3.0 * 1e-6).abs() < 0.02e-6, "{}", residuals[0]);
        let ratio = residuals[0] / residuals[1];
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn triad_transfers_close_the_books() {
        let grid = Grid::new(16).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = ic_random_spectrum(grid, 9, -5.0 / 3.0, 3.0);
        let adv = nonlinear_advection(&u);

        let mut diag = 0.0;
        for q in -1..=bank.q_max() {
            let sym = bank.shell_symbol(q).unwrap();
            let w: Vec<f64> = sym.iter().map(|&s| s * s).collect();
            diag += weighted_inner_product(&adv, &u, &w);
        }
        let mut cross = 0.0;
        for q in -1..bank.q_max() {
            let a = bank.shell_symbol(q).unwrap();
            let b = bank.shell_symbol(q + 1).unwrap();
            let w: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x * y).collect();
            cross += weighted_inner_product(&adv, &u, &w);
        }
        let total = inner_product(&adv, &u);
        let scale = trilinear_scale(&u);
        // Adjacent shells are the only overlaps, so the per-shell transfers
        // plus twice the adjacent cross terms telescope to the full form.
        assert!((diag + 2.0 * cross - total).abs() <= 1e-12 * scale);
        assert!(total.abs() <= 1e-10 * scale);
    }

    #[test]
    fn out_of_range_band_indices_are_rejected() {
        let grid = Grid::new(8).unwrap();
        let bank = DyadicFilterBank::new(grid);
        let u = SpectralField::zeros(grid);
        assert!(flux_high(&bank, &u, 0).is_err());
        assert!(flux_high(&bank, &u, bank.q_max() + 1).is_err());
        assert!(flux_low(&bank, &u, -1).is_err());
        assert!(cet_remainder(&bank, &u, 0).is_err());
        assert!(flux_samples(&bank, &u, 0.0, &[1, 99], None).is_err());
    }
}
