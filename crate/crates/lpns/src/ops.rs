//! Spectral-space operators: dealiasing, Leray projection, gradients, Fourier
//! multipliers, and the advective nonlinear term evaluated by collocation.

use rustfft::num_complex::Complex64;

use crate::fft::{fft_pair, fft_real, ifft_pair, ifft_real};
use crate::field::SpectralField;
use crate::grid::{Grid, TWO_PI};

/// Rank-two tensor in spectral space — a velocity gradient, a product
/// `u_i u_j`, or any other 3x3 field; entry `(i, j)` lives at slot `3i + j`.
pub struct TensorField {
    grid: Grid,
    comps: [Vec<Complex64>; 9],
}

impl TensorField {
    pub(crate) fn from_comps(grid: Grid, comps: [Vec<Complex64>; 9]) -> Self {
        debug_assert!(comps.iter().all(|c| c.len() == grid.len()));
        TensorField { grid, comps }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Coefficients of entry `(i, j)`.
    pub fn comp(&self, i: usize, j: usize) -> &[Complex64] {
        &self.comps[3 * i + j]
    }
}

/// Axis wavenumbers with the unpaired Nyquist mode's derivative pinned to zero.
fn derivative_wavenumbers(grid: Grid) -> Vec<i64> {
    let n = grid.n() as i64;
    grid.axis_wavenumbers()
        .into_iter()
        .map(|k| if 2 * k == -n { 0 } else { k })
        .collect()
}

/// Zeroes every coefficient failing the 2/3 rule, i.e. with `3 * |k_j| > n`
/// in any direction, and marks the field as dealiased.
pub fn dealias(u: &mut SpectralField) {
    let grid = u.grid();
    let n = grid.n();
    let kv = grid.axis_wavenumbers();
    let keep: Vec<bool> = kv.iter().map(|&k| 3 * k.abs() <= n as i64).collect();
    let divergence_free = u.divergence_free();
    for c in u.comps_mut_keep_flags() {
        let mut idx = 0;
        for &k1 in &keep {
            for &k2 in &keep {
                if k1 && k2 {
                    for &k3 in &keep {
                        if !k3 {
                            c[idx] = Complex64::ZERO;
                        }
                        idx += 1;
                    }
                } else {
                    for slot in &mut c[idx..idx + n] {
                        *slot = Complex64::ZERO;
                    }
                    idx += n;
                }
            }
        }
    }
    // The mask is diagonal in k, so an existing divergence-free property survives.
    u.set_flags(divergence_free, true);
}

/// Applies the Leray projection `u <- u - k (k . u) / |k|^2` mode by mode,
/// pinning the mean to zero. The result is divergence-free to rounding.
pub fn leray_project(u: &mut SpectralField) {
    let grid = u.grid();
    let kv = grid.axis_wavenumbers();
    let dealiased = u.dealiased();
    let [c1, c2, c3] = u.comps_mut_keep_flags();
    let mut idx = 0;
    for &k1 in &kv {
        for &k2 in &kv {
            for &k3 in &kv {
                let ksq = (k1 * k1 + k2 * k2 + k3 * k3) as f64;
                if ksq == 0.0 {
                    c1[idx] = Complex64::ZERO;
                    c2[idx] = Complex64::ZERO;
                    c3[idx] = Complex64::ZERO;
                } else {
                    let dot = (c1[idx] * k1 as f64 + c2[idx] * k2 as f64 + c3[idx] * k3 as f64)
                        / ksq;
                    c1[idx] -= dot * k1 as f64;
                    c2[idx] -= dot * k2 as f64;
                    c3[idx] -= dot * k3 as f64;
                }
                idx += 1;
            }
        }
    }
    u.set_flags(true, dealiased);
}

/// Spectral gradient: `(i, j)` entry is `i k_j` times component `i`.
///
/// The Nyquist plane `k_j = -n/2` has no conjugate partner, so a nonzero
/// derivative multiplier there would break Hermitian symmetry; the symmetric
/// convention `d/dx_j -> 0` on that plane is used instead. Dealiased fields
/// never carry Nyquist content, so for them this is vacuous.
pub fn gradient(u: &SpectralField) -> TensorField {
    let grid = u.grid();
    let kv = derivative_wavenumbers(grid);
    let mut comps: [Vec<Complex64>; 9] = std::array::from_fn(|_| Vec::new());
    for i in 0..3 {
        let src = u.comp(i);
        let mut d: [Vec<Complex64>; 3] =
            std::array::from_fn(|_| vec![Complex64::ZERO; grid.len()]);
        let mut idx = 0;
        for &k1 in &kv {
            for &k2 in &kv {
                for &k3 in &kv {
                    let ic = Complex64::new(-src[idx].im, src[idx].re);
                    d[0][idx] = ic * k1 as f64;
                    d[1][idx] = ic * k2 as f64;
                    d[2][idx] = ic * k3 as f64;
                    idx += 1;
                }
            }
        }
        let [d1, d2, d3] = d;
        comps[3 * i] = d1;
        comps[3 * i + 1] = d2;
        comps[3 * i + 2] = d3;
    }
    TensorField { grid, comps }
}

/// Advective nonlinear term `(u . grad) u`, evaluated pointwise on the
/// collocation grid and dealiased by the 2/3 rule on both input and output.
///
/// With that masking the circular convolution implied by the grid product is
/// alias-free on every retained mode: products of retained wavevectors reach
/// at most `2n/3` per axis, and their wrapped images land strictly outside
/// the retained ball.
pub fn nonlinear_advection(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let n = grid.n();
    let len = grid.len();
    let kv = grid.axis_wavenumbers();
    let keep: Vec<bool> = kv.iter().map(|&k| 3 * k.abs() <= n as i64).collect();

    // Masked coefficient copies feed every transform below.
    let mut hat: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::ZERO; len]);
    for c in 0..3 {
        let src = u.comp(c);
        let dst = &mut hat[c];
        let mut idx = 0;
        for &k1 in &keep {
            for &k2 in &keep {
                for &k3 in &keep {
                    if k1 && k2 && k3 {
                        dst[idx] = src[idx];
                    }
                    idx += 1;
                }
            }
        }
    }

    let (v1, v2) = ifft_pair(n, &hat[0], &hat[1]);
    let v3 = ifft_real(n, &hat[2]);
    let vel = [v1, v2, v3];

    let mut out: [Vec<f64>; 3] = std::array::from_fn(|_| Vec::new());
    for i in 0..3 {
        let src = &hat[i];
        let mut d1 = vec![Complex64::ZERO; len];
        let mut d2 = vec![Complex64::ZERO; len];
        let mut d3 = vec![Complex64::ZERO; len];
        let mut idx = 0;
        for &k1 in &kv {
            for &k2 in &kv {
                for &k3 in &kv {
                    let ic = Complex64::new(-src[idx].im, src[idx].re);
                    d1[idx] = ic * k1 as f64;
                    d2[idx] = ic * k2 as f64;
                    d3[idx] = ic * k3 as f64;
                    idx += 1;
                }
            }
        }
        let (g1, g2) = ifft_pair(n, &d1, &d2);
        let g3 = ifft_real(n, &d3);
        let mut acc = vec![0.0; len];
        for x in 0..len {
            acc[x] = vel[0][x] * g1[x] + vel[1][x] * g2[x] + vel[2][x] * g3[x];
        }
        out[i] = acc;
    }

    let (a1, a2) = fft_pair(n, &out[0], &out[1]);
    let a3 = fft_real(n, &out[2]);
    let mut adv = SpectralField::from_comps(grid, [a1, a2, a3]);
    dealias(&mut adv);
    adv.set_flags(false, true);
    adv
}

/// The same nonlinear term rearranged as `d_j (u_i u_j)`. For solenoidal
/// input the two arrangements agree exactly — the grid product is alias-free
/// under the 2/3 mask either way, and they differ by `u (div u)` — but this
/// one needs five packed transforms per evaluation instead of nine, so the
/// time stepper uses it for its stage right-hand sides. The advective
/// arrangement above remains the reference form for diagnostics and for
/// comparison against the convolution oracle.
pub fn nonlinear_divergence_form(u: &SpectralField) -> SpectralField {
    let grid = u.grid();
    let n = grid.n();
    let len = grid.len();
    let keep: Vec<bool> =
        grid.axis_wavenumbers().iter().map(|&k| 3 * k.abs() <= n as i64).collect();

    let mut hat: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::ZERO; len]);
    for c in 0..3 {
        let src = u.comp(c);
        let dst = &mut hat[c];
        let mut idx = 0;
        for &k1 in &keep {
            for &k2 in &keep {
                for &k3 in &keep {
                    if k1 && k2 && k3 {
                        dst[idx] = src[idx];
                    }
                    idx += 1;
                }
            }
        }
    }

    let (v1, v2) = ifft_pair(n, &hat[0], &hat[1]);
    let v3 = ifft_real(n, &hat[2]);

    // The six distinct entries of the symmetric product tensor.
    let mut w11 = vec![0.0; len];
    let mut w22 = vec![0.0; len];
    let mut w33 = vec![0.0; len];
    let mut w12 = vec![0.0; len];
    let mut w13 = vec![0.0; len];
    let mut w23 = vec![0.0; len];
    for x in 0..len {
        let (a, b, c) = (v1[x], v2[x], v3[x]);
        w11[x] = a * a;
        w22[x] = b * b;
        w33[x] = c * c;
        w12[x] = a * b;
        w13[x] = a * c;
        w23[x] = b * c;
    }
    let (s11, s22) = fft_pair(n, &w11, &w22);
    let (s33, s12) = fft_pair(n, &w33, &w12);
    let (s13, s23) = fft_pair(n, &w13, &w23);
    let rows: [[&[Complex64]; 3]; 3] =
        [[&s11, &s12, &s13], [&s12, &s22, &s23], [&s13, &s23, &s33]];

    let kv = derivative_wavenumbers(grid);
    let mut comps: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::ZERO; len]);
    for i in 0..3 {
        let row = rows[i];
        let dst = &mut comps[i];
        let mut idx = 0;
        for &k1 in &kv {
            for &k2 in &kv {
                for &k3 in &kv {
                    let s = row[0][idx] * k1 as f64
                        + row[1][idx] * k2 as f64
                        + row[2][idx] * k3 as f64;
                    dst[idx] = Complex64::new(-s.im, s.re);
                    idx += 1;
                }
            }
        }
    }
    let mut adv = SpectralField::from_comps(grid, comps);
    dealias(&mut adv);
    adv.set_flags(false, true);
    adv
}

/// Multiplies every coefficient by the real radial symbol `w` (one value per
/// mode index). Divergence-freeness and dealiasing both survive because the
/// multiplier is diagonal in k and never enlarges the support.
pub fn apply_multiplier(u: &SpectralField, w: &[f64]) -> SpectralField {
    let grid = u.grid();
    assert_eq!(w.len(), grid.len());
    let mut comps: [Vec<Complex64>; 3] = std::array::from_fn(|_| Vec::with_capacity(grid.len()));
    for c in 0..3 {
        comps[c].extend(u.comp(c).iter().zip(w).map(|(&z, &s)| z * s));
    }
    let mut out = SpectralField::from_comps(grid, comps);
    out.set_flags(u.divergence_free(), u.dealiased());
    out
}

/// Integral `(1/(2 pi)^3 scaling already folded in) int a . b dx` of two real
/// vector fields given spectrally, via Parseval: `(2 pi)^3 sum_k Re <a, b>`.
pub fn inner_product(a: &SpectralField, b: &SpectralField) -> f64 {
    assert_eq!(a.grid().n(), b.grid().n());
    let mut sum = 0.0;
    for c in 0..3 {
        let (x, y) = (a.comp(c), b.comp(c));
        for idx in 0..x.len() {
            sum += x[idx].re * y[idx].re + x[idx].im * y[idx].im;
        }
    }
    TWO_PI.powi(3) * sum
}

/// Same integral with a real per-mode weight, `(2 pi)^3 sum_k w(k) Re <a, b>`.
pub fn weighted_inner_product(a: &SpectralField, b: &SpectralField, w: &[f64]) -> f64 {
    assert_eq!(a.grid().n(), b.grid().n());
    assert_eq!(w.len(), a.grid().len());
    let mut sum = 0.0;
    for c in 0..3 {
        let (x, y) = (a.comp(c), b.comp(c));
        for idx in 0..x.len() {
            sum += w[idx] * (x[idx].re * y[idx].re + x[idx].im * y[idx].im);
        }
    }
    TWO_PI.powi(3) * sum
}
