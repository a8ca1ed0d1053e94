//! Initial conditions: the Taylor-Green vortex (assembled exactly in spectral
//! space) and seeded random spectra with a prescribed radial amplitude law.

use rustfft::num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::SpectralField;
use crate::grid::Grid;
use crate::ops::leray_project;

/// `u = A (sin x1 cos x2, -cos x1 sin x2, 0)`: eight active modes at
/// `|k| = sqrt(2)`, exactly divergence-free, written directly as coefficients.
pub fn ic_taylor_green(grid: Grid, amplitude: f64) -> SpectralField {
    let mut u = SpectralField::zeros(grid);
    let q = 0.25 * amplitude;
    // sin a cos b = sum of -i/4 exponentials at (±1,±1); cos a sin b likewise.
    u.set_conjugate_pair(
        [1, 1, 0],
        [Complex64::new(0.0, -q), Complex64::new(0.0, q), Complex64::ZERO],
    );
    u.set_conjugate_pair(
        [1, -1, 0],
        [Complex64::new(0.0, -q), Complex64::new(0.0, -q), Complex64::ZERO],
    );
    u.set_flags(true, true);
    u
}

/// Uniform draw in [0,1) from the next 53 bits of the stream.
fn unit(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Random-phase field with amplitude law
/// `|uhat(k)| ∝ |k|^{slope/2} exp(-(|k|/k_peak)^2)`, Hermitian by
/// construction, truncated to the modes the dealiased evolution retains,
/// Leray-projected, mean-free, and normalized to `||u||_2 = 1`.
///
/// The stream is consumed in a fixed order — ascending mode index, skipping
/// indices whose conjugate partner was already visited, three phase draws per
/// visited mode — so a seed pins the field bit-for-bit.
pub fn ic_random_spectrum(grid: Grid, seed: u64, slope: f64, k_peak: f64) -> SpectralField {
    let mut key = [0u8; 32];
    for (chunk, byte) in key.chunks_exact_mut(8).zip(std::iter::repeat(seed.to_le_bytes())) {
        chunk.copy_from_slice(&byte);
    }
    let mut rng = ChaCha12Rng::from_seed(key);

    let mut u = SpectralField::zeros(grid);
    let ksq = grid.k_squared_table();
    {
        let comps = u.comps_mut();
        for idx in 0..grid.len() {
            let m = grid.mirror(idx);
            if m < idx || ksq[idx] == 0.0 {
                continue;
            }
            let r = ksq[idx].sqrt();
            let amp = r.powf(0.5 * slope) * (-ksq[idx] / (k_peak * k_peak)).exp();
            for c in 0..3 {
                if m == idx {
                    // Self-conjugate plane: a real coefficient, random sign.
                    let sign = if unit(&mut rng) < 0.5 { -1.0 } else { 1.0 };
                    comps[c][idx] = Complex64::new(sign * amp, 0.0);
                } else {
                    let theta = std::f64::consts::TAU * unit(&mut rng);
                    let z = Complex64::new(amp * theta.cos(), amp * theta.sin());
                    comps[c][idx] = z;
                    comps[c][m] = z.conj();
                }
            }
        }
    }
    crate::ops::dealias(&mut u);
    leray_project(&mut u);
    u.pin_mean_zero();
    let scale = 1.0 / u.energy().sqrt();
    for c in u.comps_mut_keep_flags() {
        for z in c.iter_mut() {
            *z *= scale;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PhysicalField;

    #[test]
    fn taylor_green_matches_its_closed_form() {
        let grid = Grid::new(16).unwrap();
        let a = 1.7;
        let u = ic_taylor_green(grid, a);

        let pi3 = std::f64::consts::PI.powi(3);
        assert!((u.energy() - 4.0 * pi3 * a * a).abs() < 1e-13 * u.energy());
        assert_eq!(u.divergence_defect(), 0.0);
        assert!(u.divergence_free() && u.dealiased());

        let sampled = PhysicalField::from_fn(grid, |x, y, _| {
            [a * x.sin() * y.cos(), -a * x.cos() * y.sin(), 0.0]
        });
        let synth = u.to_physical();
        for c in 0..3 {
            for idx in 0..grid.len() {
                assert!((synth.comp(c)[idx] - sampled.comp(c)[idx]).abs() < 1e-13);
            }
        }

        let mut projected = u.clone();
        leray_project(&mut projected);
        assert_eq!(projected.max_diff(&u), 0.0);
    }

    #[test]
    fn random_spectrum_is_deterministic_unit_norm_and_solenoidal() {
        let grid = Grid::new(16).unwrap();
        let a = ic_random_spectrum(grid, 42, -5.0 / 3.0, 3.0);
        let b = ic_random_spectrum(grid, 42, -5.0 / 3.0, 3.0);
        assert_eq!(a.max_diff(&b), 0.0);

        assert!((a.energy().sqrt() - 1.0).abs() < 1e-12);
        assert!(a.divergence_defect() < 1e-12);
        assert!(a.hermitian_defect() < 1e-14);
        assert_eq!(a.mode([0, 0, 0]), [Complex64::ZERO; 3]);

        let c = ic_random_spectrum(grid, 43, -5.0 / 3.0, 3.0);
        assert!(c.max_diff(&a) > 1e-3);
    }

    #[test]
    fn random_spectrum_amplitudes_follow_the_radial_law() {
        let grid = Grid::new(16).unwrap();
        let slope = -2.0;
        let k_peak = 4.0;
        let u = ic_random_spectrum(grid, 7, slope, k_peak);

        // The Leray projection shrinks each mode by a direction-dependent
        // factor in [0,1], so compare the per-radius maxima (some mode at
        // each radius is nearly transverse and survives almost intact)
        // against the prescribed envelope.
        let ksq = grid.k_squared_table();
        let profile = |r: f64| r.powf(0.5 * slope) * (-r * r / (k_peak * k_peak)).exp();
        let peak_at = |r2: f64| {
            let mut best = 0.0f64;
            for idx in 1..grid.len() {
                if (ksq[idx] - r2).abs() < 1e-9 {
                    let amp = (0..3)
                        .map(|c| u.comp(c)[idx].norm())
                        .fold(0.0, f64::max);
                    best = best.max(amp);
                }
            }
            best
        };
        let measured = peak_at(4.0) / peak_at(36.0);
        let law = profile(2.0) / profile(6.0);
        assert!(
            measured > law / 3.0 && measured < law * 3.0,
            "radial decay ratio {measured} vs prescribed {law}"
        );
    }
}
