//! Deterministic field builders shared by unit tests.

use rustfft::num_complex::Complex64;

use crate::field::SpectralField;
use crate::grid::Grid;
use crate::ops::{dealias, leray_project};

/// Fills every mode from a smooth deterministic formula, enforces Hermitian
/// symmetry, then dealiases, projects, and pins the mean.
pub fn dense_field(grid: Grid) -> SpectralField {
    let mut u = SpectralField::zeros(grid);
    {
        let comps = u.comps_mut();
        for c in 0..3 {
            for idx in 0..grid.len() {
                let k = grid.wavevec(idx);
                let ksq = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
                let t = 0.37 * idx as f64 + 1.1 * c as f64;
                comps[c][idx] = Complex64::new(t.sin(), (0.23 * idx as f64 - 0.5 * c as f64).cos())
                    / (1.0 + ksq);
            }
        }
        for c in 0..3 {
            for idx in 0..grid.len() {
                let m = grid.mirror(idx);
                if m < idx {
                    continue;
                }
                let avg = 0.5 * (comps[c][idx] + comps[c][m].conj());
                if m == idx {
                    comps[c][idx] = Complex64::new(avg.re, 0.0);
                } else {
                    comps[c][idx] = avg;
                    comps[c][m] = avg.conj();
                }
            }
        }
    }
    dealias(&mut u);
    leray_project(&mut u);
    u.pin_mean_zero();
    u
}
