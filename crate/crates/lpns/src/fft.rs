//! 3-D complex FFTs built from 1-D rustfft kernels.
//!
//! Layout is the crate-wide row-major `(i1, i2, i3)` order. Each 3-D
//! transform is three contiguous batched line passes separated by
//! cache-blocked cube rotations `(i1,i2,i3) -> (i2,i3,i1)`; three rotations
//! restore the original orientation. Sign convention: `inverse3` is the
//! unnormalized synthesis `sum_k c(k) e^{+ik.x}` (spectral -> physical),
//! `forward3` the analysis with `1/n^3` (physical -> spectral).
//!
//! Real fields ride in pairs: two real fields packed as `a + i b` cost one
//! complex transform, split exactly afterwards by Hermitian mirroring.

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

fn plan(n: usize, dir: FftDirection) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, dir == FftDirection::Forward);
    let mut guard = cache.lock().unwrap();
    guard
        .entry(key)
        .or_insert_with(|| FftPlanner::new().plan_fft(n, dir))
        .clone()
}

thread_local! {
    static ROTATE_BUF: RefCell<Vec<Complex64>> = const { RefCell::new(Vec::new()) };
    static SCRATCH_BUF: RefCell<Vec<Complex64>> = const { RefCell::new(Vec::new()) };
}

const TILE: usize = 16;

/// Rotate `(i1,i2,i3) -> (i2,i3,i1)` so the former `i1` axis becomes
/// contiguous, scaling on the way out.
fn rotate_scaled(n: usize, src: &[Complex64], dst: &mut [Complex64], scale: f64) {
    let n2 = n * n;
    for i2 in 0..n {
        for i3b in (0..n).step_by(TILE) {
            for i1b in (0..n).step_by(TILE) {
                for i3 in i3b..(i3b + TILE).min(n) {
                    let out_row = (i2 * n + i3) * n;
                    let in_col = i2 * n + i3;
                    for i1 in i1b..(i1b + TILE).min(n) {
                        dst[out_row + i1] = src[i1 * n2 + in_col] * scale;
                    }
                }
            }
        }
    }
}

/// In-place 3-D FFT over all three axes, unnormalized.
pub fn fft3(n: usize, data: &mut Vec<Complex64>, dir: FftDirection) {
    fft3_scaled(n, data, dir, 1.0)
}

fn fft3_scaled(n: usize, data: &mut Vec<Complex64>, dir: FftDirection, scale: f64) {
    let len = n * n * n;
    assert_eq!(data.len(), len, "field length does not match grid");
    let fft = plan(n, dir);
    SCRATCH_BUF.with(|s| {
        let mut scratch = s.borrow_mut();
        scratch.resize(fft.get_inplace_scratch_len(), Complex64::default());
        ROTATE_BUF.with(|r| {
            let mut rot = r.borrow_mut();
            rot.resize(len, Complex64::default());
            for pass in 0..3 {
                fft.process_with_scratch(data, &mut scratch);
                let s = if pass == 2 { scale } else { 1.0 };
                rotate_scaled(n, data, &mut rot, s);
                std::mem::swap(data, &mut rot);
            }
        });
    });
}

/// Physical -> spectral: forward DFT scaled by `1/n^3`, so a field
/// `cos(k.x)` lands as `1/2` on the `+-k` modes.
pub fn forward3(n: usize, data: &mut Vec<Complex64>) {
    let scale = 1.0 / (n * n * n) as f64;
    fft3_scaled(n, data, FftDirection::Forward, scale);
}

/// Spectral -> physical: unnormalized synthesis `sum_k c(k) e^{+ik.x}`.
pub fn inverse3(n: usize, data: &mut Vec<Complex64>) {
    fft3_scaled(n, data, FftDirection::Inverse, 1.0);
}

#[inline(always)]
fn mirror_index(n: usize, idx: usize) -> usize {
    let i3 = idx % n;
    let i2 = (idx / n) % n;
    let i1 = idx / (n * n);
    let m = |i: usize| if i == 0 { 0 } else { n - i };
    (m(i1) * n + m(i2)) * n + m(i3)
}

/// Synthesize two real fields from their (Hermitian) spectra with a single
/// complex transform.
pub fn ifft_pair(n: usize, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    let mut z: Vec<Complex64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| Complex64::new(x.re - y.im, x.im + y.re))
        .collect();
    inverse3(n, &mut z);
    (z.iter().map(|c| c.re).collect(), z.iter().map(|c| c.im).collect())
}

/// Synthesize one real field from its spectrum.
pub fn ifft_real(n: usize, a: &[Complex64]) -> Vec<f64> {
    let mut z = a.to_vec();
    inverse3(n, &mut z);
    z.iter().map(|c| c.re).collect()
}

/// Analyze two real fields at once; the packed transform is split exactly
/// through the mirror modes.
pub fn fft_pair(n: usize, a: &[f64], b: &[f64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut z: Vec<Complex64> =
        a.iter().zip(b).map(|(&x, &y)| Complex64::new(x, y)).collect();
    forward3(n, &mut z);
    let len = z.len();
    let mut sa = vec![Complex64::default(); len];
    let mut sb = vec![Complex64::default(); len];
    for idx in 0..len {
        let zm = z[mirror_index(n, idx)].conj();
        let zi = z[idx];
        sa[idx] = 0.5 * (zi + zm);
        let d = zi - zm;
        sb[idx] = Complex64::new(0.5 * d.im, -0.5 * d.re);
    }
    (sa, sb)
}

/// Analyze a single real field.
pub fn fft_real(n: usize, a: &[f64]) -> Vec<Complex64> {
    let mut z: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    forward3(n, &mut z);
    z
}

/// Zero-pad a spectrum from an `n` grid onto an `o*n` grid. The Nyquist
/// plane (`k = -n/2`) is split evenly between `+-n/2` so the refined
/// synthesis of a real field stays real at the new half-step points.
pub fn pad_spectrum(n: usize, o: usize, spec: &[Complex64]) -> Vec<Complex64> {
    assert!(o >= 1);
    assert_eq!(spec.len(), n * n * n);
    if o == 1 {
        return spec.to_vec();
    }
    let m = o * n;
    let mut out = vec![Complex64::default(); m * m * m];
    // Per-axis scatter targets: index i carries k=i for i<n/2, the split
    // Nyquist at i=n/2, and k=i-n (target i + (o-1)n) above.
    let targets: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|i| {
            if i < n / 2 {
                vec![(i, 1.0)]
            } else if i == n / 2 {
                vec![(n / 2, 0.5), (m - n / 2, 0.5)]
            } else {
                vec![(i + (o - 1) * n, 1.0)]
            }
        })
        .collect();
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let v = spec[(i1 * n + i2) * n + i3];
                if v == Complex64::default() {
                    continue;
                }
                for &(t1, w1) in &targets[i1] {
                    for &(t2, w2) in &targets[i2] {
                        let row = (t1 * m + t2) * m;
                        for &(t3, w3) in &targets[i3] {
                            out[row + t3] += v * (w1 * w2 * w3);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Real values of two spectra on the `o`-times refined grid.
pub fn oversampled_pair(n: usize, o: usize, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    if o == 1 {
        return ifft_pair(n, a, b);
    }
    let pa = pad_spectrum(n, o, a);
    let pb = pad_spectrum(n, o, b);
    ifft_pair(o * n, &pa, &pb)
}

/// Real values of one spectrum on the `o`-times refined grid.
pub fn oversampled_real(n: usize, o: usize, a: &[Complex64]) -> Vec<f64> {
    if o == 1 {
        return ifft_real(n, a);
    }
    let pa = pad_spectrum(n, o, a);
    ifft_real(o * n, &pa)
}
