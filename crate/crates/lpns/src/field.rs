//! Velocity fields in spectral and physical representation.
//!
//! A `SpectralField` stores the three Cartesian components of `u` as flat
//! complex coefficient arrays in DFT index order, together with two pieces
//! of bookkeeping: whether the field is (numerically) divergence-free and
//! whether it has been through the 2/3-rule mask. Physical values are the
//! synthesis `u(x) = sum_k uhat(k) e^{ik.x}`, real because coefficients
//! keep the Hermitian symmetry `uhat(-k) = conj(uhat(k))`.

use crate::fft;
use crate::grid::{Grid, TWO_PI};
use rustfft::num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Grid,
    comps: [Vec<Complex64>; 3],
    divergence_free: bool,
    dealiased: bool,
}

#[derive(Clone, Debug)]
pub struct PhysicalField {
    grid: Grid,
    comps: [Vec<f64>; 3],
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        let len = grid.len();
        SpectralField {
            grid,
            comps: [vec![Complex64::default(); len], vec![Complex64::default(); len], vec![
                Complex64::default();
                len
            ]],
            divergence_free: true,
            dealiased: true,
        }
    }

    pub(crate) fn from_comps(grid: Grid, comps: [Vec<Complex64>; 3]) -> Self {
        debug_assert!(comps.iter().all(|c| c.len() == grid.len()));
        SpectralField { grid, comps, divergence_free: false, dealiased: false }
    }

    #[inline(always)]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline(always)]
    pub fn comp(&self, j: usize) -> &[Complex64] {
        &self.comps[j]
    }

    /// Raw mutable access clears both flags; callers re-establish them via
    /// the projection/dealias operators or `assume_flags`.
    pub fn comps_mut(&mut self) -> &mut [Vec<Complex64>; 3] {
        self.divergence_free = false;
        self.dealiased = false;
        &mut self.comps
    }

    pub(crate) fn comps_mut_keep_flags(&mut self) -> &mut [Vec<Complex64>; 3] {
        &mut self.comps
    }

    pub fn divergence_free(&self) -> bool {
        self.divergence_free
    }

    pub fn dealiased(&self) -> bool {
        self.dealiased
    }

    pub(crate) fn set_flags(&mut self, divergence_free: bool, dealiased: bool) {
        self.divergence_free = divergence_free;
        self.dealiased = dealiased;
    }

    /// Declare flags externally established (measured, or known by
    /// construction). Prefer the operators where possible.
    pub fn assume_flags(&mut self, divergence_free: bool, dealiased: bool) {
        self.set_flags(divergence_free, dealiased);
    }

    pub fn mode(&self, k: [i64; 3]) -> [Complex64; 3] {
        let idx = self.grid.mode_index(k);
        [self.comps[0][idx], self.comps[1][idx], self.comps[2][idx]]
    }

    /// Set `uhat(k) = v` and `uhat(-k) = conj(v)`. `k` must not be
    /// self-conjugate (no zero/Nyquist-only wavevector).
    pub fn set_conjugate_pair(&mut self, k: [i64; 3], v: [Complex64; 3]) {
        let idx = self.grid.mode_index(k);
        let mir = self.grid.mirror(idx);
        assert_ne!(idx, mir, "mode {k:?} is self-conjugate; set it directly as a real value");
        for j in 0..3 {
            self.comps[j][idx] = v[j];
            self.comps[j][mir] = v[j].conj();
        }
        self.divergence_free = false;
        self.dealiased = false;
    }

    /// Zero the mean mode of every component.
    pub fn pin_mean_zero(&mut self) {
        for c in &mut self.comps {
            c[0] = Complex64::default();
        }
    }

    /// `||u||_2^2 = (2pi)^3 sum_k |uhat(k)|^2`.
    pub fn energy(&self) -> f64 {
        let mut s = 0.0;
        for c in &self.comps {
            for v in c {
                s += v.norm_sqr();
            }
        }
        s * TWO_PI.powi(3)
    }

    /// `||grad u||_2^2 = (2pi)^3 sum_k |k|^2 |uhat(k)|^2`.
    pub fn enstrophy(&self) -> f64 {
        let g = self.grid;
        let n = g.n();
        let ks = g.axis_wavenumbers();
        let mut s = 0.0;
        for i1 in 0..n {
            let k1 = (ks[i1] * ks[i1]) as f64;
            for i2 in 0..n {
                let k12 = k1 + (ks[i2] * ks[i2]) as f64;
                let row = g.index(i1, i2, 0);
                for i3 in 0..n {
                    let k2 = k12 + (ks[i3] * ks[i3]) as f64;
                    let idx = row + i3;
                    let m = self.comps[0][idx].norm_sqr()
                        + self.comps[1][idx].norm_sqr()
                        + self.comps[2][idx].norm_sqr();
                    s += k2 * m;
                }
            }
        }
        s * TWO_PI.powi(3)
    }

    /// Largest coefficient magnitude over all components and modes.
    pub fn max_coeff(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .fold(0.0f64, |m, v| m.max(v.norm()))
    }

    /// `max_k |k . uhat(k)| / max_k |uhat(k)|`, the normalized divergence
    /// defect (0 for the zero field).
    pub fn divergence_defect(&self) -> f64 {
        let g = self.grid;
        let mut worst = 0.0f64;
        let mut amp = 0.0f64;
        for idx in 0..g.len() {
            let k = g.wavevec(idx);
            let d = self.comps[0][idx] * k[0] as f64
                + self.comps[1][idx] * k[1] as f64
                + self.comps[2][idx] * k[2] as f64;
            worst = worst.max(d.norm());
            let m = self.comps[0][idx].norm_sqr()
                + self.comps[1][idx].norm_sqr()
                + self.comps[2][idx].norm_sqr();
            amp = amp.max(m);
        }
        if amp == 0.0 {
            0.0
        } else {
            worst / amp.sqrt()
        }
    }

    /// `max |uhat(k) - conj(uhat(-k))| / max |uhat|`; zero for a real field.
    pub fn hermitian_defect(&self) -> f64 {
        let g = self.grid;
        let mut worst = 0.0f64;
        let mut amp = 0.0f64;
        for idx in 0..g.len() {
            let mir = g.mirror(idx);
            for c in &self.comps {
                worst = worst.max((c[idx] - c[mir].conj()).norm());
                amp = amp.max(c[idx].norm());
            }
        }
        if amp == 0.0 {
            0.0
        } else {
            worst / amp
        }
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|v| v.re.is_finite() && v.im.is_finite()))
    }

    /// Synthesis to collocation values. Costs two packed inverse FFTs.
    pub fn to_physical(&self) -> PhysicalField {
        let n = self.grid.n();
        let (v0, v1) = fft::ifft_pair(n, &self.comps[0], &self.comps[1]);
        let v2 = fft::ifft_real(n, &self.comps[2]);
        PhysicalField { grid: self.grid, comps: [v0, v1, v2] }
    }

    /// Largest pointwise difference of coefficients against `other`.
    pub fn max_diff(&self, other: &SpectralField) -> f64 {
        assert_eq!(self.grid, other.grid);
        let mut worst = 0.0f64;
        for j in 0..3 {
            for (a, b) in self.comps[j].iter().zip(&other.comps[j]) {
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }
}

impl PhysicalField {
    pub fn zeros(grid: Grid) -> Self {
        let len = grid.len();
        PhysicalField { grid, comps: [vec![0.0; len], vec![0.0; len], vec![0.0; len]] }
    }

    /// Sample a vector-valued function of position on the grid.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Self {
        let n = grid.n();
        let mut out = PhysicalField::zeros(grid);
        for i1 in 0..n {
            let x = grid.x_of(i1);
            for i2 in 0..n {
                let y = grid.x_of(i2);
                for i3 in 0..n {
                    let z = grid.x_of(i3);
                    let v = f(x, y, z);
                    let idx = grid.index(i1, i2, i3);
                    for j in 0..3 {
                        out.comps[j][idx] = v[j];
                    }
                }
            }
        }
        out
    }

    #[inline(always)]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline(always)]
    pub fn comp(&self, j: usize) -> &[f64] {
        &self.comps[j]
    }

    pub fn comps_mut(&mut self) -> &mut [Vec<f64>; 3] {
        &mut self.comps
    }

    /// Analysis to spectral coefficients. Flags start cleared; apply the
    /// projection/dealias operators to re-establish them.
    pub fn to_spectral(&self) -> SpectralField {
        let n = self.grid.n();
        let (s0, s1) = fft::fft_pair(n, &self.comps[0], &self.comps[1]);
        let s2 = fft::fft_real(n, &self.comps[2]);
        SpectralField::from_comps(self.grid, [s0, s1, s2])
    }

    /// Pointwise Euclidean magnitude maximum on the collocation grid.
    pub fn max_magnitude(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.grid.len() {
            let s = self.comps[0][i] * self.comps[0][i]
                + self.comps[1][i] * self.comps[1][i]
                + self.comps[2][i] * self.comps[2][i];
            m = m.max(s);
        }
        m.sqrt()
    }
}
