//! Uniform collocation grid on `[0, 2pi)^3` and its integer wavenumbers.
//!
//! Index convention: a scalar field is a flat `Vec` of length `n^3`, row
//! major over `(i1, i2, i3)` with `i3` fastest. DFT index `i` on each axis
//! carries the signed wavenumber `k = i` for `i < n/2` and `k = i - n`
//! otherwise, so `k` ranges over `{-n/2, ..., n/2 - 1}`.

use crate::{Error, Result};
use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// Grid geometry: resolution, spacing `h = 2pi/n`, and the quadrature
/// weight `w = h^3` that makes `sum_x |v(x)|^2 w` match the integral of
/// the trigonometric interpolant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    n: usize,
    h: f64,
    weight: f64,
}

impl Grid {
    /// `n` must be a power of two in `[8, 512]`.
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_power_of_two() || !(8..=512).contains(&n) {
            return Err(Error::Config(format!(
                "grid size must be a power of two in [8, 512], got {n}"
            )));
        }
        let h = TWO_PI / n as f64;
        Ok(Grid { n, h, weight: h * h * h })
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline(always)]
    pub fn spacing(&self) -> f64 {
        self.h
    }

    #[inline(always)]
    pub fn weight(&self) -> f64 {
        self.weight
    }

    #[inline(always)]
    pub fn index(&self, i1: usize, i2: usize, i3: usize) -> usize {
        (i1 * self.n + i2) * self.n + i3
    }

    /// Signed wavenumber carried by DFT axis index `i`.
    #[inline(always)]
    pub fn k_of(&self, i: usize) -> i64 {
        debug_assert!(i < self.n);
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Axis index carrying wavenumber `k` (wraps negatives).
    #[inline(always)]
    pub fn idx_of(&self, k: i64) -> usize {
        let n = self.n as i64;
        debug_assert!(k >= -n / 2 && k < n / 2);
        k.rem_euclid(n) as usize
    }

    /// Flat index of the mode `k = (k1, k2, k3)`.
    pub fn mode_index(&self, k: [i64; 3]) -> usize {
        self.index(self.idx_of(k[0]), self.idx_of(k[1]), self.idx_of(k[2]))
    }

    /// Signed wavevector of a flat index.
    pub fn wavevec(&self, idx: usize) -> [i64; 3] {
        let n = self.n;
        let i3 = idx % n;
        let i2 = (idx / n) % n;
        let i1 = idx / (n * n);
        [self.k_of(i1), self.k_of(i2), self.k_of(i3)]
    }

    /// Flat index of the mirror mode `-k`.
    #[inline(always)]
    pub fn mirror(&self, idx: usize) -> usize {
        let n = self.n;
        let i3 = idx % n;
        let i2 = (idx / n) % n;
        let i1 = idx / (n * n);
        let m = |i: usize| if i == 0 { 0 } else { n - i };
        self.index(m(i1), m(i2), m(i3))
    }

    /// The signed wavenumbers along one axis, in DFT index order.
    pub fn axis_wavenumbers(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.k_of(i)).collect()
    }

    /// `|k|^2` for every flat index, in index order.
    pub fn k_squared_table(&self) -> Vec<f64> {
        let ks = self.axis_wavenumbers();
        let mut out = Vec::with_capacity(self.len());
        for &k1 in &ks {
            for &k2 in &ks {
                for &k3 in &ks {
                    out.push((k1 * k1 + k2 * k2 + k3 * k3) as f64);
                }
            }
        }
        out
    }

    /// Physical coordinate of grid point `i` on one axis.
    #[inline(always)]
    pub fn x_of(&self, i: usize) -> f64 {
        self.h * i as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_n8() {
        let g = Grid::new(8).unwrap();
        assert_eq!(g.len(), 512);
        assert!((g.spacing() - 0.7853981633974483).abs() < 1e-16);
        assert!((g.weight() - (PI / 4.0).powi(3)).abs() < 1e-16);
        let ks = g.axis_wavenumbers();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn wavenumber_range_n32() {
        let g = Grid::new(32).unwrap();
        let ks = g.axis_wavenumbers();
        assert_eq!(*ks.iter().min().unwrap(), -16);
        assert_eq!(*ks.iter().max().unwrap(), 15);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(12).is_err());
        assert!(Grid::new(4).is_err());
        assert!(Grid::new(1024).is_err());
        assert!(Grid::new(512).is_ok());
    }

    #[test]
    fn mode_and_mirror_roundtrip() {
        let g = Grid::new(8).unwrap();
        for idx in 0..g.len() {
            let k = g.wavevec(idx);
            assert_eq!(g.mode_index(k), idx);
            let neg = [-k[0], -k[1], -k[2]];
            // -(-4) = 4 wraps back to the -4 slot on an n=8 axis.
            let wrapped: Vec<i64> =
                neg.iter().map(|&x| if x == 4 { -4 } else { x }).collect();
            assert_eq!(g.mirror(idx), g.mode_index([wrapped[0], wrapped[1], wrapped[2]]));
            assert_eq!(g.mirror(g.mirror(idx)), idx);
        }
    }
}
