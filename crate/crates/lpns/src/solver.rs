//! Time integration: fourth-order Runge-Kutta on the integrating-factor
//! formulation, which applies the viscous semigroup `exp(-nu |k|^2 tau)`
//! exactly and steps only the projected, dealiased advection term.


use crate::field::SpectralField;
use crate::grid::Grid;
use crate::ops::{inner_product, leray_project, nonlinear_advection, nonlinear_divergence_form};
use crate::{Error, Result};

/// Velocity field plus step bookkeeping.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub u: SpectralField,
    pub t: f64,
    pub step_count: u64,
}

impl SolverState {
    pub fn new(u: SpectralField) -> Self {
        SolverState { u, t: 0.0, step_count: 0 }
    }
}

/// `-P[(u . grad) u]`, dealiased: the right-hand side seen by the stepper.
pub fn nonlinear_term(u: &SpectralField) -> SpectralField {
    let mut f = nonlinear_advection(u);
    leray_project(&mut f);
    for c in f.comps_mut_keep_flags() {
        for z in c.iter_mut() {
            *z = -*z;
        }
    }
    f
}

/// Same right-hand side via the divergence arrangement of the product, which
/// costs five packed transforms per stage instead of nine. Every stage value
/// the integrator feeds in is solenoidal (projected data under diagonal
/// multipliers), so the two forms agree to rounding.
fn stage_rhs(u: &SpectralField) -> SpectralField {
    let mut f = nonlinear_divergence_form(u);
    leray_project(&mut f);
    for c in f.comps_mut_keep_flags() {
        for z in c.iter_mut() {
            *z = -*z;
        }
    }
    f
}

/// Fixed-step integrator for one `(nu, dt)` pair; the viscous exponentials
/// are tabulated once.
pub struct Stepper {
    grid: Grid,
    nu: f64,
    dt: f64,
    e_half: Vec<f64>,
    e_full: Vec<f64>,
}

impl Stepper {
    pub fn new(grid: Grid, nu: f64, dt: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::Config(format!("viscosity must be finite and >= 0, got {nu}")));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Config(format!("time step must be finite and > 0, got {dt}")));
        }
        let ksq = grid.k_squared_table();
        let e_half = ksq.iter().map(|&s| (-0.5 * nu * s * dt).exp()).collect();
        let e_full = ksq.iter().map(|&s| (-nu * s * dt).exp()).collect();
        Ok(Stepper { grid, nu, dt, e_half, e_full })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances one step. On a non-finite result the state is left at the
    /// last good step and an error describing when it failed is returned.
    pub fn step(&self, state: &mut SolverState) -> Result<()> {
        debug_assert_eq!(state.u.grid().n(), self.grid.n());
        let h = self.dt;
        let a = &state.u;

        let k1 = stage_rhs(a);
        let b = self.stage(a, &k1, 0.5 * h, true);
        let k2 = stage_rhs(&b);
        let c = self.stage(a, &k2, 0.5 * h, false);
        let k3 = stage_rhs(&c);
        let d = self.stage_full(a, &k3, h);
        let k4 = stage_rhs(&d);

        let mut next = SpectralField::zeros(self.grid);
        {
            let nx = next.comps_mut_keep_flags();
            for ci in 0..3 {
                let (ac, k1c, k2c, k3c, k4c) =
                    (a.comp(ci), k1.comp(ci), k2.comp(ci), k3.comp(ci), k4.comp(ci));
                for idx in 0..self.grid.len() {
                    let ef = self.e_full[idx];
                    let eh = self.e_half[idx];
                    nx[ci][idx] = ef * (ac[idx] + (h / 6.0) * k1c[idx])
                        + (h / 6.0)
                            * (eh * 2.0 * (k2c[idx] + k3c[idx]) + k4c[idx]);
                }
            }
        }
        leray_project(&mut next);
        if !next.is_finite() {
            return Err(Error::Numerical(format!(
                "velocity became non-finite during step {} (t = {:.6})",
                state.step_count + 1,
                state.t + h
            )));
        }
        state.u = next;
        state.t += h;
        state.step_count += 1;
        Ok(())
    }

    /// `E_half (a + w k)` for the half-step stages; with `premix` the
    /// increment is added before the semigroup, otherwise after.
    fn stage(&self, a: &SpectralField, k: &SpectralField, w: f64, premix: bool) -> SpectralField {
        let mut out = SpectralField::zeros(self.grid);
        let oc = out.comps_mut_keep_flags();
        for ci in 0..3 {
            let (ac, kc) = (a.comp(ci), k.comp(ci));
            for idx in 0..self.grid.len() {
                let eh = self.e_half[idx];
                oc[ci][idx] = if premix {
                    eh * (ac[idx] + w * kc[idx])
                } else {
                    eh * ac[idx] + w * kc[idx]
                };
            }
        }
        out
    }

    /// `E_full a + h E_half k` for the terminal stage.
    fn stage_full(&self, a: &SpectralField, k: &SpectralField, h: f64) -> SpectralField {
        let mut out = SpectralField::zeros(self.grid);
        let oc = out.comps_mut_keep_flags();
        for ci in 0..3 {
            let (ac, kc) = (a.comp(ci), k.comp(ci));
            for idx in 0..self.grid.len() {
                oc[ci][idx] = self.e_full[idx] * ac[idx] + h * self.e_half[idx] * kc[idx];
            }
        }
        out
    }
}

/// Advective CFL guard: `cfl * h / ||u||_inf`, capped at `dt_max`.
pub fn cfl_dt(u: &SpectralField, cfl: f64, dt_max: f64) -> Result<f64> {
    let sup = crate::norm::norm_lp(u, crate::norm::Exponent::Inf, 2)?;
    Ok(dt_max.min(cfl * u.grid().spacing() / sup.max(1e-8)))
}

/// Trapezoid-rule defect of the energy balance
/// `e(t2) - e(t1) + int (2 nu ||grad u||_2^2 + 2 (adv, u)) = 0`
/// between two states, normalized by the largest participating term; decays
/// like the square of the gap for smooth data.
pub fn energy_balance_residual(
    u1: &SpectralField,
    t1: f64,
    u2: &SpectralField,
    t2: f64,
    nu: f64,
) -> f64 {
    let gap = t2 - t1;
    let a = u2.energy() - u1.energy();
    let b = gap * nu * (u1.enstrophy() + u2.enstrophy());
    let c = gap * (inner_product(&nonlinear_advection(u1), u1)
        + inner_product(&nonlinear_advection(u2), u2));
    (a + b + c).abs() / a.abs().max(b.abs()).max(c.abs()).max(f64::MIN_POSITIVE)
}
