//! The Taylor-Green vortex is an exact Navier-Stokes solution on the
//! periodic box: the nonlinear term is a pure pressure gradient, so the
//! velocity just decays as `exp(-2 nu t)` mode by mode. That makes it the
//! sharpest possible end-to-end solver check — every spectral coefficient
//! must track the closed form, not just integral quantities.

use lpns::{ic_taylor_green, Grid, Result, SolverState, Stepper};

fn main() -> Result<()> {
    let grid = Grid::new(16)?;
    let nu = 1.0;
    let dt = 1e-3;
    let u0 = ic_taylor_green(grid, 1.0);
    let e0 = u0.energy();

    let stepper = Stepper::new(grid, nu, dt)?;
    let mut state = SolverState::new(u0.clone());

    println!("Taylor-Green, n = 16, nu = {nu}, dt = {dt}");
    println!("{:>6} {:>13} {:>13} {:>10} {:>10}", "t", "energy", "exact", "rel err", "coeff err");
    for step in 1..=400u32 {
        stepper.step(&mut state)?;
        if step % 50 != 0 {
            continue;
        }
        let exact = e0 * (-4.0 * nu * state.t).exp();
        let energy = state.u.energy();

        // Scale the initial coefficients down and compare the whole field.
        let mut reference = u0.clone();
        let factor = (-2.0 * nu * state.t).exp();
        for c in reference.comps_mut() {
            for z in c.iter_mut() {
                *z *= factor;
            }
        }
        let coeff_err = state.u.max_diff(&reference) / reference.max_coeff();

        println!(
            "{:>6.3} {:>13.6e} {:>13.6e} {:>10.2e} {:>10.2e}",
            state.t,
            energy,
            exact,
            (energy - exact).abs() / exact,
            coeff_err
        );
    }
    println!("\nboth error columns sit at rounding level: the integrating factor");
    println!("applies the viscous decay exactly and the projected nonlinear term");
    println!("vanishes identically on this flow.");
    Ok(())
}
