//! Anatomy of the dyadic filter bank: smooth shell symbols, the partition
//! of unity they telescope to, exact reconstruction, and the Bernstein
//! quotients that tie shell sup-norms to shell energies.

use lpns::norm::{norm_lp, Exponent};
use lpns::{ic_random_spectrum, DyadicFilterBank, Grid, Result};

fn main() -> Result<()> {
    let grid = Grid::new(32)?;
    let bank = DyadicFilterBank::new(grid);
    println!("n = 32: shells q = -1 (mean) through q_max = {}", bank.q_max());

    // Symbol profile along the k1 axis. Each row should read like a smooth
    // bump centered on |k| ~ 2^q, and each column should sum to one.
    println!("\nshell symbols phi(|k|/2^q) on k = (k1, 0, 0):");
    print!("{:>4}", "k1");
    for q in -1..=bank.q_max() {
        print!(" {:>8}", format!("q={q}"));
    }
    println!();
    // 7, 13, 14 sit inside the smoothstep transition zones (0.75, 1) * 2^q.
    for k1 in [0i64, 1, 2, 3, 4, 7, 8, 12, 13, 14, 16] {
        let idx = grid.mode_index([k1, 0, 0]);
        print!("{k1:>4}");
        let mut total = 0.0;
        for q in -1..=bank.q_max() {
            let w = bank.shell_symbol(q)?[idx];
            total += w;
            print!(" {:>8.5}", w);
        }
        println!("   sum = {total:.15}");
    }

    let u = ic_random_spectrum(grid, 11, -5.0 / 3.0, 4.0);
    let total = u.energy();
    println!("\nrandom field, seed 11: energy {total:.8e}");
    println!("{:>4} {:>13} {:>10} {:>12}", "q", "||u_q||^2", "share", "bernstein");
    let mut sum = 0.0;
    for q in -1..=bank.q_max() {
        let shell = bank.shell_project(&u, q)?;
        let e = shell.energy();
        sum += e;
        if e == 0.0 {
            println!("{q:>4} {e:>13.6e} {:>10.4} {:>12}", 0.0, "-");
            continue;
        }
        // ||u_q||_inf / (2^{3q/2} ||u_q||_2) stays O(1) across shells.
        let ratio = bank.bernstein_ratio(&shell, q, Exponent::P(2.0), Exponent::Inf)?;
        println!("{q:>4} {e:>13.6e} {:>10.4} {ratio:>12.4}", e / total);
    }
    println!("sum of shell energies = {sum:.8e} (shells overlap, so this");
    println!("exceeds the total; the *fields* sum exactly: see below)");

    // Reconstruction: sum the projections coefficient by coefficient.
    let mut recon = lpns::SpectralField::zeros(grid);
    for q in -1..=bank.q_max() {
        let shell = bank.shell_project(&u, q)?;
        for c in 0..3 {
            for (acc, z) in recon.comps_mut()[c].iter_mut().zip(shell.comp(c)) {
                *acc += z;
            }
        }
    }
    println!("\nreconstruction max |sum_q u_q - u| / max |u| = {:.2e}", recon.max_diff(&u) / u.max_coeff());

    let sup = norm_lp(&u, Exponent::Inf, 2)?;
    let besov = bank.besov_norm(&u, -1.0);
    println!("||u||_inf = {sup:.6}; weighted shell sup-norm sup_q 2^-q ||u_q||_inf = {besov:.6}");
    Ok(())
}
