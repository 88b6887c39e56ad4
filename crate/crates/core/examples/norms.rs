//! Grid norms, the torus bracket, and coefficient norms of one polynomial.

use remez_lab::norm::{bh_norm, coeff_l1, grid_sup_norm, torus_sup_lower, TorusOptions};
use remez_lab::poly::{random_poly, Scheme};

fn main() -> remez_lab::Result<()> {
    let f = random_poly(3, 3, 3, 11, Scheme::DenseGaussian)?;
    println!("f has {} terms, degree {}", f.len(), f.degree());
    for m in [2, 3, 6, 12, 24] {
        println!("‖f‖ on Ω_{m:<2}^3 = {:.6}", grid_sup_norm(&f, m)?);
    }
    let report = torus_sup_lower(&f, &TorusOptions::default());
    println!("torus bracket [{:.6}, {:.6}] after {} sweeps", report.torus_lower, report.torus_upper, report.iterations);
    println!("Σ|f̂| = {:.6}", coeff_l1(&f));
    println!("‖f̂‖_(3/2) = {:.6}", bh_norm(&f, 3)?);
    Ok(())
}
