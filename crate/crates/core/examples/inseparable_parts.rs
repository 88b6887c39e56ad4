//! Inseparable classes of a polynomial, recovered both by exact τ grouping
//! and from iterated pseudoprojections.

use num_complex::Complex64;
use remez_lab::multiplier::{half_root, inseparable_decompose, vandermonde_recover};
use remez_lab::norm::grid_sup_norm;
use remez_lab::poly::{random_poly, Scheme};

fn main() -> remez_lab::Result<()> {
    let k = 5;
    let f = random_poly(4, 4, k, 3, Scheme::DenseGaussian)?;
    let classes = inseparable_decompose(&f)?;
    println!("{} terms in {} classes", f.len(), classes.len());
    println!("{:>2} {:>8} {:>4} {:>11} {:>11} {:>11}", "ℓ", "members", "σ̂", "|g(√ω)|", "|g(1)|", "‖g‖_Ω");
    for c in &classes {
        let at_half = c.part.eval_diagonal(half_root(k)).norm();
        let at_one = c.part.eval_diagonal(Complex64::new(1.0, 0.0)).norm();
        println!(
            "{:>2} {:>8} {:>4} {:>11.6} {:>11.6} {:>11.6}",
            c.support_size,
            c.members.len(),
            format!("{:?}", c.fold_histogram),
            at_half,
            at_one,
            grid_sup_norm(&c.part, k as usize)?
        );
    }

    let top = f.max_support_size().unwrap_or(0);
    let rec = vandermonde_recover(&f, top)?;
    let direct: Vec<_> = classes.iter().filter(|c| c.support_size == top).collect();
    let diff = rec.parts.iter().zip(&direct).map(|(p, c)| p.max_coeff_diff(&c.part)).fold(0.0, f64::max);
    println!(
        "top level ℓ = {top}: J = {}, residual {:.1e}, max coefficient gap {diff:.1e}",
        rec.taus.len(),
        rec.residual
    );
    Ok(())
}
