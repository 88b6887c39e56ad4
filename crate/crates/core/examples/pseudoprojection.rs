//! The pseudoprojection 𝔇 and its transfer to the two-point group Ω_2.

use num_complex::Complex64;
use remez_lab::multiplier::{omega2_transfer, pseudoproject, q_top, transfer_top_form, PSEUDO_GROWTH};
use remez_lab::norm::grid_sup_norm;
use remez_lab::poly::{random_poly, Scheme};
use remez_lab::{MultiIndex, Poly};

fn main() -> remez_lab::Result<()> {
    let f = Poly::from_terms(
        2,
        3,
        [
            (MultiIndex::new(vec![1, 0]), Complex64::new(2.0, 0.0)),
            (MultiIndex::new(vec![1, 2]), Complex64::new(3.0, 0.0)),
        ],
    )?;
    println!("f  = {f}");
    println!("𝔇f = {}", pseudoproject(&f)?);

    println!("\n{:>4} {:>2} {:>3} {:>10} {:>10}", "seed", "K", "ℓ", "‖𝔇f‖/‖f‖", "bound");
    for seed in 0..8u64 {
        let k = 3 + (seed % 3) as u32;
        let g = random_poly(5, 4, k, seed, Scheme::SparseUniform)?;
        let l = g.max_support_size().unwrap_or(0);
        let ratio = grid_sup_norm(&pseudoproject(&g)?, k as usize)? / grid_sup_norm(&g, k as usize)?;
        println!("{seed:>4} {k:>2} {l:>3} {ratio:>10.4} {:>10.2}", PSEUDO_GROWTH.powi(l as i32));
    }

    let g = random_poly(4, 3, 5, 1, Scheme::DenseGaussian)?;
    let q = q_top(&omega2_transfer(&g)?, 4)?;
    let explicit = transfer_top_form(&g)?;
    println!("\nQ(G(f)) vs explicit top form: {} terms, max diff {:.2e}", q.len(), q.max_coeff_diff(&explicit));
    Ok(())
}
