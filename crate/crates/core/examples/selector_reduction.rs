//! Moving the Ω_{2K} maximum to the half-root diagonal of a smaller polynomial.

use remez_lab::multiplier::{half_root, reduce_at_maximizer};
use remez_lab::norm::grid_sup_norm;
use remez_lab::poly::{random_poly, Scheme};

fn main() -> remez_lab::Result<()> {
    for seed in 0..6 {
        let f = random_poly(5, 3, 3, seed, Scheme::DenseGaussian)?;
        let r = reduce_at_maximizer(&f)?;
        let at_half = r.g.eval_diagonal(half_root(3)).norm();
        let g_norm = grid_sup_norm(&r.g, 3)?;
        println!(
            "seed {seed}: z* = {:?}, S = {:?}, m = {}, ‖f‖_Ω6 = {:.6}, |g(√ω)| = {:.6}, ‖g‖_Ω3 = {:.6} ≤ ‖f‖_Ω3 = {:.6}",
            r.maximizer,
            r.selected,
            r.m,
            r.max_value,
            at_half,
            g_norm,
            grid_sup_norm(&f, 3)?
        );
    }
    Ok(())
}
