//! Exact arithmetic in Z[ω_{2K}] and the τ factors that label monomials.

use remez_lab::multiplier::{fold_histogram, tau_of};
use remez_lab::{CycInt, MultiIndex};

fn main() -> remez_lab::Result<()> {
    let k = 3;
    let a = CycInt::one_minus_root(1, k)?;
    let b = CycInt::one_minus_root(2, k)?;
    println!("1 - ω   = {a}");
    println!("1 - ω^2 = {b}");
    println!("(1-ω)(1-ω^2) = {}", a.try_mul(&b)?);
    println!("(1-ω)^6 == (1-ω^2)^6: {}", a.pow(6).try_eq(&b.pow(6))?);

    // (1-ω)^7 (1-ω^2) against (1-ω) (1-ω^2)^7
    let beta = MultiIndex::new(vec![2, 1, 1, 1, 1, 1, 1, 1]);
    let beta_prime = MultiIndex::new(vec![2, 2, 2, 2, 2, 2, 2, 1]);
    let (t, tp) = (tau_of(&beta, k)?, tau_of(&beta_prime, k)?);
    println!("tau{beta} = {t}");
    println!("tau{beta_prime} = {tp}");
    println!("equal: {}, |τ| = {:.6}", t == tp, t.to_complex().norm());

    for alpha in [vec![1, 4, 2], vec![4, 1, 3], vec![2, 2, 1]] {
        let alpha = MultiIndex::new(alpha);
        let tau = tau_of(&alpha, 5)?;
        println!("K=5 {alpha}: τ = {tau}  ≈ {:.6}  folds {:?}", tau.to_complex(), fold_histogram(&alpha, 5));
    }
    Ok(())
}
