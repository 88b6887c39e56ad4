//! The moment matrix D_K, the lift radius ε*, and lifted measures on Ω_{2K}.

use num_complex::Complex64;
use remez_lab::moment::MomentSystem;
use remez_lab::poly::{random_poly, Scheme};

fn main() -> remez_lab::Result<()> {
    println!("{:>2} {:>10} {:>10} {:>12} {:>12} {:>12}", "K", "‖D⁻¹‖∞", "ε*", "1/(2K)²", "empirical", "det D");
    for k in 3..=7 {
        let sys = MomentSystem::new(k)?;
        println!(
            "{k:>2} {:>10.6} {:>10.6} {:>12.6} {:>12.6} {:>12.4e}",
            sys.inf_norm_inv(),
            sys.eps_star(),
            1.0 / (2.0 * k as f64).powi(2),
            sys.empirical_lift_radius(720),
            sys.determinant()
        );
    }

    let sys = MomentSystem::new(3)?;
    let z = Complex64::from_polar(0.9 * sys.eps_star(), 1.0);
    let mu = sys.lift_measure(z)?;
    println!("\nK = 3, z = {z:.5}");
    println!("probabilities {:?}", mu.probs.iter().map(|p| format!("{p:.5}")).collect::<Vec<_>>());
    println!("max moment residual {:.2e}", mu.moment_residuals().into_iter().fold(0.0, f64::max));

    // E_μ f(ξ) reproduces f(z) coordinate-wise
    let f = random_poly(3, 2, 3, 7, Scheme::DenseGaussian)?;
    let point = [z, z.conj(), Complex64::new(0.05, -0.02)];
    let lifted = sys.lifted_expectation(&f, &point)?;
    println!("f(z) = {:.10}, E f = {:.10}", f.eval(&point)?, lifted);
    println!("C1(d=2) = {:.4e}", sys.step1_bound(2));
    Ok(())
}
