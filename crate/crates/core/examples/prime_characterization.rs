//! Structural inseparability conditions against exact τ equality.
//!
//! For odd prime K they agree on every pair. For composite K the
//! disagreements found are printed; nothing is asserted about them.

use remez_lab::grid::enumeration_cap;
use remez_lab::harness::prime_exhaustive;

fn main() -> remez_lab::Result<()> {
    let runs: [(u32, usize); 9] = [(3, 4), (5, 4), (7, 4), (4, 4), (6, 4), (8, 3), (9, 3), (10, 3), (12, 3)];
    for (k, n_max) in runs {
        for n in 1..=n_max {
            let c = prime_exhaustive(k, n, enumeration_cap())?;
            println!("K={k} n={n}: {} pairs, {} classes, {} disagreements", c.pairs, c.classes, c.disagreements);
            for (a, b, cond, exact) in c.examples.iter().take(3) {
                println!("    {a} vs {b}: conditions say {cond}, exact τ says {exact}");
            }
        }
    }
    Ok(())
}
