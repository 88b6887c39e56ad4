//! Certificate tables for C(d, K) = C1 · C2.
//!
//! Usage: `cargo run --example certified_constant -- [d] [K]`

use remez_lab::multiplier::certified_constant;

fn main() -> remez_lab::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (d, k) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(3) as u32);
    let cert = certified_constant(d, k)?;
    println!("d = {d}, K = {k}, ε* = {:.6}", cert.eps_star);
    println!("{:>2} {:>3} {:>12} {:>12} {:>12} {:>10}", "ℓ", "J", "max A", "D", "cascade", "residual");
    for l in &cert.levels {
        println!(
            "{:>2} {:>3} {:>12.4e} {:>12.4e} {:>12.4e} {:>10.1e}",
            l.support_size,
            l.j_count,
            l.a_values.iter().copied().fold(0.0, f64::max),
            l.d_level,
            l.cascade,
            l.residual
        );
    }
    println!("C1 = {:.4e}, C2 = {:.4e}, C = {:.4e}, sound = {}", cert.c1, cert.c2, cert.c, cert.sound);

    println!("\nC(d, K) grid:");
    for k in 3..=7 {
        let row: Vec<String> =
            (0..=4).map(|d| certified_constant(d, k).map(|c| format!("{:>10.2e}", c.c)).unwrap_or_default()).collect();
        println!("K={k} {}", row.join(" "));
    }
    Ok(())
}
