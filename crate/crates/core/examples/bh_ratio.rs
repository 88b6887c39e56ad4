//! Bohnenblust–Hille coefficient norm over the Ω_K^n sup norm as n grows.

use remez_lab::harness::{run_suite, ExperimentConfig, Span, SuiteId};

fn main() -> remez_lab::Result<()> {
    for (d, k) in [(2, 3), (3, 4)] {
        let cfg = ExperimentConfig::new(SuiteId::BhRatio, Span(1, 7), Span::single(d), Span::single(k), 30, 5);
        let report = run_suite(&cfg)?;
        println!("d = {d}, K = {k}");
        for a in &report.aggregates {
            println!(
                "  n = {}: max ‖f̂‖_p/‖f‖_Ω = {:.4} (Hölder-Parseval bound {:.2})",
                a.n,
                a.max_ratio.unwrap_or(0.0),
                a.bound.unwrap_or(0.0)
            );
        }
        println!("  passed: {}", report.passed);
    }
    Ok(())
}
