//! Sweeps n at fixed (d, K) and prints the largest observed ratio
//! `‖f‖_T / ‖f‖_{Ω_K^n}` next to the certified constant.
//!
//! Usage: `cargo run --release --example remez_ratio_sweep -- [d] [K] [n_max] [trials] [csv-path]`

use remez_lab::harness::{run_suite, ExperimentConfig, Span, SuiteId};

fn main() -> remez_lab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: usize| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (d, k, n_max, trials) = (arg(0, 2), arg(1, 3) as u32, arg(2, 6), arg(3, 20));

    let mut cfg =
        ExperimentConfig::new(SuiteId::RemezRatio, Span(1, n_max), Span::single(d), Span::single(k), trials, 42);
    cfg.csv = args.get(4).map(Into::into);
    let start = std::time::Instant::now();
    let report = run_suite(&cfg)?;

    let bound = report.aggregates.first().and_then(|a| a.bound).unwrap_or(f64::NAN);
    println!("d = {d}, K = {k}, {trials} trials per n, certified C = {bound:.3e}");
    println!("{:>3} {:>12} {:>12}", "n", "max ratio", "max 2K/K");
    for a in &report.aggregates {
        let step2 = report
            .records
            .iter()
            .filter(|r| r.n == a.n)
            .map(|r| r.norms["grid_2K"] / r.norms["grid_K"])
            .fold(0.0, f64::max);
        println!("{:>3} {:>12.6} {:>12.6}", a.n, a.max_ratio.unwrap_or(f64::NAN), step2);
    }
    println!("violations: {}, errors: {}, {:.1?}", report.violations, report.errors, start.elapsed());
    Ok(())
}
