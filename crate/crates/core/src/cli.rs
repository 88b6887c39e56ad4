//! The `remez-lab` command line.
//!
//! Every subcommand prints one JSON document (to `--out` or stdout). Exit
//! status: 0 when all checks pass, 1 when a check fails, 2 for usage or
//! input errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::{run_suite, ExperimentConfig};
use crate::io::read_poly;
use crate::moment::MomentSystem;
use crate::multiplier::{
    bounded_projection, certified_constant, half_root, inseparable_decompose, instance_constant, pseudoproject_iter,
    reduce_at_maximizer, vandermonde_recover, PSEUDO_GROWTH,
};
use crate::norm::{bh_norm, coeff_l1, grid_argmax, grid_sup_norm, torus_sup_lower, TorusOptions};
use crate::poly::{MultiIndex, Poly};

const TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "remez-lab", version, about = "Remez-type comparisons between the polytorus and cyclic grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized steps (torus restarts, sweeps).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lift z (|z| <= eps*) to a probability measure on the 2K-th roots of unity.
    Lift {
        #[arg(long = "K")]
        modulus: u32,
        #[arg(long, allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_im: f64,
    },
    /// Grid sup norms and the torus bracket.
    Norm {
        #[arg(long = "in")]
        input: PathBuf,
        /// Grid order M; repeatable. Defaults to K.
        #[arg(long)]
        grid: Vec<usize>,
        #[arg(long)]
        torus: bool,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Pseudoprojection, or the projection onto one inseparable class with --set.
    Project {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// JSON array of multi-indices forming a single inseparable class.
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Inseparable classes, with the Vandermonde cross-check on the top level.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Reduce the 2K-grid maximum to an evaluation at the half root.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Certified constant C(d, K), or the per-instance certificate with --in.
    Certify {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "K")]
        modulus: Option<u32>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Bohnenblust-Hille coefficient norm against the grid norm.
    Bh {
        #[arg(long = "in")]
        input: PathBuf,
        /// Degree used for the exponent 2d/(d+1); defaults to deg f.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run an experiment suite from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((value, pass)) => match emit(&value, cli.out.as_deref()) {
            Ok(()) => i32::from(!pass),
            Err(e) => {
                eprintln!("remez-lab: {e}");
                2
            }
        },
        Err(Error::Unsound { residual, tolerance }) => {
            eprintln!("remez-lab: unsound inversion, residual {residual:e} > {tolerance:e}");
            1
        }
        Err(e) => {
            eprintln!("remez-lab: {e}");
            2
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        },
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn execute(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.command {
        Command::Lift { modulus, z_re, z_im } => lift(*modulus, Complex64::new(*z_re, *z_im)),
        Command::Norm { input, grid, torus, restarts } => {
            norm(&read_poly(input)?, grid, *torus, *restarts, cli.seed.unwrap_or(0))
        }
        Command::Project { input, power, set } => project(&read_poly(input)?, *power, set.as_deref()),
        Command::Decompose { input } => decompose(&read_poly(input)?),
        Command::Reduce { input } => reduce(&read_poly(input)?),
        Command::Certify { d, modulus, input } => certify(*d, *modulus, input.as_deref()),
        Command::Bh { input, d } => bh(&read_poly(input)?, *d),
        Command::Sweep { config, csv } => sweep(config, csv.clone(), cli.seed),
    }
}

fn lift(modulus: u32, z: Complex64) -> Result<(Value, bool)> {
    let sys = MomentSystem::new(modulus)?;
    let mu = sys.lift_measure(z)?;
    let moment = mu.moment_residuals().into_iter().fold(0.0, f64::max);
    let pass = mu.is_nonnegative() && mu.sum_residual() <= 1e-12 && moment <= 1e-10;
    let v = json!({
        "K": modulus,
        "z": complex(z),
        "eps_star": sys.eps_star(),
        "probs": mu.probs,
        "moment_residuals": mu.moment_residuals(),
        "sum_residual": mu.sum_residual(),
        "min_prob": mu.min_prob(),
        "pass": pass,
    });
    Ok((v, pass))
}

fn norm(f: &Poly, grids: &[usize], torus: bool, restarts: Option<usize>, seed: u64) -> Result<(Value, bool)> {
    let grids = if grids.is_empty() { vec![f.modulus() as usize] } else { grids.to_vec() };
    let upper = coeff_l1(f);
    let mut pass = true;
    let mut rows = Vec::new();
    for &m in &grids {
        let (value, at) = grid_argmax(f, m)?;
        pass &= value <= upper * (1.0 + TOL) + 1e-12;
        rows.push(json!({"M": m, "norm": value, "argmax": at}));
    }
    let mut v = json!({"grids": rows, "coeff_l1": upper});
    if torus {
        let mut opts = TorusOptions { seed, ..TorusOptions::default() };
        if let Some(r) = restarts {
            opts.restarts = r;
        }
        let report = torus_sup_lower(f, &opts);
        pass &= report.torus_lower <= report.torus_upper * (1.0 + TOL) + 1e-12;
        v["torus"] = to_value(&report)?;
    }
    v["pass"] = json!(pass);
    Ok((v, pass))
}

fn project(f: &Poly, power: u32, set: Option<&Path>) -> Result<(Value, bool)> {
    let k = f.modulus() as usize;
    let norm_f = grid_sup_norm(f, k)?;
    let (projection, bound, kind) = match set {
        None => {
            let l = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
            let p = pseudoproject_iter(f, power)?;
            (p, PSEUDO_GROWTH.powi((l as u32 * power) as i32), "pseudoprojection")
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let raw: Vec<Vec<u32>> =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let s: BTreeSet<MultiIndex> = raw.into_iter().map(MultiIndex::new).collect();
            let p = bounded_projection(f, &s)?;
            let l = s.iter().next().map_or(0, MultiIndex::support_size);
            let bound = instance_constant(f)?.class_bound(l).unwrap_or(0.0);
            (p, bound, "class")
        }
    };
    let norm_p = grid_sup_norm(&projection, k)?;
    let ratio = if norm_f > 0.0 { norm_p / norm_f } else { 0.0 };
    let pass = ratio <= bound * (1.0 + TOL);
    let v = json!({
        "kind": kind,
        "projection": to_value(&projection)?,
        "norm_f": norm_f,
        "norm_projection": norm_p,
        "ratio": ratio,
        "bound": bound,
        "pass": pass,
    });
    Ok((v, pass))
}

fn decompose(f: &Poly) -> Result<(Value, bool)> {
    let k = f.modulus();
    let classes = inseparable_decompose(f)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for c in &classes {
        let at_half = c.part.eval_diagonal(half_root(k)).norm();
        let at_one = c.part.eval_diagonal(Complex64::new(1.0, 0.0)).norm();
        let grid = grid_sup_norm(&c.part, k as usize)?;
        pass &= at_half <= grid * (1.0 + TOL) && (at_half - at_one).abs() <= 1e-10;
        let mut row = to_value(c)?;
        row["abs_at_half_root"] = json!(at_half);
        row["abs_at_one"] = json!(at_one);
        row["grid_norm"] = json!(grid);
        rows.push(row);
    }
    let mut v = json!({"K": k, "n": f.n(), "classes": rows});
    if let Some(top) = f.max_support_size() {
        let rec = vandermonde_recover(f, top)?;
        let direct: Vec<&Poly> = classes.iter().filter(|c| c.support_size == top).map(|c| &c.part).collect();
        let diff = rec.parts.iter().zip(&direct).map(|(a, b)| a.max_coeff_diff(b)).fold(0.0, f64::max);
        pass &= rec.parts.len() == direct.len() && diff <= 1e-8;
        v["top_level"] = json!({"support_size": top, "residual": rec.residual, "max_coeff_diff": diff});
    }
    v["pass"] = json!(pass);
    Ok((v, pass))
}

fn reduce(f: &Poly) -> Result<(Value, bool)> {
    let k = f.modulus();
    let r = reduce_at_maximizer(f)?;
    let at_half = r.g.eval_diagonal(half_root(k)).norm();
    let g_norm = grid_sup_norm(&r.g, k as usize)?;
    let f_norm = grid_sup_norm(f, k as usize)?;
    let pass = (at_half - r.max_value).abs() <= 1e-10 && g_norm <= f_norm + 1e-10;
    let mut v = to_value(&r)?;
    v["abs_g_at_half_root"] = json!(at_half);
    v["g_grid_norm"] = json!(g_norm);
    v["f_grid_norm"] = json!(f_norm);
    v["pass"] = json!(pass);
    Ok((v, pass))
}

fn certify(d: Option<usize>, modulus: Option<u32>, input: Option<&Path>) -> Result<(Value, bool)> {
    let cert = match (input, d, modulus) {
        (Some(p), None, None) => instance_constant(&read_poly(p)?)?,
        (None, Some(d), Some(k)) => certified_constant(d, k)?,
        _ => return Err(Error::Parse("certify takes either --d and --K, or --in".into())),
    };
    let pass = cert.sound;
    Ok((to_value(&cert)?, pass))
}

fn bh(f: &Poly, d: Option<usize>) -> Result<(Value, bool)> {
    let d = d.unwrap_or(f.degree());
    let value = bh_norm(f, d)?;
    let grid = grid_sup_norm(f, f.modulus() as usize)?;
    let p = 2.0 * d as f64 / (d as f64 + 1.0);
    let bound = (f.len().max(1) as f64).powf(1.0 / p - 0.5);
    let ratio = if grid > 0.0 { value / grid } else { 0.0 };
    let pass = ratio <= bound * (1.0 + TOL);
    let v = json!({"d": d, "p": p, "bh": value, "grid_K": grid, "ratio": ratio, "bound": bound, "pass": pass});
    Ok((v, pass))
}

fn sweep(config: &Path, csv: Option<PathBuf>, seed: Option<u64>) -> Result<(Value, bool)> {
    let text = std::fs::read_to_string(config)?;
    let mut cfg: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", config.display())))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if csv.is_some() {
        cfg.csv = csv;
    }
    let report = run_suite(&cfg)?;
    let pass = report.passed;
    Ok((to_value(&report)?, pass))
}
