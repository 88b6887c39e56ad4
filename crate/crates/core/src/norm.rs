//! Sup norms over finite grids and two-sided estimates of the torus sup norm.
//!
//! Grid norms are exact (full enumeration). The torus norm is only ever
//! reported as a bracket: coordinate ascent gives an attained value, hence a
//! lower bound, and the coefficient ℓ¹ norm is an upper bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, roots_of_unity};
use crate::poly::Poly;

/// `max_{z ∈ Ω_M^n} |f(z)|`.
pub fn grid_sup_norm(f: &Poly, m: usize) -> Result<f64> {
    Ok(grid_argmax(f, m)?.0)
}

/// Maximum of `|f|` over `Ω_M^n` together with the exponent vector attaining it.
///
/// Ties go to the lexicographically smallest exponent vector.
pub fn grid_argmax(f: &Poly, m: usize) -> Result<(f64, Vec<u32>)> {
    let values = f.grid_values(m)?;
    let (best, idx) = argmax_abs(&values);
    Ok((best, grid::exponents_of(idx, m, f.n())))
}

pub(crate) fn argmax_abs(values: &[Complex64]) -> (f64, usize) {
    values.par_iter().enumerate().map(|(i, v)| (v.norm(), i)).reduce(
        || (f64::NEG_INFINITY, usize::MAX),
        |a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        },
    )
}

/// `Σ_α |a_α|`, an upper bound for the torus sup norm.
pub fn coeff_l1(f: &Poly) -> f64 {
    f.terms().map(|(_, c)| c.norm()).sum()
}

/// `‖f̂‖_p` with `p = 2d/(d+1)`.
pub fn bh_norm(f: &Poly, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidDegree { degree: 0, reason: "the exponent 2d/(d+1) needs d >= 1" });
    }
    if d < f.degree() {
        return Err(Error::InvalidDegree { degree: d, reason: "below the polynomial's degree" });
    }
    let p = 2.0 * d as f64 / (d as f64 + 1.0);
    Ok(f.terms().map(|(_, c)| c.norm().powf(p)).sum::<f64>().powf(1.0 / p))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct TorusOptions {
    pub restarts: usize,
    pub samples_per_axis: usize,
    pub tol: f64,
    pub seed: u64,
    /// Start one ascent from the best point of `Ω_{2K}^n` when that grid fits under the cap.
    pub seed_from_grid: bool,
    pub max_sweeps: usize,
}

impl Default for TorusOptions {
    fn default() -> Self {
        TorusOptions { restarts: 8, samples_per_axis: 512, tol: 1e-10, seed: 0, seed_from_grid: true, max_sweeps: 500 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    /// Order `M` of the grid behind `grid_norm`, if one was enumerated.
    pub grid_order: Option<usize>,
    pub grid_norm: Option<f64>,
    pub torus_lower: f64,
    pub torus_upper: f64,
    pub argmax_point: Vec<Complex64>,
    pub iterations: usize,
}

struct SparseTerm {
    vars: Vec<(usize, usize)>,
    coeff: Complex64,
}

struct Ascent<'a> {
    terms: &'a [SparseTerm],
    n: usize,
    k: usize,
    samples: Vec<Vec<Complex64>>,
    opts: &'a TorusOptions,
}

impl Ascent<'_> {
    fn slice(&self, powers: &[Vec<Complex64>], j: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.k];
        for t in self.terms {
            let mut prod = t.coeff;
            let mut own = 0;
            for &(v, e) in &t.vars {
                if v == j {
                    own = e;
                } else {
                    prod *= powers[v][e];
                }
            }
            c[own] += prod;
        }
        c
    }

    fn powers_of(&self, z: &[Complex64]) -> Vec<Vec<Complex64>> {
        z.iter().map(|&zj| powers(zj, self.k)).collect()
    }

    fn univariate_abs(c: &[Complex64], theta: f64) -> f64 {
        let w = Complex64::from_polar(1.0, theta);
        c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a).norm()
    }

    /// Maximizes `|Σ_p c_p e^{ipθ}|` by sampling then golden-section refinement.
    fn maximize_slice(&self, c: &[Complex64], current: f64) -> (f64, f64) {
        let s = self.samples.len();
        let (mut best_i, mut best_v) = (0, f64::NEG_INFINITY);
        for (i, row) in self.samples.iter().enumerate() {
            let v = c.iter().zip(row).map(|(a, w)| a * w).sum::<Complex64>().norm();
            if v > best_v {
                best_v = v;
                best_i = i;
            }
        }
        let h = std::f64::consts::TAU / s as f64;
        let center = h * best_i as f64;
        let (mut a, mut b) = (center - h, center + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let mut f1 = Self::univariate_abs(c, x1);
        let mut f2 = Self::univariate_abs(c, x2);
        for _ in 0..80 {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = Self::univariate_abs(c, x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = Self::univariate_abs(c, x1);
            }
        }
        let mut theta = center;
        let mut value = best_v;
        for (x, v) in [(x1, f1), (x2, f2)] {
            if v > value {
                value = v;
                theta = x;
            }
        }
        let current_value = Self::univariate_abs(c, current);
        if current_value >= value {
            (current, current_value)
        } else {
            (theta, value)
        }
    }

    fn run(&self, start: Vec<Complex64>) -> (f64, Vec<Complex64>, usize) {
        let mut z = start;
        let mut theta: Vec<f64> = z.iter().map(|v| v.arg()).collect();
        let mut pw = self.powers_of(&z);
        let mut value = f64::NEG_INFINITY;
        let mut sweeps = 0;
        while sweeps < self.opts.max_sweeps {
            sweeps += 1;
            let before = value;
            for j in 0..self.n {
                let c = self.slice(&pw, j);
                let (t, v) = self.maximize_slice(&c, theta[j]);
                theta[j] = t;
                z[j] = Complex64::from_polar(1.0, t);
                pw[j] = powers(z[j], self.k);
                value = v;
            }
            if self.n == 0 {
                break;
            }
            if before.is_finite() && value - before <= self.opts.tol * before.abs().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        // report the value actually attained at the final point
        let exact = self
            .terms
            .iter()
            .map(|t| t.vars.iter().fold(t.coeff, |acc, &(v, e)| acc * pw[v][e]))
            .sum::<Complex64>()
            .norm();
        (exact, z, sweeps)
    }
}

fn powers(z: Complex64, k: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(k);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        out.push(acc);
        acc *= z;
    }
    out
}

/// Lower bound on `‖f‖_{T^n}` by cyclic coordinate ascent.
///
/// Along each coordinate `f` is a univariate polynomial of degree below
/// `K`; it is maximized on the circle by dense sampling plus golden-section
/// refinement. The best attained value over all starts is returned together
/// with the point attaining it; the upper side is `Σ|f̂(α)|`.
pub fn torus_sup_lower(f: &Poly, opts: &TorusOptions) -> NormReport {
    let n = f.n();
    let k = f.modulus() as usize;
    let terms: Vec<SparseTerm> = f
        .terms()
        .map(|(alpha, &coeff)| SparseTerm {
            vars: alpha.support().map(|j| (j, alpha.entries()[j] as usize)).collect(),
            coeff,
        })
        .collect();
    let s = opts.samples_per_axis.max(4);
    let samples =
        (0..s).map(|i| powers(Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / s as f64), k)).collect();
    let ascent = Ascent { terms: &terms, n, k, samples, opts };

    let mut starts = Vec::new();
    let mut grid_order = None;
    let mut grid_norm = None;
    if opts.seed_from_grid {
        let m = 2 * k;
        if let Ok((value, e)) = grid_argmax(f, m) {
            let roots = roots_of_unity(m);
            starts.push(e.iter().map(|&x| roots[x as usize]).collect::<Vec<_>>());
            grid_order = Some(m);
            grid_norm = Some(value);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    while starts.len() < opts.restarts.max(1) + usize::from(grid_norm.is_some()) {
        starts.push((0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))).collect());
    }

    let runs: Vec<(f64, Vec<Complex64>, usize)> = starts.into_par_iter().map(|z0| ascent.run(z0)).collect();
    let iterations = runs.iter().map(|r| r.2).sum();
    let (best_value, best_point) =
        runs.into_iter().fold((f64::NEG_INFINITY, Vec::new()), |acc, (v, z, _)| if v > acc.0 { (v, z) } else { acc });
    NormReport {
        grid_order,
        grid_norm,
        torus_lower: best_value.max(0.0),
        torus_upper: coeff_l1(f),
        argmax_point: best_point,
        iterations,
    }
}
