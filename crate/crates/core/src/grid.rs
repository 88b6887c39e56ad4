//! Enumeration of the product grids `Ω_M^n` and the separable transforms on them.
//!
//! Points are indexed in mixed radix with the first coordinate most
//! significant, so index order is lexicographic order on exponent vectors:
//! point `e` is `(ω_M^{e_1}, …, ω_M^{e_n})`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Enumeration cap, overridable through `REMEZ_LAB_CAP`.
pub fn enumeration_cap() -> u64 {
    std::env::var("REMEZ_LAB_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// `m^n`, rejected if it exceeds `cap`.
pub fn grid_size(m: usize, n: usize, cap: u64) -> Result<usize> {
    let mut points: u128 = 1;
    for _ in 0..n {
        points = points.saturating_mul(m as u128);
        if points > cap as u128 {
            return Err(Error::CapExceeded { points, cap });
        }
    }
    Ok(points as usize)
}

/// Exponent vector of the point with the given index.
pub fn exponents_of(mut index: usize, m: usize, n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for slot in e.iter_mut().rev() {
        *slot = (index % m) as u32;
        index /= m;
    }
    e
}

pub fn index_of(exponents: &[u32], m: usize) -> usize {
    exponents.iter().fold(0, |acc, &e| acc * m + e as usize)
}

/// Mixed-radix counter over `{0, …, m-1}^n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct GridCounter {
    m: u32,
    current: Vec<u32>,
    done: bool,
}

impl GridCounter {
    pub fn new(m: usize, n: usize) -> Self {
        GridCounter { m: m as u32, current: vec![0; n], done: m == 0 }
    }
}

impl Iterator for GridCounter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.m {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

pub fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m).map(|r| Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / m as f64)).collect()
}

/// Applies `x_e ↦ Σ_t x_t ω_M^{sign·e·t}` along every axis of a dense `M^n` array.
///
/// With `sign = +1` this evaluates a coefficient array on the grid; with
/// `sign = -1` (and a `M^{-n}` scale) it recovers coefficients from samples.
pub fn transform_axes(data: Vec<Complex64>, m: usize, n: usize, sign: i64) -> Vec<Complex64> {
    let roots = roots_of_unity(m);
    let mut input = data;
    let mut output = vec![Complex64::new(0.0, 0.0); input.len()];
    for axis in 0..n {
        let stride = m.pow((n - 1 - axis) as u32);
        let min_len = (4096 / stride).max(1);
        let src = &input;
        output.par_chunks_mut(stride).with_min_len(min_len).enumerate().for_each(|(c, out)| {
            let prefix = c / m;
            let e = (c % m) as i64;
            out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            for t in 0..m {
                let w = roots[(sign * e * t as i64).rem_euclid(m as i64) as usize];
                let base = (prefix * m + t) * stride;
                for (o, v) in out.iter_mut().enumerate() {
                    *v += w * src[base + o];
                }
            }
        });
        std::mem::swap(&mut input, &mut output);
    }
    input
}
