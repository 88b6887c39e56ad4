//! Moment-matching lifts from a small disk to probability measures on `Ω_{2K}`.
//!
//! For `|z| ≤ ε*` the vector `p = D_K^{-1} v_z` is a probability vector on
//! the `2K`-th roots of unity whose first `K - 1` moments are `z, …, z^{K-1}`.
//! Averaging a polynomial of individual degree below `K` against the product
//! of these measures reproduces its value at `z`, which is what bounds the
//! scaled-torus norm by the `Ω_{2K}^n` norm.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::roots_of_unity;
use crate::poly::Poly;

/// Residual allowed in `D_K · D_K^{-1} = I`.
pub const INVERSE_RESIDUAL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct MomentSystem {
    modulus: u32,
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    inf_norm_inv: f64,
    eps_star: f64,
}

impl MomentSystem {
    /// Builds `D_K` (cosine rows for `m = 0..=K`, sine rows for `m = 1..K`,
    /// angle step `π/K`), its inverse, and `ε* = 1 / (2K ‖D_K^{-1}‖_{∞→∞})`.
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::ModulusTooSmall { min: 3, got: modulus });
        }
        let k = modulus as usize;
        let size = 2 * k;
        let theta = std::f64::consts::PI / modulus as f64;
        let matrix = DMatrix::from_fn(size, size, |row, col| {
            let angle = (col as f64) * theta;
            if row <= k {
                (angle * row as f64).cos()
            } else {
                (angle * (row - k) as f64).sin()
            }
        });
        let inverse = matrix.clone().lu().try_inverse().ok_or(Error::Singular)?;
        let residual = (&matrix * &inverse - DMatrix::<f64>::identity(size, size)).amax();
        if residual > INVERSE_RESIDUAL {
            return Err(Error::Unsound { residual, tolerance: INVERSE_RESIDUAL });
        }
        let inf_norm_inv = inverse.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
        let eps_star = 1.0 / (2.0 * modulus as f64 * inf_norm_inv);
        Ok(MomentSystem { modulus, matrix, inverse, inf_norm_inv, eps_star })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn inf_norm_inv(&self) -> f64 {
        self.inf_norm_inv
    }

    pub fn eps_star(&self) -> f64 {
        self.eps_star
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().lu().determinant()
    }

    /// `v_z = (1, Re z, …, Re z^K, Im z, …, Im z^{K-1})`.
    pub fn moment_vector(&self, z: Complex64) -> DVector<f64> {
        let k = self.modulus as usize;
        let mut v = DVector::zeros(2 * k);
        v[0] = 1.0;
        let mut power = Complex64::new(1.0, 0.0);
        for m in 1..=k {
            power *= z;
            v[m] = power.re;
            if m < k {
                v[k + m] = power.im;
            }
        }
        v
    }

    /// Solves `D_K p = v_z` without checking the radius; nonnegativity is not guaranteed.
    pub fn solve_moments(&self, z: Complex64) -> Vec<f64> {
        (&self.inverse * self.moment_vector(z)).iter().copied().collect()
    }

    /// Points on the boundary circle computed in floating point may overshoot
    /// `ε*` by a rounding error; a relative slack of `1e-12` is accepted.
    pub fn lift_measure(&self, z: Complex64) -> Result<LiftedMeasure> {
        if z.norm() > self.eps_star * (1.0 + 1e-12) {
            return Err(Error::OutsideLiftRadius { modulus: z.norm(), eps_star: self.eps_star });
        }
        Ok(LiftedMeasure { modulus: self.modulus, z, probs: self.solve_moments(z) })
    }

    /// `E_{ξ ~ μ_1 × … × μ_n} f(ξ)` computed by replacing each `z_j^a` with
    /// the `a`-th moment of the lifted measure `μ_j`.
    pub fn lifted_expectation(&self, f: &Poly, z: &[Complex64]) -> Result<Complex64> {
        if f.modulus() != self.modulus {
            return Err(Error::OrderMismatch { left: self.modulus, right: f.modulus() });
        }
        if z.len() != f.n() {
            return Err(Error::DimensionMismatch { expected: f.n(), got: z.len() });
        }
        let moments: Vec<Vec<Complex64>> =
            z.iter().map(|&zj| Ok(self.lift_measure(zj)?.moments())).collect::<Result<_>>()?;
        Ok(f.terms()
            .map(|(alpha, &a)| {
                alpha
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .fold(a, |acc, (j, &e)| acc * moments[j][e as usize])
            })
            .sum())
    }

    /// `C1 = (d + 1) ε*^{-d}`, the factor comparing `T^n` with `Ω_{2K}^n`.
    pub fn step1_bound(&self, d: usize) -> f64 {
        (d as f64 + 1.0) * self.eps_star.powi(-(d as i32))
    }

    /// Smallest radius, over `angles` evenly spaced directions, at which the
    /// solved weights first turn negative (bisection on each ray, capped at 1).
    ///
    /// This is observed data only; nothing is claimed about optimality.
    pub fn empirical_lift_radius(&self, angles: usize) -> f64 {
        let nonneg = |z: Complex64| self.solve_moments(z).iter().all(|&p| p >= -1e-15);
        (0..angles.max(1))
            .map(|i| {
                let dir = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / angles.max(1) as f64);
                let (mut lo, mut hi) = (self.eps_star, 1.0);
                if nonneg(dir * hi) {
                    return hi;
                }
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if nonneg(dir * mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// `C1 = (d + 1) ε*(K)^{-d}`.
pub fn step1_bound(d: usize, modulus: u32) -> Result<f64> {
    Ok(MomentSystem::new(modulus)?.step1_bound(d))
}

/// Probability weights on `ω_{2K}^0, …, ω_{2K}^{2K-1}` lifting the point `z`.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedMeasure {
    #[serde(rename = "K")]
    pub modulus: u32,
    pub z: Complex64,
    pub probs: Vec<f64>,
}

impl LiftedMeasure {
    /// `Σ_k p_k ω_{2K}^{km}` for `m = 0..K`.
    pub fn moments(&self) -> Vec<Complex64> {
        let roots = roots_of_unity(self.probs.len());
        (0..self.modulus as usize)
            .map(|m| self.probs.iter().enumerate().map(|(k, &p)| roots[(k * m) % roots.len()] * p).sum())
            .collect()
    }

    /// `|Σ_k p_k ω_{2K}^{km} - z^m|` for `m = 0..K`.
    pub fn moment_residuals(&self) -> Vec<f64> {
        self.moments().into_iter().enumerate().map(|(m, mu)| (mu - self.z.powu(m as u32)).norm()).collect()
    }

    pub fn sum_residual(&self) -> f64 {
        (self.probs.iter().sum::<f64>() - 1.0).abs()
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.probs.iter().all(|&p| p >= 0.0)
    }
}
