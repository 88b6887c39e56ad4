//! Support-size multipliers on `Ω_K^n` and the reduction of the `Ω_{2K}` norm
//! to a single evaluation at the half root `√ω = e^{iπ/K}`.
//!
//! Every monomial `z^α` carries the factor `τ_α = ∏_{α_j ≠ 0} (1 - ω^{α_j})`.
//! The pseudoprojection keeps the terms of maximal support size and weights
//! them by `τ_α`; iterating it and inverting a Vandermonde system isolates the
//! classes of monomials sharing both support size and `τ` (inseparable
//! classes). Class membership is decided in exact cyclotomic arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::grid;
use crate::moment::MomentSystem;
use crate::norm::grid_argmax;
use crate::poly::{MultiIndex, Poly};

/// Growth factor `2 + 2√2` of one pseudoprojection step per unit of support size.
pub const PSEUDO_GROWTH: f64 = 2.0 + 2.0 * std::f64::consts::SQRT_2;

/// Largest accepted residual `‖V V^{-1} - I‖_max` for the Vandermonde inverses.
pub const VANDERMONDE_RESIDUAL: f64 = 1e-6;

/// Cap on the `{-1, 1}^n` table built by [`omega2_transfer`].
pub const OMEGA2_CAP: u64 = 1 << 20;

/// `e^{iπ/K}`.
pub fn half_root(modulus: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI / modulus as f64)
}

/// Exact `τ_α` in `Z[ω_{2K}]`; the zero multi-index gives 1.
pub fn tau_of(alpha: &MultiIndex, modulus: u32) -> Result<CycInt> {
    let mut acc = CycInt::one(2 * modulus);
    for (position, a) in alpha.entries().iter().copied().enumerate().filter(|(_, a)| *a != 0) {
        if a >= modulus {
            return Err(Error::IndividualDegree { position, degree: a, modulus });
        }
        acc = acc.try_mul(&CycInt::one_minus_root(a as i64, modulus)?)?;
    }
    Ok(acc)
}

fn tau_power_complex(alpha: &MultiIndex, modulus: u32, k: u32) -> Result<Complex64> {
    Ok(tau_of(alpha, modulus)?.pow(k).to_complex())
}

/// `𝔇f`: the terms of maximal support size `ℓ`, each multiplied by `τ_α`.
pub fn pseudoproject(f: &Poly) -> Result<Poly> {
    pseudoproject_iter(f, 1)
}

/// `𝔇^k f = Σ_{|supp α| = ℓ} τ_α^k a_α z^α`.
pub fn pseudoproject_iter(f: &Poly, k: u32) -> Result<Poly> {
    if k == 0 {
        return Err(Error::OutOfRange { what: "pseudoprojection power", detail: "must be at least 1".into() });
    }
    let top = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
    let mut terms = BTreeMap::new();
    for (alpha, &a) in f.terms().filter(|(a, _)| a.support_size() == top) {
        terms.insert(alpha.clone(), a * tau_power_complex(alpha, f.modulus(), k)?);
    }
    Ok(f.part_support(top).with_terms(terms))
}

/// `G(f)` tabulated on `{-1, 1}^n`: the value of `f` at `z_j = (1+ω)/2 + (1-ω)/2·x_j`,
/// i.e. `z_j = 1` for `x_j = 1` and `z_j = ω` for `x_j = -1`.
///
/// Bit `n - 1 - j` of the table index is set when `x_j = -1`.
pub fn omega2_transfer(f: &Poly) -> Result<Vec<Complex64>> {
    let n = f.n();
    let size = grid::grid_size(2, n, OMEGA2_CAP)?;
    let w = Complex64::from_polar(1.0, std::f64::consts::TAU / f.modulus() as f64);
    let one = Complex64::new(1.0, 0.0);
    (0..size)
        .into_par_iter()
        .map(|idx| {
            let z: Vec<Complex64> = (0..n).map(|j| if idx >> (n - 1 - j) & 1 == 1 { w } else { one }).collect();
            f.eval(&z)
        })
        .collect()
}

/// Fourier–Walsh coefficients `ĝ(A) = 2^{-n} Σ_x g(x) x^A`, indexed like the table.
pub fn walsh_coefficients(table: &[Complex64]) -> Vec<Complex64> {
    let mut a = table.to_vec();
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
    let scale = 1.0 / a.len() as f64;
    a.iter_mut().for_each(|v| *v *= scale);
    a
}

fn walsh_index_to_alpha(idx: usize, n: usize) -> MultiIndex {
    MultiIndex::new((0..n).map(|j| (idx >> (n - 1 - j) & 1) as u32).collect())
}

/// `Q(g)`: the homogeneous part of top degree of a function on `Ω_2^n`,
/// returned as a multilinear polynomial (modulus 2).
///
/// Walsh coefficients below `1e-12·max|ĝ|` count as zero when locating the top degree.
pub fn q_top(table: &[Complex64], n: usize) -> Result<Poly> {
    if table.len() != 1usize << n {
        return Err(Error::IncompleteSamples { expected: 1 << n, got: table.len() });
    }
    let coeffs = walsh_coefficients(table);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let floor = 1e-12 * scale;
    let top = coeffs.iter().enumerate().filter(|(_, c)| c.norm() > floor).map(|(i, _)| i.count_ones()).max();
    let Some(top) = top else {
        return Poly::zero(n, 2);
    };
    Poly::from_terms(
        n,
        2,
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(i, _)| i.count_ones() == top)
            .map(|(i, c)| (walsh_index_to_alpha(i, n), c)),
    )
}

/// `2^{-ℓ} Σ_{|A| = ℓ} (Σ_{supp α = A} τ_α a_α) x^A` with `ℓ` the maximal support size.
pub fn transfer_top_form(f: &Poly) -> Result<Poly> {
    let top = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
    let scale = 0.5f64.powi(top as i32);
    let mut terms: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
    for (alpha, &a) in f.terms().filter(|(a, _)| a.support_size() == top) {
        let set = MultiIndex::new(alpha.entries().iter().map(|&e| u32::from(e != 0)).collect());
        *terms.entry(set).or_default() += a * tau_of(alpha, f.modulus())?.to_complex() * scale;
    }
    Poly::from_terms(f.n(), 2, terms)
}

/// Monomials sharing a support size and an exact `τ` value.
#[derive(Clone, Debug, Serialize)]
pub struct InseparableClass {
    pub support_size: usize,
    pub tau: CycInt,
    pub members: Vec<MultiIndex>,
    /// Common value `m(√ω)` of the member monomials.
    pub zeta: Complex64,
    pub part: Poly,
    /// Folded degree histogram of the first member, see [`fold_histogram`].
    pub fold_histogram: Vec<usize>,
}

/// `σ̂(k) = |{j : σ_j = k or σ_j = K - k}|` for `k = 1..=⌊K/2⌋`.
pub fn fold_histogram(alpha: &MultiIndex, modulus: u32) -> Vec<usize> {
    let mut h = vec![0usize; (modulus / 2) as usize];
    for a in alpha.nonzero_entries() {
        h[(a.min(modulus - a) - 1) as usize] += 1;
    }
    h
}

/// Splits `f` into inseparable parts, ordered by support size then `τ`.
pub fn inseparable_decompose(f: &Poly) -> Result<Vec<InseparableClass>> {
    let k = f.modulus();
    let mut groups: BTreeMap<(usize, CycInt), Vec<(MultiIndex, Complex64)>> = BTreeMap::new();
    for (alpha, &a) in f.terms() {
        groups.entry((alpha.support_size(), tau_of(alpha, k)?)).or_default().push((alpha.clone(), a));
    }
    let root = half_root(k);
    groups
        .into_iter()
        .map(|((support_size, tau), terms)| {
            let first = &terms[0].0;
            Ok(InseparableClass {
                support_size,
                zeta: root.powu(first.degree()),
                fold_histogram: fold_histogram(first, k),
                members: terms.iter().map(|(a, _)| a.clone()).collect(),
                part: Poly::from_terms(f.n(), k, terms)?,
                tau,
            })
        })
        .collect()
}

fn invert_complex(v: DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, f64)> {
    let size = v.nrows();
    let inv = v.clone().lu().try_inverse().ok_or(Error::Singular)?;
    let residual =
        (&v * &inv - DMatrix::<Complex64>::identity(size, size)).iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok((inv, residual))
}

/// `V[k][j] = c_j^{k+1}`.
fn modified_vandermonde(c: &[Complex64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(c.len(), c.len(), |k, j| c[j].powu(k as u32 + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct VandermondeRecovery {
    pub support_size: usize,
    pub taus: Vec<CycInt>,
    pub c_values: Vec<Complex64>,
    pub parts: Vec<Poly>,
    pub residual: f64,
}

/// Recovers the inseparable parts of the top support level from the iterates
/// `𝔇f, …, 𝔇^J f` by inverting `V[k][j] = c_j^{k+1}`.
///
/// Distinctness of the `c_j` comes from exact `τ` comparison; numerical
/// trouble in the solve surfaces as [`Error::Unsound`].
pub fn vandermonde_recover(f: &Poly, support_size: usize) -> Result<VandermondeRecovery> {
    let top = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
    if top != support_size {
        return Err(Error::NotTopLevel { requested: support_size, actual: top });
    }
    let k = f.modulus();
    let taus: Vec<CycInt> = f
        .terms()
        .filter(|(a, _)| a.support_size() == top)
        .map(|(a, _)| tau_of(a, k))
        .collect::<Result<BTreeSet<_>>>()?
        .into_iter()
        .collect();
    let c_values: Vec<Complex64> = taus.iter().map(CycInt::to_complex).collect();
    let j_count = taus.len();
    let (eta, residual) = invert_complex(modified_vandermonde(&c_values))?;
    if residual > VANDERMONDE_RESIDUAL {
        return Err(Error::Unsound { residual, tolerance: VANDERMONDE_RESIDUAL });
    }
    let iterates: Vec<Poly> = (1..=j_count as u32).map(|p| pseudoproject_iter(f, p)).collect::<Result<_>>()?;
    let parts = (0..j_count)
        .map(|j| {
            let mut terms: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
            for (p, it) in iterates.iter().enumerate() {
                for (alpha, &v) in it.terms() {
                    *terms.entry(alpha.clone()).or_default() += eta[(j, p)] * v;
                }
            }
            f.with_terms(terms)
        })
        .collect();
    Ok(VandermondeRecovery { support_size, taus, c_values, parts, residual })
}

/// Output of [`reduce_at_maximizer`].
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    /// `max_{Ω_{2K}^n} |f|`.
    pub max_value: f64,
    /// Exponents `e_j` of the maximizer `z*_j = ω_{2K}^{e_j}`.
    pub maximizer: Vec<u32>,
    /// Exponents of `w_j = ω_K^{w_j}`.
    pub w: Vec<u32>,
    /// `y*_j = √ω` where true, `1` otherwise.
    pub half: Vec<bool>,
    /// The selected coordinates `S = {j : y*_j = √ω}`, in increasing order.
    pub selected: Vec<usize>,
    pub m: usize,
    pub g: Poly,
}

/// Moves the `Ω_{2K}^n` maximum of `|f|` to the diagonal point `√ω·1` of a
/// polynomial `g` in `m = |S|` variables whose `Ω_K^m` norm is at most
/// that of `f` on `Ω_K^n`.
///
/// `z* = w·y*` with `w ∈ Ω_K^n`, `y* ∈ {1, √ω}^n`; coordinates with
/// `y*_j = 1` are frozen at 1 and the rest are renumbered in order.
pub fn reduce_at_maximizer(f: &Poly) -> Result<Reduction> {
    let k = f.modulus();
    let (max_value, maximizer) = grid_argmax(f, 2 * k as usize)?;
    let w: Vec<u32> = maximizer.iter().map(|e| e / 2).collect();
    let half: Vec<bool> = maximizer.iter().map(|e| e % 2 == 1).collect();
    let selected: Vec<usize> = half.iter().enumerate().filter(|(_, &h)| h).map(|(j, _)| j).collect();
    let roots = grid::roots_of_unity(k as usize);
    let terms = f.terms().map(|(alpha, &a)| {
        let shift: u64 = alpha.entries().iter().zip(&w).map(|(&x, &y)| x as u64 * y as u64).sum();
        let coeff = a * roots[(shift % k as u64) as usize];
        let sub = MultiIndex::new(selected.iter().map(|&j| alpha.entries()[j]).collect());
        (sub, coeff)
    });
    let g = Poly::from_terms(selected.len(), k, terms)?;
    Ok(Reduction { max_value, maximizer, w, half, m: selected.len(), selected, g })
}

/// Constants attached to one support level of a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct LevelCertificate {
    pub support_size: usize,
    pub j_count: usize,
    pub taus: Vec<CycInt>,
    pub c_values: Vec<Complex64>,
    /// `‖η^{(ℓ,j)}‖₁` for each row of `V_ℓ^{-1}`.
    pub eta_norms: Vec<f64>,
    /// `A_ℓ^{(j)} = ‖η^{(ℓ,j)}‖₁ (2+2√2)^{J_ℓ ℓ}`.
    pub a_values: Vec<f64>,
    /// `D_ℓ = ‖1ᵀ V_ℓ^{-1}‖₁ (2+2√2)^{J_ℓ ℓ}`, bounding the whole level by the remainder.
    pub d_level: f64,
    /// `∏_{k > ℓ} (1 + D_k)`.
    pub cascade: f64,
    pub residual: f64,
}

/// A concrete instantiation of the constant chain `C = C1 · C2`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub d: usize,
    #[serde(rename = "K")]
    pub modulus: u32,
    pub eps_star: f64,
    pub levels: Vec<LevelCertificate>,
    /// `(d + 1) ε*^{-d}`.
    pub c1: f64,
    /// `Σ_ℓ ∏_{k>ℓ}(1 + D_k) Σ_j A_ℓ^{(j)}`.
    pub c2: f64,
    pub c: f64,
    /// False when any Vandermonde residual exceeds [`VANDERMONDE_RESIDUAL`].
    pub sound: bool,
}

impl Certificate {
    /// Bound on `‖g_{(ℓ,j)}‖_{Ω_K^n} / ‖f‖_{Ω_K^n}` for any class part at support level `ℓ`.
    pub fn class_bound(&self, support_size: usize) -> Option<f64> {
        let level = self.levels.iter().find(|l| l.support_size == support_size)?;
        let a = level.a_values.iter().copied().fold(0.0, f64::max);
        Some(a * level.cascade)
    }

    /// Bound on `‖f_ℓ‖_{Ω_K^n} / ‖f‖_{Ω_K^n}` for the whole support level `ℓ`.
    pub fn level_bound(&self, support_size: usize) -> Option<f64> {
        let level = self.levels.iter().find(|l| l.support_size == support_size)?;
        Some(level.d_level * level.cascade)
    }
}

fn multisets(size: usize, max_entry: u32, max_sum: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(size);
    fn walk(cur: &mut Vec<u32>, size: usize, lo: u32, max_entry: u32, budget: usize, out: &mut Vec<MultiIndex>) {
        if cur.len() == size {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        let remaining = size - cur.len();
        for v in lo..=max_entry {
            if (v as usize) * remaining > budget {
                break;
            }
            cur.push(v);
            walk(cur, size, v, max_entry, budget - v as usize, out);
            cur.pop();
        }
    }
    walk(&mut cur, size, 1, max_entry, max_sum, &mut out);
    out
}

fn assemble(d: usize, modulus: u32, level_taus: Vec<(usize, Vec<CycInt>)>) -> Result<Certificate> {
    let sys = MomentSystem::new(modulus)?;
    let mut levels = Vec::with_capacity(level_taus.len());
    for (support_size, taus) in level_taus {
        let c_values: Vec<Complex64> = taus.iter().map(CycInt::to_complex).collect();
        let growth = PSEUDO_GROWTH.powi((taus.len() * support_size) as i32);
        let (eta_norms, d_level, residual) = if taus.is_empty() {
            (Vec::new(), 0.0, 0.0)
        } else {
            let (eta, residual) = invert_complex(modified_vandermonde(&c_values))?;
            let norms: Vec<f64> = eta.row_iter().map(|r| r.iter().map(|c| c.norm()).sum()).collect();
            let col_sums: f64 = eta.column_iter().map(|c| c.iter().sum::<Complex64>().norm()).sum();
            (norms, col_sums * growth, residual)
        };
        levels.push(LevelCertificate {
            support_size,
            j_count: taus.len(),
            a_values: eta_norms.iter().map(|e| e * growth).collect(),
            eta_norms,
            taus,
            c_values,
            d_level,
            cascade: 1.0,
            residual,
        });
    }
    let mut acc = 1.0;
    for level in levels.iter_mut().rev() {
        level.cascade = acc;
        acc *= 1.0 + level.d_level;
    }
    let c2: f64 = levels.iter().map(|l| l.cascade * l.a_values.iter().sum::<f64>()).sum();
    let c1 = sys.step1_bound(d);
    let sound = levels.iter().all(|l| l.residual <= VANDERMONDE_RESIDUAL) && c2.is_finite();
    Ok(Certificate { d, modulus, eps_star: sys.eps_star(), levels, c1, c2, c: c1 * c2, sound })
}

/// Certified `C(d, K)` over every class realizable at total degree `≤ d`.
///
/// For each support size `ℓ ≤ d` the `τ` values of all multisets of `ℓ`
/// individual degrees in `1..K` with sum `≤ d` are enumerated exactly.
pub fn certified_constant(d: usize, modulus: u32) -> Result<Certificate> {
    if d > 6 {
        return Err(Error::OutOfRange { what: "degree", detail: format!("{d} > 6") });
    }
    if !(3..=7).contains(&modulus) {
        return Err(Error::OutOfRange { what: "modulus", detail: format!("{modulus} not in 3..=7") });
    }
    let level_taus = (0..=d)
        .map(|l| {
            let set: BTreeSet<CycInt> =
                multisets(l, modulus - 1, d).iter().map(|a| tau_of(a, modulus)).collect::<Result<_>>()?;
            Ok((l, set.into_iter().collect()))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(d, modulus, level_taus)
}

/// Certificate built from only the classes present in `f`.
///
/// Its `C2` bounds `|f(√ω)|` and its class bounds cover the inseparable
/// parts of `f`; `C1` uses the degree of `f`.
pub fn instance_constant(f: &Poly) -> Result<Certificate> {
    let top = f.max_support_size().ok_or(Error::ZeroPolynomial)?;
    let mut per_level: Vec<BTreeSet<CycInt>> = vec![BTreeSet::new(); top + 1];
    for (alpha, _) in f.terms() {
        per_level[alpha.support_size()].insert(tau_of(alpha, f.modulus())?);
    }
    let level_taus = per_level.into_iter().enumerate().map(|(l, s)| (l, s.into_iter().collect())).collect();
    assemble(f.degree(), f.modulus(), level_taus)
}

pub fn is_odd_prime(k: u32) -> bool {
    k >= 3 && k % 2 == 1 && (3..).step_by(2).take_while(|p| p * p <= k).all(|p| !k.is_multiple_of(p))
}

/// The three structural conditions: equal support size, `|α| ≡ |β| (mod 2K)`,
/// and equal multisets of folded degrees `min(a, K - a)` on the supports.
pub fn bullet_conditions(alpha: &MultiIndex, beta: &MultiIndex, modulus: u32) -> bool {
    if alpha.support_size() != beta.support_size() {
        return false;
    }
    let period = 2 * modulus;
    if alpha.degree() % period != beta.degree() % period {
        return false;
    }
    let fold = |m: &MultiIndex| {
        let mut v: Vec<u32> = m.nonzero_entries().map(|a| a.min(modulus - a)).collect();
        v.sort_unstable();
        v
    };
    fold(alpha) == fold(beta)
}

/// Inseparability test for odd prime `K` via the structural conditions.
pub fn prime_inseparable(alpha: &MultiIndex, beta: &MultiIndex, modulus: u32) -> Result<bool> {
    if !is_odd_prime(modulus) {
        return Err(Error::NotOddPrime(modulus));
    }
    if alpha.len() != beta.len() {
        return Err(Error::DimensionMismatch { expected: alpha.len(), got: beta.len() });
    }
    for m in [alpha, beta] {
        if let Some((position, &degree)) = m.entries().iter().enumerate().find(|(_, &a)| a >= modulus) {
            return Err(Error::IndividualDegree { position, degree, modulus });
        }
    }
    Ok(bullet_conditions(alpha, beta, modulus))
}

/// Exact inseparability: equal support size and equal `τ` in `Z[ω_{2K}]`.
pub fn exact_inseparable(alpha: &MultiIndex, beta: &MultiIndex, modulus: u32) -> Result<bool> {
    Ok(alpha.support_size() == beta.support_size() && tau_of(alpha, modulus)?.try_eq(&tau_of(beta, modulus)?)?)
}

/// `f_S` after checking that `S` lies inside a single inseparable class.
///
/// For odd prime `K` the structural conditions are used, otherwise exact `τ`.
pub fn bounded_projection(f: &Poly, s: &BTreeSet<MultiIndex>) -> Result<Poly> {
    let k = f.modulus();
    for alpha in s {
        if alpha.len() != f.n() {
            return Err(Error::DimensionMismatch { expected: f.n(), got: alpha.len() });
        }
        if let Some((position, &degree)) = alpha.entries().iter().enumerate().find(|(_, &a)| a >= k) {
            return Err(Error::IndividualDegree { position, degree, modulus: k });
        }
    }
    if let Some(first) = s.iter().next() {
        for other in s.iter().skip(1) {
            let together =
                if is_odd_prime(k) { prime_inseparable(first, other, k)? } else { exact_inseparable(first, other, k)? };
            if !together {
                return Err(Error::InvalidProjectionSet(format!("{first} and {other} are separable")));
            }
        }
    }
    Ok(f.part_s(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::grid_sup_norm;
    use crate::poly::{random_poly, Scheme};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn beta_pair() -> (MultiIndex, MultiIndex) {
        (mi(&[2, 1, 1, 1, 1, 1, 1, 1]), mi(&[2, 2, 2, 2, 2, 2, 2, 1]))
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_of(&mi(&[0, 0, 0]), 3).unwrap(), CycInt::one(6));
        assert_eq!(tau_of(&mi(&[1, 2]), 3).unwrap(), CycInt::from_int(6, 3));
        let (b, bp) = beta_pair();
        assert_eq!(tau_of(&b, 3).unwrap(), tau_of(&bp, 3).unwrap());
        assert!(tau_of(&mi(&[3]), 3).is_err());
    }

    #[test]
    fn half_root_is_orthogonal_to_one_minus_root() {
        for k in 3..=12u32 {
            let s = half_root(k);
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU / k as f64);
            for p in 1..k {
                let d = c(1.0) - w.powu(p);
                let rhs = Complex64::i() * d / d.norm();
                assert!((s.powu(p) - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pseudoprojection_examples() {
        let f = Poly::from_terms(2, 3, [(mi(&[1, 0]), c(2.0)), (mi(&[1, 2]), c(3.0))]).unwrap();
        let d = pseudoproject(&f).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.coeff(&mi(&[1, 2])) - c(9.0)).norm() < 1e-12);

        let k = Poly::constant(3, 5, Complex64::new(1.0, 2.0)).unwrap();
        assert_eq!(pseudoproject(&k).unwrap(), k);

        assert_eq!(pseudoproject(&Poly::zero(2, 3).unwrap()), Err(Error::ZeroPolynomial));
        assert!(pseudoproject_iter(&f, 0).is_err());

        let d3 = pseudoproject_iter(&f, 3).unwrap();
        assert!((d3.coeff(&mi(&[1, 2])) - c(81.0)).norm() < 1e-10);
        let twice = pseudoproject(&pseudoproject(&f).unwrap()).unwrap();
        assert!(pseudoproject_iter(&f, 2).unwrap().max_coeff_diff(&twice) < 1e-12);
    }

    #[test]
    fn pseudoprojection_bound_small_sample() {
        for seed in 0..30 {
            let k = 3 + (seed % 3) as u32;
            let f = random_poly(4, 3, k, seed, Scheme::SparseUniform).unwrap();
            let l = f.max_support_size().unwrap();
            let lhs = grid_sup_norm(&pseudoproject(&f).unwrap(), k as usize).unwrap();
            let rhs = grid_sup_norm(&f, k as usize).unwrap();
            assert!(lhs <= PSEUDO_GROWTH.powi(l as i32) * rhs * (1.0 + 1e-9));
        }
    }

    #[test]
    fn transfer_examples() {
        let f = Poly::monomial(1, 3, vec![1], c(1.0)).unwrap();
        let table = omega2_transfer(&f).unwrap();
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((table[0] - c(1.0)).norm() < 1e-15);
        assert!((table[1] - w).norm() < 1e-15);
        let q = q_top(&table, 1).unwrap();
        assert!((q.coeff(&mi(&[1])) - (c(1.0) - w) / 2.0).norm() < 1e-14);

        let k = Poly::constant(2, 3, Complex64::new(0.5, -1.0)).unwrap();
        let q = q_top(&omega2_transfer(&k).unwrap(), 2).unwrap();
        assert!(q.max_coeff_diff(&transfer_top_form(&k).unwrap()) < 1e-14);
        assert!((q.coeff(&mi(&[0, 0])) - Complex64::new(0.5, -1.0)).norm() < 1e-14);

        let g = random_poly(4, 3, 3, 17, Scheme::DenseGaussian).unwrap();
        let q = q_top(&omega2_transfer(&g).unwrap(), 4).unwrap();
        assert!(q.max_coeff_diff(&transfer_top_form(&g).unwrap()) < 1e-9);
    }

    #[test]
    fn decomposition_examples() {
        let f = Poly::from_terms(2, 3, [(mi(&[1, 0]), c(1.0)), (mi(&[0, 1]), c(1.0))]).unwrap();
        let classes = inseparable_decompose(&f).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].tau, CycInt::one_minus_root(1, 3).unwrap());

        let g = Poly::from_terms(1, 3, [(mi(&[1]), c(1.0)), (mi(&[2]), c(1.0))]).unwrap();
        assert_eq!(inseparable_decompose(&g).unwrap().len(), 2);

        let (b, bp) = beta_pair();
        let h = Poly::from_terms(8, 3, [(b.clone(), c(1.0)), (bp.clone(), c(-2.0))]).unwrap();
        let classes = inseparable_decompose(&h).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![b, bp]);
    }

    #[test]
    fn classes_partition_and_share_zeta() {
        let f = random_poly(4, 4, 5, 3, Scheme::DenseGaussian).unwrap();
        let classes = inseparable_decompose(&f).unwrap();
        let mut sum = Poly::zero(4, 5).unwrap();
        for class in &classes {
            for m in &class.members {
                assert_eq!(m.support_size(), class.support_size);
                let z = half_root(5).powu(m.degree());
                assert!((z - class.zeta).norm() < 1e-12);
            }
            sum = sum.try_add(&class.part).unwrap();
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn vandermonde_examples() {
        let single = Poly::from_terms(2, 3, [(mi(&[1, 0]), c(2.0)), (mi(&[0, 1]), c(-1.0))]).unwrap();
        let r = vandermonde_recover(&single, 1).unwrap();
        assert_eq!(r.parts.len(), 1);
        assert!(r.parts[0].max_coeff_diff(&single) < 1e-12);

        let g = Poly::from_terms(1, 3, [(mi(&[1]), c(1.0)), (mi(&[2]), c(1.0))]).unwrap();
        let r = vandermonde_recover(&g, 1).unwrap();
        let direct = inseparable_decompose(&g).unwrap();
        assert_eq!(r.parts.len(), direct.len());
        for (p, d) in r.parts.iter().zip(&direct) {
            assert!(p.max_coeff_diff(&d.part) < 1e-8);
        }
        assert!(matches!(vandermonde_recover(&g, 2), Err(Error::NotTopLevel { requested: 2, actual: 1 })));
    }

    #[test]
    fn vandermonde_matches_grouping_on_random() {
        for seed in 0..5 {
            let f = random_poly(5, 4, 5, seed, Scheme::DenseGaussian).unwrap();
            let top = f.max_support_size().unwrap();
            let r = vandermonde_recover(&f, top).unwrap();
            let direct: Vec<_> =
                inseparable_decompose(&f).unwrap().into_iter().filter(|c| c.support_size == top).collect();
            assert_eq!(r.parts.len(), direct.len());
            for (p, d) in r.parts.iter().zip(&direct) {
                assert!(p.max_coeff_diff(&d.part) < 1e-8);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let f = Poly::monomial(1, 3, vec![1], c(1.0)).unwrap();
        let r = reduce_at_maximizer(&f).unwrap();
        assert_eq!(r.maximizer, vec![0]);
        assert_eq!(r.m, 0);
        assert!((r.max_value - 1.0).abs() < 1e-14);

        let k = Poly::constant(2, 3, c(4.0)).unwrap();
        let r = reduce_at_maximizer(&k).unwrap();
        assert_eq!(r.m, 0);
        assert!((r.g.eval(&[]).unwrap() - c(4.0)).norm() < 1e-14);

        // a maximizer forced onto the odd exponent: f = z + e^{-iπ/3}
        let f = Poly::from_terms(
            1,
            3,
            [(mi(&[1]), c(1.0)), (mi(&[0]), Complex64::from_polar(1.0, std::f64::consts::PI / 3.0))],
        )
        .unwrap();
        let r = reduce_at_maximizer(&f).unwrap();
        assert_eq!(r.maximizer, vec![1]);
        assert_eq!(r.selected, vec![0]);
        assert_eq!(r.g, f);
        assert!((r.g.eval(&[half_root(3)]).unwrap().norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reduction_postconditions_on_random() {
        for seed in 0..10 {
            let f = random_poly(4, 3, 3, seed, Scheme::DenseGaussian).unwrap();
            let r = reduce_at_maximizer(&f).unwrap();
            let at = r.g.eval(&vec![half_root(3); r.m]).unwrap().norm();
            assert!((at - grid_sup_norm(&f, 6).unwrap()).abs() < 1e-10);
            let gn = if r.m == 0 { r.g.eval(&[]).unwrap().norm() } else { grid_sup_norm(&r.g, 3).unwrap() };
            assert!(gn <= grid_sup_norm(&f, 3).unwrap() + 1e-10);
        }
    }

    #[test]
    fn certificate_examples() {
        let c0 = certified_constant(0, 3).unwrap();
        assert_eq!(c0.levels.len(), 1);
        assert_eq!(c0.levels[0].j_count, 1);
        assert!((c0.c2 - 1.0).abs() < 1e-12);
        assert!((c0.c - 1.0).abs() < 1e-12);

        let c4 = certified_constant(4, 3).unwrap();
        assert_eq!(c4.levels[2].j_count, 3);
        assert!(c4.sound);

        let c2 = certified_constant(2, 3).unwrap();
        assert!(c2.c.is_finite() && c2.c > 1.0);
        for l in &c2.levels {
            assert!((l.j_count as f64) <= ((3 + 2) as f64).powi(2));
        }
        assert!(certified_constant(7, 3).is_err());
        assert!(certified_constant(2, 8).is_err());
        assert!(certified_constant(2, 2).is_err());
    }

    #[test]
    fn multisets_enumeration() {
        assert_eq!(multisets(2, 2, 4).len(), 3);
        assert_eq!(multisets(2, 2, 3).len(), 2);
        assert_eq!(multisets(0, 4, 0), vec![MultiIndex::new(vec![])]);
        assert_eq!(multisets(3, 6, 3), vec![mi(&[1, 1, 1])]);
    }

    #[test]
    fn prime_characterization_examples() {
        let a = mi(&[1, 2]);
        assert!(prime_inseparable(&a, &a, 3).unwrap());
        assert!(prime_inseparable(&mi(&[1, 2]), &mi(&[2, 1]), 3).unwrap());
        assert!(exact_inseparable(&mi(&[1, 2]), &mi(&[2, 1]), 3).unwrap());
        assert!(!prime_inseparable(&mi(&[1]), &mi(&[2]), 3).unwrap());
        assert!(!exact_inseparable(&mi(&[1]), &mi(&[2]), 3).unwrap());
        assert_eq!(prime_inseparable(&a, &a, 9), Err(Error::NotOddPrime(9)));
        assert_eq!(prime_inseparable(&a, &a, 2), Err(Error::NotOddPrime(2)));
        let (b, bp) = beta_pair();
        assert!(prime_inseparable(&b, &bp, 3).unwrap());
    }

    #[test]
    fn odd_primes() {
        let primes: Vec<u32> = (0..40).filter(|&k| is_odd_prime(k)).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn bounded_projection_examples() {
        let f = random_poly(3, 3, 3, 4, Scheme::DenseGaussian).unwrap();
        let classes = inseparable_decompose(&f).unwrap();
        let class = &classes[classes.len() / 2];
        let s: BTreeSet<MultiIndex> = class.members.iter().cloned().collect();
        assert_eq!(bounded_projection(&f, &s).unwrap(), class.part);

        let outside: BTreeSet<MultiIndex> = [mi(&[2, 2, 2])].into_iter().collect();
        assert!(bounded_projection(&f, &outside).unwrap().is_zero());

        let mixed: BTreeSet<MultiIndex> = [mi(&[1, 0, 0]), mi(&[2, 0, 0])].into_iter().collect();
        assert!(matches!(bounded_projection(&f, &mixed), Err(Error::InvalidProjectionSet(_))));

        // composite modulus uses exact tau
        let g = random_poly(2, 3, 4, 1, Scheme::DenseGaussian).unwrap();
        let s: BTreeSet<MultiIndex> = [mi(&[1, 0]), mi(&[0, 1])].into_iter().collect();
        assert_eq!(bounded_projection(&g, &s).unwrap().len(), 2);
    }

    #[test]
    fn fold_histogram_counts() {
        assert_eq!(fold_histogram(&mi(&[1, 4, 2, 0, 3]), 5), vec![2, 2]);
        assert_eq!(fold_histogram(&mi(&[3, 3]), 6), vec![0, 0, 2]);
    }
}
