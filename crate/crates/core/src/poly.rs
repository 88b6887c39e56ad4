//! Sparse analytic polynomials on the polytorus with bounded individual degree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;

/// Exponent vector `α` of a monomial `z^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a != 0).map(|(j, _)| j)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Nonzero entries, i.e. the multiset of individual degrees on the support.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied().filter(|&a| a != 0)
    }

    fn validate(&self, n: usize, modulus: u32) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.0.len() });
        }
        if let Some((position, &degree)) = self.0.iter().enumerate().find(|(_, &a)| a >= modulus) {
            return Err(Error::IndividualDegree { position, degree, modulus });
        }
        Ok(())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `f(z) = Σ_α a_α z^α` over `n` variables with every `α_j ≤ K - 1`.
///
/// Only nonzero coefficients are stored; iteration is lexicographic in `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    n: usize,
    modulus: u32,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl Poly {
    pub fn zero(n: usize, modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { min: 2, got: modulus });
        }
        Ok(Poly { n, modulus, terms: BTreeMap::new() })
    }

    pub fn constant(n: usize, modulus: u32, c: Complex64) -> Result<Self> {
        Self::from_terms(n, modulus, [(MultiIndex::zero(n), c)])
    }

    pub fn monomial(n: usize, modulus: u32, alpha: Vec<u32>, c: Complex64) -> Result<Self> {
        Self::from_terms(n, modulus, [(MultiIndex::new(alpha), c)])
    }

    /// Builds a polynomial, summing repeated multi-indices.
    pub fn from_terms<I>(n: usize, modulus: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut f = Self::zero(n, modulus)?;
        for (alpha, c) in terms {
            alpha.validate(n, modulus)?;
            *f.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        f.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(f)
    }

    /// Same variables and modulus, no validation; callers guarantee the indices are legal.
    pub(crate) fn with_terms(&self, terms: BTreeMap<MultiIndex, Complex64>) -> Self {
        let mut terms = terms;
        terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Poly { n: self.n, modulus: self.modulus, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&MultiIndex, &Complex64)> + '_ {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<MultiIndex, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|a| a.degree() as usize).max().unwrap_or(0)
    }

    pub fn max_support_size(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::support_size).max()
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: z.len() });
        }
        let k = self.modulus as usize;
        let powers: Vec<Vec<Complex64>> = z
            .iter()
            .map(|&zj| {
                let mut p = Vec::with_capacity(k);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..k {
                    p.push(acc);
                    acc *= zj;
                }
                p
            })
            .collect();
        Ok(self
            .terms
            .iter()
            .map(|(alpha, &a)| {
                alpha
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .fold(a, |acc, (j, &e)| acc * powers[j][e as usize])
            })
            .sum())
    }

    /// Evaluates at the diagonal point `(c, …, c)`.
    pub fn eval_diagonal(&self, c: Complex64) -> Complex64 {
        self.terms.iter().map(|(alpha, &a)| a * c.powu(alpha.degree())).sum()
    }

    fn filtered(&self, keep: impl Fn(&MultiIndex) -> bool) -> Poly {
        let terms = self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), *c)).collect();
        Poly { n: self.n, modulus: self.modulus, terms }
    }

    /// The `k`-homogeneous part `f_k`.
    pub fn part_homogeneous(&self, k: usize) -> Poly {
        self.filtered(|a| a.degree() as usize == k)
    }

    /// Terms whose support has exactly `l` variables.
    pub fn part_support(&self, l: usize) -> Poly {
        self.filtered(|a| a.support_size() == l)
    }

    /// The `S`-part `Σ_{α ∈ S} a_α z^α`.
    pub fn part_s(&self, s: &BTreeSet<MultiIndex>) -> Poly {
        self.filtered(|a| s.contains(a))
    }

    pub fn scale(&self, c: Complex64) -> Poly {
        self.with_terms(self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiIndex, Complex64) -> Complex64) -> Poly {
        self.with_terms(self.terms.iter().map(|(a, &v)| (a.clone(), f(a, v))).collect())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            *terms.entry(a.clone()).or_default() += c;
        }
        Ok(self.with_terms(terms))
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        if self.modulus != other.modulus {
            return Err(Error::OrderMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }

    /// Largest coefficient-wise distance over the union of both spectra.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let keys: BTreeSet<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().map(|a| (self.coeff(a) - other.coeff(a)).norm()).fold(0.0, f64::max)
    }

    /// Values on `Ω_M^n` in grid index order; exponents above `M - 1` wrap.
    pub fn grid_values(&self, m: usize) -> Result<Vec<Complex64>> {
        self.grid_values_capped(m, grid::enumeration_cap())
    }

    pub fn grid_values_capped(&self, m: usize, cap: u64) -> Result<Vec<Complex64>> {
        if m == 0 {
            return Err(Error::ModulusTooSmall { min: 1, got: 0 });
        }
        let size = grid::grid_size(m, self.n, cap)?;
        let mut dense = vec![Complex64::new(0.0, 0.0); size];
        for (alpha, &c) in &self.terms {
            let idx = alpha.entries().iter().fold(0usize, |acc, &e| acc * m + e as usize % m);
            dense[idx] += c;
        }
        Ok(grid::transform_axes(dense, m, self.n, 1))
    }

    /// Samples of `f` on `Ω_K^n`.
    pub fn inverse_dft(&self) -> Result<Vec<Complex64>> {
        self.grid_values(self.modulus as usize)
    }

    /// Recovers the expansion of a function on `Ω_K^n` from its samples,
    /// `f̂(α) = K^{-n} Σ_z f(z) conj(z^α)`.
    ///
    /// Coefficients below `1e-14·(1 + max|f|)` are rounding noise and are dropped.
    pub fn group_dft(samples: &[Complex64], n: usize, modulus: u32) -> Result<Poly> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { min: 2, got: modulus });
        }
        let m = modulus as usize;
        let size = grid::grid_size(m, n, grid::enumeration_cap())?;
        if samples.len() != size {
            return Err(Error::IncompleteSamples { expected: size, got: samples.len() });
        }
        let scale = 1.0 / size as f64;
        let floor = 1e-14 * (1.0 + samples.iter().map(|v| v.norm()).fold(0.0, f64::max));
        let coeffs = grid::transform_axes(samples.to_vec(), m, n, -1);
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i, c * scale))
            .filter(|(_, c)| c.norm() > floor)
            .map(|(i, c)| (MultiIndex::new(grid::exponents_of(i, m, n)), c));
        Poly::from_terms(n, modulus, terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for j in alpha.support() {
                match alpha.entries()[j] {
                    1 => write!(f, "·z{}", j + 1)?,
                    e => write!(f, "·z{}^{}", j + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// All multi-indices in `{0, …, K-1}^n` with `|α| ≤ d`, in lexicographic order.
pub fn monomials_up_to(n: usize, d: usize, modulus: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut alpha = vec![0u32; n];
    let mut total = 0usize;
    loop {
        out.push(MultiIndex::new(alpha.clone()));
        let mut advanced = false;
        for i in (0..n).rev() {
            if alpha[i] + 1 < modulus && total < d {
                alpha[i] += 1;
                total += 1;
                advanced = true;
                break;
            }
            total -= alpha[i] as usize;
            alpha[i] = 0;
        }
        if !advanced {
            return out;
        }
    }
}

/// Coefficient distribution used by [`random_poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Every admissible monomial, standard complex Gaussian coefficients.
    DenseGaussian,
    /// A few random monomials with coefficients uniform in `[-1, 1]^2`.
    SparseUniform,
    /// Every admissible monomial with a uniformly random unimodular coefficient.
    Unimodular,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::DenseGaussian, Scheme::SparseUniform, Scheme::Unimodular];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::DenseGaussian => "dense-gaussian",
            Scheme::SparseUniform => "sparse-uniform",
            Scheme::Unimodular => "unimodular",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL.into_iter().find(|sc| sc.name() == s).ok_or_else(|| Error::Parse(format!("unknown scheme {s:?}")))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Seeded random polynomial of total degree at most `d`.
pub fn random_poly(n: usize, d: usize, modulus: u32, seed: u64, scheme: Scheme) -> Result<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = monomials_up_to(n, d, modulus);
    let picks: Vec<MultiIndex> = match scheme {
        Scheme::DenseGaussian | Scheme::Unimodular => pool,
        Scheme::SparseUniform => {
            let count = rng.gen_range(1..=pool.len().min(2 * n + 2));
            let mut chosen = index::sample(&mut rng, pool.len(), count).into_vec();
            chosen.sort_unstable();
            chosen.into_iter().map(|i| pool[i].clone()).collect()
        }
    };
    let terms: Vec<(MultiIndex, Complex64)> = picks
        .into_iter()
        .map(|alpha| {
            let c = match scheme {
                Scheme::DenseGaussian => {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
                }
                Scheme::SparseUniform => Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)),
                Scheme::Unimodular => Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
            };
            (alpha, c)
        })
        .collect();
    Poly::from_terms(n, modulus, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn multi_index_structure() {
        let a = mi(&[2, 0, 1, 0]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.support_size(), 2);
        assert_eq!(a.support().collect::<Vec<_>>(), vec![0, 2]);
        assert!(a.support_size() as u32 <= a.degree());
    }

    #[test]
    fn eval_examples() {
        let f = Poly::monomial(2, 3, vec![1, 1], c(1.0, 0.0)).unwrap();
        assert!((f.eval(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        let g = Poly::from_terms(1, 3, [(mi(&[0]), c(1.0, 0.0)), (mi(&[1]), c(1.0, 0.0)), (mi(&[2]), c(1.0, 0.0))])
            .unwrap();
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!(g.eval(&[w]).unwrap().norm() < 1e-14);

        let h = Poly::from_terms(2, 3, [(mi(&[1, 0]), c(2.0, 0.0)), (mi(&[1, 2]), c(3.0, 0.0))]).unwrap();
        let s = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let expect = s * 2.0 - 3.0;
        assert!((h.eval(&[s, s]).unwrap() - expect).norm() < 1e-14);
        assert!((h.eval_diagonal(s) - expect).norm() < 1e-14);

        assert!(matches!(h.eval(&[s]), Err(Error::DimensionMismatch { expected: 2, got: 1 })));
    }

    #[test]
    fn rejects_large_individual_degree() {
        let err = Poly::monomial(1, 3, vec![3], c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::IndividualDegree { position: 0, degree: 3, modulus: 3 }));
        assert!(Poly::monomial(2, 3, vec![1], c(1.0, 0.0)).is_err());
    }

    #[test]
    fn structural_parts() {
        let f = Poly::from_terms(
            2,
            3,
            [(mi(&[0, 0]), c(1.0, 0.0)), (mi(&[1, 0]), c(1.0, 0.0)), (mi(&[1, 1]), c(1.0, 0.0))],
        )
        .unwrap();
        assert_eq!(f.part_homogeneous(1), Poly::monomial(2, 3, vec![1, 0], c(1.0, 0.0)).unwrap());

        let g = Poly::from_terms(2, 3, [(mi(&[2, 0]), c(1.0, 0.0)), (mi(&[1, 1]), c(1.0, 0.0))]).unwrap();
        assert_eq!(g.part_support(1), Poly::monomial(2, 3, vec![2, 0], c(1.0, 0.0)).unwrap());
        assert!(g.part_s(&BTreeSet::new()).is_zero());
    }

    #[test]
    fn partitions_reconstruct_exactly() {
        let f = random_poly(4, 4, 4, 11, Scheme::DenseGaussian).unwrap();
        let mut by_degree = Poly::zero(4, 4).unwrap();
        for k in 0..=f.degree() {
            by_degree = by_degree.try_add(&f.part_homogeneous(k)).unwrap();
        }
        assert_eq!(by_degree, f);
        let mut by_support = Poly::zero(4, 4).unwrap();
        for l in 0..=4 {
            by_support = by_support.try_add(&f.part_support(l)).unwrap();
        }
        assert_eq!(by_support, f);
    }

    #[test]
    fn dft_of_simple_functions() {
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let samples = vec![c(1.0, 0.0), w, w * w];
        let f = Poly::group_dft(&samples, 1, 3).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f.coeff(&mi(&[1])) - c(1.0, 0.0)).norm() < 1e-14);

        let constant = vec![c(2.0, -1.0); 9];
        let g = Poly::group_dft(&constant, 2, 3).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g.coeff(&mi(&[0, 0])) - c(2.0, -1.0)).norm() < 1e-14);

        assert!(matches!(Poly::group_dft(&constant[..8], 2, 3), Err(Error::IncompleteSamples { expected: 9, got: 8 })));
    }

    #[test]
    fn dft_roundtrip_and_parseval() {
        let f = random_poly(3, 3, 4, 5, Scheme::DenseGaussian).unwrap();
        let samples = f.inverse_dft().unwrap();
        let back = Poly::group_dft(&samples, 3, 4).unwrap();
        assert!(back.max_coeff_diff(&f) < 1e-10);

        let energy: f64 = samples.iter().map(|v| v.norm_sqr()).sum::<f64>() / samples.len() as f64;
        let coeff_energy: f64 = f.terms().map(|(_, v)| v.norm_sqr()).sum();
        assert!((energy - coeff_energy).abs() <= 1e-10 * coeff_energy);
    }

    #[test]
    fn grid_values_agree_with_pointwise_eval() {
        let f = random_poly(3, 3, 3, 9, Scheme::SparseUniform).unwrap();
        for m in [2usize, 3, 5, 6] {
            let vals = f.grid_values(m).unwrap();
            let roots = grid::roots_of_unity(m);
            for (i, e) in grid::GridCounter::new(m, 3).enumerate() {
                let z: Vec<_> = e.iter().map(|&k| roots[k as usize]).collect();
                assert!((f.eval(&z).unwrap() - vals[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn monomial_enumeration_respects_bounds() {
        let all = monomials_up_to(3, 2, 3);
        // 1 + 3 + (3 + 3) = 10 multi-indices with |α| ≤ 2
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_up_to(2, 0, 5), vec![MultiIndex::zero(2)]);
        assert_eq!(monomials_up_to(1, 9, 3).len(), 3);
    }

    #[test]
    fn random_poly_examples() {
        let f = random_poly(2, 0, 3, 99, Scheme::DenseGaussian).unwrap();
        assert_eq!(f.degree(), 0);
        assert!(f.len() <= 1);

        for scheme in Scheme::ALL {
            assert_eq!(random_poly(4, 3, 3, 7, scheme).unwrap(), random_poly(4, 3, 3, 7, scheme).unwrap());
        }

        let g = random_poly(4, 3, 3, 7, Scheme::SparseUniform).unwrap();
        assert!(g.terms().all(|(a, _)| a.degree() <= 3 && a.max_entry() <= 2));
        assert_ne!(
            random_poly(4, 3, 3, 8, Scheme::Unimodular).unwrap(),
            random_poly(4, 3, 3, 7, Scheme::Unimodular).unwrap()
        );
    }

    #[test]
    fn scheme_names_parse() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("gaussian".parse::<Scheme>().is_err());
    }
}
