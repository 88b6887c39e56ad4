//! Exact arithmetic in the cyclotomic integers `Z[ω_m]`.
//!
//! Elements are stored as their canonical residue modulo the `m`-th
//! cyclotomic polynomial `Φ_m`, so equality is a plain coefficient
//! comparison. The tau factors of a modulus `K` live in `Z[ω_{2K}]`, with
//! `ω_K` represented as `ω_{2K}^2`; the half root `e^{iπ/K}` is then the
//! generator itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the `m`-th cyclotomic polynomial.
///
/// Computed as `(x^m - 1) / ∏_{d | m, d < m} Φ_d` by exact division.
pub fn cyclotomic_polynomial(m: u32) -> Result<Vec<BigInt>> {
    if m == 0 {
        return Err(Error::ModulusTooSmall { min: 1, got: 0 });
    }
    Ok(cyclotomic_shared(m).as_ref().clone())
}

fn cyclotomic_shared(m: u32) -> Arc<Vec<BigInt>> {
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let divisor = cyclotomic_shared(d);
        num = exact_div_monic(&num, &divisor);
    }
    let shared = Arc::new(num);
    cache().lock().unwrap().insert(m, Arc::clone(&shared));
    shared
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dn] = c.clone();
        for (t, dt) in den.iter().enumerate() {
            rem[i - dn + t] -= &c * dt;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division by cyclotomic factor was not exact");
    quot
}

/// Euler's totient, the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|&k| gcd(k, m) == 1).count()
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An element of `Z[ω_m]` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Reduces an arbitrary integer polynomial in `ω_m` to canonical form.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ModulusTooSmall { min: 1, got: 0 });
        }
        Ok(Self::reduce(order, coeffs))
    }

    fn reduce(order: u32, mut coeffs: Vec<BigInt>) -> Self {
        let phi = cyclotomic_shared(order);
        let deg = phi.len() - 1;
        if coeffs.len() > deg {
            for i in (deg..coeffs.len()).rev() {
                let c = std::mem::take(&mut coeffs[i]);
                if c.is_zero() {
                    continue;
                }
                for (t, pt) in phi.iter().enumerate().take(deg) {
                    coeffs[i - deg + t] -= &c * pt;
                }
            }
        }
        coeffs.resize(deg, BigInt::zero());
        CycInt { order, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        Self::reduce(order, Vec::new())
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        Self::reduce(order, vec![BigInt::from(value)])
    }

    /// `ω_m^e` for any integer exponent.
    pub fn root_power(order: u32, e: i64) -> Self {
        let e = e.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Self::reduce(order, coeffs)
    }

    /// `1 - ω_K^k`, stored in `Z[ω_{2K}]`.
    pub fn one_minus_root(k: i64, modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { min: 2, got: modulus });
        }
        if k.rem_euclid(modulus as i64) == 0 {
            return Err(Error::ZeroExponent { k, modulus });
        }
        let order = 2 * modulus;
        let e = (2 * k).rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] += 1;
        coeffs[e] -= 1;
        Ok(Self::reduce(order, coeffs))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        Self::reduce(self.order, prod)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Exact equality; operands of different order are an error rather than `false`.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.check_order(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Evaluates at `ω_m = e^{2πi/m}`.
    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(1.0, step * i as f64) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·w")?,
                _ => write!(f, "{c}·w^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " (w = ω_{})", self.order)
    }
}

/// Coefficients go out as JSON integers when they fit in `i64`, strings otherwise.
impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_one() {
        for m in 1..=30u32 {
            let mut prod = ints(&[1]);
            for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
                let p = cyclotomic_polynomial(d).unwrap();
                let mut out = vec![BigInt::zero(); prod.len() + p.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "m = {m}");
            assert_eq!(cyclotomic_polynomial(m).unwrap().len() - 1, totient(m));
        }
    }

    #[test]
    fn one_minus_root_examples() {
        let two = CycInt::one_minus_root(2, 4).unwrap();
        assert_eq!(two, CycInt::from_int(8, 2));

        let a = CycInt::one_minus_root(1, 3).unwrap();
        let z = a.to_complex();
        assert!((z - Complex64::new(1.5, -(3f64).sqrt() / 2.0)).norm() < 1e-12);

        let b = CycInt::one_minus_root(2, 3).unwrap();
        assert_eq!(a.try_mul(&b).unwrap(), CycInt::from_int(6, 3));

        assert!(matches!(CycInt::one_minus_root(3, 3), Err(Error::ZeroExponent { .. })));
        assert!(matches!(CycInt::one_minus_root(0, 5), Err(Error::ZeroExponent { .. })));
    }

    #[test]
    fn sixth_power_identity_for_cube_roots() {
        let a = CycInt::one_minus_root(1, 3).unwrap();
        let b = CycInt::one_minus_root(2, 3).unwrap();
        assert!(a.pow(6).try_eq(&b.pow(6)).unwrap());
        assert!(!a.try_eq(&b).unwrap());
        let lhs = a.pow(7).try_mul(&b).unwrap();
        let rhs = a.try_mul(&b.pow(7)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = CycInt::one(6);
        let b = CycInt::one(8);
        assert!(matches!(a.try_mul(&b), Err(Error::OrderMismatch { .. })));
        assert!(a.try_eq(&b).is_err());
    }

    #[test]
    fn unit_is_identity_and_root_has_full_order() {
        let a = CycInt::one_minus_root(3, 7).unwrap().pow(3);
        assert_eq!(a.try_mul(&CycInt::one(14)).unwrap(), a);
        let w = CycInt::root_power(14, 1);
        assert_eq!(w.pow(14), CycInt::one(14));
        assert_ne!(w.pow(7), CycInt::one(14));
        assert_eq!(w.pow(7), CycInt::from_int(14, -1));
    }

    #[test]
    fn modulus_of_one_minus_root_is_twice_sine() {
        for k_mod in 2..=12u32 {
            for k in 1..k_mod {
                let v = CycInt::one_minus_root(k as i64, k_mod).unwrap().to_complex().norm();
                let expect = 2.0 * (k as f64 * std::f64::consts::PI / k_mod as f64).sin();
                assert!((v - expect).abs() < 1e-12, "K={k_mod} k={k}");
            }
        }
    }

    #[test]
    fn serializes_small_coefficients_as_integers() {
        let v = serde_json::to_value(CycInt::from_int(6, 3)).unwrap();
        assert_eq!(v, serde_json::json!({"order": 6, "coeffs": [3, 0]}));
    }
}
