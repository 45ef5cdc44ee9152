//! Exact arithmetic in the ring of cyclotomic integers ℤ[ζ_m].
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` of
//! `ℤ[x]/(Φ_m(x))`. Because `Φ_m` is monic and irreducible this
//! representation is canonical, so equality and zero tests are plain
//! coefficient comparisons.
//!
//! ```
//! use crewlab::cyclotomic::CyclotomicRing;
//!
//! let ring = CyclotomicRing::new(3)?;
//! let w = ring.root(1);
//! let w2 = ring.root(2);
//! // ζ² = -1 - ζ in the power basis of ℤ[x]/(x² + x + 1)
//! assert_eq!(w2, ring.reduce_i64(&[-1, -1]));
//! assert_eq!(&w * &w2, ring.one());
//! assert!((&w + &w2).is_real());
//! # Ok::<(), crewlab::Error>(())
//! ```

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler's totient function.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact quotient of `num` by the monic polynomial `den` (coefficients low to high).
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (k, &d) in den.iter().enumerate() {
            rem[i - dd + k] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division by cyclotomic factor not exact");
    quot
}

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
///
/// Computed as `(x^m - 1) / ∏_{d | m, d < m} Φ_d(x)` and memoized.
pub fn cyclotomic_polynomial(m: u32) -> Result<Arc<[i64]>> {
    if m == 0 {
        return Err(Error::InvalidOrder(m));
    }
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return Ok(p.clone());
    }
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in (1..m).filter(|&d| m.is_multiple_of(d)) {
        let factor = cyclotomic_polynomial(d)?;
        poly = div_exact_monic(&poly, &factor);
    }
    let poly: Arc<[i64]> = poly.into();
    phi_cache().lock().unwrap().insert(m, poly.clone());
    Ok(poly)
}

/// Handle on ℤ[ζ_m] for a fixed root order `m`.
#[derive(Clone, Debug)]
pub struct CyclotomicRing {
    m: u32,
    phi: Arc<[i64]>,
}

impl CyclotomicRing {
    pub fn new(m: u32) -> Result<Self> {
        Ok(CyclotomicRing { m, phi: cyclotomic_polynomial(m)? })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Rank of the ring as a ℤ-module, φ(m).
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.phi
    }

    /// Canonical representative of `Σ raw[i] ζ^i`; `raw` may have any length.
    pub fn reduce(&self, raw: &[BigInt]) -> CyclotomicInteger {
        let m = self.m as usize;
        let mut folded = vec![BigInt::zero(); m.max(self.degree())];
        for (i, c) in raw.iter().enumerate() {
            folded[i % m] += c;
        }
        self.reduce_folded(folded)
    }

    pub fn reduce_i64(&self, raw: &[i64]) -> CyclotomicInteger {
        let m = self.m as usize;
        let mut folded = vec![BigInt::zero(); m.max(self.degree())];
        for (i, &c) in raw.iter().enumerate() {
            folded[i % m] += c;
        }
        self.reduce_folded(folded)
    }

    // `raw` has length at least the degree; entries past the degree are
    // eliminated with the monic modulus.
    fn reduce_folded(&self, mut raw: Vec<BigInt>) -> CyclotomicInteger {
        let d = self.degree();
        for i in (d..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[i]);
            for (k, &p) in self.phi[..d].iter().enumerate() {
                if p != 0 {
                    raw[i - d + k] -= &c * p;
                }
            }
        }
        raw.truncate(d);
        CyclotomicInteger { m: self.m, phi: self.phi.clone(), coeffs: raw }
    }

    pub fn zero(&self) -> CyclotomicInteger {
        self.reduce_i64(&[])
    }

    pub fn one(&self) -> CyclotomicInteger {
        self.reduce_i64(&[1])
    }

    pub fn integer(&self, k: i64) -> CyclotomicInteger {
        self.reduce_i64(&[k])
    }

    /// ζ^e, with `e` taken modulo m.
    pub fn root(&self, e: u32) -> CyclotomicInteger {
        let mut raw = vec![0i64; self.m as usize];
        raw[(e % self.m) as usize] = 1;
        self.reduce_i64(&raw)
    }

    /// Σ_e counts[e] ζ^e for a histogram of root exponents.
    pub fn from_root_counts(&self, counts: &[i64]) -> CyclotomicInteger {
        self.reduce_i64(counts)
    }
}

/// An element of ℤ[ζ_m] in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicInteger {
    m: u32,
    phi: Arc<[i64]>,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn ring(&self) -> CyclotomicRing {
        CyclotomicRing { m: self.m, phi: self.phi.clone() }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::IncompatibleOrder(self.m, other.m));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicInteger { m: self.m, phi: self.phi.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicInteger { m: self.m, phi: self.phi.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(d)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(self.ring().reduce_folded(raw))
    }

    /// Complex conjugate, the automorphism ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut raw = vec![BigInt::zero(); m.max(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(m - k % m) % m] += c;
        }
        self.ring().reduce_folded(raw)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The value as a rational integer, if it lies in ℤ.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Evaluation at ζ = exp(2πi/m) in double precision.
    pub fn embed(&self) -> Complex64 {
        let step = 2.0 * std::f64::consts::PI / self.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(1.0, step * k as f64) * c
            })
            .sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInteger {}

impl Hash for CyclotomicInteger {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInteger(m={}, {:?})", self.m, self.coeffs)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on mismatched orders; use the `checked_*` methods
// when the orders are not known to agree.
impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.checked_add(rhs).expect("cyclotomic orders differ")
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.checked_sub(rhs).expect("cyclotomic orders differ")
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.checked_mul(rhs).expect("cyclotomic orders differ")
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger { m: self.m, phi: self.phi.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
