//! Arithmetic in `Z / p^k` and polynomials over it.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::valuation::{reduce_rational, Prime};

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// The modulus `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus {
    p: Prime,
    k: u32,
    #[serde(rename = "modulus")]
    m: u64,
}

impl Modulus {
    pub fn new(p: Prime, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("precision k must be >= 1".into()));
        }
        let m = p
            .get()
            .checked_pow(k)
            .filter(|m| *m < (1u64 << 62))
            .ok_or_else(|| Error::InvalidArgument(format!("{}^{} is too large", p, k)))?;
        Ok(Modulus { p, k, m })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.m
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    #[inline]
    pub fn precision(self) -> u32 {
        self.k
    }

    /// The modulus `p^j` for `j <= k`.
    pub fn lower(self, j: u32) -> Result<Self> {
        if j > self.k {
            return Err(Error::InvalidArgument(format!("cannot raise precision {} to {}", self.k, j)));
        }
        Modulus::new(self.p, j)
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    #[inline]
    pub fn reduce_i128(self, x: i128) -> u64 {
        x.rem_euclid(self.m as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.m
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.m - b) % self.m
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn inv(self, a: u64) -> Option<u64> {
        inv_mod(a, self.m)
    }

    #[inline]
    pub fn is_unit(self, a: u64) -> bool {
        !a.is_multiple_of(self.p.get())
    }

    /// `v_p` of a residue, `None` for zero.
    pub fn valuation(self, a: u64) -> Option<u32> {
        let a = a % self.m;
        if a == 0 {
            return None;
        }
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(self.p.get()) {
            x /= self.p.get();
            v += 1;
        }
        Some(v)
    }

    pub fn reduce_rational(self, q: &BigRational) -> Option<u64> {
        reduce_rational(q, self.m)
    }

    /// Symmetric representative in `(-m/2, m/2]`.
    pub fn signed(self, a: u64) -> i64 {
        let a = a % self.m;
        if a > self.m / 2 {
            a as i64 - self.m as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

/// Polynomial over `Z / p^k`, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    modulus: Modulus,
}

impl ModPoly {
    pub fn new(coeffs: Vec<u64>, modulus: Modulus) -> Self {
        let mut p = ModPoly { coeffs: coeffs.into_iter().map(|c| c % modulus.value()).collect(), modulus };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64], modulus: Modulus) -> Self {
        ModPoly::new(coeffs.iter().map(|&c| modulus.reduce_i64(c)).collect(), modulus)
    }

    pub fn zero(modulus: Modulus) -> Self {
        ModPoly { coeffs: Vec::new(), modulus }
    }

    pub fn one(modulus: Modulus) -> Self {
        ModPoly::new(vec![1], modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new((0..n).map(|i| m.add(self.coeff(i), other.coeff(i))).collect(), m)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new((0..n).map(|i| m.sub(self.coeff(i), other.coeff(i))).collect(), m)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        ModPoly::new(out, m)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let m = self.modulus;
        ModPoly::new(self.coeffs.iter().map(|&a| m.mul(a, c)).collect(), m)
    }

    pub fn eval(&self, x: i64) -> u64 {
        let m = self.modulus;
        let x = m.reduce_i64(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    pub fn derivative(&self) -> ModPoly {
        let m = self.modulus;
        ModPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| m.mul(c, i as u64 % m.value())).collect(),
            m,
        )
    }

    /// Synthetic division by `(z - alpha)`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, alpha: i64) -> (ModPoly, u64) {
        let m = self.modulus;
        if self.is_zero() {
            return (ModPoly::zero(m), 0);
        }
        let a = m.reduce_i64(alpha);
        let n = self.coeffs.len();
        let mut q = vec![0u64; n - 1];
        let mut carry = 0u64;
        for i in (0..n).rev() {
            let c = m.add(self.coeffs[i], m.mul(carry, a));
            if i == 0 {
                return (ModPoly::new(q, m), c);
            }
            q[i - 1] = c;
            carry = c;
        }
        unreachable!()
    }

    /// Reduces to a lower precision `p^j`.
    pub fn lower(&self, j: u32) -> Result<ModPoly> {
        let lm = self.modulus.lower(j)?;
        Ok(ModPoly::new(self.coeffs.clone(), lm))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{i}")?,
            }
        }
        write!(f, " (mod {})", self.modulus.value())
    }
}
