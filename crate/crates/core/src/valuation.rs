//! Exact p-adic valuations of integers, rationals, factorials and binomials,
//! plus the valuation formulas for the Bessel and exponential coefficients.
//!
//! Valuations of scalars in the totally ramified extension `Q_p(π)`,
//! `π^(p-1) = -p`, are kept in integer π-units where `v(π) = 1` and
//! `v(p) = p - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime `p >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::NotOddPrime(p));
        }
        let mut d = 3;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotOddPrime(p));
            }
            d += 2;
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^e` as `u64`; panics on overflow.
    pub fn pow(self, e: u32) -> u64 {
        self.0.checked_pow(e).expect("p^e overflows u64")
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A p-adic valuation; `Infinite` is the valuation of zero and orders above
/// every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Valuation in π-units (`v(π) = 1`, `v(p) = p - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiValuation(pub i64);

impl PiValuation {
    /// Converts a p-adic valuation into π-units.
    pub fn from_p_valuation(v: i64, p: Prime) -> Self {
        PiValuation(v * (p.get() as i64 - 1))
    }

    /// Back to p-adic units, as an exact fraction over `p - 1`.
    pub fn to_p_valuation(self, p: Prime) -> Ratio<i64> {
        Ratio::new(self.0, p.get() as i64 - 1)
    }
}

impl std::ops::Add for PiValuation {
    type Output = PiValuation;
    fn add(self, rhs: PiValuation) -> PiValuation {
        PiValuation(self.0 + rhs.0)
    }
}

/// Base-p digit sum of `n`, with the number it was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitSum {
    pub n: u64,
    pub p: Prime,
    pub sigma: u64,
}

impl DigitSum {
    pub fn of(n: u64, p: Prime) -> Self {
        DigitSum { n, p, sigma: digit_sum(n, p) }
    }
}

/// Sum of the base-p digits of `n`.
pub fn digit_sum(mut n: u64, p: Prime) -> u64 {
    let p = p.get();
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `v_p(n!) = (n - Σ_n) / (p - 1)`.
pub fn vp_factorial(n: u64, p: Prime) -> u64 {
    (n - digit_sum(n, p)) / (p.get() - 1)
}

/// `v_p(C(n, k))` by subtracting factorial valuations.
pub fn vp_binomial(n: u64, k: u64, p: Prime) -> u64 {
    assert!(k <= n, "binomial C({n}, {k}) with k > n");
    vp_factorial(n, p) - vp_factorial(k, p) - vp_factorial(n - k, p)
}

/// `v_p(n)` for `n > 0`.
pub fn vp_u64(mut n: u64, p: Prime) -> u64 {
    assert!(n > 0, "v_p(0) is infinite");
    let p = p.get();
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn vp_int(n: &BigInt, p: Prime) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let pb = p.as_bigint();
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// `v_p(num) - v_p(den)`; zero maps to [`Valuation::Infinite`].
pub fn vp_rational(q: &BigRational, p: Prime) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    match (vp_int(q.numer(), p), vp_int(q.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero rational has finite valuation"),
    }
}

/// π-valuation of `π^(2n) / (4^n (n!)^2)`, which equals `2 Σ_n`.
///
/// Computed twice, from the digit sum and from `2n - 2(p-1) v_p(n!)`; the two
/// routes must agree.
pub fn bessel_coeff_pi_valuation(n: u64, p: Prime) -> Result<PiValuation> {
    if n == 0 {
        return Err(Error::InvalidArgument("Bessel coefficient valuation needs n >= 1".into()));
    }
    let by_digits = 2 * digit_sum(n, p) as i64;
    let by_factorial = 2 * n as i64 - 2 * (p.get() as i64 - 1) * vp_factorial(n, p) as i64;
    assert_eq!(by_digits, by_factorial, "digit-sum and factorial routes disagree at n = {n}");
    Ok(PiValuation(by_digits))
}

/// Verifies `v_p(C(N, s)) > v_p(N) - 2(s-1)/(p-1)` for `1 < s <= N`.
///
/// The comparison is done after multiplying through by `p - 1`, so it is
/// exact integer arithmetic.
pub fn check_binomial_inequality(n: u64, s: u64, p: Prime) -> Result<bool> {
    if s <= 1 || s > n {
        return Err(Error::InvalidArgument(format!("need 1 < s <= N, got N = {n}, s = {s}")));
    }
    let pm1 = p.get() as i64 - 1;
    let lhs = pm1 * vp_binomial(n, s, p) as i64;
    let rhs = pm1 * vp_u64(n, p) as i64 - 2 * (s as i64 - 1);
    Ok(lhs > rhs)
}

/// `v_p` of the coefficient `p^n π^n / n!` of `exp(pπz)`: `n + Σ_n/(p-1)`.
pub fn exp_coeff_valuation(n: u64, p: Prime) -> Ratio<i64> {
    let pm1 = p.get() as i64 - 1;
    Ratio::new(n as i64 * pm1 + digit_sum(n, p) as i64, pm1)
}

/// Reduces a p-integral rational modulo `m = p^k`. Returns `None` when the
/// reduced denominator is divisible by `p`.
pub fn reduce_rational(q: &BigRational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let num = modpos(q.numer(), &mb);
    let den = modpos(q.denom(), &mb);
    let inv = crate::modular::inv_mod(den, m)?;
    Some(((num as u128 * inv as u128) % m as u128) as u64)
}

pub(crate) fn modpos(a: &BigInt, m: &BigInt) -> u64 {
    let r = ((a % m) + m) % m;
    r.to_u64().expect("residue fits in u64")
}
