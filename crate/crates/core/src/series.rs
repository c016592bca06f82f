//! Truncated power series over the rationals and over `Z / p^k`, the series
//! generators, and the Dwork congruence check.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{ModPoly, Modulus};
use crate::poly::{q, qr, QPoly};
use crate::serial;
use crate::valuation::{vp_rational, Prime, Valuation};

/// Power series known through degree `bound` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the bound is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least one coefficient".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(bound: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigRational::zero(); bound + 1] }
    }

    pub fn one(bound: usize) -> Self {
        Self::from_poly(&QPoly::one(), bound)
    }

    /// Expansion of a polynomial through degree `bound`.
    pub fn from_poly(p: &QPoly, bound: usize) -> Self {
        TruncatedSeries { coeffs: (0..=bound).map(|i| p.coeff(i)).collect() }
    }

    #[inline]
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn shared(&self, o: &Self) -> usize {
        self.bound().min(o.bound())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.shared(o);
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.shared(o);
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.shared(o);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn mul_poly(&self, p: &QPoly) -> Self {
        let n = self.bound();
        let mut out = vec![BigRational::zero(); n + 1];
        for (j, c) in p.coeffs().iter().enumerate().take(n + 1) {
            if c.is_zero() {
                continue;
            }
            for (i, a) in self.coeffs.iter().take(n + 1 - j).enumerate() {
                if !a.is_zero() {
                    out[i + j] += a * c;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let mut g = vec![inv0.clone()];
        for n in 1..=self.bound() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[n - k];
                }
            }
            g.push(-(acc * &inv0));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `f^e`; negative exponents require a nonzero constant term.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.bound());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `f'`, known through degree `bound - 1` (a bound-0 series maps to `0`).
    pub fn derivative(&self) -> Self {
        if self.bound() == 0 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect(),
        }
    }

    /// `f(z^m)`, known through degree `m (bound + 1) - 1`.
    pub fn substitute_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("substitution exponent must be positive".into()));
        }
        let mut out = vec![BigRational::zero(); m * (self.bound() + 1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * m] = c.clone();
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Keeps degrees `0..=d`; `d` must not exceed the bound.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.bound() {
            return Err(Error::InvalidArgument(format!("cannot truncate bound {} to {}", self.bound(), d)));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=d].to_vec() })
    }

    /// The polynomial `Σ_{i<=d} a_i z^i`.
    pub fn truncation_poly(&self, d: usize) -> Result<QPoly> {
        if d > self.bound() {
            return Err(Error::InvalidArgument(format!("truncation degree {} exceeds bound {}", d, self.bound())));
        }
        Ok(QPoly::new(self.coeffs[..=d].to_vec()))
    }

    /// Coefficient-wise reduction; fails on the first non-p-integral coefficient.
    pub fn reduce_mod(&self, m: Modulus) -> Result<ModSeries> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            match m.reduce_rational(c) {
                Some(r) => v.push(r),
                None => return Err(Error::NotPIntegral { index: i, value: c.to_string() }),
            }
        }
        Ok(ModSeries { coeffs: v, modulus: m })
    }

    /// `f'/f` through degree `bound - 1`.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let d = self.derivative();
        let inv = self.truncate(d.bound())?.invert()?;
        Ok(d.mul(&inv))
    }

    /// Minimum `v_p` of the coefficients.
    pub fn min_valuation(&self, p: Prime) -> Valuation {
        self.coeffs.iter().map(|c| vp_rational(c, p)).min().unwrap_or(Valuation::Infinite)
    }

    pub fn to_file(&self, generator: &str, prime: Option<Prime>) -> SeriesFile {
        SeriesFile {
            generator: generator.to_string(),
            bound: self.bound(),
            prime: prime.map(Prime::get),
            coeffs: self.coeffs.clone(),
        }
    }
}

/// Power series over `Z / p^k` known through degree `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModSeries {
    coeffs: Vec<u64>,
    modulus: Modulus,
}

impl ModSeries {
    pub fn new(coeffs: Vec<u64>, modulus: Modulus) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least one coefficient".into()));
        }
        Ok(ModSeries { coeffs: coeffs.into_iter().map(|c| c % modulus.value()).collect(), modulus })
    }

    pub fn from_i64(coeffs: &[i64], modulus: Modulus) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| modulus.reduce_i64(c)).collect(), modulus)
    }

    pub fn from_poly(p: &ModPoly, bound: usize) -> Self {
        ModSeries { coeffs: (0..=bound).map(|i| p.coeff(i)).collect(), modulus: p.modulus() }
    }

    #[inline]
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs[i]
    }

    pub fn is_unit(&self) -> bool {
        self.modulus.is_unit(self.coeffs[0])
    }

    fn check(&self, o: &Self) -> Result<usize> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch(self.modulus.value(), o.modulus.value()));
        }
        Ok(self.bound().min(o.bound()))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let m = self.modulus;
        Ok(ModSeries { coeffs: (0..=n).map(|i| m.add(self.coeffs[i], o.coeffs[i])).collect(), modulus: m })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let m = self.modulus;
        Ok(ModSeries { coeffs: (0..=n).map(|i| m.sub(self.coeffs[i], o.coeffs[i])).collect(), modulus: m })
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        ModSeries { coeffs: self.coeffs.iter().map(|&a| m.mul(a, c)).collect(), modulus: m }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.check(o)?;
        let m = self.modulus;
        let mv = m.value() as u128;
        let mut out = vec![0u128; n + 1];
        for i in 0..=n {
            let a = self.coeffs[i] as u128;
            if a == 0 {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] = (out[i + j] + a * o.coeffs[j] as u128) % mv;
            }
        }
        Ok(ModSeries { coeffs: out.into_iter().map(|c| c as u64).collect(), modulus: m })
    }

    pub fn mul_poly(&self, p: &ModPoly) -> Result<Self> {
        if self.modulus != p.modulus() {
            return Err(Error::ModulusMismatch(self.modulus.value(), p.modulus().value()));
        }
        let m = self.modulus;
        let n = self.bound();
        let mut out = vec![0u64; n + 1];
        for (j, &c) in p.coeffs().iter().enumerate().take(n + 1) {
            if c == 0 {
                continue;
            }
            for (i, &a) in self.coeffs.iter().take(n + 1 - j).enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, c));
            }
        }
        Ok(ModSeries { coeffs: out, modulus: m })
    }

    pub fn invert(&self) -> Result<Self> {
        let m = self.modulus;
        let inv0 = m.inv(self.coeffs[0]).ok_or(Error::NonUnitConstant(self.coeffs[0]))?;
        let mut g = vec![inv0];
        for n in 1..=self.bound() {
            let mut acc = 0u64;
            for k in 1..=n {
                acc = m.add(acc, m.mul(self.coeffs[k], g[n - k]));
            }
            g.push(m.neg(m.mul(acc, inv0)));
        }
        Ok(ModSeries { coeffs: g, modulus: m })
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        if self.bound() == 0 {
            return ModSeries { coeffs: vec![0], modulus: m };
        }
        ModSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| m.mul(c, i as u64 % m.value())).collect(),
            modulus: m,
        }
    }

    pub fn log_derivative(&self) -> Result<Self> {
        let d = self.derivative();
        let inv = self.truncate(d.bound())?.invert()?;
        d.mul(&inv)
    }

    pub fn substitute_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("substitution exponent must be positive".into()));
        }
        let mut out = vec![0u64; m * (self.bound() + 1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * m] = c;
        }
        Ok(ModSeries { coeffs: out, modulus: self.modulus })
    }

    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.bound() {
            return Err(Error::InvalidArgument(format!("cannot truncate bound {} to {}", self.bound(), d)));
        }
        Ok(ModSeries { coeffs: self.coeffs[..=d].to_vec(), modulus: self.modulus })
    }

    /// Reduction to the lower modulus `p^j`.
    pub fn lower(&self, j: u32) -> Result<Self> {
        let lm = self.modulus.lower(j)?;
        Self::new(self.coeffs.clone(), lm)
    }

    /// First degree at which `self` and `o` differ, up to the shared bound.
    pub fn first_mismatch(&self, o: &Self) -> Result<Option<usize>> {
        let n = self.check(o)?;
        Ok((0..=n).find(|&i| self.coeffs[i] != o.coeffs[i]))
    }
}

/// Series whose coefficient at `z^d` is `r_d π^d` with `r_d` rational and
/// `π^(p-1) = -p`; equivalently `g(π z)` for a rational series `g`. The
/// grading survives products, so powers are computed on the rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiGradedSeries {
    prime: Prime,
    rational: TruncatedSeries,
}

/// The Bessel series `J_0(π z)` in graded form.
pub type BesselScalarSeries = PiGradedSeries;

impl PiGradedSeries {
    pub fn new(prime: Prime, rational: TruncatedSeries) -> Self {
        PiGradedSeries { prime, rational }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn bound(&self) -> usize {
        self.rational.bound()
    }

    /// The rational parts `r_d`.
    pub fn rational(&self) -> &TruncatedSeries {
        &self.rational
    }

    /// The formal π-exponent at degree `d`, which is `d` itself.
    pub fn pi_exponent(&self, d: usize) -> usize {
        d
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.prime != o.prime {
            return Err(Error::InvalidArgument(format!("primes differ: {} vs {}", self.prime, o.prime)));
        }
        Ok(PiGradedSeries { prime: self.prime, rational: self.rational.mul(&o.rational) })
    }

    pub fn pow(&self, e: u64) -> Self {
        let r = self.rational.pow_int(e as i64).expect("nonnegative power");
        PiGradedSeries { prime: self.prime, rational: r }
    }

    /// π-valuation `(p-1) v_p(r_d) + d` of the coefficient at `z^d`.
    pub fn pi_valuation(&self, d: usize) -> Valuation {
        match vp_rational(self.rational.coeff(d), self.prime) {
            Valuation::Finite(v) => Valuation::Finite((self.prime.get() as i64 - 1) * v + d as i64),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    /// Rewrites every coefficient as a rational number using
    /// `π^(p-1) = -p`; needs `(p-1) | d` at every nonzero degree.
    pub fn collapse(&self) -> Result<TruncatedSeries> {
        let pm1 = self.prime.get() as usize - 1;
        let minus_p = -q(self.prime.get() as i64);
        let mut out = Vec::with_capacity(self.bound() + 1);
        let mut power = BigRational::one();
        for d in 0..=self.bound() {
            if d > 0 && d % pm1 == 0 {
                power = &power * &minus_p;
            }
            let c = self.rational.coeff(d);
            if c.is_zero() {
                out.push(BigRational::zero());
            } else if d % pm1 != 0 {
                return Err(Error::Unsupported(format!(
                    "degree {d} carries π^{}, which is not rational for p = {}",
                    d % pm1,
                    self.prime
                )));
            } else {
                out.push(c * &power);
            }
        }
        TruncatedSeries::new(out)
    }

    /// Residues in `F_p` of the coefficients at π-level `level`: a coefficient
    /// `c` with `v_π(c) = level` maps to the unit digit of `c / π^level`, one
    /// with larger valuation maps to 0. The constant term is kept as 1.
    pub fn leading_digits(&self, level: i64) -> Result<ModSeries> {
        let p = self.prime;
        let m = Modulus::new(p, 1)?;
        let mut out = vec![0u64; self.bound() + 1];
        out[0] = 1;
        for (d, slot) in out.iter_mut().enumerate().skip(1) {
            let c = self.rational.coeff(d);
            match self.pi_valuation(d) {
                Valuation::Infinite => {}
                Valuation::Finite(v) if v > level => {}
                Valuation::Finite(v) if v == level => {
                    let vp = vp_rational(c, p).finite().expect("nonzero");
                    let mut unit = c.clone();
                    let mp = -q(p.get() as i64);
                    for _ in 0..vp.abs() {
                        unit = if vp > 0 { unit / &mp } else { unit * &mp };
                    }
                    *slot = m.reduce_rational(&unit).expect("unit residue");
                }
                Valuation::Finite(v) => {
                    return Err(Error::InvalidArgument(format!("degree {d} has π-valuation {v} below level {level}")))
                }
            }
        }
        ModSeries::new(out, m)
    }
}

/// `Σ C(2n,n)^3 / 64^n z^n`.
pub fn gen_h(bound: usize) -> TruncatedSeries {
    let mut out = Vec::with_capacity(bound + 1);
    let mut c = BigRational::one();
    for n in 0..=bound {
        out.push(c.clone());
        let r = qr(2 * n as i64 + 1, 2 * (n as i64 + 1));
        c = c * &r * &r * &r;
    }
    TruncatedSeries { coeffs: out }
}

/// `Σ -C(2n,n)^3 / ((2n-1) 64^n) z^n`.
pub fn gen_f(bound: usize) -> TruncatedSeries {
    let h = gen_h(bound);
    TruncatedSeries {
        coeffs: h.coeffs.iter().enumerate().map(|(n, c)| -c / q(2 * n as i64 - 1)).collect(),
    }
}

/// Apéry numbers `Σ_k C(n,k)^2 C(n+k,k)^2`, via
/// `(n+1)^3 a_{n+1} = (34n^3+51n^2+27n+5) a_n - n^3 a_{n-1}`.
pub fn gen_apery(bound: usize) -> TruncatedSeries {
    let mut a: Vec<BigInt> = vec![BigInt::one(), BigInt::from(5)];
    while a.len() <= bound {
        let n = BigInt::from(a.len() as i64 - 1);
        let lin = BigInt::from(34) * &n * &n * &n + BigInt::from(51) * &n * &n + BigInt::from(27) * &n + 5;
        let next = (lin * &a[a.len() - 1] - &n * &n * &n * &a[a.len() - 2]) / ((&n + 1) * (&n + 1) * (&n + 1));
        a.push(next);
    }
    a.truncate(bound + 1);
    TruncatedSeries { coeffs: a.into_iter().map(BigRational::from_integer).collect() }
}

/// `J_0(π z)`: rational part `(-1)^m / (4^m (m!)^2)` at `z^(2m)`.
pub fn gen_bessel(bound: usize, p: Prime) -> BesselScalarSeries {
    let mut out = vec![BigRational::zero(); bound + 1];
    let mut c = BigRational::one();
    let mut m = 0i64;
    while 2 * m as usize <= bound {
        out[2 * m as usize] = c.clone();
        m += 1;
        c = -c / q(4 * m * m);
    }
    PiGradedSeries::new(p, TruncatedSeries { coeffs: out })
}

/// `exp(π z)`: rational part `1/n!` at `z^n`.
pub fn gen_exp_pi(bound: usize, p: Prime) -> PiGradedSeries {
    let mut out = Vec::with_capacity(bound + 1);
    let mut c = BigRational::one();
    for n in 0..=bound {
        out.push(c.clone());
        c /= q(n as i64 + 1);
    }
    PiGradedSeries::new(p, TruncatedSeries { coeffs: out })
}

/// `exp(p π z)`: rational part `p^n / n!` at `z^n`.
pub fn gen_exp_p_power(bound: usize, p: Prime) -> PiGradedSeries {
    let e = gen_exp_pi(bound, p);
    let pp = q(p.get() as i64);
    let mut scale = BigRational::one();
    let coeffs = e
        .rational
        .coeffs
        .iter()
        .map(|c| {
            let v = c * &scale;
            scale = &scale * &pp;
            v
        })
        .collect();
    PiGradedSeries::new(p, TruncatedSeries { coeffs })
}

/// Named rational generators: `h`, `f`, `apery`, and `bessel` (collapsed,
/// so only at `p = 3`).
pub fn generate(id: &str, bound: usize, p: Prime) -> Result<TruncatedSeries> {
    match id {
        "h" => Ok(gen_h(bound)),
        "f" => Ok(gen_f(bound)),
        "apery" => Ok(gen_apery(bound)),
        "bessel" => gen_bessel(bound, p).collapse(),
        "exp-p-power" => gen_exp_p_power(bound, p).collapse(),
        other => Err(Error::InvalidArgument(format!("unknown series generator {other:?}"))),
    }
}

/// `f^(1/a)` for `f(0) = 1` and `p ∤ a`, from the binomial series in `f - 1`,
/// evaluated through the recurrence `n g_n = Σ_k ((1/a + 1) k - n) f_k g_{n-k}`.
pub fn series_root(f: &TruncatedSeries, a: u64, p: Prime) -> Result<TruncatedSeries> {
    if a == 0 || a.is_multiple_of(p.get()) {
        return Err(Error::InvalidArgument(format!("root index {a} must be positive and prime to {p}")));
    }
    if !f.coeffs[0].is_one() {
        return Err(Error::ConstantTermNotOne(f.coeffs[0].to_string()));
    }
    let alpha1 = qr(1, a as i64) + BigRational::one();
    let mut g = vec![BigRational::one()];
    for n in 1..=f.bound() {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            if f.coeffs[k].is_zero() {
                continue;
            }
            let w = &alpha1 * q(k as i64) - q(n as i64);
            acc += w * &f.coeffs[k] * &g[n - k];
        }
        g.push(acc / q(n as i64));
    }
    Ok(TruncatedSeries { coeffs: g })
}

/// Checks `f(z) f_{r-1}(z^p) ≡ f_r(z) f(z^p) mod p^r` through degree `n`,
/// where `f_s` is the truncation at degree `p^s - 1`.
pub fn dwork_check(f: &TruncatedSeries, p: Prime, r: u32, n: usize) -> Result<bool> {
    Ok(dwork_mismatch(f, p, r, n)?.is_none())
}

/// First degree violating the level-`r` Dwork congruence, if any.
pub fn dwork_mismatch(f: &TruncatedSeries, p: Prime, r: u32, n: usize) -> Result<Option<usize>> {
    if r == 0 {
        return Err(Error::InvalidArgument("Dwork level r must be >= 1".into()));
    }
    let pr = p.pow(r) as usize;
    if n < pr {
        return Err(Error::InvalidArgument(format!("degree bound {n} is below p^r = {pr}")));
    }
    if f.bound() < n {
        return Err(Error::InvalidArgument(format!("series bound {} is below {n}", f.bound())));
    }
    if !f.coeffs[0].is_one() {
        return Err(Error::ConstantTermNotOne(f.coeffs[0].to_string()));
    }
    let m = Modulus::new(p, r)?;
    let fm = f.truncate(n)?.reduce_mod(m)?;
    let fr = f.truncation_poly(pr - 1)?.reduce_mod(m)?;
    let fr1 = f.truncation_poly(pr / p.get() as usize - 1)?.substitute_power(p.get() as usize).reduce_mod(m)?;
    let fzp = fm.substitute_power(p.get() as usize)?.truncate(n)?;
    let lhs = fm.mul_poly(&fr1)?;
    let rhs = fzp.mul_poly(&fr)?;
    lhs.first_mismatch(&rhs)
}

/// On-disk series: `{generator, bound, prime?, coeffs: ["num/den", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFile {
    pub generator: String,
    pub bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(with = "serial::rational_vec")]
    pub coeffs: Vec<BigRational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SeriesInput {
    Full(SeriesFile),
    Bare(#[serde(with = "serial::rational_vec")] Vec<BigRational>),
}

impl SeriesFile {
    pub fn series(&self) -> Result<TruncatedSeries> {
        if self.coeffs.len() != self.bound + 1 {
            return Err(Error::Parse(format!(
                "bound {} does not match {} coefficients",
                self.bound,
                self.coeffs.len()
            )));
        }
        TruncatedSeries::new(self.coeffs.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series serializes")
    }
}

/// Parses a series given either as a full object or as a bare array of
/// `"num/den"` strings.
pub fn parse_series_json(text: &str) -> Result<TruncatedSeries> {
    let input: SeriesInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match input {
        SeriesInput::Full(f) => f.series(),
        SeriesInput::Bare(v) => TruncatedSeries::new(v),
    }
}

pub fn load_series_file(path: &Path) -> Result<TruncatedSeries> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_series_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn apery_sum(n: u64) -> BigInt {
        (0..=n)
            .map(|k| {
                let a = binomial(BigInt::from(n), BigInt::from(k));
                let b = binomial(BigInt::from(n + k), BigInt::from(k));
                &a * &a * &b * &b
            })
            .sum()
    }

    #[test]
    fn generator_values() {
        let h = gen_h(3);
        assert_eq!(h.coeffs(), &[q(1), qr(1, 8), qr(27, 512), qr(125, 4096)]);
        let f = gen_f(2);
        assert_eq!(f.coeffs(), &[q(1), qr(-1, 8), qr(-9, 512)]);
        let a = gen_apery(40);
        assert_eq!(&a.coeffs()[..4], &[q(1), q(5), q(73), q(1445)]);
        for n in 0..=40 {
            assert_eq!(a.coeff(n as usize).numer(), &apery_sum(n));
        }
        let b = gen_bessel(4, p3());
        assert_eq!(b.rational().coeffs(), &[q(1), q(0), qr(-1, 4), q(0), qr(1, 64)]);
        assert_eq!(b.collapse().unwrap().coeff(2), &qr(3, 4));
    }

    #[test]
    fn ring_operations() {
        let one_minus_z = TruncatedSeries::from_i64(&[1, -1, 0, 0]).unwrap();
        assert_eq!(one_minus_z.invert().unwrap(), TruncatedSeries::from_i64(&[1, 1, 1, 1]).unwrap());
        let h = gen_h(30);
        assert_eq!(h.mul(&h.invert().unwrap()), TruncatedSeries::one(30));
        let m = Modulus::new(p3(), 1).unwrap();
        assert_eq!(gen_h(2).reduce_mod(m).unwrap().coeffs(), &[1, 2, 0]);
        assert_eq!(h.pow_int(-2).unwrap().mul(&h.pow_int(2).unwrap()), TruncatedSeries::one(30));
        let bad = TruncatedSeries::new(vec![q(1), qr(1, 3)]).unwrap();
        assert_eq!(bad.reduce_mod(m), Err(Error::NotPIntegral { index: 1, value: "1/3".into() }));
    }

    #[test]
    fn log_derivatives() {
        let s = TruncatedSeries::from_i64(&[1, -1, 0, 0, 0]).unwrap();
        assert_eq!(s.log_derivative().unwrap(), TruncatedSeries::from_i64(&[-1, -1, -1, -1]).unwrap());
        let m = Modulus::new(p3(), 1).unwrap();
        let lh = gen_h(60).log_derivative().unwrap().reduce_mod(m).unwrap();
        assert!(lh.coeffs().iter().all(|&c| c == 2));
        let mod_route = gen_h(60).reduce_mod(m).unwrap().log_derivative().unwrap();
        assert_eq!(mod_route, lh);
    }

    #[test]
    fn h_mod_3_product_form() {
        let m = Modulus::new(p3(), 1).unwrap();
        let mut prod = TruncatedSeries::one(80);
        let mut e = 1;
        while e <= 80 {
            let mut v = vec![0i64; 81];
            v[0] = 1;
            v[e] = -1;
            prod = prod.mul(&TruncatedSeries::from_i64(&v).unwrap());
            e *= 3;
        }
        assert_eq!(gen_h(80).reduce_mod(m).unwrap(), prod.reduce_mod(m).unwrap());
    }

    #[test]
    fn roots() {
        let one = TruncatedSeries::one(5);
        assert_eq!(series_root(&one, 5, p3()).unwrap(), one);
        let sq = TruncatedSeries::from_i64(&[1, 2, 1, 0, 0]).unwrap();
        assert_eq!(series_root(&sq, 2, p3()).unwrap(), TruncatedSeries::from_i64(&[1, 1, 0, 0, 0]).unwrap());
        let h = gen_h(25);
        assert_eq!(series_root(&h.mul(&h), 2, p3()).unwrap(), h);
        assert!(series_root(&h, 3, p3()).is_err());
        assert!(series_root(&h.scale(&q(2)), 2, p3()).is_err());
    }

    #[test]
    fn root_matches_binomial_series() {
        let f = TruncatedSeries::from_i64(&[1, 3, -2, 5, 1, 0, 4, -1]).unwrap();
        let t = f.sub(&TruncatedSeries::one(f.bound()));
        let alpha = qr(1, 4);
        let mut acc = TruncatedSeries::zero(f.bound());
        let mut tp = TruncatedSeries::one(f.bound());
        let mut c = BigRational::one();
        for s in 0..=f.bound() {
            acc = acc.add(&tp.scale(&c));
            tp = tp.mul(&t);
            c = c * (&alpha - q(s as i64)) / q(s as i64 + 1);
        }
        assert_eq!(series_root(&f, 4, Prime::new(5).unwrap()).unwrap(), acc);
    }

    #[test]
    fn dwork_examples() {
        assert!(dwork_check(&gen_h(60), p3(), 1, 50).unwrap());
        assert!(dwork_check(&gen_apery(100), p3(), 2, 100).unwrap());
        let s = TruncatedSeries::from_i64(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(!dwork_check(&s, p3(), 1, 10).unwrap());
        for r in 1..=3 {
            let n = 3usize.pow(r) + 20;
            assert!(dwork_check(&gen_h(n), p3(), r, n).unwrap());
            assert!(dwork_check(&gen_apery(n), p3(), r, n).unwrap());
        }
        assert!(dwork_check(&gen_h(5), p3(), 2, 5).is_err());
    }

    #[test]
    fn substitution_bound() {
        let s = TruncatedSeries::from_i64(&[1, 2, 3]).unwrap();
        let t = s.substitute_power(2).unwrap();
        assert_eq!(t.bound(), 5);
        assert_eq!(t, TruncatedSeries::from_i64(&[1, 0, 2, 0, 3, 0]).unwrap());
    }

    #[test]
    fn exp_power_identity() {
        let p = p3();
        let e = gen_exp_pi(40, p);
        assert_eq!(e.pow(3), gen_exp_p_power(40, p));
    }

    #[test]
    fn json_round_trip() {
        let h = gen_h(4);
        let text = h.to_file("h", Some(p3())).to_json();
        assert!(text.contains("\"27/512\""));
        assert_eq!(parse_series_json(&text).unwrap(), h);
        assert_eq!(parse_series_json(r#"["1/1", "1/8"]"#).unwrap(), h.truncate(1).unwrap());
    }
}
