//! Rational functions over the rationals and over `Z / p^k`: Gauss norms,
//! congruences modulo powers of the maximal ideal, expansion at zero, and
//! Padé reconstruction.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{inv_mod, ModPoly, Modulus};
use crate::poly::{q, QPoly};
use crate::serial;
use crate::series::ModSeries;
use crate::valuation::{Prime, Valuation};

/// How the denominator of a canonical rational function was normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `den(0) = 1`.
    ConstantOne,
    /// `den` is monic (used when `den(0) = 0`).
    Monic,
}

/// `num / den` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
    normalization: Normalization,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: QPoly::one(), normalization: Normalization::ConstantOne });
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g)?;
        let (mut d, _) = den.div_rem(&g)?;
        let d0 = d.coeff(0);
        let (scale, normalization) = if d0.is_zero() {
            (d.leading().expect("nonzero").recip(), Normalization::Monic)
        } else {
            (d0.recip(), Normalization::ConstantOne)
        };
        n = n.scale(&scale);
        d = d.scale(&scale);
        Ok(RationalFunction { num: n, den: d, normalization })
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction { num: p, den: QPoly::one(), normalization: Normalization::ConstantOne }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(QPoly::from_i64(num), QPoly::from_i64(den))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den).expect("nonzero den")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone(), normalization: self.normalization }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero den")
    }

    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let (n, d) = if e >= 0 { (&self.num, &self.den) } else { (&self.den, &self.num) };
        let e = e.unsigned_abs() as u32;
        Self::new(n.pow(e), d.pow(e))
    }

    pub fn derivative(&self) -> Self {
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        Self::new(n, &self.den * &self.den).expect("nonzero den")
    }

    /// `F'/F`.
    pub fn logderiv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        Self::new(n, &self.num * &self.den)
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Multiplies by `(z - a)^e`.
    pub fn mul_linear_power(&self, a: &BigRational, e: u32) -> Self {
        self.mul(&Self::from_poly(QPoly::linear(a.clone()).pow(e)))
    }

    pub fn gauss_norm(&self, p: Prime) -> GaussNorm {
        GaussNorm::of(self, p)
    }

    /// Reduction with the denominator content scaled to a unit; needs
    /// Gauss norm at most 1 and a unit constant term in the denominator.
    pub fn reduce_mod(&self, m: Modulus) -> Result<ModRationalFunction> {
        let (n, d) = unit_content_pair(&self.num, &self.den, m.prime())?;
        ModRationalFunction::new(n.reduce_mod(m)?, d.reduce_mod(m)?)
    }

    pub fn to_json(&self) -> RatFunJson {
        RatFunJson { num: self.num.coeffs().to_vec(), den: self.den.coeffs().to_vec(), modulus: None }
    }
}

/// Scales `(num, den)` by the inverse of the p-part of `den`'s content.
pub(crate) fn unit_content_pair(num: &QPoly, den: &QPoly, p: Prime) -> Result<(QPoly, QPoly)> {
    let v = match den.content_valuation(p) {
        Valuation::Finite(v) => v,
        Valuation::Infinite => return Err(Error::ZeroPolynomial),
    };
    let pq = q(p.get() as i64);
    let mut s = BigRational::one();
    for _ in 0..v.abs() {
        s = if v > 0 { s / &pq } else { s * &pq };
    }
    Ok((num.scale(&s), den.scale(&s)))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The Gauss norm `p^(-valuation)`; the zero function has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussNorm {
    pub prime: Prime,
    pub valuation: Valuation,
}

impl GaussNorm {
    pub fn of(f: &RationalFunction, p: Prime) -> Self {
        let valuation = match (f.num.content_valuation(p), f.den.content_valuation(p)) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinite,
        };
        GaussNorm { prime: p, valuation }
    }

    /// The norm as an exact rational; zero for the zero function.
    pub fn value(&self) -> BigRational {
        match self.valuation {
            Valuation::Infinite => BigRational::zero(),
            Valuation::Finite(v) => {
                let p = q(self.prime.get() as i64);
                let mut out = BigRational::one();
                for _ in 0..v.abs() {
                    out = if v > 0 { out / &p } else { out * &p };
                }
                out
            }
        }
    }

    /// `|F|_G <= 1`.
    pub fn at_most_one(&self) -> bool {
        self.valuation >= Valuation::Finite(0)
    }
}

/// `|F - G|_G <= p^(-t)`, decided by `v(AD - CB) - v(BD) >= t`.
pub fn congruent_mod_mt(f: &RationalFunction, g: &RationalFunction, p: Prime, t: u32) -> bool {
    let cross = &f.num * &g.den - &g.num * &f.den;
    let bd = &f.den * &g.den;
    match (cross.content_valuation(p), bd.content_valuation(p)) {
        (Valuation::Infinite, _) => true,
        (Valuation::Finite(a), Valuation::Finite(b)) => a - b >= t as i64,
        (Valuation::Finite(_), Valuation::Infinite) => unreachable!("denominators are nonzero"),
    }
}

/// `num / den` over `Z / p^k` with `den(0)` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRationalFunction {
    num: ModPoly,
    den: ModPoly,
}

impl ModRationalFunction {
    pub fn new(num: ModPoly, den: ModPoly) -> Result<Self> {
        if num.modulus() != den.modulus() {
            return Err(Error::ModulusMismatch(num.modulus().value(), den.modulus().value()));
        }
        let d0 = den.coeff(0);
        if !den.modulus().is_unit(d0) {
            return Err(Error::NonUnitConstant(d0));
        }
        Ok(ModRationalFunction { num, den })
    }

    pub fn from_i64(num: &[i64], den: &[i64], m: Modulus) -> Result<Self> {
        Self::new(ModPoly::from_i64(num, m), ModPoly::from_i64(den, m))
    }

    pub fn num(&self) -> &ModPoly {
        &self.num
    }

    pub fn den(&self) -> &ModPoly {
        &self.den
    }

    pub fn modulus(&self) -> Modulus {
        self.num.modulus()
    }

    /// Expansion through degree `n` by long division.
    pub fn expand_at_zero(&self, n: usize) -> ModSeries {
        let m = self.modulus();
        let inv0 = m.inv(self.den.coeff(0)).expect("unit constant term");
        let mut out = vec![0u64; n + 1];
        for i in 0..=n {
            let mut acc = self.num.coeff(i);
            for j in 1..=i.min(self.den.degree().unwrap_or(0)) {
                acc = m.sub(acc, m.mul(self.den.coeff(j), out[i - j]));
            }
            out[i] = m.mul(acc, inv0);
        }
        ModSeries::new(out, m).expect("nonempty")
    }

    /// Normalizes `den(0)` to 1.
    pub fn normalized(&self) -> Self {
        let m = self.modulus();
        let inv0 = m.inv(self.den.coeff(0)).expect("unit constant term");
        ModRationalFunction { num: self.num.scale(inv0), den: self.den.scale(inv0) }
    }

    pub fn to_json(&self) -> RatFunJson {
        let conv = |p: &ModPoly| p.coeffs().iter().map(|&c| BigRational::from_integer(c.into())).collect();
        RatFunJson { num: conv(&self.num), den: conv(&self.den), modulus: Some(self.modulus().value()) }
    }
}

impl fmt::Display for ModRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// `s · den ≡ num` through degree `n`.
pub fn series_matches_ratfun_mod(s: &ModSeries, f: &ModRationalFunction, n: usize) -> Result<bool> {
    if s.modulus() != f.modulus() {
        return Err(Error::ModulusMismatch(s.modulus().value(), f.modulus().value()));
    }
    if n > s.bound() {
        return Err(Error::InvalidArgument(format!("degree {n} exceeds series bound {}", s.bound())));
    }
    let lhs = s.truncate(n)?.mul_poly(&f.den)?;
    let rhs = ModSeries::from_poly(&f.num, n);
    Ok(lhs == rhs)
}

/// Finds `num / den` with `deg num <= dnum`, `deg den <= dden`, `den(0) = 1`
/// and `s · den ≡ num mod p^k` through the series bound. Denominator degrees
/// are tried in increasing order; free variables of the linear system are set
/// to zero. The match is evidence only: it says nothing beyond the bound.
pub fn pade_reconstruct(s: &ModSeries, dnum: usize, dden: usize) -> Option<ModRationalFunction> {
    if s.bound() < dnum + dden + 1 {
        return None;
    }
    (0..=dden).find_map(|d| pade_exact(s, dnum, d))
}

fn pade_exact(s: &ModSeries, dnum: usize, dden: usize) -> Option<ModRationalFunction> {
    let m = s.modulus();
    let rows: Vec<usize> = (dnum + 1..=s.bound()).collect();
    // unknowns den_1..den_dden; equation at degree i: Σ_j den_j s_{i-j} = -s_i
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|&i| (1..=dden).map(|j| if j <= i { s.coeff(i - j) } else { 0 }).collect())
        .collect();
    let mut b: Vec<u64> = rows.iter().map(|&i| m.neg(s.coeff(i))).collect();
    let x = solve_mod(&mut a, &mut b, dden, m)?;
    let mut den = vec![1u64];
    den.extend_from_slice(&x);
    let den = ModPoly::new(den, m);
    let num: Vec<u64> = (0..=dnum)
        .map(|i| (0..=i.min(dden)).fold(0, |acc, j| m.add(acc, m.mul(den.coeff(j), s.coeff(i - j)))))
        .collect();
    ModRationalFunction::new(ModPoly::new(num, m), den).ok()
}

/// Solves `A x = b` over `Z / p^k` by elimination with full pivoting on
/// minimal valuation. Returns `None` when the system is inconsistent.
fn solve_mod(a: &mut [Vec<u64>], b: &mut [u64], ncols: usize, m: Modulus) -> Option<Vec<u64>> {
    let nrows = a.len();
    let p = m.prime().get();
    let mut col_order: Vec<usize> = (0..ncols).collect();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut r = 0;
    while r < nrows && r < ncols {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for c in r..ncols {
                if let Some(v) = m.valuation(row[col_order[c]]) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, c, v));
                    }
                }
            }
        }
        let Some((pi, pc, v)) = best else { break };
        a.swap(r, pi);
        b.swap(r, pi);
        col_order.swap(r, pc);
        let col = col_order[r];
        let pv = p.pow(v);
        let unit_inv = m.inv(a[r][col] / pv).expect("unit part");
        for i in r + 1..nrows {
            let e = a[i][col];
            if e == 0 {
                continue;
            }
            let f = m.mul(e / pv, unit_inv);
            let (top, rest) = a.split_at_mut(i);
            for (x, &y) in rest[0].iter_mut().zip(&top[r]) {
                *x = m.sub(*x, m.mul(f, y));
            }
            b[i] = m.sub(b[i], m.mul(f, b[r]));
        }
        pivots.push((col, v));
        r += 1;
    }
    if b.iter().skip(r).any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; ncols];
    for (ri, &(col, v)) in pivots.iter().enumerate().rev() {
        let mut rhs = b[ri];
        for c in 0..ncols {
            if c != col {
                rhs = m.sub(rhs, m.mul(a[ri][c], x[c]));
            }
        }
        let pv = p.pow(v);
        if !rhs.is_multiple_of(pv) {
            return None;
        }
        let reduced = m.value() / pv;
        let unit_inv = inv_mod((a[ri][col] / pv) % reduced, reduced).expect("unit part");
        x[col] = ((rhs / pv) as u128 * unit_inv as u128 % reduced as u128) as u64;
    }
    Some(x)
}

/// Serialized form `{num, den, modulus?}` with `"num/den"` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunJson {
    #[serde(with = "serial::rational_vec")]
    pub num: Vec<BigRational>,
    #[serde(with = "serial::rational_vec")]
    pub den: Vec<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
}

impl RatFunJson {
    pub fn to_ratfun(&self) -> Result<RationalFunction> {
        RationalFunction::new(QPoly::new(self.num.clone()), QPoly::new(self.den.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qr;
    use crate::series::{gen_apery, gen_h};

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn m(k: u32) -> Modulus {
        Modulus::new(p3(), k).unwrap()
    }

    #[test]
    fn gauss_norms() {
        let f = RationalFunction::from_i64(&[0, 3, 1], &[6, 2]).unwrap();
        assert_eq!(f.gauss_norm(p3()).value(), q(1));
        let g = RationalFunction::from_i64(&[3], &[-1, 1]).unwrap();
        assert_eq!(g.gauss_norm(p3()).value(), qr(1, 3));
        let h = RationalFunction::from_i64(&[0, 27], &[1, 1]).unwrap();
        assert_eq!(h.gauss_norm(p3()).value(), qr(1, 27));
    }

    #[test]
    fn canonical_form() {
        let f = RationalFunction::from_i64(&[-1, 0, 1], &[-2, 2]).unwrap();
        assert_eq!(f, RationalFunction::from_i64(&[1, 1], &[2]).unwrap());
        assert_eq!(f.den(), &QPoly::one());
        let g = RationalFunction::from_i64(&[1], &[0, 2]).unwrap();
        assert_eq!(g.normalization(), Normalization::Monic);
        assert_eq!(g.num(), &QPoly::new(vec![qr(1, 2)]));
    }

    #[test]
    fn logderivs() {
        let z1 = RationalFunction::from_i64(&[-1, 1], &[1]).unwrap();
        assert_eq!(z1.logderiv().unwrap(), RationalFunction::from_i64(&[1], &[-1, 1]).unwrap());
        let c = RationalFunction::constant(q(5));
        assert!(c.logderiv().unwrap().is_zero());
        let q3 = RationalFunction::from_i64(&[1, 1, 1], &[1]).unwrap();
        let prod = q3.mul(&z1.pow_int(-7).unwrap());
        let expected = RationalFunction::from_i64(&[1, 2], &[1, 1, 1])
            .unwrap()
            .sub(&RationalFunction::from_i64(&[7], &[-1, 1]).unwrap());
        assert_eq!(prod.logderiv().unwrap(), expected);
    }

    #[test]
    fn congruences() {
        let f = RationalFunction::new(
            &QPoly::from_i64(&[1, 1]) * &QPoly::from_i64(&[3, -153, 6]),
            QPoly::from_i64(&[0, 1, -34, 1]),
        )
        .unwrap();
        let g = RationalFunction::from_i64(&[3, 6], &[0, 1]).unwrap();
        assert!(congruent_mod_mt(&f, &g, p3(), 2));
        assert!(congruent_mod_mt(&f, &f, p3(), 50));
        let a = RationalFunction::from_i64(&[1], &[-1, 1]).unwrap();
        let b = RationalFunction::from_i64(&[1], &[1, 1]).unwrap();
        assert!(!congruent_mod_mt(&a, &b, p3(), 1));
    }

    #[test]
    fn partial_fraction_identities() {
        let lhs = RationalFunction::from_i64(&[8, 8, 5], &[1, 0, 0, -1]).unwrap();
        let rhs = RationalFunction::from_i64(&[1, 2], &[1, 1, 1])
            .unwrap()
            .sub(&RationalFunction::from_i64(&[7], &[-1, 1]).unwrap());
        assert!(congruent_mod_mt(&lhs, &rhs, p3(), 2));
        let lhs = RationalFunction::from_i64(&[5, 4, 8, 4, 5, 1], &[1, 0, 0, 0, 0, 0, -1]).unwrap();
        let rhs = RationalFunction::from_i64(&[-1, 2], &[1, -1, 1])
            .unwrap()
            .add(&RationalFunction::from_i64(&[3], &[2, 2]).unwrap());
        assert!(congruent_mod_mt(&lhs, &rhs, p3(), 2));
    }

    #[test]
    fn expansions() {
        let f = ModRationalFunction::from_i64(&[1], &[1, -1], m(2)).unwrap();
        assert_eq!(f.expand_at_zero(3).coeffs(), &[1, 1, 1, 1]);
        let g = ModRationalFunction::from_i64(&[8, 8, 5], &[1, 0, 0, -1], m(2)).unwrap();
        assert_eq!(g.expand_at_zero(5).coeffs(), &[8, 8, 5, 8, 8, 5]);
        // (2z - 1) / (z^2 - z + 1) = (2z^2 + z - 1) / (1 + z^3)
        let h = ModRationalFunction::from_i64(&[-1, 2], &[1, -1, 1], m(1)).unwrap();
        assert_eq!(h.expand_at_zero(3).coeffs(), &[2, 1, 2, 1]);
        assert!(series_matches_ratfun_mod(&h.expand_at_zero(40), &h, 40).unwrap());
        assert!(ModRationalFunction::from_i64(&[1], &[3, 1], m(2)).is_err());
    }

    #[test]
    fn log_derivative_identities() {
        let lh = gen_h(201).reduce_mod(m(2)).unwrap().log_derivative().unwrap();
        let g = ModRationalFunction::from_i64(&[8, 8, 5], &[1, 0, 0, -1], m(2)).unwrap();
        assert!(series_matches_ratfun_mod(&lh, &g, 200).unwrap());
        let la = gen_apery(201).reduce_mod(m(2)).unwrap().log_derivative().unwrap();
        let g = ModRationalFunction::from_i64(&[5, 4, 8, 4, 5, 1], &[1, 0, 0, 0, 0, 0, -1], m(2)).unwrap();
        assert!(series_matches_ratfun_mod(&la, &g, 200).unwrap());
    }

    #[test]
    fn pade_examples() {
        let f = ModRationalFunction::from_i64(&[1], &[1, -1], m(2)).unwrap();
        let rec = pade_reconstruct(&f.expand_at_zero(20), 1, 1).unwrap();
        assert_eq!(rec.num(), &ModPoly::from_i64(&[1], m(2)));
        assert_eq!(rec.den(), &ModPoly::from_i64(&[1, -1], m(2)));

        let lh = gen_h(201).reduce_mod(m(2)).unwrap().log_derivative().unwrap();
        let rec = pade_reconstruct(&lh, 2, 3).unwrap();
        assert!(series_matches_ratfun_mod(&lh, &rec, 200).unwrap());
        let target = ModRationalFunction::from_i64(&[8, 8, 5], &[1, 0, 0, -1], m(2)).unwrap();
        assert_eq!(rec.expand_at_zero(200), target.expand_at_zero(200));

        let mut lac = vec![0u64; 201];
        let mut e = 2;
        while e <= 200 {
            lac[e] = 1;
            e *= 3;
        }
        let s = ModSeries::new(lac, m(1)).unwrap();
        assert!(pade_reconstruct(&s, 6, 6).is_none());
    }

    #[test]
    fn json_round_trip() {
        let f = RationalFunction::from_i64(&[3, 6], &[0, 1]).unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back: RatFunJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_ratfun().unwrap(), f);
    }
}
