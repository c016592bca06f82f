//! Linear differential operators in `d/dz` and `δ = z d/dz` form, their
//! action on series, and indicial data at regular singular points modulo
//! `p^t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{ModPoly, Modulus};
use crate::poly::{q, qr, QPoly};
use crate::ratfun::{unit_content_pair, RatFunJson, RationalFunction};
use crate::series::{PiGradedSeries, TruncatedSeries};
use crate::valuation::{Prime, Valuation};

/// `X (X - 1) ... (X - m + 1)` with rational coefficients.
pub fn falling_factorial(m: usize) -> QPoly {
    (0..m).fold(QPoly::one(), |acc, l| &acc * &QPoly::linear(q(l as i64)))
}

/// Stirling numbers of the second kind `S(i, j)` for `0 <= j <= i <= n`.
fn stirling2(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = BigInt::from(j) * &s[i - 1][j] + &s[i - 1][j - 1];
        }
    }
    s
}

/// `Σ_i c_i(z) δ^i` with polynomial coefficients, `c_n ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOperator {
    coeffs: Vec<QPoly>,
}

impl DeltaOperator {
    pub fn new(coeffs: Vec<QPoly>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if !c.is_zero() && coeffs.len() >= 2 => Ok(DeltaOperator { coeffs }),
            _ => Err(Error::InvalidArgument("delta operator needs order >= 1 and a nonzero leading coefficient".into())),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_i`, the coefficient of `δ^i`.
    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    /// `Σ c_i(z) δ^i f`, known through the bound of `f`.
    pub fn apply(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let n = f.bound();
        let mut out = TruncatedSeries::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let di: Vec<BigRational> =
                f.coeffs().iter().enumerate().map(|(d, a)| a * q(d as i64).pow(i as i32)).collect();
            let s = TruncatedSeries::new(di).expect("nonempty");
            out = out.add(&s.mul_poly(c));
        }
        out
    }

    /// Action on the rational parts of a π-graded series, with the operator
    /// written in the variable `w = π z` (so `δ_w = δ_z`).
    pub fn apply_graded(&self, f: &PiGradedSeries) -> TruncatedSeries {
        self.apply(f.rational())
    }

    /// `δ^i = Σ_j S(i, j) z^j (d/dz)^j`, then divide by the leading term.
    pub fn to_ddz(&self) -> Result<DifferentialOperator> {
        let n = self.order();
        let s2 = stirling2(n);
        let a: Vec<QPoly> = (0..=n)
            .map(|j| {
                let sum = (j..=n).fold(QPoly::zero(), |acc, i| {
                    &acc + &self.coeffs[i].scale(&BigRational::from_integer(s2[i][j].clone()))
                });
                &sum * &QPoly::monomial(BigRational::one(), j)
            })
            .collect();
        let lead = &a[n];
        if lead.is_zero() {
            return Err(Error::InvalidArgument("degenerate leading coefficient".into()));
        }
        let b = (1..=n)
            .map(|m| RationalFunction::new(a[n - m].clone(), lead.clone()))
            .collect::<Result<Vec<_>>>()?;
        DifferentialOperator::new(b)
    }

    /// Common polynomial factors removed; the lowest nonzero coefficient of
    /// `c_n` scaled to 1.
    pub fn normalized(&self) -> DeltaOperator {
        let g = self.coeffs.iter().fold(QPoly::zero(), |acc, c| acc.gcd(c));
        let mut cs: Vec<QPoly> = self.coeffs.iter().map(|c| c.div_rem(&g).expect("nonzero gcd").0).collect();
        let lead = cs[cs.len() - 1].coeffs().iter().find(|c| !c.is_zero()).expect("nonzero").recip();
        for c in cs.iter_mut() {
            *c = c.scale(&lead);
        }
        DeltaOperator { coeffs: cs }
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            order: self.order(),
            form: OperatorForm::Delta,
            coeffs: self.coeffs.iter().map(|c| RationalFunction::from_poly(c.clone()).to_json()).collect(),
        }
    }
}

/// `d^n/dz^n + b_1 d^{n-1}/dz^{n-1} + ... + b_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialOperator {
    b: Vec<RationalFunction>,
}

/// A cleared operator applied to a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    /// `(D · op)(f)`, with `D` the lcm of the coefficient denominators.
    pub series: TruncatedSeries,
    /// Degrees `0..=window` are meaningful.
    pub window: usize,
}

impl Applied {
    pub fn vanishes(&self) -> bool {
        self.series.coeffs()[..=self.window].iter().all(Zero::is_zero)
    }
}

impl DifferentialOperator {
    pub fn new(b: Vec<RationalFunction>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidArgument("operator order must be >= 1".into()));
        }
        Ok(DifferentialOperator { b })
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `b_1, ..., b_n`.
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.b
    }

    /// `b_j` for `1 <= j <= n`.
    pub fn b(&self, j: usize) -> &RationalFunction {
        &self.b[j - 1]
    }

    /// Every `b_j` has Gauss norm at most 1.
    pub fn is_integral(&self, p: Prime) -> bool {
        self.b.iter().all(|c| c.gauss_norm(p).at_most_one())
    }

    /// `z^n · op` rewritten as `Σ_{m} (z^m b_m) · z^{n-m} d^{n-m}`, using
    /// `z^k d^k = δ (δ - 1) ... (δ - k + 1)`, and cleared of denominators.
    pub fn to_delta(&self) -> DeltaOperator {
        let n = self.order();
        let mut terms: Vec<RationalFunction> = vec![RationalFunction::constant(BigRational::zero()); n + 1];
        for m in 0..=n {
            let zb = if m == 0 {
                RationalFunction::constant(BigRational::one())
            } else {
                self.b(m).mul(&RationalFunction::from_poly(QPoly::monomial(BigRational::one(), m)))
            };
            let ff = falling_factorial(n - m);
            for (i, c) in ff.coeffs().iter().enumerate() {
                terms[i] = terms[i].add(&zb.scale(c));
            }
        }
        let lcm = terms.iter().fold(QPoly::one(), |acc, t| {
            let g = acc.gcd(t.den());
            let (quo, _) = (&acc * t.den()).div_rem(&g).expect("nonzero gcd");
            quo
        });
        let coeffs = terms
            .iter()
            .map(|t| {
                let (quo, _) = lcm.div_rem(t.den()).expect("nonzero den");
                t.num() * &quo
            })
            .collect();
        DeltaOperator { coeffs }.normalized()
    }

    /// Least common multiple `D` of the denominators, and `D b_j`.
    pub fn cleared(&self) -> (QPoly, Vec<QPoly>) {
        let d = self.b.iter().fold(QPoly::one(), |acc, c| {
            let g = acc.gcd(c.den());
            (&acc * c.den()).div_rem(&g).expect("nonzero gcd").0
        });
        let cs = self.b.iter().map(|c| &d.div_rem(c.den()).expect("nonzero").0 * c.num()).collect();
        (d, cs)
    }

    /// `(D · op)(f)`; valid through degree `bound(f) - n`.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<Applied> {
        let n = self.order();
        if f.bound() < n {
            return Err(Error::InvalidArgument(format!("series bound {} is below the order {n}", f.bound())));
        }
        let window = f.bound() - n;
        let (d, cs) = self.cleared();
        let mut derivs = vec![f.clone()];
        for _ in 0..n {
            let next = derivs.last().expect("nonempty").derivative();
            derivs.push(next);
        }
        let mut out = derivs[n].truncate(window)?.mul_poly(&d);
        for (m, c) in cs.iter().enumerate() {
            let term = derivs[n - m - 1].truncate(window)?.mul_poly(c);
            out = out.add(&term);
        }
        Ok(Applied { series: out, window })
    }

    /// Classical indicial coefficients at 0: `(z^j b_j)(0)`; errors when
    /// some `z^j b_j` has a pole at 0.
    pub fn indicial_at_zero(&self) -> Result<Vec<BigRational>> {
        (1..=self.order())
            .map(|j| {
                let r = self.b(j).mul(&RationalFunction::from_poly(QPoly::monomial(BigRational::one(), j)));
                r.eval(&BigRational::zero()).ok_or_else(|| Error::Irregular(format!("z^{j} b_{j} has a pole at 0")))
            })
            .collect()
    }

    /// Surrogate for maximal order multiplicity at 0: the indicial
    /// polynomial at 0 is `X^n`.
    pub fn mom_at_zero(&self) -> Result<bool> {
        let s = self.indicial_at_zero()?;
        let n = self.order();
        let mut poly = falling_factorial(n);
        for (j, sj) in s.iter().enumerate() {
            poly = &poly + &falling_factorial(n - j - 1).scale(sj);
        }
        Ok(poly == QPoly::monomial(BigRational::one(), n))
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson { order: self.order(), form: OperatorForm::Ddz, coeffs: self.b.iter().map(|c| c.to_json()).collect() }
    }
}

/// `δ^n - z Π (δ + a_i)`.
pub fn build_hypergeometric(params: &[BigRational], order: usize) -> Result<DeltaOperator> {
    if params.len() != order || order == 0 {
        return Err(Error::InvalidArgument(format!("expected {order} parameters, got {}", params.len())));
    }
    let prod = params.iter().fold(QPoly::one(), |acc, a| &acc * &QPoly::linear(-a.clone()));
    let z = QPoly::from_i64(&[0, -1]);
    let mut coeffs: Vec<QPoly> = (0..=order).map(|i| &z * &QPoly::constant(prod.coeff(i))).collect();
    coeffs[order] = &coeffs[order] + &QPoly::one();
    DeltaOperator::new(coeffs)
}

/// `δ^3 - z (δ + 1/2)^3`, annihilating `Σ C(2n,n)^3 / 64^n z^n`.
pub fn operator_l() -> DeltaOperator {
    build_hypergeometric(&[qr(1, 2), qr(1, 2), qr(1, 2)], 3).expect("valid parameters")
}

/// `δ^3 - z (δ - 1/2)(δ + 1/2)^2`, annihilating `Σ -C(2n,n)^3 / ((2n-1) 64^n) z^n`.
pub fn operator_d() -> DeltaOperator {
    build_hypergeometric(&[qr(-1, 2), qr(1, 2), qr(1, 2)], 3).expect("valid parameters")
}

/// `δ^3 - z (34δ^3 + 51δ^2 + 27δ + 5) + z^2 (δ + 1)^3`, annihilating the
/// Apéry series.
pub fn apery_delta_operator() -> DeltaOperator {
    let c = |v: &[i64]| QPoly::from_i64(v);
    DeltaOperator::new(vec![c(&[0, -5, 1]), c(&[0, -27, 3]), c(&[0, -51, 3]), c(&[1, -34, 1])]).expect("valid")
}

pub fn apery_operator() -> DifferentialOperator {
    apery_delta_operator().to_ddz().expect("nondegenerate")
}

/// `δ^2 + w^2` in `w = π z`, annihilating `J_0(w)`; acts on the rational
/// parts of a π-graded series at every prime.
pub fn bessel_graded_operator() -> DeltaOperator {
    DeltaOperator::new(vec![QPoly::from_i64(&[0, 0, 1]), QPoly::zero(), QPoly::one()]).expect("valid")
}

/// `δ^2 + π^2 z^2` with `π^2 = -3`, i.e. `δ^2 - 3 z^2`; only `p = 3` makes
/// `π^2` rational.
pub fn bessel_operator(p: Prime) -> Result<DeltaOperator> {
    if p.get() != 3 {
        return Err(Error::Unsupported(format!("π^2 is not rational for p = {p}; use the graded operator")));
    }
    DeltaOperator::new(vec![QPoly::from_i64(&[0, 0, -3]), QPoly::zero(), QPoly::one()])
}

/// Builtin operators by id: `L`, `D`, `H`, `bessel`.
pub fn builtin_operator(id: &str, p: Prime) -> Result<DifferentialOperator> {
    match id {
        "L" => operator_l().to_ddz(),
        "D" => operator_d().to_ddz(),
        "H" => Ok(apery_operator()),
        "bessel" => bessel_operator(p)?.to_ddz(),
        other => Err(Error::InvalidArgument(format!("unknown operator {other:?}"))),
    }
}

/// Indicial data at `α` modulo `p^t`, with the reduced `(z - α)^j b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicialData {
    pub alpha: i64,
    pub modulus: Modulus,
    pub s: Vec<u64>,
    /// Reduced and cancelled `(num, den)` of each `(z - α)^j b_j`.
    pub reduced: Vec<(ModPoly, ModPoly)>,
}

/// Certifies `α` as a regular singular point modulo `M^t` and returns
/// `s_j = F_j(α) mod p^t`, where `F_j ≡ (z - α)^j b_j`. Each `(z - α)^j b_j`
/// is brought to lowest terms, scaled to a unit-content denominator and
/// reduced; common `(z - α)` factors are cancelled while the denominator
/// vanishes at `α`, at most `j + deg den` times.
pub fn indicial_data_mod(op: &DifferentialOperator, alpha: i64, p: Prime, t: u32) -> Result<IndicialData> {
    if alpha.rem_euclid(p.get() as i64) == 0 {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} is not a unit at {p}")));
    }
    let m = Modulus::new(p, t)?;
    let a = q(alpha);
    let mut s = Vec::with_capacity(op.order());
    let mut reduced = Vec::with_capacity(op.order());
    for j in 1..=op.order() {
        let fail = |reason: String| Error::NotRegularSingular { j, t, reason };
        let r = op.b(j).mul_linear_power(&a, j as u32);
        let (num, den) = unit_content_pair(r.num(), r.den(), p)?;
        if num.content_valuation(p) < Valuation::Finite(0) {
            return Err(fail("Gauss norm exceeds 1".into()));
        }
        let mut nm = num.reduce_mod(m).map_err(|e| fail(e.to_string()))?;
        let mut dm = den.reduce_mod(m).map_err(|e| fail(e.to_string()))?;
        let cap = j + dm.degree().unwrap_or(0);
        let mut steps = 0;
        while !m.is_unit(dm.eval(alpha)) {
            if dm.eval(alpha) != 0 || nm.eval(alpha) != 0 {
                return Err(fail(format!("denominator value {} at {alpha} is not a unit", dm.eval(alpha))));
            }
            if steps == cap {
                return Err(fail(format!("cancellation exceeded {cap} steps")));
            }
            nm = nm.div_linear(alpha).0;
            dm = dm.div_linear(alpha).0;
            steps += 1;
        }
        let v = m.mul(nm.eval(alpha), m.inv(dm.eval(alpha)).expect("unit"));
        s.push(v);
        reduced.push((nm, dm));
    }
    Ok(IndicialData { alpha, modulus: m, s, reduced })
}

/// `P(X) = X^{(n)} + Σ_j s_j X^{(n-j)}` over `Z / p^t`, with `X^{(m)}` the
/// falling factorial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicialPolynomial {
    pub poly: ModPoly,
    pub order: usize,
}

pub fn indicial_poly(s: &[u64], n: usize, m: Modulus) -> Result<IndicialPolynomial> {
    if s.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} indicial coefficients, got {}", s.len())));
    }
    let to_mod = |p: &QPoly| p.reduce_mod(m).expect("integral falling factorial");
    let mut poly = to_mod(&falling_factorial(n));
    for (j, &sj) in s.iter().enumerate() {
        poly = poly.add(&to_mod(&falling_factorial(n - j - 1)).scale(sj));
    }
    Ok(IndicialPolynomial { poly, order: n })
}

impl IndicialPolynomial {
    pub fn eval(&self, v: i64) -> u64 {
        self.poly.eval(v)
    }
}

pub fn is_exponent(p: &IndicialPolynomial, v: i64) -> bool {
    p.eval(v) == 0
}

/// Serialized operator `{order, coeffs: [{num, den}], form}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub order: usize,
    pub coeffs: Vec<RatFunJson>,
    pub form: OperatorForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorForm {
    Ddz,
    Delta,
}

impl OperatorJson {
    pub fn to_operator(&self) -> Result<DifferentialOperator> {
        let fs = self.coeffs.iter().map(|c| c.to_ratfun()).collect::<Result<Vec<_>>>()?;
        match self.form {
            OperatorForm::Ddz => {
                if fs.len() != self.order {
                    return Err(Error::Parse(format!("ddz form needs {} coefficients", self.order)));
                }
                DifferentialOperator::new(fs)
            }
            OperatorForm::Delta => {
                if fs.len() != self.order + 1 || fs.iter().any(|f| f.den() != &QPoly::one()) {
                    return Err(Error::Parse(format!("delta form needs {} polynomial coefficients", self.order + 1)));
                }
                DeltaOperator::new(fs.iter().map(|f| f.num().clone()).collect())?.to_ddz()
            }
        }
    }
}
