//! Finite-degree checks behind the transcendence of `J_0(π z)`: lacunary
//! support of its powers modulo π-power thresholds, domination of the
//! binomial terms, convergence of `exp(p π z)`, and rational-reconstruction
//! evidence against rationality.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ratfun::pade_reconstruct;
use crate::series::{gen_bessel, ModSeries};
use crate::valuation::{digit_sum, exp_coeff_valuation, vp_u64, Prime, Valuation};

/// Degrees `2 p^n` within `degree`, `n >= 0`.
pub fn lacunary_degrees(p: Prime, degree: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d <= degree {
        out.push(d);
        d *= p.get() as usize;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LacunarityReport {
    pub power: u64,
    pub prime: u64,
    pub degree: usize,
    /// `(p - 1) v_p(N) + 3`, in π-units.
    pub threshold: i64,
    /// Nonconstant degrees whose coefficient has π-valuation below the threshold.
    pub surviving_support: Vec<usize>,
    pub survivor_valuations: Vec<i64>,
    /// Smallest π-valuation among the remaining nonconstant degrees.
    pub min_other_valuation: Option<i64>,
    pub constant_term_is_one: bool,
    pub passes: bool,
}

/// Expands `J_0(π z)^N` through `degree` and classifies every coefficient
/// against `T = (p - 1) v_p(N) + 3`: the check passes when the survivors are
/// exactly the degrees `2 p^n`, each at valuation `T - 1`.
pub fn bessel_power_lacunarity(n: u64, p: Prime, degree: usize) -> LacunarityReport {
    let b = gen_bessel(degree, p).pow(n);
    let threshold = (p.get() as i64 - 1) * vp_u64(n, p) as i64 + 3;
    let mut surviving_support = Vec::new();
    let mut survivor_valuations = Vec::new();
    let mut min_other: Option<i64> = None;
    for d in 1..=degree {
        if let Valuation::Finite(v) = b.pi_valuation(d) {
            if v < threshold {
                surviving_support.push(d);
                survivor_valuations.push(v);
            } else {
                min_other = Some(min_other.map_or(v, |m| m.min(v)));
            }
        }
    }
    let constant_term_is_one = b.rational().coeff(0) == &num_rational::BigRational::from_integer(1.into());
    let passes = constant_term_is_one
        && surviving_support == lacunary_degrees(p, degree)
        && survivor_valuations.iter().all(|&v| v == threshold - 1);
    LacunarityReport {
        power: n,
        prime: p.get(),
        degree,
        threshold,
        surviving_support,
        survivor_valuations,
        min_other_valuation: min_other,
        constant_term_is_one,
        passes,
    }
}

/// Number of carries when adding `a` and `b` in base `p`; by Kummer this is
/// `v_p(C(a + b, a))`.
pub fn kummer_carries(mut a: u64, mut b: u64, p: Prime) -> u64 {
    let p = p.get();
    let (mut carry, mut count) = (0, 0);
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}

/// For every `1 < s <= N`: `(p - 1) v_p(C(N, s)) + 2 s > (p - 1) v_p(N) + 2`,
/// i.e. `C(N, s) f_1^s` is strictly smaller than `N f_1` in Gauss norm when
/// `f_1` has π-valuation 2. Binomial valuations come from Kummer's theorem.
pub fn binomial_term_domination(n: u64, p: Prime) -> bool {
    let pm1 = p.get() as i64 - 1;
    let rhs = pm1 * vp_u64(n, p) as i64 + 2;
    (2..=n).all(|s| pm1 * kummer_carries(s, n - s, p) as i64 + 2 * s as i64 > rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpConvergenceReport {
    pub prime: u64,
    pub nmax: u64,
    /// `v_p(p^n π^n / n!) = n + Σ_n / (p - 1)` as `"num/den"`.
    pub valuations: Vec<String>,
    /// For each `B <= nmax`, the minimum valuation over `B <= n <= nmax`.
    pub tail_minima: Vec<String>,
    /// Every tail minimum is at least `B`.
    pub certified: bool,
}

pub fn exp_pth_power_convergence(p: Prime, nmax: u64) -> ExpConvergenceReport {
    let vals: Vec<Ratio<i64>> = (0..=nmax).map(|n| exp_coeff_valuation(n, p)).collect();
    let mut tails = vals.clone();
    for i in (0..vals.len().saturating_sub(1)).rev() {
        tails[i] = tails[i].min(tails[i + 1]);
    }
    let certified = tails.iter().enumerate().all(|(b, v)| *v >= Ratio::from_integer(b as i64));
    let fmt = |r: &Ratio<i64>| format!("{}/{}", r.numer(), r.denom());
    ExpConvergenceReport {
        prime: p.get(),
        nmax,
        valuations: vals.iter().map(fmt).collect(),
        tail_minima: tails.iter().map(fmt).collect(),
        certified,
    }
}

/// Digit-sum cross-check of a single exponential valuation.
pub fn exp_valuation_from_digits(n: u64, p: Prime) -> Ratio<i64> {
    Ratio::new(n as i64 * (p.get() as i64 - 1) + digit_sum(n, p) as i64, p.get() as i64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HankelReport {
    pub dmax: usize,
    pub window: usize,
    pub modulus: u64,
    /// Degrees `d` for which some `(d, d)` rational function matches.
    pub matched: Vec<usize>,
    /// Degrees `d` with no match.
    pub unmatched: Vec<usize>,
    pub evidence_grade: bool,
}

impl HankelReport {
    pub fn no_rational_match(&self) -> bool {
        self.matched.is_empty()
    }
}

/// Tries `pade_reconstruct` with numerator and denominator degree `d` for
/// every `1 <= d <= dmax` over the first `2 dmax + window` coefficients.
pub fn hankel_nonrationality_evidence(s: &ModSeries, dmax: usize, window: usize) -> Result<HankelReport> {
    let need = 2 * dmax + window;
    if s.bound() < need {
        return Err(crate::Error::InvalidArgument(format!("series bound {} is below 2 dmax + window = {need}", s.bound())));
    }
    let s = s.truncate(need)?;
    let (mut matched, mut unmatched) = (Vec::new(), Vec::new());
    for d in 1..=dmax {
        if pade_reconstruct(&s, d, d).is_some() {
            matched.push(d);
        } else {
            unmatched.push(d);
        }
    }
    Ok(HankelReport { dmax, window, modulus: s.modulus().value(), matched, unmatched, evidence_grade: true })
}

/// `J_0(π z)^N` modulo `π^T`, `T = (p - 1) v_p(N) + 3`, as an `F_p` series:
/// `1` plus the unit digits of the coefficients at level `T - 1`.
pub fn reduced_bessel_power(n: u64, p: Prime, degree: usize) -> Result<ModSeries> {
    let b = gen_bessel(degree, p).pow(n);
    let level = (p.get() as i64 - 1) * vp_u64(n, p) as i64 + 2;
    b.leading_digits(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::Modulus;
    use crate::valuation::check_binomial_inequality;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn lacunarity_examples() {
        let r = bessel_power_lacunarity(1, p3(), 60);
        assert!(r.passes);
        assert_eq!(r.surviving_support, vec![2, 6, 18, 54]);
        assert_eq!(r.survivor_valuations, vec![2, 2, 2, 2]);
        assert!(r.min_other_valuation.unwrap() >= 3);
        let r = bessel_power_lacunarity(3, p3(), 60);
        assert_eq!(r.threshold, 5);
        assert!(r.passes);
        assert!(r.survivor_valuations.iter().all(|&v| v == 4));
        let r = bessel_power_lacunarity(2, p3(), 60);
        assert_eq!(r.threshold, 3);
        assert!(r.passes);
    }

    #[test]
    fn general_prime() {
        let p5 = Prime::new(5).unwrap();
        for n in [1, 5] {
            assert!(bessel_power_lacunarity(n, p5, 54).passes);
        }
    }

    #[test]
    fn domination() {
        assert!(binomial_term_domination(9, p3()));
        assert!(binomial_term_domination(2, p3()));
        assert!(binomial_term_domination(27, Prime::new(5).unwrap()));
        for p in [3, 5, 7] {
            let p = Prime::new(p).unwrap();
            for n in 2..=120 {
                let lemma = (2..=n).all(|s| check_binomial_inequality(n, s, p).unwrap());
                assert_eq!(binomial_term_domination(n, p), lemma);
            }
        }
    }

    #[test]
    fn kummer() {
        assert_eq!(kummer_carries(2, 7, p3()), 2); // C(9,2) = 36
        assert_eq!(kummer_carries(3, 24, p3()), 2); // C(27,3) = 2925
    }

    #[test]
    fn exp_convergence() {
        let r = exp_pth_power_convergence(p3(), 30);
        assert!(r.certified);
        assert_eq!(r.valuations[0], "0/1");
        assert_eq!(r.valuations[3], "7/2");
        assert_eq!(r.tail_minima[10], "11/1");
        assert_eq!(exp_valuation_from_digits(10, p3()), exp_coeff_valuation(10, p3()));
    }

    #[test]
    fn hankel_examples() {
        let s = reduced_bessel_power(1, p3(), 140).unwrap();
        let support: Vec<usize> = (0..=140).filter(|&i| s.coeff(i) != 0).collect();
        assert_eq!(support, vec![0, 2, 6, 18, 54]);
        let r = hankel_nonrationality_evidence(&s, 8, 120).unwrap();
        assert!(r.no_rational_match());

        let m = Modulus::new(p3(), 1).unwrap();
        let geo = ModSeries::new(vec![1; 30], m).unwrap();
        let r = hankel_nonrationality_evidence(&geo, 2, 20).unwrap();
        assert_eq!(r.matched, vec![1, 2]);

        let mix: Vec<u64> = (0..=140).map(|i| (1 + s.coeff(i)) % 3).collect();
        let r = hankel_nonrationality_evidence(&ModSeries::new(mix, m).unwrap(), 8, 120).unwrap();
        assert!(r.no_rational_match());
    }
}
