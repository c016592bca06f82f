mod common;

use common::*;
use padic_indep::criterion::{run_criterion, SeriesSpec, Verdict};
use padic_indep::diffop::{indicial_data_mod, DeltaOperator, DifferentialOperator};
use padic_indep::modular::{ModPoly, Modulus};
use padic_indep::newton::{disk_residue_logderiv, residue_of_series_logderiv, DiskId};
use padic_indep::poly::{q, QPoly};
use padic_indep::ratfun::{congruent_mod_mt, pade_reconstruct, series_matches_ratfun_mod, ModRationalFunction, RationalFunction};
use padic_indep::series::{gen_apery, gen_h, TruncatedSeries};
use padic_indep::valuation::{bessel_coeff_pi_valuation, digit_sum, exp_coeff_valuation, vp_factorial, Prime};
use proptest::prelude::*;

fn series(bound: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-9i64..=9, bound + 1).prop_map(|c| TruncatedSeries::from_i64(&c).unwrap())
}

fn mod_ratfun() -> impl Strategy<Value = ModRationalFunction> {
    (prop::collection::vec(0u64..9, 1..=3), prop::collection::vec(0u64..9, 0..=2)).prop_map(|(n, d)| {
        let m = Modulus::new(p3(), 2).unwrap();
        let mut den = vec![1];
        den.extend(d);
        ModRationalFunction::new(ModPoly::new(n, m), ModPoly::new(den, m)).unwrap()
    })
}

fn delta_operator() -> impl Strategy<Value = DeltaOperator> {
    (1usize..=4)
        .prop_flat_map(|n| prop::collection::vec(nonzero_poly(3), n + 1))
        .prop_map(|cs| DeltaOperator::new(cs.iter().map(|c| QPoly::from_i64(c)).collect()).unwrap())
}

/// `b_j = c_j / (z - α)^j` with polynomial `c_j`.
fn polar_operator(alpha: i64, cs: &[Vec<i64>]) -> DifferentialOperator {
    let zm = QPoly::from_i64(&[-alpha, 1]);
    let b = cs
        .iter()
        .enumerate()
        .map(|(j, c)| RationalFunction::new(QPoly::from_i64(c), zm.pow(j as u32 + 1)).unwrap())
        .collect();
    DifferentialOperator::new(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gauss_norm_is_multiplicative(f in ratfun(), g in ratfun()) {
        prop_assert!(gauss_multiplicative(&f, &g));
    }

    #[test]
    fn logderiv_is_additive(f in ratfun(), g in ratfun()) {
        prop_assert!(logderiv_additive(&f, &g));
    }

    #[test]
    fn series_root_round_trip(f in unit_series(), a in root_index()) {
        prop_assert!(root_round_trip(&f, a));
    }

    #[test]
    fn newton_polygon_partitions_roots(c in nonzero_poly(8)) {
        prop_assert!(newton_partition(&c));
    }

    #[test]
    fn solutions_give_exponents((mu, u, c1, c2) in exponent_case()) {
        if let Some(ok) = exponent_property(mu, &u, &c1, &c2) {
            prop_assert!(ok);
        }
    }

    #[test]
    fn series_ring_axioms(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn inverse_is_inverse(f in unit_series()) {
        let inv = f.invert().unwrap();
        prop_assert_eq!(f.mul(&inv), TruncatedSeries::one(f.bound()));
    }

    #[test]
    fn logderiv_of_substitution(f in unit_series(), m in 1usize..=4) {
        prop_assume!(f.bound() >= 1);
        let lhs = f.substitute_power(m).unwrap().log_derivative().unwrap();
        let ld = f.log_derivative().unwrap();
        for i in 0..=lhs.bound() {
            let expected = if (i + 1) % m == 0 && (i + 1) / m >= 1 && (i + 1) / m - 1 <= ld.bound() {
                ld.coeff((i + 1) / m - 1) * q(m as i64)
            } else {
                q(0)
            };
            if (i + 1) / m <= ld.bound() + 1 {
                prop_assert_eq!(lhs.coeff(i), &expected, "degree {}", i);
            }
        }
    }

    #[test]
    fn congruence_is_an_equivalence(f in ratfun(), g in ratfun(), t in 1u32..=3) {
        let p = p3();
        prop_assert!(congruent_mod_mt(&f, &f, p, t));
        prop_assert_eq!(congruent_mod_mt(&f, &g, p, t), congruent_mod_mt(&g, &f, p, t));
        if congruent_mod_mt(&f, &g, p, t) {
            prop_assert!(congruent_mod_mt(&f, &g, p, t - 1));
        }
        let h = f.add(&g.scale(&q(27)));
        if congruent_mod_mt(&f, &g, p, t) && congruent_mod_mt(&g, &h, p, t) {
            prop_assert!(congruent_mod_mt(&f, &h, p, t));
        }
    }

    #[test]
    fn pade_round_trip(f in mod_ratfun()) {
        let s = f.expand_at_zero(30);
        let r = pade_reconstruct(&s, 2, 2);
        prop_assert!(r.is_some());
        prop_assert!(series_matches_ratfun_mod(&s, &r.unwrap(), 30).unwrap());
        prop_assert!(series_matches_ratfun_mod(&s, &f, 30).unwrap());
    }

    #[test]
    fn delta_ddz_round_trip(op in delta_operator()) {
        let back = op.to_ddz().unwrap().to_delta();
        prop_assert_eq!(back, op.normalized());
    }

    #[test]
    fn indicial_precision_coherence(cs in prop::collection::vec(nonzero_poly(2), 1..=3), alpha in prop::sample::select(vec![1i64, -1, 2, 4])) {
        let p = p3();
        let op = polar_operator(alpha, &cs);
        let t2 = indicial_data_mod(&op, alpha, p, 2).unwrap();
        let t1 = indicial_data_mod(&op, alpha, p, 1).unwrap();
        let lowered: Vec<u64> = t2.s.iter().map(|s| s % 3).collect();
        prop_assert_eq!(lowered, t1.s);
        let m = Modulus::new(p, 2).unwrap();
        let exact: Vec<u64> = cs.iter().map(|c| m.reduce_rational(&QPoly::from_i64(c).eval(&q(alpha))).unwrap()).collect();
        prop_assert_eq!(exact, t2.s);
    }

    #[test]
    fn disk_residue_brute_force(roots in prop::collection::vec((prop::sample::select(vec![1i64, 2, 4, 5, 7, 8, -1, -2, 10, 11]), 1i64..=3), 1..=4), k in 1u32..=2) {
        let p = p3();
        let m = Modulus::new(p, k).unwrap();
        let factors: Vec<(QPoly, i64)> = roots.iter().map(|&(b, n)| (QPoly::from_i64(&[-b, 1]), n)).collect();
        let poly = roots.iter().fold(QPoly::one(), |acc, &(b, n)| &acc * &QPoly::from_i64(&[-b, 1]).pow(n as u32));
        for c in 1..p.get() {
            let disk = DiskId::new(c, p).unwrap();
            let expected = m.reduce_i64(roots.iter().filter(|r| r.0.rem_euclid(3) as u64 == c).map(|r| r.1).sum());
            prop_assert_eq!(disk_residue_logderiv(&factors, p, k, disk).unwrap(), expected);
            prop_assert_eq!(disk_residue_logderiv(&[(poly.clone(), 1)], p, k, disk).unwrap(), expected);
        }
    }
}

#[test]
fn residue_coherence_in_k() {
    let p = p3();
    for (f, d) in [(gen_h(29), 1), (gen_apery(29), 2)] {
        let disk = DiskId::new(d, p).unwrap();
        let k2 = residue_of_series_logderiv(&f, "s", p, 2, disk).unwrap().value;
        let k1 = residue_of_series_logderiv(&f, "s", p, 1, disk).unwrap().value;
        assert_eq!(k2 % 3, k1);
    }
}

#[test]
fn residue_matches_partial_fractions() {
    let p = p3();
    let d1 = DiskId::new(1, p).unwrap();
    let d2 = DiskId::new(2, p).unwrap();
    // h'/h ≡ (2z+1)/(z^2+z+1) - 7/(z-1) mod 9.
    let h_factors = [(QPoly::from_i64(&[1, 1, 1]), 1), (QPoly::from_i64(&[-1, 1]), -7)];
    // A'/A ≡ (2z-1)/(z^2-z+1) + 6/(z+1) mod 9.
    let a_factors = [(QPoly::from_i64(&[1, -1, 1]), 1), (QPoly::from_i64(&[1, 1]), 6)];
    assert_eq!(disk_residue_logderiv(&h_factors, p, 2, d1).unwrap(), 4);
    assert_eq!(disk_residue_logderiv(&a_factors, p, 2, d2).unwrap(), 8);
    assert_eq!(residue_of_series_logderiv(&gen_h(29), "h", p, 2, d1).unwrap().value, 4);
    assert_eq!(residue_of_series_logderiv(&gen_apery(29), "apery", p, 2, d2).unwrap().value, 8);
}

#[test]
fn subsets_of_independent_stay_independent() {
    let p = p3();
    let specs = [SeriesSpec::builtin("h", "L", 1, p).unwrap(), SeriesSpec::builtin("apery", "H", 2, p).unwrap()];
    assert_eq!(run_criterion(&specs, 2).unwrap().verdict, Verdict::Independent);
    for s in &specs {
        assert_eq!(run_criterion(std::slice::from_ref(s), 2).unwrap().verdict, Verdict::Independent);
    }
}

/// Legendre's sum, kept independent of the digit-sum formula.
fn legendre(n: u64, p: u64) -> u64 {
    let (mut s, mut q) = (0, p);
    while q <= n {
        s += n / q;
        q *= p;
    }
    s
}

#[test]
fn factorial_valuations_match_legendre() {
    for p in [3u64, 5, 7] {
        let pr = Prime::new(p).unwrap();
        for n in 0..=10_000u64 {
            assert_eq!(vp_factorial(n, pr), legendre(n, p), "p = {p}, n = {n}");
            assert_eq!((n - digit_sum(n, pr)) % (p - 1), 0);
            if n >= 1 {
                assert!(digit_sum(n, pr) >= 1);
                let v = bessel_coeff_pi_valuation(n, pr).unwrap().0;
                assert_eq!(v, 2 * n as i64 - 2 * (p as i64 - 1) * vp_factorial(n, pr) as i64);
            }
        }
    }
}

#[test]
fn bessel_valuation_minimal_at_powers() {
    let p = p3();
    let mut powers = std::collections::BTreeSet::new();
    for n in 0..=8 {
        powers.insert(3u64.pow(n));
        assert_eq!(bessel_coeff_pi_valuation(3u64.pow(n), p).unwrap().0, 2);
    }
    for m in 1..=3u64.pow(8) {
        if !powers.contains(&m) {
            assert!(bessel_coeff_pi_valuation(m, p).unwrap().0 > 2, "m = {m}");
        }
    }
}

#[test]
fn exp_valuations_grow() {
    for pp in [3u64, 5, 7] {
        let p = Prime::new(pp).unwrap();
        let vals: Vec<_> = (0..=2000u64).map(|n| exp_coeff_valuation(n, p)).collect();
        for (n, v) in vals.iter().enumerate() {
            assert!(*v >= num_rational::Ratio::from_integer(n as i64));
        }
        for m in 1..=1000usize {
            let min = vals[m..=2 * m].iter().min().unwrap();
            assert!(*min > num_rational::Ratio::from_integer(m as i64));
        }
    }
}
