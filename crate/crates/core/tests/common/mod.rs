//! Strategies and property checks shared by the acceptance runner and the
//! proptest suite.
#![allow(dead_code)]

use num_rational::BigRational;
use padic_indep::diffop::{indicial_data_mod, indicial_poly, is_exponent, operator_l, DifferentialOperator};
use padic_indep::newton::{root_profile, roots_in_disk, DiskId};
use padic_indep::poly::{q, qr, QPoly};
use padic_indep::ratfun::{GaussNorm, RationalFunction};
use padic_indep::series::{series_root, TruncatedSeries};
use padic_indep::valuation::Prime;
use proptest::prelude::*;

pub fn p3() -> Prime {
    Prime::new(3).unwrap()
}

pub fn nonzero_poly(maxdeg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 1..=maxdeg + 1).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

/// `3^e · num / den` with small integer polynomials.
pub fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (nonzero_poly(4), nonzero_poly(4), -2i32..=2).prop_map(|(n, d, e)| {
        let f = RationalFunction::from_i64(&n, &d).unwrap();
        f.scale(&BigRational::from_integer(3.into()).pow(e))
    })
}

/// Series with constant term 1 and small rational coefficients.
pub fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 0..=11).prop_map(|cs| {
        let mut v = vec![q(1)];
        v.extend(cs.into_iter().map(|(n, d)| qr(n, d)));
        TruncatedSeries::new(v).unwrap()
    })
}

pub fn root_index() -> impl Strategy<Value = u64> {
    (1u64..=8).prop_filter("prime to 3", |a| a % 3 != 0)
}

/// `(μ, u, c_1, c_2)`: `u(1)` is a unit at 3.
pub fn exponent_case() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (
        0u32..=2,
        nonzero_poly(3).prop_filter("u(1) unit", |u| u.iter().sum::<i64>().rem_euclid(3) != 0),
        prop::collection::vec(-5i64..=5, 1..=3),
        prop::collection::vec(-5i64..=5, 1..=3),
    )
}

pub fn gauss_multiplicative(f: &RationalFunction, g: &RationalFunction) -> bool {
    let p = p3();
    let v = |h: &RationalFunction| GaussNorm::of(h, p).valuation.finite().unwrap();
    v(&f.mul(g)) == v(f) + v(g) && GaussNorm::of(&f.mul(g), p).value() == GaussNorm::of(f, p).value() * GaussNorm::of(g, p).value()
}

pub fn logderiv_additive(f: &RationalFunction, g: &RationalFunction) -> bool {
    f.mul(g).logderiv().unwrap() == f.logderiv().unwrap().add(&g.logderiv().unwrap())
}

pub fn root_round_trip(f: &TruncatedSeries, a: u64) -> bool {
    series_root(f, a, p3()).unwrap().pow_int(a as i64).unwrap() == *f
}

/// Disks, extension-field roots, roots outside and inside the unit disk
/// partition the roots.
pub fn newton_partition(c: &[i64]) -> bool {
    let p = p3();
    let poly = QPoly::from_i64(c);
    let Some(deg) = poly.degree() else { return true };
    let prof = root_profile(&poly, p).unwrap();
    let per_disk = (1..p.get()).all(|d| {
        let n = roots_in_disk(&poly, p, DiskId::new(d, p).unwrap()).unwrap();
        prof.disks.iter().find(|x| x.0 == d).map(|x| x.1) == Some(n)
    });
    per_disk && prof.total() == deg
}

/// An order-3 operator with `b_1, b_2` perturbations of those of `L` and
/// `b_3` chosen so that `h = (z - 1)^μ u` is a solution. Returns `None` when
/// 1 is not regular singular modulo `M^2`, otherwise whether `μ` is an
/// exponent and the operator annihilates `h`.
pub fn exponent_property(mu: u32, u: &[i64], c1: &[i64], c2: &[i64]) -> Option<bool> {
    let p = p3();
    let l = operator_l().to_ddz().unwrap();
    let zm1 = QPoly::from_i64(&[-1, 1]);
    let h = &zm1.pow(mu) * &QPoly::from_i64(u);
    let b1 = l.b(1).add(&RationalFunction::new(QPoly::from_i64(c1), zm1.clone()).unwrap());
    let b2 = l.b(2).add(&RationalFunction::new(QPoly::from_i64(c2), zm1.pow(2)).unwrap());
    let d = |k: usize| (0..k).fold(h.clone(), |acc, _| acc.derivative());
    let rf = RationalFunction::from_poly;
    let top = rf(d(3)).add(&b1.mul(&rf(d(2)))).add(&b2.mul(&rf(d(1))));
    let b3 = top.neg().div(&rf(h.clone())).unwrap();
    let op = DifferentialOperator::new(vec![b1, b2, b3]).unwrap();
    let data = indicial_data_mod(&op, 1, p, 2).ok()?;
    let poly = indicial_poly(&data.s, 3, data.modulus).unwrap();
    let applied = op.apply(&TruncatedSeries::from_poly(&h, 30)).unwrap();
    Some(applied.vanishes() && is_exponent(&poly, mu as i64))
}
