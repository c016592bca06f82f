//! Newton polygons, slope-zero residual polynomials, root counts in residue
//! disks, and residues of logarithmic derivatives on those disks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{ModPoly, Modulus};
use crate::poly::QPoly;
use crate::series::{dwork_mismatch, TruncatedSeries};
use crate::serial;
use crate::valuation::{vp_rational, Prime, Valuation};

/// Lower convex hull of `(i, v_p(a_i))`, collinear points dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// Segments as `(start, end)` vertex pairs.
    pub fn segments(&self) -> impl Iterator<Item = ((usize, i64), (usize, i64))> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// The horizontal segment, if any.
    pub fn slope_zero_segment(&self) -> Option<(usize, usize, i64)> {
        self.segments().find(|(a, b)| a.1 == b.1).map(|(a, b)| (a.0, b.0, a.1))
    }
}

pub fn newton_polygon(poly: &QPoly, p: Prime) -> Result<NewtonPolygon> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<(usize, i64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| vp_rational(c, p).finite().map(|v| (i, v)))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// Residual polynomial over `F_p` of the horizontal segment: coefficients
/// `a_i / p^v mod p` for `i` along the segment, shifted to start at degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPolynomial {
    pub poly: ModPoly,
}

impl ResidualPolynomial {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Multiplicity of `(z - c)` over `F_p`.
    pub fn multiplicity(&self, c: u64) -> usize {
        let mut cur = self.poly.clone();
        let mut e = 0;
        while cur.degree().is_some_and(|d| d > 0) {
            let (quo, rem) = cur.div_linear(c as i64);
            if rem != 0 {
                break;
            }
            cur = quo;
            e += 1;
        }
        e
    }
}

/// `None` when the polygon has no horizontal segment: no roots of norm 1.
pub fn residual_polynomial(poly: &QPoly, p: Prime) -> Result<Option<ResidualPolynomial>> {
    let np = newton_polygon(poly, p)?;
    let Some((i0, i1, v)) = np.slope_zero_segment() else {
        return Ok(None);
    };
    let m = Modulus::new(p, 1)?;
    let pv = crate::poly::q(p.get() as i64);
    let mut scale = num_rational::BigRational::from_integer(1.into());
    for _ in 0..v.abs() {
        scale = if v > 0 { scale / &pv } else { scale * &pv };
    }
    let coeffs: Vec<u64> = (i0..=i1)
        .map(|i| {
            let c = poly.coeff(i) * &scale;
            match vp_rational(&c, p) {
                Valuation::Finite(0) => m.reduce_rational(&c).expect("unit"),
                _ => 0,
            }
        })
        .collect();
    Ok(Some(ResidualPolynomial { poly: ModPoly::new(coeffs, m) }))
}

/// Residue disk `{|x - c| < 1}` around a prime-field center `c ∈ [1, p-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiskId(u64);

impl DiskId {
    pub fn new(center: u64, p: Prime) -> Result<Self> {
        if center == 0 || center >= p.get() {
            return Err(Error::InvalidArgument(format!("disk center must lie in [1, {}], got {center}", p.get() - 1)));
        }
        Ok(DiskId(center))
    }

    /// Any integer prime to `p`, reduced to its center.
    pub fn from_integer(a: i64, p: Prime) -> Result<Self> {
        Self::new(a.rem_euclid(p.get() as i64) as u64, p)
    }

    pub fn center(self) -> u64 {
        self.0
    }

    /// Symmetric representative of the center in `(-p/2, p/2)`.
    pub fn symmetric(self, p: Prime) -> i64 {
        let c = self.0 as i64;
        if c > p.get() as i64 / 2 {
            c - p.get() as i64
        } else {
            c
        }
    }
}

/// Roots of norm 1 reducing to the disk center, with multiplicity.
pub fn roots_in_disk(poly: &QPoly, p: Prime, disk: DiskId) -> Result<usize> {
    Ok(residual_polynomial(poly, p)?.map_or(0, |r| r.multiplicity(disk.center())))
}

/// Where the roots of a polynomial sit relative to the unit circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootProfile {
    /// Roots of norm 1 per prime-field disk, centers `1..p-1`.
    pub disks: Vec<(u64, usize)>,
    /// Roots of norm 1 whose reduction lies outside `F_p`.
    pub extension: usize,
    /// Roots of norm greater than 1.
    pub outside: usize,
    /// Roots of norm less than 1, zero included.
    pub inside: usize,
}

impl RootProfile {
    pub fn total(&self) -> usize {
        self.disks.iter().map(|d| d.1).sum::<usize>() + self.extension + self.outside + self.inside
    }

    /// Centers of disks holding at least one root.
    pub fn occupied(&self) -> Vec<u64> {
        self.disks.iter().filter(|d| d.1 > 0).map(|d| d.0).collect()
    }
}

pub fn root_profile(poly: &QPoly, p: Prime) -> Result<RootProfile> {
    let np = newton_polygon(poly, p)?;
    let mut outside = 0;
    let mut inside = np.vertices[0].0;
    for (a, b) in np.segments() {
        let len = b.0 - a.0;
        match b.1.cmp(&a.1) {
            std::cmp::Ordering::Less => inside += len,
            std::cmp::Ordering::Greater => outside += len,
            std::cmp::Ordering::Equal => {}
        }
    }
    let residual = residual_polynomial(poly, p)?;
    let disks: Vec<(u64, usize)> =
        (1..p.get()).map(|c| (c, residual.as_ref().map_or(0, |r| r.multiplicity(c)))).collect();
    let on_circle = residual.as_ref().map_or(0, |r| r.degree());
    let extension = on_circle - disks.iter().map(|d| d.1).sum::<usize>();
    Ok(RootProfile { disks, extension, outside, inside })
}

/// Residue on a disk of the logarithmic derivative of `Π g_i^{e_i}`:
/// `Σ e_i · roots_in_disk(g_i) mod p^k`.
pub fn disk_residue_logderiv(factors: &[(QPoly, i64)], p: Prime, k: u32, disk: DiskId) -> Result<u64> {
    let m = Modulus::new(p, k)?;
    let mut acc = 0i64;
    for (g, e) in factors {
        acc += e * roots_in_disk(g, p, disk)? as i64;
    }
    Ok(m.reduce_i64(acc))
}

/// One factor of a residue certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueFactor {
    /// Coefficients, ascending.
    #[serde(with = "serial::rational_vec")]
    pub poly: Vec<num_rational::BigRational>,
    pub exponent: i64,
    pub roots_in_disk: usize,
    /// Human-readable origin such as `f_2(z^3)`.
    pub label: String,
}

/// Level-`r` Dwork check recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DworkLevel {
    pub r: u32,
    pub bound: usize,
    pub holds: bool,
}

/// Re-verifiable record of a disk residue computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCertificate {
    pub series: String,
    pub prime: u64,
    pub precision: u32,
    pub modulus: u64,
    pub disk: u64,
    pub dwork: Vec<DworkLevel>,
    pub factors: Vec<ResidueFactor>,
    pub value: u64,
}

/// Extra degrees checked past `p^k` in the internal Dwork checks.
pub const DWORK_SLACK: usize = 20;

/// Residue on `disk` of `f'/f` modulo `p^k`. Certifies the Dwork congruences
/// for `r = 1..=k` through degree `p^k + 20`, then counts roots in the factor
/// list `f_k(z^{p^j})^{+1}`, `f_{k-1}(z^{p^{j+1}})^{-1}`, `j = 0..k-1`, whose
/// product is congruent to `f(z) / f(z^{p^k})` modulo `p^k`.
pub fn residue_of_series_logderiv(
    f: &TruncatedSeries,
    name: &str,
    p: Prime,
    k: u32,
    disk: DiskId,
) -> Result<ResidueCertificate> {
    let pk = p.pow(k) as usize;
    let bound = pk + DWORK_SLACK;
    let mut dwork = Vec::new();
    for r in 1..=k {
        if let Some(degree) = dwork_mismatch(f, p, r, bound)? {
            return Err(Error::DworkFailure { r, degree });
        }
        dwork.push(DworkLevel { r, bound, holds: true });
    }
    let pu = p.get() as usize;
    let fk = f.truncation_poly(pk - 1)?;
    let fk1 = f.truncation_poly(pk / pu - 1)?;
    let mut factors = Vec::new();
    let mut value = 0i64;
    for j in 0..k {
        let sub = pu.pow(j);
        for (base, e, s, label) in [
            (&fk, 1i64, sub, format!("f_{k}(z^{sub})")),
            (&fk1, -1i64, sub * pu, format!("f_{}(z^{})", k - 1, sub * pu)),
        ] {
            let g = base.substitute_power(s);
            let n = roots_in_disk(&g, p, disk)?;
            value += e * n as i64;
            factors.push(ResidueFactor { poly: g.coeffs().to_vec(), exponent: e, roots_in_disk: n, label });
        }
    }
    let m = Modulus::new(p, k)?;
    Ok(ResidueCertificate {
        series: name.to_string(),
        prime: p.get(),
        precision: k,
        modulus: m.value(),
        disk: disk.center(),
        dwork,
        factors,
        value: m.reduce_i64(value),
    })
}

impl ResidueCertificate {
    /// Recomputes the value from the recorded factors.
    pub fn recheck(&self) -> Result<bool> {
        let p = Prime::new(self.prime)?;
        let disk = DiskId::new(self.disk, p)?;
        let factors: Vec<(QPoly, i64)> =
            self.factors.iter().map(|f| (QPoly::new(f.poly.clone()), f.exponent)).collect();
        for (f, (g, _)) in self.factors.iter().zip(&factors) {
            if roots_in_disk(g, p, disk)? != f.roots_in_disk {
                return Ok(false);
            }
        }
        Ok(disk_residue_logderiv(&factors, p, self.precision, disk)? == self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, qr};
    use crate::series::{gen_apery, gen_h};

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn d(c: u64) -> DiskId {
        DiskId::new(c, p3()).unwrap()
    }

    #[test]
    fn polygons() {
        let h1 = QPoly::new(vec![q(1), qr(1, 8), qr(27, 512)]);
        assert_eq!(newton_polygon(&h1, p3()).unwrap().vertices, vec![(0, 0), (1, 0), (2, 3)]);
        assert_eq!(newton_polygon(&QPoly::from_i64(&[1, 1]), p3()).unwrap().vertices, vec![(0, 0), (1, 0)]);
        assert_eq!(newton_polygon(&QPoly::from_i64(&[3, 0, 1]), p3()).unwrap().vertices, vec![(0, 1), (2, 0)]);
        assert_eq!(newton_polygon(&QPoly::from_i64(&[1, 1, 1]), p3()).unwrap().vertices, vec![(0, 0), (2, 0)]);
        assert!(newton_polygon(&QPoly::zero(), p3()).is_err());
    }

    #[test]
    fn disk_counts() {
        assert_eq!(roots_in_disk(&QPoly::from_i64(&[1, 1, 1]), p3(), d(1)).unwrap(), 2);
        let h1 = QPoly::new(vec![q(1), qr(1, 8), qr(27, 512)]);
        assert_eq!(roots_in_disk(&h1, p3(), d(1)).unwrap(), 1);
        assert_eq!(roots_in_disk(&QPoly::from_i64(&[1, -1, 1]), p3(), d(2)).unwrap(), 2);
        assert_eq!(roots_in_disk(&QPoly::from_i64(&[3, 0, 1]), p3(), d(1)).unwrap(), 0);
        // z^2 + 1 has no roots in F_3
        let prof = root_profile(&QPoly::from_i64(&[1, 0, 1]), p3()).unwrap();
        assert_eq!(prof.extension, 2);
    }

    #[test]
    fn residues_from_factor_lists() {
        let f = [(QPoly::from_i64(&[1, 1, 1]), 1), (QPoly::from_i64(&[-1, 1]), -7)];
        assert_eq!(disk_residue_logderiv(&f, p3(), 2, d(1)).unwrap(), 4);
        assert_eq!(disk_residue_logderiv(&[(QPoly::from_i64(&[-1, 1]), 1)], p3(), 1, d(1)).unwrap(), 1);
        // 3/(2(z+1)) ≡ 6/(z+1) mod M^2
        let a = [(QPoly::from_i64(&[1, -1, 1]), 1), (QPoly::from_i64(&[1, 1]), 6)];
        assert_eq!(disk_residue_logderiv(&a, p3(), 2, d(2)).unwrap(), 8);
    }

    #[test]
    fn series_residues() {
        let h = gen_h(40);
        let c = residue_of_series_logderiv(&h, "h", p3(), 2, d(1)).unwrap();
        assert_eq!(c.value, 4);
        let counts: Vec<usize> = c.factors.iter().map(|f| f.roots_in_disk).collect();
        assert_eq!(counts, vec![4, 3, 12, 9]);
        assert!(c.recheck().unwrap());
        let a = residue_of_series_logderiv(&gen_apery(40), "apery", p3(), 2, d(2)).unwrap();
        assert_eq!(a.value, 8);
        let counts: Vec<usize> = a.factors.iter().map(|f| f.roots_in_disk).collect();
        assert_eq!(counts, vec![8, 6, 24, 18]);
        assert_eq!(residue_of_series_logderiv(&h, "h", p3(), 1, d(1)).unwrap().value, 1);
    }
}
