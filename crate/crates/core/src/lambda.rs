//! The parameter lattice: pairs `a|a'` of complex numbers with integer
//! difference, stored as `(k, σ) = (a − a', a + a')`, together with the
//! single-valued double powers `z^{a|a'}` built on it and the list
//! utilities `(a) + h` and `(a)_{\j}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::Error;

/// Tolerance for deciding that a floating-point difference is an integer.
pub const LATTICE_TOL: f64 = 1e-9;

/// A lattice point `a|a'` with `a − a' ∈ ℤ`.
///
/// The primary representation is `(k, σ)` with `a = (k + σ)/2` and
/// `a' = (−k + σ)/2`, so `a − a' = k` holds exactly by construction and
/// `a + a' = σ` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPoint {
    /// Integer difference `a − a'`.
    pub k: i64,
    /// Complex sum `a + a'`.
    pub sigma: Complex64,
}

impl LambdaPoint {
    pub fn new(k: i64, sigma: Complex64) -> Self {
        LambdaPoint { k, sigma }
    }

    /// Lattice point with real `σ`.
    pub fn real(k: i64, sigma: f64) -> Self {
        LambdaPoint { k, sigma: Complex64::new(sigma, 0.0) }
    }

    /// The point `m|m'` for integers `m`, `m'`.
    pub fn from_integers(m: i64, m_prime: i64) -> Self {
        LambdaPoint { k: m - m_prime, sigma: Complex64::new((m + m_prime) as f64, 0.0) }
    }

    /// Build a point from the pair `(a, a')`, checking the lattice
    /// condition `a − a' ∈ ℤ` to within [`LATTICE_TOL`].
    pub fn from_ab(a: Complex64, a_prime: Complex64) -> Result<Self, Error> {
        let diff = a - a_prime;
        let k = diff.re.round();
        if diff.im.abs() > LATTICE_TOL || (diff.re - k).abs() > LATTICE_TOL {
            return Err(Error::NotOnLattice { a_minus_ap: diff });
        }
        Ok(LambdaPoint { k: k as i64, sigma: a + a_prime })
    }

    /// First component `a = (k + σ)/2`.
    pub fn a(&self) -> Complex64 {
        (self.sigma + self.k as f64) / 2.0
    }

    /// Second component `a' = (−k + σ)/2`.
    pub fn a_prime(&self) -> Complex64 {
        (self.sigma - self.k as f64) / 2.0
    }

    /// The point `1 − a | 1 − a'`, i.e. `(−k, 2 − σ)`.
    pub fn one_minus(&self) -> Self {
        LambdaPoint { k: -self.k, sigma: 2.0 - self.sigma }
    }

    /// Shift by the integer pair `(m, m')`: `a + m | a' + m'`.
    pub fn shift_integers(&self, m: i64, m_prime: i64) -> Self {
        *self + LambdaPoint::from_integers(m, m_prime)
    }
}

impl Add for LambdaPoint {
    type Output = LambdaPoint;
    fn add(self, rhs: LambdaPoint) -> LambdaPoint {
        LambdaPoint { k: self.k + rhs.k, sigma: self.sigma + rhs.sigma }
    }
}

impl Sub for LambdaPoint {
    type Output = LambdaPoint;
    fn sub(self, rhs: LambdaPoint) -> LambdaPoint {
        LambdaPoint { k: self.k - rhs.k, sigma: self.sigma - rhs.sigma }
    }
}

impl Neg for LambdaPoint {
    type Output = LambdaPoint;
    fn neg(self) -> LambdaPoint {
        LambdaPoint { k: -self.k, sigma: -self.sigma }
    }
}

/// Text form `k:sre:sim`, e.g. `0:2.0:0.0`.
impl fmt::Display for LambdaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.k, self.sigma.re, self.sigma.im)
    }
}

impl FromStr for LambdaPoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let err = || format!("expected 'k:sre:sim', got '{s}'");
        match parts.as_slice() {
            [k, re, im] => {
                let k: i64 = k.trim().parse().map_err(|_| err())?;
                let re: f64 = re.trim().parse().map_err(|_| err())?;
                let im: f64 = im.trim().parse().map_err(|_| err())?;
                Ok(LambdaPoint { k, sigma: Complex64::new(re, im) })
            }
            [k, re] => {
                let k: i64 = k.trim().parse().map_err(|_| err())?;
                let re: f64 = re.trim().parse().map_err(|_| err())?;
                Ok(LambdaPoint { k, sigma: Complex64::new(re, 0.0) })
            }
            _ => Err(err()),
        }
    }
}

/// An ordered list of lattice points, with the usual list operations:
/// shifting every entry by a point and removing the `j`-th entry.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LambdaList {
    pub points: Vec<LambdaPoint>,
}

impl LambdaList {
    pub fn new(points: Vec<LambdaPoint>) -> Self {
        LambdaList { points }
    }

    pub fn empty() -> Self {
        LambdaList { points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LambdaPoint> {
        self.points.iter()
    }

    /// Every entry shifted by `h`.
    pub fn shifted(&self, h: LambdaPoint) -> LambdaList {
        LambdaList { points: self.points.iter().map(|p| *p + h).collect() }
    }

    /// The list with the entry at `j` removed (0-based).
    pub fn without(&self, j: usize) -> LambdaList {
        let mut points = self.points.clone();
        points.remove(j);
        LambdaList { points }
    }

    /// The list with entry `j` replaced.
    pub fn replaced(&self, j: usize, p: LambdaPoint) -> LambdaList {
        let mut points = self.points.clone();
        points[j] = p;
        LambdaList { points }
    }

    /// The list with one more entry at the end.
    pub fn appended(&self, p: LambdaPoint) -> LambdaList {
        let mut points = self.points.clone();
        points.push(p);
        LambdaList { points }
    }

    /// Sum of `Re σ` over the entries.
    pub fn re_sigma_sum(&self) -> f64 {
        self.points.iter().map(|p| p.sigma.re).sum()
    }

    /// Sum of the integer components.
    pub fn k_sum(&self) -> i64 {
        self.points.iter().map(|p| p.k).sum()
    }
}

impl From<Vec<LambdaPoint>> for LambdaList {
    fn from(points: Vec<LambdaPoint>) -> Self {
        LambdaList { points }
    }
}

/// The single-valued power `z^{a|a'} = e^{i k arg z} |z|^σ` on `ℂ^×`,
/// with `arg z ∈ (−π, π]`.
///
/// Every other module routes powers through this function so that branch
/// choices are consistent across engines.
pub fn double_power(z: Complex64, p: LambdaPoint) -> Result<Complex64, Error> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroBase);
    }
    // Normalize -0.0 imaginary parts so arg(-1) = +pi, not -pi.
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    let theta = z.arg();
    let ln_r = z.norm().ln();
    Ok((Complex64::new(0.0, p.k as f64 * theta) + p.sigma * ln_r).exp())
}

/// `(−1)^k` for the integer component of the point.
pub fn neg_one_power(p: LambdaPoint) -> Complex64 {
    if p.k.rem_euclid(2) == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_ab_basic() {
        let p = LambdaPoint::from_ab(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(p.k, 0);
        assert_eq!(p.sigma, c(2.0, 0.0));

        let p = LambdaPoint::from_ab(c(0.5, 0.0), c(-0.5, 0.0)).unwrap();
        assert_eq!(p.k, 1);
        assert_eq!(p.sigma, c(0.0, 0.0));

        assert!(matches!(
            LambdaPoint::from_ab(c(0.3, 0.0), c(0.4, 0.0)),
            Err(Error::NotOnLattice { .. })
        ));
    }

    #[test]
    fn ab_round_trip_is_exact_for_representable_values() {
        // dyadic sigma values are exactly representable through the split
        for &(a, ap) in &[(0.25, -0.75), (1.5, 0.5), (-2.0, 1.0)] {
            let p = LambdaPoint::from_ab(c(a, 0.125), c(ap, 0.125)).unwrap();
            assert_eq!(p.a(), c(a, 0.125));
            assert_eq!(p.a_prime(), c(ap, 0.125));
        }
    }

    #[test]
    fn double_power_examples() {
        let any = c(1.7, -2.3);
        assert_eq!(double_power(any, LambdaPoint::real(0, 0.0)).unwrap(), c(1.0, 0.0));

        let v = double_power(c(4.0, 0.0), LambdaPoint::real(0, 2.0)).unwrap();
        assert!((v - c(16.0, 0.0)).norm() < 1e-12);

        // z = i, k = 2, sigma = 0: e^{i 2 (pi/2)} = -1
        let v = double_power(c(0.0, 1.0), LambdaPoint::real(2, 0.0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-12);

        // z = -1, k = 1, sigma = 0: arg(-1) = +pi so the value is e^{i pi} = -1
        let v = double_power(c(-1.0, 0.0), LambdaPoint::real(1, 0.0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-12);
        // squaring matches the k = 2 character, as multiplicativity demands
        let v2 = double_power(c(-1.0, 0.0), LambdaPoint::real(2, 0.0)).unwrap();
        assert!((v * v - v2).norm() < 1e-12);

        assert!(matches!(double_power(c(0.0, 0.0), LambdaPoint::real(1, 0.0)), Err(Error::ZeroBase)));
    }

    #[test]
    fn neg_one_power_examples() {
        assert_eq!(neg_one_power(LambdaPoint::real(0, 3.3)), c(1.0, 0.0));
        assert_eq!(neg_one_power(LambdaPoint::real(1, -1.0)), c(-1.0, 0.0));
        assert_eq!(neg_one_power(LambdaPoint::real(-3, 0.0)), c(-1.0, 0.0));
    }

    #[test]
    fn double_power_multiplicative_and_modulus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if z.norm() < 1e-3 {
                continue;
            }
            let p = LambdaPoint::new(
                rng.gen_range(-5..=5),
                c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
            );
            let q = LambdaPoint::new(
                rng.gen_range(-5..=5),
                c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
            );
            let lhs = double_power(z, p).unwrap() * double_power(z, q).unwrap();
            let rhs = double_power(z, p + q).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0),
                "multiplicativity failed at z={z}, p={p:?}, q={q:?}"
            );

            let v = double_power(z, p).unwrap();
            let expect = z.norm().powf(p.sigma.re);
            assert!((v.norm() - expect).abs() <= 1e-12 * expect.max(1.0));
        }
    }

    #[test]
    fn double_power_unit_modulus_on_unitary_sublattice() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if z.norm() < 1e-3 {
                continue;
            }
            // sigma purely imaginary <=> a' + conj(a) = 0
            let p = LambdaPoint::new(rng.gen_range(-5..=5), c(0.0, rng.gen_range(-5.0..5.0)));
            let v = double_power(z, p).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn list_utilities() {
        let l = LambdaList::new(vec![
            LambdaPoint::real(0, 1.0),
            LambdaPoint::real(1, 2.0),
            LambdaPoint::real(2, 3.0),
        ]);
        let s = l.shifted(LambdaPoint::real(1, 0.5));
        assert_eq!(s.points[2], LambdaPoint::real(3, 3.5));
        let w = l.without(1);
        assert_eq!(w.len(), 2);
        assert_eq!(w.points[1], LambdaPoint::real(2, 3.0));
        assert_eq!(l.re_sigma_sum(), 6.0);
    }

    #[test]
    fn text_round_trip() {
        let p = LambdaPoint::new(-2, c(0.5, -1.25));
        let s = p.to_string();
        let q: LambdaPoint = s.parse().unwrap();
        assert_eq!(p, q);
        assert!("x".parse::<LambdaPoint>().is_err());
        assert!("1:2:3:4".parse::<LambdaPoint>().is_err());
    }
}
