//! The gamma function of the complex field `Γᶜ(a|a') = Γ(a)/Γ(1−a')`,
//! its poles and residues, the beta function `Bᶜ`, and the Stirling-type
//! asymptotics used for truncation bounds.

use num_complex::Complex64;

use crate::error::Error;
use crate::lambda::{double_power, neg_one_power, LambdaPoint, LATTICE_TOL};

/// Lanczos parameters (g = 607/128, 15 coefficients). This set keeps the
/// relative error of `log_gamma_complex` near 1e-14 over the half-plane,
/// which the 1e-11 identity tolerances downstream require.
const LANCZOS_G: f64 = 4.742_187_5;
const LANCZOS_C: [f64; 15] = [
    0.999_999_999_999_997_092,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_757e-4,
    -0.983_744_753_048_795_647e-4,
    0.158_088_703_224_912_489e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_227e-5,
];

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_742; // ln(2*pi)/2

/// n! for n <= 20, exact in f64.
const FACTORIAL: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

fn factorial(n: u64) -> f64 {
    if n <= 20 {
        FACTORIAL[n as usize]
    } else {
        let mut v = FACTORIAL[20];
        for i in 21..=n {
            v *= i as f64;
        }
        v
    }
}

/// Log of gamma on the principal strip, by the Lanczos approximation for
/// `Re z ≥ 0.5` and the reflection formula otherwise. The branch of the
/// result is unspecified beyond `exp(log_gamma_complex(z)) = Γ(z)`; all
/// callers exponentiate differences, so a `2πi` offset is harmless.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64, Error> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::PoleAtPoint);
    }
    if z.re < 0.5 {
        // ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z)
        let lg = log_gamma_complex(Complex64::new(1.0, 0.0) - z)?;
        return Ok(std::f64::consts::PI.ln() - log_sin_pi(z) - lg);
    }
    let w = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    Ok(LN_2PI_HALF + (w + 0.5) * t.ln() - t + acc.ln())
}

/// log(sin(pi z)) computed without overflow for large |Im z|.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let pz = std::f64::consts::PI * z;
    if z.im.abs() < 4.0 {
        return pz.sin().ln();
    }
    // sin t = (i/2) e^{-it} (1 - e^{2it})   (for Im t > 0 the last factor is near 1)
    let i = Complex64::new(0.0, 1.0);
    if z.im > 0.0 {
        (i / 2.0).ln() - i * pz + (1.0 - (2.0 * i * pz).exp()).ln()
    } else {
        (-i / 2.0).ln() + i * pz + (1.0 - (-2.0 * i * pz).exp()).ln()
    }
}

/// Value of `Γᶜ` at a lattice point: either a finite complex number or a
/// pole marker carrying the residue of the `σ`-plane sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    /// Finite value; NaN when `is_pole`.
    pub value: Complex64,
    pub is_pole: bool,
    /// Set only when `is_pole`: `(−1)^m / (m! m'!)`.
    pub residue: Option<Complex64>,
}

impl GammaValue {
    fn finite(value: Complex64) -> Self {
        GammaValue { value, is_pole: false, residue: None }
    }

    /// The finite value, or an error at a pole.
    pub fn finite_or(&self, err: Error) -> Result<Complex64, Error> {
        if self.is_pole {
            Err(err)
        } else {
            Ok(self.value)
        }
    }
}

/// Distance from `x` to the nearest nonpositive integer, together with
/// that integer's absolute value, if `x` is close to the nonpositive real
/// axis at all. Returns `None` when `round(Re x) > 0`.
fn nonpos_int_info(x: Complex64) -> Option<(u64, f64)> {
    let r = x.re.round();
    if r > 0.5 {
        return None;
    }
    let dist = (x.re - r).hypot(x.im);
    Some(((-r) as u64, dist))
}

fn near_pos_int(x: Complex64, tol: f64) -> Option<u64> {
    let r = x.re.round();
    if r < 0.5 {
        return None;
    }
    if (x.re - r).hypot(x.im) <= tol {
        Some(r as u64)
    } else {
        None
    }
}

/// Residue of `Γᶜ` at the pole `−m|−m'`: `(−1)^m / (m! m'!)`.
pub fn gamma_c_residue(m: u64, m_prime: u64) -> Complex64 {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::new(sign / (factorial(m) * factorial(m_prime)), 0.0)
}

/// `Γᶜ(a|a') = Γ(a)/Γ(1−a') = (−1)^k Γ(a')/Γ(1−a)`.
///
/// Both closed forms are used: the second when `a` sits near a
/// nonpositive integer where the first is indeterminate. A pole marker
/// (with residue) is returned when both `a` and `a'` are nonpositive
/// integers; positive-integer pairs give an exact zero.
pub fn gamma_c(p: LambdaPoint) -> GammaValue {
    let a = p.a();
    let ap = p.a_prime();

    let a_np = nonpos_int_info(a);
    let ap_np = nonpos_int_info(ap);
    if let (Some((m, da)), Some((mp, dap))) = (a_np, ap_np) {
        if da <= LATTICE_TOL && dap <= LATTICE_TOL {
            return GammaValue {
                value: Complex64::new(f64::NAN, f64::NAN),
                is_pole: true,
                residue: Some(gamma_c_residue(m, mp)),
            };
        }
    }

    // Prefer Γ(a)/Γ(1−a'), switching when a is near a nonpositive integer.
    let use_second_form = match (a_np, ap_np) {
        (Some((_, da)), Some((_, dap))) => da < 0.05 && da <= dap,
        (Some((_, da)), None) => da < 0.05,
        _ => false,
    };

    if !use_second_form {
        // zero when the denominator Γ(1−a') has a pole, i.e. a' ∈ ℤ≥1
        if let Some(n) = near_pos_int(ap, LATTICE_TOL) {
            let _ = n;
            return GammaValue::finite(Complex64::new(0.0, 0.0));
        }
        if let (Some(m), Some(n)) = (near_pos_int(a, LATTICE_TOL), near_pos_int(1.0 - ap, LATTICE_TOL)) {
            if m <= 21 && n <= 21 {
                return GammaValue::finite(Complex64::new(
                    factorial(m - 1) / factorial(n - 1),
                    0.0,
                ));
            }
        }
        let lg = log_gamma_complex(a).and_then(|n| Ok(n - log_gamma_complex(1.0 - ap)?));
        match lg {
            Ok(d) => GammaValue::finite(d.exp()),
            Err(_) => GammaValue::finite(Complex64::new(f64::NAN, f64::NAN)),
        }
    } else {
        if let Some(n) = near_pos_int(a, LATTICE_TOL) {
            let _ = n;
            return GammaValue::finite(Complex64::new(0.0, 0.0));
        }
        let sign = neg_one_power(p);
        if let (Some(m), Some(n)) = (near_pos_int(ap, LATTICE_TOL), near_pos_int(1.0 - a, LATTICE_TOL)) {
            if m <= 21 && n <= 21 {
                return GammaValue::finite(sign * factorial(m - 1) / factorial(n - 1));
            }
        }
        let lg = log_gamma_complex(ap).and_then(|n| Ok(n - log_gamma_complex(1.0 - a)?));
        match lg {
            Ok(d) => GammaValue::finite(sign * d.exp()),
            Err(_) => GammaValue::finite(Complex64::new(f64::NAN, f64::NAN)),
        }
    }
}

/// A beta value: finite, or the infinity marker produced by a zero
/// denominator under a nonzero numerator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaValue {
    Finite(Complex64),
    Infinite,
}

impl BetaValue {
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            BetaValue::Finite(v) => Some(*v),
            BetaValue::Infinite => None,
        }
    }
}

/// `Bᶜ(p, q) = Γᶜ(p) Γᶜ(q) / Γᶜ(p ⊕ q)`.
pub fn beta_c(p: LambdaPoint, q: LambdaPoint) -> Result<BetaValue, Error> {
    let gp = gamma_c(p);
    let gq = gamma_c(q);
    let gs = gamma_c(p + q);

    let num_pole = gp.is_pole || gq.is_pole;
    let num_zero = !num_pole && (gp.value == Complex64::new(0.0, 0.0) || gq.value == Complex64::new(0.0, 0.0));

    if gs.is_pole {
        if num_pole {
            return Err(Error::Indeterminate);
        }
        // finite / infinity
        return Ok(BetaValue::Finite(Complex64::new(0.0, 0.0)));
    }
    let den_zero = gs.value == Complex64::new(0.0, 0.0);
    if num_pole {
        return Ok(BetaValue::Infinite);
    }
    if den_zero {
        if num_zero {
            return Err(Error::Indeterminate);
        }
        return Ok(BetaValue::Infinite);
    }
    Ok(BetaValue::Finite(gp.value * gq.value / gs.value))
}

/// Leading term of the large-shift asymptotics:
/// `Γᶜ(a+ξ | a'−ξ̄) ≈ exp{2i Im(ξ ln ξ − ξ)} · ξ^{a−1/2 | a'−1/2}`,
/// where `ξ` is the first component of `xi` (so `xi.sigma` should be
/// purely imaginary for the shift to stay on the lattice).
pub fn gamma_c_asymptotic(base: LambdaPoint, xi: LambdaPoint) -> Complex64 {
    let xi_c = xi.a();
    let phase = xi_c * xi_c.ln() - xi_c;
    let osc = Complex64::new(0.0, 2.0 * phase.im).exp();
    let pw = double_power(xi_c, LambdaPoint::new(base.k, base.sigma - 1.0))
        .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    osc * pw
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma_complex(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        let v = log_gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.572_364_942_924_700_087).abs() < 1e-13);
        assert!(v.im.abs() < 1e-14);
        let v = log_gamma_complex(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24.0_f64.ln()).abs() < 1e-13);
        assert!(matches!(log_gamma_complex(c(-3.0, 0.0)), Err(Error::PoleAtPoint)));
    }

    #[test]
    fn log_gamma_matches_gamma_on_grid() {
        // exp(lgamma) vs direct product recurrence from Γ(1+x) on (0,1]:
        // check the multiplicative functional equation instead of an
        // external table: Γ(z+1) = z Γ(z).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let z = c(rng.gen_range(0.1..40.0), rng.gen_range(-40.0..40.0));
            let lg = log_gamma_complex(z).unwrap();
            let lg1 = log_gamma_complex(z + 1.0).unwrap();
            let lhs = (lg1 - lg).exp();
            assert!(rel(lhs, z) < 1e-12, "functional equation failed at {z}");
        }
    }

    #[test]
    fn gamma_c_integer_values() {
        // Γᶜ(1|0) = 1, and Γᶜ(m|−k) = (m−1)!/k!
        let g = gamma_c(LambdaPoint::from_ab(c(1.0, 0.0), c(0.0, 0.0)).unwrap());
        assert!(!g.is_pole);
        assert!(rel(g.value, c(1.0, 0.0)) < 1e-14);

        let g = gamma_c(LambdaPoint::from_ab(c(2.0, 0.0), c(-1.0, 0.0)).unwrap());
        assert!(rel(g.value, c(1.0, 0.0)) < 1e-14, "Gc(2|-1) = Γ(2)/Γ(2) = 1, got {}", g.value);

        // Γᶜ(k|l) = 0 for positive integer pairs
        let g = gamma_c(LambdaPoint::from_ab(c(1.0, 0.0), c(1.0, 0.0)).unwrap());
        assert_eq!(g.value, c(0.0, 0.0));

        let g = gamma_c(LambdaPoint::from_ab(c(0.5, 0.0), c(0.5, 0.0)).unwrap());
        assert!(rel(g.value, c(1.0, 0.0)) < 1e-14);

        // pole at 0|0 with residue 1
        let g = gamma_c(LambdaPoint::from_ab(c(0.0, 0.0), c(0.0, 0.0)).unwrap());
        assert!(g.is_pole);
        assert!(rel(g.residue.unwrap(), c(1.0, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_c_residues() {
        assert_eq!(gamma_c_residue(0, 0), c(1.0, 0.0));
        assert_eq!(gamma_c_residue(1, 0), c(-1.0, 0.0));
        assert_eq!(gamma_c_residue(2, 1), c(0.5, 0.0));
    }

    #[test]
    fn gamma_c_residue_limit() {
        // ε Γᶜ(−m+ε | −m'+ε) → (−1)^m/(m! m'!)
        for &(m, mp) in &[(0i64, 0i64), (1, 0), (2, 1), (3, 3)] {
            let eps = 1e-6;
            let p = LambdaPoint::from_ab(c(-m as f64 + eps, 0.0), c(-mp as f64 + eps, 0.0)).unwrap();
            let g = gamma_c(p);
            let lim = g.value * eps;
            let expect = gamma_c_residue(m as u64, mp as u64);
            assert!(rel(lim, expect) < 1e-4, "residue limit failed at ({m},{mp}): {lim} vs {expect}");
        }
    }

    #[test]
    fn gamma_c_indeterminate_integer_corner() {
        // Γᶜ(0|1) = −1 via the second closed form
        let g = gamma_c(LambdaPoint::from_ab(c(0.0, 0.0), c(1.0, 0.0)).unwrap());
        assert!(rel(g.value, c(-1.0, 0.0)) < 1e-12, "got {}", g.value);
        // Γᶜ(−2|3) = (−1)^{−5} Γ(3)/Γ(1+2) = −1
        let g = gamma_c(LambdaPoint::from_ab(c(-2.0, 0.0), c(3.0, 0.0)).unwrap());
        assert!(rel(g.value, c(-1.0, 0.0)) < 1e-12, "got {}", g.value);
    }

    fn random_safe_point(rng: &mut impl Rng) -> LambdaPoint {
        loop {
            let p = LambdaPoint::new(
                rng.gen_range(-6..=6),
                c(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0)),
            );
            let a = p.a();
            let ap = p.a_prime();
            // keep both components at distance >= 0.05 from every integer
            let da = (a.re - a.re.round()).hypot(a.im);
            let dap = (ap.re - ap.re.round()).hypot(ap.im);
            if da > 0.05 && dap > 0.05 {
                return p;
            }
        }
    }

    #[test]
    fn transposition_identity() {
        // Γᶜ(a|a') = (−1)^k Γᶜ(a'|a)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = random_safe_point(&mut rng);
            let lhs = gamma_c(p).value;
            let transposed = LambdaPoint::new(-p.k, p.sigma);
            let rhs = neg_one_power(p) * gamma_c(transposed).value;
            assert!(rel(lhs, rhs) < 1e-11, "transposition failed at {p:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn reflection_identity() {
        // Γᶜ(a|a') Γᶜ(1−a|1−a') = (−1)^k
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let p = random_safe_point(&mut rng);
            let lhs = gamma_c(p).value * gamma_c(p.one_minus()).value;
            assert!(rel(lhs, neg_one_power(p)) < 1e-11, "reflection failed at {p:?}");
        }
    }

    #[test]
    fn shift_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = random_safe_point(&mut rng);
            let m = rng.gen_range(0..=4i64);
            let mp = rng.gen_range(0..=4i64);
            let a = p.a();
            let ap = p.a_prime();

            // up: Γᶜ(a+m|a'+m') = (−1)^{m'} Γᶜ(a|a') (a)_m (a')_{m'}
            let up = gamma_c(p.shift_integers(m, mp)).value;
            let sign = if mp % 2 == 0 { 1.0 } else { -1.0 };
            let expect = sign
                * gamma_c(p).value
                * crate::series::pochhammer(a, m as u32)
                * crate::series::pochhammer(ap, mp as u32);
            assert!(rel(up, expect) < 1e-11, "shift-up failed at {p:?} m={m} m'={mp}");

            // down: Γᶜ(a−m|a'−m') = (−1)^m Γᶜ(a|a') / ((1−a)_m (1−a')_{m'})
            let down = gamma_c(p.shift_integers(-m, -mp)).value;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let expect = sign * gamma_c(p).value
                / (crate::series::pochhammer(1.0 - a, m as u32)
                    * crate::series::pochhammer(1.0 - ap, mp as u32));
            assert!(rel(down, expect) < 1e-11, "shift-down failed at {p:?} m={m} m'={mp}");
        }
    }

    #[test]
    fn gauss_multiplication() {
        // ∏_{j<κ} Γᶜ(a+j/κ | a'+j/κ) = Γᶜ(κa|κa') κ^{1−(a+a')κ}
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let p = random_safe_point(&mut rng);
            for kappa in [2i64, 3] {
                let scaled = LambdaPoint::new(p.k * kappa, p.sigma * kappa as f64);
                if gamma_c(scaled).is_pole {
                    continue;
                }
                let mut prod = Complex64::new(1.0, 0.0);
                let mut skip = false;
                for j in 0..kappa {
                    let shift = LambdaPoint::new(0, Complex64::new(2.0 * j as f64 / kappa as f64, 0.0));
                    let g = gamma_c(p + shift);
                    if g.is_pole {
                        skip = true;
                        break;
                    }
                    prod *= g.value;
                }
                if skip {
                    continue;
                }
                let factor = Complex64::new(kappa as f64, 0.0)
                    .powc(Complex64::new(1.0, 0.0) - p.sigma * kappa as f64);
                let rhs = gamma_c(scaled).value * factor;
                assert!(rel(prod, rhs) < 1e-10, "gauss multiplication failed at {p:?} κ={kappa}");
            }
        }
    }

    #[test]
    fn beta_examples() {
        let quarter = LambdaPoint::from_ab(c(0.25, 0.0), c(0.25, 0.0)).unwrap();
        let v = beta_c(quarter, quarter).unwrap().finite().unwrap();
        // (Γ(1/4)/Γ(3/4))^2
        assert!(rel(v, c(8.753_758_460_905_906_6, 0.0)) < 1e-12, "got {v}");

        let one_zero = LambdaPoint::from_ab(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let v = beta_c(one_zero, one_zero).unwrap().finite().unwrap();
        assert!(rel(v, c(1.0, 0.0)) < 1e-13);

        let half = LambdaPoint::from_ab(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(beta_c(half, half).unwrap(), BetaValue::Infinite);
    }

    #[test]
    fn asymptotic_ratio_and_modulus() {
        // |Γᶜ(a+ξ|a'−ξ̄)| ~ |ξ|^{Re σ − 1}, ratio → 1 + O(1/|ξ|)
        let base = LambdaPoint::real(0, 1.0);
        let xi = LambdaPoint::new(0, c(0.0, 200.0)); // ξ = 100i
        let asy = gamma_c_asymptotic(base, xi);
        assert!((asy.norm() - 1.0).abs() < 1e-12);

        for &s in &[100.0, 200.0, 1000.0] {
            let xi = LambdaPoint::new(0, c(0.0, 2.0 * s));
            let exact = gamma_c(base + xi).value;
            let asy = gamma_c_asymptotic(base, xi);
            let ratio = exact / asy;
            assert!(
                (ratio - c(1.0, 0.0)).norm() < 2.0 / s,
                "asymptotic ratio off at |ξ|={s}: {ratio}"
            );
        }

        // |Γᶜ| at σ = 0 decays like |ξ|^{−1}
        let base = LambdaPoint::real(0, 0.0);
        let xi = LambdaPoint::new(0, c(0.0, 2.0e4));
        let g = gamma_c(base + xi).value;
        let expect = 1.0 / 1.0e4;
        assert!((g.norm() - expect).abs() / expect < 1e-3);
    }

    #[test]
    fn asymptotic_slope_regression() {
        // slope of log|Γᶜ(a+ξ|a'−ξ̄)| against log|ξ| is Re σ − 1
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10 {
            let base = LambdaPoint::new(
                rng.gen_range(-3..=3),
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)),
            );
            let (mut sx, mut sy, mut sxx, mut sxy, mut n) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for i in 0..12 {
                let s = 100.0 * (10_000.0_f64 / 100.0).powf(i as f64 / 11.0);
                let xi = LambdaPoint::new(0, c(0.0, 2.0 * s));
                let g = gamma_c(base + xi).value;
                let x = s.ln();
                let y = g.norm().ln();
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                n += 1.0;
            }
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            let expect = base.sigma.re - 1.0;
            assert!(
                (slope - expect).abs() <= 0.02 * expect.abs().max(1.0),
                "slope {slope} vs {expect} for base {base:?}"
            );
        }
    }
}
